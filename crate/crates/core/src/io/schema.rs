//! The `wrapcat/1` JSON format for setups and their attachments.
//!
//! Vectors are objects from generator labels to scalar strings such as
//! `"3/2"` or `"2 mod 5"`. Serializing a parsed file reproduces it byte for
//! byte when the file is in canonical form.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::sparse::{self, SVec};
use crate::linalg::{Generator, GradedModule, Ring};
use crate::setup::{
    Composable, Continuation, ContinuationHomotopy, Datum, FloerDataSystem, ProductHomotopy, Profile,
    WeakFloerSetup,
};

pub const SCHEMA: &str = "wrapcat/1";

pub type VecJson = BTreeMap<String, String>;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GeneratorJson {
    pub label: String,
    pub degree: i32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct HomJson {
    pub pair: [String; 2],
    pub generators: Vec<GeneratorJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct EntryJson {
    pub inputs: Vec<String>,
    pub output: VecJson,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct OperationsJson {
    pub tuple: Vec<String>,
    pub entries: Vec<EntryJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct DatumJson {
    pub tuple: Vec<String>,
    pub name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub faces: Vec<String>,
    pub entries: Vec<EntryJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ContinuationJson {
    pub pair: [String; 2],
    pub name: String,
    pub source: String,
    pub target: String,
    /// Images of generators; omitted generators map to zero.
    pub alpha: BTreeMap<String, VecJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct HomotopyJson {
    pub pair: [String; 2],
    pub name: String,
    pub first: String,
    pub second: String,
    pub direct: String,
    pub beta: BTreeMap<String, VecJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ProductHomotopyJson {
    pub tuple: Vec<String>,
    pub name: String,
    pub slot: usize,
    pub base: String,
    pub other: String,
    pub prime: String,
    pub gamma: Vec<EntryJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct UnitJson {
    pub pair: [String; 2],
    pub datum: String,
    pub continuation: String,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FloerDataJson {
    pub data: Vec<DatumJson>,
    #[serde(default)]
    pub continuations: Vec<ContinuationJson>,
    #[serde(default)]
    pub homotopies: Vec<HomotopyJson>,
    #[serde(default)]
    pub product_homotopies: Vec<ProductHomotopyJson>,
    #[serde(default)]
    pub units: Vec<UnitJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum ComposableJson {
    Mode(String),
    Explicit(Vec<Vec<String>>),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ClassJson {
    pub source: String,
    pub target: String,
    pub cycle: VecJson,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ContinuationSystemJson {
    pub include_units: bool,
    pub maps: Vec<ClassJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub name: String,
    pub lagrangian: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PosetJson {
    pub elements: Vec<ElementJson>,
    /// Generating relations `[greater, lesser]`.
    pub order: Vec<[String; 2]>,
    #[serde(default)]
    pub wrapping_sequences: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct OracleChoiceJson {
    pub tuple: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<String>>,
    pub datum: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct OracleJson {
    pub levels: usize,
    pub choices: Vec<OracleChoiceJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SetupFileJson {
    pub schema: String,
    pub name: String,
    pub ring: String,
    pub lagrangians: Vec<String>,
    pub composable: ComposableJson,
    pub hom: Vec<HomJson>,
    pub profile: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operations: Option<Vec<OperationsJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub floer_data: Option<FloerDataJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub continuation: Option<ContinuationSystemJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wrap_chains: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poset: Option<PosetJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleJson>,
}

/// A continuation class given by a cycle in `CF(source, target)` or the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSpec {
    pub source: usize,
    pub target: usize,
    pub cycle: SVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuationSpec {
    pub include_units: bool,
    pub maps: Vec<ClassSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetSpec {
    pub elements: Vec<(String, usize)>,
    pub order: Vec<(usize, usize)>,
    pub wrapping_sequences: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleChoice {
    pub tuple: Vec<usize>,
    pub faces: Option<Vec<String>>,
    pub datum: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleSpec {
    pub levels: usize,
    pub choices: Vec<OracleChoice>,
}

/// A parsed setup file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetupFile {
    pub name: String,
    pub setup: WeakFloerSetup,
    pub continuation: Option<ContinuationSpec>,
    pub wrap_chains: Option<BTreeMap<usize, Vec<usize>>>,
    pub poset: Option<PosetSpec>,
    pub oracle: Option<OracleSpec>,
}

struct Ctx<'a> {
    ring: Ring,
    lag: &'a [String],
}

impl Ctx<'_> {
    fn lag(&self, name: &str) -> Result<usize> {
        self.lag
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::Schema(format!("unknown Lagrangian {name:?}")))
    }

    fn tuple(&self, t: &[String]) -> Result<Vec<usize>> {
        t.iter().map(|n| self.lag(n)).collect()
    }

    fn vector(&self, m: &GradedModule, v: &VecJson) -> Result<SVec> {
        let mut out = Vec::new();
        for (label, s) in v {
            let i = m
                .index_of(label)
                .ok_or_else(|| Error::Schema(format!("unknown generator {label:?}")))?;
            let x = self.ring.parse_scalar(s)?;
            out = sparse::add(self.ring, &out, &vec![(i, x)]);
        }
        Ok(out)
    }

    fn columns(&self, m: &GradedModule, cols: &BTreeMap<String, VecJson>) -> Result<Vec<SVec>> {
        let mut out = vec![Vec::new(); m.rank()];
        for (label, v) in cols {
            let i = m
                .index_of(label)
                .ok_or_else(|| Error::Schema(format!("unknown generator {label:?}")))?;
            out[i] = self.vector(m, v)?;
        }
        Ok(out)
    }
}

fn vector_json(ring: Ring, m: &GradedModule, v: &SVec) -> VecJson {
    v.iter().map(|(i, x)| (m.label(*i).to_string(), ring.format(x))).collect()
}

fn columns_json(ring: Ring, m: &GradedModule, cols: &[SVec]) -> BTreeMap<String, VecJson> {
    cols.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_empty())
        .map(|(i, c)| (m.label(i).to_string(), vector_json(ring, m, c)))
        .collect()
}

fn parse_entries(ctx: &Ctx, s: &WeakFloerSetup, t: &[usize], entries: &[EntryJson]) -> Result<BTreeMap<Vec<usize>, SVec>> {
    let k = t.len() - 1;
    let mods: Vec<GradedModule> = (0..k).map(|i| s.cf(t[i], t[i + 1])).collect();
    let out_m = s.cf(t[0], t[k]);
    let mut ops: BTreeMap<Vec<usize>, SVec> = BTreeMap::new();
    for e in entries {
        if e.inputs.len() != k {
            return Err(Error::Schema(format!("entry on {} needs {k} inputs", s.tuple_name(t))));
        }
        let inputs: Vec<usize> = e
            .inputs
            .iter()
            .zip(&mods)
            .map(|(l, m)| m.index_of(l).ok_or_else(|| Error::Schema(format!("unknown generator {l:?} on {}", s.tuple_name(t)))))
            .collect::<Result<_>>()?;
        let v = ctx.vector(&out_m, &e.output)?;
        let slot = ops.entry(inputs).or_default();
        *slot = sparse::add(ctx.ring, slot, &v);
    }
    ops.retain(|_, v| !v.is_empty());
    Ok(ops)
}

fn entries_json(ring: Ring, s: &WeakFloerSetup, t: &[usize], ops: &BTreeMap<Vec<usize>, SVec>) -> Vec<EntryJson> {
    let k = t.len() - 1;
    let out_m = s.cf(t[0], t[k]);
    ops.iter()
        .map(|(inputs, v)| EntryJson {
            inputs: inputs
                .iter()
                .enumerate()
                .map(|(p, i)| s.cf(t[p], t[p + 1]).label(*i).to_string())
                .collect(),
            output: vector_json(ring, &out_m, v),
        })
        .collect()
}

fn pair_of(ctx: &Ctx, p: &[String; 2]) -> Result<(usize, usize)> {
    Ok((ctx.lag(&p[0])?, ctx.lag(&p[1])?))
}

impl SetupFile {
    pub fn from_json_str(text: &str) -> Result<SetupFile> {
        let raw: SetupFileJson = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        Self::from_raw(&raw)
    }

    pub fn from_raw(raw: &SetupFileJson) -> Result<SetupFile> {
        if raw.schema != SCHEMA {
            return Err(Error::Schema(format!("expected schema {SCHEMA:?}, found {:?}", raw.schema)));
        }
        let ring = Ring::parse(&raw.ring)?;
        let ctx = Ctx {
            ring,
            lag: &raw.lagrangians,
        };
        let composable = match &raw.composable {
            ComposableJson::Mode(m) if m == "all-distinct" => Composable::AllDistinct,
            ComposableJson::Mode(m) => return Err(Error::Schema(format!("unknown composability mode {m:?}"))),
            ComposableJson::Explicit(ts) => {
                Composable::Explicit(ts.iter().map(|t| ctx.tuple(t)).collect::<Result<BTreeSet<_>>>()?)
            }
        };
        let mut s = WeakFloerSetup::new(ring, raw.lagrangians.clone(), composable);
        for h in &raw.hom {
            let p = pair_of(&ctx, &h.pair)?;
            let gens = h
                .generators
                .iter()
                .map(|g| Generator {
                    label: g.label.clone(),
                    degree: g.degree,
                })
                .collect();
            if s.cf.insert(p, GradedModule::new(ring, gens)?).is_some() {
                return Err(Error::Schema(format!("hom {} given twice", s.tuple_name(&[p.0, p.1]))));
            }
        }
        match raw.profile.as_str() {
            "envelope" => {
                if raw.floer_data.is_some() {
                    return Err(Error::Schema("envelope profile takes operations, not floer_data".into()));
                }
                let mut ops = BTreeMap::new();
                for o in raw.operations.iter().flatten() {
                    let t = ctx.tuple(&o.tuple)?;
                    if t.len() < 2 {
                        return Err(Error::Schema("operation tuples need at least two Lagrangians".into()));
                    }
                    if !s.is_composable(&t) {
                        return Err(Error::Schema(format!("operations on non-composable tuple {}", s.tuple_name(&t))));
                    }
                    if ops.insert(t.clone(), parse_entries(&ctx, &s, &t, &o.entries)?).is_some() {
                        return Err(Error::Schema(format!("operations on {} given twice", s.tuple_name(&t))));
                    }
                }
                s.set_envelope_operations(ops);
            }
            "full" => {
                if raw.operations.is_some() {
                    return Err(Error::Schema("full profile takes floer_data, not operations".into()));
                }
                let fd = raw
                    .floer_data
                    .as_ref()
                    .ok_or_else(|| Error::Schema("full profile requires floer_data".into()))?;
                s.profile = Profile::Full;
                s.data = parse_floer_data(&ctx, &s, fd)?;
            }
            p => return Err(Error::Schema(format!("unknown profile {p:?}"))),
        }
        let continuation = match &raw.continuation {
            None => None,
            Some(c) => Some(ContinuationSpec {
                include_units: c.include_units,
                maps: c
                    .maps
                    .iter()
                    .map(|m| {
                        let (a, b) = (ctx.lag(&m.source)?, ctx.lag(&m.target)?);
                        Ok(ClassSpec {
                            source: a,
                            target: b,
                            cycle: ctx.vector(&s.cf(a, b), &m.cycle)?,
                        })
                    })
                    .collect::<Result<_>>()?,
            }),
        };
        let wrap_chains = match &raw.wrap_chains {
            None => None,
            Some(w) => Some(
                w.iter()
                    .map(|(k, v)| Ok((ctx.lag(k)?, ctx.tuple(v)?)))
                    .collect::<Result<BTreeMap<_, _>>>()?,
            ),
        };
        let poset = match &raw.poset {
            None => None,
            Some(p) => {
                let names: Vec<&String> = p.elements.iter().map(|e| &e.name).collect();
                let el = |n: &str| {
                    names
                        .iter()
                        .position(|m| *m == n)
                        .ok_or_else(|| Error::Schema(format!("unknown poset element {n:?}")))
                };
                Some(PosetSpec {
                    elements: p
                        .elements
                        .iter()
                        .map(|e| Ok((e.name.clone(), ctx.lag(&e.lagrangian)?)))
                        .collect::<Result<_>>()?,
                    order: p.order.iter().map(|[a, b]| Ok((el(a)?, el(b)?))).collect::<Result<_>>()?,
                    wrapping_sequences: p
                        .wrapping_sequences
                        .iter()
                        .map(|q| q.iter().map(|n| el(n)).collect::<Result<_>>())
                        .collect::<Result<_>>()?,
                })
            }
        };
        let oracle = match &raw.oracle {
            None => None,
            Some(o) => Some(OracleSpec {
                levels: o.levels,
                choices: o
                    .choices
                    .iter()
                    .map(|c| {
                        Ok(OracleChoice {
                            tuple: ctx.tuple(&c.tuple)?,
                            faces: c.faces.clone(),
                            datum: c.datum.clone(),
                        })
                    })
                    .collect::<Result<_>>()?,
            }),
        };
        Ok(SetupFile {
            name: raw.name.clone(),
            setup: s,
            continuation,
            wrap_chains,
            poset,
            oracle,
        })
    }

    pub fn to_raw(&self) -> SetupFileJson {
        let s = &self.setup;
        let ring = s.ring;
        let nm = |i: &usize| s.name(*i).to_string();
        let tn = |t: &[usize]| t.iter().map(nm).collect::<Vec<_>>();
        let pn = |p: &(usize, usize)| [nm(&p.0), nm(&p.1)];
        let composable = match &s.composable {
            Composable::AllDistinct => ComposableJson::Mode("all-distinct".into()),
            Composable::Explicit(set) => {
                let mut v: Vec<&Vec<usize>> = set.iter().collect();
                v.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
                ComposableJson::Explicit(v.into_iter().map(|t| tn(t)).collect())
            }
        };
        let hom = s
            .cf
            .iter()
            .map(|(p, m)| HomJson {
                pair: pn(p),
                generators: m
                    .generators()
                    .iter()
                    .map(|g| GeneratorJson {
                        label: g.label.clone(),
                        degree: g.degree,
                    })
                    .collect(),
            })
            .collect();
        let (profile, operations, floer_data) = match s.profile {
            Profile::Envelope => {
                let ops = s
                    .composable_tuples()
                    .into_iter()
                    .filter_map(|t| {
                        let d = s.data(&t).first()?;
                        if d.ops.is_empty() {
                            return None;
                        }
                        Some(OperationsJson {
                            tuple: tn(&t),
                            entries: entries_json(ring, s, &t, &d.ops),
                        })
                    })
                    .collect();
                ("envelope", Some(ops), None)
            }
            Profile::Full => ("full", None, Some(floer_data_json(s))),
        };
        let continuation = self.continuation.as_ref().map(|c| ContinuationSystemJson {
            include_units: c.include_units,
            maps: c
                .maps
                .iter()
                .map(|m| ClassJson {
                    source: nm(&m.source),
                    target: nm(&m.target),
                    cycle: vector_json(ring, &s.cf(m.source, m.target), &m.cycle),
                })
                .collect(),
        });
        let wrap_chains = self
            .wrap_chains
            .as_ref()
            .map(|w| w.iter().map(|(k, v)| (nm(k), tn(v))).collect());
        let poset = self.poset.as_ref().map(|p| PosetJson {
            elements: p
                .elements
                .iter()
                .map(|(n, l)| ElementJson {
                    name: n.clone(),
                    lagrangian: nm(l),
                })
                .collect(),
            order: p
                .order
                .iter()
                .map(|(a, b)| [p.elements[*a].0.clone(), p.elements[*b].0.clone()])
                .collect(),
            wrapping_sequences: p
                .wrapping_sequences
                .iter()
                .map(|q| q.iter().map(|i| p.elements[*i].0.clone()).collect())
                .collect(),
        });
        let oracle = self.oracle.as_ref().map(|o| OracleJson {
            levels: o.levels,
            choices: o
                .choices
                .iter()
                .map(|c| OracleChoiceJson {
                    tuple: tn(&c.tuple),
                    faces: c.faces.clone(),
                    datum: c.datum.clone(),
                })
                .collect(),
        });
        SetupFileJson {
            schema: SCHEMA.into(),
            name: self.name.clone(),
            ring: ring.name(),
            lagrangians: s.lagrangians.clone(),
            composable,
            hom,
            profile: profile.into(),
            operations,
            floer_data,
            continuation,
            wrap_chains,
            poset,
            oracle,
        }
    }

    /// Canonical pretty-printed JSON with a trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_raw()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn read(path: &std::path::Path) -> Result<SetupFile> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }
}

fn parse_floer_data(ctx: &Ctx, s: &WeakFloerSetup, fd: &FloerDataJson) -> Result<FloerDataSystem> {
    let mut out = FloerDataSystem::default();
    for d in &fd.data {
        let t = ctx.tuple(&d.tuple)?;
        if t.len() < 2 {
            return Err(Error::Schema("data tuples need at least two Lagrangians".into()));
        }
        if !s.is_composable(&t) {
            return Err(Error::Schema(format!("datum on non-composable tuple {}", s.tuple_name(&t))));
        }
        let ops = parse_entries(ctx, s, &t, &d.entries)?;
        out.d.entry(t).or_default().push(Datum {
            name: d.name.clone(),
            faces: d.faces.clone(),
            ops,
        });
    }
    for c in &fd.continuations {
        let p = pair_of(ctx, &c.pair)?;
        let m = s.cf(p.0, p.1);
        out.dp.entry(p).or_default().push(Continuation {
            name: c.name.clone(),
            source: c.source.clone(),
            target: c.target.clone(),
            alpha: ctx.columns(&m, &c.alpha)?,
        });
    }
    for h in &fd.homotopies {
        let p = pair_of(ctx, &h.pair)?;
        let m = s.cf(p.0, p.1);
        out.dpp.entry(p).or_default().push(ContinuationHomotopy {
            name: h.name.clone(),
            first: h.first.clone(),
            second: h.second.clone(),
            direct: h.direct.clone(),
            beta: ctx.columns(&m, &h.beta)?,
        });
    }
    for g in &fd.product_homotopies {
        let t = ctx.tuple(&g.tuple)?;
        if t.len() != 3 {
            return Err(Error::Schema("product homotopies live on triples".into()));
        }
        let ops = parse_entries(ctx, s, &t, &g.gamma)?;
        let gamma = ops.into_iter().map(|(k, v)| ((k[0], k[1]), v)).collect();
        out.dppp.entry(t).or_default().push(ProductHomotopy {
            name: g.name.clone(),
            slot: g.slot,
            base: g.base.clone(),
            other: g.other.clone(),
            prime: g.prime.clone(),
            gamma,
        });
    }
    for u in &fd.units {
        let p = pair_of(ctx, &u.pair)?;
        out.f.entry(p).or_default().insert(u.datum.clone(), u.continuation.clone());
    }
    Ok(out)
}

fn floer_data_json(s: &WeakFloerSetup) -> FloerDataJson {
    let ring = s.ring;
    let nm = |i: &usize| s.name(*i).to_string();
    let tn = |t: &[usize]| t.iter().map(nm).collect::<Vec<_>>();
    let pn = |p: &(usize, usize)| [nm(&p.0), nm(&p.1)];
    let mut data = Vec::new();
    let mut tuples: Vec<&Vec<usize>> = s.data.d.keys().collect();
    tuples.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    for t in tuples {
        for d in &s.data.d[t] {
            data.push(DatumJson {
                tuple: tn(t),
                name: d.name.clone(),
                faces: d.faces.clone(),
                entries: entries_json(ring, s, t, &d.ops),
            });
        }
    }
    let mut continuations = Vec::new();
    for (p, cs) in &s.data.dp {
        let m = s.cf(p.0, p.1);
        for c in cs {
            continuations.push(ContinuationJson {
                pair: pn(p),
                name: c.name.clone(),
                source: c.source.clone(),
                target: c.target.clone(),
                alpha: columns_json(ring, &m, &c.alpha),
            });
        }
    }
    let mut homotopies = Vec::new();
    for (p, hs) in &s.data.dpp {
        let m = s.cf(p.0, p.1);
        for h in hs {
            homotopies.push(HomotopyJson {
                pair: pn(p),
                name: h.name.clone(),
                first: h.first.clone(),
                second: h.second.clone(),
                direct: h.direct.clone(),
                beta: columns_json(ring, &m, &h.beta),
            });
        }
    }
    let mut product_homotopies = Vec::new();
    for (t, gs) in &s.data.dppp {
        for g in gs {
            let ops: BTreeMap<Vec<usize>, SVec> = g.gamma.iter().map(|((a, b), v)| (vec![*a, *b], v.clone())).collect();
            product_homotopies.push(ProductHomotopyJson {
                tuple: tn(t),
                name: g.name.clone(),
                slot: g.slot,
                base: g.base.clone(),
                other: g.other.clone(),
                prime: g.prime.clone(),
                gamma: entries_json(ring, s, t, &ops),
            });
        }
    }
    let mut units = Vec::new();
    for (p, f) in &s.data.f {
        for (d, c) in f {
            units.push(UnitJson {
                pair: pn(p),
                datum: d.clone(),
                continuation: c.clone(),
            });
        }
    }
    FloerDataJson {
        data,
        continuations,
        homotopies,
        product_homotopies,
        units,
    }
}
