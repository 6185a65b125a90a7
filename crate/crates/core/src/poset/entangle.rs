//! Entanglements of decorated semisimplicial sets and the bridge check.

use std::collections::BTreeMap;

use serde::Serialize;

use super::compare::{zigzag, HFunctor, HomComparison};
use super::sss::{DecoratedSSSet, SSSCategory};
use crate::error::{Error, Result};
use crate::io::OracleSpec;
use crate::linalg::sparse::SVec;
use crate::loc::{chain_colimit, gz_localize, Chain, Slice};
use crate::setup::WeakFloerSetup;
use crate::wrap::ContinuationSystem;

/// Blocks joined by edges in both directions between every pair of vertices
/// in different blocks whose Lagrangians are composable, with the simplices
/// those edges span.
#[derive(Clone, Debug)]
pub struct Entanglement {
    pub level: usize,
    pub sss: DecoratedSSSet,
    /// Vertex indices of each block.
    pub blocks: Vec<Vec<usize>>,
    pub added_edges: Vec<(usize, usize)>,
    /// Added simplices of dimension at least two.
    pub added_simplices: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct EntanglementStats {
    pub level: usize,
    pub blocks: usize,
    pub vertices: usize,
    pub edges: usize,
    /// Added edges whose reverse was also added.
    pub edge_pairs: usize,
    pub simplices: BTreeMap<usize, usize>,
}

impl Entanglement {
    pub fn stats(&self) -> EntanglementStats {
        let pairs = self
            .added_edges
            .iter()
            .filter(|(u, v)| u < v && self.added_edges.binary_search(&(*v, *u)).is_ok())
            .count();
        EntanglementStats {
            level: self.level,
            blocks: self.blocks.len(),
            vertices: self.sss.vertices.len(),
            edges: self.sss.simplices.keys().filter(|s| s.len() == 2).count(),
            edge_pairs: pairs,
            simplices: self.sss.counts(),
        }
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.blocks.iter().position(|b| b.contains(&v)).expect("every vertex lies in a block")
    }
}

fn vertex_name(name: &str, block: usize) -> String {
    if block == 0 {
        name.to_string()
    } else {
        format!("{name}#{block}")
    }
}

fn choose(s: &WeakFloerSetup, oracle: &OracleSpec, tuple: &[usize], faces: &[String]) -> Option<String> {
    oracle
        .choices
        .iter()
        .filter(|c| c.tuple == tuple)
        .filter(|c| c.faces.as_ref().map_or(true, |f| f == faces))
        .find(|c| s.datum(tuple, &c.datum).is_some_and(|d| faces.is_empty() || d.faces == faces))
        .map(|c| c.datum.clone())
}

/// Disjoint union of `blocks` with cross-block edges and simplices, their
/// data drawn from `oracle`. Vertices of block `b > 0` are renamed `name#b`.
pub fn entangle(blocks: &[DecoratedSSSet], level: usize, oracle: &OracleSpec, s: &WeakFloerSetup) -> Result<Entanglement> {
    let mut sss = DecoratedSSSet::default();
    let mut block_vertices = Vec::new();
    for (b, e) in blocks.iter().enumerate() {
        let offset = sss.vertices.len();
        sss.vertices.extend(e.vertices.iter().map(|v| vertex_name(v, b)));
        sss.lagrangians.extend(e.lagrangians.iter().copied());
        for (simplex, d) in &e.simplices {
            sss.simplices.insert(simplex.iter().map(|v| v + offset).collect(), d.clone());
        }
        block_vertices.push((offset..sss.vertices.len()).collect::<Vec<_>>());
    }
    if let Some(dup) = (0..sss.vertices.len()).find(|i| sss.vertices[..*i].contains(&sss.vertices[*i])) {
        return Err(Error::Schema(format!("vertex {} appears twice", sss.vertices[dup])));
    }
    let n = sss.vertices.len();
    let mut block = vec![0; n];
    for (b, vs) in block_vertices.iter().enumerate() {
        for v in vs {
            block[*v] = b;
        }
    }

    let mut pending: Vec<Vec<usize>> = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if block[u] != block[v] && s.is_composable(&[sss.lagrangians[u], sss.lagrangians[v]]) {
                pending.push(vec![u, v]);
            }
        }
    }
    let added_edges: Vec<(usize, usize)> = pending.iter().map(|e| (e[0], e[1])).collect();
    let is_edge = |u: usize, v: usize| block[u] != block[v] && s.is_composable(&[sss.lagrangians[u], sss.lagrangians[v]]) || sss.is_edge(u, v);
    let edge_table: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| is_edge(u, v)).collect()).collect();
    let mut higher: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).rev().map(|v| vec![v]).collect();
    while let Some(t) = stack.pop() {
        if t.len() >= 3 && t.iter().any(|v| block[*v] != block[t[0]]) {
            higher.push(t.clone());
        }
        for v in (0..n).rev() {
            if t.contains(&v) || !t.iter().all(|u| edge_table[*u][v]) {
                continue;
            }
            let mut next = t.clone();
            next.push(v);
            if s.is_composable(&sss.tuple(&next)) {
                stack.push(next);
            }
        }
    }
    higher.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    pending.extend(higher.iter().cloned());

    for simplex in &pending {
        if level > oracle.levels {
            return Err(Error::OracleIncomplete(format!("{} (oracle covers level {})", sss.simplex_name(simplex), oracle.levels)));
        }
        let t = sss.tuple(simplex);
        let faces: Vec<String> = if simplex.len() > 2 {
            (0..simplex.len())
                .map(|j| {
                    let mut f = simplex.clone();
                    f.remove(j);
                    sss.simplices[&f].clone()
                })
                .collect()
        } else {
            Vec::new()
        };
        let d = choose(s, oracle, &t, &faces).ok_or_else(|| Error::OracleIncomplete(sss.simplex_name(simplex)))?;
        sss.simplices.insert(simplex.clone(), d);
    }
    sss.check_decoration(s)?;
    Ok(Entanglement {
        level,
        sss,
        blocks: block_vertices,
        added_edges,
        added_simplices: higher,
    })
}

/// `E₀ ⊂ E₁ ⊂ … ⊂ E_level`, where `E₀` entangles the given `E_δ` and `E_n`
/// entangles `n + 1` copies of `E₀`.
pub fn entanglement_tower(e_deltas: &[DecoratedSSSet], level: usize, oracle: &OracleSpec, s: &WeakFloerSetup) -> Result<Vec<Entanglement>> {
    let e0 = entangle(e_deltas, 0, oracle, s)?;
    let mut out = vec![e0.clone()];
    for n in 1..=level {
        let copies = vec![e0.sss.clone(); n + 1];
        out.push(entangle(&copies, n, oracle, s)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexWitness {
    pub vertex: String,
    /// Vertices joined by classes of `C`, ending at an old vertex.
    pub zigzag: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BridgeHom {
    pub source: String,
    pub target: String,
    /// Stages of the wrapping chain of the source inside its block.
    pub chain: Vec<String>,
    pub small_ranks: BTreeMap<i32, usize>,
    pub big_ranks: BTreeMap<i32, usize>,
    /// Ranks of `HW(L_p, L_q)` in the setup.
    pub setup_ranks: BTreeMap<i32, usize>,
    /// The chain exists in both and the inclusion is an isomorphism on its colimits.
    pub iso: bool,
    pub matches_setup: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BridgeReport {
    pub homs: Vec<BridgeHom>,
    pub vertices: Vec<VertexWitness>,
    /// Colimits over the whole slices, which need not be filtered.
    pub slice_homs: Vec<HomComparison>,
}

impl BridgeReport {
    pub fn hom_stable(&self) -> bool {
        self.homs.iter().all(|h| h.iso)
    }

    pub fn essentially_surjective(&self) -> bool {
        self.vertices.iter().all(|v| v.zigzag.is_some())
    }

    pub fn passed(&self) -> bool {
        self.hom_stable() && self.essentially_surjective()
    }

    pub fn first_failure(&self) -> Option<String> {
        if let Some(h) = self.homs.iter().find(|h| !h.iso) {
            return Some(format!(
                "hom ({},{}) has ranks {:?} in the smaller and {:?} in the larger entanglement",
                h.source, h.target, h.small_ranks, h.big_ranks
            ));
        }
        self.vertices
            .iter()
            .find(|v| v.zigzag.is_none())
            .map(|v| format!("{} is not isomorphic to an old vertex", v.vertex))
    }
}

/// The setup's wrapping chain of `L_p`, lifted to the block of `p`.
fn lift_chain(e: &Entanglement, f: &SSSCategory, cs: &ContinuationSystem, p: usize) -> Option<Chain> {
    let lp = e.sss.lagrangians[p];
    let chain = Slice::new(&cs.h, &cs.system, lp).cofinal_chain(&cs.h, &cs.system).ok()?;
    let block = &e.blocks[e.block_of(p)];
    let vertex = |l: usize| block.iter().copied().find(|v| e.sss.lagrangians[*v] == l);
    let lift = |c: usize, target: usize| -> Option<usize> {
        let class = &cs.system.classes[c];
        f.system.find(vertex(class.source)?, target, &class.vector)
    };
    let stages = chain.stages.iter().map(|c| lift(*c, p)).collect::<Option<Vec<_>>>()?;
    let steps = chain
        .steps
        .iter()
        .map(|c| lift(*c, vertex(cs.system.classes[*c].target)?))
        .collect::<Option<Vec<_>>>()?;
    Some(Chain { object: p, stages, steps })
}

impl Entanglement {
    /// A single block at level 0.
    pub fn single(sss: DecoratedSSSet) -> Self {
        let n = sss.vertices.len();
        Entanglement {
            level: 0,
            sss,
            blocks: vec![(0..n).collect()],
            added_edges: Vec::new(),
            added_simplices: Vec::new(),
        }
    }
}

/// Checks that `small ⊂ big` (by vertex names), that `HW(p,q)` computed
/// along the wrapping chain of `p` in its block is the same in both, and that every new vertex is joined
/// to an old one by a zigzag of classes of `C`.
pub fn check_bridge(small: &Entanglement, big: &Entanglement, cs: &ContinuationSystem) -> Result<BridgeReport> {
    let (se, be) = (&small.sss, &big.sss);
    let map: Vec<usize> = se
        .vertices
        .iter()
        .map(|v| be.index(v).ok_or_else(|| Error::NotAnInclusion(format!("vertex {v} is missing"))))
        .collect::<Result<_>>()?;
    for (i, v) in map.iter().enumerate() {
        if se.lagrangians[i] != be.lagrangians[*v] {
            return Err(Error::NotAnInclusion(format!("vertex {} changes Lagrangian", se.vertices[i])));
        }
    }
    for (simplex, d) in &se.simplices {
        let image: Vec<usize> = simplex.iter().map(|v| map[*v]).collect();
        if be.simplices.get(&image) != Some(d) {
            return Err(Error::NotAnInclusion(format!("simplex {} is not carried over", se.simplex_name(simplex))));
        }
    }
    let fs = SSSCategory::build(se, cs)?;
    let fb = SSSCategory::build(be, cs)?;
    let fraction = gz_localize(&cs.h, &cs.system, cs.system.classes.len())?;
    let mut homs = Vec::new();
    for p in 0..se.vertices.len() {
        let cs_chain = lift_chain(small, &fs, cs, p);
        let cb_chain = lift_chain(big, &fb, cs, map[p]);
        for q in 0..se.vertices.len() {
            let setup_ranks = fraction.h.hom(se.lagrangians[p], se.lagrangians[q]).ranks();
            let (small_ranks, big_ranks, names) = match (&cs_chain, &cb_chain) {
                (Some(a), Some(b)) => {
                    let ca = chain_colimit(&fs.h, &fs.system, a, q, a.stages.len(), 1)?;
                    let cb = chain_colimit(&fb.h, &fb.system, b, map[q], b.stages.len(), 1)?;
                    let names = a.stages.iter().map(|c| se.vertices[fs.system.classes[*c].source].clone()).collect();
                    (ca.colimit.ranks(), cb.colimit.ranks(), names)
                }
                _ => (BTreeMap::new(), BTreeMap::new(), Vec::new()),
            };
            homs.push(BridgeHom {
                source: se.vertices[p].clone(),
                target: se.vertices[q].clone(),
                iso: !names.is_empty() && small_ranks == big_ranks,
                matches_setup: big_ranks == setup_ranks,
                chain: names,
                small_ranks,
                big_ranks,
                setup_ranks,
            });
        }
    }
    let same = |_: usize, _: usize, v: &SVec| v.clone();
    let slice_homs = HFunctor {
        source: (&fs.h, &fs.system),
        target: (&fb.h, &fb.system),
        objects: map.clone(),
        homs: &same,
    }
    .compare()?;

    let vertices = (0..be.vertices.len())
        .filter(|v| !map.contains(v))
        .map(|v| VertexWitness {
            vertex: be.vertices[v].clone(),
            zigzag: zigzag(&fb.h, &fb.system, v, |u| map.contains(&u)),
        })
        .collect();
    Ok(BridgeReport { homs, vertices, slice_homs })
}
