//! Random finite categories presented by acyclic quivers with relations,
//! their linearizations, and a brute-force roof quotient.

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;

use wrapcat_core::ainf::HCategory;
use wrapcat_core::linalg::sparse::{self, SVec};
use wrapcat_core::linalg::{GradedModule, Ring};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wrapcat_core::loc::{check_right_locality, gz_localize, Class, MultiplicativeSystem};

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.0[hi] = lo;
        true
    }
}

/// A finite category with morphisms numbered `0..n`.
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    pub objects: usize,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    /// `(f, g) ↦ g ∘ f`
    comp: HashMap<(usize, usize), usize>,
    pub identity: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl FiniteCategory {
    pub fn morphisms(&self) -> usize {
        self.source.len()
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.morphisms()).filter(|&m| self.source[m] == x && self.target[m] == y).collect()
    }

    /// `g ∘ f`
    pub fn compose(&self, f: usize, g: usize) -> usize {
        self.comp[&(f, g)]
    }

    pub fn into(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.morphisms()).filter(move |&m| self.target[m] == x)
    }
}

/// Free category on a random acyclic quiver with `2..=max_objects` vertices
/// and `1..=max_arrows` arrows, modulo up to two random identifications of
/// parallel paths.
pub fn random_category(rng: &mut impl Rng, max_objects: usize, max_arrows: usize) -> FiniteCategory {
    let n = rng.gen_range(2..=max_objects);
    let k = rng.gen_range(1..=max_arrows);
    let quiver: Vec<(usize, usize)> = (0..k)
        .map(|_| {
            let a = rng.gen_range(0..n - 1);
            (a, rng.gen_range(a + 1..n))
        })
        .collect();

    let mut paths: Vec<(usize, usize, Vec<usize>)> = (0..n).map(|x| (x, x, Vec::new())).collect();
    let mut i = 0;
    while i < paths.len() {
        let (s, t, p) = paths[i].clone();
        for (a, &(u, v)) in quiver.iter().enumerate() {
            if u == t {
                let mut q = p.clone();
                q.push(a);
                paths.push((s, v, q));
            }
        }
        i += 1;
    }
    let index: HashMap<(usize, Vec<usize>), usize> = paths.iter().enumerate().map(|(i, (s, _, p))| ((*s, p.clone()), i)).collect();
    let extend = |i: usize, a: usize| -> Option<usize> {
        let (s, t, p) = &paths[i];
        (quiver[a].0 == *t).then(|| {
            let mut q = p.clone();
            q.push(a);
            index[&(*s, q)]
        })
    };
    let prepend = |i: usize, a: usize| -> Option<usize> {
        let (s, _, p) = &paths[i];
        (quiver[a].1 == *s).then(|| {
            let mut q = vec![a];
            q.extend(p);
            index[&(quiver[a].0, q)]
        })
    };

    let mut uf = UnionFind::new(paths.len());
    for _ in 0..rng.gen_range(0..=2) {
        let long: Vec<usize> = (0..paths.len()).filter(|&i| !paths[i].2.is_empty()).collect();
        let &p = long.choose(rng).expect("at least one arrow");
        let parallel: Vec<usize> = long
            .iter()
            .copied()
            .filter(|&q| q != p && paths[q].0 == paths[p].0 && paths[q].1 == paths[p].1)
            .collect();
        if let Some(&q) = parallel.choose(rng) {
            uf.union(p, q);
        }
    }
    loop {
        let mut changed = false;
        for i in 0..paths.len() {
            for j in i + 1..paths.len() {
                if uf.find(i) != uf.find(j) {
                    continue;
                }
                for a in 0..quiver.len() {
                    if let (Some(x), Some(y)) = (extend(i, a), extend(j, a)) {
                        changed |= uf.union(x, y);
                    }
                    if let (Some(x), Some(y)) = (prepend(i, a), prepend(j, a)) {
                        changed |= uf.union(x, y);
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    let mut class_of = vec![usize::MAX; paths.len()];
    let mut reps = Vec::new();
    for i in 0..paths.len() {
        let r = uf.find(i);
        if class_of[r] == usize::MAX {
            class_of[r] = reps.len();
            reps.push(r);
        }
        class_of[i] = class_of[r];
    }
    let source: Vec<usize> = reps.iter().map(|&r| paths[r].0).collect();
    let target: Vec<usize> = reps.iter().map(|&r| paths[r].1).collect();
    let mut comp = HashMap::new();
    for (f, &rf) in reps.iter().enumerate() {
        for (g, &rg) in reps.iter().enumerate() {
            if target[f] != source[g] {
                continue;
            }
            let mut p = paths[rf].2.clone();
            p.extend(&paths[rg].2);
            comp.insert((f, g), class_of[index[&(source[f], p)]]);
        }
    }
    FiniteCategory {
        objects: n,
        identity: (0..n).map(|x| class_of[x]).collect(),
        arrows: (0..quiver.len()).map(|a| class_of[index[&(quiver[a].0, vec![a])]]).collect(),
        source,
        target,
        comp,
    }
}

/// Identities and the composition closure of a random subset of the arrows.
pub fn random_system(cat: &FiniteCategory, rng: &mut impl Rng) -> BTreeSet<usize> {
    let mut s: BTreeSet<usize> = cat.identity.iter().copied().collect();
    s.extend(cat.arrows.iter().copied().filter(|_| rng.gen_bool(0.5)));
    loop {
        let new: Vec<usize> = s
            .iter()
            .flat_map(|&f| s.iter().filter(move |&&g| cat.target[f] == cat.source[g]).map(move |&g| cat.compose(f, g)))
            .filter(|m| !s.contains(m))
            .collect();
        if new.is_empty() {
            return s;
        }
        s.extend(new);
    }
}

/// Right Ore condition and right cancellation, checked on elements.
pub fn is_right_multiplicative(cat: &FiniteCategory, s: &BTreeSet<usize>) -> bool {
    for &c in s {
        let (yw, y) = (cat.source[c], cat.target[c]);
        for x in 0..cat.objects {
            for g in cat.hom(x, y) {
                let square = s.iter().filter(|&&t| cat.target[t] == x).any(|&t| {
                    cat.hom(cat.source[t], yw)
                        .into_iter()
                        .any(|h| cat.compose(h, c) == cat.compose(t, g))
                });
                if !square {
                    return false;
                }
            }
            let hom = cat.hom(x, yw);
            for &f in &hom {
                for &g in &hom {
                    if f == g || cat.compose(f, c) != cat.compose(g, c) {
                        continue;
                    }
                    let equalized = s
                        .iter()
                        .filter(|&&t| cat.target[t] == x)
                        .any(|&t| cat.compose(t, f) == cat.compose(t, g));
                    if !equalized {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The linear category with one degree-0 basis element per morphism.
pub fn linearize(cat: &FiniteCategory, ring: Ring) -> HCategory {
    let n = cat.objects;
    let homs: Vec<Vec<Vec<usize>>> = (0..n).map(|x| (0..n).map(|y| cat.hom(x, y)).collect()).collect();
    let pos = |m: usize| homs[cat.source[m]][cat.target[m]].iter().position(|&k| k == m).unwrap();
    let mut modules = std::collections::BTreeMap::new();
    let mut comp = std::collections::BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            let labels: Vec<String> = homs[x][y].iter().map(|m| format!("m{m}")).collect();
            let pairs: Vec<(&str, i32)> = labels.iter().map(|l| (l.as_str(), 0)).collect();
            modules.insert((x, y), GradedModule::from_pairs(ring, &pairs).unwrap());
            for z in 0..n {
                if homs[x][y].is_empty() || homs[y][z].is_empty() {
                    continue;
                }
                let table: Vec<Vec<SVec>> = homs[x][y]
                    .iter()
                    .map(|&f| homs[y][z].iter().map(|&g| sparse::unit(pos(cat.compose(f, g)), ring)).collect())
                    .collect();
                comp.insert((x, y, z), table);
            }
        }
    }
    let identities = (0..n).map(|x| (x, sparse::unit(pos(cat.identity[x]), ring))).collect();
    let objects = (0..n).map(|x| format!("X{x}")).collect();
    HCategory::from_tables(ring, objects, modules, comp, identities)
}

pub fn basis_vector(cat: &FiniteCategory, m: usize, ring: Ring) -> SVec {
    let i = cat.hom(cat.source[m], cat.target[m]).iter().position(|&k| k == m).unwrap();
    sparse::unit(i, ring)
}

pub fn linear_system(cat: &FiniteCategory, h: &HCategory, s: &BTreeSet<usize>) -> MultiplicativeSystem {
    let classes = s
        .iter()
        .map(|&m| Class {
            source: cat.source[m],
            target: cat.target[m],
            vector: basis_vector(cat, m, h.ring),
        })
        .collect();
    MultiplicativeSystem::with_identities(h, classes)
}

/// Roofs `x ← x' → y` modulo `(s, f) ~ (s∘u, f∘u)` for every morphism `u`
/// with `s∘u ∈ S`.
pub struct RoofQuotient {
    index: HashMap<(usize, usize), usize>,
    class: Vec<usize>,
    pub count: usize,
}

impl RoofQuotient {
    pub fn new(cat: &FiniteCategory, s: &BTreeSet<usize>, x: usize, y: usize) -> Self {
        let mut roofs = Vec::new();
        for &w in s.iter().filter(|&&w| cat.target[w] == x) {
            for f in cat.hom(cat.source[w], y) {
                roofs.push((w, f));
            }
        }
        let index: HashMap<(usize, usize), usize> = roofs.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        let mut uf = UnionFind::new(roofs.len());
        for (i, &(w, f)) in roofs.iter().enumerate() {
            for u in cat.into(cat.source[w]) {
                let wu = cat.compose(u, w);
                if s.contains(&wu) {
                    uf.union(i, index[&(wu, cat.compose(u, f))]);
                }
            }
        }
        let mut class = Vec::new();
        let mut names = HashMap::new();
        for i in 0..roofs.len() {
            let r = uf.find(i);
            let next = names.len();
            class.push(*names.entry(r).or_insert(next));
        }
        RoofQuotient {
            count: names.len(),
            index,
            class,
        }
    }

    /// Class of the roof `(1_x, f)`.
    pub fn of_morphism(&self, cat: &FiniteCategory, f: usize) -> usize {
        self.class[self.index[&(cat.identity[cat.source[f]], f)]]
    }
}

/// Compares every hom of `gz_localize` with the roof quotient, and the
/// localization functor with the classes of the roofs `(1, f)`.
pub fn compare(cat: &FiniteCategory, s: &BTreeSet<usize>, ring: Ring) -> Result<(), String> {
    let h = linearize(cat, ring);
    let sys = linear_system(cat, &h, s);
    let f = gz_localize(&h, &sys, sys.classes.len()).map_err(|e| e.to_string())?;
    for x in 0..cat.objects {
        for y in 0..cat.objects {
            let q = RoofQuotient::new(cat, s, x, y);
            let rank = f.h.hom(x, y).rank();
            if rank != q.count {
                return Err(format!("X{x} → X{y}: rank {rank}, oracle {}", q.count));
            }
            let homs = cat.hom(x, y);
            for &a in &homs {
                for &b in &homs {
                    let same = q.of_morphism(cat, a) == q.of_morphism(cat, b);
                    let image = |m| f.map_class(x, y, &basis_vector(cat, m, ring));
                    if same != (image(a) == image(b)) {
                        return Err(format!("m{a}, m{b}: identified {same} by the oracle"));
                    }
                }
            }
        }
    }
    check_right_locality(&f, &h, &sys)
}

pub fn valid_instances(seed: u64, wanted: usize) -> Vec<(FiniteCategory, BTreeSet<usize>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..2000 {
        let cat = random_category(&mut rng, 5, 8);
        let s = random_system(&cat, &mut rng);
        if s.len() > cat.objects && is_right_multiplicative(&cat, &s) {
            out.push((cat, s));
            if out.len() == wanted {
                break;
            }
        }
    }
    out
}
