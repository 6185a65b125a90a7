//! Maps between slice colimits induced by functors of cohomology categories
//! that carry one multiplicative system into another.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::ainf::HCategory;
use crate::error::{Error, Result};
use crate::linalg::sparse::{self, SVec};
use crate::loc::{slice_colimit, MultiplicativeSystem, Slice};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HomComparison {
    pub source: String,
    pub target: String,
    pub source_rank: usize,
    pub target_rank: usize,
    pub map_rank: usize,
    pub iso: bool,
}

/// A functor on cohomology categories given on objects and homs.
pub(crate) struct HFunctor<'a> {
    pub source: (&'a HCategory, &'a MultiplicativeSystem),
    pub target: (&'a HCategory, &'a MultiplicativeSystem),
    pub objects: Vec<usize>,
    pub homs: &'a (dyn Fn(usize, usize, &SVec) -> SVec + Sync),
}

impl HFunctor<'_> {
    fn class_image(&self, class: usize) -> Result<usize> {
        let (hs, ss) = self.source;
        let st = self.target.1;
        let c = &ss.classes[class];
        let v = (self.homs)(c.source, c.target, &c.vector);
        st.find(self.objects[c.source], self.objects[c.target], &v)
            .ok_or_else(|| Error::RestrictionMismatch(format!("{} has no image class", ss.name(hs, class))))
    }

    /// For every pair of source objects, the induced map from the colimit
    /// over the source slice to the colimit over the target slice.
    pub fn compare(&self) -> Result<Vec<HomComparison>> {
        let (hs, ss) = self.source;
        let (ht, st) = self.target;
        let ring = hs.ring;
        let n = hs.object_count();
        let src_slices: Vec<Slice> = (0..n).map(|x| Slice::new(hs, ss, x)).collect();
        let tgt_slices: Vec<Slice> = (0..n).map(|x| Slice::new(ht, st, self.objects[x])).collect();
        let class_images = (0..ss.classes.len()).map(|c| self.class_image(c)).collect::<Result<Vec<_>>>()?;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
        pairs
            .par_iter()
            .map(|&(x, y)| {
                let cs = slice_colimit(hs, ss, &src_slices[x], y)?;
                let ct = slice_colimit(ht, st, &tgt_slices[x], self.objects[y])?;
                let cols: Vec<SVec> = cs
                    .representatives
                    .iter()
                    .map(|&(v, i)| {
                        let a = src_slices[x].objects[v];
                        let xa = ss.classes[a].source;
                        let num = (self.homs)(xa, y, &sparse::unit(i, ring));
                        let stage = tgt_slices[x]
                            .objects
                            .iter()
                            .position(|o| *o == class_images[a])
                            .expect("image class lies over the image object");
                        sparse::apply(ring, &ct.structure[stage], &num)
                    })
                    .collect();
                let map_rank = sparse::rank(ring, &cols);
                let (r, t) = (cs.module.rank(), ct.module.rank());
                Ok(HomComparison {
                    source: hs.objects[x].clone(),
                    target: hs.objects[y].clone(),
                    source_rank: r,
                    target_rank: t,
                    map_rank,
                    iso: r == t && map_rank == r && cs.module.ranks() == ct.module.ranks(),
                })
            })
            .collect()
    }
}

/// Shortest path from `start` to a vertex satisfying `hit` in the undirected
/// graph of the non-identity classes of `sys`, as vertex names.
pub(crate) fn zigzag(h: &HCategory, sys: &MultiplicativeSystem, start: usize, hit: impl Fn(usize) -> bool) -> Option<Vec<String>> {
    let n = h.object_count();
    let mut adj = vec![Vec::new(); n];
    for (i, c) in sys.classes.iter().enumerate() {
        if !sys.is_identity(h, i) {
            adj[c.source].push(c.target);
            adj[c.target].push(c.source);
        }
    }
    let mut prev = vec![usize::MAX; n];
    prev[start] = start;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        if hit(u) {
            let mut path = vec![u];
            while *path.last().unwrap() != start {
                path.push(prev[*path.last().unwrap()]);
            }
            return Some(path.iter().rev().map(|v| h.objects[*v].clone()).collect());
        }
        for &w in &adj[u] {
            if prev[w] == usize::MAX {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}
