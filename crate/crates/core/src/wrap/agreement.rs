//! Comparing HW with the cone-quotient localization of the envelope.

use serde::Serialize;

use super::hw::{wrapped_df_category, WINDOW};
use super::system::ContinuationSystem;
use crate::error::Result;
use crate::linalg::sparse;
use crate::loc::localize_by_cones;

#[derive(Clone, Debug, Serialize)]
pub struct AgreementPair {
    pub source: String,
    pub target: String,
    pub hw_rank: usize,
    pub quotient_ranks: Vec<usize>,
    pub stabilized_at: Option<usize>,
    pub ranks_agree: bool,
    /// Both localizations kill the same number of classes of H⁰.
    pub kernels_agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AgreementReport {
    pub depth: usize,
    pub window: usize,
    pub stabilized_pairs: usize,
    pub pairs: Vec<AgreementPair>,
}

impl AgreementReport {
    /// At least one stabilized pair, and agreement on all of them.
    pub fn passed(&self) -> bool {
        self.stabilized_pairs > 0
            && self
                .pairs
                .iter()
                .filter(|p| p.stabilized_at.is_some())
                .all(|p| p.ranks_agree && p.kernels_agree)
    }

    pub fn all_stabilized(&self) -> bool {
        self.stabilized_pairs == self.pairs.len()
    }
}

/// H⁰ of the quotient by cones of the system classes, truncated at each
/// depth up to `depth`, against degree-0 HW ranks.
pub fn check_localization_agreement(cs: &ContinuationSystem, depth: usize) -> Result<AgreementReport> {
    let w = wrapped_df_category(cs, cs.system.classes.len())?;
    let q = localize_by_cones(&cs.envelope, &cs.cones(), depth, WINDOW)?;
    let ring = cs.h.ring;
    let mut pairs = Vec::new();
    for p in &q.pairs {
        let x = cs.h.object_index(&p.source).expect("same objects");
        let y = cs.h.object_index(&p.target).expect("same objects");
        let hw_rank = w.fraction.h.hom(x, y).rank_in(0);
        let deg0 = cs.h.hom(x, y).indices_in(0);
        let images: Vec<_> = deg0.iter().map(|i| w.fraction.map_class(x, y, &sparse::unit(*i, ring))).collect();
        let hw_kernel = deg0.len() - sparse::rank(ring, &images);
        let last = *p.ranks.last().expect("depth 0 always computed");
        pairs.push(AgreementPair {
            source: p.source.clone(),
            target: p.target.clone(),
            hw_rank,
            quotient_ranks: p.ranks.clone(),
            stabilized_at: p.stabilized_at,
            ranks_agree: last == hw_rank,
            kernels_agree: p.kernel_from_base == hw_kernel,
        });
    }
    Ok(AgreementReport {
        depth,
        window: WINDOW,
        stabilized_pairs: pairs.iter().filter(|p| p.stabilized_at.is_some()).count(),
        pairs,
    })
}
