//! Exhaustive A∞-relation checking.

use rayon::prelude::*;
use serde::Serialize;

use super::category::AInfOps;
use crate::linalg::sparse::{self, SVec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationViolation {
    pub chain: Vec<String>,
    pub arity: usize,
    pub inputs: Vec<String>,
    pub residual: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RelationReport {
    pub max_arity: usize,
    pub tuples_checked: usize,
    pub total_violations: usize,
    /// The first violations in canonical order.
    pub violations: Vec<RelationViolation>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.total_violations == 0
    }
}

const REPORTED: usize = 20;

/// All object chains of length `k + 1` whose consecutive homs are nonzero.
pub fn chains<A: AInfOps + ?Sized>(a: &A, k: usize) -> Vec<Vec<usize>> {
    let n = a.object_count();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).map(|x| vec![x]).collect();
    stack.reverse();
    while let Some(c) = stack.pop() {
        if c.len() == k + 1 {
            out.push(c);
            continue;
        }
        let last = *c.last().unwrap();
        for y in (0..n).rev() {
            if !a.hom(last, y).is_zero() {
                let mut d = c.clone();
                d.push(y);
                stack.push(d);
            }
        }
    }
    out
}

/// The full A∞-relation sum on basis inputs along `chain`.
pub fn relation_residual<A: AInfOps + ?Sized>(a: &A, chain: &[usize], inputs: &[usize]) -> SVec {
    let ring = a.ring();
    let k = inputs.len();
    let m = a.max_arity();
    let mut out: SVec = Vec::new();
    let mut reduced = 0i32;
    for i in 0..k {
        for j in 1..=k - i {
            if j > m || k - j + 1 > m {
                continue;
            }
            let inner = a.mu(&chain[i..=i + j], &inputs[i..i + j]);
            if inner.is_empty() {
                continue;
            }
            let sign = ring.sign(reduced.rem_euclid(2) == 1);
            let mut outer_chain = chain[..=i].to_vec();
            outer_chain.extend_from_slice(&chain[i + j..]);
            let mut args = inputs[..i].to_vec();
            args.push(0);
            args.extend_from_slice(&inputs[i + j..]);
            for (b, coef) in &inner {
                args[i] = *b;
                let v = a.mu(&outer_chain, &args);
                if !v.is_empty() {
                    out = sparse::axpy(ring, &out, &ring.mul(&sign, coef), &v);
                }
            }
        }
        reduced += a.hom(chain[i], chain[i + 1]).degree(inputs[i]) - 1;
    }
    out
}

fn tuples(ranks: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = ranks.iter().product();
    (0..total).map(move |mut t| {
        let mut v = vec![0; ranks.len()];
        for s in (0..ranks.len()).rev() {
            v[s] = t % ranks[s];
            t /= ranks[s];
        }
        v
    })
}

/// Checks every A∞-relation up to `max_arity` on all basis tuples.
pub fn check_ainf_relations<A: AInfOps + ?Sized>(a: &A, max_arity: usize) -> RelationReport {
    let names = a.object_names();
    let all: Vec<Vec<usize>> = (1..=max_arity).flat_map(|k| chains(a, k)).collect();
    let results: Vec<(usize, usize, Vec<RelationViolation>)> = all
        .par_iter()
        .map(|chain| {
            let k = chain.len() - 1;
            let ranks: Vec<usize> = (0..k).map(|s| a.hom(chain[s], chain[s + 1]).rank()).collect();
            // every term has an operation of arity above the maximum
            if k + 1 > 2 * a.max_arity() {
                return (ranks.iter().product(), 0, Vec::new());
            }
            let mut count = 0;
            let mut bad = 0;
            let mut found = Vec::new();
            for inputs in tuples(&ranks) {
                count += 1;
                let r = relation_residual(a, chain, &inputs);
                if !r.is_empty() {
                    bad += 1;
                    if found.len() < REPORTED {
                        found.push(RelationViolation {
                            chain: chain.iter().map(|x| names[*x].clone()).collect(),
                            arity: k,
                            inputs: inputs
                                .iter()
                                .enumerate()
                                .map(|(s, i)| a.hom(chain[s], chain[s + 1]).label(*i).to_string())
                                .collect(),
                            residual: a.hom(chain[0], chain[k]).format_vector(&r),
                        });
                    }
                }
            }
            (count, bad, found)
        })
        .collect();
    let mut report = RelationReport {
        max_arity,
        ..Default::default()
    };
    for (c, b, f) in results {
        report.tuples_checked += c;
        report.total_violations += b;
        for v in f {
            if report.violations.len() < REPORTED {
                report.violations.push(v);
            }
        }
    }
    report
}
