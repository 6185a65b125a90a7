//! Choosing compatible collections of Floer data.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::model::{face_positions, subtuple, CompatibleCollection, Datum, WeakFloerSetup};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// First candidate in stored order.
    Lexicographic,
    /// Uniform choice among candidates from a seeded ChaCha8 stream.
    Seeded(u64),
}

fn candidates<'a>(s: &'a WeakFloerSetup, t: &[usize], chosen: &CompatibleCollection) -> Vec<&'a Datum> {
    s.data(t)
        .iter()
        .filter(|d| {
            t.len() < 3
                || (0..t.len()).all(|j| {
                    let f = subtuple(t, &face_positions(t.len(), j));
                    chosen.get(&f) == Some(d.faces[j].as_str())
                })
        })
        .collect()
}

/// Chooses one datum per composable tuple by induction on tuple length,
/// each consistent with the choices on its codimension-one faces.
pub fn choose_compatible_collection(s: &WeakFloerSetup, strategy: Strategy) -> Result<CompatibleCollection> {
    let mut rng = match strategy {
        Strategy::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        Strategy::Lexicographic => None,
    };
    let mut out = CompatibleCollection::default();
    for t in s.composable_tuples() {
        let c = candidates(s, &t, &out);
        let pick = match rng.as_mut() {
            Some(r) => c.choose(r).copied(),
            None => c.first().copied(),
        };
        let d = pick.ok_or_else(|| Error::NoSection(s.tuple_name(&t)))?;
        out.delta.insert(t, d.name.clone());
    }
    Ok(out)
}

/// Every compatible collection, up to `limit` of them.
pub fn all_compatible_collections(s: &WeakFloerSetup, limit: usize) -> Result<Vec<CompatibleCollection>> {
    let tuples = s.composable_tuples();
    let mut out = Vec::new();
    let mut partial = vec![CompatibleCollection::default()];
    for t in &tuples {
        let mut next = Vec::new();
        for p in &partial {
            let c = candidates(s, t, p);
            if c.is_empty() {
                return Err(Error::NoSection(s.tuple_name(t)));
            }
            for d in c {
                let mut q = p.clone();
                q.delta.insert(t.clone(), d.name.clone());
                next.push(q);
                if next.len() > limit {
                    return Err(Error::Unsupported(format!("more than {limit} compatible collections")));
                }
            }
        }
        partial = next;
    }
    out.extend(partial);
    Ok(out)
}

/// Checks that a collection picks existing data consistently with all faces.
pub fn check_collection(s: &WeakFloerSetup, delta: &CompatibleCollection) -> Result<()> {
    for t in s.composable_tuples() {
        let name = delta.get(&t).ok_or_else(|| Error::NoSection(s.tuple_name(&t)))?;
        let d = s
            .datum(&t, name)
            .ok_or_else(|| Error::Schema(format!("collection names unknown datum {name} on {}", s.tuple_name(&t))))?;
        if t.len() >= 3 {
            for j in 0..t.len() {
                let f = subtuple(&t, &face_positions(t.len(), j));
                if delta.get(&f) != Some(d.faces[j].as_str()) {
                    return Err(Error::RestrictionMismatch(format!(
                        "{} on {} does not restrict to the chosen datum on {}",
                        name,
                        s.tuple_name(&t),
                        s.tuple_name(&f)
                    )));
                }
            }
        }
    }
    Ok(())
}
