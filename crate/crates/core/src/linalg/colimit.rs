//! Colimits of finite diagrams of graded modules.

use super::graded::{Generator, GradedMap, GradedModule};
use super::scalar::Ring;
use super::sparse::{self, Echelon, SVec};
use crate::error::{Error, Result};

/// A finite diagram: modules at vertices and degree-0 maps along arrows.
#[derive(Clone, Debug, Default)]
pub struct Diagram {
    pub modules: Vec<GradedModule>,
    /// `(source vertex, target vertex, images of source basis vectors)`
    pub arrows: Vec<(usize, usize, Vec<SVec>)>,
}

#[derive(Clone, Debug)]
pub struct Colimit {
    pub module: GradedModule,
    /// Structure map of each vertex, as images of its basis vectors.
    pub structure: Vec<Vec<SVec>>,
}

/// Colimit as the quotient of the direct sum by `ι_t(f x) − ι_s(x)`.
///
/// The quotient basis consists of the non-pivot coordinates of the reduced
/// relation space, so earlier vertices are eliminated in favour of later ones.
pub fn diagram_colimit(ring: Ring, diagram: &Diagram) -> Result<Colimit> {
    let mut offsets = Vec::new();
    let mut total = 0;
    for m in &diagram.modules {
        offsets.push(total);
        total += m.rank();
    }
    let mut rel = Echelon::new(ring);
    for (s, t, cols) in &diagram.arrows {
        if cols.len() != diagram.modules[*s].rank() {
            return Err(Error::ShapeMismatch(format!("arrow {s}->{t} has wrong column count")));
        }
        for (j, c) in cols.iter().enumerate() {
            for (i, _) in c {
                if diagram.modules[*t].degree(*i) != diagram.modules[*s].degree(j) {
                    return Err(Error::ShapeMismatch(format!("arrow {s}->{t} is not of degree 0")));
                }
            }
            let mut v: SVec = c.iter().map(|(i, x)| (offsets[*t] + i, x.clone())).collect();
            v = sparse::axpy(ring, &v, &ring.minus_one(), &sparse::unit(offsets[*s] + j, ring));
            rel.insert(&v);
        }
    }
    let mut free = Vec::new();
    let mut gens = Vec::new();
    let mut pos = vec![usize::MAX; total];
    for (vx, m) in diagram.modules.iter().enumerate() {
        for i in 0..m.rank() {
            let g = offsets[vx] + i;
            if !rel.is_pivot(g) {
                pos[g] = free.len();
                free.push(g);
                gens.push(Generator {
                    label: format!("{vx}:{}", m.label(i)),
                    degree: m.degree(i),
                });
            }
        }
    }
    let module = GradedModule::new(ring, gens)?;
    let structure = diagram
        .modules
        .iter()
        .enumerate()
        .map(|(vx, m)| {
            (0..m.rank())
                .map(|i| {
                    let r = rel.reduce(&sparse::unit(offsets[vx] + i, ring));
                    r.into_iter().map(|(g, x)| (pos[g], x)).collect()
                })
                .collect()
        })
        .collect();
    Ok(Colimit { module, structure })
}

#[derive(Clone, Debug)]
pub struct SequenceColimit {
    pub colimit: GradedModule,
    pub structure: Vec<GradedMap>,
    pub stabilized: bool,
}

fn is_isomorphism(ring: Ring, f: &GradedMap) -> bool {
    f.source.ranks() == f.target.ranks() && sparse::rank(ring, f.columns()) == f.source.rank()
}

/// Direct limit of a finite sequence `M₀ → M₁ → … → Mₙ`.
///
/// `stabilized` holds iff at least `window` transitions exist and the last
/// `window` of them are isomorphisms.
pub fn sequence_colimit(modules: &[GradedModule], maps: &[GradedMap], window: usize) -> Result<SequenceColimit> {
    let Some(first) = modules.first() else {
        return Err(Error::EmptySequence);
    };
    let ring = first.ring;
    if maps.len() + 1 != modules.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} modules need {} maps, got {}",
            modules.len(),
            modules.len() - 1,
            maps.len()
        )));
    }
    for (i, f) in maps.iter().enumerate() {
        if f.source != modules[i] || f.target != modules[i + 1] || f.degree != 0 {
            return Err(Error::ShapeMismatch(format!("map {i} does not match the sequence")));
        }
    }
    let diagram = Diagram {
        modules: modules.to_vec(),
        arrows: maps
            .iter()
            .enumerate()
            .map(|(i, f)| (i, i + 1, f.columns().to_vec()))
            .collect(),
    };
    let c = diagram_colimit(ring, &diagram)?;
    let structure = c
        .structure
        .iter()
        .enumerate()
        .map(|(i, cols)| GradedMap::new(modules[i].clone(), c.module.clone(), 0, cols.clone()))
        .collect::<Result<Vec<_>>>()?;
    let stabilized = maps.len() >= window && maps[maps.len() - window..].iter().all(|f| is_isomorphism(ring, f));
    Ok(SequenceColimit {
        colimit: c.module,
        structure,
        stabilized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2_line(ring: Ring, label: &str) -> GradedModule {
        GradedModule::from_pairs(ring, &[(label, 0)]).unwrap()
    }

    #[test]
    fn zero_maps_leave_the_last_term() {
        let r = Ring::PrimeField(2);
        let ms: Vec<_> = (0..3).map(|i| f2_line(r, &format!("e{i}"))).collect();
        let fs: Vec<_> = (0..2).map(|i| GradedMap::zero(ms[i].clone(), ms[i + 1].clone(), 0)).collect();
        let c = sequence_colimit(&ms, &fs, 2).unwrap();
        assert_eq!(c.colimit.rank(), 1);
        assert!(!c.stabilized);
        assert!(c.structure[0].is_zero());
    }

    #[test]
    fn identities_stabilize() {
        let r = Ring::Rationals;
        let m = f2_line(r, "e");
        let id = GradedMap::identity(&m);
        let c = sequence_colimit(&[m.clone(), m.clone(), m.clone()], &[id.clone(), id], 2).unwrap();
        assert_eq!(c.colimit.rank(), 1);
        assert!(c.stabilized);
    }
}
