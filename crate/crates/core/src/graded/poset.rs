use std::sync::Arc;

use super::GradedAlgebra;
use crate::algebra::FdAlgebra;
use crate::category::{CategoryKind, IndexCategory};
use crate::error::{Error, Result};
use crate::field::{add_vectors, Subspace, Vector};

/// Grades `A` over the interval category of a poset using an orthogonal
/// decomposition `1 = sum e_l`: the component at `l -> m` is `e_m A e_l`.
///
/// Returns the graded algebra and, per arrow, the basis of its component
/// inside `A`.
pub fn build_poset_graded(
    algebra: &FdAlgebra,
    idempotents: &[(String, Vector)],
    poset: Arc<IndexCategory>,
) -> Result<(GradedAlgebra, Vec<Subspace>)> {
    if *poset.kind() != CategoryKind::PosetInterval {
        return Err(Error::StructureError(
            "expected a poset interval category".into(),
        ));
    }
    let field = algebra.field();
    let objects = poset.objects();
    let mut es: Vec<Vector> = vec![Vec::new(); objects.len()];
    for (name, e) in idempotents {
        let o = poset.object_index(name)?;
        if e.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "idempotent for {name} has the wrong length"
            )));
        }
        es[o] = e.clone();
    }
    if let Some(o) = es.iter().position(Vec::is_empty) {
        return Err(Error::IdempotentError(format!(
            "no idempotent given for {}",
            objects[o]
        )));
    }
    let mut sum = algebra.zero();
    for (l, el) in es.iter().enumerate() {
        for (m, em) in es.iter().enumerate() {
            let p = algebra.mul(em, el);
            let expected = if l == m { el.clone() } else { algebra.zero() };
            if p != expected {
                return Err(Error::IdempotentError(format!(
                    "e_{} e_{} is not {}",
                    objects[m],
                    objects[l],
                    if l == m { "idempotent" } else { "zero" }
                )));
            }
        }
        sum = add_vectors(&sum, el);
    }
    if &sum != algebra.one() {
        return Err(Error::IdempotentError(
            "idempotents do not sum to the unit".into(),
        ));
    }
    let corner = |m: usize, l: usize| {
        Subspace::from_rows(
            field,
            algebra.dim(),
            (0..algebra.dim())
                .map(|i| algebra.mul(&algebra.mul(&es[m], &algebra.basis_element(i)), &es[l])),
        )
    };
    let n = objects.len();
    for l in 0..n {
        for m in 0..n {
            let c = corner(m, l);
            let related = poset
                .arrows()
                .iter()
                .any(|a| a.source == l && a.target == m);
            if !c.is_zero() && !related {
                return Err(Error::TriangularityViolation(format!(
                    "e_{} A e_{} has dimension {} but {} is not below {}",
                    objects[m],
                    objects[l],
                    c.dim(),
                    objects[l],
                    objects[m]
                )));
            }
        }
    }
    let bases: Vec<Subspace> = poset
        .arrows()
        .iter()
        .map(|a| corner(a.target, a.source))
        .collect();
    let dims = bases.iter().map(Subspace::dim).collect();
    let units = (0..n)
        .map(|o| {
            bases[poset.identity(o)]
                .coordinates(&es[o])
                .expect("e_l lies in its corner")
        })
        .collect();
    let graded = GradedAlgebra::from_fn(field, poset.clone(), dims, units, |a, i, b, j| {
        let c = poset.compose(a, b).arrow().expect("composable");
        let p = algebra.mul(&bases[a].basis()[i], &bases[b].basis()[j]);
        bases[c]
            .coordinates(&p)
            .ok_or_else(|| Error::StructureError("corner product escaped its component".into()))
    })?;
    Ok((graded, bases))
}
