//! Complete sets of primitive orthogonal idempotents, lifting modulo the
//! radical, locality, and the decomposition of projectives into
//! indecomposable summands.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::FdAlgebra;
use crate::error::{Error, Result};
use crate::field::{
    add_vectors, axpy, scale_vector, sub_vectors, zero_vector, Matrix, Scalar, Subspace, Vector,
};
use crate::graded::{endomorphism_algebra, hom_from_coordinates, GradedHom, GradedModule};
use crate::radical::algebra_radical;

pub const DEFAULT_SEED: u64 = 0x5EED;

/// Upper bound on `e <- 3e^2 - 2e^3` rounds before giving up.
const LIFT_ROUNDS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdempotentSet {
    pub elements: Vec<Vector>,
    pub orthogonal: bool,
    pub complete: bool,
    pub primitive: Vec<bool>,
    pub seed: u64,
}

impl IdempotentSet {
    fn certify(a: &FdAlgebra, elements: Vec<Vector>, seed: u64) -> Result<IdempotentSet> {
        let mut orthogonal = true;
        for (i, x) in elements.iter().enumerate() {
            if !a.is_idempotent(x) {
                return Err(Error::IdempotentError(format!(
                    "element {i} is not idempotent"
                )));
            }
            for (j, y) in elements.iter().enumerate() {
                if i != j && !a.mul(x, y).iter().all(Scalar::is_zero) {
                    orthogonal = false;
                }
            }
        }
        let sum = elements
            .iter()
            .fold(a.zero(), |acc, e| add_vectors(&acc, e));
        let complete = &sum == a.one();
        let primitive = elements
            .iter()
            .map(|e| {
                let (corner, _) = a.corner(e)?;
                let j = algebra_radical(&corner)?;
                Ok(corner.dim() - j.dim() == 1)
            })
            .collect::<Result<_>>()?;
        Ok(IdempotentSet {
            elements,
            orthogonal,
            complete,
            primitive,
            seed,
        })
    }

    pub fn is_complete_primitive(&self) -> bool {
        self.orthogonal && self.complete && self.primitive.iter().all(|&p| p)
    }
}

/// Lifts an idempotent of `a / J` (given in the basis of
/// [`FdAlgebra::quotient`]) to an idempotent of `a`.
pub fn lift_idempotent(a: &FdAlgebra, e_bar: &[Scalar]) -> Result<Vector> {
    let j = algebra_radical(a)?;
    let q = a.quotient(&j)?;
    if e_bar.len() != q.dim() {
        return Err(Error::DimensionMismatch(
            "element is not in the quotient by the radical".into(),
        ));
    }
    if !q.is_idempotent(e_bar) {
        return Err(Error::InputNotIdempotentModJ(
            "element is not idempotent modulo the radical".into(),
        ));
    }
    lift_element(a, &a.lift_from_quotient(&j, e_bar))
}

/// Iterates `e <- 3e^2 - 2e^3` from an element idempotent modulo a nilpotent ideal.
fn lift_element(a: &FdAlgebra, x: &[Scalar]) -> Result<Vector> {
    let field = a.field();
    let (three, two) = (field.from_i64(3), field.from_i64(2));
    let mut e = x.to_vec();
    for _ in 0..LIFT_ROUNDS {
        let e2 = a.mul(&e, &e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = a.mul(&e2, &e);
        e = sub_vectors(&scale_vector(&three, &e2), &scale_vector(&two, &e3));
    }
    Err(Error::LiftFailure(
        "idempotent iteration did not stabilise".into(),
    ))
}

fn rng_for(a: &FdAlgebra, seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ a.fingerprint())
}

/// Elements tried when looking for zero divisors: the basis, then seeded
/// random small combinations, in a seeded order.
fn candidates(a: &FdAlgebra, rng: &mut ChaCha8Rng) -> Vec<Vector> {
    let n = a.dim();
    let field = a.field();
    let mut out: Vec<Vector> = (0..n).map(|i| a.basis_element(i)).collect();
    out.shuffle(rng);
    for _ in 0..4 * n + 4 {
        out.push(
            (0..n)
                .map(|_| field.from_i64(rng.gen_range(-1..=2)))
                .collect(),
        );
    }
    out
}

/// Right identity of the left ideal `a z`, which is an idempotent
/// generating it when `a` is semisimple.
fn right_identity(a: &FdAlgebra, z: &[Scalar]) -> Result<Option<Vector>> {
    let n = a.dim();
    let field = a.field();
    let ideal = Subspace::from_rows(field, n, (0..n).map(|i| a.mul(&a.basis_element(i), z)));
    let basis = ideal.basis();
    let k = basis.len();
    // sum_c coeff_c l_i l_c = l_i for every basis element l_i
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let products: Vec<Vec<Vector>> = basis
        .iter()
        .map(|li| basis.iter().map(|lc| a.mul(li, lc)).collect())
        .collect();
    for (i, li) in basis.iter().enumerate() {
        for coord in 0..n {
            rows.push((0..k).map(|c| products[i][c][coord].clone()).collect());
            rhs.push(li[coord].clone());
        }
    }
    let m = Matrix::from_rows_with_cols(field, k, rows)?;
    Ok(m.solve(&rhs)?.map(|c| ideal.combine(&c)))
}

/// A nontrivial idempotent of a semisimple algebra, or `None` when none of
/// the candidates has an eigenvalue in the base field.
fn split_once(a: &FdAlgebra, rng: &mut ChaCha8Rng) -> Result<Option<Vector>> {
    let one = a.one().clone();
    for x in candidates(a, rng) {
        let mu = a.minimal_polynomial(&x);
        if mu.degree() == Some(1) {
            continue;
        }
        if let Some(lambda) = mu.roots().into_iter().next() {
            let mut z = x.clone();
            axpy(&mut z, &-lambda, &one);
            let e = right_identity(a, &z)?.ok_or_else(|| {
                Error::StructureError("quotient by the radical is not semisimple".into())
            })?;
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// Complete primitive orthogonal idempotents of a semisimple algebra.
fn split_semisimple(a: &FdAlgebra, rng: &mut ChaCha8Rng) -> Result<Vec<Vector>> {
    if a.dim() == 1 {
        return Ok(vec![a.one().clone()]);
    }
    let Some(e) = split_once(a, rng)? else {
        return Err(Error::NonSplitSemisimpleQuotient(format!(
            "simple component of dimension {} over {} has no idempotent defined over the base field",
            a.dim(),
            a.field()
        )));
    };
    let f = sub_vectors(a.one(), &e);
    let mut out = Vec::new();
    for g in [e, f] {
        let (corner, span) = a.corner(&g)?;
        for x in split_semisimple(&corner, rng)? {
            out.push(span.combine(&x));
        }
    }
    Ok(out)
}

/// Complete set of primitive orthogonal idempotents of `a`, sorted.
pub fn complete_primitive_set(a: &FdAlgebra, seed: u64) -> Result<IdempotentSet> {
    let elements = primitive_elements(a, seed)?;
    IdempotentSet::certify(a, elements, seed)
}

fn primitive_elements(a: &FdAlgebra, seed: u64) -> Result<Vec<Vector>> {
    let j = algebra_radical(a)?;
    let q = a.quotient(&j)?;
    let mut rng = rng_for(a, seed);
    let bars = split_semisimple(&q, &mut rng)?;
    let one = a.one().clone();
    let mut lifted: Vec<Vector> = Vec::with_capacity(bars.len());
    let mut taken = a.zero();
    for (k, bar) in bars.iter().enumerate() {
        let rest = sub_vectors(&one, &taken);
        let e = if k + 1 == bars.len() {
            rest
        } else {
            let x = a.mul(&a.mul(&rest, &a.lift_from_quotient(&j, bar)), &rest);
            lift_element(a, &x)?
        };
        taken = add_vectors(&taken, &e);
        lifted.push(e);
    }
    lifted.sort();
    Ok(lifted)
}

/// Refines a complete set of orthogonal idempotents `hints` into a complete
/// primitive set, splitting each corner `h a h` separately.
pub fn refine_idempotents(a: &FdAlgebra, hints: &[Vector], seed: u64) -> Result<IdempotentSet> {
    let mut elements = Vec::new();
    for h in hints {
        if h.iter().all(Scalar::is_zero) {
            continue;
        }
        let (corner, span) = a.corner(h)?;
        for x in primitive_elements(&corner, seed)? {
            elements.push(span.combine(&x));
        }
    }
    IdempotentSet::certify(a, elements, seed)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalityCertificate {
    pub local: bool,
    pub quotient_dim: usize,
    /// A nontrivial idempotent of the quotient was found (only when not local).
    pub split: bool,
}

/// Whether `a / J` is a division ring.
pub fn is_local(a: &FdAlgebra, seed: u64) -> Result<LocalityCertificate> {
    let j = algebra_radical(a)?;
    let q = a.quotient(&j)?;
    if q.dim() <= 1 {
        return Ok(LocalityCertificate {
            local: q.dim() == 1,
            quotient_dim: q.dim(),
            split: true,
        });
    }
    match split_once(&q, &mut rng_for(a, seed))? {
        Some(_) => Ok(LocalityCertificate {
            local: false,
            quotient_dim: q.dim(),
            split: true,
        }),
        None => Err(Error::NonSplitSemisimpleQuotient(format!(
            "quotient of dimension {} has no idempotent defined over the base field",
            q.dim()
        ))),
    }
}

/// One summand `P_j` of a projective, with its idempotent, projection and inclusion.
#[derive(Clone, Debug)]
pub struct Summand {
    pub idempotent: GradedHom,
    pub module: Arc<GradedModule>,
    pub projection: GradedHom,
    pub inclusion: GradedHom,
    pub local: bool,
}

#[derive(Clone, Debug)]
pub struct ProjectiveDecomposition {
    pub parent: Arc<GradedModule>,
    pub summands: Vec<Summand>,
}

impl ProjectiveDecomposition {
    /// `sum_j i_j ∘ π_j`.
    pub fn resum(&self) -> GradedHom {
        self.summands
            .iter()
            .fold(GradedHom::zero(&self.parent, &self.parent), |acc, s| {
                acc.add(&s.inclusion.after(&s.projection))
            })
    }
}

/// Splits `p` along a complete primitive idempotent set of `End(p)`.
pub fn decompose_projective(p: &Arc<GradedModule>, seed: u64) -> Result<ProjectiveDecomposition> {
    let (end, space) = endomorphism_algebra(p)?;
    let set = complete_primitive_set(&end, seed)?;
    let field = p.field();
    let mut summands = Vec::new();
    for (coords, &local) in set.elements.iter().zip(&set.primitive) {
        let e = hom_from_coordinates(&space, coords);
        let parts = e.image();
        let module = Arc::new(p.submodule(&parts)?);
        let inclusion = p.inclusion(&parts, &module);
        let maps = (0..p.arrow_count())
            .map(|b| {
                let cols: Vec<Vector> = (0..p.dim(b))
                    .map(|j| {
                        let col = e.map(b).column(j);
                        parts[b]
                            .coordinates(&col)
                            .unwrap_or_else(|| zero_vector(field, parts[b].dim()))
                    })
                    .collect();
                Matrix::from_columns(field, parts[b].dim(), &cols)
            })
            .collect();
        let projection = GradedHom::new(p.clone(), module.clone(), maps)?;
        summands.push(Summand {
            idempotent: e,
            module,
            projection,
            inclusion,
            local,
        });
    }
    Ok(ProjectiveDecomposition {
        parent: p.clone(),
        summands,
    })
}
