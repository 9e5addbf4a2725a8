//! Semiperfectness and perfectness verdicts for graded module categories,
//! with per-arrow certificates on the divisor rings `A(γ:γ)`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::FdAlgebra;
use crate::category::{ArrowSequenceReport, CategoryKind, Lattice, Verdict as SequenceVerdict};
use crate::covers::{projective_cover, ProjectiveSystem};
use crate::error::{Error, Result};
use crate::field::{unit_vector, Scalar, Subspace, Vector};
use crate::graded::{
    hom_space, projective, yoneda_hom, GradedAlgebra, GradedModule, TotalHomAlgebra,
};
use crate::idempotents::complete_primitive_set;
use crate::radical::{algebra_radical, nilpotency_index, radical_certificate, RadicalCertificate};

/// The result justifying a verdict, chosen from the category kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    /// Finite categories: every arrow sequence repeats.
    FiniteCategory,
    /// Groups with finitely supported algebras: reduces to `A_e`.
    FiniteGroupSupport,
    /// Artinian ordered monoids with least element `e`: reduces to `A_e`.
    ArtinianMonoid,
    /// Poset-graded algebras with artinian intervals: reduces to the corners `e A e`.
    PosetIntervals,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PerfectnessVerdict {
    Perfect,
    NotPerfect,
    HypothesesNotVerifiable,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArrowCertificate {
    pub arrow: String,
    pub divisor_dim: usize,
    /// Arrows `α` with `α γ = γ`.
    pub summands: Vec<String>,
    pub radical: Option<RadicalCertificate>,
    pub split: bool,
    pub lifting_ok: bool,
    pub primitive_idempotents: usize,
    /// `dim End(A[γ]) = dim A(γ:γ)`.
    pub end_dim_matches: bool,
    /// `x -> (generator -> x)` reverses products on basis pairs.
    pub anti_multiplicative: bool,
    pub error: Option<String>,
}

impl ArrowCertificate {
    fn passes(&self) -> bool {
        self.error.is_none()
            && self.split
            && self.lifting_ok
            && self.end_dim_matches
            && self.anti_multiplicative
            && self.radical.as_ref().is_none_or(|r| r.quotient_semisimple)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SemiperfectReport {
    /// `None` when some divisor ring could not be split.
    pub semiperfect: Option<bool>,
    pub per_arrow: Vec<ArrowCertificate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PerfectnessReport {
    pub verdict: PerfectnessVerdict,
    pub theorem_used: Theorem,
    pub sequence_condition: ArrowSequenceReport,
    pub per_arrow: Vec<ArrowCertificate>,
    pub reason: String,
}

fn theorem_for(kind: &CategoryKind) -> Theorem {
    match kind {
        CategoryKind::ExplicitFinite => Theorem::FiniteCategory,
        CategoryKind::FiniteGroup => Theorem::FiniteGroupSupport,
        CategoryKind::CommutativeMonoidWindow {
            lattice: Lattice::Nat,
            ..
        } => Theorem::ArtinianMonoid,
        CategoryKind::CommutativeMonoidWindow {
            lattice: Lattice::Int,
            ..
        } => Theorem::FiniteCategory,
        CategoryKind::PosetInterval => Theorem::PosetIntervals,
    }
}

fn anti_multiplicative(a: &Arc<GradedAlgebra>, gamma: usize, ring: &FdAlgebra) -> Result<bool> {
    let free = projective(a, gamma)?;
    let n = ring.dim();
    let field = a.field();
    let homs: Vec<_> = (0..n)
        .map(|i| yoneda_hom(&free, &free.module, &unit_vector(field, n, i)))
        .collect();
    for x in 0..n {
        for y in 0..n {
            let xy = ring.basis_product(x, y);
            let lhs = yoneda_hom(&free, &free.module, xy);
            if lhs.flatten() != homs[y].after(&homs[x]).flatten() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Certificate for `A(γ:γ)`.
pub fn arrow_certificate(
    a: &Arc<GradedAlgebra>,
    gamma: usize,
    seed: u64,
) -> Result<ArrowCertificate> {
    let cat = a.category();
    let d = a.divisor_space(gamma, gamma)?;
    let ring = d.ring.expect("diagonal divisor space is a ring");
    let mut cert = ArrowCertificate {
        arrow: cat.arrow_id(gamma).to_string(),
        divisor_dim: d.dim,
        summands: d
            .summands
            .iter()
            .map(|&s| cat.arrow_id(s).to_string())
            .collect(),
        radical: None,
        split: true,
        lifting_ok: true,
        primitive_idempotents: 0,
        end_dim_matches: true,
        anti_multiplicative: true,
        error: None,
    };
    if ring.dim() == 0 {
        return Ok(cert);
    }
    cert.radical = Some(radical_certificate(&ring)?);
    let free = projective(a, gamma)?;
    cert.end_dim_matches = hom_space(&free.module, &free.module)?.dim() == ring.dim();
    cert.anti_multiplicative = anti_multiplicative(a, gamma, &ring)?;
    match complete_primitive_set(&ring, seed) {
        Ok(set) => {
            cert.lifting_ok = set.is_complete_primitive();
            cert.primitive_idempotents = set.elements.len();
        }
        Err(e @ Error::NonSplitSemisimpleQuotient(_)) => {
            cert.split = false;
            cert.lifting_ok = false;
            cert.error = Some(format!("{}: {e}", e.name()));
        }
        Err(e) => return Err(e),
    }
    Ok(cert)
}

fn all_certificates(a: &Arc<GradedAlgebra>, seed: u64) -> Result<Vec<ArrowCertificate>> {
    (0..a.category().arrow_count())
        .into_par_iter()
        .map(|g| arrow_certificate(a, g, seed))
        .collect()
}

/// Every `A(γ:γ)` is semiperfect.
pub fn check_semiperfect(a: &Arc<GradedAlgebra>, seed: u64) -> Result<SemiperfectReport> {
    let per_arrow = all_certificates(a, seed)?;
    let semiperfect = if per_arrow.iter().any(|c| !c.split) {
        None
    } else {
        Some(per_arrow.iter().all(|c| c.passes()))
    };
    Ok(SemiperfectReport {
        semiperfect,
        per_arrow,
    })
}

/// The sequence condition on the category plus left perfectness of every
/// `A(γ:γ)` (nilpotent radical and split semisimple quotient).
pub fn check_perfect(a: &Arc<GradedAlgebra>, seed: u64) -> Result<PerfectnessReport> {
    let cat = a.category();
    let sequence_condition = cat.check_sequence_condition(&a.support());
    let theorem_used = theorem_for(cat.kind());
    let per_arrow = all_certificates(a, seed)?;
    let (verdict, reason) = if sequence_condition.verdict == SequenceVerdict::NotDecidableForKind {
        (
            PerfectnessVerdict::HypothesesNotVerifiable,
            sequence_condition.reason.clone(),
        )
    } else if let Some(c) = per_arrow.iter().find(|c| !c.split) {
        (
            PerfectnessVerdict::HypothesesNotVerifiable,
            format!("divisor ring at {} does not split", c.arrow),
        )
    } else if sequence_condition.verdict == SequenceVerdict::Fails {
        (
            PerfectnessVerdict::NotPerfect,
            sequence_condition.reason.clone(),
        )
    } else if let Some(c) = per_arrow.iter().find(|c| !c.passes()) {
        (
            PerfectnessVerdict::NotPerfect,
            format!("certificate fails at {}", c.arrow),
        )
    } else {
        (
            PerfectnessVerdict::Perfect,
            "sequence condition holds and every divisor ring is left perfect".into(),
        )
    };
    Ok(PerfectnessReport {
        verdict,
        theorem_used,
        sequence_condition,
        per_arrow,
        reason,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainLink {
    pub source: String,
    pub target: String,
    pub element: Vec<Scalar>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TNilpotencyWitness {
    pub generators: Vec<String>,
    pub radical_dim: usize,
    pub index: usize,
    /// `f_1, ..., f_{m-1}` with `f_{m-1} ∘ ... ∘ f_1 ≠ 0`.
    pub chain: Vec<ChainLink>,
}

/// Nilpotency index of `J(E)` over the given generators, with a longest
/// nonzero chain of radical homs.
pub fn t_nilpotency_witness(a: &GradedAlgebra, generators: &[usize]) -> Result<TNilpotencyWitness> {
    let total = TotalHomAlgebra::new(a, generators)?;
    let b = total.algebra();
    let j = total.block_homogeneous(&algebra_radical(b)?);
    let index = nilpotency_index(b, &j)
        .ok_or_else(|| Error::StructureError("radical is not nilpotent".into()))?;
    let mut powers = vec![Subspace::full(b.field(), b.dim()), j.clone()];
    while powers.len() < index {
        let next = b.product_space(powers.last().unwrap(), &j);
        powers.push(next);
    }
    let mut chain: Vec<Vector> = Vec::new();
    let mut current = b.one().clone();
    for step in 0..index.saturating_sub(1) {
        let remaining = index - 2 - step;
        let pick = j
            .basis()
            .iter()
            .find(|x| {
                let y = b.mul(&current, x);
                powers[remaining]
                    .basis()
                    .iter()
                    .any(|z| !b.mul(&y, z).iter().all(Scalar::is_zero))
            })
            .ok_or_else(|| Error::StructureError("no radical chain of full length".into()))?
            .clone();
        current = b.mul(&current, &pick);
        chain.push(pick);
    }
    let cat = a.category();
    let links = chain
        .iter()
        .map(|x| {
            let k = x.iter().position(|c| !c.is_zero()).expect("nonzero");
            let basis = total.basis()[k];
            ChainLink {
                source: cat.arrow_id(total.generators()[basis.row]).to_string(),
                target: cat.arrow_id(total.generators()[basis.col]).to_string(),
                element: total.block_entries(x, basis.row, basis.col),
            }
        })
        .collect();
    Ok(TNilpotencyWitness {
        generators: generators
            .iter()
            .map(|&g| cat.arrow_id(g).to_string())
            .collect(),
        radical_dim: j.dim(),
        index,
        chain: links,
    })
}

/// Simples of every indecomposable projective, then seeded random cyclic
/// quotients of each `A[γ]`.
pub fn sample_modules(
    sys: &ProjectiveSystem,
    seed: u64,
    per_arrow: usize,
) -> Result<Vec<(String, Arc<GradedModule>)>> {
    let mut out = Vec::new();
    for (k, c) in sys.classes.iter().enumerate() {
        out.push((format!("simple {}", c.label), Arc::new(sys.simple(k)?)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ sys.algebra.fingerprint());
    let cat = sys.algebra.category();
    let field = sys.field();
    for (p, free) in sys.frees.iter().enumerate() {
        let m = &free.module;
        let degrees: Vec<usize> = (0..m.arrow_count()).filter(|&b| m.dim(b) > 0).collect();
        if degrees.is_empty() {
            continue;
        }
        for r in 0..per_arrow {
            let b = degrees[rng.gen_range(0..degrees.len())];
            let v: Vector = (0..m.dim(b))
                .map(|_| field.from_i64(rng.gen_range(-1..=1)))
                .collect();
            let sub = m.generated_submodule(&[(b, v)]);
            let name = format!(
                "A[{}] / random {r}",
                cat.arrow_id(sys.radical.total.generators()[p])
            );
            out.push((name, Arc::new(m.quotient(&sub)?)));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverCheck {
    pub module: String,
    pub surjective: bool,
    pub kernel_in_radical: bool,
    pub summands: usize,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossValidation {
    pub checks: Vec<CoverCheck>,
    pub failures: usize,
}

/// Builds and certifies a projective cover of every sample module.
pub fn cross_validate_perfectness(
    sys: &ProjectiveSystem,
    samples: &[(String, Arc<GradedModule>)],
) -> CrossValidation {
    let checks: Vec<CoverCheck> = samples
        .par_iter()
        .map(|(name, m)| match projective_cover(sys, m) {
            Ok(c) => CoverCheck {
                module: name.clone(),
                surjective: c.epi.is_surjective() && c.epi.is_equivariant(),
                kernel_in_radical: c.kernel_in_radical,
                summands: c.summands.len(),
                error: None,
            },
            Err(e) => CoverCheck {
                module: name.clone(),
                surjective: false,
                kernel_in_radical: false,
                summands: 0,
                error: Some(format!("{}: {e}", e.name())),
            },
        })
        .collect();
    let failures = checks
        .iter()
        .filter(|c| c.error.is_some() || !c.surjective || !c.kernel_in_radical)
        .count();
    CrossValidation { checks, failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::fixtures;
    use crate::idempotents::DEFAULT_SEED;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn verdicts() {
        let r = check_perfect(&fixtures::point_field(q()), DEFAULT_SEED).unwrap();
        assert_eq!(
            (r.verdict, r.theorem_used),
            (PerfectnessVerdict::Perfect, Theorem::FiniteCategory)
        );
        let r = check_perfect(&fixtures::cyclic_group_graded(q(), 2), DEFAULT_SEED).unwrap();
        assert_eq!(
            (r.verdict, r.theorem_used),
            (PerfectnessVerdict::Perfect, Theorem::FiniteGroupSupport)
        );
        let a = fixtures::nat_truncated(q(), 3, 5);
        let s = check_semiperfect(&a, DEFAULT_SEED).unwrap();
        assert_eq!(s.semiperfect, Some(true));
        assert!(s.per_arrow.iter().all(|c| c.divisor_dim == 1));
        let r = check_perfect(&fixtures::int_polynomial(q(), 3), DEFAULT_SEED).unwrap();
        assert_eq!(r.verdict, PerfectnessVerdict::HypothesesNotVerifiable);
        let gauss = fixtures::point_algebra(&FdAlgebra::quadratic(q(), -1));
        let r = check_perfect(&gauss, DEFAULT_SEED).unwrap();
        assert_eq!(r.verdict, PerfectnessVerdict::HypothesesNotVerifiable);
        assert_eq!(
            check_semiperfect(&gauss, DEFAULT_SEED).unwrap().semiperfect,
            None
        );
    }

    #[test]
    fn witnesses() {
        let a = fixtures::nat_polynomial(q(), 2);
        let w = t_nilpotency_witness(&a, &[0, 1, 2]).unwrap();
        assert_eq!((w.index, w.chain.len()), (3, 2));
        let (t, _) = fixtures::upper_triangular_poset(q());
        assert_eq!(t_nilpotency_witness(&t, &[0, 1, 2]).unwrap().index, 2);
        let k = fixtures::point_field(q());
        let w = t_nilpotency_witness(&k, &[0]).unwrap();
        assert_eq!((w.index, w.chain.len()), (1, 0));
    }

    #[test]
    fn covers_for_samples() {
        let (t, _) = fixtures::upper_triangular_poset(q());
        let sys = ProjectiveSystem::new(&t, DEFAULT_SEED).unwrap();
        let samples = sample_modules(&sys, DEFAULT_SEED, 2).unwrap();
        let report = cross_validate_perfectness(&sys, &samples);
        assert_eq!(report.failures, 0);
    }
}
