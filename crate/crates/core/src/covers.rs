//! Tops, projective covers, smallness of submodules and minimal projective
//! resolutions of finite-dimensional graded modules.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{is_zero_vector, Field, Matrix, Scalar, Subspace, Vector};
use crate::graded::{
    direct_sum, projective, yoneda_hom, FreeModule, GradedAlgebra, GradedHom, GradedModule,
    TotalHomAlgebra,
};
use crate::idempotents::refine_idempotents;
use crate::radical::{module_radical, GradedRadical};

/// An indecomposable projective `P_u`, the image of the idempotent
/// endomorphism of `A[g]` given by a primitive `u`.
#[derive(Clone, Debug)]
pub struct Indecomposable {
    pub label: String,
    /// Position of `g` among the generators.
    pub position: usize,
    pub generator: usize,
    pub idempotent: Vector,
    pub module: Arc<GradedModule>,
    /// `P_u` inside `A[g]`.
    pub parts: Vec<Subspace>,
    pub inclusion: GradedHom,
}

/// The total hom algebra over every arrow, its radical, and one
/// representative per isomorphism class of indecomposable projectives.
#[derive(Clone, Debug)]
pub struct ProjectiveSystem {
    pub algebra: Arc<GradedAlgebra>,
    pub radical: GradedRadical,
    pub frees: Vec<FreeModule>,
    pub classes: Vec<Indecomposable>,
    /// Number of primitive idempotents found before grouping into classes.
    pub primitive_count: usize,
    pub seed: u64,
}

fn block_action(
    m: &GradedModule,
    total: &TotalHomAlgebra,
    v: &[Scalar],
    p: usize,
    q: usize,
) -> Matrix {
    let (gp, gq) = (total.generators()[p], total.generators()[q]);
    let mut out = Matrix::zeros(m.field(), m.dim(gp), m.dim(gq));
    for k in total.block(p, q) {
        if v[k].is_zero() || m.dim(gp) == 0 || m.dim(gq) == 0 {
            continue;
        }
        let b = total.basis()[k];
        out = &out + &m.action(b.alpha, gq)[b.index].scale(&v[k]);
    }
    out
}

fn column_space(m: &Matrix) -> Subspace {
    Subspace::from_rows(m.field(), m.rows(), (0..m.cols()).map(|j| m.column(j)))
}

impl ProjectiveSystem {
    pub fn new(algebra: &Arc<GradedAlgebra>, seed: u64) -> Result<ProjectiveSystem> {
        let radical = GradedRadical::over_all_arrows(algebra)?;
        let total = &radical.total;
        let b = total.algebra();
        let set = refine_idempotents(b, total.idempotents(), seed)?;
        let frees: Vec<FreeModule> = total
            .generators()
            .iter()
            .map(|&g| projective(algebra, g))
            .collect::<Result<_>>()?;
        let n = total.generators().len();
        let mut found: Vec<(usize, Vec<usize>, Vector)> = Vec::new();
        for u in &set.elements {
            let p = (0..n)
                .find(|&p| !total.block(p, p).all(|k| u[k].is_zero()))
                .ok_or_else(|| Error::IdempotentError("zero primitive idempotent".into()))?;
            let phi = yoneda_hom(&frees[p], &frees[p].module, &total.block_entries(u, p, p));
            let parts = phi.image();
            let dims: Vec<usize> = parts.iter().map(Subspace::dim).collect();
            found.push((p, dims, u.clone()));
        }
        found.sort();
        let mut reps: Vec<(usize, Vector)> = Vec::new();
        for (p, _, u) in &found {
            if !reps.iter().any(|(q, r)| isomorphic(&radical, r, *q, u, *p)) {
                reps.push((*p, u.clone()));
            }
        }
        let cat = algebra.category();
        let mut classes = Vec::with_capacity(reps.len());
        for (k, (p, u)) in reps.iter().enumerate() {
            let g = total.generators()[*p];
            let same: Vec<usize> = reps
                .iter()
                .enumerate()
                .filter(|(_, (q, _))| q == p)
                .map(|(i, _)| i)
                .collect();
            let label = if same.len() == 1 {
                format!("P({})", cat.arrow_id(g))
            } else {
                let j = same.iter().position(|&i| i == k).expect("present") + 1;
                format!("P({})#{j}", cat.arrow_id(g))
            };
            let free = &frees[*p];
            let phi = yoneda_hom(free, &free.module, &total.block_entries(u, *p, *p));
            let parts = phi.image();
            let module = Arc::new(free.module.submodule(&parts)?);
            let inclusion = free.module.inclusion(&parts, &module);
            classes.push(Indecomposable {
                label,
                position: *p,
                generator: g,
                idempotent: u.clone(),
                module,
                parts,
                inclusion,
            });
        }
        Ok(ProjectiveSystem {
            algebra: algebra.clone(),
            radical,
            frees,
            classes,
            primitive_count: set.elements.len(),
            seed,
        })
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn labels(&self) -> Vec<String> {
        self.classes.iter().map(|c| c.label.clone()).collect()
    }

    /// `rad M`, degree by degree.
    pub fn radical_of(&self, m: &GradedModule) -> Result<Vec<Subspace>> {
        module_radical(m, &self.radical)
    }

    /// The simple top of the `k`-th indecomposable projective.
    pub fn simple(&self, k: usize) -> Result<GradedModule> {
        let p = &self.classes[k].module;
        p.quotient(&self.radical_of(p)?)
    }

    /// `u M_g` and the part of it inside `rad M`, for class `k`.
    fn top_slice(&self, m: &GradedModule, rad: &[Subspace], k: usize) -> (Subspace, Subspace) {
        let c = &self.classes[k];
        let g = c.generator;
        let u = block_action(
            m,
            &self.radical.total,
            &c.idempotent,
            c.position,
            c.position,
        );
        let image = column_space(&u);
        let inside = image.intersection(&rad[g]);
        (image, inside)
    }
}

/// `u' B u` is not contained in the radical.
fn isomorphic(rad: &GradedRadical, u1: &[Scalar], p1: usize, u2: &[Scalar], p2: usize) -> bool {
    let total = &rad.total;
    let b = total.algebra();
    total.block(p1, p2).any(|k| {
        let x = b.mul(&b.mul(u1, &b.basis_element(k)), u2);
        !is_zero_vector(&x) && !rad.radical.contains(&x)
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Top {
    /// Multiplicity of each simple, in class order.
    pub multiplicities: Vec<usize>,
    pub dims: Vec<usize>,
}

/// `M / rad M` with the multiplicity of each simple.
pub fn top(sys: &ProjectiveSystem, m: &GradedModule) -> Result<Top> {
    let rad = sys.radical_of(m)?;
    let dims = m
        .dims()
        .iter()
        .zip(&rad)
        .map(|(d, r)| d - r.dim())
        .collect();
    let multiplicities = (0..sys.classes.len())
        .map(|k| {
            let (image, inside) = sys.top_slice(m, &rad, k);
            image.dim() - inside.dim()
        })
        .collect();
    Ok(Top {
        multiplicities,
        dims,
    })
}

#[derive(Clone, Debug)]
pub struct CoverResult {
    pub target: Arc<GradedModule>,
    pub cover: Arc<GradedModule>,
    /// Class index of each summand of the cover, in order.
    pub summands: Vec<usize>,
    pub epi: GradedHom,
    pub kernel: Vec<Subspace>,
    pub kernel_in_radical: bool,
}

impl CoverResult {
    pub fn multiplicities(&self, classes: usize) -> Vec<usize> {
        let mut out = vec![0; classes];
        for &k in &self.summands {
            out[k] += 1;
        }
        out
    }
}

/// The projective cover `⊕ P_u -> M`, one summand per top basis vector.
pub fn projective_cover(sys: &ProjectiveSystem, m: &Arc<GradedModule>) -> Result<CoverResult> {
    if !Arc::ptr_eq(m.algebra(), &sys.algebra)
        && m.algebra().fingerprint() != sys.algebra.fingerprint()
    {
        return Err(Error::StructureError("module over another algebra".into()));
    }
    let rad = sys.radical_of(m)?;
    let mut pieces: Vec<(usize, GradedHom)> = Vec::new();
    for (k, class) in sys.classes.iter().enumerate() {
        let (image, _) = sys.top_slice(m, &rad, k);
        let mut seen = rad[class.generator].clone();
        for v in image.basis() {
            if seen.insert(v.clone()) {
                let psi = yoneda_hom(&sys.frees[class.position], m, v);
                pieces.push((k, psi.after(&class.inclusion)));
            }
        }
    }
    let summands: Vec<usize> = pieces.iter().map(|(k, _)| *k).collect();
    let (cover, epi) = if pieces.is_empty() {
        let zero = Arc::new(GradedModule::zero(&sys.algebra));
        let epi = GradedHom::zero(&zero, m);
        (zero, epi)
    } else {
        let parts: Vec<Arc<GradedModule>> = summands
            .iter()
            .map(|&k| sys.classes[k].module.clone())
            .collect();
        let sum = direct_sum(&parts)?;
        let mut epi = GradedHom::zero(&sum.module, m);
        for ((_, f), pr) in pieces.iter().zip(&sum.projections) {
            epi = epi.add(&f.after(pr));
        }
        (sum.module, epi)
    };
    if !epi.is_surjective() {
        return Err(Error::LiftFailure("cover map is not surjective".into()));
    }
    let kernel = epi.kernel();
    let cover_rad = sys.radical_of(&cover)?;
    let kernel_in_radical = kernel
        .iter()
        .zip(&cover_rad)
        .all(|(k, r)| k.is_subspace_of(r));
    Ok(CoverResult {
        target: m.clone(),
        cover,
        summands,
        epi,
        kernel,
        kernel_in_radical,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SmallnessMethod {
    Radical,
    Enumeration,
}

/// Largest total dimension for which submodules are enumerated.
pub const ENUMERATION_LIMIT: usize = 6;

/// Whether `x` is small in `m`: `x ⊆ rad m`.
pub fn is_small_subobject(
    sys: &ProjectiveSystem,
    x: &[Subspace],
    m: &GradedModule,
) -> Result<bool> {
    let rad = sys.radical_of(m)?;
    Ok(x.iter().zip(&rad).all(|(a, b)| a.is_subspace_of(b)))
}

/// Every graded submodule of `m`; needs a prime field of size at most 3
/// and total dimension at most [`ENUMERATION_LIMIT`].
pub fn enumerate_submodules(m: &GradedModule) -> Result<Vec<Vec<Subspace>>> {
    let field = m.field();
    let Some(elements) = field.elements().filter(|e| e.len() <= 3) else {
        return Err(Error::OracleTooLarge(format!(
            "submodule enumeration over {field}"
        )));
    };
    if m.total_dim() > ENUMERATION_LIMIT {
        return Err(Error::OracleTooLarge(format!(
            "total dimension {} exceeds {ENUMERATION_LIMIT}",
            m.total_dim()
        )));
    }
    let mut vectors: Vec<(usize, Vector)> = Vec::new();
    for b in 0..m.arrow_count() {
        for v in all_vectors(&elements, m.dim(b)) {
            if !is_zero_vector(&v) {
                vectors.push((b, v));
            }
        }
    }
    let mut found = vec![m.zero_parts()];
    let mut next = 0;
    while next < found.len() {
        let s = found[next].clone();
        next += 1;
        for (b, v) in &vectors {
            if s[*b].contains(v) {
                continue;
            }
            let mut gens: Vec<(usize, Vector)> = Vec::new();
            for (c, part) in s.iter().enumerate() {
                gens.extend(part.basis().iter().map(|w| (c, w.clone())));
            }
            gens.push((*b, v.clone()));
            let t = m.generated_submodule(&gens);
            if !found.contains(&t) {
                found.push(t);
            }
        }
    }
    Ok(found)
}

fn all_vectors(elements: &[Scalar], n: usize) -> Vec<Vector> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                elements
                    .iter()
                    .map(move |e| [v.clone(), vec![e.clone()]].concat())
            })
            .collect();
    }
    out
}

/// Smallness straight from the definition: `x + s = m` forces `s = m`.
pub fn is_small_by_enumeration(x: &[Subspace], m: &GradedModule) -> Result<bool> {
    let subs = enumerate_submodules(m)?;
    Ok(subs.iter().all(|s| {
        let covers = s.iter().zip(x).all(|(a, b)| a.sum(b).is_full());
        !covers || s.iter().all(Subspace::is_full)
    }))
}

/// Runs the radical test and, where possible, the enumeration test.
pub fn is_small_checked(
    sys: &ProjectiveSystem,
    x: &[Subspace],
    m: &GradedModule,
) -> Result<(bool, Vec<SmallnessMethod>)> {
    let by_radical = is_small_subobject(sys, x, m)?;
    match is_small_by_enumeration(x, m) {
        Ok(by_def) if by_def == by_radical => Ok((
            by_radical,
            vec![SmallnessMethod::Radical, SmallnessMethod::Enumeration],
        )),
        Ok(_) => Err(Error::StructureError("smallness tests disagree".into())),
        Err(Error::OracleTooLarge(_)) => Ok((by_radical, vec![SmallnessMethod::Radical])),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BettiEntry {
    pub label: String,
    pub generator: String,
    pub multiplicity: usize,
}

/// A minimal projective resolution `P_n -> ... -> P_0 -> M`.
#[derive(Clone, Debug)]
pub struct ResolutionComplex {
    pub target: Arc<GradedModule>,
    pub terms: Vec<Arc<GradedModule>>,
    /// Class index of every summand of each term.
    pub summands: Vec<Vec<usize>>,
    /// `d_k: P_k -> P_{k-1}` for `k = 1..=n`, stored at index `k - 1`.
    pub differentials: Vec<GradedHom>,
    pub augmentation: GradedHom,
    /// The last kernel is zero.
    pub terminated: bool,
}

impl ResolutionComplex {
    pub fn length(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    pub fn betti(&self, sys: &ProjectiveSystem) -> Vec<Vec<BettiEntry>> {
        let cat = sys.algebra.category();
        self.summands
            .iter()
            .map(|s| {
                sys.classes
                    .iter()
                    .enumerate()
                    .filter_map(|(k, c)| {
                        let multiplicity = s.iter().filter(|&&x| x == k).count();
                        (multiplicity > 0).then(|| BettiEntry {
                            label: c.label.clone(),
                            generator: cat.arrow_id(c.generator).to_string(),
                            multiplicity,
                        })
                    })
                    .collect()
            })
            .collect()
    }
}

/// Iterates projective covers on successive kernels up to `P_n`.
pub fn minimal_resolution(
    sys: &ProjectiveSystem,
    m: &Arc<GradedModule>,
    n: usize,
) -> Result<ResolutionComplex> {
    let first = projective_cover(sys, m)?;
    let mut terms = vec![first.cover.clone()];
    let mut summands = vec![first.summands.clone()];
    let mut differentials = Vec::new();
    let mut kernel = first.kernel;
    let mut previous = first.cover.clone();
    for _ in 0..n {
        if kernel.iter().all(Subspace::is_zero) {
            break;
        }
        let sub = Arc::new(previous.submodule(&kernel)?);
        let incl = previous.inclusion(&kernel, &sub);
        let c = projective_cover(sys, &sub)?;
        differentials.push(incl.after(&c.epi));
        terms.push(c.cover.clone());
        summands.push(c.summands.clone());
        kernel = c.kernel;
        previous = c.cover;
    }
    let terminated = kernel.iter().all(Subspace::is_zero);
    Ok(ResolutionComplex {
        target: m.clone(),
        terms,
        summands,
        differentials,
        augmentation: first.epi,
        terminated,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionCheck {
    pub passed: bool,
    /// First failing check, e.g. `"exactness at P_1"`.
    pub failure: Option<String>,
}

fn subspaces_equal(a: &[Subspace], b: &[Subspace]) -> bool {
    a.iter().zip(b).all(|(x, y)| x == y)
}

/// Re-checks `d d = 0`, exactness and minimality, stage by stage.
pub fn verify_resolution(sys: &ProjectiveSystem, r: &ResolutionComplex) -> Result<ResolutionCheck> {
    let fail = |s: String| {
        Ok(ResolutionCheck {
            passed: false,
            failure: Some(s),
        })
    };
    let n = r.differentials.len();
    if r.terms.len() != n + 1 {
        return fail("term count".into());
    }
    if !r.augmentation.is_equivariant() || r.differentials.iter().any(|d| !d.is_equivariant()) {
        return fail("equivariance".into());
    }
    if !r.augmentation.is_surjective() {
        return fail("surjectivity of the augmentation".into());
    }
    for k in 0..n {
        let before = if k == 0 {
            &r.augmentation
        } else {
            &r.differentials[k - 1]
        };
        let d = &r.differentials[k];
        if !before.after(d).is_zero() {
            return fail(format!("d d = 0 at P_{}", k + 1));
        }
        if !subspaces_equal(&before.kernel(), &d.image()) {
            return fail(format!("exactness at P_{k}"));
        }
    }
    if r.terminated {
        let last = if n == 0 {
            &r.augmentation
        } else {
            &r.differentials[n - 1]
        };
        if last.kernel().iter().any(|k| !k.is_zero()) {
            return fail(format!("exactness at P_{n}"));
        }
    }
    let rad0 = sys.radical_of(&r.terms[0])?;
    if !r
        .augmentation
        .kernel()
        .iter()
        .zip(&rad0)
        .all(|(k, x)| k.is_subspace_of(x))
    {
        return fail("minimality at P_0".into());
    }
    for (k, d) in r.differentials.iter().enumerate() {
        let rad = sys.radical_of(&r.terms[k])?;
        if !d.image().iter().zip(&rad).all(|(i, x)| i.is_subspace_of(x)) {
            return fail(format!("minimality at P_{}", k + 1));
        }
    }
    Ok(ResolutionCheck {
        passed: true,
        failure: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FdAlgebra;
    use crate::fixtures;
    use crate::idempotents::DEFAULT_SEED;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn system_of_truncated_window() {
        let a = fixtures::nat_truncated(q(), 3, 5);
        let sys = ProjectiveSystem::new(&a, DEFAULT_SEED).unwrap();
        assert_eq!(
            sys.labels(),
            vec!["P(0)", "P(1)", "P(2)", "P(3)", "P(4)", "P(5)"]
        );
    }

    #[test]
    fn tops_and_covers() {
        let t = fixtures::point_algebra(&FdAlgebra::truncated_polynomial(q(), 3));
        let sys = ProjectiveSystem::new(&t, DEFAULT_SEED).unwrap();
        let reg = Arc::new(GradedModule::regular(&t));
        assert_eq!(top(&sys, &reg).unwrap().multiplicities, vec![1]);
        let simple = Arc::new(sys.simple(0).unwrap());
        let c = projective_cover(&sys, &simple).unwrap();
        assert_eq!(c.cover.total_dim(), 3);
        assert_eq!(c.kernel.iter().map(Subspace::dim).sum::<usize>(), 2);
        assert!(c.kernel_in_radical);
        let two = direct_sum(&[reg.clone(), reg.clone()]).unwrap().module;
        assert_eq!(top(&sys, &two).unwrap().multiplicities, vec![2]);
        let c = projective_cover(&sys, &reg).unwrap();
        assert!(c.kernel.iter().all(Subspace::is_zero));
    }

    #[test]
    fn upper_triangular_simple() {
        let (a, _) = fixtures::upper_triangular_poset(q());
        let sys = ProjectiveSystem::new(&a, DEFAULT_SEED).unwrap();
        let big = sys
            .classes
            .iter()
            .position(|c| c.module.total_dim() == 2)
            .unwrap();
        let s = Arc::new(sys.simple(big).unwrap());
        let c = projective_cover(&sys, &s).unwrap();
        assert_eq!(c.cover.total_dim(), 2);
        assert_eq!(c.kernel.iter().map(Subspace::dim).sum::<usize>(), 1);
        let r = minimal_resolution(&sys, &s, 4).unwrap();
        assert_eq!(r.length(), 1);
        assert!(r.terminated);
        assert!(verify_resolution(&sys, &r).unwrap().passed);
    }

    #[test]
    fn truncated_polynomial_resolution() {
        let a = fixtures::nat_truncated(q(), 3, 9);
        let sys = ProjectiveSystem::new(&a, DEFAULT_SEED).unwrap();
        let k = Arc::new(fixtures::concentrated(&a, 0).unwrap());
        let r = minimal_resolution(&sys, &k, 6).unwrap();
        let shifts: Vec<String> = r
            .betti(&sys)
            .iter()
            .map(|row| {
                assert_eq!(row.len(), 1);
                assert_eq!(row[0].multiplicity, 1);
                row[0].generator.clone()
            })
            .collect();
        assert_eq!(shifts, vec!["0", "1", "3", "4", "6", "7", "9"]);
        assert!(verify_resolution(&sys, &r).unwrap().passed);
    }

    #[test]
    fn smallness_over_f2() {
        let f2 = Field::prime(2).unwrap();
        let t = fixtures::point_algebra(&FdAlgebra::truncated_polynomial(f2, 3));
        let sys = ProjectiveSystem::new(&t, DEFAULT_SEED).unwrap();
        let reg = GradedModule::regular(&t);
        let rad = sys.radical_of(&reg).unwrap();
        assert_eq!(
            is_small_checked(&sys, &rad, &reg).unwrap(),
            (
                true,
                vec![SmallnessMethod::Radical, SmallnessMethod::Enumeration]
            )
        );
        assert!(!is_small_by_enumeration(&reg.full_parts(), &reg).unwrap());
        assert!(is_small_by_enumeration(&reg.zero_parts(), &reg).unwrap());
        let big = fixtures::nat_polynomial(q(), 3);
        assert!(matches!(
            enumerate_submodules(&GradedModule::regular(&big)),
            Err(Error::OracleTooLarge(_))
        ));
    }
}
