//! The `Z`-graded polynomial algebra on a finite window, the module `X`
//! with `X_k = K x_k`, and an exhaustive search over idempotent
//! endomorphisms `e` of `F = F_A(X)` with `f e = f`.
//!
//! An equivariant degree-preserving `e` is fixed by
//! `e(a_0 ⊗ x_k) = sum_{l <= k} λ_{k,l} a_{k-l} ⊗ x_l` for `|k| <= d`.
//! On the window `f e = f` means every row of `λ` sums to `1`, and
//! `e^2 = e` on row `k` means `sum_{l=m}^{k} λ_{k,l} λ_{l,m} = λ_{k,m}`;
//! the latter is only imposed for `|k| <= d - 1`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Matrix, Scalar};
use crate::fixtures::{int_module_x, int_polynomial};
use crate::graded::{counit, FreeModule, GradedAlgebra, GradedHom, GradedModule};

pub const MAX_SEARCH_RADIUS: i64 = 3;

pub struct WindowScene {
    pub d: i64,
    pub field: Field,
    pub algebra: Arc<GradedAlgebra>,
    pub x: Arc<GradedModule>,
    pub free: FreeModule,
    /// `f(a_k ⊗ x_l) = x_{k+l}`.
    pub f: GradedHom,
}

impl WindowScene {
    pub fn arrow(&self, k: i64) -> usize {
        self.algebra
            .category()
            .arrow_index(&k.to_string())
            .expect("degree in window")
    }

    /// Position of `a_{n-l} ⊗ x_l` in the basis of `F_n`.
    pub fn position(&self, n: i64, l: i64) -> Option<usize> {
        let cat = self.algebra.category();
        let alpha = cat.arrow_index(&(n - l).to_string()).ok()?;
        let beta = self.arrow(l);
        self.free.basis[self.arrow(n)]
            .iter()
            .position(|b| b.alpha == alpha && b.beta == beta)
    }

    /// Degrees `l` with `a_{n-l} ⊗ x_l` in the basis of `F_n`.
    pub fn basis_degrees(&self, n: i64) -> Vec<i64> {
        let cat = self.algebra.category();
        self.free.basis[self.arrow(n)]
            .iter()
            .map(|b| cat.coordinates(b.beta).unwrap()[0])
            .collect()
    }

    /// The endomorphism of `F` with the given `λ` rows (`λ[k + d][l + d]`).
    pub fn endomorphism(&self, lambda: &[Vec<Scalar>]) -> Result<GradedHom> {
        let d = self.d;
        let field = self.field;
        let m = &self.free.module;
        let maps = (0..m.arrow_count())
            .map(|b| {
                let n = self.algebra.category().coordinates(b).unwrap()[0];
                let dim = m.dim(b);
                let mut mat = Matrix::zeros(field, dim, dim);
                for (col, l) in self.basis_degrees(n).into_iter().enumerate() {
                    for mm in -d..=l {
                        let c = &lambda[(l + d) as usize][(mm + d) as usize];
                        if c.is_zero() {
                            continue;
                        }
                        if let Some(row) = self.position(n, mm) {
                            mat.set(row, col, c.clone());
                        }
                    }
                }
                mat
            })
            .collect();
        GradedHom::new(m.clone(), m.clone(), maps)
    }

    /// Reads `λ` off the images of the generators `a_0 ⊗ x_k`.
    pub fn lambda(&self, e: &GradedHom) -> Vec<Vec<Scalar>> {
        let d = self.d;
        (-d..=d)
            .map(|k| {
                let col = e
                    .map(self.arrow(k))
                    .column(self.position(k, k).expect("generator"));
                (-d..=k)
                    .map(|l| col[self.position(k, l).expect("basis")].clone())
                    .collect()
            })
            .collect()
    }
}

pub fn build_scene(d: i64, field: Field) -> Result<WindowScene> {
    if d < 1 {
        return Err(Error::WindowError(
            "window radius must be at least 1".into(),
        ));
    }
    let algebra = int_polynomial(field, d);
    let x = Arc::new(int_module_x(&algebra, d)?);
    let (free, f) = counit(&x)?;
    Ok(WindowScene {
        d,
        field,
        algebra,
        x,
        free,
        f,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IdempotentAnalysis {
    pub lambda: Vec<Vec<Scalar>>,
    pub diagonal: Vec<Scalar>,
    /// `{k : λ_{k,k} = 1}`.
    pub i_set: Vec<i64>,
    /// Interior degrees where `λ_{k,k}^2 ≠ λ_{k,k}`.
    pub diagonal_failures: Vec<i64>,
}

/// Extracts `λ` and `I` from an equivariant `e` with `e^2 = e` on the interior.
pub fn idempotent_diagonal_check(s: &WindowScene, e: &GradedHom) -> Result<IdempotentAnalysis> {
    if !e.is_equivariant() {
        return Err(Error::NotEquivariant(
            "endomorphism does not commute with the action".into(),
        ));
    }
    let d = s.d;
    let ee = e.after(e);
    for k in -(d - 1)..=(d - 1) {
        let b = s.arrow(k);
        let g = s.position(k, k).expect("generator");
        if ee.map(b).column(g) != e.map(b).column(g) {
            return Err(Error::NotIdempotentOnInterior(format!(
                "e^2 ≠ e on a_0 ⊗ x_{k}"
            )));
        }
    }
    let lambda = s.lambda(e);
    let diagonal: Vec<Scalar> = (0..lambda.len()).map(|r| lambda[r][r].clone()).collect();
    let i_set = (-d..=d)
        .filter(|&k| diagonal[(k + d) as usize].is_one())
        .collect();
    let diagonal_failures = (-(d - 1)..=(d - 1))
        .filter(|&k| {
            let x = &diagonal[(k + d) as usize];
            &(x * x) != x
        })
        .collect();
    Ok(IdempotentAnalysis {
        lambda,
        diagonal,
        i_set,
        diagonal_failures,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DescentReport {
    /// Every row of `λ` sums to one, i.e. `f e = f`.
    pub precondition_ok: bool,
    /// From `max I` down, each step going to the largest `l` with `λ_{k-1,l} ≠ 0`.
    pub chain: Vec<i64>,
    pub reaches_edge: bool,
    /// `min I > -d`.
    pub interior_minimal: bool,
    /// `k` in `I` whose step lands outside `I`.
    pub violations: Vec<i64>,
}

/// Checks that `I` descends from every element to the lower edge `-d`.
pub fn min_element_propagation(s: &WindowScene, analysis: &IdempotentAnalysis) -> DescentReport {
    let d = s.d;
    let lambda = &analysis.lambda;
    let one = s.field.one();
    let precondition_ok = lambda
        .iter()
        .all(|row| row.iter().fold(s.field.zero(), |acc, x| &acc + x) == one);
    let in_i = |k: i64| analysis.i_set.contains(&k);
    let step = |k: i64| -> Option<i64> {
        let row = &lambda[(k - 1 + d) as usize];
        row.iter().rposition(|x| !x.is_zero()).map(|c| c as i64 - d)
    };
    let mut violations = Vec::new();
    for &k in &analysis.i_set {
        if k > -d && !step(k).is_some_and(in_i) {
            violations.push(k);
        }
    }
    let mut chain = Vec::new();
    if let Some(&top) = analysis.i_set.last() {
        let mut k = top;
        chain.push(k);
        while k > -d {
            match step(k) {
                Some(l) if in_i(l) => {
                    k = l;
                    chain.push(k);
                }
                _ => break,
            }
        }
    }
    let reaches_edge = chain.last() == Some(&-d);
    let interior_minimal = analysis.i_set.first().is_some_and(|&m| m > -d);
    DescentReport {
        precondition_ok,
        chain,
        reaches_edge,
        interior_minimal,
        violations,
    }
}

/// For `k > l` in `I`, `v = a_0 ⊗ x_k - a_{k-l} ⊗ x_l` has `f(e(v)) = 0`.
pub fn kernel_vectors_check(s: &WindowScene, e: &GradedHom, analysis: &IdempotentAnalysis) -> bool {
    let field = s.field;
    for &k in &analysis.i_set {
        for &l in analysis.i_set.iter().filter(|&&l| l < k) {
            let b = s.arrow(k);
            let mut v = vec![field.zero(); s.free.module.dim(b)];
            v[s.position(k, k).unwrap()] = field.one();
            v[s.position(k, l).unwrap()] = -field.one();
            let ev = e.map(b).mul_vec(&v);
            if s.f.map(b).mul_vec(&ev).iter().any(|x| !x.is_zero()) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub d: i64,
    pub field: String,
    /// Solutions on rows `-d ..= d-1`.
    pub interior_solutions: u64,
    pub admissible: u64,
    pub diagonal_idempotent: u64,
    pub reaches_edge: u64,
    pub interior_minimal: u64,
    pub empty_i: u64,
    pub descent_violations: u64,
    pub min_max_descent_depth: Option<usize>,
    pub max_max_descent_depth: Option<usize>,
}

impl SearchReport {
    fn merge(mut self, o: SearchReport) -> SearchReport {
        self.admissible += o.admissible;
        self.diagonal_idempotent += o.diagonal_idempotent;
        self.reaches_edge += o.reaches_edge;
        self.interior_minimal += o.interior_minimal;
        self.empty_i += o.empty_i;
        self.descent_violations += o.descent_violations;
        self.min_max_descent_depth = match (self.min_max_descent_depth, o.min_max_descent_depth) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.max_max_descent_depth = self.max_max_descent_depth.max(o.max_max_descent_depth);
        self
    }

    /// Every admissible `e` behaves as the descent argument predicts.
    pub fn consistent(&self) -> bool {
        self.admissible > 0
            && self.diagonal_idempotent == self.admissible
            && self.reaches_edge == self.admissible
            && self.interior_minimal == 0
            && self.empty_i == 0
            && self.descent_violations == 0
    }
}

type Triangle = Vec<Vec<u64>>;

/// All rows of length `len` over `Z/p` summing to one.
fn rows_summing_to_one(len: usize, p: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut row = vec![0u64; len];
    loop {
        if row.iter().sum::<u64>() % p == 1 {
            out.push(row.clone());
        }
        let mut i = 0;
        loop {
            if i == len {
                return out;
            }
            row[i] += 1;
            if row[i] < p {
                break;
            }
            row[i] = 0;
            i += 1;
        }
    }
}

fn row_is_idempotent(t: &Triangle, row: &[u64], p: u64) -> bool {
    let r = row.len() - 1;
    (0..=r).all(|m| {
        let mut s = row[r] * row[m];
        for l in m..r {
            s += row[l] * t[l][m];
        }
        s % p == row[m]
    })
}

fn interior_solutions(d: usize, p: u64) -> Vec<Triangle> {
    let mut done: Vec<Triangle> = vec![Vec::new()];
    for r in 0..2 * d {
        let candidates = rows_summing_to_one(r + 1, p);
        done = done
            .into_iter()
            .flat_map(|t| {
                candidates
                    .iter()
                    .filter(|row| row_is_idempotent(&t, row, p))
                    .map(|row| {
                        let mut next = t.clone();
                        next.push(row.clone());
                        next
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    done
}

fn analyse(t: &Triangle, top: &[u64], d: usize, p: u64) -> SearchReport {
    let row = |r: usize| if r == 2 * d { top } else { &t[r][..] };
    let i_set: Vec<usize> = (0..=2 * d).filter(|&r| row(r)[r] == 1).collect();
    let mut rep = SearchReport {
        admissible: 1,
        ..SearchReport::default()
    };
    if (0..2 * d).all(|r| (row(r)[r] * row(r)[r]) % p == row(r)[r]) {
        rep.diagonal_idempotent = 1;
    }
    let Some(&top_i) = i_set.last() else {
        rep.empty_i = 1;
        return rep;
    };
    if i_set[0] > 0 {
        rep.interior_minimal = 1;
    }
    let step = |r: usize| {
        row(r - 1)
            .iter()
            .rposition(|&x| x != 0)
            .expect("row sums to one")
    };
    if i_set.iter().any(|&r| r > 0 && !i_set.contains(&step(r))) {
        rep.descent_violations = 1;
    }
    let (mut r, mut depth) = (top_i, 0);
    while r > 0 && i_set.contains(&step(r)) {
        r = step(r);
        depth += 1;
    }
    if r == 0 {
        rep.reaches_edge = 1;
    }
    rep.min_max_descent_depth = Some(depth);
    rep.max_max_descent_depth = Some(depth);
    rep
}

/// Enumerates every admissible `e` over `F_2` or `F_3` for `d <= 3`.
pub fn brute_force_split_search(d: i64, field: Field) -> Result<SearchReport> {
    let p = match field {
        Field::Prime(p) if p <= 3 => p,
        _ => {
            return Err(Error::SearchSpaceTooLarge(format!(
                "exhaustive search needs F_2 or F_3, got {field}"
            )))
        }
    };
    if !(1..=MAX_SEARCH_RADIUS).contains(&d) {
        return Err(Error::SearchSpaceTooLarge(format!(
            "window radius {d} outside 1..={MAX_SEARCH_RADIUS}"
        )));
    }
    let du = d as usize;
    let interior = interior_solutions(du, p);
    let tops = rows_summing_to_one(2 * du + 1, p);
    let merged = tops
        .par_iter()
        .map(|top| {
            interior.iter().fold(SearchReport::default(), |acc, t| {
                acc.merge(analyse(t, top, du, p))
            })
        })
        .reduce(SearchReport::default, SearchReport::merge);
    Ok(SearchReport {
        d,
        field: field.to_string(),
        interior_solutions: interior.len() as u64,
        ..merged
    })
}

/// All admissible `λ` triangles, for cross-checking at tiny sizes.
pub fn admissible_lambdas(d: i64, field: Field) -> Result<Vec<Vec<Vec<Scalar>>>> {
    let Field::Prime(p) = field else {
        return Err(Error::SearchSpaceTooLarge(
            "enumeration needs a prime field".into(),
        ));
    };
    if p > 3 || !(1..=2).contains(&d) {
        return Err(Error::SearchSpaceTooLarge(
            "listing is limited to d <= 2 over F_2 or F_3".into(),
        ));
    }
    let du = d as usize;
    let mut out = Vec::new();
    for t in interior_solutions(du, p) {
        for top in rows_summing_to_one(2 * du + 1, p) {
            let rows = t.iter().map(|r| &r[..]).chain(std::iter::once(&top[..]));
            out.push(
                rows.map(|r| r.iter().map(|&x| field.from_i64(x as i64)).collect())
                    .collect(),
            );
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::hom_space;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn scene_shape() {
        let s = build_scene(1, Field::Rationals).unwrap();
        assert!(s.algebra.validate().is_clean() && s.x.validate().is_clean());
        let mut degs = s.basis_degrees(1);
        degs.sort();
        assert_eq!(degs, vec![-1, 0, 1]);
        assert!(s.f.is_surjective());
        let dims: Vec<usize> = (-1..=1).map(|k| s.free.module.dim(s.arrow(k))).collect();
        assert_eq!(dims, vec![1, 2, 3]);
        assert!(matches!(build_scene(0, f2()), Err(Error::WindowError(_))));
    }

    #[test]
    fn equivariant_maps_are_lambda_triangles() {
        for d in 1..=2 {
            let s = build_scene(d, Field::Rationals).unwrap();
            let n = (2 * d + 1) as usize;
            assert_eq!(
                hom_space(&s.free.module, &s.free.module).unwrap().dim(),
                n * (n + 1) / 2
            );
        }
    }

    #[test]
    fn identity_and_zero() {
        let s = build_scene(2, f2()).unwrap();
        let id = GradedHom::identity(&s.free.module);
        let a = idempotent_diagonal_check(&s, &id).unwrap();
        assert_eq!(a.i_set, vec![-2, -1, 0, 1, 2]);
        let r = min_element_propagation(&s, &a);
        assert!(r.precondition_ok && r.reaches_edge && r.violations.is_empty());
        assert!(kernel_vectors_check(&s, &id, &a));
        let zero = GradedHom::zero(&s.free.module, &s.free.module);
        let a = idempotent_diagonal_check(&s, &zero).unwrap();
        assert!(a.i_set.is_empty());
        assert!(!min_element_propagation(&s, &a).precondition_ok);
    }

    #[test]
    fn planted_descent_break_is_rejected() {
        // Row 0 points at -1, which is not in I, while row 1 keeps λ_{1,1} = 1.
        let s = build_scene(2, f2()).unwrap();
        let (z, o) = (f2().zero(), f2().one());
        let lambda = vec![
            vec![o.clone()],
            vec![o.clone(), z.clone()],
            vec![z.clone(), o.clone(), z.clone()],
            vec![z.clone(), z.clone(), z.clone(), o.clone()],
            vec![z.clone(), z.clone(), z.clone(), z.clone(), o.clone()],
        ];
        let e = s.endomorphism(&lambda).unwrap();
        assert!(matches!(
            idempotent_diagonal_check(&s, &e),
            Err(Error::NotIdempotentOnInterior(_))
        ));
    }

    #[test]
    fn search_matches_hom_level_checks() {
        for field in [f2(), Field::prime(3).unwrap()] {
            let s = build_scene(1, field).unwrap();
            let all = admissible_lambdas(1, field).unwrap();
            let report = brute_force_split_search(1, field).unwrap();
            assert_eq!(report.admissible, all.len() as u64);
            assert!(report.consistent());
            for lambda in &all {
                let e = s.endomorphism(lambda).unwrap();
                assert_eq!(s.f.after(&e).flatten(), s.f.flatten());
                let a = idempotent_diagonal_check(&s, &e).unwrap();
                assert_eq!(&a.lambda, lambda);
                let r = min_element_propagation(&s, &a);
                assert!(r.precondition_ok && r.reaches_edge && !r.interior_minimal);
                assert!(kernel_vectors_check(&s, &e, &a));
            }
        }
        assert!(matches!(
            brute_force_split_search(4, f2()),
            Err(Error::SearchSpaceTooLarge(_))
        ));
        assert!(matches!(
            brute_force_split_search(1, Field::Rationals),
            Err(Error::SearchSpaceTooLarge(_))
        ));
    }

    #[test]
    fn restriction_stays_admissible() {
        // Dropping the top row of a window-2 solution leaves a window-1 solution.
        for field in [f2(), Field::prime(3).unwrap()] {
            let small = admissible_lambdas(1, field).unwrap();
            for lambda in admissible_lambdas(2, field).unwrap() {
                assert!(small.contains(&lambda[..3].to_vec()));
            }
        }
    }
}
