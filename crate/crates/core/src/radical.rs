//! Jacobson radicals of finite-dimensional algebras, of hom spaces between
//! graded modules, and of modules.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{FdAlgebra, FdModule};
use crate::error::{Error, Result};
use crate::field::{Field, Matrix, Scalar, Subspace, Vector};
use crate::graded::{
    direct_sum, endomorphism_algebra, hom_flat_len, module_to_total, GradedAlgebra, GradedHom,
    GradedModule, TotalHomAlgebra,
};

/// Which algorithm produced a radical.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RadicalMethod {
    /// Kernel of `(x, y) -> Tr(L_{xy})`; characteristic zero or `p > dim`.
    TraceForm,
    /// The `p`-power trace filtration for small characteristic.
    TraceFiltration,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadicalCertificate {
    pub algebra_dim: usize,
    pub radical_dim: usize,
    pub nilpotency_index: usize,
    pub quotient_dim: usize,
    /// The radical of `A/J` is zero.
    pub quotient_semisimple: bool,
    pub method: RadicalMethod,
}

pub fn radical_method(a: &FdAlgebra) -> RadicalMethod {
    match a.field() {
        Field::Rationals => RadicalMethod::TraceForm,
        Field::Prime(p) if p as usize > a.dim() => RadicalMethod::TraceForm,
        Field::Prime(_) => RadicalMethod::TraceFiltration,
    }
}

/// The Jacobson radical of `a` as a subspace of its coordinates.
pub fn algebra_radical(a: &FdAlgebra) -> Result<Subspace> {
    let n = a.dim();
    let field = a.field();
    if n == 0 {
        return Ok(Subspace::zero(field, 0));
    }
    match field {
        Field::Rationals => Ok(trace_form_kernel(a)),
        Field::Prime(p) => filtration_radical(a, p),
    }
}

fn basis_traces(a: &FdAlgebra) -> Vec<Scalar> {
    (0..a.dim())
        .map(|k| {
            let mut t = a.field().zero();
            for j in 0..a.dim() {
                t += &a.basis_product(k, j)[j];
            }
            t
        })
        .collect()
}

fn trace_form_kernel(a: &FdAlgebra) -> Subspace {
    let n = a.dim();
    let field = a.field();
    let t = basis_traces(a);
    let rows: Vec<Vector> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let mut s = field.zero();
                    for (c, tk) in a.basis_product(i, j).iter().zip(&t) {
                        if !c.is_zero() {
                            s += &(c * tk);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect();
    let gram = Matrix::from_rows_with_cols(field, n, rows).expect("square");
    Subspace::from_matrix(&gram.kernel_basis())
}

/// `I_{-1} = A`, `I_i = {x in I_{i-1} : g_i(x y) = 0 for all y}` with
/// `g_i(x) = (Tr(X^{p^i}) mod p^{i+1}) / p^i` for an integer lift `X` of
/// the left multiplication matrix of `x`; the radical is `I_l` for
/// `l = floor(log_p dim)`.
fn filtration_radical(a: &FdAlgebra, p: u64) -> Result<Subspace> {
    let n = a.dim();
    let field = a.field();
    let mut l: u32 = 0;
    let mut pow = p as usize;
    while pow <= n {
        l += 1;
        pow = pow.saturating_mul(p as usize);
    }
    let left: Vec<Matrix> = (0..n)
        .map(|k| a.left_mult_matrix(&a.basis_element(k)))
        .collect();
    let mut current = Subspace::full(field, n);
    for i in 0..=l {
        if current.is_zero() {
            break;
        }
        let basis = current.basis().to_vec();
        let mut rows = Vec::with_capacity(n);
        for j in 0..n {
            let y = a.basis_element(j);
            let mut row = Vec::with_capacity(basis.len());
            for u in &basis {
                let xy = a.mul(u, &y);
                row.push(field.from_i64(g_value(&left, &xy, p, i)? as i64));
            }
            rows.push(row);
        }
        let eqs = Matrix::from_rows_with_cols(field, basis.len(), rows)?;
        let kernel = eqs.kernel_basis();
        current = Subspace::from_rows(
            field,
            n,
            kernel.row_list().iter().map(|c| current.combine(c)),
        );
    }
    Ok(current)
}

fn g_value(left: &[Matrix], x: &[Scalar], p: u64, i: u32) -> Result<u64> {
    let n = left.len();
    let modulus = (p as u128).pow(i + 1);
    let mut m = vec![0u128; n * n];
    for (c, l) in x.iter().zip(left) {
        let c = c.residue().expect("prime field") as u128;
        if c == 0 {
            continue;
        }
        for (slot, e) in m.iter_mut().zip(l.entries()) {
            *slot = (*slot + c * e.residue().expect("prime field") as u128) % (p as u128);
        }
    }
    for _ in 0..i {
        m = mat_pow(&m, n, p as u128, modulus);
    }
    let trace = (0..n).fold(0u128, |acc, k| (acc + m[k * n + k]) % modulus);
    let unit = (p as u128).pow(i);
    if trace % unit != 0 {
        return Err(Error::StructureError(
            "power trace not divisible as expected".into(),
        ));
    }
    Ok((trace / unit) as u64)
}

fn mat_mul(a: &[u128], b: &[u128], n: usize, modulus: u128) -> Vec<u128> {
    let mut out = vec![0u128; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = (out[i * n + j] + x * b[k * n + j]) % modulus;
            }
        }
    }
    out
}

fn mat_pow(m: &[u128], n: usize, mut e: u128, modulus: u128) -> Vec<u128> {
    let mut acc: Vec<u128> = (0..n * n).map(|k| u128::from(k / n == k % n)).collect();
    let mut base = m.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(&acc, &base, n, modulus);
        }
        base = mat_mul(&base, &base, n, modulus);
        e >>= 1;
    }
    acc
}

/// Smallest `m` with `I^m = 0`, or `None` if the powers stabilise first.
pub fn nilpotency_index(a: &FdAlgebra, ideal: &Subspace) -> Option<usize> {
    let mut power = ideal.clone();
    let mut m = 1;
    while !power.is_zero() {
        let next = a.product_space(&power, ideal);
        if next.dim() == power.dim() {
            return None;
        }
        power = next;
        m += 1;
    }
    Some(m)
}

pub fn radical_certificate(a: &FdAlgebra) -> Result<RadicalCertificate> {
    let j = algebra_radical(a)?;
    let nilpotency_index = nilpotency_index(a, &j)
        .ok_or_else(|| Error::StructureError("computed radical is not nilpotent".into()))?;
    let quotient = a.quotient(&j)?;
    let quotient_semisimple = algebra_radical(&quotient)?.is_zero();
    Ok(RadicalCertificate {
        algebra_dim: a.dim(),
        radical_dim: j.dim(),
        nilpotency_index,
        quotient_dim: quotient.dim(),
        quotient_semisimple,
        method: radical_method(a),
    })
}

/// `J(M, N)` as a subspace of the flattened homs `M -> N`.
#[derive(Clone, Debug)]
pub struct HomRadical {
    pub source: Arc<GradedModule>,
    pub target: Arc<GradedModule>,
    pub space: Subspace,
}

impl HomRadical {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> Vec<GradedHom> {
        self.space
            .basis()
            .iter()
            .map(|v| GradedHom::from_flat(&self.source, &self.target, v))
            .collect()
    }

    pub fn contains(&self, f: &GradedHom) -> bool {
        self.space.contains(&f.flatten())
    }
}

/// `J(M, N) = {f : the matrix with f in the lower-left corner lies in
/// J(End(M ⊕ N))}`.
pub fn hom_radical(m: &Arc<GradedModule>, n: &Arc<GradedModule>) -> Result<HomRadical> {
    hom_radical_padded(m, n, &[])
}

/// Same, computed inside `End(M ⊕ N ⊕ C_1 ⊕ ...)`.
pub fn hom_radical_padded(
    m: &Arc<GradedModule>,
    n: &Arc<GradedModule>,
    padding: &[Arc<GradedModule>],
) -> Result<HomRadical> {
    let mut parts = vec![m.clone(), n.clone()];
    parts.extend(padding.iter().cloned());
    let sum = direct_sum(&parts)?;
    let (end, space) = endomorphism_algebra(&sum.module)?;
    let j = algebra_radical(&end)?;
    let homs = space.basis();
    let field = m.field();
    let mut out = Subspace::zero(field, hom_flat_len(m, n));
    for c in j.basis() {
        let mut f = GradedHom::zero(&sum.module, &sum.module);
        for (x, h) in c.iter().zip(&homs) {
            if !x.is_zero() {
                f = f.add(&h.scale(x));
            }
        }
        let corner = sum.projections[1].after(&f.after(&sum.inclusions[0]));
        out.insert(corner.flatten());
    }
    Ok(HomRadical {
        source: m.clone(),
        target: n.clone(),
        space: out,
    })
}

/// The radical of the total hom algebra over a generator list, split into
/// blocks, for computing radicals and tops of graded modules.
#[derive(Clone, Debug)]
pub struct GradedRadical {
    pub total: TotalHomAlgebra,
    pub radical: Subspace,
}

impl GradedRadical {
    pub fn new(a: &GradedAlgebra, generators: &[usize]) -> Result<GradedRadical> {
        let total = TotalHomAlgebra::new(a, generators)?;
        let radical = total.block_homogeneous(&algebra_radical(total.algebra())?);
        Ok(GradedRadical { total, radical })
    }

    pub fn over_all_arrows(a: &GradedAlgebra) -> Result<GradedRadical> {
        let all: Vec<usize> = (0..a.category().arrow_count()).collect();
        GradedRadical::new(a, &all)
    }

    /// Basis of `J_{pq}`, as entries of `A[g_q]_{g_p}`.
    pub fn block(&self, p: usize, q: usize) -> Vec<Vector> {
        let r = self.total.block(p, q);
        self.radical
            .basis()
            .iter()
            .filter(|v| !v[r.clone()].iter().all(Scalar::is_zero))
            .map(|v| v[r.clone()].to_vec())
            .collect()
    }
}

/// `rad M = J M`, degree by degree.
pub fn module_radical(m: &GradedModule, rad: &GradedRadical) -> Result<Vec<Subspace>> {
    let fd = module_to_total(m, &rad.total)?;
    let jm = fd.ideal_times_module(&rad.radical);
    let field = m.field();
    let mut parts: Vec<Subspace> = m.dims().iter().map(|&d| Subspace::zero(field, d)).collect();
    let mut offset = 0;
    for &g in rad.total.generators() {
        let d = m.dim(g);
        for v in jm.basis() {
            let piece = &v[offset..offset + d];
            if !piece.iter().all(Scalar::is_zero) {
                parts[g].insert(piece.to_vec());
            }
        }
        offset += d;
    }
    Ok(parts)
}

/// `J(A) M` for a module over an ungraded algebra.
pub fn fd_module_radical(a: &FdAlgebra, m: &FdModule) -> Result<Subspace> {
    if m.action().len() != a.dim() {
        return Err(Error::DimensionMismatch(
            "module is over an algebra of another dimension".into(),
        ));
    }
    Ok(m.ideal_times_module(&algebra_radical(a)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graded::projective;

    fn fields() -> Vec<Field> {
        vec![
            Field::Rationals,
            Field::prime(2).unwrap(),
            Field::prime(3).unwrap(),
            Field::prime(5).unwrap(),
        ]
    }

    #[test]
    fn small_examples() {
        for f in fields() {
            let k = FdAlgebra::diagonal(f, 1);
            assert!(algebra_radical(&k).unwrap().is_zero());
            let t = FdAlgebra::truncated_polynomial(f, 3);
            let j = algebra_radical(&t).unwrap();
            assert_eq!(j.dim(), 2);
            assert!(!j.contains(&t.basis_element(0)));
            assert_eq!(nilpotency_index(&t, &j), Some(3));
            let u = FdAlgebra::upper_triangular(f, 2);
            let j = algebra_radical(&u).unwrap();
            assert_eq!(j.dim(), 1);
            assert!(j.contains(&u.basis_element(1)));
            assert_eq!(nilpotency_index(&u, &j), Some(2));
            assert_eq!(nilpotency_index(&k, &Subspace::zero(f, 1)), Some(1));
        }
    }

    #[test]
    fn small_characteristic() {
        // K[Z/2] over F_2 is K[x]/(x^2); over F_3 it is K x K.
        let table = vec![vec![0, 1], vec![1, 0]];
        let f2 = FdAlgebra::group_algebra(Field::prime(2).unwrap(), &table).unwrap();
        assert_eq!(algebra_radical(&f2).unwrap().dim(), 1);
        let f3 = FdAlgebra::group_algebra(Field::prime(3).unwrap(), &table).unwrap();
        assert!(algebra_radical(&f3).unwrap().is_zero());
        // M_2 over F_2 is simple although its trace form is degenerate.
        let m2 = FdAlgebra::full_matrix(Field::prime(2).unwrap(), 2);
        assert!(algebra_radical(&m2).unwrap().is_zero());
        let t = FdAlgebra::truncated_polynomial(Field::prime(2).unwrap(), 5);
        let c = radical_certificate(&t).unwrap();
        assert_eq!(
            (c.radical_dim, c.nilpotency_index, c.method),
            (4, 5, RadicalMethod::TraceFiltration)
        );
        assert!(c.quotient_semisimple);
    }

    #[test]
    fn hom_radical_examples() {
        let q = Field::Rationals;
        let a = fixtures::nat_polynomial(q, 2);
        let p0 = projective(&a, 0).unwrap().module;
        let p1 = projective(&a, 1).unwrap().module;
        assert_eq!(hom_radical(&p0, &p0).unwrap().dim(), 0);
        assert_eq!(hom_radical(&p1, &p0).unwrap().dim(), 1);
        let unit = fixtures::point_field(q);
        let k = Arc::new(GradedModule::regular(&unit));
        assert_eq!(hom_radical(&k, &k).unwrap().dim(), 0);
        let t = fixtures::point_algebra(&FdAlgebra::truncated_polynomial(q, 3));
        let r = Arc::new(GradedModule::regular(&t));
        let j = hom_radical(&r, &r).unwrap();
        assert_eq!(j.dim(), 2);
        let (end, _) = endomorphism_algebra(&r).unwrap();
        assert_eq!(algebra_radical(&end).unwrap().dim(), 2);
    }

    #[test]
    fn module_radicals() {
        let q = Field::Rationals;
        let a = fixtures::nat_polynomial(q, 3);
        let rad = GradedRadical::over_all_arrows(&a).unwrap();
        let p1 = projective(&a, 1).unwrap().module;
        let r = module_radical(&p1, &rad).unwrap();
        assert_eq!(
            r.iter().map(Subspace::dim).collect::<Vec<_>>(),
            vec![0, 0, 1, 1]
        );
        let t = FdAlgebra::truncated_polynomial(q, 3);
        let reg = FdModule::regular(&t);
        let j = fd_module_radical(&t, &reg).unwrap();
        assert_eq!(j, algebra_radical(&t).unwrap());
        let kk = FdAlgebra::diagonal(q, 2);
        assert!(fd_module_radical(&kk, &FdModule::regular(&kk))
            .unwrap()
            .is_zero());
    }
}
