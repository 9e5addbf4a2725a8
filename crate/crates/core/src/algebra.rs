//! Finite-dimensional unital associative algebras given by structure
//! constants, and finite-dimensional left modules over them.

use crate::error::{Error, Result};
use crate::field::poly::Poly;
use crate::field::{
    axpy, is_zero_vector, unit_vector, zero_vector, Field, Matrix, Scalar, Subspace, Vector,
};

/// A unital algebra with basis `b_0, ..., b_{n-1}` and products
/// `b_i b_j = sum_k c_{ijk} b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FdAlgebra {
    field: Field,
    dim: usize,
    table: Vec<Scalar>,
    one: Vector,
}

impl FdAlgebra {
    /// `table[(i * dim + j) * dim + k]` is the coefficient of `b_k` in `b_i b_j`.
    pub fn new(field: Field, dim: usize, table: Vec<Scalar>, one: Vector) -> Result<FdAlgebra> {
        if table.len() != dim * dim * dim || one.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "structure constants for a {dim}-dimensional algebra need {} entries",
                dim * dim * dim
            )));
        }
        if let Some(x) = table.iter().chain(&one).find(|x| x.field() != field) {
            return Err(Error::FieldMismatch(format!(
                "{} entry in an algebra over {field}",
                x.field()
            )));
        }
        let a = FdAlgebra {
            field,
            dim,
            table,
            one,
        };
        a.check_unit()?;
        Ok(a)
    }

    /// Builds the table from a closure giving `b_i b_j`.
    pub fn from_products(
        field: Field,
        dim: usize,
        one: Vector,
        mut product: impl FnMut(usize, usize) -> Vector,
    ) -> Result<FdAlgebra> {
        let mut table = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = product(i, j);
                if v.len() != dim {
                    return Err(Error::DimensionMismatch(format!(
                        "product b_{i} b_{j} has wrong length"
                    )));
                }
                table.extend(v);
            }
        }
        FdAlgebra::new(field, dim, table, one)
    }

    fn check_unit(&self) -> Result<()> {
        for i in 0..self.dim {
            let b = unit_vector(self.field, self.dim, i);
            if self.mul(&self.one, &b) != b || self.mul(&b, &self.one) != b {
                return Err(Error::NotUnital(format!(
                    "declared unit does not fix basis element {i}"
                )));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn one(&self) -> &Vector {
        &self.one
    }

    pub fn zero(&self) -> Vector {
        zero_vector(self.field, self.dim)
    }

    pub fn basis_element(&self, i: usize) -> Vector {
        unit_vector(self.field, self.dim, i)
    }

    /// Coefficients of `b_i b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        let start = (i * self.dim + j) * self.dim;
        &self.table[start..start + self.dim]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                axpy(&mut out, &c, self.basis_product(i, j));
            }
        }
        out
    }

    pub fn pow(&self, x: &[Scalar], n: usize) -> Vector {
        let mut acc = self.one.clone();
        for _ in 0..n {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Matrix of `y -> x y` (columns indexed by basis).
    pub fn left_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| self.mul(x, &self.basis_element(j)))
            .collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    pub fn right_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| self.mul(&self.basis_element(j), x))
            .collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// First basis triple violating associativity, if any.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.basis_product(i, j).to_vec();
                for k in 0..self.dim {
                    let left = self.mul(&ij, &self.basis_element(k));
                    let jk = self.basis_product(j, k).to_vec();
                    let right = self.mul(&self.basis_element(i), &jk);
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim)
            .all(|i| (0..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// The algebra with reversed multiplication on the same basis.
    pub fn opposite(&self) -> FdAlgebra {
        let mut table = Vec::with_capacity(self.table.len());
        for i in 0..self.dim {
            for j in 0..self.dim {
                table.extend(self.basis_product(j, i).iter().cloned());
            }
        }
        FdAlgebra {
            field: self.field,
            dim: self.dim,
            table,
            one: self.one.clone(),
        }
    }

    /// The subalgebra with the given basis, made unital with `unit`
    /// (which may differ from the ambient unit, as for corners `eAe`).
    pub fn restrict(&self, basis: &Subspace, unit: &[Scalar]) -> Result<FdAlgebra> {
        let rows = basis.basis();
        let n = rows.len();
        let one = basis
            .coordinates(unit)
            .ok_or_else(|| Error::StructureError("unit not in the subalgebra".into()))?;
        let mut table = Vec::with_capacity(n * n * n);
        for a in rows {
            for b in rows {
                let p = self.mul(a, b);
                let c = basis.coordinates(&p).ok_or_else(|| {
                    Error::StructureError("subspace not closed under multiplication".into())
                })?;
                table.extend(c);
            }
        }
        FdAlgebra::new(self.field, n, table, one)
    }

    /// The corner `e A e` as an algebra with unit `e`, plus its basis inside `A`.
    pub fn corner(&self, e: &[Scalar]) -> Result<(FdAlgebra, Subspace)> {
        let span = Subspace::from_rows(
            self.field,
            self.dim,
            (0..self.dim).map(|i| self.mul(&self.mul(e, &self.basis_element(i)), e)),
        );
        let alg = self.restrict(&span, e)?;
        Ok((alg, span))
    }

    /// `A / I` for a two-sided ideal `I`, with basis the images of the unit
    /// vectors at the non-pivot columns of `I`.
    pub fn quotient(&self, ideal: &Subspace) -> Result<FdAlgebra> {
        let reps = ideal.non_pivots();
        let n = reps.len();
        let mut table = Vec::with_capacity(n * n * n);
        for &a in &reps {
            for &b in &reps {
                table.extend(ideal.quotient_coordinates(self.basis_product(a, b)));
            }
        }
        let one = ideal.quotient_coordinates(&self.one);
        FdAlgebra::new(self.field, n, table, one)
    }

    /// Lift of a quotient-algebra vector (see [`FdAlgebra::quotient`]).
    pub fn lift_from_quotient(&self, ideal: &Subspace, q: &[Scalar]) -> Vector {
        let mut v = self.zero();
        for (c, idx) in q.iter().zip(ideal.non_pivots()) {
            v[idx] = c.clone();
        }
        v
    }

    pub fn center(&self) -> Subspace {
        // z with z b_i - b_i z = 0 for every i.
        let mut rows = Vec::new();
        for i in 0..self.dim {
            let l = self.right_mult_matrix(&self.basis_element(i));
            let r = self.left_mult_matrix(&self.basis_element(i));
            let d = &l - &r;
            rows.extend(d.row_list());
        }
        let m = Matrix::from_rows_with_cols(self.field, self.dim, rows).expect("well formed");
        Subspace::from_matrix(&m.kernel_basis())
    }

    /// Smallest two-sided ideal containing the given elements.
    pub fn ideal_generated(&self, elements: &[Vector]) -> Subspace {
        let mut span = Subspace::zero(self.field, self.dim);
        let mut queue: Vec<Vector> = Vec::new();
        for e in elements {
            if span.insert(e.clone()) {
                queue.push(e.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for i in 0..self.dim {
                let b = self.basis_element(i);
                for w in [self.mul(&b, &v), self.mul(&v, &b)] {
                    if span.insert(w.clone()) {
                        queue.push(w);
                    }
                }
            }
        }
        span
    }

    /// Span of all products `u v` with `u` in `left`, `v` in `right`.
    pub fn product_space(&self, left: &Subspace, right: &Subspace) -> Subspace {
        let mut s = Subspace::zero(self.field, self.dim);
        for u in left.basis() {
            for v in right.basis() {
                s.insert(self.mul(u, v));
            }
        }
        s
    }

    pub fn is_two_sided_ideal(&self, s: &Subspace) -> bool {
        (0..self.dim).all(|i| {
            let b = self.basis_element(i);
            s.basis()
                .iter()
                .all(|v| s.contains(&self.mul(&b, v)) && s.contains(&self.mul(v, &b)))
        })
    }

    /// Minimal polynomial of `x` (monic).
    pub fn minimal_polynomial(&self, x: &[Scalar]) -> Poly {
        let mut powers: Vec<Vector> = vec![self.one.clone()];
        let mut span = Subspace::zero(self.field, self.dim);
        span.insert(self.one.clone());
        loop {
            let next = self.mul(powers.last().unwrap(), x);
            if span.contains(&next) {
                // Solve next = sum c_i x^i.
                let m = Matrix::from_columns(self.field, self.dim, &powers);
                let c = m.solve(&next).expect("dimensions agree").expect("in span");
                let mut coeffs: Vec<Scalar> = c.iter().map(|v| -v).collect();
                coeffs.push(self.field.one());
                return Poly::new(self.field, coeffs);
            }
            span.insert(next.clone());
            powers.push(next);
        }
    }

    /// Evaluates a polynomial at an algebra element.
    pub fn eval_poly(&self, p: &Poly, x: &[Scalar]) -> Vector {
        let mut acc = self.zero();
        for c in p.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            axpy(&mut acc, c, &self.one);
        }
        acc
    }

    pub fn is_idempotent(&self, e: &[Scalar]) -> bool {
        self.mul(e, e) == e
    }

    /// Stable 64-bit fingerprint of the structure constants.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf29ce484222325;
        let mut feed = |bytes: &[u8]| {
            for &b in bytes {
                h ^= b as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        };
        feed(self.field.to_string().as_bytes());
        feed(&(self.dim as u64).to_le_bytes());
        for x in self.table.iter().chain(&self.one) {
            feed(x.to_string().as_bytes());
            feed(b",");
        }
        h
    }

    // ----- standard examples -----

    /// `K[x]/(x^n)` with basis `1, x, ..., x^{n-1}`.
    pub fn truncated_polynomial(field: Field, n: usize) -> FdAlgebra {
        FdAlgebra::from_products(field, n, unit_vector(field, n, 0), |i, j| {
            let mut v = zero_vector(field, n);
            if i + j < n {
                v[i + j] = field.one();
            }
            v
        })
        .expect("valid algebra")
    }

    /// `K^k` with componentwise multiplication.
    pub fn diagonal(field: Field, k: usize) -> FdAlgebra {
        FdAlgebra::from_products(field, k, vec![field.one(); k], |i, j| {
            let mut v = zero_vector(field, k);
            if i == j {
                v[i] = field.one();
            }
            v
        })
        .expect("valid algebra")
    }

    /// Full matrix algebra `M_n(K)` with matrix-unit basis `E_{ij}` at index `i n + j`.
    pub fn full_matrix(field: Field, n: usize) -> FdAlgebra {
        let units: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        FdAlgebra::matrix_units(field, n, &units)
    }

    /// Upper-triangular `n x n` matrices, basis `E_{ij}` (`i <= j`) in row-major order.
    pub fn upper_triangular(field: Field, n: usize) -> FdAlgebra {
        let units: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        FdAlgebra::matrix_units(field, n, &units)
    }

    /// The span of the given matrix units, which must be closed under
    /// multiplication and contain every diagonal unit.
    pub fn matrix_units(field: Field, n: usize, units: &[(usize, usize)]) -> FdAlgebra {
        let d = units.len();
        let index = |p: (usize, usize)| units.iter().position(|&u| u == p);
        let one = {
            let mut v = zero_vector(field, d);
            for i in 0..n {
                v[index((i, i)).expect("diagonal units present")] = field.one();
            }
            v
        };
        FdAlgebra::from_products(field, d, one, |a, b| {
            let (i, j) = units[a];
            let (k, l) = units[b];
            let mut v = zero_vector(field, d);
            if j == k {
                v[index((i, l)).expect("closed under products")] = field.one();
            }
            v
        })
        .expect("valid algebra")
    }

    /// Group algebra from a Cayley table `table[i][j] = index of g_i g_j`;
    /// element 0 need not be the identity.
    pub fn group_algebra(field: Field, table: &[Vec<usize>]) -> Result<FdAlgebra> {
        let n = table.len();
        let e = (0..n)
            .find(|&i| (0..n).all(|j| table[i][j] == j && table[j][i] == j))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        FdAlgebra::from_products(field, n, unit_vector(field, n, e), |i, j| {
            unit_vector(field, n, table[i][j])
        })
    }

    /// `Q(i)`-style quadratic algebra `K[t]/(t^2 - c)`.
    pub fn quadratic(field: Field, c: i64) -> FdAlgebra {
        FdAlgebra::from_products(field, 2, unit_vector(field, 2, 0), |i, j| match (i, j) {
            (0, k) | (k, 0) => unit_vector(field, 2, k),
            _ => {
                let mut v = zero_vector(field, 2);
                v[0] = field.from_i64(c);
                v
            }
        })
        .expect("valid algebra")
    }

    /// `A x B` with basis `(a_0, .., a_{m-1}, b_0, .., b_{n-1})`.
    pub fn product(a: &FdAlgebra, b: &FdAlgebra) -> Result<FdAlgebra> {
        if a.field != b.field {
            return Err(Error::FieldMismatch(
                "product of algebras over different fields".into(),
            ));
        }
        let (m, n) = (a.dim, b.dim);
        let field = a.field;
        let mut one = a.one.clone();
        one.extend(b.one.iter().cloned());
        FdAlgebra::from_products(field, m + n, one, |i, j| {
            let mut v = zero_vector(field, m + n);
            if i < m && j < m {
                v[..m].clone_from_slice(a.basis_product(i, j));
            } else if i >= m && j >= m {
                v[m..].clone_from_slice(b.basis_product(i - m, j - m));
            }
            v
        })
    }
}

/// A finite-dimensional left module, given by the action matrix of every
/// algebra basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FdModule {
    field: Field,
    dim: usize,
    action: Vec<Matrix>,
}

impl FdModule {
    pub fn new(field: Field, dim: usize, action: Vec<Matrix>) -> Result<FdModule> {
        for m in &action {
            if m.field() != field {
                return Err(Error::FieldMismatch(
                    "action matrix over another field".into(),
                ));
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(
                    "action matrix has the wrong shape".into(),
                ));
            }
        }
        Ok(FdModule { field, dim, action })
    }

    /// `A` acting on itself by left multiplication.
    pub fn regular(a: &FdAlgebra) -> FdModule {
        let action = (0..a.dim())
            .map(|i| a.left_mult_matrix(&a.basis_element(i)))
            .collect();
        FdModule {
            field: a.field(),
            dim: a.dim(),
            action,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    /// Matrix of an arbitrary algebra element.
    pub fn act_matrix(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for (c, a) in x.iter().zip(&self.action) {
            if !c.is_zero() {
                m = &m + &a.scale(c);
            }
        }
        m
    }

    /// Smallest submodule containing the given vectors.
    pub fn generated_submodule(&self, vectors: &[Vector]) -> Subspace {
        let mut span = Subspace::zero(self.field, self.dim);
        let mut queue = Vec::new();
        for v in vectors {
            if span.insert(v.clone()) {
                queue.push(v.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for a in &self.action {
                let w = a.mul_vec(&v);
                if span.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
        span
    }

    pub fn is_submodule(&self, s: &Subspace) -> bool {
        s.basis()
            .iter()
            .all(|v| self.action.iter().all(|a| s.contains(&a.mul_vec(v))))
    }

    /// `I M` for a subspace `I` of the algebra.
    pub fn ideal_times_module(&self, ideal: &Subspace) -> Subspace {
        let mut s = Subspace::zero(self.field, self.dim);
        for x in ideal.basis() {
            let m = self.act_matrix(x);
            for j in 0..self.dim {
                let col = m.column(j);
                if !is_zero_vector(&col) {
                    s.insert(col);
                }
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_algebras_are_associative() {
        let q = Field::Rationals;
        for a in [
            FdAlgebra::truncated_polynomial(q, 4),
            FdAlgebra::upper_triangular(q, 3),
            FdAlgebra::full_matrix(q, 2),
            FdAlgebra::diagonal(q, 3),
            FdAlgebra::quadratic(q, -1),
        ] {
            assert_eq!(a.associativity_violation(), None);
        }
    }

    #[test]
    fn rejects_bad_unit() {
        let q = Field::Rationals;
        let a = FdAlgebra::truncated_polynomial(q, 2);
        let r = FdAlgebra::new(q, 2, a.table.clone(), vec![q.zero(), q.one()]);
        assert!(matches!(r, Err(Error::NotUnital(_))));
    }

    #[test]
    fn minimal_polynomial_of_nilpotent() {
        let q = Field::Rationals;
        let a = FdAlgebra::truncated_polynomial(q, 3);
        let m = a.minimal_polynomial(&a.basis_element(1));
        assert_eq!(m.degree(), Some(3));
        assert!(is_zero_vector(&a.eval_poly(&m, &a.basis_element(1))));
    }

    #[test]
    fn center_of_matrix_algebra_is_scalars() {
        let q = Field::Rationals;
        assert_eq!(FdAlgebra::full_matrix(q, 2).center().dim(), 1);
        assert_eq!(FdAlgebra::diagonal(q, 3).center().dim(), 3);
        assert_eq!(FdAlgebra::upper_triangular(q, 2).center().dim(), 1);
    }

    #[test]
    fn corner_and_quotient() {
        let q = Field::Rationals;
        let a = FdAlgebra::upper_triangular(q, 2); // E11, E12, E22
        let e = a.basis_element(0);
        let (c, _) = a.corner(&e).unwrap();
        assert_eq!(c.dim(), 1);
        let j = Subspace::from_rows(q, 3, vec![a.basis_element(1)]);
        let quo = a.quotient(&j).unwrap();
        assert_eq!(quo.dim(), 2);
        assert!(quo.is_commutative());
    }
}
