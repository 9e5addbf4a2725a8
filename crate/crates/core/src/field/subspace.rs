use super::{fma, is_zero_vector, Field, Matrix, Scalar, Vector};
use crate::error::{Error, Result};

/// A linear subspace of `K^n`, stored as its reduced row echelon basis.
///
/// Two subspaces are equal iff their reduced bases are equal, so the derived
/// `PartialEq` is subspace equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace::from_matrix(&Matrix::identity(field, ambient))
    }

    pub fn from_matrix(m: &Matrix) -> Subspace {
        let (r, pivots) = m.rref();
        let rows = (0..pivots.len()).map(|i| r.row_vec(i)).collect();
        Subspace {
            field: m.field(),
            ambient: m.cols(),
            rows,
            pivots,
        }
    }

    pub fn from_rows<I: IntoIterator<Item = Vector>>(
        field: Field,
        ambient: usize,
        rows: I,
    ) -> Subspace {
        let mut s = Subspace::zero(field, ambient);
        for v in rows {
            s.insert(v);
        }
        s
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows_with_cols(self.field, self.ambient, self.rows.clone())
            .expect("subspace rows are well formed")
    }

    /// Columns that are not pivots; their unit vectors span a complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    /// `v` minus its component along the reduced basis.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.ambient, "vector length vs ambient dimension");
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p].clone();
            if c.is_zero() {
                continue;
            }
            let neg = -&c;
            for (x, r) in w.iter_mut().zip(row) {
                fma(x, &neg, r);
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    /// Coordinates of `v` with respect to the reduced basis.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Linear combination of the basis rows.
    pub fn combine(&self, coords: &[Scalar]) -> Vector {
        assert_eq!(coords.len(), self.rows.len());
        let mut out = vec![self.field.zero(); self.ambient];
        for (c, row) in coords.iter().zip(&self.rows) {
            super::axpy(&mut out, c, row);
        }
        out
    }

    /// Coordinates of the class of `v` in the quotient by this subspace,
    /// with respect to the unit vectors at the non-pivot columns.
    pub fn quotient_coordinates(&self, v: &[Scalar]) -> Vector {
        let w = self.reduce(v);
        self.non_pivots()
            .into_iter()
            .map(|c| w[c].clone())
            .collect()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vector) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length vs ambient dimension");
        let mut w = self.reduce(&v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("nonzero");
        for x in w.iter_mut() {
            *x = &*x * &inv;
        }
        for row in self.rows.iter_mut() {
            let c = row[p].clone();
            if c.is_zero() {
                continue;
            }
            let neg = -&c;
            for (x, y) in row.iter_mut().zip(&w) {
                fma(x, &neg, y);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, w);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v.clone());
        }
        s
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let n = self.ambient;
        let mut rows = Vec::new();
        for u in &self.rows {
            let mut r = u.clone();
            r.extend(u.iter().cloned());
            rows.push(r);
        }
        for v in &other.rows {
            let mut r = v.clone();
            r.extend(std::iter::repeat_n(self.field.zero(), n));
            rows.push(r);
        }
        let m = Matrix::from_rows_with_cols(self.field, 2 * n, rows).expect("well formed");
        let (r, pivots) = m.rref();
        let inter = pivots
            .iter()
            .enumerate()
            .filter(|(_, &p)| p >= n)
            .map(|(i, _)| r.row(i)[n..].to_vec());
        Subspace::from_rows(self.field, n, inter)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|v| other.contains(v))
    }

    /// Image of this subspace under the linear map `m` (acting on columns).
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        Subspace::from_rows(self.field, m.rows(), self.rows.iter().map(|v| m.mul_vec(v)))
    }
}

/// Sum and intersection of the row spaces of `u` and `v`, each returned as a
/// reduced basis matrix.
pub fn subspace_sum_and_intersection(u: &Matrix, v: &Matrix) -> Result<(Matrix, Matrix)> {
    if u.field() != v.field() {
        return Err(Error::FieldMismatch(format!(
            "{} vs {}",
            u.field(),
            v.field()
        )));
    }
    if u.cols() != v.cols() {
        return Err(Error::DimensionMismatch(format!(
            "subspaces of K^{} and K^{}",
            u.cols(),
            v.cols()
        )));
    }
    u.check_field()?;
    v.check_field()?;
    let su = Subspace::from_matrix(u);
    let sv = Subspace::from_matrix(v);
    Ok((
        su.sum(&sv).basis_matrix(),
        su.intersection(&sv).basis_matrix(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_subspaces() {
        let q = Field::Rationals;
        let u = Matrix::from_i64(q, &[&[1, 2, 0], &[0, 1, 1]]);
        let (s, i) = subspace_sum_and_intersection(&u, &u).unwrap();
        assert_eq!(Subspace::from_matrix(&s), Subspace::from_matrix(&u));
        assert_eq!(Subspace::from_matrix(&i), Subspace::from_matrix(&u));
    }

    #[test]
    fn complementary_lines() {
        let q = Field::Rationals;
        let u = Matrix::from_i64(q, &[&[1, 0]]);
        let v = Matrix::from_i64(q, &[&[0, 1]]);
        let (s, i) = subspace_sum_and_intersection(&u, &v).unwrap();
        assert_eq!(s.rows(), 2);
        assert_eq!(i.rows(), 0);
    }

    #[test]
    fn intersection_over_f2() {
        // v-span = {0, (1,1,1), (0,0,1), (1,1,0)} contains (1,1,0).
        let f2 = Field::prime(2).unwrap();
        let u = Matrix::from_i64(f2, &[&[1, 1, 0]]);
        let v = Matrix::from_i64(f2, &[&[1, 1, 1], &[0, 0, 1]]);
        let (_, i) = subspace_sum_and_intersection(&u, &v).unwrap();
        assert_eq!(Subspace::from_matrix(&i), Subspace::from_matrix(&u));
    }

    #[test]
    fn width_mismatch() {
        let q = Field::Rationals;
        let u = Matrix::from_i64(q, &[&[1, 0]]);
        let v = Matrix::from_i64(q, &[&[0, 1, 0]]);
        assert!(matches!(
            subspace_sum_and_intersection(&u, &v),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn coordinates_and_quotient() {
        let q = Field::Rationals;
        let s = Subspace::from_rows(
            q,
            3,
            vec![vec![q.from_i64(1), q.from_i64(1), q.from_i64(0)]],
        );
        let v = vec![q.from_i64(2), q.from_i64(2), q.from_i64(0)];
        assert_eq!(s.coordinates(&v).unwrap(), vec![q.from_i64(2)]);
        let w = vec![q.from_i64(1), q.from_i64(0), q.from_i64(5)];
        assert_eq!(
            s.quotient_coordinates(&w),
            vec![q.from_i64(-1), q.from_i64(5)]
        );
    }
}
