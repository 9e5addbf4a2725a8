use std::fmt;
use std::ops::{Add, Mul, Sub};

use super::{fma, is_zero_vector, Field, Scalar, Vector};
use crate::error::{Error, Result};

/// Dense row-major matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from rows, checking that every entry lives in `field`
    /// and that the rows have equal length.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        Matrix::from_rows_with_cols(field, cols, rows)
    }

    /// As [`Matrix::from_rows`] but with an explicit column count, so that an
    /// empty row list still has a width.
    pub fn from_rows_with_cols(
        field: Field,
        cols: usize,
        rows: Vec<Vec<Scalar>>,
    ) -> Result<Matrix> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {} but expected {cols}",
                    row.len()
                )));
            }
            for x in row {
                if x.field() != field {
                    return Err(Error::FieldMismatch(format!(
                        "entry in row {i} lives in {} but matrix is over {field}",
                        x.field()
                    )));
                }
                data.push(x);
            }
        }
        Ok(Matrix {
            field,
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged integer matrix");
                r.iter().map(|&v| field.from_i64(v))
            })
            .collect();
        Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// A matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vector {
        self.row(i).to_vec()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_list(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row_vec(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!(
                "{} times {}",
                self.field, other.field
            )));
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k * other.cols + j];
                    fma(&mut out.data[i * other.cols + j], a, b);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        let mut out = vec![self.field.zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, x) in v.iter().enumerate() {
                fma(o, &self.data[i * self.cols + j], x);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| c * x).collect(),
        }
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!(self.field, other.field, "matrix field mismatch");
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix shape mismatch"
        );
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch("vstack".into()));
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of widths {} and {}",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch("hstack".into()));
        }
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of heights {} and {}",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend(self.row(i).iter().cloned());
            data.extend(other.row(i).iter().cloned());
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols,
            data,
        })
    }

    /// Copies `block` into `self` with its top-left corner at `(r, c)`.
    pub fn set_block(&mut self, r: usize, c: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r + i) * self.cols + c + j] = block.get(i, j).clone();
            }
        }
    }

    pub fn block(&self, r: usize, c: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.data[i * cols + j] = self.get(r + i, c + j).clone();
            }
        }
        out
    }

    /// Reduced row echelon form with deterministic pivoting (leftmost
    /// nonzero column, first nonzero row). Returns the full-height reduced
    /// matrix and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.data[i * cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = self.data[r * cols + c].inv().expect("pivot is nonzero");
            for j in c..cols {
                let v = &self.data[r * cols + j] * &inv;
                self.data[r * cols + j] = v;
            }
            let pivot_row: Vec<Scalar> = self.data[r * cols..(r + 1) * cols].to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c].clone();
                if factor.is_zero() {
                    continue;
                }
                let neg = -&factor;
                for j in c..cols {
                    fma(&mut self.data[i * cols + j], &neg, &pivot_row[j]);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rows of the result form the reduced basis of `{v : self * v = 0}`.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(self.field, free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            basis.data[k * self.cols + f] = self.field.one();
            for (i, &p) in pivots.iter().enumerate() {
                basis.data[k * self.cols + p] = -r.get(i, f);
            }
        }
        let (mut reduced, piv) = basis.rref();
        reduced.truncate_rows(piv.len());
        reduced
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vector>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {} for a {}-row system",
                b.len(),
                self.rows
            )));
        }
        if let Some(x) = b.iter().find(|x| x.field() != self.field) {
            return Err(Error::FieldMismatch(format!(
                "{} vs {}",
                x.field(),
                self.field
            )));
        }
        let column = Matrix::from_columns(self.field, self.rows, &[b.to_vec()]);
        let aug = self.hstack(&column)?;
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub(crate) fn truncate_rows(&mut self, rows: usize) {
        self.data.truncate(rows * self.cols);
        self.rows = rows;
    }

    /// Checks that every entry lives in the declared field.
    pub fn check_field(&self) -> Result<()> {
        match self.data.iter().find(|x| x.field() != self.field) {
            Some(x) => Err(Error::FieldMismatch(format!(
                "entry over {} in a matrix over {}",
                x.field(),
                self.field
            ))),
            None => Ok(()),
        }
    }

    /// Builds a matrix without checking entry fields. Used to construct
    /// deliberately malformed inputs.
    pub fn from_raw(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Matrix {
        assert_eq!(data.len(), rows * cols);
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }
}

/// Reduced row echelon form. Fails with `FieldMismatch` on mixed entries.
pub fn rref(m: &Matrix) -> Result<(Matrix, Vec<usize>)> {
    m.check_field()?;
    Ok(m.rref())
}

/// Reduced basis of the null space. Fails with `FieldMismatch` on mixed entries.
pub fn kernel_basis(m: &Matrix) -> Result<Matrix> {
    m.check_field()?;
    Ok(m.kernel_basis())
}

/// Some solution of `m x = b`, `None` when inconsistent.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Option<Vector>> {
    m.check_field()?;
    m.solve(b)
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &'a Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix product")
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, rhs: &'a Matrix) -> Matrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &'a Matrix) -> Matrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn rref_identity() {
        let m = Matrix::identity(q(), 2);
        let (r, p) = m.rref();
        assert_eq!(r, m);
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_scales_single_row() {
        let m = Matrix::from_i64(q(), &[&[2, 4]]);
        let (r, p) = m.rref();
        assert_eq!(r, Matrix::from_i64(q(), &[&[1, 2]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_over_f5() {
        let f5 = Field::prime(5).unwrap();
        let m = Matrix::from_i64(f5, &[&[2, 4]]);
        let (r, p) = m.rref();
        assert_eq!(r, Matrix::from_i64(f5, &[&[1, 2]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_rejects_mixed_fields() {
        let f3 = Field::prime(3).unwrap();
        let m = Matrix::from_raw(q(), 1, 2, vec![q().one(), f3.one()]);
        assert!(matches!(rref(&m), Err(Error::FieldMismatch(_))));
        assert!(matches!(
            Matrix::from_rows(q(), vec![vec![q().one(), f3.one()]]),
            Err(Error::FieldMismatch(_))
        ));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(q(), 3).kernel_basis().rows(), 0);
        assert_eq!(Matrix::zeros(q(), 2, 3).kernel_basis().rows(), 3);
        let f3 = Field::prime(3).unwrap();
        let k = Matrix::from_i64(f3, &[&[1, 2]]).kernel_basis();
        assert_eq!(k.rows(), 1);
        assert_eq!(k.row_vec(0), vec![f3.from_i64(1), f3.from_i64(1)]);
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(q(), 3);
        let b = vec![q().from_i64(1), q().from_i64(-2), q().parse("1/3").unwrap()];
        assert_eq!(id.solve(&b).unwrap().unwrap(), b);

        let m = Matrix::from_i64(q(), &[&[1, 1]]);
        let x = m.solve(&[q().from_i64(2)]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x), vec![q().from_i64(2)]);

        let z = Matrix::from_i64(q(), &[&[0]]);
        assert_eq!(z.solve(&[q().one()]).unwrap(), None);
        assert!(matches!(z.solve(&[]), Err(Error::DimensionMismatch(_))));
    }
}
