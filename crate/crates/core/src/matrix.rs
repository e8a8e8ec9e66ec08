//! Dense matrices over [`Scalar`] with exact elimination.
//!
//! Pivots must be units (nonzero rationals, or jets with nonzero constant
//! term), which is exactly the invertibility condition in the truncated
//! polynomial ring. General (possibly inconsistent or underdetermined)
//! systems are supported over plain rationals, where every nonzero entry
//! is a unit.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{CoreError, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut m = Matrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Column vector from a slice.
    pub fn col_vec(v: &[Scalar]) -> Matrix {
        Matrix {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_skew(&self) -> bool {
        assert_eq!(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !(self.get(i, j) + self.get(j, i)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// Matrix power by repeated multiplication.
    pub fn pow(&self, k: usize) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Gauss-Jordan inverse; requires a unit pivot in every column.
    pub fn try_inverse(&self) -> Result<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| a.get(r, col).is_unit())
                .ok_or_else(|| CoreError::Linear(format!("no unit pivot in column {col}")))?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a.get(col, col).inv()?;
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r != col && !a.get(r, col).is_zero() {
                    let f = a.get(r, col).clone();
                    a.sub_scaled_row(r, col, &f);
                    inv.sub_scaled_row(r, col, &f);
                }
            }
        }
        Ok(inv)
    }

    /// Solve `self * X = rhs` for square `self` with unit pivots.
    pub fn solve(&self, rhs: &Matrix) -> Result<Matrix> {
        Ok(&self.try_inverse()? * rhs)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(r, j) * c;
            self.set(r, j, v);
        }
    }

    fn sub_scaled_row(&mut self, r: usize, src: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(r, j) - &(self.get(src, j) * c);
            self.set(r, j, v);
        }
    }

    /// Rank over the rationals (all entries must be units or zero).
    pub fn rank(&self) -> usize {
        let (echelon, pivots) = self.row_echelon();
        let _ = echelon;
        pivots.len()
    }

    fn row_echelon(&self) -> (Matrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row >= a.rows {
                break;
            }
            let Some(p) = (row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            assert!(
                a.get(p, col).is_unit(),
                "rank/echelon requires a field: nonzero non-unit entry"
            );
            a.swap_rows(p, row);
            let inv = a.get(row, col).inv().unwrap();
            a.scale_row(row, &inv);
            for r in 0..a.rows {
                if r != row && !a.get(r, col).is_zero() {
                    let f = a.get(r, col).clone();
                    a.sub_scaled_row(r, row, &f);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    /// Solve the (possibly non-square) system `self * x = rhs` over the
    /// rationals, returning one solution with free variables set to zero.
    pub fn solve_general(&self, rhs: &[Scalar]) -> Result<Vec<Scalar>> {
        assert_eq!(self.rows, rhs.len());
        let mut aug = Matrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let (ech, pivots) = aug.row_echelon();
        if pivots.contains(&self.cols) {
            return Err(CoreError::Linear("inconsistent linear system".into()));
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = ech.get(row, self.cols).clone();
        }
        Ok(x)
    }

    /// Basis for the nullspace of `self` over the rationals.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (ech, pivots) = self.row_echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![Scalar::zero(); self.cols];
            v[f] = Scalar::one();
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = -ech.get(row, f).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Whether the column spans of two matrices coincide (over the rationals).
    pub fn same_column_span(&self, other: &Matrix) -> bool {
        assert_eq!(self.rows, other.rows);
        let mut joint = Matrix::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                joint.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                joint.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        let r = self.rank();
        r == other.rank() && r == joint.rank()
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = Matrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2(a: i64, b: i64, c: i64, d: i64) -> Matrix {
        Matrix::from_rows(vec![
            vec![Scalar::from_int(a), Scalar::from_int(b)],
            vec![Scalar::from_int(c), Scalar::from_int(d)],
        ])
    }

    #[test]
    fn inverse_over_rationals() {
        let a = m2(1, 2, 3, 5);
        let inv = a.try_inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(2));
        assert!(m2(1, 2, 2, 4).try_inverse().is_err());
    }

    #[test]
    fn inverse_over_jets_needs_unit_constant_term() {
        let t = Scalar::t(4);
        // I - t*N with N nilpotent: inverse is the geometric series
        let a = Matrix::from_rows(vec![
            vec![Scalar::one(), -&t],
            vec![Scalar::zero(), Scalar::one()],
        ]);
        let inv = a.try_inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(2));
        // t on the diagonal: not invertible in the truncated ring
        let b = Matrix::from_rows(vec![
            vec![t.clone(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::one()],
        ]);
        assert!(b.try_inverse().is_err());
    }

    #[test]
    fn general_solve_and_nullspace() {
        // x + y = 3 with a redundant duplicate row
        let a = Matrix::from_rows(vec![
            vec![Scalar::one(), Scalar::one()],
            vec![Scalar::from_int(2), Scalar::from_int(2)],
        ]);
        let x = a
            .solve_general(&[Scalar::from_int(3), Scalar::from_int(6)])
            .unwrap();
        assert_eq!(x, vec![Scalar::from_int(3), Scalar::zero()]);
        assert!(a
            .solve_general(&[Scalar::from_int(3), Scalar::from_int(5)])
            .is_err());
        assert_eq!(a.nullspace().len(), 1);
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn span_comparison() {
        let a = Matrix::from_rows(vec![
            vec![Scalar::one(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::one()],
            vec![Scalar::zero(), Scalar::zero()],
        ]);
        let b = Matrix::from_rows(vec![
            vec![Scalar::one(), Scalar::one()],
            vec![Scalar::one(), -Scalar::one()],
            vec![Scalar::zero(), Scalar::zero()],
        ]);
        assert!(a.same_column_span(&b));
    }
}
