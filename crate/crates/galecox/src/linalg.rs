//! Dense exact linear algebra over the rationals.
//!
//! The canonical-form conventions here are load-bearing for the rest of the
//! crate: every subspace handed around (row spaces, kernels, Gale transforms)
//! is represented by the reduced row echelon form of some basis, so two
//! subspaces are equal exactly when their basis matrices are `==`.

use crate::rational::{rat, Rational};
use num_traits::{One, Zero};

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| crate::rational::format_rational(self.at(i, j)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds from row vectors. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    /// Builds from column vectors. Panics on ragged input.
    pub fn from_columns(cols: Vec<Vec<Rational>>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        let mut m = Matrix::zeros(r, c);
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, x) in col.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    /// Convenience constructor from machine integers, for tests and tables.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Rational> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn column_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + a * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.at(i, j) * &v[j])
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect()
    }

    /// Reduced row echelon form together with the pivot column indices.
    ///
    /// The RREF is the unique canonical representative of the row space, so
    /// equal row spaces yield `==` results.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            // first nonzero entry at or below pivot_row
            let found = (pivot_row..m.rows).find(|&i| !m.at(i, col).is_zero());
            let Some(r) = found else { continue };
            if r != pivot_row {
                for j in 0..m.cols {
                    let a = m.at(pivot_row, j).clone();
                    let b = m.at(r, j).clone();
                    m.set(pivot_row, j, b);
                    m.set(r, j, a);
                }
            }
            let inv = {
                let p = m.at(pivot_row, col).clone();
                p.recip()
            };
            for j in col..m.cols {
                let v = m.at(pivot_row, j) * &inv;
                m.set(pivot_row, j, v);
            }
            for i in 0..m.rows {
                if i == pivot_row || m.at(i, col).is_zero() {
                    continue;
                }
                let f = m.at(i, col).clone();
                for j in col..m.cols {
                    let v = m.at(i, j) - &f * m.at(pivot_row, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of the right kernel `{x : self * x = 0}`.
    ///
    /// Rows of the result form a basis in RREF; a trivial kernel yields a
    /// `0 x cols` matrix.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis_rows = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -r.at(prow, f).clone();
            }
            basis_rows.push(v);
        }
        if basis_rows.is_empty() {
            return Matrix::zeros(0, self.cols);
        }
        // canonicalize the basis itself
        let (canon, _) = Matrix::from_rows(basis_rows).rref();
        canon
    }

    /// Solves `self * x = rhs` for square nonsingular `self`.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(self.rows, self.cols, "solve requires a square matrix");
        assert_eq!(self.rows, rhs.len(), "dimension mismatch in solve");
        let n = self.rows;
        let mut aug = Matrix::zeros(n, n + 1);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, n, rhs[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
            return None;
        }
        Some((0..n).map(|i| r.at(i, n).clone()).collect())
    }

    /// Solves `self * x = rhs` for any shape, returning one solution with
    /// free variables set to zero, or `None` if the system is inconsistent.
    pub fn solve_consistent(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(self.rows, rhs.len(), "dimension mismatch in solve_consistent");
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = r.at(row, self.cols).clone();
        }
        Some(x)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "dimension mismatch in vstack");
        let mut rows = self.row_vectors();
        rows.extend(other.row_vectors());
        let mut m = Matrix::from_rows(rows);
        m.cols = self.cols; // preserve width when both are empty
        m
    }
}

/// Exact dot product.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(a.len(), b.len(), "dimension mismatch in dot");
    a.iter()
        .zip(b)
        .map(|(x, y)| x * y)
        .fold(Rational::zero(), |acc, t| acc + t)
}
