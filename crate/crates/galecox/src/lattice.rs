//! Integer-matrix normal forms and finitely generated abelian groups.
//!
//! The workhorse is [`smith_normal_form`]: it turns "do these elements
//! generate the whole group?" into "is the cokernel of this integer matrix
//! trivial?", which is decided by reading off invariant factors. A
//! column-style Hermite form is also provided for extracting canonical
//! bases of column lattices.

use crate::rational::{Int, Rational};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("element has free part of length {got}, group has free rank {expected}")]
    FreeRankMismatch { expected: usize, got: usize },
    #[error("element has {got} torsion residues, group has {expected} torsion factors")]
    TorsionLengthMismatch { expected: usize, got: usize },
    #[error("torsion coefficients must satisfy q >= 2 and q_i | q_(i+1): {0:?}")]
    InvalidTorsionChain(Vec<Int>),
    #[error("torsion modulus must be positive, got {0}")]
    NonpositiveModulus(Int),
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn from_columns(cols: Vec<Vec<Int>>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        let mut m = IntMatrix::zeros(r, c);
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, x) in col.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Int::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
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

    /// Exact determinant via rational elimination.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "det requires a square matrix");
        let n = self.rows;
        let mut m: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Rational::from_integer(self.at(i, j).clone()))
                    .collect()
            })
            .collect();
        let mut det = Rational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
                return Int::zero();
            };
            if p != k {
                m.swap(p, k);
                det = -det;
            }
            let piv = m[k][k].clone();
            det *= &piv;
            for i in k + 1..n {
                if m[i][k].is_zero() {
                    continue;
                }
                let f = &m[i][k] / &piv;
                for j in k..n {
                    let v = &m[i][j] - &f * &m[k][j];
                    m[i][j] = v;
                }
            }
        }
        debug_assert!(det.denom().is_one());
        det.numer().clone()
    }

    pub fn to_rational(&self) -> crate::linalg::Matrix {
        crate::linalg::Matrix::from_rows(
            (0..self.rows)
                .map(|i| {
                    (0..self.cols)
                        .map(|j| Rational::from_integer(self.at(i, j).clone()))
                        .collect()
                })
                .collect(),
        )
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let x = self.at(a, j).clone();
            let y = self.at(b, j).clone();
            self.set(a, j, y);
            self.set(b, j, x);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let x = self.at(i, a).clone();
            let y = self.at(i, b).clone();
            self.set(i, a, y);
            self.set(i, b, x);
        }
    }

    /// row a -= q * row b
    fn row_sub(&mut self, a: usize, q: &Int, b: usize) {
        for j in 0..self.cols {
            let v = self.at(a, j) - q * self.at(b, j);
            self.set(a, j, v);
        }
    }

    /// col a -= q * col b
    fn col_sub(&mut self, a: usize, q: &Int, b: usize) {
        for i in 0..self.rows {
            let v = self.at(i, a) - q * self.at(i, b);
            self.set(i, a, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.at(i, j).clone();
            self.set(i, j, v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.at(i, j).clone();
            self.set(i, j, v);
        }
    }
}

/// `u * a * v = d` with `u`, `v` unimodular, `d` diagonal with a
/// nonnegative divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries that are nonzero, in chain order.
    pub fn invariant_factors(&self) -> Vec<Int> {
        let n = self.d.rows().min(self.d.cols());
        (0..n)
            .map(|i| self.d.at(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Computes the Smith normal form with both transforms.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let rows = a.rows();
    let cols = a.cols();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let limit = rows.min(cols);
    let mut k = 0;
    while k < limit {
        // smallest nonzero entry of the trailing submatrix becomes the pivot
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if !d.at(i, j).is_zero()
                    && pivot
                        .map(|(pi, pj)| d.at(i, j).abs() < d.at(pi, pj).abs())
                        .unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(k, pi);
        u.swap_rows(k, pi);
        d.swap_cols(k, pj);
        v.swap_cols(k, pj);

        loop {
            let mut clean = true;
            for i in k + 1..rows {
                if d.at(i, k).is_zero() {
                    continue;
                }
                let q = d.at(i, k).div_floor(d.at(k, k));
                d.row_sub(i, &q, k);
                u.row_sub(i, &q, k);
                if !d.at(i, k).is_zero() {
                    // remainder is smaller than the pivot; promote it
                    d.swap_rows(k, i);
                    u.swap_rows(k, i);
                    clean = false;
                }
            }
            for j in k + 1..cols {
                if d.at(k, j).is_zero() {
                    continue;
                }
                let q = d.at(k, j).div_floor(d.at(k, k));
                d.col_sub(j, &q, k);
                v.col_sub(j, &q, k);
                if !d.at(k, j).is_zero() {
                    d.swap_cols(k, j);
                    v.swap_cols(k, j);
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if d.at(k, k).is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
        k += 1;
    }
    let rank = k;

    // enforce d_i | d_(i+1) by gcd/lcm surgery on 2x2 diagonal blocks
    for i in 0..rank {
        loop {
            let Some(j) = (i + 1..rank)
                .find(|&j| !(d.at(j, j) % d.at(i, i)).is_zero())
            else {
                break;
            };
            let a_ = d.at(i, i).clone();
            let b_ = d.at(j, j).clone();
            // col_i += col_j, then clear the 2x2 block back to diagonal
            let minus_one = -Int::one();
            d.col_sub(i, &minus_one, j);
            v.col_sub(i, &minus_one, j);
            let e = a_.extended_gcd(&b_);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let bq = &b_ / &g;
            let aq = &a_ / &g;
            // rows i,j <- [[s, t], [-b/g, a/g]] * rows i,j  (det = 1)
            apply_row_pair(&mut d, i, j, &s, &t, &(-bq.clone()), &aq);
            apply_row_pair(&mut u, i, j, &s, &t, &(-bq), &aq);
            // remaining entry at (i, j) is t*b; clear it
            let q = d.at(i, j).div_floor(d.at(i, i));
            d.col_sub(j, &q, i);
            v.col_sub(j, &q, i);
            debug_assert!(d.at(i, j).is_zero());
            if d.at(j, j).is_negative() {
                d.negate_row(j);
                u.negate_row(j);
            }
        }
    }

    SmithDecomposition { d, u, v }
}

/// rows (i, j) <- (a*row_i + b*row_j, c*row_i + e*row_j)
fn apply_row_pair(m: &mut IntMatrix, i: usize, j: usize, a: &Int, b: &Int, c: &Int, e: &Int) {
    for col in 0..m.cols() {
        let x = m.at(i, col).clone();
        let y = m.at(j, col).clone();
        m.set(i, col, a * &x + b * &y);
        m.set(j, col, c * &x + e * &y);
    }
}

/// Column-style Hermite normal form: returns `(h, u)` with `u` unimodular
/// and `h = a * u`. Pivots are positive, strictly descend the rows left to
/// right, entries left of a pivot in its row are reduced into `[0, pivot)`,
/// and zero columns come last. The column lattice is preserved.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = a.rows();
    let cols = a.cols();
    let mut h = a.clone();
    let mut u = IntMatrix::identity(cols);

    let mut pivot_col = 0;
    for row in 0..rows {
        if pivot_col == cols {
            break;
        }
        if (pivot_col..cols).all(|j| h.at(row, j).is_zero()) {
            continue;
        }
        // gcd the row entries into pivot_col via column operations
        loop {
            let mut best: Option<usize> = None;
            for j in pivot_col..cols {
                if !h.at(row, j).is_zero()
                    && best
                        .map(|b| h.at(row, j).abs() < h.at(row, b).abs())
                        .unwrap_or(true)
                {
                    best = Some(j);
                }
            }
            let b = best.expect("nonzero entry exists");
            h.swap_cols(pivot_col, b);
            u.swap_cols(pivot_col, b);
            let mut clean = true;
            for j in pivot_col + 1..cols {
                if h.at(row, j).is_zero() {
                    continue;
                }
                let q = h.at(row, j).div_floor(h.at(row, pivot_col));
                h.col_sub(j, &q, pivot_col);
                u.col_sub(j, &q, pivot_col);
                if !h.at(row, j).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.at(row, pivot_col).is_negative() {
            h.negate_col(pivot_col);
            u.negate_col(pivot_col);
        }
        // reduce earlier pivot columns against this pivot row
        for j in 0..pivot_col {
            let q = h.at(row, j).div_floor(h.at(row, pivot_col));
            if !q.is_zero() {
                h.col_sub(j, &q, pivot_col);
                u.col_sub(j, &q, pivot_col);
            }
        }
        pivot_col += 1;
    }
    (h, u)
}

/// `Z^d (+) Z/q_1 (+) ... (+) Z/q_t` with `2 <= q_1 | q_2 | ... | q_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgAbelianGroup {
    free_rank: usize,
    torsion: Vec<Int>,
}

/// An element of an [`FgAbelianGroup`], torsion residues kept reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    free: Vec<Int>,
    torsion: Vec<Int>,
}

impl GroupElement {
    pub fn free_part(&self) -> &[Int] {
        &self.free
    }

    pub fn torsion_part(&self) -> &[Int] {
        &self.torsion
    }
}

impl FgAbelianGroup {
    /// Requires torsion coefficients already in invariant-factor form.
    pub fn new(free_rank: usize, torsion: Vec<Int>) -> Result<Self, LatticeError> {
        let two = Int::from(2);
        for (i, q) in torsion.iter().enumerate() {
            if *q < two || (i > 0 && !(q % &torsion[i - 1]).is_zero()) {
                return Err(LatticeError::InvalidTorsionChain(torsion.clone()));
            }
        }
        Ok(FgAbelianGroup { free_rank, torsion })
    }

    /// `Z^d`.
    pub fn free(d: usize) -> Self {
        FgAbelianGroup {
            free_rank: d,
            torsion: Vec::new(),
        }
    }

    pub fn trivial() -> Self {
        FgAbelianGroup::free(0)
    }

    /// Canonicalizes an arbitrary presentation `Z^d (+) Z/m_1 (+) ...`
    /// (moduli positive, in any order, not necessarily a chain) into
    /// invariant-factor form. The returned map transports torsion residues
    /// from the input presentation to the canonical one.
    pub fn canonicalized(
        free_rank: usize,
        moduli: &[Int],
    ) -> Result<(Self, TorsionMap), LatticeError> {
        for m in moduli {
            if !m.is_positive() {
                return Err(LatticeError::NonpositiveModulus(m.clone()));
            }
        }
        let t = moduli.len();
        let mut rel = IntMatrix::zeros(t, t);
        for (i, m) in moduli.iter().enumerate() {
            rel.set(i, i, m.clone());
        }
        let snf = smith_normal_form(&rel);
        let factors: Vec<Int> = (0..t).map(|i| snf.d.at(i, i).clone()).collect();
        let kept: Vec<usize> = (0..t).filter(|&i| !factors[i].is_one()).collect();
        let torsion: Vec<Int> = kept.iter().map(|&i| factors[i].clone()).collect();
        let group = FgAbelianGroup::new(free_rank, torsion)?;
        Ok((
            group,
            TorsionMap {
                u: snf.u,
                factors,
                kept,
            },
        ))
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[Int] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Builds an element, reducing torsion residues into `[0, q_i)`.
    pub fn element(&self, free: Vec<Int>, torsion: Vec<Int>) -> Result<GroupElement, LatticeError> {
        if free.len() != self.free_rank {
            return Err(LatticeError::FreeRankMismatch {
                expected: self.free_rank,
                got: free.len(),
            });
        }
        if torsion.len() != self.torsion.len() {
            return Err(LatticeError::TorsionLengthMismatch {
                expected: self.torsion.len(),
                got: torsion.len(),
            });
        }
        let torsion = torsion
            .into_iter()
            .zip(&self.torsion)
            .map(|(r, q)| r.mod_floor(q))
            .collect();
        Ok(GroupElement { free, torsion })
    }

    /// Convenience for torsion-free groups and tests.
    pub fn element_i64(&self, free: &[i64], torsion: &[i64]) -> Result<GroupElement, LatticeError> {
        self.element(
            free.iter().map(|&x| Int::from(x)).collect(),
            torsion.iter().map(|&x| Int::from(x)).collect(),
        )
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            free: vec![Int::zero(); self.free_rank],
            torsion: vec![Int::zero(); self.torsion.len()],
        }
    }

    pub fn contains(&self, e: &GroupElement) -> bool {
        e.free.len() == self.free_rank
            && e.torsion.len() == self.torsion.len()
            && e.torsion
                .iter()
                .zip(&self.torsion)
                .all(|(r, q)| !r.is_negative() && r < q)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, LatticeError> {
        self.check(a)?;
        self.check(b)?;
        self.element(
            a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            a.torsion.iter().zip(&b.torsion).map(|(x, y)| x + y).collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement, LatticeError> {
        self.check(a)?;
        self.element(
            a.free.iter().map(|x| -x.clone()).collect(),
            a.torsion.iter().map(|x| -x.clone()).collect(),
        )
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, LatticeError> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    pub fn sum<'a>(
        &self,
        elems: impl IntoIterator<Item = &'a GroupElement>,
    ) -> Result<GroupElement, LatticeError> {
        let mut acc = self.zero();
        for e in elems {
            acc = self.add(&acc, e)?;
        }
        Ok(acc)
    }

    fn check(&self, e: &GroupElement) -> Result<(), LatticeError> {
        if e.free.len() != self.free_rank {
            return Err(LatticeError::FreeRankMismatch {
                expected: self.free_rank,
                got: e.free.len(),
            });
        }
        if e.torsion.len() != self.torsion.len() {
            return Err(LatticeError::TorsionLengthMismatch {
                expected: self.torsion.len(),
                got: e.torsion.len(),
            });
        }
        Ok(())
    }
}

/// Transports torsion residues from an arbitrary presentation into the
/// canonicalized group produced by [`FgAbelianGroup::canonicalized`].
#[derive(Clone, Debug)]
pub struct TorsionMap {
    u: IntMatrix,
    factors: Vec<Int>,
    kept: Vec<usize>,
}

impl TorsionMap {
    pub fn map(&self, residues: &[Int]) -> Vec<Int> {
        assert_eq!(residues.len(), self.factors.len(), "residue arity mismatch");
        let t = residues.len();
        let image: Vec<Int> = (0..t)
            .map(|i| {
                (0..t)
                    .map(|j| self.u.at(i, j) * &residues[j])
                    .fold(Int::zero(), |a, b| a + b)
            })
            .collect();
        self.kept
            .iter()
            .map(|&i| image[i].mod_floor(&self.factors[i]))
            .collect()
    }
}

/// Whether the listed elements generate the whole group.
///
/// Elements are lifted to `Z^(d+t)` columns, the torsion relations
/// `q_i * e_(d+i)` are adjoined, and the cokernel is read off the Smith
/// form: the subgroup is everything exactly when all `d + t` invariant
/// factors exist and equal 1.
pub fn generates(group: &FgAbelianGroup, elems: &[GroupElement]) -> Result<bool, LatticeError> {
    let d = group.free_rank;
    let t = group.torsion.len();
    let mut cols: Vec<Vec<Int>> = Vec::with_capacity(elems.len() + t);
    for e in elems {
        group.check(e)?;
        let mut col = e.free.clone();
        col.extend(e.torsion.iter().cloned());
        cols.push(col);
    }
    for (i, q) in group.torsion.iter().enumerate() {
        let mut col = vec![Int::zero(); d + t];
        col[d + i] = q.clone();
        cols.push(col);
    }
    if d + t == 0 {
        return Ok(true);
    }
    let mut m = IntMatrix::from_columns(cols);
    if m.cols() == 0 {
        m = IntMatrix::zeros(d + t, 0);
    }
    let snf = smith_normal_form(&m);
    let factors = snf.invariant_factors();
    Ok(factors.len() == d + t && factors.iter().all(|f| f.is_one()))
}

/// Image of an element in the free quotient (torsion discarded), as a
/// rational vector.
pub fn free_image(group: &FgAbelianGroup, e: &GroupElement) -> Result<Vec<Rational>, LatticeError> {
    group.check(e)?;
    Ok(e.free
        .iter()
        .map(|x| Rational::from_integer(x.clone()))
        .collect())
}
