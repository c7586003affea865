//! Point and vector configurations and the Gale transform.
//!
//! A configuration is a *collection*: an ordered multiset, where equal
//! members count separately and deletions always remove a single copy by
//! index, never a value.
//!
//! The transform sends `n` points affinely spanning `Q^d` to `n` vectors
//! with zero sum in `Q^(n-d-1)`. It is canonicalized by taking the RREF
//! basis of the kernel of the lifted matrix, so equal inputs (and affinely
//! equivalent inputs) produce identical output, even though the transform
//! is classically defined only up to a linear change of coordinates.

use crate::linalg::{dot, Matrix};
use crate::lp::{lp_feasible, Constraints};
use crate::rational::Rational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaleError {
    #[error("point {index} has {got} coordinates, configuration is {expected}-dimensional")]
    ShapeMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("points lie in an affine subspace of dimension < {dim}")]
    DegenerateConfiguration { dim: usize },
    #[error("{points} points in dimension {dim}: the Gale machinery needs n >= d+2")]
    TooFewPoints { points: usize, dim: usize },
    #[error("index {index} out of range for a configuration of {len} members")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("vector configuration does not have zero sum")]
    NotZeroSum,
    #[error("vector configuration does not span its ambient space")]
    NotSpanning,
}

/// Ordered multiset of points affinely spanning `Q^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfig {
    dim: usize,
    points: Vec<Vec<Rational>>,
}

impl PointConfig {
    /// Validates shape and affine spanning (the points must not lie in a
    /// proper affine subspace).
    pub fn new(dim: usize, points: Vec<Vec<Rational>>) -> Result<Self, GaleError> {
        for (index, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(GaleError::ShapeMismatch {
                    index,
                    expected: dim,
                    got: p.len(),
                });
            }
        }
        let config = PointConfig { dim, points };
        if config.lifted_matrix().rank() != dim + 1 {
            return Err(GaleError::DegenerateConfiguration { dim });
        }
        Ok(config)
    }

    pub fn from_i64(dim: usize, points: &[&[i64]]) -> Result<Self, GaleError> {
        PointConfig::new(
            dim,
            points
                .iter()
                .map(|p| p.iter().map(|&x| crate::rational::rat(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    /// The `(d+1) x n` matrix with point coordinates as columns and an
    /// appended all-ones row.
    pub fn lifted_matrix(&self) -> Matrix {
        let n = self.points.len();
        let mut m = Matrix::zeros(self.dim + 1, n);
        for (j, p) in self.points.iter().enumerate() {
            for (i, x) in p.iter().enumerate() {
                m.set(i, j, x.clone());
            }
            m.set(self.dim, j, Rational::one());
        }
        m
    }

    fn require_gale_size(&self) -> Result<(), GaleError> {
        if self.points.len() < self.dim + 2 {
            return Err(GaleError::TooFewPoints {
                points: self.points.len(),
                dim: self.dim,
            });
        }
        Ok(())
    }
}

/// Ordered multiset of vectors; zero vectors and repetitions are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorConfig {
    dim: usize,
    vectors: Vec<Vec<Rational>>,
}

impl VectorConfig {
    pub fn new(dim: usize, vectors: Vec<Vec<Rational>>) -> Result<Self, GaleError> {
        for (index, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(GaleError::ShapeMismatch {
                    index,
                    expected: dim,
                    got: v.len(),
                });
            }
        }
        Ok(VectorConfig { dim, vectors })
    }

    pub fn from_i64(dim: usize, vectors: &[&[i64]]) -> Result<Self, GaleError> {
        VectorConfig::new(
            dim,
            vectors
                .iter()
                .map(|v| v.iter().map(|&x| crate::rational::rat(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    /// The `dim x n` matrix with the vectors as columns.
    pub fn as_columns_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.vectors.len());
        for (j, v) in self.vectors.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// The `n x dim` matrix with the vectors as rows.
    pub fn as_rows_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.vectors.len(), self.dim);
        for (i, v) in self.vectors.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn has_zero_sum(&self) -> bool {
        (0..self.dim).all(|i| {
            self.vectors
                .iter()
                .fold(Rational::zero(), |acc, v| acc + &v[i])
                .is_zero()
        })
    }
}

/// The Gale transform: columns of the canonical kernel basis of the lifted
/// matrix. Output: `n` vectors with zero sum in `Q^(n-d-1)`.
pub fn gale_transform(a: &PointConfig) -> Result<VectorConfig, GaleError> {
    a.require_gale_size()?;
    let b = a.lifted_matrix().kernel_basis();
    let out_dim = a.len() - a.dim() - 1;
    debug_assert_eq!(b.rows(), out_dim);
    Ok(VectorConfig {
        dim: out_dim,
        vectors: b.column_vectors(),
    })
}

fn row_space_basis(m: &Matrix) -> Matrix {
    let (r, pivots) = m.rref();
    Matrix::from_rows((0..pivots.len()).map(|i| r.row(i)).collect())
}

/// Canonical basis of the affine dependences
/// `{a : sum a_i p_i = 0 and sum a_i = 0}`, as rows.
pub fn aff_dep(a: &PointConfig) -> Result<Matrix, GaleError> {
    a.require_gale_size()?;
    Ok(a.lifted_matrix().kernel_basis())
}

/// Canonical basis of the affine evaluations
/// `{(f(p_1), ..., f(p_n)) : f affine}`, as rows. Always of dimension d+1.
pub fn aff_val(a: &PointConfig) -> Result<Matrix, GaleError> {
    a.require_gale_size()?;
    Ok(row_space_basis(&a.lifted_matrix()))
}

/// Canonical basis of `{a : sum a_i g_i = 0}`, as rows.
pub fn lin_dep(g: &VectorConfig) -> Matrix {
    g.as_columns_matrix().kernel_basis()
}

/// Canonical basis of `{(f(g_1), ..., f(g_n)) : f linear}`, as rows.
pub fn lin_val(g: &VectorConfig) -> Matrix {
    row_space_basis(&g.as_columns_matrix())
}

fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] != i + n - k {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Whether no `d+1` of the points lie in a common affine hyperplane.
pub fn is_general_position(a: &PointConfig) -> bool {
    let lifted = a.lifted_matrix();
    let d = a.dim();
    let n = a.len();
    if n < d + 1 {
        return true;
    }
    let mut subset: Vec<usize> = (0..=d).collect();
    loop {
        let sub = Matrix::from_columns(subset.iter().map(|&j| lifted.column(j)).collect());
        if sub.rank() < d + 1 {
            return false;
        }
        if !next_combination(&mut subset, n) {
            return true;
        }
    }
}

/// Whether the points indexed by `indices` lie in a common face of the
/// convex hull: decided dually, as `0` lying in the convex hull of the Gale
/// vectors with the complementary indices.
pub fn lie_in_common_face(a: &PointConfig, indices: &[usize]) -> Result<bool, GaleError> {
    let n = a.len();
    for &i in indices {
        if i >= n {
            return Err(GaleError::IndexOutOfRange { index: i, len: n });
        }
    }
    let g = gale_transform(a)?;
    let complement: Vec<usize> = (0..n).filter(|i| !indices.contains(i)).collect();
    let k = complement.len();
    let mut sys = Constraints::new(k);
    for row in 0..g.dim() {
        let coeffs: Vec<Rational> = complement
            .iter()
            .map(|&j| g.vectors()[j][row].clone())
            .collect();
        sys.require_eq(coeffs, Rational::zero());
    }
    sys.require_eq(vec![Rational::one(); k], Rational::one());
    for i in 0..k {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs[i] = Rational::one();
        sys.require_ge(coeffs, Rational::zero());
    }
    Ok(lp_feasible(&sys).is_feasible())
}

/// Reverses the transform: a point configuration whose Gale transform is
/// linearly equivalent to `g`. Requires zero sum and full span.
///
/// The linear dependences of `g` become the affine evaluations of the
/// points: the all-ones vector is completed to a basis of that space, and
/// the remaining basis rows are read as point coordinates.
pub fn dual_point_config(g: &VectorConfig) -> Result<PointConfig, GaleError> {
    if !g.has_zero_sum() {
        return Err(GaleError::NotZeroSum);
    }
    let n = g.len();
    let m = g.dim();
    if g.as_columns_matrix().rank() != m {
        return Err(GaleError::NotSpanning);
    }
    let dep = lin_dep(g); // (n - m) x n, contains the all-ones vector
    let ones = vec![Rational::one(); n];
    let coeffs = dep
        .transpose()
        .solve_consistent(&ones)
        .expect("zero sum puts the all-ones vector in the dependence space");
    let k = coeffs
        .iter()
        .position(|c| !c.is_zero())
        .expect("all-ones vector is nonzero");
    let rows: Vec<Vec<Rational>> = (0..dep.rows()).filter(|&r| r != k).map(|r| dep.row(r)).collect();
    let dual_dim = n - m - 1;
    debug_assert_eq!(rows.len(), dual_dim);
    let points: Vec<Vec<Rational>> = (0..n)
        .map(|j| rows.iter().map(|row| row[j].clone()).collect())
        .collect();
    PointConfig::new(dual_dim, points)
}

/// Exact membership of `0` in the convex hull of the given vectors.
pub fn zero_in_convex_hull(vectors: &[Vec<Rational>], dim: usize) -> bool {
    let k = vectors.len();
    let mut sys = Constraints::new(k);
    for row in 0..dim {
        let coeffs: Vec<Rational> = vectors.iter().map(|v| v[row].clone()).collect();
        sys.require_eq(coeffs, Rational::zero());
    }
    sys.require_eq(vec![Rational::one(); k], Rational::one());
    for i in 0..k {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs[i] = Rational::one();
        sys.require_ge(coeffs, Rational::zero());
    }
    lp_feasible(&sys).is_feasible()
}

/// Exact value list `(f(p_1), ..., f(p_n))` for an affine functional given
/// by linear part and constant. Test support for duality arguments.
pub fn affine_values(a: &PointConfig, linear: &[Rational], constant: &Rational) -> Vec<Rational> {
    a.points()
        .iter()
        .map(|p| dot(linear, p) + constant)
        .collect()
}
