//! Positively 2-spanning certification.
//!
//! A configuration is positively 2-spanning when every open halfspace cut
//! out by a linear hyperplane contains at least two of its members, or
//! equivalently, when deleting any single member leaves vectors that do not
//! fit in one closed halfspace.
//!
//! The deletion form is what gets decided, via two exact subproblems per
//! deleted index: the remaining vectors must span the whole space, and they
//! must admit a strictly positive linear dependence. The second condition
//! is the Stiemke alternative to "all in a closed halfspace", so a failed
//! certificate search can always be converted into an explicit separating
//! functional, and every verdict ships with a certificate that re-checks by
//! exact substitution.

use crate::gale::{PointConfig, VectorConfig};
use crate::linalg::{dot, Matrix};
use crate::lp::{lp_feasible, Constraints, Feasibility};
use crate::rational::Rational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpanningError {
    #[error("index {index} out of range for a configuration of {len} vectors")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("scale factor at position {index} is not positive")]
    NonpositiveScaleFactor { index: usize },
    #[error("expected {expected} scale factors, got {got}")]
    FactorCountMismatch { expected: usize, got: usize },
    #[error("subspace basis rows are linearly dependent")]
    DependentBasis,
    #[error("subspace basis is {got}-dimensional, configuration is {expected}-dimensional")]
    BasisShapeMismatch { expected: usize, got: usize },
}

/// A separating functional `h` exhibiting that after deleting the member at
/// `deleted`, the rest lie in the closed halfspace `h >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfspaceWitness {
    pub deleted: usize,
    pub functional: Vec<Rational>,
}

/// A strictly positive dependence on the members left after one deletion:
/// coefficients are full-length, zero at `deleted` and `>= 1` elsewhere,
/// with `sum coefficients[i] * g_i = 0` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveDependence {
    pub deleted: usize,
    pub coefficients: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningVerdict {
    pub holds: bool,
    /// Present exactly when `holds` is false and at least one member exists.
    pub failure: Option<HalfspaceWitness>,
    /// Present exactly when `holds` is true: one certificate per deletable index.
    pub certificates: Option<Vec<PositiveDependence>>,
}

impl SpanningVerdict {
    fn failed(deleted: usize, functional: Vec<Rational>) -> Self {
        SpanningVerdict {
            holds: false,
            failure: Some(HalfspaceWitness { deleted, functional }),
            certificates: None,
        }
    }
}

/// Decides positive 2-spanning, with certificates either way.
///
/// Zero-dimensional configurations are vacuously 2-spanning (there are no
/// hyperplanes). Zero vectors are carried but lie on every hyperplane, so
/// they never help satisfy the definition.
pub fn is_positively_2_spanning(g: &VectorConfig) -> SpanningVerdict {
    let m = g.dim();
    let n = g.len();
    if m > 0 && n == 0 {
        return SpanningVerdict {
            holds: false,
            failure: None,
            certificates: None,
        };
    }

    // identical members give identical subproblems; solve one per value
    let mut reps: Vec<usize> = Vec::new();
    let mut rep_of: Vec<usize> = vec![0; n];
    for i in 0..n {
        match (0..i).find(|&j| g.vectors()[j] == g.vectors()[i]) {
            Some(j) => rep_of[i] = rep_of[j],
            None => {
                reps.push(i);
                rep_of[i] = i;
            }
        }
    }

    let mut rep_certificates: Vec<(usize, Vec<Rational>)> = Vec::new();
    for &j in &reps {
        let remaining: Vec<usize> = (0..n).filter(|&i| i != j).collect();
        let mut rows = Matrix::zeros(remaining.len(), m);
        for (r, &i) in remaining.iter().enumerate() {
            for (c, x) in g.vectors()[i].iter().enumerate() {
                rows.set(r, c, x.clone());
            }
        }
        if rows.rank() < m {
            // anything orthogonal to the span separates
            let h = rows.kernel_basis().row(0);
            return SpanningVerdict::failed(j, h);
        }
        // strictly positive dependence: sum l_i g_i = 0 with l_i >= 1
        let mut sys = Constraints::new(remaining.len());
        for row in 0..m {
            let coeffs: Vec<Rational> = remaining
                .iter()
                .map(|&i| g.vectors()[i][row].clone())
                .collect();
            sys.require_eq(coeffs, Rational::zero());
        }
        for v in 0..remaining.len() {
            let mut coeffs = vec![Rational::zero(); remaining.len()];
            coeffs[v] = Rational::one();
            sys.require_ge(coeffs, Rational::one());
        }
        match lp_feasible(&sys) {
            Feasibility::Feasible(lambda) => {
                let mut full = vec![Rational::zero(); n];
                for (r, &i) in remaining.iter().enumerate() {
                    full[i] = lambda[r].clone();
                }
                rep_certificates.push((j, full));
            }
            Feasibility::Infeasible => {
                let h = separating_functional(g, &remaining);
                return SpanningVerdict::failed(j, h);
            }
        }
    }

    // expand per-value certificates to every index: equal values swap roles
    let mut certificates = Vec::with_capacity(n);
    for i in 0..n {
        let rep = rep_of[i];
        let (_, rep_cert) = rep_certificates
            .iter()
            .find(|(j, _)| *j == rep)
            .expect("certificate computed for every representative");
        let mut coeffs = rep_cert.clone();
        if i != rep {
            coeffs[rep] = coeffs[i].clone();
            coeffs[i] = Rational::zero();
        }
        certificates.push(PositiveDependence { deleted: i, coefficients: coeffs });
    }
    SpanningVerdict {
        holds: true,
        failure: None,
        certificates: Some(certificates),
    }
}

/// Stiemke alternative: when no strictly positive dependence exists on a
/// spanning set, some functional is nonnegative on all of it and positive
/// somewhere. Found by a second feasibility problem.
fn separating_functional(g: &VectorConfig, remaining: &[usize]) -> Vec<Rational> {
    let m = g.dim();
    let mut sys = Constraints::new(m);
    let mut total = vec![Rational::zero(); m];
    for &i in remaining {
        let coeffs: Vec<Rational> = g.vectors()[i].to_vec();
        for (c, x) in coeffs.iter().enumerate() {
            total[c] = &total[c] + x;
        }
        sys.require_ge(coeffs, Rational::zero());
    }
    sys.require_ge(total, Rational::one());
    match lp_feasible(&sys) {
        Feasibility::Feasible(h) => h,
        Feasibility::Infeasible => unreachable!("Stiemke alternative must be feasible"),
    }
}

/// Nonnegative dependence with the `k`-th coefficient bounded away from
/// zero: `l >= 0`, `l_k >= 1`, `sum l_i g_i = 0`; `None` when impossible.
pub fn positive_dependence_with(
    g: &VectorConfig,
    k: usize,
) -> Result<Option<Vec<Rational>>, SpanningError> {
    let n = g.len();
    if k >= n {
        return Err(SpanningError::IndexOutOfRange { index: k, len: n });
    }
    let mut sys = Constraints::new(n);
    for row in 0..g.dim() {
        let coeffs: Vec<Rational> = g.vectors().iter().map(|v| v[row].clone()).collect();
        sys.require_eq(coeffs, Rational::zero());
    }
    for i in 0..n {
        let mut coeffs = vec![Rational::zero(); n];
        coeffs[i] = Rational::one();
        let bound = if i == k { Rational::one() } else { Rational::zero() };
        sys.require_ge(coeffs, bound);
    }
    match lp_feasible(&sys) {
        Feasibility::Feasible(lambda) => Ok(Some(lambda)),
        Feasibility::Infeasible => Ok(None),
    }
}

/// Member-wise positive rescaling.
pub fn scale(g: &VectorConfig, factors: &[Rational]) -> Result<VectorConfig, SpanningError> {
    if factors.len() != g.len() {
        return Err(SpanningError::FactorCountMismatch {
            expected: g.len(),
            got: factors.len(),
        });
    }
    if let Some(index) = factors.iter().position(|f| *f <= Rational::zero()) {
        return Err(SpanningError::NonpositiveScaleFactor { index });
    }
    let vectors = g
        .vectors()
        .iter()
        .zip(factors)
        .map(|(v, f)| v.iter().map(|x| x * f).collect())
        .collect();
    Ok(VectorConfig::new(g.dim(), vectors).expect("shape preserved"))
}

/// Images of the members in the quotient by the span of `basis` rows,
/// coordinatized on the non-pivot coordinates of the RREF of the basis.
pub fn project_away(g: &VectorConfig, basis: &Matrix) -> Result<VectorConfig, SpanningError> {
    if basis.rows() > 0 && basis.cols() != g.dim() {
        return Err(SpanningError::BasisShapeMismatch {
            expected: g.dim(),
            got: basis.cols(),
        });
    }
    let (r, pivots) = basis.rref();
    if pivots.len() != basis.rows() {
        return Err(SpanningError::DependentBasis);
    }
    let free: Vec<usize> = (0..g.dim()).filter(|c| !pivots.contains(c)).collect();
    let vectors: Vec<Vec<Rational>> = g
        .vectors()
        .iter()
        .map(|v| {
            let mut w = v.clone();
            for (prow, &pcol) in pivots.iter().enumerate() {
                let coeff = w[pcol].clone();
                if coeff.is_zero() {
                    continue;
                }
                for c in 0..g.dim() {
                    let val = &w[c] - &coeff * r.at(prow, c);
                    w[c] = val;
                }
            }
            free.iter().map(|&c| w[c].clone()).collect()
        })
        .collect();
    Ok(VectorConfig::new(free.len(), vectors).expect("shape by construction"))
}

/// Whether every point is a vertex of the convex hull and no two coincide:
/// one feasibility problem per point, asking if it lies in the hull of the
/// others.
pub fn vertices_of_hull_without_repetition(a: &PointConfig) -> bool {
    let n = a.len();
    let d = a.dim();
    for i in 0..n {
        let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        let mut sys = Constraints::new(others.len());
        for row in 0..d {
            let coeffs: Vec<Rational> = others
                .iter()
                .map(|&j| a.points()[j][row].clone())
                .collect();
            sys.require_eq(coeffs, a.points()[i][row].clone());
        }
        sys.require_eq(vec![Rational::one(); others.len()], Rational::one());
        for v in 0..others.len() {
            let mut coeffs = vec![Rational::zero(); others.len()];
            coeffs[v] = Rational::one();
            sys.require_ge(coeffs, Rational::zero());
        }
        if lp_feasible(&sys).is_feasible() {
            return false;
        }
    }
    true
}

/// Reads a 2-spanning question through the dual polytope: a zero-sum
/// spanning configuration is positively 2-spanning exactly when its dual
/// point configuration is the vertex set of a convex polytope without
/// repetitions.
pub fn dual_vertex_test(g: &VectorConfig) -> Result<bool, crate::gale::GaleError> {
    let points = crate::gale::dual_point_config(g)?;
    Ok(vertices_of_hull_without_repetition(&points))
}

/// Exact re-check of a verdict's certificates against the configuration.
pub fn verdict_is_sound(g: &VectorConfig, verdict: &SpanningVerdict) -> bool {
    if verdict.holds {
        let Some(certs) = &verdict.certificates else {
            return false;
        };
        certs.iter().all(|cert| {
            cert.coefficients.len() == g.len()
                && cert.coefficients[cert.deleted].is_zero()
                && cert
                    .coefficients
                    .iter()
                    .enumerate()
                    .all(|(i, c)| i == cert.deleted || *c >= Rational::one())
                && (0..g.dim()).all(|row| {
                    g.vectors()
                        .iter()
                        .zip(&cert.coefficients)
                        .map(|(v, c)| &v[row] * c)
                        .fold(Rational::zero(), |a, b| a + b)
                        .is_zero()
                })
        })
    } else {
        match &verdict.failure {
            None => g.vectors().is_empty(),
            Some(w) => {
                w.functional.iter().any(|x| !x.is_zero())
                    && g.vectors()
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != w.deleted)
                        .all(|(_, v)| dot(v, &w.functional) >= Rational::zero())
            }
        }
    }
}
