//! Weight systems of arbitrary class-group rank.
//!
//! For every `n >= 4` and `d >= 1` this module builds an SL_n x Q module
//! (n standard summands, d-1 trivial ones) with quasitorus weights whose
//! quotient is an affine toric SL_n-embedding of class-group rank exactly
//! `d`. The weights come from the Gale transform of a convex polygon with
//! `d+3` vertices: four of the transformed vectors feed the first four
//! standard summands, the rest feed the trivial summands, the remaining
//! standard summands carry weight zero.
//!
//! The transform alone is not enough: the determinant invariant's weight is
//! the sum of the standard weights, which the zero-sum property of the
//! transform makes dependent on the trivial weights. Doubling every weight
//! except the first breaks that dependence without disturbing the
//! 2-spanning property, which is scale-invariant member by member.

use crate::condstar::{self, StarReport, WeightCollection};
use crate::gale::{gale_transform, GaleError, PointConfig};
use crate::lattice::{hermite_normal_form, FgAbelianGroup, GroupElement, IntMatrix};
use crate::linalg::Matrix;
use crate::rational::{Int, Rational};
use num_integer::Integer as _;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("the construction needs n >= 4, got {0}")]
    RankParameterTooSmall(usize),
    #[error("the construction needs d >= 1, got {0}")]
    ClassGroupRankTooSmall(usize),
    #[error("a convex polygon needs at least 3 vertices, got {0}")]
    PolygonTooSmall(usize),
    #[error(transparent)]
    Gale(#[from] GaleError),
}

/// `k` rational points in convex position: `(i, i^2)` for `i = 0..k-1`.
///
/// Points on the parabola are simultaneously in convex and in general
/// position for every `k`, which keeps all minors of the transform nonzero.
pub fn convex_polygon(k: usize) -> Result<PointConfig, SeriesError> {
    if k < 3 {
        return Err(SeriesError::PolygonTooSmall(k));
    }
    let points = (0..k as i64)
        .map(|i| vec![crate::rational::rat(i), crate::rational::rat(i * i)])
        .collect();
    Ok(PointConfig::new(2, points)?)
}

/// A constructed weight system for one `(n, d)` pair.
#[derive(Clone, Debug)]
pub struct SeriesInstance {
    pub n: usize,
    pub d: usize,
    pub polygon: PointConfig,
    /// Gale transform of the polygon, cleared to integer vectors by a
    /// uniform positive factor; `d+3` vectors in the ambient `Z^d`.
    pub raw_weights: Vec<Vec<Int>>,
    /// Raw weights after the doubling step (all but the first), or the raw
    /// weights unchanged for the unscaled control instance.
    pub scaled_weights: Vec<Vec<Int>>,
    /// Weights of the n standard summands in the coordinates of the lattice
    /// the scaled weights generate: the first four scaled vectors, then
    /// zeros.
    pub standard_weights: Vec<GroupElement>,
    /// Weights of the d-1 trivial summands, same coordinates.
    pub invariant_weights: Vec<GroupElement>,
    /// The full coordinate-weight multiset over `Z^d`.
    pub collection: WeightCollection,
}

fn clear_denominators(vectors: &[Vec<Rational>]) -> Vec<Vec<Int>> {
    let mut lcm = Int::one();
    for v in vectors {
        for x in v {
            lcm = lcm.lcm(x.denom());
        }
    }
    vectors
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| {
                    let scaled = x * Rational::from_integer(lcm.clone());
                    debug_assert!(scaled.denom().is_one());
                    scaled.numer().clone()
                })
                .collect()
        })
        .collect()
}

fn build(n: usize, d: usize, apply_scaling: bool) -> Result<SeriesInstance, SeriesError> {
    if n < 4 {
        return Err(SeriesError::RankParameterTooSmall(n));
    }
    if d < 1 {
        return Err(SeriesError::ClassGroupRankTooSmall(d));
    }
    let polygon = convex_polygon(d + 3)?;
    let transform = gale_transform(&polygon)?;
    debug_assert_eq!(transform.dim(), d);
    let raw_weights = clear_denominators(transform.vectors());

    let two = Int::from(2);
    let scaled_weights: Vec<Vec<Int>> = raw_weights
        .iter()
        .enumerate()
        .map(|(i, v)| {
            if apply_scaling && i > 0 {
                v.iter().map(|x| x * &two).collect()
            } else {
                v.clone()
            }
        })
        .collect();

    // basis of the lattice the weights generate, via column Hermite form
    let weight_matrix = IntMatrix::from_columns(scaled_weights.clone());
    let (h, _) = hermite_normal_form(&weight_matrix);
    let basis_cols: Vec<Vec<Int>> = (0..h.cols())
        .map(|j| h.column(j))
        .filter(|c| c.iter().any(|x| !x.is_zero()))
        .collect();
    assert_eq!(
        basis_cols.len(),
        d,
        "polygon transform must span the full rank"
    );
    let basis = IntMatrix::from_columns(basis_cols).to_rational();

    let in_lattice_coords = |w: &[Int]| -> Vec<Int> {
        let rhs: Vec<Rational> = w
            .iter()
            .map(|x| Rational::from_integer(x.clone()))
            .collect();
        let sol = basis
            .solve(&rhs)
            .expect("lattice basis is nonsingular");
        sol.into_iter()
            .map(|x| {
                assert!(x.denom().is_one(), "weight must lie in its own lattice");
                x.numer().clone()
            })
            .collect()
    };

    let group = FgAbelianGroup::free(d);
    let mut standard_weights: Vec<GroupElement> = scaled_weights[..4]
        .iter()
        .map(|w| group.element(in_lattice_coords(w), vec![]).expect("rank d"))
        .collect();
    standard_weights.extend(std::iter::repeat_n(group.zero(), n - 4));
    let invariant_weights: Vec<GroupElement> = scaled_weights[4..]
        .iter()
        .map(|w| group.element(in_lattice_coords(w), vec![]).expect("rank d"))
        .collect();

    let mut entries: Vec<(GroupElement, usize)> = standard_weights[..4]
        .iter()
        .map(|e| (e.clone(), n))
        .collect();
    if n > 4 {
        entries.push((group.zero(), n * (n - 4)));
    }
    entries.extend(invariant_weights.iter().map(|e| (e.clone(), 1)));
    let collection = WeightCollection::new(group, entries).expect("weights fit the group");

    Ok(SeriesInstance {
        n,
        d,
        polygon,
        raw_weights,
        scaled_weights,
        standard_weights,
        invariant_weights,
        collection,
    })
}

/// The full construction for `(n, d)`, with the doubling step applied.
pub fn construct_series_example(n: usize, d: usize) -> Result<SeriesInstance, SeriesError> {
    build(n, d, true)
}

/// The same construction without the doubling step. Its determinant weight
/// is forced into the span of the trivial weights, so [`verify_series`]
/// fails the independence assertion: this is the control showing why the
/// scaling step exists.
pub fn construct_unscaled_example(n: usize, d: usize) -> Result<SeriesInstance, SeriesError> {
    build(n, d, false)
}

/// Verification outcome: the three assertions that make the instance an
/// SL_n-embedding of class-group rank `d`.
#[derive(Clone, Debug)]
pub struct SeriesReport {
    /// The weight criterion on the full coordinate collection.
    pub condition_star: StarReport,
    /// Independence of the invariant generators' weights: the d-1 trivial
    /// weights together with the determinant weight (sum of the standard
    /// summands' weights).
    pub invariants_independent: bool,
    /// The weights generate a rank-`d` lattice.
    pub rank_matches: bool,
}

impl SeriesReport {
    pub fn pass(&self) -> bool {
        self.condition_star.holds && self.invariants_independent && self.rank_matches
    }
}

/// The determinant invariant's weight: sum of the standard summands'
/// weights (one per summand; the common scalar multiple coming from the
/// summand dimension is irrelevant to independence).
pub fn determinant_weight(inst: &SeriesInstance) -> GroupElement {
    inst.collection
        .group()
        .sum(inst.standard_weights.iter())
        .expect("same group")
}

pub fn verify_series(inst: &SeriesInstance) -> SeriesReport {
    let group = inst.collection.group();
    let condition_star = condstar::check_condition_star(&inst.collection);

    let mut invariant_generators = inst.invariant_weights.clone();
    invariant_generators.push(determinant_weight(inst));
    let invariants_independent =
        condstar::has_open_quasitorus_orbit(group, &invariant_generators)
            .expect("weights fit the group");

    let all_free: Vec<Vec<Rational>> = inst
        .collection
        .weights()
        .iter()
        .map(|(e, _)| {
            crate::lattice::free_image(group, e).expect("weights fit the group")
        })
        .collect();
    let rank = if all_free.is_empty() {
        0
    } else {
        Matrix::from_rows(all_free).rank()
    };
    let rank_matches = rank == inst.d && group.free_rank() == inst.d;

    SeriesReport {
        condition_star,
        invariants_independent,
        rank_matches,
    }
}
