//! The two-part weight criterion for Cox realizations.
//!
//! A quasitorus acting diagonally on affine space is described, up to the
//! action, by the multiset of characters carried by the coordinate
//! functions: a [`WeightCollection`] over the character group. The space is
//! the total coordinate space of an affine toric variety exactly when
//!
//! 1. the torsion-free images of the weights form a positively 2-spanning
//!    configuration, and
//! 2. deleting any single copy of any weight leaves a set that still
//!    generates the whole character group.
//!
//! Both parts are decided exactly, and the report keeps the certificates.

use crate::gale::VectorConfig;
use crate::lattice::{self, FgAbelianGroup, GroupElement, LatticeError};
use crate::linalg::Matrix;
use crate::spanning::{self, HalfspaceWitness, SpanningVerdict};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CondStarError {
    #[error("weight {index} does not fit the group: {source}")]
    InvalidWeight {
        index: usize,
        source: LatticeError,
    },
    #[error("weight {index} has multiplicity 0")]
    ZeroMultiplicity { index: usize },
}

/// A multiset of group elements with positive multiplicities: the weights
/// of the coordinate functions, one per coordinate of the acted-on space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightCollection {
    group: FgAbelianGroup,
    weights: Vec<(GroupElement, usize)>,
}

impl WeightCollection {
    pub fn new(
        group: FgAbelianGroup,
        weights: Vec<(GroupElement, usize)>,
    ) -> Result<Self, CondStarError> {
        for (index, (e, mult)) in weights.iter().enumerate() {
            if *mult == 0 {
                return Err(CondStarError::ZeroMultiplicity { index });
            }
            lattice::free_image(&group, e)
                .map_err(|source| CondStarError::InvalidWeight { index, source })?;
        }
        Ok(WeightCollection { group, weights })
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn weights(&self) -> &[(GroupElement, usize)] {
        &self.weights
    }

    /// Total multiplicity: the dimension of the graded affine space.
    pub fn total_multiplicity(&self) -> usize {
        self.weights.iter().map(|(_, m)| m).sum()
    }

    /// All members expanded copy by copy.
    pub fn expanded(&self) -> Vec<GroupElement> {
        self.weights
            .iter()
            .flat_map(|(e, m)| std::iter::repeat_n(e.clone(), *m))
            .collect()
    }
}

/// One generation check: the collection minus one copy of the weight at
/// `weight_index` either still generates the group or does not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationCheck {
    pub weight_index: usize,
    pub generates: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StarFailure {
    NotPositively2Spanning { witness: Option<HalfspaceWitness> },
    GenerationFails { weight_index: usize },
}

/// Full report of the two-part criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarReport {
    pub holds: bool,
    pub spanning: SpanningVerdict,
    pub generation: Vec<GenerationCheck>,
    pub failure: Option<StarFailure>,
}

/// Torsion-free images of the weights, one copy per unit of multiplicity,
/// as a configuration in `Q^(free rank)`.
pub fn free_configuration(w: &WeightCollection) -> VectorConfig {
    let dim = w.group().free_rank();
    let vectors = w
        .weights
        .iter()
        .flat_map(|(e, m)| {
            let img = lattice::free_image(w.group(), e).expect("validated at construction");
            std::iter::repeat_n(img, *m)
        })
        .collect();
    VectorConfig::new(dim, vectors).expect("free images have the free rank as length")
}

/// Decides the criterion and assembles the report.
///
/// Deleting one copy of a weight held with multiplicity two or more can
/// never change the generated subgroup, and deleting different copies of
/// equal weights gives the same multiset, so generation is checked once per
/// distinct weight value.
pub fn check_condition_star(w: &WeightCollection) -> StarReport {
    let spanning = spanning::is_positively_2_spanning(&free_configuration(w));

    let mut generation = Vec::new();
    let mut seen: Vec<&GroupElement> = Vec::new();
    for (index, (e, _)) in w.weights.iter().enumerate() {
        if seen.contains(&e) {
            continue;
        }
        seen.push(e);
        let mut rest: Vec<GroupElement> = Vec::with_capacity(w.total_multiplicity() - 1);
        let mut dropped = false;
        for (f, m) in &w.weights {
            let mut copies = *m;
            if !dropped && f == e {
                copies -= 1;
                dropped = true;
            }
            rest.extend(std::iter::repeat_n(f.clone(), copies));
        }
        let generates =
            lattice::generates(w.group(), &rest).expect("validated at construction");
        generation.push(GenerationCheck {
            weight_index: index,
            generates,
        });
    }

    let all_generate = generation.iter().all(|c| c.generates);
    let holds = spanning.holds && all_generate;
    let failure = if !spanning.holds {
        Some(StarFailure::NotPositively2Spanning {
            witness: spanning.failure.clone(),
        })
    } else {
        generation
            .iter()
            .find(|c| !c.generates)
            .map(|c| StarFailure::GenerationFails {
                weight_index: c.weight_index,
            })
    };
    StarReport {
        holds,
        spanning,
        generation,
        failure,
    }
}

/// Whether the weighted affine space is the total coordinate space of an
/// affine toric variety.
pub fn is_cox_realization(w: &WeightCollection) -> bool {
    check_condition_star(w).holds
}

/// Open-orbit test for a quasitorus acting diagonally with the given
/// weights: the orbit of a generic point is open exactly when the
/// torsion-free images of the weights are linearly independent over `Q`.
pub fn has_open_quasitorus_orbit(
    group: &FgAbelianGroup,
    weights: &[GroupElement],
) -> Result<bool, LatticeError> {
    let rows: Result<Vec<_>, _> = weights
        .iter()
        .map(|e| lattice::free_image(group, e))
        .collect();
    let rows = rows?;
    let count = rows.len();
    if count == 0 {
        return Ok(true);
    }
    let mut m = Matrix::zeros(count, group.free_rank());
    for (i, r) in rows.into_iter().enumerate() {
        for (j, x) in r.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    Ok(m.rank() == count)
}
