//! Exact combinatorial machinery for Cox realizations of affine toric
//! varieties.
//!
//! Everything here computes over exact rationals and arbitrary-precision
//! integers: Gale duality for point and vector configurations, positively
//! 2-spanning certification backed by exact linear programming, Smith and
//! Hermite normal forms over the integers, and the resulting criterion for
//! a quasitorus-weighted affine space to be the total coordinate space of
//! an affine toric variety.
//!
//! Two applications ship with the crate: machine verification of the
//! classified SL3 x Q weight table ([`sl3`]), and a constructive family of
//! SL_n-embeddings of arbitrary class-group rank ([`series`]).
//!
//! ```
//! use galecox::gale::{gale_transform, PointConfig};
//!
//! let square = PointConfig::from_i64(2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]).unwrap();
//! let g = gale_transform(&square).unwrap();
//! assert_eq!(g.dim(), 1);
//! assert!(g.has_zero_sum());
//! ```

pub mod condstar;
pub mod gale;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod rational;
pub mod series;
pub mod sl3;
pub mod spanning;
