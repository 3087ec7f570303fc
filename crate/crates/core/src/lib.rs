//! Zero-mutable Laurent polynomials in two variables.
//!
//! The crate works with exact rational coefficients throughout. The main
//! entry points are [`LaurentPoly`], [`mutation::mutate`],
//! [`mutation::decide_zero_mutable`], [`mutation::enumerate_zero_mutable`],
//! the toric helpers in [`toric`] and the intersection numbers in [`cluster`].

pub mod cluster;
pub mod error;
pub mod lattice;
pub mod laurent;
pub mod mutation;
pub mod toric;

pub use error::{Error, Result};
pub use lattice::{
    canonical_form, canonical_transforms, convex_hull, minkowski_decompositions, minkowski_sum,
    nakajima_polygon, smoothing_decompositions, AffineFunctional, AffineMap, DecompositionFilter,
    Edge, LatticePolygon, LatticeVector, MinkowskiDecomposition,
};
pub use laurent::{KernelPoly, LaurentPoly};
