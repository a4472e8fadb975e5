//! Elastic shape analysis of open curves.
//!
//! Curves are represented by their square-root velocity functions (SRVFs);
//! after length normalization these live on a hypersphere in L2, where
//! translation and scale have been removed. Rotation and reparametrization
//! are quotiented out by explicit alignment. On top of that geometry the
//! crate provides Karcher means, an orthonormal Fourier basis of the
//! horizontal tangent space at the mean, and linear/quadratic discriminant
//! classification of the resulting basis coefficients.
//!
//! The high-level entry points are [`pipeline::train`] for fitting a shape
//! classifier to labeled curves, [`evaluation::kfold_cv`] for repeated
//! stratified cross-validation, and [`synthetic::generate_synthetic`] for
//! the two-bump benchmark data set.

pub mod align;
pub mod basis;
pub mod curve;
pub mod discriminant;
pub mod error;
pub mod evaluation;
pub mod grid;
pub mod karcher;
pub mod pipeline;
pub mod sphere;
pub mod synthetic;

#[cfg(test)]
pub(crate) mod testutil;

pub use curve::{from_srvf, normalize_length, resample, to_srvf, Curve, Srvf};
pub use error::{Error, Result};
pub use sphere::{exp_map, geodesic_distance, inner, log_map, project_tangent, TangentVector};
