//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by curve, geometry, basis, and classification operations.
#[derive(Debug, Error)]
pub enum Error {
    /// Curve dimension outside the supported set {2, 3}.
    #[error("unsupported point dimension {0} (expected 2 or 3)")]
    InvalidDimension(usize),

    /// Fewer than the minimum number of samples (m >= 2, i.e. 3 points).
    #[error("too few samples: got {got}, need at least {need}")]
    TooFewSamples { got: usize, need: usize },

    /// Non-finite coordinate encountered in input data.
    #[error("non-finite value in input data")]
    NonFiniteData,

    /// Discrete curve length is zero; the curve cannot be resampled.
    #[error("curve has zero discrete length")]
    ZeroLengthCurve,

    /// Discrete L2 norm is below the epsilon floor; cannot normalize.
    #[error("function has (near-)zero discrete norm")]
    ZeroNorm,

    /// Two function samples do not share a discretization or dimension.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Logarithm map requested between (nearly) antipodal sphere points.
    /// `index` identifies the offending observation in batched lifts.
    #[error("points are antipodal (angle {angle:.6} rad); log map undefined{}", index_suffix(.index))]
    AntipodalPoints { angle: f64, index: Option<usize> },

    /// Reparametrization samples decrease or violate endpoint conditions.
    #[error("gamma is not a valid reparametrization: {0}")]
    NonMonotoneGamma(String),

    /// Dynamic-programming grid too coarse for reparametrization search.
    #[error("reparametrization grid {0} too small (need at least 8)")]
    GridTooSmall(usize),

    /// No curves supplied where at least one is required.
    #[error("empty input")]
    EmptyInput,

    /// Karcher mean iteration hit the iteration cap before the tangent
    /// mean dropped below tolerance. Carries the partial result.
    #[error("Karcher mean did not converge in {iterations} iterations (residual {residual:.3e})")]
    NoConvergence {
        iterations: usize,
        residual: f64,
        partial: Box<crate::karcher::MeanResult>,
    },

    /// Sample count too small for the requested number of harmonics.
    #[error("aliasing risk: {samples} samples cannot resolve {harmonics} harmonics (need m >= 8H)")]
    AliasRisk { samples: usize, harmonics: usize },

    /// Gram-Schmidt retained fewer directions than requested.
    #[error("only {available} independent tangent directions available, {requested} requested")]
    InsufficientRank { requested: usize, available: usize },

    /// Tangent vector is based at a different point than the basis.
    #[error("tangent vector basepoint does not match the basis basepoint{}", index_suffix(.index))]
    BasepointMismatch { index: Option<usize> },

    /// A class has fewer than two observations; covariance is undefined.
    #[error("class '{0}' has fewer than 2 observations")]
    SingletonClass(String),

    /// Covariance is not positive definite even after regularization.
    #[error("covariance for class '{0}' is singular after regularization")]
    SingularCovariance(String),

    /// Label not present in a fitted classifier.
    #[error("unknown class label '{0}'")]
    UnknownLabel(String),

    /// Classifier needs at least two classes with labels attached.
    #[error("need at least 2 labeled classes, got {0}")]
    TooFewClasses(usize),

    /// A class has fewer members than the number of cross-validation folds.
    #[error("class '{label}' has {count} observations, fewer than {folds} folds")]
    TooFewPerClass {
        label: String,
        count: usize,
        folds: usize,
    },
}

fn index_suffix(index: &Option<usize>) -> String {
    match index {
        Some(i) => format!(" (observation {i})"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
