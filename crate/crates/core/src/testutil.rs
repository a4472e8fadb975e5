//! Shared helpers for unit tests.

use crate::curve::{normalize_length, Srvf};
use rand::Rng;

/// A random normalized SRVF on m segments.
pub(crate) fn random_srvf(rng: &mut impl Rng, m: usize, dim: usize) -> Srvf {
    let values: Vec<f64> = (0..(m + 1) * dim)
        .map(|_| rng.gen_range(-1.0..1.0))
        .collect();
    normalize_length(&Srvf::new(values, dim).unwrap()).unwrap()
}
