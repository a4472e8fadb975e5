//! Two-bump synthetic benchmark curves.
//!
//! Each curve is the planar graph (t, y(t)) of a Gaussian pulse and a
//! powered half-sinusoid pulse placed on opposite halves of the domain.
//! Class A puts the Gaussian first, class B puts it second; within-class
//! variation comes from the Gaussian pulse width and the sinusoid
//! exponent. Generation is deterministic given the seed.

use crate::curve::Curve;
use crate::error::{Error, Result};
use rand::prelude::*;
use rand_chacha::ChaCha20Rng;

/// Configuration for [`generate_synthetic`].
#[derive(Debug, Clone)]
pub struct SynthConfig {
    /// Curves generated per class (total is twice this).
    pub n_per_class: usize,
    /// Segments per curve (m; each curve has m+1 points).
    pub samples: usize,
    /// Gaussian pulse width range, as a fraction of the half-domain.
    pub width_range: (f64, f64),
    /// Exponent range for the half-sinusoid pulse.
    pub power_range: (f64, f64),
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            n_per_class: 100,
            samples: 100,
            width_range: (0.15, 0.45),
            power_range: (1.0, 4.0),
            seed: 0,
        }
    }
}

/// A curve with its class label and a stable identifier.
#[derive(Debug, Clone)]
pub struct LabeledCurve {
    pub id: String,
    pub label: String,
    pub curve: Curve,
}

fn gaussian_bump(u: f64, center: f64, sigma: f64) -> f64 {
    let z = (u - center) / sigma;
    (-0.5 * z * z).exp()
}

fn sinusoid_bump(u: f64, start: f64, width: f64, power: f64) -> f64 {
    if u <= start || u >= start + width {
        return 0.0;
    }
    (std::f64::consts::PI * (u - start) / width).sin().powf(power)
}

/// Generate `2 * n_per_class` labeled two-bump curves (class A then B).
pub fn generate_synthetic(cfg: &SynthConfig) -> Result<Vec<LabeledCurve>> {
    if cfg.n_per_class == 0 {
        return Err(Error::EmptyInput);
    }
    if cfg.samples < 2 {
        return Err(Error::TooFewSamples {
            got: cfg.samples + 1,
            need: 3,
        });
    }
    if !(cfg.width_range.0 < cfg.width_range.1 && cfg.width_range.0 > 0.0) {
        return Err(Error::DimensionMismatch(format!(
            "empty width range {:?}",
            cfg.width_range
        )));
    }
    if !(cfg.power_range.0 < cfg.power_range.1 && cfg.power_range.0 > 0.0) {
        return Err(Error::DimensionMismatch(format!(
            "empty power range {:?}",
            cfg.power_range
        )));
    }

    let mut rng = ChaCha20Rng::seed_from_u64(cfg.seed);
    let m = cfg.samples;
    let half = 0.5;
    // pulse centers / windows on the unit abscissa
    let gauss_center = [0.25, 0.75];
    let sin_window = [(0.55, 0.4), (0.05, 0.4)]; // (start, width)

    let mut out = Vec::with_capacity(2 * cfg.n_per_class);
    for (class_idx, label) in ["A", "B"].into_iter().enumerate() {
        for i in 0..cfg.n_per_class {
            let sigma = rng.gen_range(cfg.width_range.0..cfg.width_range.1) * half;
            let power = rng.gen_range(cfg.power_range.0..cfg.power_range.1);
            let center = gauss_center[class_idx];
            let (start, width) = sin_window[class_idx];
            let mut points = Vec::with_capacity((m + 1) * 2);
            for j in 0..=m {
                let u = j as f64 / m as f64;
                let y = gaussian_bump(u, center, sigma) + sinusoid_bump(u, start, width, power);
                points.extend_from_slice(&[u, y]);
            }
            out.push(LabeledCurve {
                id: format!("{label}{i:03}"),
                label: label.to_string(),
                curve: Curve::new(points, 2)?,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_labels() {
        let cfg = SynthConfig {
            n_per_class: 100,
            ..SynthConfig::default()
        };
        let data = generate_synthetic(&cfg).unwrap();
        assert_eq!(data.len(), 200);
        assert_eq!(data.iter().filter(|c| c.label == "A").count(), 100);
        assert_eq!(data.iter().filter(|c| c.label == "B").count(), 100);
        assert_eq!(data[0].curve.samples(), 101);
    }

    #[test]
    fn deterministic_given_seed() {
        let cfg = SynthConfig {
            n_per_class: 5,
            seed: 42,
            ..SynthConfig::default()
        };
        let a = generate_synthetic(&cfg).unwrap();
        let b = generate_synthetic(&cfg).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.id, y.id);
            assert_eq!(x.curve.points(), y.curve.points());
        }
        let c = generate_synthetic(&SynthConfig { seed: 43, ..cfg }).unwrap();
        assert_ne!(a[0].curve.points(), c[0].curve.points());
    }

    #[test]
    fn rejects_bad_config() {
        assert!(generate_synthetic(&SynthConfig {
            n_per_class: 0,
            ..SynthConfig::default()
        })
        .is_err());
        assert!(generate_synthetic(&SynthConfig {
            width_range: (0.4, 0.4),
            ..SynthConfig::default()
        })
        .is_err());
    }
}
