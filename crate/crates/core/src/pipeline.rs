//! End-to-end training pipeline: curves to a fitted shape classifier.
//!
//! Training resamples every curve, maps it to a normalized SRVF, computes
//! the Karcher mean of the population under alignment, builds the
//! horizontal Fourier basis at the mean, projects the tangent lifts into
//! coefficients, and fits the discriminant classifier. A trained
//! [`ShapeModel`] classifies new curves by sending them through the same
//! steps against the stored mean and basis.

use crate::align::align;
use crate::basis::{
    ambient_fourier_basis, build_data_matrix, horizontal_basis, project_coefficients,
    vertical_basis, TangentBasis,
};
use crate::curve::{normalize_length, resample, to_srvf, Curve, Srvf};
use crate::discriminant::{fit, Classifier, ClassifierKind};
use crate::error::{Error, Result};
use crate::karcher::{karcher_mean, MeanConfig, MeanResult};
use crate::sphere::log_map;
use rayon::prelude::*;

/// Settings for the full train/predict pipeline.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    /// Resampling segment count m.
    pub samples: usize,
    /// Harmonics H of the ambient Fourier system.
    pub harmonics: usize,
    /// Retained horizontal basis dimension K.
    pub coeff_dim: usize,
    /// Reparametrization flow truncation L in the vertical basis.
    pub lie_dim: usize,
    /// Covariance ridge; None selects the automatic trace-scaled value.
    pub ridge: Option<f64>,
    pub kind: ClassifierKind,
    /// Karcher mean controls, including the alignment options reused for
    /// classifying new curves.
    pub mean: MeanConfig,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            samples: 100,
            harmonics: crate::basis::DEFAULT_HARMONICS,
            coeff_dim: crate::basis::DEFAULT_COEFF_DIM,
            lie_dim: crate::basis::DEFAULT_LIE_DIM,
            ridge: None,
            kind: ClassifierKind::Qda,
            mean: MeanConfig::default(),
        }
    }
}

/// Resample a curve to `samples` segments and return its normalized SRVF.
pub fn prepare_srvf(curve: &Curve, samples: usize) -> Result<Srvf> {
    normalize_length(&to_srvf(&resample(curve, samples)?))
}

/// A trained classifier bundled with the geometry needed to apply it.
#[derive(Debug, Clone)]
pub struct ShapeModel {
    pub basis: TangentBasis,
    pub classifier: Classifier,
    pub config: PipelineConfig,
}

impl ShapeModel {
    /// Mean SRVF the model is based at.
    pub fn mu(&self) -> &Srvf {
        self.basis.mu()
    }

    /// Coefficient vector of a new curve: resample, SRVF, normalize,
    /// align to the mean, lift, project.
    pub fn coefficients(&self, curve: &Curve) -> Result<Vec<f64>> {
        let q = prepare_srvf(curve, self.config.samples)?;
        let aligned = align(self.mu(), &q, &self.config.mean.align)?;
        let tangent = log_map(self.mu(), &aligned)?;
        project_coefficients(&self.basis, &tangent)
    }

    /// Classify a curve; returns the label and all per-class scores.
    pub fn classify_curve(&self, curve: &Curve) -> Result<(String, Vec<(String, f64)>)> {
        Ok(self.classifier.classify(&self.coefficients(curve)?))
    }

    /// Fraction of curves whose predicted label matches `labels`.
    pub fn accuracy(&self, curves: &[Curve], labels: &[String]) -> Result<f64> {
        if curves.is_empty() {
            return Err(Error::EmptyInput);
        }
        let hits: usize = curves
            .par_iter()
            .zip(labels.par_iter())
            .map(|(c, l)| Ok(usize::from(self.classify_curve(c)?.0 == *l)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .sum();
        Ok(hits as f64 / curves.len() as f64)
    }
}

/// Outputs of [`train`] that are useful beyond the model itself.
#[derive(Debug, Clone)]
pub struct TrainOutput {
    pub model: ShapeModel,
    /// Karcher mean diagnostics (objective trace, aligned copies, lifts).
    pub mean: MeanResult,
}

/// Fit the full pipeline on labeled curves.
pub fn train(curves: &[Curve], labels: &[String], config: &PipelineConfig) -> Result<TrainOutput> {
    if curves.is_empty() {
        return Err(Error::EmptyInput);
    }
    if curves.len() != labels.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} curves but {} labels",
            curves.len(),
            labels.len()
        )));
    }
    let dim = curves[0].dim();
    if curves.iter().any(|c| c.dim() != dim) {
        return Err(Error::DimensionMismatch(
            "curves have mixed point dimensions".into(),
        ));
    }
    let srvfs: Vec<Srvf> = curves
        .par_iter()
        .map(|c| prepare_srvf(c, config.samples))
        .collect::<Result<_>>()?;

    // a capped iteration count is a usable mean; keep the partial result
    let mean = match karcher_mean(&srvfs, &config.mean) {
        Ok(res) => res,
        Err(Error::NoConvergence { partial, .. }) => *partial,
        Err(e) => return Err(e),
    };

    let ambient = ambient_fourier_basis(dim, config.harmonics, config.samples)?;
    let vertical = vertical_basis(&mean.mu, config.lie_dim);
    let basis = horizontal_basis(&mean.mu, &ambient, &vertical, config.coeff_dim)?;
    let data = build_data_matrix(&basis, &mean.tangents, Some(labels.to_vec()))?;
    let classifier = fit(&data, config.kind, config.ridge)?;
    Ok(TrainOutput {
        model: ShapeModel {
            basis,
            classifier,
            config: config.clone(),
        },
        mean,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::align::Rotation;
    use crate::synthetic::{generate_synthetic, SynthConfig};

    fn small_dataset() -> (Vec<Curve>, Vec<String>) {
        let data = generate_synthetic(&SynthConfig {
            n_per_class: 12,
            samples: 60,
            seed: 5,
            ..SynthConfig::default()
        })
        .unwrap();
        (
            data.iter().map(|c| c.curve.clone()).collect(),
            data.iter().map(|c| c.label.clone()).collect(),
        )
    }

    fn small_config() -> PipelineConfig {
        PipelineConfig {
            samples: 60,
            harmonics: 6,
            coeff_dim: 10,
            lie_dim: 6,
            ..PipelineConfig::default()
        }
    }

    #[test]
    fn train_separates_the_synthetic_classes() {
        let (curves, labels) = small_dataset();
        let out = train(&curves, &labels, &small_config()).unwrap();
        let acc = out.model.accuracy(&curves, &labels).unwrap();
        assert!(acc >= 0.9, "training accuracy {acc}");
        // objective trace nonincreasing
        for w in out.mean.objective_trace.windows(2) {
            assert!(w[1] <= w[0] + 1e-10);
        }
    }

    #[test]
    fn classify_curve_is_translation_invariant() {
        let (curves, labels) = small_dataset();
        let out = train(&curves, &labels, &small_config()).unwrap();
        let c = &curves[3];
        let shifted = Curve::new(
            c.points().chunks(2).flat_map(|p| [p[0] + 5.0, p[1] - 2.0]).collect(),
            2,
        )
        .unwrap();
        let (l0, s0) = out.model.classify_curve(c).unwrap();
        let (l1, s1) = out.model.classify_curve(&shifted).unwrap();
        assert_eq!(l0, l1);
        for ((_, a), (_, b)) in s0.iter().zip(&s1) {
            assert!((a - b).abs() <= 1e-9, "score drift {}", (a - b).abs());
        }
    }

    #[test]
    fn classify_curve_is_rotation_and_scale_invariant() {
        let (curves, labels) = small_dataset();
        let out = train(&curves, &labels, &small_config()).unwrap();
        let c = &curves[17];
        let (l0, s0) = out.model.classify_curve(c).unwrap();

        let rot = Rotation::planar(1.1);
        let pts: Vec<f64> = c
            .points()
            .chunks(2)
            .flat_map(|p| {
                let x = rot.matrix()[0] * p[0] + rot.matrix()[1] * p[1];
                let y = rot.matrix()[2] * p[0] + rot.matrix()[3] * p[1];
                [x, y]
            })
            .collect();
        let rotated = Curve::new(pts, 2).unwrap();
        let (l1, s1) = out.model.classify_curve(&rotated).unwrap();
        assert_eq!(l0, l1);
        for ((_, a), (_, b)) in s0.iter().zip(&s1) {
            assert!((a - b).abs() <= 1e-6, "rotation score drift {}", (a - b).abs());
        }

        let scaled = Curve::new(c.points().iter().map(|v| 3.7 * v).collect(), 2).unwrap();
        let (l2, s2) = out.model.classify_curve(&scaled).unwrap();
        assert_eq!(l0, l2);
        for ((_, a), (_, b)) in s0.iter().zip(&s2) {
            assert!((a - b).abs() <= 1e-9, "scale score drift {}", (a - b).abs());
        }
    }
}
