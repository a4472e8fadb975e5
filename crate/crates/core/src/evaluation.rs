//! Repeated stratified k-fold cross-validation and result reporting.
//!
//! Every (repeat, fold) unit retrains the entire pipeline — mean, basis,
//! classifier — on its training split only, so no information from the
//! held-out curves leaks into the geometry. Units are independent and run
//! in parallel; aggregation order is fixed, so reports are deterministic
//! for a given seed.

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::pipeline::{train, PipelineConfig};
use rand::prelude::*;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Cross-validation controls.
#[derive(Debug, Clone)]
pub struct CvConfig {
    pub folds: usize,
    pub repeats: usize,
    pub seed: u64,
}

impl Default for CvConfig {
    fn default() -> Self {
        CvConfig {
            folds: 10,
            repeats: 10,
            seed: 0,
        }
    }
}

/// Aggregated cross-validation results.
#[derive(Debug, Clone)]
pub struct CvReport {
    pub folds: usize,
    pub repeats: usize,
    /// Held-out accuracy of every (repeat, fold) unit, in order.
    pub per_fold_accuracy: Vec<f64>,
    /// 1 - mean(per_fold_accuracy).
    pub mean_cv_error: f64,
    /// Error of the full-data fit evaluated on its own training set.
    pub training_error: f64,
    /// true label -> predicted label -> count, over all held-out curves.
    pub confusion: BTreeMap<String, BTreeMap<String, usize>>,
    pub seed: u64,
}

impl CvReport {
    pub fn mean_cv_accuracy(&self) -> f64 {
        1.0 - self.mean_cv_error
    }
}

/// Stratified fold assignment: shuffle each class and deal round-robin.
/// Returns fold index per observation.
fn assign_folds(
    labels: &[String],
    folds: usize,
    rng: &mut ChaCha20Rng,
) -> Result<Vec<usize>> {
    let mut by_class: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        by_class.entry(l.as_str()).or_default().push(i);
    }
    for (label, members) in &by_class {
        if members.len() < folds {
            return Err(Error::TooFewPerClass {
                label: (*label).to_string(),
                count: members.len(),
                folds,
            });
        }
    }
    let mut assignment = vec![0usize; labels.len()];
    for members in by_class.values() {
        let mut shuffled = members.clone();
        shuffled.shuffle(rng);
        for (pos, &obs) in shuffled.iter().enumerate() {
            assignment[obs] = pos % folds;
        }
    }
    Ok(assignment)
}

/// Run repeated stratified k-fold cross-validation of the pipeline.
pub fn kfold_cv(
    curves: &[Curve],
    labels: &[String],
    pipeline: &PipelineConfig,
    cv: &CvConfig,
) -> Result<CvReport> {
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
    if cv.folds < 2 {
        return Err(Error::TooFewPerClass {
            label: "*".into(),
            count: cv.folds,
            folds: 2,
        });
    }

    // fold assignments per repeat, drawn from per-repeat RNG streams
    let mut assignments = Vec::with_capacity(cv.repeats);
    for repeat in 0..cv.repeats {
        let mut rng = ChaCha20Rng::seed_from_u64(cv.seed);
        rng.set_stream(repeat as u64 + 1);
        assignments.push(assign_folds(labels, cv.folds, &mut rng)?);
    }

    let units: Vec<(usize, usize)> = (0..cv.repeats)
        .flat_map(|r| (0..cv.folds).map(move |f| (r, f)))
        .collect();

    struct UnitResult {
        accuracy: f64,
        pairs: Vec<(String, String)>, // (true, predicted)
    }

    let results: Vec<UnitResult> = units
        .par_iter()
        .map(|&(repeat, fold)| -> Result<UnitResult> {
            let assignment = &assignments[repeat];
            let mut train_curves = Vec::new();
            let mut train_labels = Vec::new();
            let mut test_idx = Vec::new();
            for (i, &f) in assignment.iter().enumerate() {
                if f == fold {
                    test_idx.push(i);
                } else {
                    train_curves.push(curves[i].clone());
                    train_labels.push(labels[i].clone());
                }
            }
            let fitted = train(&train_curves, &train_labels, pipeline)?;
            let mut hits = 0usize;
            let mut pairs = Vec::with_capacity(test_idx.len());
            for &i in &test_idx {
                let predicted = fitted.model.classify_curve(&curves[i])?.0;
                if predicted == labels[i] {
                    hits += 1;
                }
                pairs.push((labels[i].clone(), predicted));
            }
            Ok(UnitResult {
                accuracy: hits as f64 / test_idx.len() as f64,
                pairs,
            })
        })
        .collect::<Result<_>>()?;

    let per_fold_accuracy: Vec<f64> = results.iter().map(|r| r.accuracy).collect();
    let mean_accuracy =
        per_fold_accuracy.iter().sum::<f64>() / per_fold_accuracy.len() as f64;
    let mut confusion: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
    for r in &results {
        for (truth, predicted) in &r.pairs {
            *confusion
                .entry(truth.clone())
                .or_default()
                .entry(predicted.clone())
                .or_default() += 1;
        }
    }

    let full = train(curves, labels, pipeline)?;
    let training_error = 1.0 - full.model.accuracy(curves, labels)?;

    Ok(CvReport {
        folds: cv.folds,
        repeats: cv.repeats,
        per_fold_accuracy,
        mean_cv_error: 1.0 - mean_accuracy,
        training_error,
        confusion,
        seed: cv.seed,
    })
}

/// One row of the experiment summary.
#[derive(Debug, Clone)]
pub struct ExperimentRecord {
    pub example: String,
    pub classifier: String,
    pub n: usize,
    pub training_accuracy: f64,
    pub testing_accuracy: f64,
    pub cv_error: f64,
    pub seed: u64,
}

impl ExperimentRecord {
    pub fn from_report(example: &str, classifier: &str, n: usize, report: &CvReport) -> Self {
        ExperimentRecord {
            example: example.to_string(),
            classifier: classifier.to_string(),
            n,
            training_accuracy: 1.0 - report.training_error,
            testing_accuracy: report.mean_cv_accuracy(),
            cv_error: report.mean_cv_error,
            seed: report.seed,
        }
    }
}

/// Machine- and human-readable experiment summaries.
#[derive(Debug, Clone)]
pub struct Report {
    pub csv: String,
    pub table: String,
}

/// Render experiment rows as a CSV document and an aligned text table.
pub fn report(rows: &[ExperimentRecord]) -> Result<Report> {
    if rows.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut csv = String::from(
        "example,classifier,N,training_accuracy,testing_accuracy,cv_error,seed\n",
    );
    for r in rows {
        csv.push_str(&format!(
            "{},{},{},{:.6},{:.6},{:.6},{}\n",
            r.example, r.classifier, r.n, r.training_accuracy, r.testing_accuracy, r.cv_error, r.seed
        ));
    }
    let mut table = format!(
        "{:<16} {:<10} {:>6} {:>18} {:>17} {:>9} {:>6}\n",
        "example", "classifier", "N", "training accuracy", "testing accuracy", "cv error", "seed"
    );
    for r in rows {
        table.push_str(&format!(
            "{:<16} {:<10} {:>6} {:>17.2}% {:>16.2}% {:>9.4} {:>6}\n",
            r.example,
            r.classifier,
            r.n,
            100.0 * r.training_accuracy,
            100.0 * r.testing_accuracy,
            r.cv_error,
            r.seed
        ));
    }
    Ok(Report { csv, table })
}
