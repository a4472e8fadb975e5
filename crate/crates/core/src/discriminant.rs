//! Gaussian discriminant classification of basis coefficients.
//!
//! Each class is modeled by the sample mean and (ridge-regularized)
//! unbiased covariance of its coefficient columns plus an empirical
//! prior. The discriminant score is
//! delta(x) = -1/2 ln det S - 1/2 (x-m)^T S^-1 (x-m) + ln pi,
//! evaluated with a cached Cholesky factorization. LDA shares a pooled
//! covariance across classes; QDA keeps them separate. Classification is
//! the argmax of the scores with ties broken by smallest label.

use crate::basis::DataMatrix;
use crate::error::{Error, Result};
use nalgebra::{Cholesky, DMatrix, DVector};
use std::collections::BTreeMap;

/// Relative scale of the automatic ridge: ridge = 1e-6 trace(S)/K.
pub const AUTO_RIDGE_SCALE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassifierKind {
    Lda,
    Qda,
}

impl ClassifierKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClassifierKind::Lda => "lda",
            ClassifierKind::Qda => "qda",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "lda" => Ok(ClassifierKind::Lda),
            "qda" => Ok(ClassifierKind::Qda),
            other => Err(Error::UnknownLabel(other.to_string())),
        }
    }
}

/// Per-class Gaussian model with cached factorization.
#[derive(Debug, Clone)]
pub struct ClassModel {
    label: String,
    mean: DVector<f64>,
    covariance: DMatrix<f64>,
    prior: f64,
    log_det: f64,
    precision: DMatrix<f64>,
}

impl ClassModel {
    /// Build a class model from raw parts (row-major covariance),
    /// validating symmetry, positive definiteness, and the prior range.
    pub fn new(label: String, mean: Vec<f64>, covariance: Vec<f64>, prior: f64) -> Result<Self> {
        let k = mean.len();
        if covariance.len() != k * k {
            return Err(Error::DimensionMismatch(format!(
                "covariance has {} entries for mean dimension {k}",
                covariance.len()
            )));
        }
        let cov = DMatrix::from_row_slice(k, k, &covariance);
        Self::from_matrices(label, DVector::from_vec(mean), cov, prior)
    }

    fn from_matrices(
        label: String,
        mean: DVector<f64>,
        covariance: DMatrix<f64>,
        prior: f64,
    ) -> Result<Self> {
        let k = mean.len();
        for i in 0..k {
            for j in 0..k {
                if (covariance[(i, j)] - covariance[(j, i)]).abs() > 1e-10 {
                    return Err(Error::SingularCovariance(label));
                }
            }
        }
        if !(prior > 0.0 && prior <= 1.0) {
            return Err(Error::DimensionMismatch(format!(
                "prior {prior} outside (0, 1]"
            )));
        }
        let chol = Cholesky::new(covariance.clone())
            .ok_or_else(|| Error::SingularCovariance(label.clone()))?;
        let log_det = 2.0 * chol.l().diagonal().iter().map(|v| v.ln()).sum::<f64>();
        let precision = chol.inverse();
        Ok(ClassModel {
            label,
            mean,
            covariance,
            prior,
            log_det,
            precision,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn prior(&self) -> f64 {
        self.prior
    }

    pub fn coeff_dim(&self) -> usize {
        self.mean.len()
    }

    pub fn mean(&self) -> Vec<f64> {
        self.mean.iter().cloned().collect()
    }

    pub fn covariance_row_major(&self) -> Vec<f64> {
        let k = self.coeff_dim();
        let mut out = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                out.push(self.covariance[(i, j)]);
            }
        }
        out
    }

    pub fn log_det(&self) -> f64 {
        self.log_det
    }

    /// Discriminant score delta(x).
    pub fn discriminant(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.mean.len());
        let dx = DVector::from_row_slice(x) - &self.mean;
        let mahalanobis = (&self.precision * &dx).dot(&dx);
        -0.5 * self.log_det - 0.5 * mahalanobis + self.prior.ln()
    }
}

/// A fitted LDA/QDA classifier over coefficient vectors.
#[derive(Debug, Clone)]
pub struct Classifier {
    kind: ClassifierKind,
    classes: Vec<ClassModel>,
    pooled_covariance: Option<DMatrix<f64>>,
}

impl Classifier {
    pub fn kind(&self) -> ClassifierKind {
        self.kind
    }

    pub fn classes(&self) -> &[ClassModel] {
        &self.classes
    }

    pub fn coeff_dim(&self) -> usize {
        self.classes.first().map_or(0, ClassModel::coeff_dim)
    }

    pub fn class(&self, label: &str) -> Result<&ClassModel> {
        self.classes
            .iter()
            .find(|c| c.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn pooled_covariance_row_major(&self) -> Option<Vec<f64>> {
        self.pooled_covariance.as_ref().map(|m| {
            let k = m.nrows();
            let mut out = Vec::with_capacity(k * k);
            for i in 0..k {
                for j in 0..k {
                    out.push(m[(i, j)]);
                }
            }
            out
        })
    }

    /// Reassemble a classifier from stored class models (e.g. a model
    /// file). Classes are sorted by label; priors must sum to 1.
    pub fn from_parts(kind: ClassifierKind, mut classes: Vec<ClassModel>) -> Result<Self> {
        if classes.len() < 2 {
            return Err(Error::TooFewClasses(classes.len()));
        }
        classes.sort_by(|a, b| a.label.cmp(&b.label));
        let prior_sum: f64 = classes.iter().map(|c| c.prior).sum();
        if (prior_sum - 1.0).abs() > 1e-12 {
            return Err(Error::DimensionMismatch(format!(
                "priors sum to {prior_sum}, expected 1"
            )));
        }
        let pooled_covariance = match kind {
            ClassifierKind::Lda => Some(classes[0].covariance.clone()),
            ClassifierKind::Qda => None,
        };
        Ok(Classifier {
            kind,
            classes,
            pooled_covariance,
        })
    }

    /// Label with the maximal discriminant plus all per-class scores.
    /// Exact ties go to the lexicographically smallest label.
    pub fn classify(&self, x: &[f64]) -> (String, Vec<(String, f64)>) {
        let scores: Vec<(String, f64)> = self
            .classes
            .iter()
            .map(|c| (c.label.clone(), c.discriminant(x)))
            .collect();
        let mut best = 0;
        for (i, s) in scores.iter().enumerate().skip(1) {
            if s.1 > scores[best].1 {
                best = i;
            }
        }
        (scores[best].0.clone(), scores)
    }

    /// delta_a(x) - delta_b(x); zero exactly on the decision boundary.
    pub fn decision_boundary_residual(&self, x: &[f64], a: &str, b: &str) -> Result<f64> {
        let ca = self.class(a)?;
        let cb = self.class(b)?;
        Ok(ca.discriminant(x) - cb.discriminant(x))
    }
}

fn class_partition(data: &DataMatrix) -> Result<BTreeMap<&str, Vec<usize>>> {
    let labels = data.labels().ok_or(Error::TooFewClasses(0))?;
    let mut groups: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (j, l) in labels.iter().enumerate() {
        groups.entry(l.as_str()).or_default().push(j);
    }
    if groups.len() < 2 {
        return Err(Error::TooFewClasses(groups.len()));
    }
    Ok(groups)
}

fn column_mean(data: &DataMatrix, cols: &[usize]) -> DVector<f64> {
    let k = data.coeff_dim();
    let mut mean = DVector::zeros(k);
    for &j in cols {
        for i in 0..k {
            mean[i] += data.entry(i, j);
        }
    }
    mean / cols.len() as f64
}

fn scatter(data: &DataMatrix, cols: &[usize], mean: &DVector<f64>) -> DMatrix<f64> {
    let k = data.coeff_dim();
    let mut s = DMatrix::zeros(k, k);
    for &j in cols {
        let dx = DVector::from_fn(k, |i, _| data.entry(i, j) - mean[i]);
        for a in 0..k {
            for b in 0..k {
                s[(a, b)] += dx[a] * dx[b];
            }
        }
    }
    s
}

fn apply_ridge(mut cov: DMatrix<f64>, ridge: Option<f64>) -> DMatrix<f64> {
    let k = cov.nrows();
    let r = match ridge {
        Some(r) => r,
        None => AUTO_RIDGE_SCALE * cov.trace() / k as f64,
    };
    for i in 0..k {
        cov[(i, i)] += r;
    }
    cov
}

/// Fit an LDA or QDA classifier to a labeled data matrix. `ridge` is the
/// diagonal regularizer added to every covariance; `None` selects the
/// automatic trace-scaled default.
pub fn fit(data: &DataMatrix, kind: ClassifierKind, ridge: Option<f64>) -> Result<Classifier> {
    let groups = class_partition(data)?;
    let n_total = data.observations();
    let n_classes = groups.len();
    for (label, cols) in &groups {
        if cols.len() < 2 {
            return Err(Error::SingletonClass((*label).to_string()));
        }
    }

    let pooled = if kind == ClassifierKind::Lda {
        let mut acc = DMatrix::zeros(data.coeff_dim(), data.coeff_dim());
        for cols in groups.values() {
            let mean = column_mean(data, cols);
            acc += scatter(data, cols, &mean);
        }
        Some(apply_ridge(acc / (n_total - n_classes) as f64, ridge))
    } else {
        None
    };

    let mut classes = Vec::with_capacity(n_classes);
    for (label, cols) in &groups {
        let mean = column_mean(data, cols);
        let covariance = match &pooled {
            Some(p) => p.clone(),
            None => apply_ridge(scatter(data, cols, &mean) / (cols.len() - 1) as f64, ridge),
        };
        let prior = cols.len() as f64 / n_total as f64;
        classes.push(ClassModel::from_matrices(
            (*label).to_string(),
            mean,
            covariance,
            prior,
        )?);
    }
    Ok(Classifier {
        kind,
        classes,
        pooled_covariance: pooled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn matrix(columns: Vec<Vec<f64>>, labels: &[&str]) -> DataMatrix {
        DataMatrix::from_parts(
            columns,
            Some(labels.iter().map(|s| s.to_string()).collect()),
        )
        .unwrap()
    }

    fn spherical_model(label: &str, mean: Vec<f64>, sigma2: f64, prior: f64) -> ClassModel {
        let k = mean.len();
        let mut cov = vec![0.0; k * k];
        for i in 0..k {
            cov[i * k + i] = sigma2;
        }
        ClassModel::new(label.to_string(), mean, cov, prior).unwrap()
    }

    #[test]
    fn fit_computes_toy_means() {
        let data = matrix(
            vec![
                vec![0.0, 0.0],
                vec![2.0, 0.0],
                vec![0.0, 2.0],
                vec![2.0, 2.0],
            ],
            &["a", "a", "b", "b"],
        );
        let clf = fit(&data, ClassifierKind::Qda, Some(0.5)).unwrap();
        assert_eq!(clf.classes()[0].label(), "a");
        assert_eq!(clf.classes()[0].mean(), vec![1.0, 0.0]);
        assert_eq!(clf.classes()[1].mean(), vec![1.0, 2.0]);
        assert_abs_diff_eq!(clf.classes()[0].prior(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn zero_scatter_gives_ridge_covariance() {
        let data = matrix(
            vec![
                vec![1.0, 2.0],
                vec![1.0, 2.0],
                vec![5.0, 6.0],
                vec![5.0, 6.0],
            ],
            &["a", "a", "b", "b"],
        );
        let clf = fit(&data, ClassifierKind::Qda, Some(0.25)).unwrap();
        let cov = clf.classes()[0].covariance_row_major();
        assert_eq!(cov, vec![0.25, 0.0, 0.0, 0.25]);
        assert_eq!(clf.classes()[0].mean(), vec![1.0, 2.0]);
    }

    #[test]
    fn zero_scatter_with_auto_ridge_is_singular() {
        let data = matrix(
            vec![
                vec![1.0, 2.0],
                vec![1.0, 2.0],
                vec![5.0, 6.0],
                vec![5.0, 6.0],
            ],
            &["a", "a", "b", "b"],
        );
        assert!(matches!(
            fit(&data, ClassifierKind::Qda, None),
            Err(Error::SingularCovariance(_))
        ));
    }

    #[test]
    fn fit_rejects_singletons_and_single_class() {
        let data = matrix(
            vec![vec![0.0], vec![1.0], vec![2.0]],
            &["a", "a", "b"],
        );
        assert!(matches!(
            fit(&data, ClassifierKind::Qda, None),
            Err(Error::SingletonClass(l)) if l == "b"
        ));
        let data = matrix(vec![vec![0.0], vec![1.0]], &["a", "a"]);
        assert!(matches!(
            fit(&data, ClassifierKind::Qda, None),
            Err(Error::TooFewClasses(1))
        ));
    }

    #[test]
    fn covariance_matches_monte_carlo_generator() {
        let mut rng = ChaCha8Rng::seed_from_u64(70);
        // target covariance via its Cholesky factor
        let l = [[1.0, 0.0, 0.0], [0.4, 0.8, 0.0], [-0.3, 0.2, 0.6]];
        let mut target = [[0.0_f64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    target[i][j] += l[i][k] * l[j][k];
                }
            }
        }
        let normal = |rng: &mut ChaCha8Rng| {
            // Box-Muller
            let u1: f64 = rng.gen_range(1e-12..1.0);
            let u2: f64 = rng.gen_range(0.0..1.0);
            (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
        };
        let n = 2000;
        let mut columns = Vec::with_capacity(2 * n);
        let mut labels = Vec::with_capacity(2 * n);
        for group in 0..2 {
            for _ in 0..n {
                let z = [normal(&mut rng), normal(&mut rng), normal(&mut rng)];
                let mut x = vec![0.0; 3];
                for i in 0..3 {
                    for k in 0..3 {
                        x[i] += l[i][k] * z[k];
                    }
                    x[i] += if group == 0 { 0.0 } else { 10.0 };
                }
                columns.push(x);
                labels.push(if group == 0 { "a" } else { "b" });
            }
        }
        let data = matrix(columns, &labels);
        let clf = fit(&data, ClassifierKind::Qda, Some(0.0)).unwrap();
        let cov = clf.classes()[0].covariance_row_major();
        for i in 0..3 {
            for j in 0..3 {
                assert!(
                    (cov[i * 3 + j] - target[i][j]).abs() < 0.1,
                    "cov[{i}][{j}] = {} vs {}",
                    cov[i * 3 + j],
                    target[i][j]
                );
            }
        }
    }

    #[test]
    fn discriminant_hand_values() {
        // S = I, pi = 1, m = 0, x = (1,0): delta = -0.5
        let model = spherical_model("a", vec![0.0, 0.0], 1.0, 1.0);
        assert_abs_diff_eq!(model.discriminant(&[1.0, 0.0]), -0.5, epsilon = 1e-12);
        // at the mean: -0.5 ln det + ln pi
        let model = spherical_model("a", vec![3.0, -1.0], 2.0, 0.25);
        let expect = -0.5 * (2.0_f64 * 2.0).ln() + 0.25_f64.ln();
        assert_abs_diff_eq!(model.discriminant(&[3.0, -1.0]), expect, epsilon = 1e-12);
    }

    #[test]
    fn discriminant_agrees_with_dense_solve() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        let k = 6;
        // random SPD covariance A A^T + I
        let a = DMatrix::from_fn(k, k, |_, _| rng.gen_range(-1.0..1.0));
        let cov = &a * a.transpose() + DMatrix::identity(k, k);
        let mean: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let model = ClassModel::new(
            "a".into(),
            mean.clone(),
            cov.row_iter()
                .flat_map(|r| r.iter().cloned().collect::<Vec<_>>())
                .collect(),
            0.5,
        )
        .unwrap();
        for _ in 0..50 {
            let x: Vec<f64> = (0..k).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let dx = DVector::from_row_slice(&x) - DVector::from_row_slice(&mean);
            let solved = cov.clone().lu().solve(&dx).unwrap();
            let expect = -0.5 * cov.determinant().ln() - 0.5 * solved.dot(&dx) + 0.5_f64.ln();
            assert_abs_diff_eq!(model.discriminant(&x), expect, epsilon = 1e-9);
        }
    }

    #[test]
    fn classify_picks_nearest_mean_and_breaks_ties_lexicographically() {
        let clf = Classifier::from_parts(
            ClassifierKind::Qda,
            vec![
                spherical_model("b", vec![1.0, 0.0], 1.0, 0.5),
                spherical_model("a", vec![-1.0, 0.0], 1.0, 0.5),
            ],
        )
        .unwrap();
        assert_eq!(clf.classify(&[-1.0, 0.2]).0, "a");
        assert_eq!(clf.classify(&[1.0, -0.4]).0, "b");
        // exact tie at the midpoint
        assert_eq!(clf.classify(&[0.0, 0.0]).0, "a");
    }

    #[test]
    fn classify_agrees_with_bayes_density_rule() {
        let mut rng = ChaCha8Rng::seed_from_u64(72);
        let clf = Classifier::from_parts(
            ClassifierKind::Qda,
            vec![
                spherical_model("a", vec![0.0, 0.0], 0.5, 0.3),
                spherical_model("b", vec![1.5, 0.5], 2.0, 0.45),
                spherical_model("c", vec![-1.0, 2.0], 1.0, 0.25),
            ],
        )
        .unwrap();
        let density = |x: &[f64], m: &[f64], s2: f64, prior: f64| {
            let k = x.len() as f64;
            let d2: f64 = x.iter().zip(m).map(|(a, b)| (a - b) * (a - b)).sum();
            prior * (2.0 * std::f64::consts::PI * s2).powf(-k / 2.0) * (-d2 / (2.0 * s2)).exp()
        };
        for _ in 0..1000 {
            let x = [rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0)];
            let (label, scores) = clf.classify(&x);
            let p = [
                ("a", density(&x, &[0.0, 0.0], 0.5, 0.3)),
                ("b", density(&x, &[1.5, 0.5], 2.0, 0.45)),
                ("c", density(&x, &[-1.0, 2.0], 1.0, 0.25)),
            ];
            let best = p
                .iter()
                .max_by(|u, v| u.1.partial_cmp(&v.1).unwrap())
                .unwrap();
            // skip numerical ties
            let sorted: Vec<f64> = {
                let mut s: Vec<f64> = scores.iter().map(|(_, v)| *v).collect();
                s.sort_by(|a, b| b.partial_cmp(a).unwrap());
                s
            };
            if sorted[0] - sorted[1] <= 1e-12 {
                continue;
            }
            assert_eq!(label, best.0, "disagreement at {x:?}");
        }
    }

    #[test]
    fn boundary_residual_changes_sign_across_the_boundary() {
        let clf = Classifier::from_parts(
            ClassifierKind::Qda,
            vec![
                spherical_model("a", vec![-1.0, 0.0], 1.0, 0.5),
                spherical_model("b", vec![1.0, 0.0], 1.0, 0.5),
            ],
        )
        .unwrap();
        // midpoint of means with equal spherical covariances: residual 0
        assert_abs_diff_eq!(
            clf.decision_boundary_residual(&[0.0, 0.0], "a", "b").unwrap(),
            0.0,
            epsilon = 1e-12
        );
        let at = |s: f64| {
            clf.decision_boundary_residual(&[s, 0.0], "a", "b")
                .unwrap()
        };
        assert!(at(-0.5) > 0.0 && at(0.5) < 0.0);
        // bisection pins the crossing at the midpoint
        let (mut lo, mut hi) = (-1.0, 1.0);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if at(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert_abs_diff_eq!(0.5 * (lo + hi), 0.0, epsilon = 1e-9);
        assert!(matches!(
            clf.decision_boundary_residual(&[0.0, 0.0], "a", "zz"),
            Err(Error::UnknownLabel(_))
        ));
    }

    #[test]
    fn lda_residual_is_affine() {
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        let mut columns = Vec::new();
        let mut labels = Vec::new();
        for i in 0..40 {
            let base = if i < 20 { 0.0 } else { 2.0 };
            columns.push(vec![
                base + rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ]);
            labels.push(if i < 20 { "a" } else { "b" });
        }
        let data = matrix(columns, &labels);
        let clf = fit(&data, ClassifierKind::Lda, None).unwrap();
        // second differences of the residual vanish along any direction
        for _ in 0..20 {
            let x: Vec<f64> = (0..3).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let d: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let f = |s: f64| {
                let p: Vec<f64> = x.iter().zip(&d).map(|(a, b)| a + s * b).collect();
                clf.decision_boundary_residual(&p, "a", "b").unwrap()
            };
            let second_diff = f(1.0) - 2.0 * f(0.0) + f(-1.0);
            assert!(second_diff.abs() <= 1e-9, "second difference {second_diff}");
        }
    }

    #[test]
    fn lda_and_qda_coincide_with_equal_covariances() {
        let mut rng = ChaCha8Rng::seed_from_u64(74);
        let cov = vec![1.3, 0.2, 0.2, 0.7];
        let qda = Classifier::from_parts(
            ClassifierKind::Qda,
            vec![
                ClassModel::new("a".into(), vec![-1.0, 0.5], cov.clone(), 0.4).unwrap(),
                ClassModel::new("b".into(), vec![1.0, -0.5], cov.clone(), 0.6).unwrap(),
            ],
        )
        .unwrap();
        let lda = Classifier::from_parts(
            ClassifierKind::Lda,
            vec![
                ClassModel::new("a".into(), vec![-1.0, 0.5], cov.clone(), 0.4).unwrap(),
                ClassModel::new("b".into(), vec![1.0, -0.5], cov, 0.6).unwrap(),
            ],
        )
        .unwrap();
        for _ in 0..500 {
            let x = [rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0)];
            assert_eq!(qda.classify(&x).0, lda.classify(&x).0);
        }
    }

    #[test]
    fn raising_a_prior_never_flips_away_from_it() {
        let mut rng = ChaCha8Rng::seed_from_u64(75);
        let make = |prior_a: f64| {
            Classifier::from_parts(
                ClassifierKind::Qda,
                vec![
                    spherical_model("a", vec![-1.0, 0.0], 1.0, prior_a),
                    spherical_model("b", vec![1.0, 0.0], 0.6, 1.0 - prior_a),
                ],
            )
            .unwrap()
        };
        let low = make(0.3);
        let high = make(0.7);
        for _ in 0..500 {
            let x = [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)];
            if low.classify(&x).0 == "a" {
                assert_eq!(high.classify(&x).0, "a");
            }
        }
    }

    #[test]
    fn spherical_covariance_reduces_to_scaled_euclidean_distance() {
        let sigma2 = 1.7;
        let model = spherical_model("a", vec![0.5, -0.25, 1.0], sigma2, 0.5);
        let x = [1.5, 0.25, -0.5];
        let d2: f64 = x
            .iter()
            .zip([0.5, -0.25, 1.0])
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        let expect = -0.5 * (3.0 * sigma2.ln()) - 0.5 * d2 / sigma2 + 0.5_f64.ln();
        assert_abs_diff_eq!(model.discriminant(&x), expect, epsilon = 1e-12);
    }
}
