//! Karcher (Fréchet) mean of a set of shapes.
//!
//! The mean minimizes the sum of squared geodesic distances on the
//! preshape sphere, with every observation re-aligned (rotation and/or
//! reparametrization) to the current estimate before each update. The
//! update is damped gradient descent along the average of the log-map
//! tangents, with step halving whenever a step would increase the
//! objective, so the recorded objective trace is always nonincreasing.

use crate::align::{align, AlignOptions};
use crate::curve::Srvf;
use crate::error::{Error, Result};
use crate::sphere::{exp_map, geodesic_distance, log_map, TangentVector};
use rayon::prelude::*;

/// Controls for the Karcher mean iteration.
#[derive(Debug, Clone)]
pub struct MeanConfig {
    /// Gradient step applied to the mean tangent.
    pub step: f64,
    /// Convergence threshold on the angle norm of the mean tangent.
    pub tol: f64,
    /// Iteration cap.
    pub max_iter: usize,
    /// Alignment applied to each observation every iteration.
    pub align: AlignOptions,
}

impl Default for MeanConfig {
    fn default() -> Self {
        MeanConfig {
            step: 0.5,
            tol: 1e-6,
            max_iter: 50,
            align: AlignOptions::default(),
        }
    }
}

impl MeanConfig {
    /// Mean on the plain preshape sphere, without any orbit alignment.
    pub fn preshape_only() -> Self {
        MeanConfig {
            align: AlignOptions::none(),
            ..MeanConfig::default()
        }
    }
}

/// Output of [`karcher_mean`].
#[derive(Debug, Clone)]
pub struct MeanResult {
    /// The mean SRVF (normalized).
    pub mu: Srvf,
    /// Log-map lifts of the aligned observations at `mu`, input order.
    pub tangents: Vec<TangentVector>,
    /// Sum of squared geodesic distances after each accepted iteration.
    pub objective_trace: Vec<f64>,
    /// The aligned copies of the inputs, input order.
    pub aligned: Vec<Srvf>,
    /// Angle norm of the mean tangent at the final iterate.
    pub residual: f64,
}

fn align_all(mu: &Srvf, qs: &[Srvf], opts: &AlignOptions) -> Result<Vec<Srvf>> {
    qs.par_iter().map(|q| align(mu, q, opts)).collect()
}

fn objective(mu: &Srvf, aligned: &[Srvf]) -> Result<f64> {
    let mut acc = 0.0;
    for q in aligned {
        let d = geodesic_distance(mu, q)?;
        acc += d * d;
    }
    Ok(acc)
}

/// Index of the observation minimizing the sum of squared sphere
/// distances to all others (the medoid), used as the initial mean.
fn medoid_index(qs: &[Srvf]) -> Result<usize> {
    if qs.len() == 1 {
        return Ok(0);
    }
    let scores: Vec<f64> = qs
        .par_iter()
        .map(|a| {
            let mut acc = 0.0;
            for b in qs {
                let d = geodesic_distance(a, b)?;
                acc += d * d;
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let mut best = 0;
    for (i, s) in scores.iter().enumerate() {
        if *s < scores[best] {
            best = i;
        }
    }
    Ok(best)
}

/// Mean tangent (1/N) sum of log_mu(q_i), summed in input order.
fn mean_tangent(mu: &Srvf, aligned: &[Srvf]) -> Result<TangentVector> {
    let tangents: Vec<TangentVector> = aligned
        .par_iter()
        .map(|q| log_map(mu, q))
        .collect::<Result<_>>()?;
    let mut mean = TangentVector::zero(mu.clone());
    let inv_n = 1.0 / aligned.len() as f64;
    for t in &tangents {
        for (acc, v) in mean.values_mut().iter_mut().zip(t.values()) {
            *acc += v * inv_n;
        }
    }
    Ok(mean)
}

/// Iteratively compute the Karcher mean of normalized SRVFs on a common
/// grid, together with the tangent lifts of the (aligned) observations.
pub fn karcher_mean(qs: &[Srvf], config: &MeanConfig) -> Result<MeanResult> {
    if qs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut mu = qs[medoid_index(qs)?].clone();
    let mut aligned = align_all(&mu, qs, &config.align)?;
    let mut obj = objective(&mu, &aligned)?;
    let mut trace = vec![obj];

    for _ in 0..config.max_iter {
        let vbar = mean_tangent(&mu, &aligned)?;
        let residual = vbar.norm_angle();
        if residual < config.tol {
            let tangents = lift_aligned(&mu, &aligned)?;
            return Ok(MeanResult {
                mu,
                tangents,
                objective_trace: trace,
                aligned,
                residual,
            });
        }

        // damped step with halving so the objective never increases
        let mut step = config.step;
        let mut accepted = false;
        for _ in 0..12 {
            let candidate = exp_map(&mu, &vbar.scaled(step));
            let cand_aligned = align_all(&candidate, qs, &config.align)?;
            let cand_obj = objective(&candidate, &cand_aligned)?;
            if cand_obj <= obj + 1e-10 {
                mu = candidate;
                aligned = cand_aligned;
                obj = cand_obj;
                trace.push(obj);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break; // no descent direction left at this resolution
        }
    }

    let vbar = mean_tangent(&mu, &aligned)?;
    let residual = vbar.norm_angle();
    let tangents = lift_aligned(&mu, &aligned)?;
    let partial = MeanResult {
        mu,
        tangents,
        objective_trace: trace,
        aligned,
        residual,
    };
    if partial.residual < config.tol {
        Ok(partial)
    } else {
        Err(Error::NoConvergence {
            iterations: config.max_iter,
            residual: partial.residual,
            partial: Box::new(partial),
        })
    }
}

fn lift_aligned(mu: &Srvf, aligned: &[Srvf]) -> Result<Vec<TangentVector>> {
    aligned
        .iter()
        .enumerate()
        .map(|(i, q)| log_map(mu, q).map_err(|e| with_index(e, i)))
        .collect()
}

fn with_index(e: Error, i: usize) -> Error {
    match e {
        Error::AntipodalPoints { angle, .. } => Error::AntipodalPoints {
            angle,
            index: Some(i),
        },
        other => other,
    }
}

/// Align each observation to `mu` and lift it to the tangent space there.
pub fn lift_to_tangent(
    mu: &Srvf,
    qs: &[Srvf],
    opts: &AlignOptions,
) -> Result<Vec<TangentVector>> {
    qs.par_iter()
        .enumerate()
        .map(|(i, q)| {
            let a = align(mu, q, opts)?;
            log_map(mu, &a).map_err(|e| with_index(e, i))
        })
        .collect()
}
