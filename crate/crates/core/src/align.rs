//! Rotation and reparametrization alignment on the preshape sphere.
//!
//! Shapes are orbits of normalized SRVFs under the actions of SO(n)
//! (pointwise rotation) and of orientation-preserving reparametrizations
//! (gamma acts as (q o gamma) sqrt(gamma')). This module solves the two
//! alignment subproblems — Procrustes rotation via SVD, elastic
//! reparametrization via dynamic programming — and alternates them to
//! compute shape-space distances between orbits.

use crate::curve::{normalize_length, Srvf};
use crate::error::{Error, Result};
use crate::grid;
use crate::sphere::geodesic_distance;
use nalgebra::DMatrix;

pub mod dp;

/// Alignment stops alternating once an iteration improves the geodesic
/// distance by less than this.
pub const MIN_IMPROVEMENT: f64 = 1e-8;

/// Largest singular value below which the Procrustes cross-covariance is
/// treated as rank-0 and the identity rotation returned.
pub const DEGENERATE_COVARIANCE: f64 = 1e-9;

/// Options controlling the alignment alternation.
#[derive(Debug, Clone)]
pub struct AlignOptions {
    /// Optimize over SO(n).
    pub rotation: bool,
    /// Optimize over reparametrizations.
    pub reparam: bool,
    /// Number of rotation/reparametrization alternations.
    pub iters: usize,
    /// Lattice size for the reparametrization dynamic program.
    pub grid: usize,
}

impl Default for AlignOptions {
    fn default() -> Self {
        AlignOptions {
            rotation: true,
            reparam: true,
            iters: 2,
            grid: 50,
        }
    }
}

impl AlignOptions {
    /// Rotation-only alignment (no elastic matching).
    pub fn rigid() -> Self {
        AlignOptions {
            reparam: false,
            ..AlignOptions::default()
        }
    }

    /// No alignment at all; orbit operations degenerate to sphere ones.
    pub fn none() -> Self {
        AlignOptions {
            rotation: false,
            reparam: false,
            ..AlignOptions::default()
        }
    }
}

/// An element of SO(n), stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Rotation {
    matrix: Vec<f64>,
    dim: usize,
}

impl Rotation {
    /// Validate and wrap an n x n rotation matrix (row-major).
    pub fn new(matrix: Vec<f64>, dim: usize) -> Result<Self> {
        if matrix.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} entries, expected {}",
                matrix.len(),
                dim * dim
            )));
        }
        let r = Rotation { matrix, dim };
        // O^T O = I
        for i in 0..dim {
            for j in 0..dim {
                let mut dot = 0.0;
                for k in 0..dim {
                    dot += r.matrix[k * dim + i] * r.matrix[k * dim + j];
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                if (dot - expect).abs() > 1e-10 {
                    return Err(Error::DimensionMismatch(
                        "matrix is not orthogonal".into(),
                    ));
                }
            }
        }
        if (r.det() - 1.0).abs() > 1e-10 {
            return Err(Error::DimensionMismatch(
                "matrix is not special orthogonal (det != +1)".into(),
            ));
        }
        Ok(r)
    }

    pub fn identity(dim: usize) -> Self {
        let mut matrix = vec![0.0; dim * dim];
        for i in 0..dim {
            matrix[i * dim + i] = 1.0;
        }
        Rotation { matrix, dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &[f64] {
        &self.matrix
    }

    pub fn det(&self) -> f64 {
        let m = &self.matrix;
        match self.dim {
            2 => m[0] * m[3] - m[1] * m[2],
            3 => {
                m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6])
                    + m[2] * (m[3] * m[7] - m[4] * m[6])
            }
            _ => unreachable!("dim is validated to 2 or 3"),
        }
    }

    pub fn transpose(&self) -> Rotation {
        let mut matrix = vec![0.0; self.dim * self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                matrix[j * self.dim + i] = self.matrix[i * self.dim + j];
            }
        }
        Rotation {
            matrix,
            dim: self.dim,
        }
    }

    /// Matrix product self * other.
    pub fn compose(&self, other: &Rotation) -> Rotation {
        debug_assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut matrix = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0.0;
                for k in 0..n {
                    acc += self.matrix[i * n + k] * other.matrix[k * n + j];
                }
                matrix[i * n + j] = acc;
            }
        }
        Rotation { matrix, dim: n }
    }

    #[inline]
    fn apply_point(&self, p: &[f64], out: &mut [f64]) {
        let n = self.dim;
        for i in 0..n {
            let mut acc = 0.0;
            for k in 0..n {
                acc += self.matrix[i * n + k] * p[k];
            }
            out[i] = acc;
        }
    }

    /// Planar rotation by `angle` radians (n = 2).
    pub fn planar(angle: f64) -> Rotation {
        let (s, c) = angle.sin_cos();
        Rotation {
            matrix: vec![c, -s, s, c],
            dim: 2,
        }
    }
}

/// A discretized orientation-preserving reparametrization of [0, 2pi]:
/// nondecreasing samples with exact boundary values.
#[derive(Debug, Clone, PartialEq)]
pub struct Reparametrization {
    gamma: Vec<f64>,
}

impl Reparametrization {
    pub fn new(gamma: Vec<f64>) -> Result<Self> {
        if gamma.len() < 3 {
            return Err(Error::TooFewSamples {
                got: gamma.len(),
                need: 3,
            });
        }
        if gamma.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteData);
        }
        if gamma[0] != 0.0 || *gamma.last().unwrap() != grid::DOMAIN_LEN {
            return Err(Error::NonMonotoneGamma(
                "boundary values must be exactly 0 and 2pi".into(),
            ));
        }
        if gamma.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::NonMonotoneGamma("samples decrease".into()));
        }
        Ok(Reparametrization { gamma })
    }

    pub fn identity(m: usize) -> Self {
        let mut gamma = grid::knots(m);
        gamma[0] = 0.0;
        gamma[m] = grid::DOMAIN_LEN;
        Reparametrization { gamma }
    }

    pub fn values(&self) -> &[f64] {
        &self.gamma
    }

    pub fn segments(&self) -> usize {
        self.gamma.len() - 1
    }

    /// Composition self o inner, sampled on inner's grid.
    pub fn compose(&self, inner: &Reparametrization) -> Reparametrization {
        let mut gamma: Vec<f64> = inner
            .gamma
            .iter()
            .map(|&s| grid::interp_scalar(&self.gamma, s))
            .collect();
        gamma[0] = 0.0;
        *gamma.last_mut().unwrap() = grid::DOMAIN_LEN;
        Reparametrization { gamma }
    }

    /// Resample gamma onto a grid with `m` segments.
    pub fn regrid(&self, m: usize) -> Reparametrization {
        let mut gamma: Vec<f64> = grid::knots(m)
            .into_iter()
            .map(|t| grid::interp_scalar(&self.gamma, t))
            .collect();
        gamma[0] = 0.0;
        gamma[m] = grid::DOMAIN_LEN;
        Reparametrization { gamma }
    }

    /// Largest deviation from the identity map.
    pub fn max_identity_deviation(&self) -> f64 {
        let m = self.segments();
        self.gamma
            .iter()
            .zip(grid::knots(m))
            .map(|(g, t)| (g - t).abs())
            .fold(0.0, f64::max)
    }
}

/// Pointwise rotation action O q(t).
pub fn act_rotation(rotation: &Rotation, q: &Srvf) -> Result<Srvf> {
    if rotation.dim() != q.dim() {
        return Err(Error::DimensionMismatch(format!(
            "rotation is {}x{}, SRVF is {}-dimensional",
            rotation.dim(),
            rotation.dim(),
            q.dim()
        )));
    }
    let dim = q.dim();
    let mut out = q.clone();
    let mut buf = vec![0.0; dim];
    for r in 0..q.samples() {
        rotation.apply_point(q.point(r), &mut buf);
        out.values_mut()[r * dim..(r + 1) * dim].copy_from_slice(&buf);
    }
    Ok(out)
}

/// Reparametrization action (q o gamma) sqrt(gamma') without the final
/// renormalization. gamma' is estimated by the crate's finite-difference
/// scheme; tiny negative estimates at the endpoints are clamped to 0.
pub fn act_reparam_raw(gamma: &Reparametrization, q: &Srvf) -> Result<Srvf> {
    let m = q.segments();
    let g = if gamma.segments() == m {
        gamma.clone()
    } else {
        gamma.regrid(m)
    };
    let dim = q.dim();
    let gdot = grid::derivative(g.values(), 1);
    let mut values = vec![0.0; q.values().len()];
    let mut buf = vec![0.0; dim];
    for r in 0..=m {
        grid::interp_at(q.values(), dim, g.values()[r], &mut buf);
        let scale = gdot[r].max(0.0).sqrt();
        for a in 0..dim {
            values[r * dim + a] = buf[a] * scale;
        }
    }
    Srvf::new(values, dim)
}

/// Reparametrization action followed by projection back onto the preshape
/// sphere (the discrete action breaks the norm constraint at O(1/m)).
pub fn act_reparam(gamma: &Reparametrization, q: &Srvf) -> Result<Srvf> {
    normalize_length(&act_reparam_raw(gamma, q)?)
}

/// Result of a Procrustes rotation alignment.
#[derive(Debug, Clone)]
pub struct RotationAlignment {
    pub rotation: Rotation,
    pub aligned: Srvf,
    /// Set when the cross-covariance was numerically rank-0 and the
    /// identity rotation was returned instead of an SVD solution.
    pub degenerate: bool,
}

/// Best rotation of q onto q_ref: argmin over SO(n) of |q_ref - O q|^2,
/// solved from the SVD of the weighted cross-covariance.
pub fn optimal_rotation(q_ref: &Srvf, q: &Srvf) -> Result<RotationAlignment> {
    if q_ref.dim() != q.dim() || q_ref.samples() != q.samples() {
        return Err(Error::DimensionMismatch(
            "rotation alignment needs a common grid".into(),
        ));
    }
    let dim = q.dim();
    let m = q.segments();
    let mut cross = DMatrix::<f64>::zeros(dim, dim);
    for r in 0..=m {
        let w = grid::trapezoid_weight(r, m);
        let (pr, ps) = (q_ref.point(r), q.point(r));
        for i in 0..dim {
            for j in 0..dim {
                cross[(i, j)] += w * pr[i] * ps[j];
            }
        }
    }
    let svd = cross.svd(true, true);
    let max_sv = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    if max_sv <= DEGENERATE_COVARIANCE {
        return Ok(RotationAlignment {
            rotation: Rotation::identity(dim),
            aligned: q.clone(),
            degenerate: true,
        });
    }
    let u = svd.u.as_ref().expect("svd with u");
    let v_t = svd.v_t.as_ref().expect("svd with v_t");
    let mut rot = u * v_t;
    if rot.determinant() < 0.0 {
        // flip the column of U paired with the smallest singular value
        let mut min_idx = 0;
        for (i, sv) in svd.singular_values.iter().enumerate() {
            if *sv < svd.singular_values[min_idx] {
                min_idx = i;
            }
        }
        let mut u_fixed = u.clone();
        for i in 0..dim {
            u_fixed[(i, min_idx)] = -u_fixed[(i, min_idx)];
        }
        rot = u_fixed * v_t;
    }
    let rotation = Rotation {
        matrix: rot.transpose().iter().cloned().collect(),
        dim,
    };
    let aligned = act_rotation(&rotation, q)?;
    Ok(RotationAlignment {
        rotation,
        aligned,
        degenerate: false,
    })
}

/// Moving-average smoothing of warp samples with pinned endpoints; the
/// window shrinks near the boundary and monotonicity is re-enforced.
fn smooth_gamma(gamma: &[f64], half_window: usize) -> Vec<f64> {
    let m = gamma.len() - 1;
    let mut out = vec![0.0; gamma.len()];
    out[m] = grid::DOMAIN_LEN;
    for r in 1..m {
        let k = half_window.min(r).min(m - r);
        let mut acc = 0.0;
        for v in &gamma[r - k..=r + k] {
            acc += v;
        }
        out[r] = acc / (2 * k + 1) as f64;
    }
    for r in 1..=m {
        if out[r] < out[r - 1] {
            out[r] = out[r - 1];
        }
    }
    out
}

/// Best reparametrization of q onto q_ref over a lattice of piecewise
/// linear paths, found by dynamic programming. The lattice quantizes the
/// warp to grid nodes, so a few smoothed variants of the DP path are also
/// evaluated and the realized best is kept. Returns the warp and the
/// realigned, renormalized SRVF; falls back to the identity warp if the
/// realized distance would otherwise increase.
pub fn optimal_reparam(
    q_ref: &Srvf,
    q: &Srvf,
    grid_size: usize,
) -> Result<(Reparametrization, Srvf)> {
    if grid_size < 8 {
        return Err(Error::GridTooSmall(grid_size));
    }
    if q_ref.dim() != q.dim() || q_ref.samples() != q.samples() {
        return Err(Error::DimensionMismatch(
            "reparametrization alignment needs a common grid".into(),
        ));
    }
    let problem = dp::DpProblem::new(q_ref, q, grid_size);
    let (gamma_lattice, _cost) = problem.solve();
    let raw = Reparametrization::new(gamma_lattice)?.regrid(q.segments());

    let mut best: Option<(Reparametrization, Srvf, f64)> = None;
    let windows = [0usize, 1, 2, 4];
    for w in windows {
        let gamma = if w == 0 {
            raw.clone()
        } else {
            Reparametrization::new(smooth_gamma(raw.values(), w))?
        };
        let warped = act_reparam(&gamma, q)?;
        let d = geodesic_distance(q_ref, &warped)?;
        if best.as_ref().is_none_or(|(_, _, bd)| d < *bd) {
            best = Some((gamma, warped, d));
        }
    }
    let (gamma, warped, after) = best.expect("at least one candidate");
    let before = geodesic_distance(q_ref, q)?;
    if after <= before {
        Ok((gamma, warped))
    } else {
        let identity = Reparametrization::identity(q.segments());
        Ok((identity, normalize_length(q)?))
    }
}

/// Alternate rotation and reparametrization alignment of q onto q_ref.
/// The geodesic distance to q_ref is nonincreasing across iterations.
pub fn align(q_ref: &Srvf, q: &Srvf, opts: &AlignOptions) -> Result<Srvf> {
    let mut best = q.clone();
    let mut best_dist = geodesic_distance(q_ref, &best)?;
    for _ in 0..opts.iters {
        let start_dist = best_dist;
        let mut current = best.clone();
        if opts.rotation {
            current = optimal_rotation(q_ref, &current)?.aligned;
        }
        if opts.reparam {
            current = optimal_reparam(q_ref, &current, opts.grid)?.1;
        }
        let d = geodesic_distance(q_ref, &current)?;
        if d < best_dist {
            best = current;
            best_dist = d;
        }
        if start_dist - best_dist < MIN_IMPROVEMENT {
            break;
        }
    }
    Ok(best)
}

/// Distance between the shape orbits of q1 and q2: geodesic distance
/// after aligning q2 onto q1.
pub fn shape_distance(q1: &Srvf, q2: &Srvf, opts: &AlignOptions) -> Result<f64> {
    let aligned = align(q1, q2, opts)?;
    geodesic_distance(q1, &aligned)
}
