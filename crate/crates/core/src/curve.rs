//! Open curves in R^2 / R^3 and the square-root velocity transform.
//!
//! A [`Curve`] is an ordered list of m+1 point samples on the fixed
//! parameter domain [0, 2pi]. Its square-root velocity function (SRVF)
//! is q(t) = beta'(t) / sqrt(|beta'(t)|); after length normalization the
//! SRVF lies on the hypersphere of L2 radius sqrt(2pi), which is where
//! all downstream geometry happens.

use crate::error::{Error, Result};
use crate::grid;

/// Speed floor below which the curve is treated as locally stationary
/// and its SRVF sample set to zero.
pub const SPEED_EPSILON: f64 = 1e-8;

/// An open curve sampled at m+1 equispaced parameter knots.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    points: Vec<f64>,
    dim: usize,
}

impl Curve {
    /// Build a curve from flat row-major point data (`samples * dim` values).
    pub fn new(points: Vec<f64>, dim: usize) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(Error::InvalidDimension(dim));
        }
        if points.len() % dim != 0 {
            return Err(Error::DimensionMismatch(format!(
                "{} values do not divide into {}-dimensional points",
                points.len(),
                dim
            )));
        }
        let n = points.len() / dim;
        if n < 3 {
            return Err(Error::TooFewSamples { got: n, need: 3 });
        }
        if points.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteData);
        }
        let curve = Curve { points, dim };
        if curve.chord_lengths().last().copied().unwrap_or(0.0) <= 0.0 {
            return Err(Error::ZeroLengthCurve);
        }
        Ok(curve)
    }

    /// Build a curve from per-point rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.first().map_or(0, Vec::len);
        let mut flat = Vec::with_capacity(rows.len() * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch(
                    "rows have inconsistent lengths".into(),
                ));
            }
            flat.extend_from_slice(row);
        }
        Curve::new(flat, dim)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of point samples (m+1).
    pub fn samples(&self) -> usize {
        self.points.len() / self.dim
    }

    /// Number of segments m.
    pub fn segments(&self) -> usize {
        self.samples() - 1
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn point(&self, r: usize) -> &[f64] {
        &self.points[r * self.dim..(r + 1) * self.dim]
    }

    /// Cumulative chord lengths, one entry per sample (first is 0).
    fn chord_lengths(&self) -> Vec<f64> {
        let n = self.samples();
        let mut acc = Vec::with_capacity(n);
        acc.push(0.0);
        for r in 1..n {
            let mut seg = 0.0;
            for a in 0..self.dim {
                let d = self.points[r * self.dim + a] - self.points[(r - 1) * self.dim + a];
                seg += d * d;
            }
            acc.push(acc[r - 1] + seg.sqrt());
        }
        acc
    }

    /// Discrete (polygonal) length of the curve.
    pub fn length(&self) -> f64 {
        self.chord_lengths().last().copied().unwrap_or(0.0)
    }
}

/// A discretized square-root velocity function.
#[derive(Debug, Clone, PartialEq)]
pub struct Srvf {
    values: Vec<f64>,
    dim: usize,
    normalized: bool,
}

impl Srvf {
    /// Wrap raw SRVF samples (not length-normalized).
    pub fn new(values: Vec<f64>, dim: usize) -> Result<Self> {
        Self::with_flag(values, dim, false)
    }

    /// Wrap raw samples with an explicit normalization flag. The flag is
    /// verified against the discrete norm when set.
    pub fn with_flag(values: Vec<f64>, dim: usize, normalized: bool) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(Error::InvalidDimension(dim));
        }
        if values.len() % dim != 0 {
            return Err(Error::DimensionMismatch(format!(
                "{} values do not divide into {}-dimensional samples",
                values.len(),
                dim
            )));
        }
        if values.len() / dim < 3 {
            return Err(Error::TooFewSamples {
                got: values.len() / dim,
                need: 3,
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteData);
        }
        let q = Srvf {
            values,
            dim,
            normalized,
        };
        if normalized && (q.squared_norm() - grid::DOMAIN_LEN).abs() > 1e-9 {
            return Err(Error::ZeroNorm);
        }
        Ok(q)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn samples(&self) -> usize {
        self.values.len() / self.dim
    }

    pub fn segments(&self) -> usize {
        self.samples() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn point(&self, r: usize) -> &[f64] {
        &self.values[r * self.dim..(r + 1) * self.dim]
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Discrete squared L2 norm (equals 2pi when normalized).
    pub fn squared_norm(&self) -> f64 {
        grid::inner(&self.values, &self.values, self.dim)
    }

    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub(crate) fn set_normalized(&mut self, flag: bool) {
        self.normalized = flag;
    }
}

/// Re-sample a curve to m+1 points spaced uniformly in arc length.
/// Endpoints are preserved exactly.
pub fn resample(curve: &Curve, m: usize) -> Result<Curve> {
    if m < 2 {
        return Err(Error::TooFewSamples { got: m + 1, need: 3 });
    }
    let dim = curve.dim();
    let acc = curve.chord_lengths();
    let total = *acc.last().unwrap();
    if total <= 0.0 {
        return Err(Error::ZeroLengthCurve);
    }
    let n_old = curve.samples();
    let mut out = vec![0.0; (m + 1) * dim];
    out[..dim].copy_from_slice(curve.point(0));
    out[m * dim..].copy_from_slice(curve.point(n_old - 1));
    let mut seg = 0usize;
    for k in 1..m {
        let target = total * k as f64 / m as f64;
        while seg + 2 < n_old && acc[seg + 1] < target {
            seg += 1;
        }
        let span = acc[seg + 1] - acc[seg];
        let frac = if span > 0.0 {
            (target - acc[seg]) / span
        } else {
            0.0
        };
        let (p0, p1) = (curve.point(seg), curve.point(seg + 1));
        for a in 0..dim {
            out[k * dim + a] = (1.0 - frac) * p0[a] + frac * p1[a];
        }
    }
    Curve::new(out, dim)
}

/// Square-root velocity transform q = beta' / sqrt(|beta'|).
///
/// Samples where the estimated speed falls below [`SPEED_EPSILON`] map to
/// zero. The result is not length-normalized.
pub fn to_srvf(curve: &Curve) -> Srvf {
    let dim = curve.dim();
    let mut deriv = grid::derivative(curve.points(), dim);
    let n = curve.samples();
    for r in 0..n {
        let speed: f64 = (0..dim)
            .map(|a| deriv[r * dim + a] * deriv[r * dim + a])
            .sum::<f64>()
            .sqrt();
        let scale = if speed < SPEED_EPSILON {
            0.0
        } else {
            1.0 / speed.sqrt()
        };
        for a in 0..dim {
            deriv[r * dim + a] *= scale;
        }
    }
    Srvf {
        values: deriv,
        dim,
        normalized: false,
    }
}

/// Invert the SRVF transform: beta(t) = origin + integral of q|q| ds.
pub fn from_srvf(q: &Srvf, origin: &[f64]) -> Result<Curve> {
    let dim = q.dim();
    if origin.len() != dim {
        return Err(Error::DimensionMismatch(format!(
            "origin has {} components, SRVF is {}-dimensional",
            origin.len(),
            dim
        )));
    }
    let n = q.samples();
    let mut integrand = vec![0.0; n * dim];
    for r in 0..n {
        let mag: f64 = (0..dim)
            .map(|a| q.values[r * dim + a] * q.values[r * dim + a])
            .sum::<f64>()
            .sqrt();
        for a in 0..dim {
            integrand[r * dim + a] = q.values[r * dim + a] * mag;
        }
    }
    let points = grid::cumulative_integral(&integrand, dim, origin);
    Curve::new(points, dim)
}

/// Scale an SRVF so its discrete squared norm equals 2pi (curve length
/// 2pi), placing it on the preshape sphere.
pub fn normalize_length(q: &Srvf) -> Result<Srvf> {
    let sq = q.squared_norm();
    if sq.sqrt() < SPEED_EPSILON {
        return Err(Error::ZeroNorm);
    }
    let scale = (grid::DOMAIN_LEN / sq).sqrt();
    let values = q.values.iter().map(|v| v * scale).collect();
    Ok(Srvf {
        values,
        dim: q.dim,
        normalized: true,
    })
}
