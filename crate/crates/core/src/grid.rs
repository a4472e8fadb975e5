//! Uniform-grid numerics on the parameter domain [0, 2pi].
//!
//! Every function in this crate is discretized at m+1 equispaced knots
//! t_r = 2pi r / m and vector-valued samples are stored flat, row-major:
//! sample r occupies `values[r*dim .. (r+1)*dim]`. All L2 quantities use
//! trapezoidal quadrature on this grid so that norms, inner products, and
//! integrals are mutually consistent.

use std::f64::consts::PI;

pub const DOMAIN_LEN: f64 = 2.0 * PI;

/// Knot spacing for m segments.
#[inline]
pub fn step(m: usize) -> f64 {
    DOMAIN_LEN / m as f64
}

/// The m+1 knots t_r = 2pi r / m.
pub fn knots(m: usize) -> Vec<f64> {
    let h = step(m);
    (0..=m).map(|r| r as f64 * h).collect()
}

/// Number of samples (m+1) encoded in a flat value buffer.
#[inline]
pub fn sample_count(values: &[f64], dim: usize) -> usize {
    debug_assert_eq!(values.len() % dim, 0);
    values.len() / dim
}

/// Trapezoidal weight of knot r on a grid with m segments.
#[inline]
pub fn trapezoid_weight(r: usize, m: usize) -> f64 {
    let h = step(m);
    if r == 0 || r == m {
        0.5 * h
    } else {
        h
    }
}

/// Trapezoidal approximation of the L2 inner product
/// integral of f(t).g(t) dt over [0, 2pi].
pub fn inner(f: &[f64], g: &[f64], dim: usize) -> f64 {
    debug_assert_eq!(f.len(), g.len());
    let m = sample_count(f, dim) - 1;
    let h = step(m);
    let mut acc = 0.0;
    for r in 0..=m {
        let mut dot = 0.0;
        for a in 0..dim {
            dot += f[r * dim + a] * g[r * dim + a];
        }
        acc += if r == 0 || r == m { 0.5 * dot } else { dot };
    }
    acc * h
}

/// Discrete L2 norm sqrt(<f, f>).
pub fn norm(f: &[f64], dim: usize) -> f64 {
    inner(f, f, dim).sqrt()
}

/// Cumulative trapezoidal integral of a vector-valued integrand,
/// starting from `origin`. Output has the same layout as the input.
pub fn cumulative_integral(f: &[f64], dim: usize, origin: &[f64]) -> Vec<f64> {
    let n = sample_count(f, dim);
    let h = step(n - 1);
    let mut out = vec![0.0; f.len()];
    out[..dim].copy_from_slice(origin);
    for r in 1..n {
        for a in 0..dim {
            out[r * dim + a] = out[(r - 1) * dim + a]
                + 0.5 * h * (f[(r - 1) * dim + a] + f[r * dim + a]);
        }
    }
    out
}

/// First derivative with respect to t: central differences at interior
/// knots, second-order one-sided differences at the endpoints.
pub fn derivative(f: &[f64], dim: usize) -> Vec<f64> {
    let n = sample_count(f, dim);
    debug_assert!(n >= 3);
    let m = n - 1;
    let h = step(m);
    let mut out = vec![0.0; f.len()];
    for a in 0..dim {
        out[a] = (-3.0 * f[a] + 4.0 * f[dim + a] - f[2 * dim + a]) / (2.0 * h);
        for r in 1..m {
            out[r * dim + a] = (f[(r + 1) * dim + a] - f[(r - 1) * dim + a]) / (2.0 * h);
        }
        out[m * dim + a] =
            (3.0 * f[m * dim + a] - 4.0 * f[(m - 1) * dim + a] + f[(m - 2) * dim + a]) / (2.0 * h);
    }
    out
}

/// Linear interpolation of a gridded function at parameter value t,
/// writing the dim components into `out`. t is clamped to [0, 2pi].
#[inline]
pub fn interp_at(f: &[f64], dim: usize, t: f64, out: &mut [f64]) {
    let m = sample_count(f, dim) - 1;
    let u = (t / step(m)).clamp(0.0, m as f64);
    let i = (u as usize).min(m - 1);
    let frac = u - i as f64;
    for a in 0..dim {
        out[a] = (1.0 - frac) * f[i * dim + a] + frac * f[(i + 1) * dim + a];
    }
}

/// Linear interpolation of a scalar gridded function at parameter t.
#[inline]
pub fn interp_scalar(f: &[f64], t: f64) -> f64 {
    let m = f.len() - 1;
    let u = (t / step(m)).clamp(0.0, m as f64);
    let i = (u as usize).min(m - 1);
    let frac = u - i as f64;
    (1.0 - frac) * f[i] + frac * f[i + 1]
}

/// Resample a gridded function onto a new uniform grid with
/// `new_m` segments by linear interpolation in t.
pub fn regrid(f: &[f64], dim: usize, new_m: usize) -> Vec<f64> {
    let h = step(new_m);
    let mut out = vec![0.0; (new_m + 1) * dim];
    let mut buf = vec![0.0; dim];
    for r in 0..=new_m {
        interp_at(f, dim, r as f64 * h, &mut buf);
        out[r * dim..(r + 1) * dim].copy_from_slice(&buf);
    }
    // endpoints are grid knots; copy exactly to avoid rounding drift
    out[..dim].copy_from_slice(&f[..dim]);
    let n = sample_count(f, dim);
    out[new_m * dim..].copy_from_slice(&f[(n - 1) * dim..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn trapezoid_integrates_constant_exactly() {
        let f = vec![3.0; 11];
        assert_abs_diff_eq!(inner(&f, &vec![1.0; 11], 1), 3.0 * DOMAIN_LEN, epsilon = 1e-12);
    }

    #[test]
    fn harmonics_are_orthogonal() {
        let m = 500;
        let ts = knots(m);
        let s: Vec<f64> = ts.iter().map(|t| t.sin()).collect();
        let c: Vec<f64> = ts.iter().map(|t| t.cos()).collect();
        assert!(inner(&s, &c, 1).abs() < 1e-6);
    }

    #[test]
    fn derivative_exact_for_linear() {
        let m = 10;
        let f: Vec<f64> = knots(m).iter().map(|t| 2.0 * t + 1.0).collect();
        let d = derivative(&f, 1);
        for v in d {
            assert_abs_diff_eq!(v, 2.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn derivative_second_order_on_smooth_function() {
        let err = |m: usize| -> f64 {
            let f: Vec<f64> = knots(m).iter().map(|t| t.sin()).collect();
            let d = derivative(&f, 1);
            knots(m)
                .iter()
                .zip(&d)
                .map(|(t, v)| (v - t.cos()).abs())
                .fold(0.0, f64::max)
        };
        let (e1, e2) = (err(100), err(200));
        assert!(e2 < e1 / 3.0, "expected ~4x error drop, got {e1} -> {e2}");
    }

    #[test]
    fn cumulative_integral_recovers_antiderivative() {
        let m = 200;
        let f: Vec<f64> = knots(m).iter().map(|t| t.cos()).collect();
        let integral = cumulative_integral(&f, 1, &[0.0]);
        for (t, v) in knots(m).iter().zip(&integral) {
            assert_abs_diff_eq!(*v, t.sin(), epsilon = 1e-3);
        }
    }

    #[test]
    fn interp_hits_knots_and_midpoints() {
        let f = vec![0.0, 1.0, 4.0];
        let mut out = [0.0];
        interp_at(&f, 1, step(2) * 0.5, &mut out);
        assert_abs_diff_eq!(out[0], 0.5, epsilon = 1e-12);
        interp_at(&f, 1, step(2) * 2.0, &mut out);
        assert_abs_diff_eq!(out[0], 4.0, epsilon = 1e-12);
    }
}
