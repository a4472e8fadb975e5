//! Geometry of the preshape hypersphere.
//!
//! Length-normalized SRVFs form the sphere of L2 radius sqrt(2pi) inside
//! L2([0,2pi], R^n). Angle arguments in the exp/log maps and geodesic
//! distances use the normalized inner product <.,.>/(2pi), i.e. the sphere
//! is treated as a unit sphere and tangent norms are reported as angles.

use crate::curve::Srvf;
use crate::error::{Error, Result};
use crate::grid;

/// Angle beyond which two points count as antipodal and the log map is
/// rejected as ill-conditioned.
pub const ANTIPODAL_TOLERANCE: f64 = 1e-6;

/// A tangent vector to the preshape sphere at a given basepoint.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    values: Vec<f64>,
    basepoint: Srvf,
}

impl TangentVector {
    /// Wrap raw tangent samples at `basepoint`. No orthogonality check is
    /// performed here; use [`project_tangent`] to enforce tangency.
    pub fn new(values: Vec<f64>, basepoint: Srvf) -> Result<Self> {
        if values.len() != basepoint.values().len() {
            return Err(Error::DimensionMismatch(format!(
                "tangent has {} values, basepoint has {}",
                values.len(),
                basepoint.values().len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteData);
        }
        Ok(TangentVector { values, basepoint })
    }

    /// The zero vector at `basepoint`.
    pub fn zero(basepoint: Srvf) -> Self {
        TangentVector {
            values: vec![0.0; basepoint.values().len()],
            basepoint,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn basepoint(&self) -> &Srvf {
        &self.basepoint
    }

    pub fn dim(&self) -> usize {
        self.basepoint.dim()
    }

    pub fn samples(&self) -> usize {
        self.basepoint.samples()
    }

    /// L2 norm of the tangent function.
    pub fn norm_l2(&self) -> f64 {
        grid::norm(&self.values, self.dim())
    }

    /// Norm in the unit-sphere metric (an angle): |v|_L2 / sqrt(2pi).
    pub fn norm_angle(&self) -> f64 {
        self.norm_l2() / grid::DOMAIN_LEN.sqrt()
    }

    /// Scale the tangent vector in place by `factor`.
    pub fn scaled(&self, factor: f64) -> TangentVector {
        TangentVector {
            values: self.values.iter().map(|v| v * factor).collect(),
            basepoint: self.basepoint.clone(),
        }
    }

    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }
}

/// Discrete L2 inner product of two equally discretized function samples.
pub fn inner(f: &Srvf, g: &Srvf) -> Result<f64> {
    check_same_grid(f, g)?;
    Ok(grid::inner(f.values(), g.values(), f.dim()))
}

fn check_same_grid(f: &Srvf, g: &Srvf) -> Result<()> {
    if f.dim() != g.dim() || f.samples() != g.samples() {
        return Err(Error::DimensionMismatch(format!(
            "grids differ: {}x{} vs {}x{}",
            f.samples(),
            f.dim(),
            g.samples(),
            g.dim()
        )));
    }
    Ok(())
}

/// Project an arbitrary function sample onto the tangent space at q:
/// w - (<w,q>/<q,q>) q.
pub fn project_tangent(q: &Srvf, w: &[f64]) -> Result<TangentVector> {
    if w.len() != q.values().len() {
        return Err(Error::DimensionMismatch(format!(
            "sample has {} values, basepoint has {}",
            w.len(),
            q.values().len()
        )));
    }
    let coeff = grid::inner(w, q.values(), q.dim()) / q.squared_norm();
    let values = w
        .iter()
        .zip(q.values())
        .map(|(wi, qi)| wi - coeff * qi)
        .collect();
    Ok(TangentVector {
        values,
        basepoint: q.clone(),
    })
}

/// Exponential map on the sphere: follow the great circle from q in the
/// direction of v for arc length |v| (angle). Returns a normalized SRVF.
pub fn exp_map(q: &Srvf, v: &TangentVector) -> Srvf {
    debug_assert!(q.is_normalized(), "exp_map basepoint must be normalized");
    let norm_l2 = v.norm_l2();
    let theta = norm_l2 / grid::DOMAIN_LEN.sqrt();
    if theta <= 1e-12 {
        let mut out = q.clone();
        out.set_normalized(true);
        return out;
    }
    let (sin_t, cos_t) = theta.sin_cos();
    let dir_scale = sin_t * grid::DOMAIN_LEN.sqrt() / norm_l2;
    let values = q
        .values()
        .iter()
        .zip(v.values())
        .map(|(qi, vi)| cos_t * qi + dir_scale * vi)
        .collect();
    let mut out = Srvf::with_flag(values, q.dim(), false).expect("finite by construction");
    out.set_normalized(true);
    out
}

/// Inverse of the exponential map: the initial velocity of the great
/// circle from q1 to q2, with |result| (angle norm) equal to the geodesic
/// distance.
pub fn log_map(q1: &Srvf, q2: &Srvf) -> Result<TangentVector> {
    check_same_grid(q1, q2)?;
    let cos_theta = (grid::inner(q1.values(), q2.values(), q1.dim()) / grid::DOMAIN_LEN)
        .clamp(-1.0, 1.0);
    let theta = cos_theta.acos();
    if theta < 1e-12 {
        return Ok(TangentVector::zero(q1.clone()));
    }
    if theta > std::f64::consts::PI - ANTIPODAL_TOLERANCE {
        return Err(Error::AntipodalPoints {
            angle: theta,
            index: None,
        });
    }
    let scale = theta / theta.sin();
    let values = q2
        .values()
        .iter()
        .zip(q1.values())
        .map(|(q2i, q1i)| scale * (q2i - cos_theta * q1i))
        .collect();
    Ok(TangentVector {
        values,
        basepoint: q1.clone(),
    })
}

/// Great-circle distance on the preshape sphere, in [0, pi].
///
/// Computed as 2 atan2(|q1 - q2|, |q1 + q2|), which equals
/// arccos(<q1,q2>/2pi) in exact arithmetic but stays fully accurate at
/// both ends of the range, where arccos loses half the significant digits.
pub fn geodesic_distance(q1: &Srvf, q2: &Srvf) -> Result<f64> {
    check_same_grid(q1, q2)?;
    let dim = q1.dim();
    let n = q1.samples();
    let mut diff = vec![0.0; q1.values().len()];
    let mut sum = vec![0.0; q1.values().len()];
    for r in 0..n * dim {
        diff[r] = q1.values()[r] - q2.values()[r];
        sum[r] = q1.values()[r] + q2.values()[r];
    }
    Ok(2.0 * grid::norm(&diff, dim).atan2(grid::norm(&sum, dim)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::DOMAIN_LEN;
    use crate::testutil::random_srvf;
    use approx::assert_abs_diff_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn inner_of_normalized_is_two_pi() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let q = random_srvf(&mut rng, 120, 3);
        assert_abs_diff_eq!(inner(&q, &q).unwrap(), DOMAIN_LEN, epsilon = 1e-9);
    }

    #[test]
    fn inner_symmetric_and_bilinear() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let f = random_srvf(&mut rng, 40, 2);
            let g = random_srvf(&mut rng, 40, 2);
            assert_abs_diff_eq!(inner(&f, &g).unwrap(), inner(&g, &f).unwrap(), epsilon = 1e-12);
        }
    }

    #[test]
    fn inner_rejects_mismatched_grids() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = random_srvf(&mut rng, 40, 2);
        let g = random_srvf(&mut rng, 41, 2);
        assert!(matches!(inner(&f, &g), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn project_tangent_kills_basepoint_component() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let q = random_srvf(&mut rng, 80, 3);
        // projecting q itself gives 0
        let v = project_tangent(&q, &q.values().to_vec()).unwrap();
        assert!(v.norm_l2() < 1e-10);
        // random w becomes orthogonal
        for _ in 0..20 {
            let w: Vec<f64> = (0..q.values().len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let v = project_tangent(&q, &w).unwrap();
            let ip = grid::inner(v.values(), q.values(), q.dim());
            assert!(ip.abs() <= 1e-10, "tangency violated: {ip}");
            // idempotent
            let v2 = project_tangent(&q, v.values()).unwrap();
            for (a, b) in v.values().iter().zip(v2.values()) {
                assert_abs_diff_eq!(a, b, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let q = random_srvf(&mut rng, 60, 2);
        let out = exp_map(&q, &TangentVector::zero(q.clone()));
        for (a, b) in q.values().iter().zip(out.values()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-15);
        }
    }

    #[test]
    fn exp_map_stays_on_sphere() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let q = random_srvf(&mut rng, 90, 3);
        for _ in 0..20 {
            let w: Vec<f64> = (0..q.values().len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let v = project_tangent(&q, &w).unwrap();
            let out = exp_map(&q, &v);
            assert_abs_diff_eq!(out.squared_norm(), DOMAIN_LEN, epsilon = 1e-9);
        }
    }

    #[test]
    fn exp_log_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let q = random_srvf(&mut rng, 70, 2);
        for _ in 0..20 {
            let w: Vec<f64> = (0..q.values().len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let mut v = project_tangent(&q, &w).unwrap();
            // keep the angle within (0, pi/2]
            let ang = v.norm_angle();
            v = v.scaled(rng.gen_range(0.05..1.0) * std::f64::consts::FRAC_PI_2 / ang);
            let q2 = exp_map(&q, &v);
            let back = log_map(&q, &q2).unwrap();
            let mut max_err = 0.0_f64;
            for (a, b) in v.values().iter().zip(back.values()) {
                max_err = max_err.max((a - b).abs());
            }
            assert!(max_err <= 1e-8, "exp/log round trip error {max_err}");
            // and the other way: log then exp
            let forward = exp_map(&q, &back);
            for (a, b) in q2.values().iter().zip(forward.values()) {
                assert_abs_diff_eq!(a, b, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn log_map_norm_is_distance() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let q1 = random_srvf(&mut rng, 50, 3);
            let q2 = random_srvf(&mut rng, 50, 3);
            let d = geodesic_distance(&q1, &q2).unwrap();
            if d > std::f64::consts::PI - 1e-3 {
                continue;
            }
            let v = log_map(&q1, &q2).unwrap();
            assert_abs_diff_eq!(v.norm_angle(), d, epsilon = 1e-9);
        }
    }

    #[test]
    fn log_map_of_same_point_is_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let q = random_srvf(&mut rng, 50, 2);
        assert!(log_map(&q, &q).unwrap().norm_l2() < 1e-12);
    }

    #[test]
    fn log_map_rejects_antipodes() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let q = random_srvf(&mut rng, 50, 2);
        let anti =
            Srvf::with_flag(q.values().iter().map(|v| -v).collect(), 2, true).unwrap();
        assert!(matches!(
            log_map(&q, &anti),
            Err(Error::AntipodalPoints { .. })
        ));
        assert_abs_diff_eq!(
            geodesic_distance(&q, &anti).unwrap(),
            std::f64::consts::PI,
            epsilon = 1e-9
        );
    }

    #[test]
    fn distance_symmetry_and_triangle_inequality() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let a = random_srvf(&mut rng, 20, 2);
            let b = random_srvf(&mut rng, 20, 2);
            let c = random_srvf(&mut rng, 20, 2);
            let dab = geodesic_distance(&a, &b).unwrap();
            let dba = geodesic_distance(&b, &a).unwrap();
            assert_abs_diff_eq!(dab, dba, epsilon = 1e-12);
            let dac = geodesic_distance(&a, &c).unwrap();
            let dcb = geodesic_distance(&c, &b).unwrap();
            assert!(dab <= dac + dcb + 1e-12);
        }
    }

    #[test]
    fn distance_zero_on_identical() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let q = random_srvf(&mut rng, 30, 3);
        assert_abs_diff_eq!(geodesic_distance(&q, &q).unwrap(), 0.0, epsilon = 1e-12);
    }
}
