//! Dynamic program for elastic reparametrization matching.
//!
//! The warp gamma is restricted to piecewise-linear nondecreasing paths on
//! a (grid+1) x (grid+1) lattice whose edges come from a fixed set of
//! gcd-reduced slope candidates. The cost of an edge is the trapezoidal
//! approximation of the matching energy
//! integral of |q_ref(t) - sqrt(gamma'(t)) q(gamma(t))|^2 dt
//! over the parameter span of the edge, with gamma linear on the edge.
//! Both SRVFs are resampled onto the lattice resolution up front, so edge
//! costs are cheap and self-consistent; the optimal warp is applied to the
//! full-resolution SRVF by the caller.

use crate::curve::Srvf;
use crate::grid;

/// Slope candidates (dt, dgamma), gcd-reduced, components in 1..=4.
pub const MOVES: &[(usize, usize)] = &[
    (1, 1),
    (1, 2),
    (1, 3),
    (1, 4),
    (2, 1),
    (3, 1),
    (4, 1),
    (2, 3),
    (3, 2),
    (3, 4),
    (4, 3),
];

/// A prepared matching instance on a fixed lattice.
pub struct DpProblem {
    q_ref: Vec<f64>,
    q: Vec<f64>,
    dim: usize,
    grid: usize,
}

impl DpProblem {
    /// Resample both SRVFs onto the lattice resolution.
    pub fn new(q_ref: &Srvf, q: &Srvf, grid_size: usize) -> Self {
        assert!(grid_size >= 2, "lattice needs at least 2 segments");
        assert_eq!(q_ref.dim(), q.dim());
        DpProblem {
            q_ref: grid::regrid(q_ref.values(), q_ref.dim(), grid_size),
            q: grid::regrid(q.values(), q.dim(), grid_size),
            dim: q.dim(),
            grid: grid_size,
        }
    }

    pub fn grid(&self) -> usize {
        self.grid
    }

    /// Matching energy of the lattice edge `from -> to` (both nodes are
    /// (t-index, gamma-index) pairs, strictly increasing in each axis).
    /// Each lattice cell is subsampled so the trapezoidal sum tracks the
    /// continuum integral rather than just the node values.
    pub fn edge_cost(&self, from: (usize, usize), to: (usize, usize)) -> f64 {
        const SUBSAMPLES: usize = 3;
        let (i0, j0) = from;
        let (i1, j1) = to;
        debug_assert!(i1 > i0 && j1 > j0);
        let a = i1 - i0;
        let b = j1 - j0;
        let slope = b as f64 / a as f64;
        let sqrt_slope = slope.sqrt();
        let h = grid::step(self.grid);
        let dim = self.dim;
        let steps = a * SUBSAMPLES;
        let dt = h / SUBSAMPLES as f64;
        let mut buf_ref = [0.0_f64; 3];
        let mut buf_q = [0.0_f64; 3];
        let mut acc = 0.0;
        for k in 0..=steps {
            let frac = k as f64 / SUBSAMPLES as f64;
            let t = (i0 as f64 + frac) * h;
            let gamma_t = (j0 as f64 + slope * frac) * h;
            grid::interp_at(&self.q_ref, dim, t, &mut buf_ref[..dim]);
            grid::interp_at(&self.q, dim, gamma_t, &mut buf_q[..dim]);
            let mut dist2 = 0.0;
            for c in 0..dim {
                let d = buf_ref[c] - sqrt_slope * buf_q[c];
                dist2 += d * d;
            }
            acc += if k == 0 || k == steps { 0.5 * dist2 } else { dist2 };
        }
        acc * dt
    }

    /// Cost of the identity warp (all-diagonal path).
    pub fn identity_cost(&self) -> f64 {
        (1..=self.grid)
            .map(|i| self.edge_cost((i - 1, i - 1), (i, i)))
            .sum()
    }

    /// Minimize the path cost from (0,0) to (grid,grid). Returns the warp
    /// sampled at the lattice knots (values in [0, 2pi], exact endpoints)
    /// and the optimal objective value.
    pub fn solve(&self) -> (Vec<f64>, f64) {
        let g = self.grid;
        let stride = g + 1;
        let mut cost = vec![f64::INFINITY; stride * stride];
        let mut prev = vec![usize::MAX; stride * stride];
        cost[0] = 0.0;
        for i in 1..=g {
            for j in 1..=g {
                let mut best = f64::INFINITY;
                let mut arg = usize::MAX;
                for &(a, b) in MOVES {
                    if i >= a && j >= b {
                        let p = (i - a) * stride + (j - b);
                        if cost[p].is_finite() {
                            let c = cost[p] + self.edge_cost((i - a, j - b), (i, j));
                            if c < best {
                                best = c;
                                arg = p;
                            }
                        }
                    }
                }
                cost[i * stride + j] = best;
                prev[i * stride + j] = arg;
            }
        }
        let total = cost[g * stride + g];
        debug_assert!(total.is_finite(), "(1,1) moves keep the goal reachable");

        // walk predecessors back to the origin
        let mut path = vec![(g, g)];
        let mut node = g * stride + g;
        while node != 0 {
            node = prev[node];
            path.push((node / stride, node % stride));
        }
        path.reverse();

        // gamma at every lattice knot, linear between path nodes
        let h = grid::step(g);
        let mut gamma = vec![0.0; stride];
        for w in path.windows(2) {
            let ((i0, j0), (i1, j1)) = (w[0], w[1]);
            let slope = (j1 - j0) as f64 / (i1 - i0) as f64;
            for i in i0..=i1 {
                gamma[i] = (j0 as f64 + slope * (i - i0) as f64) * h;
            }
        }
        gamma[0] = 0.0;
        gamma[g] = grid::DOMAIN_LEN;
        (gamma, total)
    }
}
