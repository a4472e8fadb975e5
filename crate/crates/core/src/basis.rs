//! Fourier basis of the horizontal tangent space at a mean shape.
//!
//! Starting from a truncated trigonometric system of the ambient function
//! space, the construction (i) projects each element onto the tangent
//! space of the preshape sphere at mu, (ii) removes the vertical
//! directions tangent to the rotation/reparametrization orbit of mu —
//! fields of the form B mu and mu' g + (1/2) mu g' — and (iii)
//! orthonormalizes what is left, keeping ambient order so that truncation
//! discards high harmonics first. Tangent observations are then encoded
//! as coefficient vectors against the resulting basis.

use crate::curve::Srvf;
use crate::error::{Error, Result};
use crate::grid;
use crate::sphere::{project_tangent, TangentVector};

/// Default number of harmonics H in the ambient system.
pub const DEFAULT_HARMONICS: usize = 10;
/// Default retained dimension K of the horizontal basis.
pub const DEFAULT_COEFF_DIM: usize = 20;
/// Default truncation L of the reparametrization direction fields.
pub const DEFAULT_LIE_DIM: usize = 10;
/// Directions whose residual norm falls below this after
/// orthogonalization are dropped as rank-deficient.
pub const RANK_DROP_TOLERANCE: f64 = 1e-8;

/// A truncated orthonormal trigonometric system of L2([0,2pi], R^n):
/// per coordinate axis the constant plus sin/cos pairs for each harmonic,
/// n(2H+1) elements in total, ordered constant first then by harmonic.
#[derive(Debug, Clone)]
pub struct AmbientBasis {
    elements: Vec<Vec<f64>>,
    dim: usize,
    harmonics: usize,
}

impl AmbientBasis {
    pub fn elements(&self) -> &[Vec<f64>] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn harmonics(&self) -> usize {
        self.harmonics
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Build the ambient Fourier system on m segments. Requires m >= 8H so the
/// highest harmonic stays far from the grid Nyquist limit.
pub fn ambient_fourier_basis(dim: usize, harmonics: usize, m: usize) -> Result<AmbientBasis> {
    if dim == 0 {
        return Err(Error::InvalidDimension(0));
    }
    if m < 8 * harmonics {
        return Err(Error::AliasRisk {
            samples: m,
            harmonics,
        });
    }
    let ts = grid::knots(m);
    let len = (m + 1) * dim;
    let mut elements = Vec::with_capacity(dim * (2 * harmonics + 1));
    let push_axis_fn = |elements: &mut Vec<Vec<f64>>, axis: usize, f: &dyn Fn(f64) -> f64| {
        let mut e = vec![0.0; len];
        for (r, t) in ts.iter().enumerate() {
            e[r * dim + axis] = f(*t);
        }
        elements.push(e);
    };
    let const_amp = 1.0 / grid::DOMAIN_LEN.sqrt();
    for axis in 0..dim {
        push_axis_fn(&mut elements, axis, &|_| const_amp);
    }
    let trig_amp = 1.0 / std::f64::consts::PI.sqrt();
    for h in 1..=harmonics {
        let hf = h as f64;
        for axis in 0..dim {
            push_axis_fn(&mut elements, axis, &|t| trig_amp * (hf * t).sin());
        }
        for axis in 0..dim {
            push_axis_fn(&mut elements, axis, &|t| trig_amp * (hf * t).cos());
        }
    }
    Ok(AmbientBasis {
        elements,
        dim,
        harmonics,
    })
}

/// Orthonormal span of the tangent space to the orbit of mu: rotation
/// fields B mu for the skew-symmetric generators B, and reparametrization
/// fields mu' g + (1/2) mu g' for sine flows g vanishing at the endpoints.
#[derive(Debug, Clone)]
pub struct VerticalBasis {
    elements: Vec<Vec<f64>>,
    dim: usize,
    rotation_fields: usize,
    reparam_fields: usize,
    dropped: usize,
}

impl VerticalBasis {
    pub fn elements(&self) -> &[Vec<f64>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Raw (pre-orthonormalization) generator counts and rank losses.
    pub fn rotation_fields(&self) -> usize {
        self.rotation_fields
    }

    pub fn reparam_fields(&self) -> usize {
        self.reparam_fields
    }

    pub fn dropped(&self) -> usize {
        self.dropped
    }
}

fn skew_generators(dim: usize) -> Vec<Vec<f64>> {
    // basis of so(n), row-major n x n
    let mut gens = Vec::new();
    for i in 0..dim {
        for j in (i + 1)..dim {
            let mut b = vec![0.0; dim * dim];
            b[i * dim + j] = -1.0;
            b[j * dim + i] = 1.0;
            gens.push(b);
        }
    }
    gens
}

/// Subtract from `v` its components along each of `basis` (assumed
/// orthonormal) and along the normalized `extra` directions, twice for
/// numerical stability, then return the residual L2 norm.
fn orthogonalize(v: &mut [f64], dim: usize, against: &[&[f64]]) -> f64 {
    for _ in 0..2 {
        for b in against {
            let coeff = grid::inner(v, b, dim);
            for (vi, bi) in v.iter_mut().zip(*b) {
                *vi -= coeff * bi;
            }
        }
    }
    grid::norm(v, dim)
}

/// Build the vertical basis at mu with `lie_dim` reparametrization flows.
pub fn vertical_basis(mu: &Srvf, lie_dim: usize) -> VerticalBasis {
    let dim = mu.dim();
    let m = mu.segments();
    let mu_prime = grid::derivative(mu.values(), dim);
    let ts = grid::knots(m);

    let mut raw: Vec<Vec<f64>> = Vec::new();
    for b in skew_generators(dim) {
        let mut field = vec![0.0; mu.values().len()];
        for r in 0..=m {
            let p = mu.point(r);
            for i in 0..dim {
                let mut acc = 0.0;
                for k in 0..dim {
                    acc += b[i * dim + k] * p[k];
                }
                field[r * dim + i] = acc;
            }
        }
        raw.push(field);
    }
    let rotation_fields = raw.len();
    for l in 1..=lie_dim {
        let lf = l as f64;
        let mut field = vec![0.0; mu.values().len()];
        for (r, t) in ts.iter().enumerate() {
            let g = (lf * t / 2.0).sin();
            let gp = 0.5 * lf * (lf * t / 2.0).cos();
            for a in 0..dim {
                field[r * dim + a] =
                    mu_prime[r * dim + a] * g + 0.5 * mu.values()[r * dim + a] * gp;
            }
        }
        raw.push(field);
    }
    let reparam_fields = raw.len() - rotation_fields;

    // project tangent at mu, then orthonormalize, dropping rank losses
    let mut elements: Vec<Vec<f64>> = Vec::new();
    let mut dropped = 0;
    for field in raw {
        let mut v = project_tangent(mu, &field)
            .expect("field and mu share a grid by construction")
            .values()
            .to_vec();
        let held: Vec<&[f64]> = elements.iter().map(Vec::as_slice).collect();
        let norm = orthogonalize(&mut v, dim, &held);
        if norm < RANK_DROP_TOLERANCE {
            dropped += 1;
            continue;
        }
        for vi in &mut v {
            *vi /= norm;
        }
        elements.push(v);
    }
    VerticalBasis {
        elements,
        dim,
        rotation_fields,
        reparam_fields,
        dropped,
    }
}

/// An orthonormal basis of the horizontal tangent space at mu, plus the
/// projection machinery for turning tangent vectors into coefficients.
#[derive(Debug, Clone)]
pub struct TangentBasis {
    mu: Srvf,
    elements: Vec<Vec<f64>>,
}

impl TangentBasis {
    pub fn mu(&self) -> &Srvf {
        &self.mu
    }

    pub fn elements(&self) -> &[Vec<f64>] {
        &self.elements
    }

    /// Retained dimension K.
    pub fn coeff_dim(&self) -> usize {
        self.elements.len()
    }

    /// Reassemble a basis from stored parts (e.g. a model file), checking
    /// the orthonormality and tangency invariants.
    pub fn from_parts(mu: Srvf, elements: Vec<Vec<f64>>) -> Result<Self> {
        let dim = mu.dim();
        for e in &elements {
            if e.len() != mu.values().len() {
                return Err(Error::DimensionMismatch(
                    "basis element does not match mu's grid".into(),
                ));
            }
            if grid::inner(e, mu.values(), dim).abs() > 1e-6 {
                return Err(Error::DimensionMismatch(
                    "basis element is not tangent at mu".into(),
                ));
            }
        }
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                if (grid::inner(a, b, dim) - expect).abs() > 1e-6 {
                    return Err(Error::DimensionMismatch(
                        "basis elements are not orthonormal".into(),
                    ));
                }
            }
        }
        Ok(TangentBasis { mu, elements })
    }
}

/// Gram-Schmidt the ambient system against mu, the vertical space, and
/// itself, retaining the first `coeff_dim` surviving directions.
pub fn horizontal_basis(
    mu: &Srvf,
    ambient: &AmbientBasis,
    vertical: &VerticalBasis,
    coeff_dim: usize,
) -> Result<TangentBasis> {
    let dim = mu.dim();
    if ambient.dim() != dim || vertical.dim() != dim {
        return Err(Error::DimensionMismatch(
            "ambient/vertical bases built for a different dimension".into(),
        ));
    }
    let budget = ambient.len().saturating_sub(1 + vertical.len());
    if coeff_dim > budget {
        return Err(Error::InsufficientRank {
            requested: coeff_dim,
            available: budget,
        });
    }
    let mut elements: Vec<Vec<f64>> = Vec::with_capacity(coeff_dim);
    for b in ambient.elements() {
        if elements.len() == coeff_dim {
            break;
        }
        let mut v = project_tangent(mu, b)
            .expect("ambient elements share mu's grid")
            .values()
            .to_vec();
        let against: Vec<&[f64]> = vertical
            .elements()
            .iter()
            .map(Vec::as_slice)
            .chain(elements.iter().map(Vec::as_slice))
            .collect();
        let norm = orthogonalize(&mut v, dim, &against);
        if norm < RANK_DROP_TOLERANCE {
            continue;
        }
        for vi in &mut v {
            *vi /= norm;
        }
        elements.push(v);
    }
    if elements.len() < coeff_dim {
        return Err(Error::InsufficientRank {
            requested: coeff_dim,
            available: elements.len(),
        });
    }
    Ok(TangentBasis {
        mu: mu.clone(),
        elements,
    })
}

/// Coefficients <v, g_i> of a tangent vector against the basis.
pub fn project_coefficients(basis: &TangentBasis, v: &TangentVector) -> Result<Vec<f64>> {
    if v.basepoint() != &basis.mu {
        return Err(Error::BasepointMismatch { index: None });
    }
    Ok(basis
        .elements
        .iter()
        .map(|g| grid::inner(v.values(), g, basis.mu.dim()))
        .collect())
}

/// Linear combination sum c_i g_i, a tangent vector at the basis mean.
pub fn reconstruct(basis: &TangentBasis, coefficients: &[f64]) -> Result<TangentVector> {
    if coefficients.len() != basis.coeff_dim() {
        return Err(Error::DimensionMismatch(format!(
            "{} coefficients for a {}-dimensional basis",
            coefficients.len(),
            basis.coeff_dim()
        )));
    }
    let mut values = vec![0.0; basis.mu.values().len()];
    for (c, g) in coefficients.iter().zip(&basis.elements) {
        for (vi, gi) in values.iter_mut().zip(g) {
            *vi += c * gi;
        }
    }
    TangentVector::new(values, basis.mu.clone())
}

/// K x N matrix of basis coefficients, one column per observation.
#[derive(Debug, Clone)]
pub struct DataMatrix {
    coeff_dim: usize,
    columns: Vec<Vec<f64>>,
    labels: Option<Vec<String>>,
}

impl DataMatrix {
    pub fn from_parts(columns: Vec<Vec<f64>>, labels: Option<Vec<String>>) -> Result<Self> {
        let coeff_dim = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != coeff_dim) {
            return Err(Error::DimensionMismatch(
                "data matrix columns have unequal lengths".into(),
            ));
        }
        if columns.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteData);
        }
        if let Some(l) = &labels {
            if l.len() != columns.len() {
                return Err(Error::DimensionMismatch(format!(
                    "{} labels for {} observations",
                    l.len(),
                    columns.len()
                )));
            }
        }
        Ok(DataMatrix {
            coeff_dim,
            columns,
            labels,
        })
    }

    pub fn coeff_dim(&self) -> usize {
        self.coeff_dim
    }

    pub fn observations(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.columns[j][i]
    }
}

/// Project every tangent observation onto the basis and attach labels.
pub fn build_data_matrix(
    basis: &TangentBasis,
    tangents: &[TangentVector],
    labels: Option<Vec<String>>,
) -> Result<DataMatrix> {
    let mut columns = Vec::with_capacity(tangents.len());
    for (j, t) in tangents.iter().enumerate() {
        let c = project_coefficients(basis, t).map_err(|e| match e {
            Error::BasepointMismatch { .. } => Error::BasepointMismatch { index: Some(j) },
            other => other,
        })?;
        columns.push(c);
    }
    DataMatrix::from_parts(columns, labels)
}
