//! Matrix-free tensor-product operators on a [`Discretization`].
//!
//! `d(a, w)` applies the 1D operator of axis `a` to every grid line along
//! that axis, i.e. `D_x ⊗ I` / `I ⊗ D_y` (and the 3D analogues) without ever
//! forming the Kronecker product.

use crate::error::{Error, Result};
use crate::field::{ScalarField, VectorField};
use crate::grid::{BoundaryFace, Discretization, Shape};

impl Discretization {
    fn check_scalar(&self, w: &ScalarField) -> Result<()> {
        if w.shape() == self.shape() {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    fn check_vector(&self, v: &VectorField, ncomp: usize) -> Result<()> {
        if v.ncomp() != ncomp {
            return Err(Error::DimensionMismatch {
                expected: ncomp,
                found: v.ncomp(),
            });
        }
        if v.shape() != self.shape() {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }

    /// Partial-derivative approximation along `axis`.
    pub fn d(&self, axis: usize, w: &ScalarField) -> Result<ScalarField> {
        if axis >= self.dim() {
            return Err(Error::AxisOutOfRange {
                axis,
                dim: self.dim(),
            });
        }
        self.check_scalar(w)?;
        let mut out = ScalarField::zeros(self.shape());
        apply_axis(self, axis, w.values(), out.values_mut());
        Ok(out)
    }

    /// Component-wise partial derivative of a vector field.
    pub fn d_vec(&self, axis: usize, v: &VectorField) -> Result<VectorField> {
        VectorField::new(
            v.components()
                .iter()
                .map(|c| self.d(axis, c))
                .collect::<Result<_>>()?,
        )
    }

    /// `(v, w)_P = vᵀ P w` with `P = P_x ⊗ P_y (⊗ P_z)`.
    pub fn inner(&self, v: &ScalarField, w: &ScalarField) -> Result<f64> {
        self.check_scalar(v)?;
        self.check_scalar(w)?;
        Ok(self
            .node_weights()
            .iter()
            .zip(v.values().iter().zip(w.values()))
            .map(|(p, (a, b))| p * a * b)
            .sum())
    }

    /// Sum of the component inner products.
    pub fn inner_vec(&self, v: &VectorField, w: &VectorField) -> Result<f64> {
        v.check_same(w)?;
        v.components()
            .iter()
            .zip(w.components())
            .map(|(a, b)| self.inner(a, b))
            .sum()
    }

    pub fn norm_sq(&self, v: &VectorField) -> Result<f64> {
        self.inner_vec(v, v)
    }

    /// Face bilinear form: sum over the nodes of `face` of `v·w` weighted by
    /// the tangential norm weights, e.g. `vᵀ (I_N ⊗ P_y) ℛ w` on `XHigh`.
    pub fn face_inner(&self, face: BoundaryFace, v: &ScalarField, w: &ScalarField) -> Result<f64> {
        self.check_scalar(v)?;
        self.check_scalar(w)?;
        let nodes = self.grid().face_nodes(face)?;
        Ok(nodes
            .iter()
            .map(|&k| self.face_weight(face, k) * v.values()[k] * w.values()[k])
            .sum())
    }

    /// Scalar discrete curl `𝔡x V² − 𝔡y V¹` of a 2D field.
    pub fn curl_2d(&self, v: &VectorField) -> Result<ScalarField> {
        self.require_dim(2)?;
        self.check_vector(v, 2)?;
        let mut out = self.d(0, v.component(1))?;
        out.axpy(-1.0, &self.d(1, v.component(0))?)?;
        Ok(out)
    }

    /// Vector discrete curl of a 3D field.
    pub fn curl_3d(&self, v: &VectorField) -> Result<VectorField> {
        self.require_dim(3)?;
        self.check_vector(v, 3)?;
        let dv = |axis: usize, c: usize| self.d(axis, v.component(c));
        let mut w1 = dv(1, 2)?;
        w1.axpy(-1.0, &dv(2, 1)?)?;
        let mut w2 = dv(2, 0)?;
        w2.axpy(-1.0, &dv(0, 2)?)?;
        let mut w3 = dv(0, 1)?;
        w3.axpy(-1.0, &dv(1, 0)?)?;
        VectorField::new(vec![w1, w2, w3])
    }

    /// 2D curl-curl built from products of first-derivative operators:
    /// `(−𝔡yy V¹ + 𝔡xy V², 𝔡xy V¹ − 𝔡xx V²)`.
    pub fn curlcurl_2d(&self, v: &VectorField) -> Result<VectorField> {
        self.require_dim(2)?;
        self.check_vector(v, 2)?;
        let dy_v1 = self.d(1, v.component(0))?;
        let dy_v2 = self.d(1, v.component(1))?;
        let dx_v2 = self.d(0, v.component(1))?;
        curlcurl_2d_from_derivatives(self, &dy_v1, &dy_v2, &dx_v2)
    }

    /// 3D curl-curl: the discrete curl applied to the discrete curl.
    pub fn curlcurl_3d(&self, v: &VectorField) -> Result<VectorField> {
        let w = self.curl_3d(v)?;
        self.curl_3d(&w)
    }

    /// `div_P(V) = Σ_a 𝔡_a V^a`.
    pub fn div(&self, v: &VectorField) -> Result<ScalarField> {
        self.check_vector(v, self.dim())?;
        let mut out = ScalarField::zeros(self.shape());
        for a in 0..self.dim() {
            out.axpy(1.0, &self.d(a, v.component(a))?)?;
        }
        Ok(out)
    }

    fn require_dim(&self, dim: usize) -> Result<()> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: dim,
                found: self.dim(),
            })
        }
    }
}

/// Curl-curl of a 2D field from `𝔡y V¹`, `𝔡y V²`, `𝔡x V²`:
/// component 1 is `𝔡x(𝔡y V²) − 𝔡y(𝔡y V¹)`, component 2 is
/// `𝔡x(𝔡y V¹) − 𝔡x(𝔡x V²)`.
pub(crate) fn curlcurl_2d_from_derivatives(
    disc: &Discretization,
    dy_v1: &ScalarField,
    dy_v2: &ScalarField,
    dx_v2: &ScalarField,
) -> Result<VectorField> {
    let mut c1 = disc.d(0, dy_v2)?;
    c1.axpy(-1.0, &disc.d(1, dy_v1)?)?;
    let mut c2 = disc.d(0, dy_v1)?;
    c2.axpy(-1.0, &disc.d(0, dx_v2)?)?;
    VectorField::new(vec![c1, c2])
}

pub(crate) fn apply_axis(disc: &Discretization, axis: usize, input: &[f64], out: &mut [f64]) {
    let shape: Shape = disc.shape();
    let n = shape.dims()[axis];
    let inner = shape.stride(axis);
    let block = n * inner;
    let op = disc.operator(axis);
    for (src, dst) in input.chunks_exact(block).zip(out.chunks_exact_mut(block)) {
        op.apply_block(src, dst, inner);
    }
}
