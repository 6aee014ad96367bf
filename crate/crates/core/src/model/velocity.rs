use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::grid::Grid;

/// A prescribed velocity field with analytic first partials.
pub trait VelocityField: Send + Sync + Debug {
    fn dim(&self) -> usize;

    /// Components `u^ℓ(x, t)`; unused trailing entries are zero.
    fn value(&self, x: &[f64; 3], t: f64) -> [f64; 3];

    /// `jac[ℓ][a] = ∂_a u^ℓ(x, t)`.
    fn jacobian(&self, x: &[f64; 3], t: f64) -> [[f64; 3]; 3];

    fn is_autonomous(&self) -> bool {
        true
    }
}

/// Rigid rotation about the origin, `u = (−y, x)` (and `u³ = 0` in 3D).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation {
    dim: usize,
}

impl Rotation {
    pub fn planar() -> Self {
        Rotation { dim: 2 }
    }

    pub fn spatial() -> Self {
        Rotation { dim: 3 }
    }
}

/// The 2D rotation field `u = (−y, x)`.
pub fn rotation_velocity() -> Rotation {
    Rotation::planar()
}

impl VelocityField for Rotation {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, x: &[f64; 3], _t: f64) -> [f64; 3] {
        [-x[1], x[0], 0.0]
    }

    fn jacobian(&self, _x: &[f64; 3], _t: f64) -> [[f64; 3]; 3] {
        [[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0; 3]]
    }
}

/// Spatially uniform velocity (zero velocity included).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantVelocity {
    dim: usize,
    value: [f64; 3],
}

impl ConstantVelocity {
    pub fn new(value: &[f64]) -> Result<Self> {
        if !(2..=3).contains(&value.len()) {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: value.len(),
            });
        }
        let mut v = [0.0; 3];
        v[..value.len()].copy_from_slice(value);
        Ok(ConstantVelocity {
            dim: value.len(),
            value: v,
        })
    }

    pub fn zero(dim: usize) -> Self {
        ConstantVelocity {
            dim,
            value: [0.0; 3],
        }
    }
}

impl VelocityField for ConstantVelocity {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, _x: &[f64; 3], _t: f64) -> [f64; 3] {
        self.value
    }

    fn jacobian(&self, _x: &[f64; 3], _t: f64) -> [[f64; 3]; 3] {
        [[0.0; 3]; 3]
    }
}

/// Zeroth-order coupling `C = Du − (div u) I` restricted to `dim` components.
///
/// In 2D this is `[[−∂y u², ∂y u¹], [∂x u², −∂x u¹]]`; in 3D the diagonal
/// entries are `−Σ_{a≠ℓ} ∂_a u^a`.
pub fn coupling_matrix(jac: &[[f64; 3]; 3], dim: usize) -> [[f64; 3]; 3] {
    let div: f64 = (0..dim).map(|a| jac[a][a]).sum();
    let mut c = [[0.0; 3]; 3];
    for r in 0..dim {
        for col in 0..dim {
            c[r][col] = jac[r][col];
        }
        c[r][r] -= div;
    }
    c
}

/// Node-wise `C(x, t) · V`.
pub fn apply_coupling(
    velocity: &dyn VelocityField,
    grid: &Grid,
    t: f64,
    v: &VectorField,
) -> Result<VectorField> {
    let dim = velocity.dim();
    if grid.dim() != dim || v.ncomp() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: if grid.dim() != dim { grid.dim() } else { v.ncomp() },
        });
    }
    if v.shape() != grid.shape() {
        return Err(Error::GridMismatch);
    }
    let mut out = VectorField::zeros(grid.shape(), dim);
    for (k, x) in grid.nodes() {
        let c = coupling_matrix(&velocity.jacobian(&x, t), dim);
        for r in 0..dim {
            let s: f64 = (0..dim).map(|col| c[r][col] * v.component(col).values()[k]).sum();
            out.component_mut(r).values_mut()[k] = s;
        }
    }
    Ok(out)
}

/// Largest Euclidean speed over the grid nodes at time `t`.
pub fn max_speed(velocity: &dyn VelocityField, grid: &Grid, t: f64) -> f64 {
    grid.nodes()
        .map(|(_, x)| {
            let u = velocity.value(&x, t);
            u.iter().map(|c| c * c).sum::<f64>().sqrt()
        })
        .fold(0.0, f64::max)
}

/// Largest discrepancy between the supplied partials and centered
/// differences with step `delta`, relative to `max(1, |∂u|)`.
pub fn jacobian_consistency(
    velocity: &dyn VelocityField,
    points: &[[f64; 3]],
    t: f64,
    delta: f64,
) -> f64 {
    let dim = velocity.dim();
    let mut worst: f64 = 0.0;
    for x in points {
        let jac = velocity.jacobian(x, t);
        for a in 0..dim {
            let mut xp = *x;
            let mut xm = *x;
            xp[a] += delta;
            xm[a] -= delta;
            let up = velocity.value(&xp, t);
            let um = velocity.value(&xm, t);
            for l in 0..dim {
                let fd = (up[l] - um[l]) / (2.0 * delta);
                let rel = (fd - jac[l][a]).abs() / jac[l][a].abs().max(1.0);
                worst = worst.max(rel);
            }
        }
    }
    worst
}
