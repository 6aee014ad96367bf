use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::grid::Grid;

const FIRST_STEP: f64 = 1e-4;
const SECOND_STEP: f64 = 1e-3;

/// Sixth-order centered first derivative of `f` at `s = 0`.
fn central_first(f: impl Fn(f64) -> [f64; 3], delta: f64) -> [f64; 3] {
    const W: [(f64, f64); 6] = [
        (-3.0, -1.0),
        (-2.0, 9.0),
        (-1.0, -45.0),
        (1.0, 45.0),
        (2.0, -9.0),
        (3.0, 1.0),
    ];
    let mut out = [0.0; 3];
    for (s, w) in W {
        let v = f(s * delta);
        for c in 0..3 {
            out[c] += w * v[c];
        }
    }
    out.map(|v| v / (60.0 * delta))
}

/// Sixth-order centered second derivative of `f` at `s = 0`.
fn central_second(f: impl Fn(f64) -> [f64; 3], delta: f64) -> [f64; 3] {
    const W: [(f64, f64); 7] = [
        (-3.0, 2.0),
        (-2.0, -27.0),
        (-1.0, 270.0),
        (0.0, -490.0),
        (1.0, 270.0),
        (2.0, -27.0),
        (3.0, 2.0),
    ];
    let mut out = [0.0; 3];
    for (s, w) in W {
        let v = f(s * delta);
        for c in 0..3 {
            out[c] += w * v[c];
        }
    }
    out.map(|v| v / (180.0 * delta * delta))
}

fn shifted(x: &[f64; 3], a: usize, s: f64) -> [f64; 3] {
    let mut y = *x;
    y[a] += s;
    y
}

/// Value and derivatives of an exact solution at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub value: [f64; 3],
    pub time_derivative: [f64; 3],
    /// `jacobian[k][a] = ∂_a B^k`.
    pub jacobian: [[f64; 3]; 3],
    /// `hessian[k][a][b] = ∂_a ∂_b B^k`.
    pub hessian: [[[f64; 3]; 3]; 3],
}

/// A smooth reference solution `B(x, t)`.
///
/// Only [`value`](Self::value) is required; the derivatives default to
/// sixth-order centered differences and should be overridden when closed
/// forms are available.
pub trait ExactSolution: Send + Sync + Debug {
    fn dim(&self) -> usize;

    fn value(&self, x: &[f64; 3], t: f64) -> [f64; 3];

    fn time_derivative(&self, x: &[f64; 3], t: f64) -> [f64; 3] {
        central_first(|s| self.value(x, t + s), FIRST_STEP)
    }

    /// `jac[k][a] = ∂_a B^k`.
    fn jacobian(&self, x: &[f64; 3], t: f64) -> [[f64; 3]; 3] {
        let mut jac = [[0.0; 3]; 3];
        for a in 0..self.dim() {
            let d = central_first(|s| self.value(&shifted(x, a, s), t), FIRST_STEP);
            for k in 0..3 {
                jac[k][a] = d[k];
            }
        }
        jac
    }

    /// `hess[k][a][b] = ∂_a ∂_b B^k`.
    fn hessian(&self, x: &[f64; 3], t: f64) -> [[[f64; 3]; 3]; 3] {
        let dim = self.dim();
        let mut hess = [[[0.0; 3]; 3]; 3];
        for a in 0..dim {
            for b in a..dim {
                let d = if a == b {
                    central_second(|s| self.value(&shifted(x, a, s), t), SECOND_STEP)
                } else {
                    central_first(
                        |s| {
                            let y = shifted(x, a, s);
                            central_first(|r| self.value(&shifted(&y, b, r), t), SECOND_STEP)
                        },
                        SECOND_STEP,
                    )
                };
                for k in 0..3 {
                    hess[k][a][b] = d[k];
                    hess[k][b][a] = d[k];
                }
            }
        }
        hess
    }

    /// Continuous curl: the scalar `∂x B² − ∂y B¹` in slot 0 for 2D,
    /// the full vector in 3D.
    fn curl(&self, x: &[f64; 3], t: f64) -> [f64; 3] {
        let j = self.jacobian(x, t);
        if self.dim() == 2 {
            [j[1][0] - j[0][1], 0.0, 0.0]
        } else {
            [j[2][1] - j[1][2], j[0][2] - j[2][0], j[1][0] - j[0][1]]
        }
    }

    /// Everything the forcing residual needs in one call.
    fn jet(&self, x: &[f64; 3], t: f64) -> Jet {
        Jet {
            value: self.value(x, t),
            time_derivative: self.time_derivative(x, t),
            jacobian: self.jacobian(x, t),
            hessian: self.hessian(x, t),
        }
    }

    /// Whether the solution is a rigid rotation of its initial state.
    fn is_rotation_based(&self) -> bool {
        false
    }
}

/// Identically zero solution.
#[derive(Debug, Clone, Copy)]
pub struct ZeroSolution {
    pub dim: usize,
}

impl ExactSolution for ZeroSolution {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, _x: &[f64; 3], _t: f64) -> [f64; 3] {
        [0.0; 3]
    }

    fn time_derivative(&self, _x: &[f64; 3], _t: f64) -> [f64; 3] {
        [0.0; 3]
    }

    fn jacobian(&self, _x: &[f64; 3], _t: f64) -> [[f64; 3]; 3] {
        [[0.0; 3]; 3]
    }

    fn hessian(&self, _x: &[f64; 3], _t: f64) -> [[[f64; 3]; 3]; 3] {
        [[[0.0; 3]; 3]; 3]
    }
}

/// Divergence-free Gaussian hump centred at `(½, 0)`:
/// `4 (−y, x − ½) exp(−20((x − ½)² + y²))`.
///
/// Returns the value, `grad[k][a] = ∂_a B^k` and `hess[k][a][b]`.
pub fn hump(x: f64, y: f64) -> ([f64; 2], [[f64; 2]; 2], [[[f64; 2]; 2]; 2]) {
    let a = x - 0.5;
    let b = y;
    let e = (-20.0 * (a * a + b * b)).exp();
    let value = [-4.0 * b * e, 4.0 * a * e];
    let grad = [
        [160.0 * a * b * e, (-4.0 + 160.0 * b * b) * e],
        [(4.0 - 160.0 * a * a) * e, -160.0 * a * b * e],
    ];
    let h1xx = 160.0 * b * (1.0 - 40.0 * a * a) * e;
    let h1xy = 160.0 * a * (1.0 - 40.0 * b * b) * e;
    let h1yy = 160.0 * b * (3.0 - 40.0 * b * b) * e;
    let h2xx = -160.0 * a * (3.0 - 40.0 * a * a) * e;
    let h2xy = -160.0 * b * (1.0 - 40.0 * a * a) * e;
    let h2yy = -160.0 * a * (1.0 - 40.0 * b * b) * e;
    let hess = [[[h1xx, h1xy], [h1xy, h1yy]], [[h2xx, h2xy], [h2xy, h2yy]]];
    (value, grad, hess)
}

/// The hump carried by the rotation `u = (−y, x)`:
/// `B(x, t) = R(t) B₀(R(−t) x)` with `R(t)` the rotation by angle `t`.
#[derive(Debug, Clone, Copy, Default)]
pub struct RotatingHump;

fn rot(t: f64) -> [[f64; 2]; 2] {
    let (s, c) = t.sin_cos();
    [[c, -s], [s, c]]
}

fn mat_vec(m: &[[f64; 2]; 2], v: &[f64; 2]) -> [f64; 2] {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

impl RotatingHump {
    fn pullback(x: &[f64; 3], t: f64) -> [f64; 2] {
        mat_vec(&rot(-t), &[x[0], x[1]])
    }
}

impl ExactSolution for RotatingHump {
    fn dim(&self) -> usize {
        2
    }

    fn value(&self, x: &[f64; 3], t: f64) -> [f64; 3] {
        let p = Self::pullback(x, t);
        let (b0, _, _) = hump(p[0], p[1]);
        let b = mat_vec(&rot(t), &b0);
        [b[0], b[1], 0.0]
    }

    fn time_derivative(&self, x: &[f64; 3], t: f64) -> [f64; 3] {
        let p = Self::pullback(x, t);
        let (b0, g0, _) = hump(p[0], p[1]);
        let r = rot(t);
        // d/dt R(t) = J R(t), d/dt X = (X₂, −X₁).
        let rb = mat_vec(&r, &b0);
        let spin = [-rb[1], rb[0]];
        let dx = [p[1], -p[0]];
        let gd = mat_vec(&g0, &dx);
        let transport = mat_vec(&r, &gd);
        [spin[0] + transport[0], spin[1] + transport[1], 0.0]
    }

    fn jacobian(&self, x: &[f64; 3], t: f64) -> [[f64; 3]; 3] {
        let p = Self::pullback(x, t);
        let (_, g0, _) = hump(p[0], p[1]);
        let r = rot(t);
        let rm = rot(-t);
        let mut jac = [[0.0; 3]; 3];
        for k in 0..2 {
            for a in 0..2 {
                let mut s = 0.0;
                for m in 0..2 {
                    for c in 0..2 {
                        s += r[k][m] * g0[m][c] * rm[c][a];
                    }
                }
                jac[k][a] = s;
            }
        }
        jac
    }

    fn hessian(&self, x: &[f64; 3], t: f64) -> [[[f64; 3]; 3]; 3] {
        let p = Self::pullback(x, t);
        let (_, _, h0) = hump(p[0], p[1]);
        let r = rot(t);
        let rm = rot(-t);
        let mut hess = [[[0.0; 3]; 3]; 3];
        for k in 0..2 {
            for a in 0..2 {
                for b in 0..2 {
                    let mut s = 0.0;
                    for m in 0..2 {
                        for c in 0..2 {
                            for d in 0..2 {
                                s += r[k][m] * h0[m][c][d] * rm[c][a] * rm[d][b];
                            }
                        }
                    }
                    hess[k][a][b] = s;
                }
            }
        }
        hess
    }

    fn jet(&self, x: &[f64; 3], t: f64) -> Jet {
        let r = rot(t);
        let rm = rot(-t);
        let p = mat_vec(&rm, &[x[0], x[1]]);
        let (b0, g0, h0) = hump(p[0], p[1]);
        let mut jet = Jet {
            value: [0.0; 3],
            time_derivative: [0.0; 3],
            jacobian: [[0.0; 3]; 3],
            hessian: [[[0.0; 3]; 3]; 3],
        };
        let rb = mat_vec(&r, &b0);
        let gd = mat_vec(&g0, &[p[1], -p[0]]);
        let transport = mat_vec(&r, &gd);
        jet.value[..2].copy_from_slice(&rb);
        jet.time_derivative[0] = -rb[1] + transport[0];
        jet.time_derivative[1] = rb[0] + transport[1];
        // ∇B = R ∇B₀ R(−t), and likewise for each Hessian slice.
        let mut g_rm = [[0.0; 2]; 2];
        let mut h_rm = [[[0.0; 2]; 2]; 2];
        for m in 0..2 {
            for a in 0..2 {
                g_rm[m][a] = g0[m][0] * rm[0][a] + g0[m][1] * rm[1][a];
                for d in 0..2 {
                    h_rm[m][d][a] = h0[m][d][0] * rm[0][a] + h0[m][d][1] * rm[1][a];
                }
            }
        }
        for k in 0..2 {
            for a in 0..2 {
                jet.jacobian[k][a] = r[k][0] * g_rm[0][a] + r[k][1] * g_rm[1][a];
                for b in 0..2 {
                    let mut s = 0.0;
                    for m in 0..2 {
                        s += r[k][m] * (rm[0][a] * h_rm[m][0][b] + rm[1][a] * h_rm[m][1][b]);
                    }
                    jet.hessian[k][a][b] = s;
                }
            }
        }
        jet
    }

    fn is_rotation_based(&self) -> bool {
        true
    }
}

fn require_planar(grid: &Grid) -> Result<()> {
    if grid.dim() == 2 {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: 2,
            found: grid.dim(),
        })
    }
}

/// The hump sampled on a 2D grid.
pub fn initial_hump(grid: &Grid) -> Result<VectorField> {
    exact_rotating_hump(0.0, grid)
}

/// The rotated hump at time `t` sampled on a 2D grid.
pub fn exact_rotating_hump(t: f64, grid: &Grid) -> Result<VectorField> {
    require_planar(grid)?;
    Ok(VectorField::from_fn(grid, 2, |x| RotatingHump.value(x, t)))
}
