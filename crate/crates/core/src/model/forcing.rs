use std::fmt;
use std::str::FromStr;

use super::velocity::coupling_matrix;
use super::ModelConfig;
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::grid::Grid;

/// Where the source term `F` comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ForcingSource {
    #[default]
    None,
    /// The closed-form expression for the rotating hump, kept verbatim.
    Printed,
    /// Residual of the exact solution in the continuous equation.
    Oracle,
}

impl FromStr for ForcingSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(ForcingSource::None),
            "printed" => Ok(ForcingSource::Printed),
            "oracle" => Ok(ForcingSource::Oracle),
            other => Err(Error::Config(format!("unknown forcing '{other}'"))),
        }
    }
}

impl fmt::Display for ForcingSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ForcingSource::None => "none",
            ForcingSource::Printed => "printed",
            ForcingSource::Oracle => "oracle",
        })
    }
}

/// Closed-form forcing for the rotating hump, transcribed verbatim.
///
/// The second component carries the factor `(y − ½ cos t)`; the residual
/// of the exact solution has `(x − ½ cos t)` there instead.
pub fn printed_forcing(x: f64, y: f64, t: f64, epsilon: f64) -> [f64; 2] {
    let (s, c) = t.sin_cos();
    let xr = x * c + y * s - 0.5;
    let yr = -x * s + y * c;
    let e = (-20.0 * (xr * xr + yr * yr)).exp();
    let dx = x - 0.5 * c;
    let dy = y - 0.5 * s;
    let bracket = -4.0 + 40.0 * (dx * dx + dy * dy);
    let f1 = 160.0 * epsilon * (y - 0.5 * s) * bracket * e;
    let f2 = -160.0 * epsilon * (y - 0.5 * c) * bracket * e;
    [f1, f2]
}

/// The closed-form forcing sampled on a 2D grid.
pub fn forcing_printed(t: f64, grid: &Grid, epsilon: f64) -> Result<VectorField> {
    if grid.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: grid.dim(),
        });
    }
    Ok(VectorField::from_fn(grid, 2, |x| {
        let f = printed_forcing(x[0], x[1], t, epsilon);
        [f[0], f[1], 0.0]
    }))
}

/// `∂t B + Σ_a u^a ∂_a B − C B + ε curl curl B` evaluated on the model's
/// exact solution at one point.
pub fn manufactured_residual(model: &ModelConfig, x: &[f64; 3], t: f64) -> Result<[f64; 3]> {
    let exact = model.exact.as_ref().ok_or(Error::MissingExactSolution)?;
    let dim = model.dim();
    let jet = exact.jet(x, t);
    let (b, bt, jac, hess) = (jet.value, jet.time_derivative, jet.jacobian, jet.hessian);
    let u = model.velocity.value(x, t);
    let c = coupling_matrix(&model.velocity.jacobian(x, t), dim);
    let mut r = [0.0; 3];
    for k in 0..dim {
        let mut v = bt[k];
        for a in 0..dim {
            v += u[a] * jac[k][a];
            v -= c[k][a] * b[a];
            // curl curl = grad div − Laplacian
            v += model.epsilon * (hess[a][k][a] - hess[k][a][a]);
        }
        r[k] = v;
    }
    Ok(r)
}

/// Forcing that makes the model's exact solution satisfy the equation.
pub fn forcing_residual_oracle(t: f64, grid: &Grid, model: &ModelConfig) -> Result<VectorField> {
    if grid.dim() != model.dim() {
        return Err(Error::DimensionMismatch {
            expected: model.dim(),
            found: grid.dim(),
        });
    }
    let mut out = VectorField::zeros(grid.shape(), model.dim());
    for (k, x) in grid.nodes() {
        let r = manufactured_residual(model, &x, t)?;
        for (c, comp) in out.components_mut().iter_mut().enumerate() {
            comp.values_mut()[k] = r[c];
        }
    }
    Ok(out)
}

/// Forcing selected by `model.forcing`, or `None` when there is none.
pub fn forcing_field(t: f64, grid: &Grid, model: &ModelConfig) -> Result<Option<VectorField>> {
    match model.forcing {
        ForcingSource::None => Ok(None),
        ForcingSource::Printed => forcing_printed(t, grid, model.epsilon).map(Some),
        ForcingSource::Oracle => forcing_residual_oracle(t, grid, model).map(Some),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{rotation_velocity, RotatingHump};
    use std::sync::Arc;

    fn model(eps: f64) -> ModelConfig {
        ModelConfig::new(Arc::new(rotation_velocity()), eps)
            .with_exact(Arc::new(RotatingHump))
            .with_forcing(ForcingSource::Oracle)
    }

    #[test]
    fn first_component_matches_closed_form() {
        let m = model(0.01);
        for &(x, y, t) in &[(0.3, 0.1, 0.0), (-0.2, 0.4, 1.3), (0.7, -0.6, 4.0)] {
            let r = manufactured_residual(&m, &[x, y, 0.0], t).unwrap();
            let p = printed_forcing(x, y, t, 0.01);
            assert!((r[0] - p[0]).abs() < 1e-10 * (1.0 + p[0].abs()));
        }
    }

    #[test]
    fn second_component_differs_from_closed_form() {
        // Agreement only where the x/y typo is harmless (x = y).
        let m = model(0.01);
        let (x, y, t) = (0.4, 0.1, 0.3);
        let r = manufactured_residual(&m, &[x, y, 0.0], t).unwrap();
        let p = printed_forcing(x, y, t, 0.01);
        assert!((r[1] - p[1]).abs() > 1e-3 * r[1].abs());
        let (s, c) = t.sin_cos();
        let xr = x * c + y * s - 0.5;
        let yr = -x * s + y * c;
        let e = (-20.0 * (xr * xr + yr * yr)).exp();
        let bracket = -4.0 + 40.0 * ((x - 0.5 * c).powi(2) + (y - 0.5 * s).powi(2));
        let corrected = -160.0 * 0.01 * (x - 0.5 * c) * bracket * e;
        assert!((r[1] - corrected).abs() < 1e-10);
    }

    #[test]
    fn ideal_transport_has_no_residual() {
        let m = model(0.0);
        let g = Grid::square(21, -1.0, 1.0).unwrap();
        let f = forcing_residual_oracle(0.7, &g, &m).unwrap();
        assert!(f.max_abs() < 1e-12);
    }

    #[test]
    fn selection() {
        let g = Grid::square(5, -1.0, 1.0).unwrap();
        let mut m = model(0.1);
        m.forcing = ForcingSource::None;
        assert!(forcing_field(0.0, &g, &m).unwrap().is_none());
        m.forcing = ForcingSource::Printed;
        assert_eq!(forcing_field(0.0, &g, &m).unwrap().unwrap().ncomp(), 2);
        m.exact = None;
        m.forcing = ForcingSource::Oracle;
        assert!(matches!(forcing_field(0.0, &g, &m), Err(Error::MissingExactSolution)));
        assert_eq!("ORACLE".parse::<ForcingSource>().unwrap(), ForcingSource::Oracle);
    }
}
