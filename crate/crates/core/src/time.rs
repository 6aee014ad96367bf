//! Explicit Heun (RK2) time stepping with CFL-type step selection and
//! energy/divergence monitors.

use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::grid::{Discretization, Grid};
use crate::model::{max_speed, VelocityField};
use crate::scheme::SemiDiscrete;

/// Default factor applied to the explicit diffusion limit.
pub const DEFAULT_DIFFUSION_SAFETY: f64 = 0.9;

/// Default number of steps between monitor samples.
pub const DEFAULT_MONITOR_CADENCE: usize = 10;

/// `cfl · min(h_min / max|u|, safety · h_min² / (4ε))`, the second term
/// dropped for `ε = 0`. The speed is the largest Euclidean node speed at
/// `t = 0`, floored at `1e−12`.
pub fn select_dt(
    cfl: f64,
    grid: &Grid,
    velocity: &dyn VelocityField,
    epsilon: f64,
    diffusion_safety: f64,
) -> Result<f64> {
    if !(cfl > 0.0 && cfl <= 1.0) {
        return Err(Error::Config(format!("cfl must lie in (0, 1], got {cfl}")));
    }
    if !(diffusion_safety > 0.0 && diffusion_safety.is_finite()) {
        return Err(Error::Config(format!(
            "diffusion safety must be positive, got {diffusion_safety}"
        )));
    }
    let h = grid.min_spacing();
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidGrid(format!("degenerate spacing {h}")));
    }
    let speed = max_speed(velocity, grid, 0.0).max(1e-12);
    let mut limit = h / speed;
    if epsilon > 0.0 {
        limit = limit.min(diffusion_safety * h * h / (4.0 * epsilon));
    }
    Ok(cfl * limit)
}

/// Step size and end time of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl {
    pub cfl: f64,
    pub t_final: f64,
    pub dt: f64,
    pub diffusion_safety: f64,
}

impl StepControl {
    pub fn new(
        cfl: f64,
        t_final: f64,
        grid: &Grid,
        velocity: &dyn VelocityField,
        epsilon: f64,
    ) -> Result<Self> {
        Self::with_safety(cfl, t_final, grid, velocity, epsilon, DEFAULT_DIFFUSION_SAFETY)
    }

    pub fn with_safety(
        cfl: f64,
        t_final: f64,
        grid: &Grid,
        velocity: &dyn VelocityField,
        epsilon: f64,
        diffusion_safety: f64,
    ) -> Result<Self> {
        if !(t_final >= 0.0 && t_final.is_finite()) {
            return Err(Error::Config(format!("final time must be non-negative, got {t_final}")));
        }
        Ok(StepControl {
            cfl,
            t_final,
            dt: select_dt(cfl, grid, velocity, epsilon, diffusion_safety)?,
            diffusion_safety,
        })
    }

    /// A fixed step size, bypassing the CFL rule.
    pub fn fixed(dt: f64, t_final: f64) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::Config(format!("time step must be positive, got {dt}")));
        }
        Ok(StepControl {
            cfl: f64::NAN,
            t_final,
            dt,
            diffusion_safety: f64::NAN,
        })
    }

    /// Number of steps; the last one is shortened to end on `t_final`.
    pub fn steps(&self) -> usize {
        if self.t_final <= 0.0 {
            return 0;
        }
        let ratio = self.t_final / self.dt;
        let steps = ratio.ceil() as usize;
        // Guard against a sliver step from round-off in the ratio.
        if steps > 1 && ratio - (steps - 1) as f64 <= 1e-10 {
            steps - 1
        } else {
            steps.max(1)
        }
    }
}

/// One Heun step: `V + dt/2 (k₁ + k₂)` with `k₁ = L(t, V)` and
/// `k₂ = L(t + dt, V + dt k₁)`.
pub fn rk2_step(
    v: &VectorField,
    t: f64,
    dt: f64,
    mut rhs: impl FnMut(f64, &VectorField) -> Result<VectorField>,
) -> Result<VectorField> {
    if !(dt > 0.0) {
        return Err(Error::Config(format!("time step must be positive, got {dt}")));
    }
    let k1 = rhs(t, v)?;
    let mut stage = v.clone();
    stage.axpy(dt, &k1)?;
    let k2 = rhs(t + dt, &stage)?;
    let mut out = v.clone();
    out.axpy(0.5 * dt, &k1)?;
    out.axpy(0.5 * dt, &k2)?;
    Ok(out)
}

/// One monitor sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonitorSample {
    pub t: f64,
    /// `E = (V, V)_P`.
    pub energy: f64,
    /// Weighted l2 norm of `div_P V`.
    pub divergence_norm: f64,
    /// `‖curl V‖_P`.
    pub curl_norm: f64,
}

impl MonitorSample {
    pub fn measure(disc: &Discretization, t: f64, v: &VectorField) -> Result<Self> {
        let div = disc.div(v)?;
        let curl_norm = match disc.dim() {
            2 => {
                let w = disc.curl_2d(v)?;
                disc.inner(&w, &w)?.sqrt()
            }
            _ => disc.norm_sq(&disc.curl_3d(v)?)?.sqrt(),
        };
        Ok(MonitorSample {
            t,
            energy: disc.norm_sq(v)?,
            divergence_norm: disc.grid().discrete_l2([div.values()]),
            curl_norm,
        })
    }
}

/// Monitor time series of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunMonitors {
    pub cadence: usize,
    pub samples: Vec<MonitorSample>,
}

impl RunMonitors {
    pub fn new(cadence: usize) -> Self {
        RunMonitors {
            cadence: cadence.max(1),
            samples: Vec::new(),
        }
    }
}

impl Default for RunMonitors {
    fn default() -> Self {
        RunMonitors::new(DEFAULT_MONITOR_CADENCE)
    }
}

/// Final state and diagnostics of [`integrate`].
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub field: VectorField,
    pub monitors: RunMonitors,
    pub steps: usize,
    pub dt: f64,
    pub t_final: f64,
}

/// Advances `v0` from `t = 0` to `control.t_final`, sampling monitors at
/// the first step, every `monitors.cadence` steps and the last step.
/// Aborts on the first non-finite value.
pub fn integrate(
    scheme: &mut SemiDiscrete,
    v0: VectorField,
    control: &StepControl,
    mut monitors: RunMonitors,
) -> Result<RunOutcome> {
    let disc = scheme.discretization().clone();
    let steps = control.steps();
    let mut v = v0;
    let mut t = 0.0;
    monitors.samples.push(MonitorSample::measure(&disc, t, &v)?);
    for n in 0..steps {
        let dt = if n + 1 == steps {
            control.t_final - t
        } else {
            control.dt
        };
        v = rk2_step(&v, t, dt, |s, w| scheme.rhs(s, w))?;
        t = if n + 1 == steps {
            control.t_final
        } else {
            t + dt
        };
        if let Some((component, node)) = v.first_non_finite() {
            return Err(Error::NonFinite { t, component, node });
        }
        if (n + 1) % monitors.cadence == 0 || n + 1 == steps {
            monitors.samples.push(MonitorSample::measure(&disc, t, &v)?);
        }
    }
    Ok(RunOutcome {
        field: v,
        monitors,
        steps,
        dt: control.dt,
        t_final: control.t_final,
    })
}
