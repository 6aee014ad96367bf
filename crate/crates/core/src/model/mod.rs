//! Continuous problem data: velocity, resistivity, exact solutions, forcing
//! and boundary data.

mod boundary;
mod exact;
mod forcing;
mod velocity;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

pub use boundary::{boundary_dirichlet_data, boundary_mixed_data};
pub use exact::{
    exact_rotating_hump, hump, initial_hump, ExactSolution, Jet, RotatingHump, ZeroSolution,
};
pub use forcing::{
    forcing_field, forcing_printed, forcing_residual_oracle, manufactured_residual,
    printed_forcing, ForcingSource,
};
pub use velocity::{
    apply_coupling, coupling_matrix, jacobian_consistency, max_speed, rotation_velocity,
    ConstantVelocity, Rotation, VelocityField,
};

use crate::error::{Error, Result};

/// Which boundary treatment the semi-discrete scheme uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    /// Weak Dirichlet data `B = g` with resistive penalties.
    Dirichlet,
    /// Inflow Dirichlet penalty plus a penalty on the boundary curl.
    Mixed,
}

impl FromStr for SchemeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dirichlet" => Ok(SchemeKind::Dirichlet),
            "mixed" => Ok(SchemeKind::Mixed),
            other => Err(Error::Config(format!("unknown boundary kind '{other}'"))),
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SchemeKind::Dirichlet => "dirichlet",
            SchemeKind::Mixed => "mixed",
        })
    }
}

/// Everything needed to pose the continuous problem on a grid.
#[derive(Debug, Clone)]
pub struct ModelConfig {
    pub velocity: Arc<dyn VelocityField>,
    pub epsilon: f64,
    pub bc: SchemeKind,
    pub forcing: ForcingSource,
    pub exact: Option<Arc<dyn ExactSolution>>,
    /// Mixed-condition parameter; kept for reference, the discrete mixed
    /// scheme does not use it.
    pub beta: Option<f64>,
    /// Adds the Dirichlet resistive penalty ε·σ″ to the mixed scheme as well.
    /// Off by default. σ″ < 0, so the extra term only removes energy.
    pub mixed_resistive_penalty: bool,
}

impl ModelConfig {
    /// Homogeneous Dirichlet problem without forcing.
    pub fn new(velocity: Arc<dyn VelocityField>, epsilon: f64) -> Self {
        ModelConfig {
            velocity,
            epsilon,
            bc: SchemeKind::Dirichlet,
            forcing: ForcingSource::None,
            exact: None,
            beta: None,
            mixed_resistive_penalty: false,
        }
    }

    pub fn with_bc(mut self, bc: SchemeKind) -> Self {
        self.bc = bc;
        self
    }

    pub fn with_forcing(mut self, forcing: ForcingSource) -> Self {
        self.forcing = forcing;
        self
    }

    pub fn with_exact(mut self, exact: Arc<dyn ExactSolution>) -> Self {
        self.exact = Some(exact);
        self
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = Some(beta);
        self
    }

    pub fn with_mixed_resistive_penalty(mut self, on: bool) -> Self {
        self.mixed_resistive_penalty = on;
        self
    }

    pub fn dim(&self) -> usize {
        self.velocity.dim()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return Err(Error::Config(format!(
                "resistivity must be finite and non-negative, got {}",
                self.epsilon
            )));
        }
        if self.bc == SchemeKind::Mixed && self.epsilon <= 0.0 {
            return Err(Error::MixedNeedsResistivity);
        }
        if let Some(exact) = &self.exact {
            if exact.dim() != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    found: exact.dim(),
                });
            }
        }
        Ok(())
    }
}
