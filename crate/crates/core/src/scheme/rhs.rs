use std::sync::Arc;

use super::penalty::{build_penalties, PenaltyConfig};
use super::sat::{add_curl_penalty, add_face_penalties};
use crate::error::{Error, Result};
use crate::field::{ScalarField, VectorField};
use crate::grid::Discretization;
use crate::model::{
    boundary_dirichlet_data, boundary_mixed_data, coupling_matrix, forcing_field, ModelConfig,
    SchemeKind,
};

/// Velocity-dependent coefficients sampled on the grid at one time.
#[derive(Debug, Clone)]
struct Coefficients {
    velocity: Vec<Vec<f64>>,
    /// `coupling[r * dim + c]` holds `C[r][c]` at every node.
    coupling: Vec<Vec<f64>>,
    penalties: PenaltyConfig,
}

impl Coefficients {
    fn sample(disc: &Discretization, model: &ModelConfig, t: f64) -> Result<Self> {
        let dim = disc.dim();
        let n = disc.grid().len();
        let mut velocity = vec![vec![0.0; n]; dim];
        let mut coupling = vec![vec![0.0; n]; dim * dim];
        for (k, x) in disc.grid().nodes() {
            let u = model.velocity.value(&x, t);
            let c = coupling_matrix(&model.velocity.jacobian(&x, t), dim);
            for a in 0..dim {
                velocity[a][k] = u[a];
                for b in 0..dim {
                    coupling[a * dim + b][k] = c[a][b];
                }
            }
        }
        Ok(Coefficients {
            velocity,
            coupling,
            penalties: build_penalties(model, disc, model.bc, t)?,
        })
    }
}

#[derive(Debug, Clone)]
struct Sources {
    t: f64,
    g: Option<VectorField>,
    h: Option<ScalarField>,
    forcing: Option<VectorField>,
}

/// The semi-discrete operator `dV/dt = L(t, V)` for one model on one grid.
///
/// Velocity samples, the coupling matrix and penalties are computed once
/// for autonomous velocities. Boundary data and forcing are cached for the
/// most recent time, which halves their cost under Heun stepping.
#[derive(Debug, Clone)]
pub struct SemiDiscrete {
    disc: Arc<Discretization>,
    model: ModelConfig,
    frozen: Option<Coefficients>,
    band: Vec<usize>,
    sources: Option<Sources>,
}

impl SemiDiscrete {
    pub fn new(disc: Discretization, model: ModelConfig) -> Result<Self> {
        Self::shared(Arc::new(disc), model)
    }

    pub fn shared(disc: Arc<Discretization>, model: ModelConfig) -> Result<Self> {
        model.validate()?;
        if model.dim() != disc.dim() {
            return Err(Error::DimensionMismatch {
                expected: disc.dim(),
                found: model.dim(),
            });
        }
        if model.bc == SchemeKind::Mixed && disc.dim() != 2 {
            return Err(Error::Config("the mixed scheme is only available in 2D".into()));
        }
        let frozen = if model.velocity.is_autonomous() {
            Some(Coefficients::sample(&disc, &model, 0.0)?)
        } else {
            None
        };
        let width = disc.operators().iter().map(|op| op.closure_span()).max().unwrap_or(1);
        let band = disc.grid().boundary_band(width);
        Ok(SemiDiscrete {
            disc,
            model,
            frozen,
            band,
            sources: None,
        })
    }

    /// Replaces the penalty coefficients; used to study non-default choices.
    /// Only available for autonomous velocities.
    pub fn with_penalties(mut self, penalties: PenaltyConfig) -> Result<Self> {
        let frozen = self.frozen.as_mut().ok_or_else(|| {
            Error::Config("custom penalties need an autonomous velocity".into())
        })?;
        if penalties.faces.len() != frozen.penalties.faces.len() {
            return Err(Error::Config("penalty faces do not match the grid".into()));
        }
        frozen.penalties = penalties;
        Ok(self)
    }

    pub fn discretization(&self) -> &Discretization {
        &self.disc
    }

    pub fn model(&self) -> &ModelConfig {
        &self.model
    }

    pub fn kind(&self) -> SchemeKind {
        self.model.bc
    }

    /// Penalties in use at time `t`.
    pub fn penalties(&self, t: f64) -> Result<PenaltyConfig> {
        match &self.frozen {
            Some(c) => Ok(c.penalties.clone()),
            None => build_penalties(&self.model, &self.disc, self.model.bc, t),
        }
    }

    /// Full right-hand side including boundary data and forcing at `t`.
    pub fn rhs(&mut self, t: f64, v: &VectorField) -> Result<VectorField> {
        let cached = matches!(&self.sources, Some(s) if s.t.to_bits() == t.to_bits());
        if !cached {
            self.sources = Some(self.sources_at(t)?);
        }
        let sources = self.sources.as_ref().expect("sources cached above");
        let fresh;
        let coeffs = match &self.frozen {
            Some(c) => c,
            None => {
                fresh = Coefficients::sample(&self.disc, &self.model, t)?;
                &fresh
            }
        };
        let mut out = self.evaluate(coeffs, v, sources.g.as_ref(), sources.h.as_ref())?;
        if let Some(f) = &sources.forcing {
            out.axpy(1.0, f)?;
        }
        Ok(out)
    }

    /// Right-hand side with `g = h = 0` and no forcing.
    pub fn homogeneous_rhs(&self, t: f64, v: &VectorField) -> Result<VectorField> {
        match &self.frozen {
            Some(c) => self.evaluate(c, v, None, None),
            None => {
                let c = Coefficients::sample(&self.disc, &self.model, t)?;
                self.evaluate(&c, v, None, None)
            }
        }
    }

    fn sources_at(&self, t: f64) -> Result<Sources> {
        let (g, h) = if self.model.exact.is_some() {
            let g = boundary_dirichlet_data(t, self.disc.grid(), &self.model, Some(&self.band));
            let h = match self.model.bc {
                SchemeKind::Mixed => Some(boundary_mixed_data(t, &self.disc, &self.model, Some(&self.band))?),
                SchemeKind::Dirichlet => None,
            };
            (Some(g), h)
        } else {
            (None, None)
        };
        Ok(Sources {
            t,
            g,
            h,
            forcing: forcing_field(t, self.disc.grid(), &self.model)?,
        })
    }

    fn evaluate(
        &self,
        coeffs: &Coefficients,
        v: &VectorField,
        g: Option<&VectorField>,
        h: Option<&ScalarField>,
    ) -> Result<VectorField> {
        let disc = &*self.disc;
        let dim = disc.dim();
        if v.ncomp() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.ncomp(),
            });
        }
        if v.shape() != disc.shape() {
            return Err(Error::GridMismatch);
        }
        // grads[k][a] = 𝔡_a V^k
        let grads: Vec<Vec<ScalarField>> = (0..dim)
            .map(|k| (0..dim).map(|a| disc.d(a, v.component(k))).collect())
            .collect::<Result<_>>()?;

        let mut out = VectorField::zeros(disc.shape(), dim);
        for (k, comp) in out.components_mut().iter_mut().enumerate() {
            let o = comp.values_mut();
            for l in 0..dim {
                let c = &coeffs.coupling[k * dim + l];
                let vl = v.component(l).values();
                for ((o, c), x) in o.iter_mut().zip(c).zip(vl) {
                    *o += c * x;
                }
            }
            for a in 0..dim {
                let u = &coeffs.velocity[a];
                let dv = grads[k][a].values();
                for ((o, u), d) in o.iter_mut().zip(u).zip(dv) {
                    *o -= u * d;
                }
            }
        }

        let eps = self.model.epsilon;
        let curl2 = if dim == 2 {
            let mut w = grads[1][0].clone();
            w.axpy(-1.0, &grads[0][1])?;
            Some(w)
        } else {
            None
        };
        if eps > 0.0 {
            let cc = if let Some(w) = &curl2 {
                let mut c1 = disc.d(0, &grads[1][1])?;
                c1.axpy(-1.0, &disc.d(1, &grads[0][1])?)?;
                let mut c2 = disc.d(0, w)?;
                c2.scale(-1.0);
                VectorField::new(vec![c1, c2])?
            } else {
                let w = VectorField::new(vec![
                    difference(&grads[2][1], &grads[1][2])?,
                    difference(&grads[0][2], &grads[2][0])?,
                    difference(&grads[1][0], &grads[0][1])?,
                ])?;
                disc.curl_3d(&w)?
            };
            out.axpy(-eps, &cc)?;
        }

        add_face_penalties(&coeffs.penalties, v, g, &mut out)?;
        if self.model.bc == SchemeKind::Mixed {
            let w = curl2.as_ref().expect("mixed scheme is 2D");
            add_curl_penalty(&coeffs.penalties, w, h, &mut out)?;
        }
        Ok(out)
    }
}

fn difference(a: &ScalarField, b: &ScalarField) -> Result<ScalarField> {
    let mut w = a.clone();
    w.axpy(-1.0, b)?;
    Ok(w)
}

/// One-shot evaluation of the full right-hand side.
pub fn semidiscrete_rhs(
    disc: &Discretization,
    model: &ModelConfig,
    t: f64,
    v: &VectorField,
) -> Result<VectorField> {
    SemiDiscrete::new(disc.clone(), model.clone())?.rhs(t, v)
}
