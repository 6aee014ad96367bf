use crate::error::{Error, Result};
use crate::grid::{BoundaryFace, Discretization};
use crate::model::{ModelConfig, SchemeKind};

/// Penalty strengths on one boundary face.
#[derive(Debug, Clone, PartialEq)]
pub struct FacePenalty {
    pub face: BoundaryFace,
    /// Flat indices of the face nodes.
    pub nodes: Vec<usize>,
    /// Advective strengths `σ′`, one per face node.
    pub advective: Vec<f64>,
    /// Resistive strength `σ″` (zero for the mixed scheme).
    pub resistive: f64,
    /// Boundary norm `h·p₀` along the face normal.
    pub boundary_norm: f64,
}

impl FacePenalty {
    /// Total strength `σ′ + ε σ″` at the `i`-th face node.
    pub fn sigma(&self, i: usize, epsilon: f64) -> f64 {
        self.advective[i] + epsilon * self.resistive
    }
}

/// Penalty coefficients for every face of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PenaltyConfig {
    pub kind: SchemeKind,
    pub epsilon: f64,
    pub faces: Vec<FacePenalty>,
}

impl PenaltyConfig {
    pub fn face(&self, face: BoundaryFace) -> Option<&FacePenalty> {
        self.faces.iter().find(|f| f.face == face)
    }
}

/// Penalties at the stability bounds, taken with equality:
/// `σ′ = −max(u·e, 0)/2` on low faces and `min(u·e, 0)/2` on high faces,
/// where `e` is the face's axis direction, and `σ″ = −1/(2 p₀ h)` for the
/// Dirichlet scheme. The mixed scheme keeps `σ″` only when the model asks
/// for it.
pub fn build_penalties(
    model: &ModelConfig,
    disc: &Discretization,
    kind: SchemeKind,
    t: f64,
) -> Result<PenaltyConfig> {
    if model.dim() != disc.dim() {
        return Err(Error::DimensionMismatch {
            expected: disc.dim(),
            found: model.dim(),
        });
    }
    if kind == SchemeKind::Mixed {
        if model.epsilon <= 0.0 {
            return Err(Error::MixedNeedsResistivity);
        }
        if disc.dim() != 2 {
            return Err(Error::Config("the mixed scheme is only available in 2D".into()));
        }
    }
    let grid = disc.grid();
    let mut faces = Vec::new();
    for &face in BoundaryFace::all(disc.dim()) {
        let axis = face.axis();
        let nodes = grid.face_nodes(face)?;
        let advective = nodes
            .iter()
            .map(|&k| {
                let normal_speed = model.velocity.value(&grid.coords(k), t)[axis];
                if face.is_high() {
                    normal_speed.min(0.0) / 2.0
                } else {
                    -normal_speed.max(0.0) / 2.0
                }
            })
            .collect();
        let boundary_norm = disc.boundary_norm(face);
        let resistive = match kind {
            SchemeKind::Dirichlet => -1.0 / (2.0 * boundary_norm),
            SchemeKind::Mixed if model.mixed_resistive_penalty => -1.0 / (2.0 * boundary_norm),
            SchemeKind::Mixed => 0.0,
        };
        faces.push(FacePenalty {
            face,
            nodes,
            advective,
            resistive,
            boundary_norm,
        });
    }
    Ok(PenaltyConfig {
        kind,
        epsilon: model.epsilon,
        faces,
    })
}
