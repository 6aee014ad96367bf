use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the solver stack.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("axis {axis} out of range for a {dim}-dimensional grid")]
    AxisOutOfRange { axis: usize, dim: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("face {0:?} does not exist on a {1}-dimensional grid")]
    FaceNotInGrid(crate::grid::BoundaryFace, usize),

    #[error("model has no exact solution")]
    MissingExactSolution,

    #[error("mixed boundary conditions require a positive resistivity")]
    MixedNeedsResistivity,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("zero denominator in {0}")]
    ZeroDenominator(&'static str),

    #[error("non-finite value at t = {t}: component {component}, node {node}")]
    NonFinite {
        t: f64,
        component: usize,
        node: usize,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}
