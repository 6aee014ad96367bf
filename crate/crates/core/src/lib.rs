//! High-order summation-by-parts (SBP) finite differences with simultaneous
//! approximation term (SAT) boundary penalties for the resistive magnetic
//! induction equations
//!
//! ```text
//! B_t + (u·∇)B − C B = −ε curl(curl B) + F,   C = Du − (div u) I,
//! ```
//!
//! on axis-aligned boxes in two and three dimensions.
//!
//! The crate is layered bottom-up:
//!
//! * [`sbp`]: 1D SBP operator pairs of interior order 2 and 4;
//! * [`grid`], [`field`], [`ops`]: tensor grids, grid functions and the
//!   matrix-free derivative, curl, curl-curl and divergence operators;
//! * [`model`]: velocity fields, exact solutions, forcing and boundary data;
//! * [`scheme`]: SAT penalties, the semi-discrete right-hand side and
//!   energy-rate diagnostics;
//! * [`time`]: Heun (RK2) time stepping with monitors;
//! * [`harness`]: experiment presets, error metrics, convergence tables and
//!   file output.

pub mod error;
pub mod field;
pub mod grid;
pub mod harness;
pub mod model;
pub mod ops;
pub mod sbp;
pub mod scheme;
pub mod time;

pub use error::{Error, Result};
pub use field::{ScalarField, VectorField};
pub use grid::{Axis, BoundaryFace, Discretization, Grid, Shape};
pub use sbp::{build_sbp2, build_sbp4, SbpOperator, SbpOrder};
