use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::grid::{Discretization, Grid};

/// `100 · ‖num − ex‖₂ / ‖ex‖₂` with the node-weighted discrete l2 norm over
/// all components.
pub fn relative_percentage_error(grid: &Grid, num: &VectorField, exact: &VectorField) -> Result<f64> {
    Ok(100.0 * relative_error(grid, num, exact)?)
}

/// `‖num − ex‖₂ / ‖ex‖₂`, the unscaled ratio.
pub fn relative_error(grid: &Grid, num: &VectorField, exact: &VectorField) -> Result<f64> {
    num.check_same(exact)?;
    if num.shape() != grid.shape() {
        return Err(Error::GridMismatch);
    }
    let diff: Vec<Vec<f64>> = num
        .components()
        .iter()
        .zip(exact.components())
        .map(|(a, b)| a.values().iter().zip(b.values()).map(|(x, y)| x - y).collect())
        .collect();
    let den = grid.discrete_l2(exact.components().iter().map(|c| c.values()));
    if den == 0.0 {
        return Err(Error::ZeroDenominator("relative percentage error"));
    }
    Ok(grid.discrete_l2(diff.iter().map(Vec::as_slice)) / den)
}

/// Node-weighted l2 norm of `div_P V`.
pub fn divergence_error(disc: &Discretization, v: &VectorField) -> Result<f64> {
    let div = disc.div(v)?;
    Ok(disc.grid().discrete_l2([div.values()]))
}
