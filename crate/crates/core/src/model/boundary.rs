use super::ModelConfig;
use crate::error::{Error, Result};
use crate::field::{ScalarField, VectorField};
use crate::grid::{Discretization, Grid};

/// Dirichlet data `g(t)`: the exact solution sampled at the nodes in
/// `band` (zero elsewhere), or all zeros when the model has no exact solution.
///
/// Only boundary values are read by the penalties, so callers normally pass
/// the boundary nodes; `None` samples every node.
pub fn boundary_dirichlet_data(
    t: f64,
    grid: &Grid,
    model: &ModelConfig,
    band: Option<&[usize]>,
) -> VectorField {
    let dim = model.dim();
    let mut out = VectorField::zeros(grid.shape(), dim);
    let Some(exact) = &model.exact else {
        return out;
    };
    let mut put = |k: usize| {
        let v = exact.value(&grid.coords(k), t);
        for (c, comp) in out.components_mut().iter_mut().enumerate() {
            comp.values_mut()[k] = v[c];
        }
    };
    match band {
        Some(nodes) => nodes.iter().for_each(|&k| put(k)),
        None => (0..grid.len()).for_each(put),
    }
    out
}

/// Mixed-condition curl data `h(t)`: the discrete curl of the exact solution
/// restricted to the grid. Zero without an exact solution.
///
/// With `band` set, the exact solution is only sampled on those nodes; the
/// result is exact at every node whose derivative stencils stay inside the
/// band, which holds on the boundary for a band as wide as the closures.
pub fn boundary_mixed_data(
    t: f64,
    disc: &Discretization,
    model: &ModelConfig,
    band: Option<&[usize]>,
) -> Result<ScalarField> {
    if disc.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: disc.dim(),
        });
    }
    if model.exact.is_none() {
        return Ok(ScalarField::zeros(disc.shape()));
    }
    let b = boundary_dirichlet_data(t, disc.grid(), model, band);
    disc.curl_2d(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::BoundaryFace;
    use crate::model::{rotation_velocity, RotatingHump};
    use crate::sbp::SbpOrder;
    use std::sync::Arc;

    #[test]
    fn band_sampling_matches_full_sampling_on_faces() {
        for order in [SbpOrder::Second, SbpOrder::Fourth] {
            let disc = Discretization::new(Grid::square(24, -1.0, 1.0).unwrap(), order).unwrap();
            let model = ModelConfig::new(Arc::new(rotation_velocity()), 0.01)
                .with_exact(Arc::new(RotatingHump));
            let width = disc.operator(0).closure_span();
            let band = disc.grid().boundary_band(width);
            let full = boundary_mixed_data(0.4, &disc, &model, None).unwrap();
            let part = boundary_mixed_data(0.4, &disc, &model, Some(&band)).unwrap();
            for &f in &BoundaryFace::ALL_2D {
                for k in disc.grid().face_nodes(f).unwrap() {
                    assert_eq!(full.values()[k], part.values()[k]);
                }
            }
            let g_full = boundary_dirichlet_data(0.4, disc.grid(), &model, None);
            let g_part = boundary_dirichlet_data(0.4, disc.grid(), &model, Some(&band));
            for &k in &band {
                assert_eq!(g_full.component(1).values()[k], g_part.component(1).values()[k]);
            }
        }
    }

    #[test]
    fn zero_without_exact() {
        let disc = Discretization::new(Grid::square(5, 0.0, 1.0).unwrap(), SbpOrder::Second).unwrap();
        let model = ModelConfig::new(Arc::new(rotation_velocity()), 0.01);
        assert_eq!(boundary_dirichlet_data(0.0, disc.grid(), &model, None).max_abs(), 0.0);
        assert_eq!(boundary_mixed_data(0.0, &disc, &model, None).unwrap().max_abs(), 0.0);
    }
}
