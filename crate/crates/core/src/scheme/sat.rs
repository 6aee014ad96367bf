use super::penalty::PenaltyConfig;
use crate::error::{Error, Result};
use crate::field::{ScalarField, VectorField};
use crate::grid::{BoundaryFace, Discretization};
use crate::model::SchemeKind;

/// `out += Σ_faces σ/(h p₀) (V − g)` at the face nodes, every component.
/// `g = None` means homogeneous data.
pub fn add_face_penalties(
    pen: &PenaltyConfig,
    v: &VectorField,
    g: Option<&VectorField>,
    out: &mut VectorField,
) -> Result<()> {
    v.check_same(out)?;
    if let Some(g) = g {
        v.check_same(g)?;
    }
    for face in &pen.faces {
        let inv = 1.0 / face.boundary_norm;
        for (c, comp) in out.components_mut().iter_mut().enumerate() {
            let vc = v.component(c).values();
            let gc = g.map(|g| g.component(c).values());
            let oc = comp.values_mut();
            for (i, &k) in face.nodes.iter().enumerate() {
                let diff = vc[k] - gc.map_or(0.0, |g| g[k]);
                oc[k] += face.sigma(i, pen.epsilon) * inv * diff;
            }
        }
    }
    Ok(())
}

/// Mixed-scheme curl penalty: with `r = curl V − h`, component 1 gains
/// `±ε r/(h_y p₀)` on the high/low y-faces and component 2 gains
/// `∓ε r/(h_x p₀)` on the high/low x-faces.
pub fn add_curl_penalty(
    pen: &PenaltyConfig,
    curl: &ScalarField,
    h: Option<&ScalarField>,
    out: &mut VectorField,
) -> Result<()> {
    if out.ncomp() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: out.ncomp(),
        });
    }
    curl.check_same(out.component(0))?;
    if let Some(h) = h {
        curl.check_same(h)?;
    }
    if pen.epsilon <= 0.0 {
        return Err(Error::MixedNeedsResistivity);
    }
    let w = curl.values();
    let hv = h.map(|h| h.values());
    for face in &pen.faces {
        let (comp, sign) = match face.face {
            BoundaryFace::YHigh => (0, 1.0),
            BoundaryFace::YLow => (0, -1.0),
            BoundaryFace::XHigh => (1, -1.0),
            BoundaryFace::XLow => (1, 1.0),
            _ => continue,
        };
        let scale = sign * pen.epsilon / face.boundary_norm;
        let oc = out.component_mut(comp).values_mut();
        for &k in &face.nodes {
            oc[k] += scale * (w[k] - hv.map_or(0.0, |h| h[k]));
        }
    }
    Ok(())
}

/// Dirichlet SAT term `ℬ(V − g)`.
pub fn sat_dirichlet(
    disc: &Discretization,
    pen: &PenaltyConfig,
    v: &VectorField,
    g: &VectorField,
) -> Result<VectorField> {
    if v.shape() != disc.shape() {
        return Err(Error::GridMismatch);
    }
    let mut out = VectorField::zeros(v.shape(), v.ncomp());
    add_face_penalties(pen, v, Some(g), &mut out)?;
    Ok(out)
}

/// Mixed SAT term: the inflow penalty `ℬ′(V − g)` plus the curl penalty
/// against the boundary curl data `h`.
pub fn sat_mixed(
    disc: &Discretization,
    pen: &PenaltyConfig,
    v: &VectorField,
    g: &VectorField,
    h: &ScalarField,
) -> Result<VectorField> {
    if pen.kind != SchemeKind::Mixed {
        return Err(Error::Config("mixed SAT needs mixed penalties".into()));
    }
    let curl = disc.curl_2d(v)?;
    let mut out = sat_dirichlet(disc, pen, v, g)?;
    add_curl_penalty(pen, &curl, Some(h), &mut out)?;
    Ok(out)
}
