//! Scalar and vector grid functions.

use crate::error::{check_len, Error, Result};
use crate::grid::{Grid, Shape};

/// A scalar grid function in storage order (last axis fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    shape: Shape,
    values: Vec<f64>,
}

impl ScalarField {
    pub fn zeros(shape: Shape) -> Self {
        ScalarField {
            shape,
            values: vec![0.0; shape.len()],
        }
    }

    pub fn from_values(shape: Shape, values: Vec<f64>) -> Result<Self> {
        check_len(shape.len(), values.len())?;
        Ok(ScalarField { shape, values })
    }

    /// Samples `f(x)` at every node.
    pub fn from_fn(grid: &Grid, f: impl Fn(&[f64; 3]) -> f64) -> Self {
        ScalarField {
            shape: grid.shape(),
            values: grid.nodes().map(|(_, x)| f(&x)).collect(),
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub(crate) fn check_same(&self, other: &ScalarField) -> Result<()> {
        if self.shape == other.shape {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    /// `self += a * x`.
    pub fn axpy(&mut self, a: f64, x: &ScalarField) -> Result<()> {
        self.check_same(x)?;
        for (s, v) in self.values.iter_mut().zip(&x.values) {
            *s += a * v;
        }
        Ok(())
    }

    pub fn scale(&mut self, a: f64) {
        self.values.iter_mut().for_each(|v| *v *= a);
    }

    /// Node-wise product `u ∘ self`.
    pub fn hadamard(&self, u: &ScalarField) -> Result<ScalarField> {
        self.check_same(u)?;
        Ok(ScalarField {
            shape: self.shape,
            values: self.values.iter().zip(&u.values).map(|(a, b)| a * b).collect(),
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// A vector-valued grid function: one scalar field per component.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    components: Vec<ScalarField>,
}

impl VectorField {
    pub fn zeros(shape: Shape, ncomp: usize) -> Self {
        VectorField {
            components: vec![ScalarField::zeros(shape); ncomp],
        }
    }

    pub fn new(components: Vec<ScalarField>) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::Config("vector field needs at least one component".into()))?;
        for c in &components[1..] {
            first.check_same(c)?;
        }
        Ok(VectorField { components })
    }

    /// Samples a vector function with `ncomp` components at every node.
    pub fn from_fn(grid: &Grid, ncomp: usize, f: impl Fn(&[f64; 3]) -> [f64; 3]) -> Self {
        let mut out = VectorField::zeros(grid.shape(), ncomp);
        for (k, x) in grid.nodes() {
            let v = f(&x);
            for (c, comp) in out.components.iter_mut().enumerate() {
                comp.values[k] = v[c];
            }
        }
        out
    }

    pub fn shape(&self) -> Shape {
        self.components[0].shape
    }

    pub fn ncomp(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[ScalarField] {
        &self.components
    }

    pub fn components_mut(&mut self) -> &mut [ScalarField] {
        &mut self.components
    }

    pub fn component(&self, c: usize) -> &ScalarField {
        &self.components[c]
    }

    pub fn component_mut(&mut self, c: usize) -> &mut ScalarField {
        &mut self.components[c]
    }

    pub fn into_components(self) -> Vec<ScalarField> {
        self.components
    }

    pub(crate) fn check_same(&self, other: &VectorField) -> Result<()> {
        if self.ncomp() != other.ncomp() {
            return Err(Error::DimensionMismatch {
                expected: self.ncomp(),
                found: other.ncomp(),
            });
        }
        if self.shape() != other.shape() {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }

    /// `self += a * x`.
    pub fn axpy(&mut self, a: f64, x: &VectorField) -> Result<()> {
        self.check_same(x)?;
        for (s, v) in self.components.iter_mut().zip(&x.components) {
            s.axpy(a, v)?;
        }
        Ok(())
    }

    pub fn scale(&mut self, a: f64) {
        self.components.iter_mut().for_each(|c| c.scale(a));
    }

    /// `u ∘ V`, applied to every component.
    pub fn hadamard(&self, u: &ScalarField) -> Result<VectorField> {
        Ok(VectorField {
            components: self
                .components
                .iter()
                .map(|c| c.hadamard(u))
                .collect::<Result<_>>()?,
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.components.iter().fold(0.0, |m, c| m.max(c.max_abs()))
    }

    /// Node-wise Euclidean magnitude.
    pub fn magnitude(&self) -> ScalarField {
        let mut out = ScalarField::zeros(self.shape());
        for c in &self.components {
            for (o, v) in out.values.iter_mut().zip(&c.values) {
                *o += v * v;
            }
        }
        out.values.iter_mut().for_each(|v| *v = v.sqrt());
        out
    }

    /// First non-finite entry as `(component, node)`.
    pub fn first_non_finite(&self) -> Option<(usize, usize)> {
        self.components.iter().enumerate().find_map(|(c, comp)| {
            comp.values
                .iter()
                .position(|v| !v.is_finite())
                .map(|k| (c, k))
        })
    }

    /// Concatenated component values.
    pub fn to_flat(&self) -> Vec<f64> {
        self.components.iter().flat_map(|c| c.values.iter().copied()).collect()
    }

    /// Inverse of [`Self::to_flat`].
    pub fn from_flat(shape: Shape, ncomp: usize, flat: &[f64]) -> Result<Self> {
        check_len(shape.len() * ncomp, flat.len())?;
        Ok(VectorField {
            components: flat
                .chunks(shape.len())
                .map(|c| ScalarField {
                    shape,
                    values: c.to_vec(),
                })
                .collect(),
        })
    }
}
