//! Tensor-product grids and the per-axis operator set built on them.
//!
//! Grid functions are stored flat with the last axis varying fastest, so in
//! 2D node `(i, j)` lives at `i * M + j`.

use crate::error::{Error, Result};
use crate::sbp::{SbpOperator, SbpOrder};

/// One uniformly discretized axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub nodes: usize,
    pub spacing: f64,
    pub origin: f64,
}

impl Axis {
    /// `nodes` points covering `[lo, hi]` with both ends included.
    pub fn uniform(nodes: usize, lo: f64, hi: f64) -> Result<Self> {
        if nodes < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 nodes, got {nodes}")));
        }
        if !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidGrid(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Axis {
            nodes,
            spacing: (hi - lo) / (nodes - 1) as f64,
            origin: lo,
        })
    }

    pub fn coord(&self, i: usize) -> f64 {
        self.origin + i as f64 * self.spacing
    }

    pub fn extent(&self) -> f64 {
        (self.nodes - 1) as f64 * self.spacing
    }
}

/// Node counts of a 2D or 3D grid function, plus index arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Shape {
    dims: [usize; 3],
    ndim: usize,
}

impl Shape {
    pub fn new(dims: &[usize]) -> Result<Self> {
        if !(2..=3).contains(&dims.len()) {
            return Err(Error::InvalidGrid(format!(
                "grids are 2D or 3D, got {} axes",
                dims.len()
            )));
        }
        let mut d = [1; 3];
        d[..dims.len()].copy_from_slice(dims);
        Ok(Shape {
            dims: d,
            ndim: dims.len(),
        })
    }

    pub fn ndim(&self) -> usize {
        self.ndim
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims[..self.ndim]
    }

    pub fn len(&self) -> usize {
        self.dims().iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Distance in the flat vector between neighbours along `axis`.
    pub fn stride(&self, axis: usize) -> usize {
        self.dims()[axis + 1..].iter().product()
    }

    /// Number of independent blocks when sweeping along `axis`.
    pub fn outer(&self, axis: usize) -> usize {
        self.dims()[..axis].iter().product()
    }

    pub fn flat(&self, idx: &[usize]) -> usize {
        idx.iter()
            .zip(self.dims())
            .fold(0, |acc, (&i, &n)| acc * n + i)
    }

    pub fn unravel(&self, mut flat: usize) -> [usize; 3] {
        let mut idx = [0; 3];
        for a in (0..self.ndim).rev() {
            idx[a] = flat % self.dims[a];
            flat /= self.dims[a];
        }
        idx
    }
}

/// Boundary faces of the computational box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryFace {
    XLow,
    XHigh,
    YLow,
    YHigh,
    ZLow,
    ZHigh,
}

impl BoundaryFace {
    pub const ALL_2D: [BoundaryFace; 4] = [
        BoundaryFace::XLow,
        BoundaryFace::XHigh,
        BoundaryFace::YLow,
        BoundaryFace::YHigh,
    ];
    pub const ALL_3D: [BoundaryFace; 6] = [
        BoundaryFace::XLow,
        BoundaryFace::XHigh,
        BoundaryFace::YLow,
        BoundaryFace::YHigh,
        BoundaryFace::ZLow,
        BoundaryFace::ZHigh,
    ];

    pub fn all(dim: usize) -> &'static [BoundaryFace] {
        if dim == 3 {
            &Self::ALL_3D
        } else {
            &Self::ALL_2D
        }
    }

    pub fn axis(self) -> usize {
        match self {
            BoundaryFace::XLow | BoundaryFace::XHigh => 0,
            BoundaryFace::YLow | BoundaryFace::YHigh => 1,
            BoundaryFace::ZLow | BoundaryFace::ZHigh => 2,
        }
    }

    pub fn is_high(self) -> bool {
        matches!(
            self,
            BoundaryFace::XHigh | BoundaryFace::YHigh | BoundaryFace::ZHigh
        )
    }

    /// Outward normal sign along [`Self::axis`].
    pub fn outward_sign(self) -> f64 {
        if self.is_high() {
            1.0
        } else {
            -1.0
        }
    }
}

/// Axis-aligned tensor-product grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    axes: Vec<Axis>,
    shape: Shape,
}

impl Grid {
    pub fn new(axes: Vec<Axis>) -> Result<Self> {
        let dims: Vec<usize> = axes.iter().map(|a| a.nodes).collect();
        let shape = Shape::new(&dims)?;
        for a in &axes {
            if !(a.spacing > 0.0) {
                return Err(Error::InvalidGrid(format!("non-positive spacing {}", a.spacing)));
            }
        }
        Ok(Grid { axes, shape })
    }

    /// `nodes × nodes` grid on `[lo, hi]²`.
    pub fn square(nodes: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![Axis::uniform(nodes, lo, hi)?; 2])
    }

    /// `nodes³` grid on `[lo, hi]³`.
    pub fn cube(nodes: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![Axis::uniform(nodes, lo, hi)?; 3])
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn axis(&self, a: usize) -> &Axis {
        &self.axes[a]
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn len(&self) -> usize {
        self.shape.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shape.is_empty()
    }

    pub fn min_spacing(&self) -> f64 {
        self.axes.iter().map(|a| a.spacing).fold(f64::INFINITY, f64::min)
    }

    /// Product of the spacings: the volume element of a node.
    pub fn cell_volume(&self) -> f64 {
        self.axes.iter().map(|a| a.spacing).product()
    }

    /// `(ΔxΔy… Σ_k Σ_c v_c[k]²)^{1/2}` over any number of stacked grid
    /// functions.
    pub fn discrete_l2<'a>(&self, parts: impl IntoIterator<Item = &'a [f64]>) -> f64 {
        let sum: f64 = parts
            .into_iter()
            .map(|p| p.iter().map(|v| v * v).sum::<f64>())
            .sum();
        (self.cell_volume() * sum).sqrt()
    }

    /// Physical coordinates of a flat node index (unused axes are 0).
    pub fn coords(&self, flat: usize) -> [f64; 3] {
        let idx = self.shape.unravel(flat);
        let mut x = [0.0; 3];
        for (a, axis) in self.axes.iter().enumerate() {
            x[a] = axis.coord(idx[a]);
        }
        x
    }

    /// Iterator over `(flat index, coordinates)` in storage order.
    pub fn nodes(&self) -> impl Iterator<Item = (usize, [f64; 3])> + '_ {
        (0..self.len()).map(move |k| (k, self.coords(k)))
    }

    /// Flat indices of the nodes on `face`, in storage order.
    pub fn face_nodes(&self, face: BoundaryFace) -> Result<Vec<usize>> {
        let axis = face.axis();
        if axis >= self.dim() {
            return Err(Error::FaceNotInGrid(face, self.dim()));
        }
        let fixed = if face.is_high() {
            self.axes[axis].nodes - 1
        } else {
            0
        };
        Ok((0..self.len())
            .filter(|&k| self.shape.unravel(k)[axis] == fixed)
            .collect())
    }

    /// Flat indices of nodes within `width` nodes of any face.
    pub fn boundary_band(&self, width: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| {
                let idx = self.shape.unravel(k);
                self.axes
                    .iter()
                    .enumerate()
                    .any(|(a, ax)| idx[a] < width || idx[a] + width >= ax.nodes)
            })
            .collect()
    }
}

/// A grid together with one SBP operator per axis.
#[derive(Debug, Clone)]
pub struct Discretization {
    grid: Grid,
    order: SbpOrder,
    ops: Vec<SbpOperator>,
    weights: Vec<f64>,
}

impl Discretization {
    pub fn new(grid: Grid, order: SbpOrder) -> Result<Self> {
        let ops = grid
            .axes()
            .iter()
            .map(|a| SbpOperator::new(order, a.nodes, a.spacing))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::assemble(grid, order, ops))
    }

    /// Builds from explicitly supplied per-axis operators.
    pub fn from_operators(grid: Grid, ops: Vec<SbpOperator>) -> Result<Self> {
        if ops.len() != grid.dim() {
            return Err(Error::DimensionMismatch {
                expected: grid.dim(),
                found: ops.len(),
            });
        }
        for (op, axis) in ops.iter().zip(grid.axes()) {
            if op.len() != axis.nodes || (op.spacing() - axis.spacing).abs() > 1e-14 * axis.spacing
            {
                return Err(Error::InvalidGrid(
                    "operator size or spacing does not match its axis".into(),
                ));
            }
        }
        let order = ops[0].order();
        Ok(Self::assemble(grid, order, ops))
    }

    fn assemble(grid: Grid, order: SbpOrder, ops: Vec<SbpOperator>) -> Self {
        let shape = grid.shape();
        let weights = (0..grid.len())
            .map(|k| {
                let idx = shape.unravel(k);
                ops.iter()
                    .enumerate()
                    .map(|(a, op)| op.spacing() * op.weights()[idx[a]])
                    .product()
            })
            .collect();
        Discretization {
            grid,
            order,
            ops,
            weights,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn order(&self) -> SbpOrder {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.grid.dim()
    }

    pub fn shape(&self) -> Shape {
        self.grid.shape()
    }

    pub fn operators(&self) -> &[SbpOperator] {
        &self.ops
    }

    pub fn operator(&self, axis: usize) -> &SbpOperator {
        &self.ops[axis]
    }

    /// Diagonal entry of `P = ⊗ P_a` at a flat index.
    pub fn node_weight(&self, flat: usize) -> f64 {
        self.weights[flat]
    }

    /// All diagonal entries of `P` in storage order.
    pub fn node_weights(&self) -> &[f64] {
        &self.weights
    }

    /// Tangential weight of a face node: the norm weights of every axis
    /// except the face normal.
    pub fn face_weight(&self, face: BoundaryFace, flat: usize) -> f64 {
        let idx = self.shape().unravel(flat);
        self.ops
            .iter()
            .enumerate()
            .filter(|(a, _)| *a != face.axis())
            .map(|(a, op)| op.spacing() * op.weights()[idx[a]])
            .product()
    }

    /// `h·p` of the boundary node on the normal axis of `face`.
    pub fn boundary_norm(&self, face: BoundaryFace) -> f64 {
        let op = &self.ops[face.axis()];
        op.spacing() * op.p_corner()
    }
}
