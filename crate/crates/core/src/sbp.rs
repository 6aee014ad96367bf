//! One-dimensional summation-by-parts (SBP) first-derivative operators.
//!
//! An operator is the pair `(P, D)` with `P = h·diag(p_0, …, p_{n-1})` and
//! `D = P⁻¹Q`, where `Q + Qᵀ = diag(-1, 0, …, 0, 1)`. Only the top boundary
//! closure is tabulated; the bottom closure follows from the central symmetry
//! of `D` (index reversal with a sign flip).

use crate::error::{check_len, Error, Result};

/// Interior accuracy of the operator pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SbpOrder {
    /// Second order in the interior, first order at the boundary.
    Second,
    /// Fourth order in the interior, second order at the boundary.
    Fourth,
}

impl SbpOrder {
    pub fn interior_order(self) -> usize {
        match self {
            SbpOrder::Second => 2,
            SbpOrder::Fourth => 4,
        }
    }

    pub fn boundary_order(self) -> usize {
        match self {
            SbpOrder::Second => 1,
            SbpOrder::Fourth => 2,
        }
    }

    /// Smallest node count for which the two closures do not overlap.
    pub fn min_nodes(self) -> usize {
        match self {
            SbpOrder::Second => 3,
            SbpOrder::Fourth => 9,
        }
    }

    pub fn from_interior_order(order: usize) -> Option<Self> {
        match order {
            2 => Some(SbpOrder::Second),
            4 => Some(SbpOrder::Fourth),
            _ => None,
        }
    }
}

impl std::fmt::Display for SbpOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SBP{}", self.interior_order())
    }
}

/// A 1D SBP operator on `n` uniformly spaced nodes.
///
/// Coefficients are stored for unit spacing and scaled by `1/h` on
/// application.
#[derive(Debug, Clone, PartialEq)]
pub struct SbpOperator {
    order: SbpOrder,
    n: usize,
    h: f64,
    weights: Vec<f64>,
    top: Vec<Vec<f64>>,
    bottom: Vec<Vec<f64>>,
    stencil: Vec<f64>,
}

impl SbpOperator {
    pub fn new(order: SbpOrder, n: usize, h: f64) -> Result<Self> {
        match order {
            SbpOrder::Second => build_sbp2(n, h),
            SbpOrder::Fourth => build_sbp4(n, h),
        }
    }

    pub fn order(&self) -> SbpOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    /// Diagonal of `P / h`.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// First (and last) norm weight `p`.
    pub fn p_corner(&self) -> f64 {
        self.weights[0]
    }

    /// Number of rows modified by each boundary closure.
    pub fn boundary_width(&self) -> usize {
        self.top.len()
    }

    /// Number of columns touched by the closure rows; a boundary band this
    /// wide holds every value a boundary derivative reads.
    pub fn closure_span(&self) -> usize {
        self.top.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Largest distance between a row and any column it reads.
    pub fn reach(&self) -> usize {
        (0..self.n)
            .map(|i| {
                let (first, coeffs) = self.row(i);
                (i - first).max(first + coeffs.len() - 1 - i)
            })
            .max()
            .unwrap_or(0)
    }

    /// Top closure rows of `h·D`, each starting at column 0.
    pub fn closure_top(&self) -> &[Vec<f64>] {
        &self.top
    }

    /// Bottom closure rows of `h·D` in ascending row order, each ending at
    /// column `n - 1`.
    pub fn closure_bottom(&self) -> &[Vec<f64>] {
        &self.bottom
    }

    /// Centered interior row of `h·D`.
    pub fn stencil(&self) -> &[f64] {
        &self.stencil
    }

    /// Row `i` of `h·D` as (first column, coefficients).
    pub fn row(&self, i: usize) -> (usize, &[f64]) {
        let bw = self.top.len();
        if i < bw {
            (0, &self.top[i])
        } else if i >= self.n - bw {
            let coeffs = &self.bottom[i - (self.n - bw)];
            (self.n - coeffs.len(), coeffs)
        } else {
            let r = self.stencil.len() / 2;
            (i - r, &self.stencil)
        }
    }

    /// `D·w`.
    pub fn apply(&self, w: &[f64]) -> Result<Vec<f64>> {
        check_len(self.n, w.len())?;
        let mut out = vec![0.0; self.n];
        self.apply_block(w, &mut out, 1);
        Ok(out)
    }

    /// Applies `D` to an `n × inner` row-major block: row `i` of `out` is
    /// `Σ_j D_ij · input[j]`, where each "row" is a contiguous run of
    /// `inner` values. `inner == 1` is the plain vector case.
    pub(crate) fn apply_block(&self, input: &[f64], out: &mut [f64], inner: usize) {
        debug_assert_eq!(input.len(), self.n * inner);
        debug_assert_eq!(out.len(), self.n * inner);
        let inv_h = 1.0 / self.h;
        if inner == 1 {
            for (i, o) in out.iter_mut().enumerate() {
                let (start, coeffs) = self.row(i);
                let acc: f64 = coeffs
                    .iter()
                    .zip(&input[start..start + coeffs.len()])
                    .map(|(c, v)| c * v)
                    .sum();
                *o = acc * inv_h;
            }
            return;
        }
        for i in 0..self.n {
            let (start, coeffs) = self.row(i);
            let dst = &mut out[i * inner..(i + 1) * inner];
            dst.fill(0.0);
            for (k, &c) in coeffs.iter().enumerate() {
                if c == 0.0 {
                    continue;
                }
                let j = start + k;
                let src = &input[j * inner..(j + 1) * inner];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += c * s;
                }
            }
            for d in dst.iter_mut() {
                *d *= inv_h;
            }
        }
    }

    /// `(v, w)_P = h Σ p_i v_i w_i`.
    pub fn inner_product(&self, v: &[f64], w: &[f64]) -> Result<f64> {
        check_len(self.n, v.len())?;
        check_len(self.n, w.len())?;
        let s: f64 = self
            .weights
            .iter()
            .zip(v.iter().zip(w))
            .map(|(p, (a, b))| p * a * b)
            .sum();
        Ok(self.h * s)
    }

    /// Dense `D` (row-major), for tests and small diagnostics.
    pub fn dense_derivative(&self) -> Vec<Vec<f64>> {
        let mut d = vec![vec![0.0; self.n]; self.n];
        for (i, row) in d.iter_mut().enumerate() {
            let (start, coeffs) = self.row(i);
            for (k, c) in coeffs.iter().enumerate() {
                row[start + k] = c / self.h;
            }
        }
        d
    }

    fn from_tables(
        order: SbpOrder,
        n: usize,
        h: f64,
        boundary_weights: &[f64],
        top: Vec<Vec<f64>>,
        stencil: Vec<f64>,
    ) -> Result<Self> {
        if n < order.min_nodes() {
            return Err(Error::InvalidOperator(format!(
                "{order} needs at least {} nodes, got {n}",
                order.min_nodes()
            )));
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidOperator(format!(
                "spacing must be positive, got {h}"
            )));
        }
        let mut weights = vec![1.0; n];
        for (i, &p) in boundary_weights.iter().enumerate() {
            weights[i] = p;
            weights[n - 1 - i] = p;
        }
        let bottom = top
            .iter()
            .rev()
            .map(|row| row.iter().rev().map(|c| -c).collect())
            .collect();
        Ok(SbpOperator {
            order,
            n,
            h,
            weights,
            top,
            bottom,
            stencil,
        })
    }
}

/// Second-order interior, first-order boundary operator.
pub fn build_sbp2(n: usize, h: f64) -> Result<SbpOperator> {
    SbpOperator::from_tables(
        SbpOrder::Second,
        n,
        h,
        &[0.5],
        vec![vec![-1.0, 1.0]],
        vec![-0.5, 0.0, 0.5],
    )
}

/// Fourth-order interior, second-order boundary operator with the classical
/// diagonal norm `(17/48, 59/48, 43/48, 49/48, 1, …)`.
pub fn build_sbp4(n: usize, h: f64) -> Result<SbpOperator> {
    let top = vec![
        vec![-24.0 / 17.0, 59.0 / 34.0, -4.0 / 17.0, -3.0 / 34.0],
        vec![-1.0 / 2.0, 0.0, 1.0 / 2.0],
        vec![4.0 / 43.0, -59.0 / 86.0, 0.0, 59.0 / 86.0, -4.0 / 43.0],
        vec![3.0 / 98.0, 0.0, -59.0 / 98.0, 0.0, 32.0 / 49.0, -4.0 / 49.0],
    ];
    SbpOperator::from_tables(
        SbpOrder::Fourth,
        n,
        h,
        &[17.0 / 48.0, 59.0 / 48.0, 43.0 / 48.0, 49.0 / 48.0],
        top,
        vec![1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0],
    )
}
