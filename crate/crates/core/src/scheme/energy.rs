//! Discrete energy rates `2(V, L V)_P / (V, V)_P` of the homogeneous
//! operator, by sampling and by a Lanczos estimate of their supremum.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rhs::SemiDiscrete;
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::grid::Shape;
use crate::model::SchemeKind;

/// A linear map stored column by column.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    rows: usize,
    columns: Vec<Vec<(usize, f64)>>,
}

impl SparseOperator {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, j: usize) -> &[(usize, f64)] {
        &self.columns[j]
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.rows];
        for (col, &xj) in self.columns.iter().zip(x) {
            if xj != 0.0 {
                for &(i, a) in col {
                    y[i] += a * xj;
                }
            }
        }
        y
    }

    pub fn apply_transpose(&self, y: &[f64]) -> Vec<f64> {
        self.columns
            .iter()
            .map(|col| col.iter().map(|&(i, a)| a * y[i]).sum())
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut m = vec![vec![0.0; self.cols()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, a) in col {
                m[i][j] = a;
            }
        }
        m
    }
}

/// Assembles a linear map from its action on unit vectors.
pub fn assemble_operator(
    cols: usize,
    mut apply: impl FnMut(&[f64]) -> Result<Vec<f64>>,
) -> Result<SparseOperator> {
    let mut e = vec![0.0; cols];
    let mut columns = Vec::with_capacity(cols);
    let mut rows = None;
    for j in 0..cols {
        e[j] = 1.0;
        let y = apply(&e)?;
        e[j] = 0.0;
        match rows {
            None => rows = Some(y.len()),
            Some(r) if r != y.len() => {
                return Err(Error::LengthMismatch {
                    expected: r,
                    found: y.len(),
                })
            }
            _ => {}
        }
        columns.push(
            y.into_iter()
                .enumerate()
                .filter(|&(_, a)| a != 0.0)
                .collect(),
        );
    }
    Ok(SparseOperator {
        rows: rows.unwrap_or(0),
        columns,
    })
}

fn includes_curl(scheme: &SemiDiscrete) -> bool {
    scheme.kind() == SchemeKind::Mixed
}

/// `(2(V, L V)_P + 2ε‖curl V‖²_P) / (V, V)_P` for the homogeneous operator
/// `L` at `t = 0`; the curl term is only added for the mixed scheme.
pub fn energy_rate(scheme: &SemiDiscrete, v: &VectorField) -> Result<f64> {
    let disc = scheme.discretization();
    let lv = scheme.homogeneous_rhs(0.0, v)?;
    let mut num = 2.0 * disc.inner_vec(v, &lv)?;
    if includes_curl(scheme) {
        let w = disc.curl_2d(v)?;
        num += 2.0 * scheme.model().epsilon * disc.inner(&w, &w)?;
    }
    let den = disc.norm_sq(v)?;
    if den == 0.0 {
        return Err(Error::ZeroDenominator("energy rate"));
    }
    Ok(num / den)
}

/// Assembles a map on `ncomp` stacked grid functions whose output at a node
/// depends only on inputs at most `reach` index steps away along each axis.
/// Unit vectors on nodes `2·reach + 1` apart cannot interact, so each such
/// family of columns is recovered from a single application.
pub fn assemble_local_operator(
    shape: Shape,
    ncomp: usize,
    reach: usize,
    mut apply: impl FnMut(&[f64]) -> Result<Vec<f64>>,
) -> Result<SparseOperator> {
    let len = shape.len();
    let dims = shape.dims().to_vec();
    let period = 2 * reach + 1;
    let colors: usize = dims.iter().map(|&n| period.min(n)).product();
    let mut columns: Vec<Vec<(usize, f64)>> = vec![Vec::new(); ncomp * len];
    let mut rows = None;
    let mut x = vec![0.0; ncomp * len];
    for comp in 0..ncomp {
        for color in 0..colors {
            let mut offset = [0usize; 3];
            let mut rest = color;
            for a in (0..dims.len()).rev() {
                let c = period.min(dims[a]);
                offset[a] = rest % c;
                rest /= c;
            }
            let in_color = |idx: &[usize; 3]| (0..dims.len()).all(|a| idx[a] % period == offset[a]);
            x.iter_mut().for_each(|v| *v = 0.0);
            for k in 0..len {
                if in_color(&shape.unravel(k)) {
                    x[comp * len + k] = 1.0;
                }
            }
            let y = apply(&x)?;
            match rows {
                None => rows = Some(y.len()),
                Some(r) if r != y.len() => {
                    return Err(Error::LengthMismatch {
                        expected: r,
                        found: y.len(),
                    })
                }
                _ => {}
            }
            for (r, &a) in y.iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                let node = shape.unravel(r % len);
                let mut source = [0usize; 3];
                for ax in 0..dims.len() {
                    let d = (node[ax] + period - offset[ax] % period) % period;
                    source[ax] = if d <= reach { node[ax] - d } else { node[ax] + period - d };
                    if source[ax] >= dims[ax] {
                        return Err(Error::Config("operator reaches further than declared".into()));
                    }
                }
                let j = shape.flat(&source[..dims.len()]);
                columns[comp * len + j].push((r, a));
            }
        }
    }
    Ok(SparseOperator {
        rows: rows.unwrap_or(0),
        columns,
    })
}

/// Energy rates of `samples` fields with entries uniform in `[−1, 1]`.
pub fn sampled_energy_rates(scheme: &SemiDiscrete, samples: usize, seed: u64) -> Result<Vec<f64>> {
    let disc = scheme.discretization();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = disc.grid().len() * disc.dim();
    (0..samples)
        .map(|_| {
            let flat: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let v = VectorField::from_flat(disc.shape(), disc.dim(), &flat)?;
            energy_rate(scheme, &v)
        })
        .collect()
}

/// Outcome of [`sup_energy_rate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyEstimate {
    /// Largest Ritz value: the estimated supremum of the energy rate.
    pub sup: f64,
    /// Smallest Ritz value, a lower estimate of the most negative rate.
    pub inf: f64,
    /// Residual norm of the top Ritz pair.
    pub residual: f64,
    pub iterations: usize,
}

impl EnergyEstimate {
    /// Spectral width; the natural scale for round-off in `sup`.
    pub fn scale(&self) -> f64 {
        self.sup.abs().max(self.inf.abs())
    }
}

/// Estimates `sup_V` of the energy rate by assembling the homogeneous
/// operator and running Lanczos with full reorthogonalisation on the
/// symmetric form `P^{-1/2} (P L + Lᵀ P + 2ε Kᵀ P K) P^{-1/2}`, where `K`
/// is the discrete curl (mixed scheme only).
pub fn sup_energy_rate(scheme: &SemiDiscrete, max_iter: usize) -> Result<EnergyEstimate> {
    let disc = scheme.discretization();
    let dim = disc.dim();
    let shape = disc.shape();
    let n = disc.grid().len() * dim;
    let reach = disc.operators().iter().map(|op| op.reach()).max().unwrap_or(0);
    let op = assemble_local_operator(shape, dim, 2 * reach, |x| {
        let v = VectorField::from_flat(shape, dim, x)?;
        Ok(scheme.homogeneous_rhs(0.0, &v)?.to_flat())
    })?;
    let curl = if includes_curl(scheme) {
        Some(assemble_local_operator(shape, dim, reach, |x| {
            let v = VectorField::from_flat(shape, dim, x)?;
            Ok(disc.curl_2d(&v)?.into_values())
        })?)
    } else {
        None
    };
    let node_w = disc.node_weights();
    let w: Vec<f64> = (0..n).map(|i| node_w[i % node_w.len()]).collect();
    let inv_sqrt: Vec<f64> = w.iter().map(|p| 1.0 / p.sqrt()).collect();
    let eps = scheme.model().epsilon;

    let apply = |x: &[f64]| -> Vec<f64> {
        let z: Vec<f64> = x.iter().zip(&inv_sqrt).map(|(a, s)| a * s).collect();
        let az = op.apply(&z);
        let pz: Vec<f64> = z.iter().zip(&w).map(|(a, p)| a * p).collect();
        let atpz = op.apply_transpose(&pz);
        let mut y: Vec<f64> = az
            .iter()
            .zip(&w)
            .zip(&atpz)
            .map(|((a, p), b)| p * a + b)
            .collect();
        if let Some(k) = &curl {
            let kz = k.apply(&z);
            let pkz: Vec<f64> = kz.iter().zip(node_w).map(|(a, p)| 2.0 * eps * p * a).collect();
            for (yi, c) in y.iter_mut().zip(k.apply_transpose(&pkz)) {
                *yi += c;
            }
        }
        y.iter_mut().zip(&inv_sqrt).for_each(|(a, s)| *a *= s);
        y
    };
    lanczos_extremes(n, max_iter, apply)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn lanczos_extremes(
    n: usize,
    max_iter: usize,
    apply: impl Fn(&[f64]) -> Vec<f64>,
) -> Result<EnergyEstimate> {
    let m = max_iter.min(n).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut q: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let norm = dot(&q, &q).sqrt();
    q.iter_mut().for_each(|x| *x /= norm);
    let mut basis: Vec<Vec<f64>> = vec![q];
    let mut alpha = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    loop {
        let j = basis.len() - 1;
        let mut r = apply(&basis[j]);
        let a = dot(&r, &basis[j]);
        alpha.push(a);
        // Two passes of classical Gram-Schmidt against the whole basis.
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&r, b);
                r.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let bnorm = dot(&r, &r).sqrt();
        if basis.len() == m || bnorm <= 1e-13 * a.abs().max(1.0) {
            beta.push(bnorm);
            break;
        }
        beta.push(bnorm);
        r.iter_mut().for_each(|x| *x /= bnorm);
        basis.push(r);
    }
    let k = alpha.len();
    let mut t = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = alpha[i];
        if i + 1 < k {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    let eig = SymmetricEigen::new(t);
    let (mut top, mut bottom) = (0, 0);
    for i in 0..k {
        if eig.eigenvalues[i] > eig.eigenvalues[top] {
            top = i;
        }
        if eig.eigenvalues[i] < eig.eigenvalues[bottom] {
            bottom = i;
        }
    }
    let residual = (beta[k - 1] * eig.eigenvectors[(k - 1, top)]).abs();
    Ok(EnergyEstimate {
        sup: eig.eigenvalues[top],
        inf: eig.eigenvalues[bottom],
        residual,
        iterations: k,
    })
}
