//! Dense-matrix reference implementations built from scratch, independent
//! of the library's matrix-free operators.
#![allow(dead_code)]

use sbp_induction::model::{rotation_velocity, SchemeKind, VelocityField};
use sbp_induction::Grid;

pub type Mat = Vec<Vec<f64>>;

pub fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![0.0; c]; r]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}

pub fn diag(d: &[f64]) -> Mat {
    let mut m = zeros(d.len(), d.len());
    for (i, &v) in d.iter().enumerate() {
        m[i][i] = v;
    }
    m
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (ar, ac, br, bc) = (a.len(), a[0].len(), b.len(), b[0].len());
    let mut m = zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            if a[i][j] == 0.0 {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    m[i * br + k][j * bc + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    m
}

pub fn kron3(a: &Mat, b: &Mat, c: &Mat) -> Mat {
    kron(&kron(a, b), c)
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let mut m = zeros(a.len(), b[0].len());
    for i in 0..a.len() {
        for k in 0..b.len() {
            let aik = a[i][k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..b[0].len() {
                m[i][j] += aik * b[k][j];
            }
        }
    }
    m
}

pub fn matvec(a: &Mat, x: &[f64]) -> Vec<f64> {
    a.iter().map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
}

pub fn add(a: &Mat, b: &Mat, s: f64) -> Mat {
    a.iter()
        .zip(b)
        .map(|(r, q)| r.iter().zip(q).map(|(x, y)| x + s * y).collect())
        .collect()
}

pub fn scale(a: &Mat, s: f64) -> Mat {
    a.iter().map(|r| r.iter().map(|x| x * s).collect()).collect()
}

pub fn transpose(a: &Mat) -> Mat {
    let mut m = zeros(a[0].len(), a.len());
    for (i, row) in a.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            m[j][i] = v;
        }
    }
    m
}

/// Block matrix from a grid of equally sized blocks.
pub fn blocks(grid: &[Vec<&Mat>]) -> Mat {
    let br = grid[0][0].len();
    let bc = grid[0][0][0].len();
    let mut m = zeros(grid.len() * br, grid[0].len() * bc);
    for (bi, row) in grid.iter().enumerate() {
        for (bj, b) in row.iter().enumerate() {
            for i in 0..br {
                for j in 0..bc {
                    m[bi * br + i][bj * bc + j] = b[i][j];
                }
            }
        }
    }
    m
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

pub fn max_abs(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Diagonal of the norm matrix for the second- or fourth-order operator.
pub fn norm_weights(order: usize, n: usize, h: f64) -> Vec<f64> {
    let mut p = vec![h; n];
    let edge: &[f64] = match order {
        2 => &[0.5],
        4 => &[17.0 / 48.0, 59.0 / 48.0, 43.0 / 48.0, 49.0 / 48.0],
        _ => panic!("unsupported order"),
    };
    for (i, &w) in edge.iter().enumerate() {
        p[i] = w * h;
        p[n - 1 - i] = w * h;
    }
    p
}

/// First-derivative matrix, assembled from the `Q` matrix and `P⁻¹`.
pub fn derivative(order: usize, n: usize, h: f64) -> Mat {
    // Q = P D is nearly skew: interior rows carry the centred stencil, the
    // corners carry ∓½.
    let mut q = zeros(n, n);
    let interior: &[(isize, f64)] = match order {
        2 => &[(-1, -0.5), (1, 0.5)],
        4 => &[(-2, 1.0 / 12.0), (-1, -2.0 / 3.0), (1, 2.0 / 3.0), (2, -1.0 / 12.0)],
        _ => panic!("unsupported order"),
    };
    for i in 0..n {
        for &(o, c) in interior {
            let j = i as isize + o;
            if j >= 0 && (j as usize) < n {
                q[i][j as usize] = c;
            }
        }
    }
    if order == 4 {
        // Upper-left 4×6 block of Q for the diagonal-norm closure.
        let block: [[f64; 6]; 4] = [
            [-0.5, 59.0 / 96.0, -1.0 / 12.0, -1.0 / 32.0, 0.0, 0.0],
            [-59.0 / 96.0, 0.0, 59.0 / 96.0, 0.0, 0.0, 0.0],
            [1.0 / 12.0, -59.0 / 96.0, 0.0, 59.0 / 96.0, -1.0 / 12.0, 0.0],
            [1.0 / 32.0, 0.0, -59.0 / 96.0, 0.0, 2.0 / 3.0, -1.0 / 12.0],
        ];
        for i in 0..4 {
            for j in 0..6 {
                q[i][j] = block[i][j];
                q[n - 1 - i][n - 1 - j] = -block[i][j];
            }
        }
    } else {
        q[0][0] = -0.5;
        q[0][1] = 0.5;
        q[n - 1][n - 1] = 0.5;
        q[n - 1][n - 2] = -0.5;
    }
    let p = norm_weights(order, n, h);
    // Q above is scaled for unit spacing; D = P⁻¹ Q with P already in h.
    q.iter()
        .zip(&p)
        .map(|(row, pi)| row.iter().map(|x| x / pi).collect())
        .collect()
}

/// Endpoint selectors `E₀ = diag(1, 0, …)` and `E_N = diag(…, 0, 1)`.
pub fn e_low(n: usize) -> Mat {
    let mut m = zeros(n, n);
    m[0][0] = 1.0;
    m
}

pub fn e_high(n: usize) -> Mat {
    let mut m = zeros(n, n);
    m[n - 1][n - 1] = 1.0;
    m
}

/// Dense 2D operators on an `n × m` tensor grid with spacings `hx, hy`.
pub struct Dense2 {
    pub n: usize,
    pub m: usize,
    pub dx: Mat,
    pub dy: Mat,
    pub px: Vec<f64>,
    pub py: Vec<f64>,
}

impl Dense2 {
    pub fn new(order: usize, n: usize, m: usize, hx: f64, hy: f64) -> Self {
        Dense2 {
            n,
            m,
            dx: kron(&derivative(order, n, hx), &identity(m)),
            dy: kron(&identity(n), &derivative(order, m, hy)),
            px: norm_weights(order, n, hx),
            py: norm_weights(order, m, hy),
        }
    }

    /// `P = P_x ⊗ P_y` as a vector of node weights.
    pub fn weights(&self) -> Vec<f64> {
        let mut w = Vec::with_capacity(self.n * self.m);
        for i in 0..self.n {
            for j in 0..self.m {
                w.push(self.px[i] * self.py[j]);
            }
        }
        w
    }

    /// The scalar curl `[−𝔡y  𝔡x]` acting on stacked `(V¹, V²)`.
    pub fn curl(&self) -> Mat {
        let neg_dy = scale(&self.dy, -1.0);
        blocks(&[vec![&neg_dy, &self.dx]])
    }

    /// `[[−𝔡yy, 𝔡xy], [𝔡xy, −𝔡xx]]`.
    pub fn curlcurl(&self) -> Mat {
        let dyy = scale(&matmul(&self.dy, &self.dy), -1.0);
        let dxy = matmul(&self.dx, &self.dy);
        let dxx = scale(&matmul(&self.dx, &self.dx), -1.0);
        blocks(&[vec![&dyy, &dxy], vec![&dxy, &dxx]])
    }
}

/// Deterministic uniform samples in `[−1, 1]`.
pub fn random_vec(n: usize, seed: u64) -> Vec<f64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

/// Dense penalty matrix `ℬ` acting on one component.
pub fn dense_penalty(
    order: usize,
    grid: &Grid,
    velocity: &dyn VelocityField,
    epsilon: f64,
    kind: SchemeKind,
) -> Mat {
    let (n, m) = (grid.axis(0).nodes, grid.axis(1).nodes);
    let (hx, hy) = (grid.axis(0).spacing, grid.axis(1).spacing);
    let p0 = norm_weights(order, 3.max(n), 1.0)[0];
    let res = |h: f64| match kind {
        SchemeKind::Dirichlet => -1.0 / (2.0 * p0 * h),
        SchemeKind::Mixed => 0.0,
    };
    let xs: Vec<f64> = (0..n).map(|i| grid.axis(0).coord(i)).collect();
    let ys: Vec<f64> = (0..m).map(|j| grid.axis(1).coord(j)).collect();
    let u = |x: f64, y: f64| velocity.value(&[x, y, 0.0], 0.0);
    let s_l: Vec<f64> = ys.iter().map(|&y| -u(xs[0], y)[0].max(0.0) / 2.0 + epsilon * res(hx)).collect();
    let s_r: Vec<f64> = ys.iter().map(|&y| u(xs[n - 1], y)[0].min(0.0) / 2.0 + epsilon * res(hx)).collect();
    let s_d: Vec<f64> = xs.iter().map(|&x| -u(x, ys[0])[1].max(0.0) / 2.0 + epsilon * res(hy)).collect();
    let s_u: Vec<f64> = xs.iter().map(|&x| u(x, ys[m - 1])[1].min(0.0) / 2.0 + epsilon * res(hy)).collect();
    let pxi: Vec<f64> = norm_weights(order, n, hx).iter().map(|p| 1.0 / p).collect();
    let pyi: Vec<f64> = norm_weights(order, m, hy).iter().map(|p| 1.0 / p).collect();
    let left = kron(&matmul(&diag(&pxi), &e_low(n)), &diag(&s_l));
    let right = kron(&matmul(&diag(&pxi), &e_high(n)), &diag(&s_r));
    let down = kron(&diag(&s_d), &matmul(&diag(&pyi), &e_low(m)));
    let up = kron(&diag(&s_u), &matmul(&diag(&pyi), &e_high(m)));
    add(&add(&left, &right, 1.0), &add(&down, &up, 1.0), 1.0)
}

/// Dense mixed-scheme curl penalty acting on stacked `(V¹, V²)` with
/// `h = 0`: `ε[(𝒰 − 𝒟)(I ⊗ P_y⁻¹) curl; −(ℛ − ℒ)(P_x⁻¹ ⊗ I) curl]`.
pub fn dense_curl_penalty(d: &Dense2, epsilon: f64) -> Mat {
    let (n, m) = (d.n, d.m);
    let pyi: Vec<f64> = d.py.iter().map(|p| 1.0 / p).collect();
    let pxi: Vec<f64> = d.px.iter().map(|p| 1.0 / p).collect();
    let ud = add(&kron(&identity(n), &e_high(m)), &kron(&identity(n), &e_low(m)), -1.0);
    let rl = add(&kron(&e_high(n), &identity(m)), &kron(&e_low(n), &identity(m)), -1.0);
    let top = scale(&matmul(&matmul(&ud, &kron(&identity(n), &diag(&pyi))), &d.curl()), epsilon);
    let bottom = scale(&matmul(&matmul(&rl, &kron(&diag(&pxi), &identity(m))), &d.curl()), -epsilon);
    top.into_iter().chain(bottom).collect()
}

/// Dense homogeneous operator for the rotation field `u = (−y, x)`:
/// coupling, transport, resistive term and penalties on stacked `(V¹, V²)`.
pub fn dense_rotation_operator(order: usize, grid: &Grid, epsilon: f64, kind: SchemeKind) -> Mat {
    let (n, m) = (grid.axis(0).nodes, grid.axis(1).nodes);
    let nm = n * m;
    let d = Dense2::new(order, n, m, grid.axis(0).spacing, grid.axis(1).spacing);
    let u1: Vec<f64> = grid.nodes().map(|(_, x)| -x[1]).collect();
    let u2: Vec<f64> = grid.nodes().map(|(_, x)| x[0]).collect();
    let adv = add(&matmul(&diag(&u1), &d.dx), &matmul(&diag(&u2), &d.dy), 1.0);
    let z = zeros(nm, nm);
    let neg_i = scale(&identity(nm), -1.0);
    let i = identity(nm);
    let transport = blocks(&[vec![&adv, &z], vec![&z, &adv]]);
    let coupling = blocks(&[vec![&z, &neg_i], vec![&i, &z]]);
    let b = dense_penalty(order, grid, &rotation_velocity(), epsilon, kind);
    let bb = blocks(&[vec![&b, &z], vec![&z, &b]]);
    let mut a = add(&add(&coupling, &transport, -1.0), &d.curlcurl(), -epsilon);
    a = add(&a, &bb, 1.0);
    if kind == SchemeKind::Mixed {
        a = add(&a, &dense_curl_penalty(&d, epsilon), 1.0);
    }
    a
}
