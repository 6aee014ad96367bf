//! Matrix-free derivatives, curl, curl-curl and divergence on a 2D grid,
//! checked against smooth fields with known derivatives.
//!
//! cargo run --release --example tensor_calculus

use sbp_induction::{Discretization, Grid, SbpOrder, ScalarField, VectorField};

fn main() -> sbp_induction::Result<()> {
    println!("{:>6} {:>6} {:>12} {:>12} {:>12} {:>12}", "order", "nodes", "d/dx", "curl", "curl-curl", "interior");
    for order in [SbpOrder::Second, SbpOrder::Fourth] {
        for n in [21, 41, 81] {
            let disc = Discretization::new(Grid::square(n, 0.0, 1.0)?, order)?;
            let g = disc.grid();

            let w = ScalarField::from_fn(g, |x| (2.0 * x[0]).sin() * x[1].cos());
            let dx = disc.d(0, &w)?;
            let dx_err = g
                .nodes()
                .map(|(k, x)| (dx.values()[k] - 2.0 * (2.0 * x[0]).cos() * x[1].cos()).abs())
                .fold(0.0, f64::max);

            // V = (−sin y, sin x): curl = cos x + cos y, curl-curl = V.
            let v = VectorField::from_fn(g, 2, |x| [-x[1].sin(), x[0].sin(), 0.0]);
            let curl = disc.curl_2d(&v)?;
            let curl_err = g
                .nodes()
                .map(|(k, x)| (curl.values()[k] - x[0].cos() - x[1].cos()).abs())
                .fold(0.0, f64::max);
            let cc = disc.curlcurl_2d(&v)?;
            let cc_at = |k: usize, x: &[f64; 3]| {
                (cc.component(0).values()[k] + x[1].sin())
                    .abs()
                    .max((cc.component(1).values()[k] - x[0].sin()).abs())
            };
            let cc_err = g.nodes().map(|(k, x)| cc_at(k, &x)).fold(0.0, f64::max);
            // Away from the closures the products of first derivatives keep
            // the interior order.
            let interior = g
                .nodes()
                .filter(|(k, _)| disc.shape().unravel(*k)[..2].iter().all(|&i| (6..n - 6).contains(&i)))
                .map(|(k, x)| cc_at(k, &x))
                .fold(0.0, f64::max);
            println!(
                "{:>6} {n:>6} {dx_err:>12.3e} {curl_err:>12.3e} {cc_err:>12.3e} {interior:>12.3e}",
                order.to_string()
            );
        }
    }

    let disc = Discretization::new(Grid::square(41, -1.0, 1.0)?, SbpOrder::Fourth)?;
    let solenoidal = VectorField::from_fn(disc.grid(), 2, |x| [x[1].cos() * x[0], -x[1].sin(), 0.0]);
    println!("\nmax |div| of a solenoidal field: {:.2e}", disc.div(&solenoidal)?.max_abs());
    Ok(())
}
