//! Steiner series of as_p for a ball against the closed form (1 + t/R)^e.

use lp_steiner::bodies::SmoothBody;
use lp_steiner::functionals::PExponent;
use lp_steiner::quadrature::SphereQuadrature;
use lp_steiner::steiner::{build_grid, evaluate_series, SeriesOptions, DEFAULT_ORDER};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (n, radius) = (3, 2.0);
    let body = SmoothBody::ball(n, radius)?;
    let q = SphereQuadrature::build(n, 5)?;
    let opts = SeriesOptions::default();
    for p in [0.5, 1.0, 2.0, 7.0] {
        let grid = build_grid(&body, PExponent::Finite(p), 0.0, DEFAULT_ORDER, DEFAULT_ORDER, &q)?;
        let nf = n as f64;
        let e = nf * (nf - p) / (nf + p);
        for t in [0.2, 0.6, 1.0] {
            let series = evaluate_series(&grid, t, &opts)?;
            let closed = grid.get(0, 0).unwrap() * (1.0 + t / radius).powf(e);
            println!(
                "p = {p:>4}  t = {t:.1}  series = {:.12}  closed form = {closed:.12}  tail = {:.1e}",
                series.value, series.tail_estimate
            );
        }
    }
    Ok(())
}
