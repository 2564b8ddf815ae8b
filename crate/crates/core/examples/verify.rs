//! Truncated series against direct evaluation on K + tB over a small sweep.

use lp_steiner::bodies::SmoothBody;
use lp_steiner::functionals::PExponent;
use lp_steiner::quadrature::SphereQuadrature;
use lp_steiner::steiner::{build_grid, direct_parallel_asa, evaluate_series, SeriesOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let body = SmoothBody::ellipsoid(vec![1.0, 1.5])?;
    let q = SphereQuadrature::build(2, 6)?;
    let opts = SeriesOptions::default();
    let beta = body.beta();
    for p in [PExponent::Finite(-0.5), PExponent::Finite(2.0), PExponent::PosInf] {
        for s in [0.0, -1.0] {
            let grid = build_grid(&body, p, s, 24, 24, &q)?;
            for frac in [0.1, 0.3] {
                let t = frac * beta;
                let series = evaluate_series(&grid, t, &opts)?.value;
                let direct = direct_parallel_asa(&body, p, s, t, &q)?;
                println!(
                    "p = {:>5} s = {s:>4} t = {frac}β: rel error {:.2e}",
                    format!("{}", p.value()),
                    ((series - direct) / direct).abs()
                );
            }
        }
    }
    Ok(())
}
