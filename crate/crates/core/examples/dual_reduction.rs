//! At p = ±∞ the coefficients are dual quermassintegrals of the polar body.

use lp_steiner::algebra::gen_binom;
use lp_steiner::bodies::SmoothBody;
use lp_steiner::functionals::{dual_quermass, PExponent};
use lp_steiner::quadrature::SphereQuadrature;
use lp_steiner::steiner::{build_grid, series_coefficients};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let body = SmoothBody::ellipsoid(vec![1.0, 1.5])?;
    let q = SphereQuadrature::build(2, 6)?;
    let grid = build_grid(&body, PExponent::PosInf, 0.0, 0, 8, &q)?;
    for (k, c) in series_coefficients(&grid).into_iter().enumerate() {
        let dual = 2.0 * gen_binom(-2.0, k as i64) * dual_quermass(&body, -(k as f64), &q)?;
        println!("t^{k}: series {c:+.12e}  dual {dual:+.12e}");
    }
    Ok(())
}
