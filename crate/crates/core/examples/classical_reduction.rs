//! At p = 0 the series is the classical Steiner polynomial n Σ binom(n, i) W_i t^i.

use lp_steiner::algebra::binomial_f64;
use lp_steiner::bodies::SmoothBody;
use lp_steiner::functionals::{classical_quermass, PExponent};
use lp_steiner::quadrature::SphereQuadrature;
use lp_steiner::steiner::{build_grid, series_coefficients};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let body = SmoothBody::ellipsoid(vec![1.0, 1.2, 1.5])?;
    let q = SphereQuadrature::build(3, 6)?;
    let grid = build_grid(&body, PExponent::Finite(0.0), 0.0, 6, 6, &q)?;
    for (i, c) in series_coefficients(&grid).into_iter().enumerate() {
        let classical = if i <= 3 {
            3.0 * binomial_f64(3, i) * classical_quermass(&body, i, &q)?
        } else {
            0.0
        };
        println!("t^{i}: series {c:+.12e}  classical {classical:+.12e}");
    }
    Ok(())
}
