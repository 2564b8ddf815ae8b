//! Classical, dual and L_p quermassintegrals of one body.

use lp_steiner::bodies::SmoothBody;
use lp_steiner::functionals::{classical_quermass, dual_quermass, lp_quermass, PExponent};
use lp_steiner::quadrature::SphereQuadrature;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let body = SmoothBody::ellipsoid(vec![1.0, 1.2, 1.5])?;
    let q = SphereQuadrature::build(3, 6)?;
    for i in 0..=3 {
        println!(
            "i = {i}: W_i {:.10}  dual W_-i(K°) {:.10}",
            classical_quermass(&body, i, &q)?,
            dual_quermass(&body, -(i as f64), &q)?
        );
    }
    let p = PExponent::Finite(1.0);
    for (m, k) in [(0, 0), (0, 2), (1, 1), (2, 3)] {
        println!("W_({m},{k}) at p = 1: {:.10}", lp_quermass(&body, p, m, k, &q)?);
    }
    Ok(())
}
