//! Curvature coefficients A^m from the weighted composition sum, checked
//! against the power series they expand.

use lp_steiner::algebra::{a_coeff, curvature_weights, series_oracle, weighted_compositions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = [0.8, 0.5];
    let (p, s) = (1.0, 0.0);
    let alpha = (3.0 - s) / (3.0 + p);
    let oracle = series_oracle(alpha, &curvature_weights(&h), 0.0, 0.0, 6)?;
    for m in 0..=6 {
        let terms = weighted_compositions(m, h.len()).len();
        println!(
            "A^{m} = {:+.15e}  series = {:+.15e}  ({terms} compositions)",
            a_coeff(p, s, m, &h)?,
            oracle.coeff(m as usize)
        );
    }
    Ok(())
}
