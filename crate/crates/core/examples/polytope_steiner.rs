//! Polytope Steiner formula for the square and the cube.

use lp_steiner::bodies::Polytope;
use lp_steiner::functionals::PExponent;
use lp_steiner::steiner::{direct_polytope_asa, polytope_series, PolytopeSeries, SeriesOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = SeriesOptions::default();
    for poly in [Polytope::square(1.0)?, Polytope::cube(1.0)?] {
        println!("n = {}, volume {}", poly.dim(), poly.volume());
        for p in [-1.0, 0.0, 1.0, 2.0, 5.0] {
            let p = PExponent::Finite(p);
            let t = 0.5;
            match polytope_series(&poly, p, 0.0, 24, t, &opts, 5)? {
                PolytopeSeries::Series { value, tail } => {
                    let direct = direct_polytope_asa(&poly, p, 0.0, t, 5)?;
                    println!("  p = {:>4}: series {value:.10} direct {direct:.10} tail {tail:.1e}", p.value());
                }
                PolytopeSeries::Infinite => println!("  p = {:>4}: infinite", p.value()),
                PolytopeSeries::VolumeBranch { value } => {
                    println!("  p = {:>4}: volume branch {value:.10}", p.value())
                }
            }
        }
    }
    Ok(())
}
