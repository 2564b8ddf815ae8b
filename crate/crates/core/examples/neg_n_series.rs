//! as_{-n} of parallel bodies as the node maximum of the truncated series.

use lp_steiner::bodies::SmoothBody;
use lp_steiner::functionals::l_neg_n_asa;
use lp_steiner::quadrature::SphereQuadrature;
use lp_steiner::steiner::{series_neg_n, SeriesOptions, DEFAULT_NEG_N_ORDER};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = SphereQuadrature::build(2, 6)?;
    for body in [SmoothBody::ball(2, 1.5)?, SmoothBody::ellipsoid(vec![1.0, 1.5])?] {
        for t in [0.0, 0.25, 0.5] {
            let t = t * body.beta();
            let series = series_neg_n(&body, DEFAULT_NEG_N_ORDER, t, &SeriesOptions::default(), &q)?;
            let direct = l_neg_n_asa(&body.parallel_transform(t)?, &q)?;
            println!(
                "t = {t:.3}: series {:.10} at {:?}  direct {:.10}",
                series.value,
                series.direction.as_slice(),
                direct.value
            );
        }
    }
    Ok(())
}
