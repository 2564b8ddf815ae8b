use lp_steiner::bodies::SmoothBody;
use lp_steiner::functionals::{hellinger_integral, lp_asa, renyi_divergence, renyi_order, PExponent};
use lp_steiner::quadrature::SphereQuadrature;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let body = SmoothBody::ellipsoid(vec![1.0, 1.2, 1.5])?;
    let q = SphereQuadrature::build(3, 5)?;
    for p in [0.5, 1.0, 3.0] {
        let p = PExponent::Finite(p);
        let alpha = renyi_order(p, 3)?;
        println!(
            "p = {}: alpha {alpha:.4}  Hellinger {:.10}  as_p {:.10}  D_alpha {:.10}",
            p.value(),
            hellinger_integral(&body, alpha, &q)?,
            lp_asa(&body, p, &q)?,
            renyi_divergence(&body, 0, 0, p, &q)?
        );
    }
    Ok(())
}
