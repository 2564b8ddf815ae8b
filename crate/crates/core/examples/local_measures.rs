//! Local Steiner series on a quarter of an ellipse against the direct value.

use std::f64::consts::FRAC_PI_2;

use lp_steiner::bodies::SmoothBody;
use lp_steiner::functionals::{area_measure, PExponent};
use lp_steiner::quadrature::{SphereQuadrature, SphereRegion};
use lp_steiner::steiner::{direct_parallel_asa_on, local_series, SeriesOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let body = SmoothBody::ellipsoid(vec![1.0, 2.0])?;
    let q = SphereQuadrature::build(2, 6)?;
    let region = SphereRegion::Sector { start: 0.0, end: FRAC_PI_2 };
    let p = PExponent::Finite(1.0);
    println!("S_00 on the sector: {:.12}", area_measure(&body, p, 0, 0, &region, &q)?);
    for t in [0.1, 0.3] {
        let series = local_series(&body, p, 0.0, &region, 24, 24, t, &SeriesOptions::default(), &q)?;
        let direct = direct_parallel_asa_on(&body, p, 0.0, t, &region, &q)?;
        println!("t = {t}: series {:.12}  direct {direct:.12}", series.value);
    }
    Ok(())
}
