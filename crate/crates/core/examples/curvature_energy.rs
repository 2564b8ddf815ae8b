use lp_steiner::bodies::SmoothBody;
use lp_steiner::functionals::curvature_energy;
use lp_steiner::quadrature::SphereQuadrature;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = SphereQuadrature::build(3, 5)?;
    for axes in [vec![1.0, 1.0, 1.0], vec![1.0, 1.2, 1.5], vec![1.0, 1.0, 3.0]] {
        let body = SmoothBody::ellipsoid(axes.clone())?;
        let energies: Vec<String> = [0.0, 1.0, 2.0]
            .iter()
            .map(|&a| curvature_energy(&body, a, &q).map(|e| format!("{e:.8}")))
            .collect::<Result<_, _>>()?;
        println!("{axes:?}: alpha = 0, 1, 2 -> {}", energies.join(", "));
    }
    Ok(())
}
