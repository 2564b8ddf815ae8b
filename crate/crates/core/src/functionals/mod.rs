//! Geometric functionals evaluated by sphere quadrature: L_p and mixed
//! affine surface areas, L_p, classical and dual quermassintegrals, local
//! measures, curvature energies, and information-theoretic quantities.

mod exponent;
mod information;
mod integrals;
mod record;

pub use exponent::{Exponents, PExponent};
pub use information::{hellinger_integral, renyi_divergence, renyi_order};
pub use integrals::{
    area_measure, classical_quermass, curvature_energy, curvature_measure, dual_quermass,
    l_neg_n_asa, lp_asa, lp_quermass, mixed_asa, mixed_asa_on, mixed_quermass, NodeMaximum,
    UNDERFLOW_LIMIT,
};
pub use record::FunctionalRecord;

pub(crate) use integrals::{checked_pow, mixed_asa_masked};
