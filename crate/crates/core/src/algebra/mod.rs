//! Exact combinatorics behind the Steiner coefficients, and a truncated
//! power-series oracle that reproduces them independently.

mod binomial;
mod coefficients;
mod compositions;
mod series;

pub use binomial::{
    binomial, binomial_f64, gen_binom, gen_binom_exact, gen_binom_float, multinomial,
    multinomial_f64, rational_to_f64, recognise_rational, EXACT_INDEX_LIMIT,
};
pub use coefficients::{
    a_coeff, a_coeff_neg_n, b_coeff, b_coeffs, curvature_weights, CompositionExpansion,
    MINUS_N_GUARD,
};
pub use compositions::{composition_count, weighted_compositions, WeightedComposition};
pub use series::{binomial_power_into, series_oracle, SeriesPoly, MAX_SERIES_ORDER};
