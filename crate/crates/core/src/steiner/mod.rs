//! Steiner expansions of mixed L_p affine surface areas of outer parallel
//! bodies `K + tB^n_2`, together with direct evaluation on the parallel
//! body for comparison.

mod grid;
mod neg_n;
mod polytope;
mod series;

pub use grid::{build_grid, build_grid_on, node_coefficients, ExpansionGrid, DEFAULT_ORDER};
pub use neg_n::{node_series_neg_n, series_neg_n, DEFAULT_NEG_N_ORDER};
pub use polytope::{direct_polytope_asa, polytope_series, PolytopeSeries};
pub use series::{
    check_offset, direct_parallel_asa, direct_parallel_asa_on, evaluate_series, local_series,
    series_coefficients, SeriesOptions, SeriesValue, DEFAULT_TOLERANCE, NEAR_BETA_FRACTION,
};
