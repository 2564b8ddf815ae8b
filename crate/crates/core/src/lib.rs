#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod bodies;
pub mod cli;
pub mod error;
pub mod functionals;
pub mod quadrature;
pub mod steiner;
