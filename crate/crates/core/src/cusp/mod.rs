//! Weights of the torus action and the dissection of the cusp into cases.

pub mod atlas;
pub mod table;
pub mod weight;

use thiserror::Error;

pub use crate::pencil::CoordId;
pub use atlas::{
    case_bound, find_pi, generate_atlas, minimal_coordinates, reducible_by_vanishing, Atlas,
    CaseNode,
};
pub use table::{parse_table, verify_against_table, TableReport, TableRow};
pub use weight::{coordinate_weight, haar_exponents, WeightMonomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CuspError {
    #[error("no factor up to the size cap makes every exponent negative")]
    NoFactorFound,
    #[error("the factor leaves a non-negative exponent")]
    FactorFails,
    #[error("line {line}: {message}")]
    ParseError { line: usize, message: String },
}
