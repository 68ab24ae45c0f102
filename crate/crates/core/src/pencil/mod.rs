//! Quadruples of 5x5 skew-symmetric matrices, the action of GL4(Z) x SL5(Z),
//! sub-Pfaffian quadrics and the classification of the five-point locus.

pub mod algebra;
pub mod classify;
pub mod group;
pub mod io;
pub mod quadric;
pub mod quadruple;

use thiserror::Error;

use crate::algebra::AlgebraError;

pub use self::algebra::{char_quintic, pencil_algebra, pencil_algebra_with, PencilAlgebra};
pub use classify::{
    classify, classify_detailed, classify_with, s5_certify, Classification, ClassifyDetail,
    ClassifyOptions, S5Status,
};
pub use group::{act, GroupElementZ};
pub use io::{format_quadruples, parse_quadruples, QuadrupleParseError};
pub use quadric::{kernel_residual, sub_pfaffians, QuadricForm};
pub use quadruple::{CoordId, Quadruple};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PencilError {
    #[error("g4 must have determinant +-1 and g5 determinant 1")]
    BadDeterminant,
    #[error("the quadrics do not cut out a five-point scheme")]
    DegeneratePencil,
    #[error("polynomial is not an irreducible quintic")]
    NotIrreducible,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
