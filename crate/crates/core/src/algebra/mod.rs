//! Exact arithmetic kernel.

pub mod factor;
pub mod laurent;
pub mod matrix;
pub mod modp;
pub mod numtheory;
pub mod poly;

use thiserror::Error;

pub use factor::{factor_quintic, factor_squarefree};
pub use laurent::{laurent_equal, LaurentP};
pub use matrix::{pfaffian4, IntMatrix, RatMatrix};
pub use poly::{poly_discriminant, real_root_count, IntPoly, RatPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial is not of degree 5")]
    NotQuintic,
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("matrix dimensions do not match")]
    DimensionMismatch,
    #[error("matrix is singular")]
    Singular,
}
