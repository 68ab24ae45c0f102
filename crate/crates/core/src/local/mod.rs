//! Local etale quintic algebras and their masses.

pub mod etale;
pub mod fetch;
pub mod field;
pub mod mass;
pub mod tame;

use std::path::{Path, PathBuf};

use thiserror::Error;

pub use etale::{algebra_aut_order, etale_quintics, real_quintics, Component, EtaleQuintic};
pub use fetch::{fetch_local_fields, FetchConfig};
pub use field::{load_local_fields, parse_local_fields, LocalFieldRec, LocalFieldTable};
pub use mass::{beta_closed_form, beta_infinity, beta_p, MassReport};
pub use tame::tame_local_fields;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalError {
    #[error("line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error("record {index}: {reason}")]
    InvariantViolation { index: usize, reason: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("p = {0} has wild ramification in degree at most 5")]
    WildPrime(u64),
    #[error("no fields of degree {degree} for p = {p}")]
    IncompleteTable { p: u64, degree: u32 },
    #[error("records for different primes {0} and {1}")]
    MixedPrimes(u64, u64),
    #[error("network error: {0}")]
    NetworkError(String),
    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),
}

pub fn fixture_path(dir: &Path, p: u64) -> PathBuf {
    dir.join(format!("p{}.tbl", p))
}

/// Fields for p: the fixture when present, otherwise the tame enumeration.
pub fn fields_for_prime(dir: Option<&Path>, p: u64) -> Result<Vec<LocalFieldRec>, LocalError> {
    if let Some(dir) = dir {
        let path = fixture_path(dir, p);
        if path.exists() {
            return Ok(load_local_fields(&path)?.for_prime(p));
        }
    }
    tame_local_fields(p)
}
