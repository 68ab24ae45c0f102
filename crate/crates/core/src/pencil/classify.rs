use serde::{Deserialize, Serialize};

use super::algebra::{pencil_algebra_with, DEFAULT_RETRY_CAP};
use super::quadruple::Quadruple;
use super::PencilError;
use crate::algebra::modp::{factor_pattern, reduce_poly, SmallField};
use crate::algebra::numtheory::Primes;
use crate::algebra::{factor_quintic, poly_discriminant, real_root_count, IntPoly};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub const DEFAULT_PRIME_BUDGET: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum S5Status {
    CertifiedS5,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum Classification {
    DiscZero,
    Classified {
        /// Number of complex-conjugate pairs among the five zeros.
        i: u8,
        reducible: bool,
        s5: S5Status,
    },
}

impl Classification {
    pub fn i(&self) -> Option<u8> {
        match self {
            Classification::Classified { i, .. } => Some(*i),
            Classification::DiscZero => None,
        }
    }

    pub fn is_reducible(&self) -> Option<bool> {
        match self {
            Classification::Classified { reducible, .. } => Some(*reducible),
            Classification::DiscZero => None,
        }
    }

    /// (status, i, reducible), dropping the S5 verdict, which depends on the
    /// prime budget rather than on the orbit.
    pub fn orbit_key(&self) -> (bool, Option<u8>, Option<bool>) {
        (
            matches!(self, Classification::Classified { .. }),
            self.i(),
            self.is_reducible(),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub retry_cap: usize,
    pub prime_budget: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            retry_cap: DEFAULT_RETRY_CAP,
            prime_budget: DEFAULT_PRIME_BUDGET,
        }
    }
}

/// Classification together with the data it was derived from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifyDetail {
    pub classification: Classification,
    pub char_quintic: Option<IntPoly>,
    pub disc_sign: i32,
    pub factor_degrees: Vec<usize>,
    pub real_roots: Option<usize>,
}

pub fn classify_detailed(q: &Quadruple, seed: u64, opts: &ClassifyOptions) -> ClassifyDetail {
    let disc_zero = |f: Option<IntPoly>| ClassifyDetail {
        classification: Classification::DiscZero,
        char_quintic: f,
        disc_sign: 0,
        factor_degrees: Vec::new(),
        real_roots: None,
    };
    let alg = match pencil_algebra_with(q, seed, opts.retry_cap) {
        Ok(a) => a,
        Err(_) => return disc_zero(None),
    };
    let f = alg.char_poly;
    if !f.is_squarefree() {
        return disc_zero(Some(f));
    }
    let real = real_root_count(&f).expect("squarefree");
    let disc = poly_discriminant(&f).expect("quintic");
    let factors = factor_quintic(&f).expect("squarefree quintic");
    let reducible = factors.len() > 1;
    let s5 = if reducible || opts.prime_budget == 0 {
        S5Status::Unknown
    } else {
        s5_certify(&f, opts.prime_budget).unwrap_or(S5Status::Unknown)
    };
    let mut degs: Vec<usize> = factors.iter().filter_map(|g| g.degree()).collect();
    degs.sort_unstable();
    ClassifyDetail {
        classification: Classification::Classified {
            i: ((5 - real) / 2) as u8,
            reducible,
            s5,
        },
        char_quintic: Some(f),
        disc_sign: if disc.is_positive() { 1 } else { -1 },
        factor_degrees: degs,
        real_roots: Some(real),
    }
}

pub fn classify_with(q: &Quadruple, seed: u64, opts: &ClassifyOptions) -> Classification {
    classify_detailed(q, seed, opts).classification
}

pub fn classify(q: &Quadruple, seed: u64) -> Classification {
    classify_with(q, seed, &ClassifyOptions::default())
}

/// Look for a transposition (pattern 1+1+1+2) and a 5-cycle (pattern 5)
/// among Frobenius classes at the first `prime_budget` primes. Primes
/// dividing the discriminant or leading coefficient are skipped but still
/// count against the budget.
pub fn s5_certify(f: &IntPoly, prime_budget: usize) -> Result<S5Status, PencilError> {
    if f.degree() != Some(5) || !f.is_squarefree() || factor_quintic(f)?.len() != 1 {
        return Err(PencilError::NotIrreducible);
    }
    let d = poly_discriminant(f)?;
    let bad: BigInt = d.numer() * d.denom() * f.lc();
    let (mut transposition, mut five_cycle) = (false, false);
    for p in Primes::new().take(prime_budget) {
        if (&bad % BigInt::from(p)).is_zero() {
            continue;
        }
        let k = SmallField::new(p);
        match factor_pattern(&k, &reduce_poly(&k, f)).as_slice() {
            [1, 1, 1, 2] => transposition = true,
            [5] => five_cycle = true,
            _ => {}
        }
        if transposition && five_cycle {
            return Ok(S5Status::CertifiedS5);
        }
    }
    Ok(S5Status::Unknown)
}
