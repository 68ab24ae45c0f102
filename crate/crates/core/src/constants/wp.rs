//! The series bounding the non-maximal-at-p count.
//!
//! With at most p^min(2k-2, 20k/11) subrings of index p^k, each of
//! discriminant p^2k times larger, the k-sum is
//! sum_k p^(e(k)) with e(k) = min(2k - 2, ceil(20k/11)) - 2k.
//! For k <= 11 this is -2; writing k = 11m + j with m >= 1 and 1 <= j <= 11
//! gives e(k) = -2m - floor(2j/11), so each later block of eleven terms sums
//! to p^(-2m) (5 + 5/p + 1/p^2).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

pub const CROSSOVER: u64 = 11;

pub fn wp_exponent(k: u64) -> i64 {
    let a = 2 * k as i64 - 2;
    let b = (20 * k as i64 + 10) / 11;
    a.min(b) - 2 * k as i64
}

fn p_pow(p: &BigInt, e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(p.pow(e as u32))
    } else {
        BigRational::new(BigInt::one(), p.pow((-e) as u32))
    }
}

pub fn wp_partial_sum(p: u64, terms: u64) -> BigRational {
    let pb = BigInt::from(p);
    (1..=terms).fold(BigRational::zero(), |acc, k| acc + p_pow(&pb, wp_exponent(k)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WpBound {
    pub p: u64,
    /// Exact k-sum; the full bound also carries a factor zeta(2) from the
    /// sum over contents.
    pub k_sum: String,
    pub p2_times_k_sum: String,
    pub p2_times_k_sum_f64: f64,
}

pub fn wp_series_exact(p: u64) -> BigRational {
    let pb = BigInt::from(p);
    let head = BigRational::from_integer(11.into()) * p_pow(&pb, -2);
    let block = BigRational::from_integer(5.into())
        + BigRational::from_integer(5.into()) * p_pow(&pb, -1)
        + p_pow(&pb, -2);
    let r = p_pow(&pb, -2);
    let geometric = &r / (BigRational::one() - &r);
    head + block * geometric
}

pub fn wp_series_bound(p: u64) -> WpBound {
    let s = wp_series_exact(p);
    let scaled = &s * BigRational::from_integer(BigInt::from(p).pow(2));
    use num_traits::ToPrimitive;
    WpBound {
        p,
        k_sum: s.to_string(),
        p2_times_k_sum_f64: scaled.to_f64().unwrap_or(f64::NAN),
        p2_times_k_sum: scaled.to_string(),
    }
}
