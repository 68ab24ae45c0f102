//! Factorization of squarefree integer polynomials of small degree.
//!
//! Irreducibility is usually settled by factor-degree patterns modulo a few
//! small primes. Otherwise the polynomial is factored modulo one prime large
//! enough to exceed twice the coefficient bound of every factor, and true
//! factors are recovered by subset recombination with exact trial division.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{self, BigField, PrimeField, SmallField};
use super::numtheory::{next_prime_after, Primes};
use super::poly::{poly_discriminant, IntPoly};
use super::AlgebraError;

const PATTERN_PRIMES: usize = 12;

/// Degrees `1..deg` reachable as sums of sub-multisets of `pattern`.
fn subset_sums(pattern: &[usize]) -> BTreeSet<usize> {
    let mut sums = BTreeSet::from([0usize]);
    for &d in pattern {
        let next: Vec<usize> = sums.iter().map(|s| s + d).collect();
        sums.extend(next);
    }
    sums
}

/// Numerator of the discriminant, used only for its prime divisors.
fn disc_numerator(f: &IntPoly) -> BigInt {
    poly_discriminant(f)
        .map(|d| d.numer().clone() * d.denom())
        .unwrap_or_else(|_| BigInt::zero())
}

/// Cheap irreducibility proof: a factor of degree k must appear as a subset
/// sum of the factor-degree pattern modulo every good prime.
fn irreducible_by_patterns(f: &IntPoly, disc: &BigInt) -> bool {
    let n = f.degree().unwrap_or(0);
    let lc = f.lc();
    let mut possible: BTreeSet<usize> = (1..n).collect();
    let mut used = 0;
    for p in Primes::new().take(60) {
        if used == PATTERN_PRIMES || possible.is_empty() {
            break;
        }
        let pb = BigInt::from(p);
        if (disc % &pb).is_zero() || (&lc % &pb).is_zero() {
            continue;
        }
        used += 1;
        let k = SmallField::new(p);
        let pattern = modp::factor_pattern(&k, &modp::reduce_poly(&k, f));
        let sums = subset_sums(&pattern);
        possible.retain(|d| sums.contains(d));
    }
    possible.is_empty()
}

/// Coefficient bound for `lc(f) * g / lc(g)` over all factors `g` of `f`.
fn factor_coefficient_bound(f: &IntPoly) -> BigUint {
    let n = f.degree().unwrap_or(0);
    let norm2: BigUint = f
        .coeffs()
        .iter()
        .map(|c| c.magnitude() * c.magnitude())
        .sum();
    let norm = super::numtheory::isqrt_ceil(&norm2);
    f.lc().magnitude() * (BigUint::from(1u32) << n) * norm
}

/// Irreducible factors of a squarefree integer polynomial of degree >= 1.
/// The factors are primitive with positive leading coefficients, and their
/// product is the primitive part of `f` up to sign.
pub fn factor_squarefree(f: &IntPoly) -> Result<Vec<IntPoly>, AlgebraError> {
    let n = f.degree().ok_or(AlgebraError::ZeroPolynomial)?;
    if n == 0 {
        return Err(AlgebraError::ConstantPolynomial);
    }
    let f = f.primitive();
    if n == 1 {
        return Ok(vec![f]);
    }
    if !f.is_squarefree() {
        return Err(AlgebraError::NotSquarefree);
    }
    let disc = disc_numerator(&f);
    if irreducible_by_patterns(&f, &disc) {
        return Ok(vec![f]);
    }

    let bound = factor_coefficient_bound(&f);
    let mut p = next_prime_after(&(bound * 2u32));
    let lc = f.lc();
    loop {
        let pb = BigInt::from(p.clone());
        if !(&disc % &pb).is_zero() && !(&lc % &pb).is_zero() {
            break;
        }
        p = next_prime_after(&p);
    }
    let k = BigField::new(p);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let fp = modp::reduce_poly(&k, &f);
    let mut local = modp::factor_squarefree(&k, &fp, &mut rng);

    let mut remaining = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= local.len() {
        let mut hit = None;
        for subset in combinations(local.len(), size) {
            let lc_r = remaining.lc();
            let prod = subset.iter().fold(vec![k.reduce(&lc_r)], |acc, &i| {
                modp::mul(&k, &acc, &local[i])
            });
            let cand = modp::lift_poly(&k, &prod).primitive();
            if let Some(q) = remaining.div_exact(&cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                remaining = q.primitive();
                let mut idx = 0;
                local.retain(|_| {
                    let keep = !subset.contains(&idx);
                    idx += 1;
                    keep
                });
            }
            None => size += 1,
        }
    }
    found.push(remaining.primitive());
    found.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    Ok(found)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Irreducible factors of a squarefree quintic.
pub fn factor_quintic(f: &IntPoly) -> Result<Vec<IntPoly>, AlgebraError> {
    if f.degree() != Some(5) {
        return Err(AlgebraError::NotQuintic);
    }
    factor_squarefree(f)
}

/// Whether a squarefree polynomial of degree >= 1 is irreducible over Q.
pub fn is_irreducible(f: &IntPoly) -> Result<bool, AlgebraError> {
    Ok(factor_squarefree(f)?.len() == 1)
}

/// Product of a list of polynomials.
pub fn product(factors: &[IntPoly]) -> IntPoly {
    factors
        .iter()
        .fold(IntPoly::from_i64s(&[1]), |acc, g| acc.mul(g))
}

/// Whether `a` and `b` agree up to sign.
pub fn equal_up_to_sign(a: &IntPoly, b: &IntPoly) -> bool {
    a == b || *a == b.neg()
}
