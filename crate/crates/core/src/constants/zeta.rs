use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ball::Ball;

static BERNOULLI: Mutex<Vec<BigRational>> = Mutex::new(Vec::new());

fn binomial(n: u64, k: u64) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Bernoulli number B_m (with B_1 = -1/2).
pub fn bernoulli(m: usize) -> BigRational {
    let mut cache = BERNOULLI.lock().expect("bernoulli cache");
    while cache.len() <= m {
        let n = cache.len();
        let b = if n == 0 {
            BigRational::one()
        } else {
            let s = (0..n).fold(BigRational::zero(), |acc, k| {
                acc + BigRational::from_integer(binomial(n as u64 + 1, k as u64)) * &cache[k]
            });
            -s / BigRational::from_integer(BigInt::from(n + 1))
        };
        cache.push(b);
    }
    cache[m].clone()
}

fn two() -> BigRational {
    BigRational::from_integer(BigInt::from(2))
}

fn rat(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

/// Euler-Maclaurin approximation of zeta(s) as an exact rational, with a
/// rigorous bound on the remainder. The remainder after the B_{2M} term of
/// a function whose derivatives alternate in sign is bounded by the first
/// omitted term; twice that is reported.
pub fn zeta_rational(s: u32, n: u64, tol: &BigRational) -> (BigRational, BigRational) {
    assert!(s >= 2, "zeta needs s >= 2");
    let big_n = BigInt::from(n);
    let mut sum = BigRational::zero();
    for k in 1..n {
        sum += rat(BigInt::one(), BigInt::from(k).pow(s));
    }
    sum += rat(BigInt::one(), big_n.pow(s - 1) * (s - 1));
    sum += rat(BigInt::one(), big_n.pow(s) * 2);
    // rising factorial s (s+1) ... (s+2j-2), and N^(s+2j-1)
    let mut rising = BigInt::from(s);
    let mut power = big_n.pow(s + 1);
    let mut fact = BigInt::from(2);
    let mut j = 1usize;
    loop {
        let term = bernoulli(2 * j) * rat(rising.clone(), &fact * &power);
        if term.abs() * two() < *tol || j > 400 {
            return (sum, term.abs() * two());
        }
        sum += term;
        let a = BigInt::from(s as usize + 2 * j - 1);
        rising = rising * &a * (&a + 1);
        power *= &big_n * &big_n;
        fact *= BigInt::from((2 * j + 1) * (2 * j + 2));
        j += 1;
    }
}

/// zeta(s) for integer s >= 2 at `bits` bits of precision.
pub fn zeta_ball(s: u32, bits: u32) -> Ball {
    let n = (bits as u64 / 4).max(16);
    let tol = BigRational::new(BigInt::one(), BigInt::one() << (bits + 4));
    let (v, err) = zeta_rational(s, n, &tol);
    Ball::from_ratio(&v, bits).widen(&err)
}

/// Partial sum up to n plus the integral tail bound for the remainder.
pub fn zeta_direct(s: u32, n: u64, bits: u32) -> Ball {
    let mut sum = Ball::zero(bits);
    for k in 1..=n {
        sum = sum.add(&Ball::recip_int(&BigInt::from(k).pow(s), bits));
    }
    // sum_{k>n} k^-s lies in [1/((s-1)(n+1)^(s-1)), 1/((s-1) n^(s-1))]
    let lo = rat(BigInt::one(), BigInt::from(n + 1).pow(s - 1) * (s - 1));
    let hi = rat(BigInt::one(), BigInt::from(n).pow(s - 1) * (s - 1));
    let mid = (&lo + &hi) / BigRational::from_integer(2.into());
    let half = (&hi - &lo) / BigRational::from_integer(2.into());
    sum.add(&Ball::from_ratio(&mid, bits)).widen(&half)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::ball::pi;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(1), BigRational::new((-1).into(), 2.into()));
        assert_eq!(bernoulli(2), BigRational::new(1.into(), 6.into()));
        assert_eq!(bernoulli(12), BigRational::new((-691).into(), 2730.into()));
        assert!(bernoulli(7).is_zero());
    }

    #[test]
    fn zeta_two_is_pi_squared_over_six() {
        let bits = 160;
        let z = zeta_ball(2, bits);
        let p = pi(bits);
        let want = p.mul(&p).div_int(6);
        assert!(z.overlaps(&want));
        assert!(z.radius_f64() < 1e-40);
        let diff = z.sub(&want);
        assert!(diff.to_f64().abs() < 1e-40);
    }
}
