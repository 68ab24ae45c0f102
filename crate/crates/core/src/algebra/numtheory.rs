//! Small prime utilities: sieving, deterministic Miller-Rabin for `u64`,
//! and probable-prime search for big moduli.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// All primes `<= n`, by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic primality test for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Iterator over the primes in increasing order, starting at 2.
#[derive(Debug, Clone)]
pub struct Primes {
    next: u64,
}

impl Primes {
    pub fn new() -> Self {
        Primes { next: 2 }
    }

    pub fn starting_at(n: u64) -> Self {
        Primes { next: n }
    }
}

impl Default for Primes {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for Primes {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        while !is_prime_u64(self.next) {
            self.next += 1;
        }
        let p = self.next;
        self.next += 1;
        Some(p)
    }
}

/// Miller-Rabin with the first 40 primes as bases. Deterministic below
/// 3.3e24; beyond that the error probability is below 4^-40.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    let bases = primes_up_to(173);
    'outer: for a in bases {
        let a = BigUint::from(a);
        if (&a % n).is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Smallest probable prime strictly greater than `n`.
pub fn next_prime_after(n: &BigUint) -> BigUint {
    let mut c = n + 1u32;
    if c.is_even() && c != BigUint::from(2u32) {
        c += 1u32;
    }
    loop {
        if is_probable_prime(&c) {
            return c;
        }
        c += 2u32;
    }
}

/// Integer square root, rounded up.
pub fn isqrt_ceil(n: &BigUint) -> BigUint {
    let r = n.sqrt();
    if &(&r * &r) == n {
        r
    } else {
        r + 1u32
    }
}

/// Legendre symbol of `a` modulo an odd prime `p`, in {-1, 0, 1}.
pub fn legendre(a: i64, p: u64) -> i32 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Whether the rational integer `n` is a perfect square (negative numbers are not).
pub fn is_square(n: &BigInt) -> bool {
    match n.to_biguint() {
        Some(u) => {
            let r = u.sqrt();
            &r * &r == u
        }
        None => false,
    }
}

/// Moebius function, by trial division.
pub fn moebius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_and_mr_agree() {
        let sieve = primes_up_to(5000);
        let mr: Vec<u64> = (0..=5000).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(sieve, mr);
        assert_eq!(Primes::new().take(5).collect::<Vec<_>>(), vec![2, 3, 5, 7, 11]);
    }

    #[test]
    fn big_prime_search() {
        let n = BigUint::from(10u32).pow(30);
        let p = next_prime_after(&n);
        assert_eq!(p, n + 57u32);
        assert!(!is_probable_prime(&(BigUint::from(1_000_000_007u64) * 998_244_353u64)));
    }

    #[test]
    fn moebius_values() {
        let m: Vec<i32> = (1..=10).map(moebius).collect();
        assert_eq!(m, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }
}
