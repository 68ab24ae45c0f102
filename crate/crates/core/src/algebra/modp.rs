//! Polynomials over prime fields: distinct-degree factorization for
//! factor-degree patterns, and Cantor-Zassenhaus splitting over large primes.

use std::fmt::Debug;

use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use super::poly::IntPoly;

/// A prime field F_p with an explicit element representation.
pub trait PrimeField: Clone {
    type Elem: Clone + PartialEq + Debug;

    fn modulus(&self) -> BigUint;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn reduce(&self, a: &BigInt) -> Self::Elem;
    /// Symmetric lift into (-p/2, p/2].
    fn lift(&self, a: &Self::Elem) -> BigInt;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
}

/// F_p for a prime below 2^63.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SmallField {
    p: u64,
}

impl SmallField {
    pub fn new(p: u64) -> Self {
        assert!(p >= 2 && p < (1 << 63));
        SmallField { p }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }
}

impl PrimeField for SmallField {
    type Elem = u64;

    fn modulus(&self) -> BigUint {
        BigUint::from(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
    fn reduce(&self, a: &BigInt) -> u64 {
        a.mod_floor(&BigInt::from(self.p)).to_u64().expect("reduced residue")
    }
    fn lift(&self, a: &u64) -> BigInt {
        if *a > self.p / 2 {
            BigInt::from(*a) - BigInt::from(self.p)
        } else {
            BigInt::from(*a)
        }
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
}

/// F_p for an arbitrary (probable) prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigField {
    p: BigUint,
}

impl BigField {
    pub fn new(p: BigUint) -> Self {
        BigField { p }
    }
}

impl PrimeField for BigField {
    type Elem = BigUint;

    fn modulus(&self) -> BigUint {
        self.p.clone()
    }
    fn zero(&self) -> BigUint {
        BigUint::zero()
    }
    fn one(&self) -> BigUint {
        BigUint::one()
    }
    fn is_zero(&self, a: &BigUint) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        let s = a + b;
        if s >= self.p {
            s - &self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        if a >= b {
            a - b
        } else {
            &self.p - (b - a)
        }
    }
    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) % &self.p
    }
    fn inv(&self, a: &BigUint) -> BigUint {
        assert!(!a.is_zero(), "inverse of zero");
        a.modpow(&(&self.p - 2u32), &self.p)
    }
    fn reduce(&self, a: &BigInt) -> BigUint {
        let p = BigInt::from_biguint(Sign::Plus, self.p.clone());
        a.mod_floor(&p).to_biguint().expect("reduced residue")
    }
    fn lift(&self, a: &BigUint) -> BigInt {
        let half = &self.p >> 1;
        if *a > half {
            BigInt::from(a.clone()) - BigInt::from(self.p.clone())
        } else {
            BigInt::from(a.clone())
        }
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigUint {
        rng.gen_biguint_below(&self.p)
    }
}

/// Polynomial over `F`, coefficients from the constant term up, normalized
/// so the top coefficient is nonzero.
pub type FpPoly<F> = Vec<<F as PrimeField>::Elem>;

fn trim<F: PrimeField>(k: &F, mut a: FpPoly<F>) -> FpPoly<F> {
    while a.last().map_or(false, |c| k.is_zero(c)) {
        a.pop();
    }
    a
}

pub fn reduce_poly<F: PrimeField>(k: &F, f: &IntPoly) -> FpPoly<F> {
    trim(k, f.coeffs().iter().map(|c| k.reduce(c)).collect())
}

pub fn lift_poly<F: PrimeField>(k: &F, f: &FpPoly<F>) -> IntPoly {
    IntPoly::new(f.iter().map(|c| k.lift(c)).collect())
}

pub fn degree<F: PrimeField>(f: &FpPoly<F>) -> Option<usize> {
    f.len().checked_sub(1)
}

pub fn monic<F: PrimeField>(k: &F, f: &FpPoly<F>) -> FpPoly<F> {
    match f.last() {
        None => Vec::new(),
        Some(lc) => {
            let inv = k.inv(lc);
            f.iter().map(|c| k.mul(c, &inv)).collect()
        }
    }
}

pub fn sub<F: PrimeField>(k: &F, a: &FpPoly<F>, b: &FpPoly<F>) -> FpPoly<F> {
    let n = a.len().max(b.len());
    let z = k.zero();
    trim(
        k,
        (0..n)
            .map(|i| k.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect(),
    )
}

pub fn mul<F: PrimeField>(k: &F, a: &FpPoly<F>, b: &FpPoly<F>) -> FpPoly<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![k.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if k.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = k.add(&out[i + j], &k.mul(x, y));
        }
    }
    trim(k, out)
}

pub fn div_rem<F: PrimeField>(k: &F, a: &FpPoly<F>, d: &FpPoly<F>) -> (FpPoly<F>, FpPoly<F>) {
    let dd = degree::<F>(d).expect("division by zero polynomial");
    if a.len() <= dd {
        return (Vec::new(), a.clone());
    }
    let inv = k.inv(&d[dd]);
    let mut rem = a.clone();
    let mut q = vec![k.zero(); a.len() - dd];
    for i in (0..q.len()).rev() {
        let c = k.mul(&rem[i + dd], &inv);
        if k.is_zero(&c) {
            continue;
        }
        for (j, dc) in d.iter().enumerate() {
            rem[i + j] = k.sub(&rem[i + j], &k.mul(&c, dc));
        }
        q[i] = c;
    }
    rem.truncate(dd);
    (trim(k, q), trim(k, rem))
}

pub fn rem<F: PrimeField>(k: &F, a: &FpPoly<F>, d: &FpPoly<F>) -> FpPoly<F> {
    div_rem(k, a, d).1
}

pub fn gcd<F: PrimeField>(k: &F, a: &FpPoly<F>, b: &FpPoly<F>) -> FpPoly<F> {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_empty() {
        let r = rem(k, &a, &b);
        a = b;
        b = r;
    }
    monic(k, &a)
}

pub fn derivative<F: PrimeField>(k: &F, f: &FpPoly<F>) -> FpPoly<F> {
    let mut d = Vec::with_capacity(f.len().saturating_sub(1));
    let mut i = k.zero();
    for (n, c) in f.iter().enumerate() {
        if n > 0 {
            d.push(k.mul(c, &i));
        }
        i = k.add(&i, &k.one());
    }
    trim(k, d)
}

/// `base^e mod m` for a big exponent.
pub fn pow_mod<F: PrimeField>(k: &F, base: &FpPoly<F>, e: &BigUint, m: &FpPoly<F>) -> FpPoly<F> {
    let mut result = vec![k.one()];
    let b = rem(k, base, m);
    for i in (0..e.bits()).rev() {
        result = rem(k, &mul(k, &result, &result), m);
        if e.bit(i) {
            result = rem(k, &mul(k, &result, &b), m);
        }
    }
    rem(k, &result, m)
}

pub fn is_squarefree<F: PrimeField>(k: &F, f: &FpPoly<F>) -> bool {
    degree::<F>(&gcd(k, f, &derivative(k, f))) == Some(0)
}

/// Distinct-degree factorization of a squarefree polynomial: pairs
/// `(d, g_d)` with `g_d` the product of all monic irreducible factors of degree `d`.
pub fn ddf<F: PrimeField>(k: &F, f: &FpPoly<F>) -> Vec<(usize, FpPoly<F>)> {
    let p = k.modulus();
    let mut f = monic(k, f);
    let x: FpPoly<F> = vec![k.zero(), k.one()];
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while degree::<F>(&f).unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = pow_mod(k, &h, &p, &f);
        let g = gcd(k, &f, &sub(k, &h, &x));
        if degree::<F>(&g).unwrap_or(0) > 0 {
            f = div_rem(k, &f, &g).0;
            h = rem(k, &h, &f);
            out.push((d, g));
        }
    }
    if degree::<F>(&f).unwrap_or(0) > 0 {
        let df = degree::<F>(&f).unwrap();
        out.push((df, f));
    }
    out
}

/// Factor-degree pattern of a squarefree polynomial over F_p, sorted ascending.
pub fn factor_pattern<F: PrimeField>(k: &F, f: &FpPoly<F>) -> Vec<usize> {
    let mut pattern = Vec::new();
    for (d, g) in ddf(k, f) {
        let n = degree::<F>(&g).unwrap() / d;
        pattern.extend(std::iter::repeat(d).take(n));
    }
    pattern.sort_unstable();
    pattern
}

/// Equal-degree splitting (Cantor-Zassenhaus) for odd p.
pub fn edf<F: PrimeField, R: Rng + ?Sized>(
    k: &F,
    g: &FpPoly<F>,
    d: usize,
    rng: &mut R,
) -> Vec<FpPoly<F>> {
    let n = degree::<F>(g).unwrap_or(0);
    if n == d {
        return vec![monic(k, g)];
    }
    let p = k.modulus();
    assert!(p.is_odd(), "equal-degree splitting needs an odd characteristic");
    let e = (p.pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: FpPoly<F> = trim(k, (0..n).map(|_| k.random(rng)).collect());
        if degree::<F>(&a).unwrap_or(0) == 0 {
            continue;
        }
        let mut b = pow_mod(k, &a, &e, g);
        b = sub(k, &b, &vec![k.one()]);
        let h = gcd(k, g, &b);
        let dh = degree::<F>(&h).unwrap_or(0);
        if dh > 0 && dh < n {
            let other = div_rem(k, g, &h).0;
            let mut out = edf(k, &h, d, rng);
            out.extend(edf(k, &other, d, rng));
            return out;
        }
    }
}

/// Complete factorization of a squarefree polynomial into monic irreducibles.
pub fn factor_squarefree<F: PrimeField, R: Rng + ?Sized>(
    k: &F,
    f: &FpPoly<F>,
    rng: &mut R,
) -> Vec<FpPoly<F>> {
    let mut out = Vec::new();
    for (d, g) in ddf(k, f) {
        out.extend(edf(k, &g, d, rng));
    }
    out
}
