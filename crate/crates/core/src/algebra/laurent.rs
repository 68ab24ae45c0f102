//! Laurent polynomials in a formal variable `p` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct LaurentP {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentP {
    pub fn zero() -> Self {
        LaurentP::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// `c * p^e`.
    pub fn monomial(c: BigRational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentP { terms }
    }

    /// `p^e`.
    pub fn p_pow(e: i64) -> Self {
        Self::monomial(BigRational::one(), e)
    }

    /// Build from `(coefficient, exponent)` pairs with integer coefficients.
    pub fn from_terms(pairs: &[(i64, i64)]) -> Self {
        pairs.iter().fold(Self::zero(), |acc, &(c, e)| {
            acc + Self::monomial(BigRational::from_integer(BigInt::from(c)), e)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn pow(&self, n: u32) -> LaurentP {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Multiply by `p^k`.
    pub fn shift(&self, k: i64) -> LaurentP {
        LaurentP {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> LaurentP {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentP {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Exact evaluation at a nonzero rational `p`.
    pub fn eval(&self, p: &BigRational) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, (e, c)| {
            let pe = if *e >= 0 {
                num_traits::pow(p.clone(), *e as usize)
            } else {
                num_traits::pow(p.recip(), (-*e) as usize)
            };
            acc + c * pe
        })
    }

    pub fn eval_int(&self, p: i64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(p)))
    }

    fn add_term(&mut self, e: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }
}

/// Coefficient-wise equality.
pub fn laurent_equal(f: &LaurentP, g: &LaurentP) -> bool {
    f == g
}

impl Add<&LaurentP> for &LaurentP {
    type Output = LaurentP;
    fn add(self, rhs: &LaurentP) -> LaurentP {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Add for LaurentP {
    type Output = LaurentP;
    fn add(self, rhs: LaurentP) -> LaurentP {
        &self + &rhs
    }
}

impl Neg for &LaurentP {
    type Output = LaurentP;
    fn neg(self) -> LaurentP {
        LaurentP {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentP {
    type Output = LaurentP;
    fn neg(self) -> LaurentP {
        -&self
    }
}

impl Sub<&LaurentP> for &LaurentP {
    type Output = LaurentP;
    fn sub(self, rhs: &LaurentP) -> LaurentP {
        self + &(-rhs)
    }
}

impl Sub for LaurentP {
    type Output = LaurentP;
    fn sub(self, rhs: LaurentP) -> LaurentP {
        &self - &rhs
    }
}

impl Mul<&LaurentP> for &LaurentP {
    type Output = LaurentP;
    fn mul(self, rhs: &LaurentP) -> LaurentP {
        let mut out = LaurentP::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentP {
    type Output = LaurentP;
    fn mul(self, rhs: LaurentP) -> LaurentP {
        &self * &rhs
    }
}

impl fmt::Debug for LaurentP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentP({})", self)
    }
}

impl fmt::Display for LaurentP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = mag.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{}", mag)?,
                (1, true) => write!(f, "p")?,
                (1, false) => write!(f, "{}*p", mag)?,
                (e, true) => write!(f, "p^{}", e)?,
                (e, false) => write!(f, "{}*p^{}", mag, e)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_expansion() {
        let beta = LaurentP::from_terms(&[(1, 0), (1, -2), (-1, -4), (-1, -5)]);
        let lhs = &LaurentP::p_pow(5) * &beta;
        let rhs = LaurentP::from_terms(&[(1, 5), (1, 3), (-1, 1), (-1, 0)]);
        assert!(laurent_equal(&lhs, &rhs));
        assert!(!laurent_equal(
            &LaurentP::from_terms(&[(1, 0), (1, -2)]),
            &LaurentP::from_terms(&[(1, 0), (1, -3)])
        ));
    }

    #[test]
    fn cancellation_prunes() {
        let a = LaurentP::from_terms(&[(3, 2), (1, -1)]);
        assert!((&a - &a).is_zero());
        assert_eq!((&a - &a).min_exponent(), None);
    }

    #[test]
    fn evaluation_and_display() {
        let f = LaurentP::from_terms(&[(1, 5), (1, 3), (-1, 1), (-1, 0)]);
        assert_eq!(f.eval_int(2), BigRational::from_integer(37.into()));
        assert_eq!(f.to_string(), "p^5 + p^3 - p - 1");
    }
}
