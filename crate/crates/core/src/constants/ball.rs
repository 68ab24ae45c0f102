//! Binary fixed-point balls: a midpoint and a radius, both integers scaled
//! by 2^-bits. Every operation widens the radius enough to cover rounding.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    mid: BigInt,
    rad: BigInt,
    bits: u32,
}

fn shift_round(x: &BigInt, k: u32) -> BigInt {
    if k == 0 {
        return x.clone();
    }
    let half = BigInt::one() << (k - 1);
    (x + half) >> k
}

impl Ball {
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn exact_int(n: i64, bits: u32) -> Ball {
        Ball {
            mid: BigInt::from(n) << bits,
            rad: BigInt::zero(),
            bits,
        }
    }

    pub fn from_ratio(r: &BigRational, bits: u32) -> Ball {
        let scaled = r.numer() << bits;
        let (q, rem) = scaled.div_mod_floor(r.denom());
        Ball {
            mid: q,
            rad: if rem.is_zero() { BigInt::zero() } else { BigInt::one() },
            bits,
        }
    }

    /// 1/n, for a positive integer n.
    pub fn recip_int(n: &BigInt, bits: u32) -> Ball {
        let (q, rem) = (BigInt::one() << bits).div_mod_floor(n);
        Ball {
            mid: q,
            rad: if rem.is_zero() { BigInt::zero() } else { BigInt::one() },
            bits,
        }
    }

    /// Interval `[center - radius, center + radius]` given in floating point;
    /// both endpoints are converted exactly.
    pub fn from_f64(center: f64, radius: f64, bits: u32) -> Ball {
        let c = BigRational::from_float(center).expect("finite center");
        let r = BigRational::from_float(radius.abs()).expect("finite radius");
        let mut b = Ball::from_ratio(&c, bits);
        let rr = Ball::from_ratio(&r, bits);
        b.rad += rr.mid + rr.rad + 1;
        b
    }

    pub fn zero(bits: u32) -> Ball {
        Ball::exact_int(0, bits)
    }

    pub fn one(bits: u32) -> Ball {
        Ball::exact_int(1, bits)
    }

    fn same_bits(&self, other: &Ball) {
        assert_eq!(self.bits, other.bits, "ball precision mismatch");
    }

    pub fn add(&self, other: &Ball) -> Ball {
        self.same_bits(other);
        Ball {
            mid: &self.mid + &other.mid,
            rad: &self.rad + &other.rad,
            bits: self.bits,
        }
    }

    pub fn sub(&self, other: &Ball) -> Ball {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Ball {
        Ball {
            mid: -&self.mid,
            rad: self.rad.clone(),
            bits: self.bits,
        }
    }

    pub fn mul(&self, other: &Ball) -> Ball {
        self.same_bits(other);
        let b = self.bits;
        let mid = shift_round(&(&self.mid * &other.mid), b);
        let cross = self.mid.abs() * &other.rad + other.mid.abs() * &self.rad + &self.rad * &other.rad;
        let rad = (cross >> b) + 2;
        Ball {
            mid,
            rad,
            bits: b,
        }
    }

    pub fn mul_int(&self, n: i64) -> Ball {
        Ball {
            mid: &self.mid * n,
            rad: &self.rad * n.unsigned_abs(),
            bits: self.bits,
        }
    }

    pub fn div_int(&self, n: i64) -> Ball {
        assert!(n != 0, "division by zero");
        let d = BigInt::from(n);
        Ball {
            mid: self.mid.div_floor(&d),
            rad: self.rad.div_floor(&d.abs()) + 2,
            bits: self.bits,
        }
    }

    /// Reciprocal; the ball must not contain zero.
    pub fn recip(&self) -> Ball {
        let b = self.bits;
        let lo = self.mid.abs() - &self.rad;
        assert!(lo.is_positive(), "reciprocal of a ball containing zero");
        let one = BigInt::one() << (2 * b);
        let mid = one.div_floor(&self.mid);
        // |1/x - 1/m| <= r / (m (m - r)) in scaled units.
        let rad = ((&self.rad << (2 * b)) / (self.mid.abs() * &lo)) + 2;
        Ball { mid, rad, bits: b }
    }

    pub fn div(&self, other: &Ball) -> Ball {
        self.mul(&other.recip())
    }

    pub fn pow(&self, n: u32) -> Ball {
        let mut acc = Ball::one(self.bits);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// exp(x) by Taylor series, for |x| <= 1/2.
    pub fn exp(&self) -> Ball {
        let b = self.bits;
        let bound = self.mid.abs() + &self.rad;
        assert!(bound <= (BigInt::one() << (b - 1)), "exp argument too large");
        let mut sum = Ball::one(b);
        let mut term = Ball::one(b);
        let mut k = 1i64;
        loop {
            term = term.mul(self).div_int(k);
            sum = sum.add(&term);
            if term.mid.abs() <= BigInt::one() {
                break;
            }
            k += 1;
        }
        // The remaining terms shrink by a factor of at least 2 each, so
        // their sum is at most the magnitude of the last one.
        sum.rad += term.mid.abs() + &term.rad + 1;
        sum
    }

    pub fn to_f64(&self) -> f64 {
        let r = BigRational::new(self.mid.clone(), BigInt::one() << self.bits);
        r.to_f64().unwrap_or(f64::NAN)
    }

    /// Radius as a float, rounded up.
    pub fn radius_f64(&self) -> f64 {
        let r = BigRational::new(&self.rad + 1, BigInt::one() << self.bits);
        r.to_f64().unwrap_or(f64::INFINITY) * (1.0 + 1e-12)
    }

    pub fn lower(&self) -> BigRational {
        BigRational::new(&self.mid - &self.rad, BigInt::one() << self.bits)
    }

    pub fn upper(&self) -> BigRational {
        BigRational::new(&self.mid + &self.rad, BigInt::one() << self.bits)
    }

    pub fn contains_ratio(&self, r: &BigRational) -> bool {
        &self.lower() <= r && r <= &self.upper()
    }

    pub fn overlaps(&self, other: &Ball) -> bool {
        self.lower() <= other.upper() && other.lower() <= self.upper()
    }

    /// Widen the radius by `extra` (an absolute bound, rounded up).
    pub fn widen(&self, extra: &BigRational) -> Ball {
        let e = Ball::from_ratio(extra, self.bits);
        Ball {
            mid: self.mid.clone(),
            rad: &self.rad + e.mid.abs() + e.rad + 1,
            bits: self.bits,
        }
    }

    /// Decimal expansion of the midpoint with `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let ten = BigInt::from(10).pow(digits as u32);
        let scaled = shift_round(&(self.mid.abs() * &ten), self.bits);
        let (int, frac) = scaled.div_rem(&ten);
        let sign = if self.mid.sign() == Sign::Minus && !scaled.is_zero() { "-" } else { "" };
        if digits == 0 {
            return format!("{}{}", sign, int);
        }
        format!("{}{}.{:0>width$}", sign, int, frac, width = digits)
    }

    /// Decimal digits that are meaningful given the radius.
    pub fn significant_digits(&self) -> usize {
        let r = self.radius_f64();
        if r <= 0.0 {
            return (self.bits as f64 * std::f64::consts::LOG10_2) as usize;
        }
        (-r.log10()).floor().max(0.0) as usize
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} +/- {:.3e}", self.to_decimal(self.significant_digits()), self.radius_f64())
    }
}

fn atan_inv(x: i64, bits: u32) -> Ball {
    // atan(1/x) = sum (-1)^k / ((2k+1) x^(2k+1)); alternating with decreasing
    // terms, so the first omitted term bounds the remainder.
    let mut sum = Ball::zero(bits);
    let mut power = BigInt::from(x);
    let x2 = BigInt::from(x * x);
    let mut k = 0i64;
    loop {
        let term = BigRational::new(BigInt::one(), &power * (2 * k + 1));
        let tb = Ball::from_ratio(&term, bits);
        let small = tb.mid.is_zero();
        sum = if k % 2 == 0 { sum.add(&tb) } else { sum.sub(&tb) };
        if small {
            sum.rad += 1;
            return sum;
        }
        power *= &x2;
        k += 1;
    }
}

/// pi from Machin's formula.
pub fn pi(bits: u32) -> Ball {
    atan_inv(5, bits).mul_int(16).sub(&atan_inv(239, bits).mul_int(4))
}
