//! Dense univariate polynomials over the integers and the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::AlgebraError;

/// Integer polynomial, coefficients stored from the constant term up.
/// Trailing zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Exact quotient over the integers, or `None` when `divisor` does not
    /// divide `self` in Z[x].
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let n = self.degree()?;
        if n < dd {
            return None;
        }
        let lc = divisor.lc();
        let mut rem = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            q[k] = c;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(IntPoly::new(q))
        } else {
            None
        }
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Whether `gcd(f, f')` is constant.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => int_gcd_degree(self, &self.derivative()) == 0,
        }
    }

    /// Squarefree part `f / gcd(f, f')`, made primitive.
    pub fn squarefree_part(&self) -> IntPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.primitive();
        }
        let g = self.to_rat().gcd(&self.derivative().to_rat());
        let (q, _) = self.to_rat().div_rem(&g);
        q.to_primitive_int()
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", mag)?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{}", if show_coeff { "*" } else { "" }, i)?,
            }
        }
        Ok(())
    }
}

/// Rational polynomial, used for exact remainder sequences.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (RatPoly::default(), self.clone());
        }
        let lc = d.lc();
        let mut q = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            q[k] = c;
        }
        rem.truncate(dd);
        (RatPoly::new(q), RatPoly::new(rem))
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn monic(&self) -> RatPoly {
        let lc = self.lc();
        RatPoly::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Scale to a primitive integer polynomial with positive leading coefficient.
    pub fn to_primitive_int(&self) -> IntPoly {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
                .collect(),
        )
        .primitive()
    }
}

/// Lagrange interpolation through `(xs[i], ys[i])` with distinct nodes.
pub fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> RatPoly {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let mut acc = vec![BigRational::zero(); n];
    for i in 0..n {
        // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigInt::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * BigRational::from_integer(xs[j].clone());
            }
            basis = next;
            denom *= &xs[i] - &xs[j];
        }
        let scale = BigRational::new(ys[i].clone(), denom);
        for (a, b) in acc.iter_mut().zip(basis) {
            *a += b * &scale;
        }
    }
    RatPoly::new(acc)
}

fn sign_changes(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`, exact over Z.
fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> (IntPoly, BigInt) {
    let db = b.degree().expect("nonzero divisor");
    let da = a.degree().unwrap_or(0);
    let lc = b.lc();
    let mut rem = a.coeffs.clone();
    if a.is_zero() || da < db {
        return (a.clone(), BigInt::one());
    }
    let steps = da - db + 1;
    for k in (0..steps).rev() {
        let top = rem[k + db].clone();
        for c in rem.iter_mut() {
            *c *= &lc;
        }
        for (j, bc) in b.coeffs.iter().enumerate() {
            rem[k + j] -= &top * bc;
        }
    }
    rem.truncate(db);
    (IntPoly::new(rem), num_traits::pow(lc, steps))
}

/// Degree of `gcd(a, b)` over Q, via the primitive remainder sequence.
fn int_gcd_degree(a: &IntPoly, b: &IntPoly) -> usize {
    let (mut a, mut b) = (a.primitive(), b.primitive());
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let (r, _) = pseudo_rem(&a, &b);
        a = b;
        b = if r.is_zero() { r } else { r.primitive() };
    }
    a.degree().unwrap_or(0)
}

/// Number of distinct real roots of a squarefree integer polynomial,
/// from the Sturm chain `f, f', -rem(...)` kept in primitive integer form.
/// Positive rescaling of a chain member does not change sign counts.
pub fn real_root_count(f: &IntPoly) -> Result<usize, AlgebraError> {
    let deg = f.degree().ok_or(AlgebraError::ZeroPolynomial)?;
    if deg == 0 {
        return Ok(0);
    }
    if !f.is_squarefree() {
        return Err(AlgebraError::NotSquarefree);
    }
    let mut chain = vec![f.clone(), f.derivative()];
    loop {
        let n = chain.len();
        let (r, mult) = pseudo_rem(&chain[n - 2], &chain[n - 1]);
        if r.is_zero() {
            break;
        }
        let g = r.content();
        let mut next = IntPoly::new(r.coeffs.iter().map(|c| c / &g).collect());
        if mult.is_positive() {
            next = next.neg();
        }
        chain.push(next);
    }
    let sgn = |x: &BigInt| if x.is_positive() { 1 } else if x.is_negative() { -1 } else { 0 };
    let at_pos = sign_changes(chain.iter().map(|p| sgn(&p.lc())));
    let at_neg = sign_changes(chain.iter().map(|p| {
        let s = sgn(&p.lc());
        if p.degree().unwrap_or(0) % 2 == 1 {
            -s
        } else {
            s
        }
    }));
    Ok(at_neg - at_pos)
}

/// Resultant via the Sylvester determinant.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    let (m, n) = match (f.degree(), g.degree()) {
        (Some(m), Some(n)) => (m, n),
        _ => return BigInt::zero(),
    };
    if m == 0 && n == 0 {
        return BigInt::one();
    }
    let size = m + n;
    let mut s = IntMatrix::zeros(size, size);
    for row in 0..n {
        for (k, c) in f.coeffs().iter().rev().enumerate() {
            s.set(row, row + k, c.clone());
        }
    }
    for row in 0..m {
        for (k, c) in g.coeffs().iter().rev().enumerate() {
            s.set(n + row, row + k, c.clone());
        }
    }
    s.det()
}

/// Discriminant `(-1)^{d(d-1)/2} Res(f, f') / lc(f)`.
pub fn poly_discriminant(f: &IntPoly) -> Result<BigRational, AlgebraError> {
    let d = f.degree().ok_or(AlgebraError::ZeroPolynomial)?;
    if d == 0 {
        return Err(AlgebraError::ConstantPolynomial);
    }
    let r = resultant(f, &f.derivative());
    let sign = if (d * (d - 1) / 2) % 2 == 0 { 1 } else { -1 };
    Ok(BigRational::new(r * sign, f.lc()))
}
