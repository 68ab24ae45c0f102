//! Homogeneous forms in t1..t4 and the five sub-Pfaffian quadrics.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;

use super::quadruple::Quadruple;

pub type Exponent = [u8; 4];

/// Degree-`d` exponent vectors in t1..t4, in lexicographic order of their
/// sorted variable lists (t1^2, t1t2, ..., t4^2 for d = 2).
pub fn monomials(d: usize) -> &'static [Exponent] {
    static CACHE: OnceLock<Vec<Vec<Exponent>>> = OnceLock::new();
    let all = CACHE.get_or_init(|| (0..=4).map(build_monomials).collect());
    &all[d]
}

fn build_monomials(d: usize) -> Vec<Exponent> {
    fn rec(start: usize, left: usize, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        if left == 0 {
            out.push(*cur);
            return;
        }
        for v in start..4 {
            cur[v] += 1;
            rec(v, left - 1, cur, out);
            cur[v] -= 1;
        }
    }
    let mut out = Vec::new();
    rec(0, d, &mut [0; 4], &mut out);
    out
}

/// Position of an exponent vector within `monomials(degree)`.
pub fn monomial_index(e: &Exponent) -> usize {
    static CACHE: OnceLock<HashMap<Exponent, usize>> = OnceLock::new();
    let map = CACHE.get_or_init(|| {
        let mut m = HashMap::new();
        for d in 0..=4 {
            for (i, e) in build_monomials(d).into_iter().enumerate() {
                m.insert(e, i);
            }
        }
        m
    });
    map[e]
}

/// Coefficients of a form of degree `d` in the basis `monomials(d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    pub degree: usize,
    pub coeffs: Vec<BigInt>,
}

impl Form {
    pub fn zero(degree: usize) -> Self {
        Form {
            degree,
            coeffs: vec![BigInt::zero(); monomials(degree).len()],
        }
    }

    pub fn linear(c: [BigInt; 4]) -> Self {
        Form {
            degree: 1,
            coeffs: c.to_vec(),
        }
    }

    pub fn linear_i64(c: [i64; 4]) -> Self {
        Form::linear(c.map(BigInt::from))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn mul(&self, other: &Form) -> Form {
        let mut out = Form::zero(self.degree + other.degree);
        let ma = monomials(self.degree);
        let mb = monomials(other.degree);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let mut e = ma[i];
                for v in 0..4 {
                    e[v] += mb[j][v];
                }
                out.coeffs[monomial_index(&e)] += a * b;
            }
        }
        out
    }

    pub fn add_assign(&mut self, other: &Form) {
        assert_eq!(self.degree, other.degree);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn sub_assign(&mut self, other: &Form) {
        assert_eq!(self.degree, other.degree);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
    }

    pub fn eval(&self, t: &[BigInt; 4]) -> BigInt {
        monomials(self.degree)
            .iter()
            .zip(&self.coeffs)
            .fold(BigInt::zero(), |acc, (e, c)| {
                let mut term = c.clone();
                for v in 0..4 {
                    for _ in 0..e[v] {
                        term *= &t[v];
                    }
                }
                acc + term
            })
    }

    /// Evaluate with coefficients cast to `T`.
    pub fn eval_generic<T>(&self, t: &[T; 4]) -> T
    where
        T: Copy + std::ops::Add<Output = T> + std::ops::Mul<Output = T> + From<f64>,
    {
        use num_traits::ToPrimitive;
        let mut acc = T::from(0.0);
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            let mut term = T::from(c.to_f64().unwrap_or(f64::NAN));
            for v in 0..4 {
                for _ in 0..e[v] {
                    term = term * t[v];
                }
            }
            acc = acc + term;
        }
        acc
    }
}

/// A quaternary quadratic form (ten coefficients).
pub type QuadricForm = Form;

/// Entry (r, c) of the pencil t1 A + t2 B + t3 C + t4 D as a linear form.
pub fn pencil_entry(q: &Quadruple, r: usize, c: usize) -> Form {
    Form::linear([
        q.entry(0, r, c),
        q.entry(1, r, c),
        q.entry(2, r, c),
        q.entry(3, r, c),
    ])
}

/// The five signed 4x4 sub-Pfaffians Q_i = (-1)^{i+1} Pf(M(t) without row
/// and column i), i = 1..5.
pub fn sub_pfaffians(q: &Quadruple) -> [QuadricForm; 5] {
    let m: Vec<Vec<Form>> = (0..5)
        .map(|r| (0..5).map(|c| pencil_entry(q, r, c)).collect())
        .collect();
    std::array::from_fn(|i| {
        let idx: Vec<usize> = (0..5).filter(|&k| k != i).collect();
        let (a, b, c, d) = (idx[0], idx[1], idx[2], idx[3]);
        let mut pf = m[a][b].mul(&m[c][d]);
        pf.sub_assign(&m[a][c].mul(&m[b][d]));
        pf.add_assign(&m[a][d].mul(&m[b][c]));
        if i % 2 == 1 {
            for x in pf.coeffs.iter_mut() {
                *x = -&*x;
            }
        }
        pf
    })
}

/// The five cubic forms `(M(t) * Q(t))_r`; all zero for every quadruple.
pub fn kernel_residual(q: &Quadruple) -> [Form; 5] {
    let qs = sub_pfaffians(q);
    std::array::from_fn(|r| {
        let mut acc = Form::zero(3);
        for (c, qc) in qs.iter().enumerate() {
            acc.add_assign(&pencil_entry(q, r, c).mul(qc));
        }
        acc
    })
}
