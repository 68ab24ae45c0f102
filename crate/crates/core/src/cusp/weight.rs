//! Torus weights of the forty coordinates.
//!
//! The torus element is diag(d_a, d_b, d_c, d_d) in GL4 times
//! diag(e_1, ..., e_5) in SL5, each entry a monomial in s1..s7, and the
//! scaling lambda acts on every coordinate with weight lambda^1.

use std::fmt;
use std::ops::{Add, Neg};

use serde::Serialize;

use crate::pencil::CoordId;

/// Exponent vectors (s1..s7) of the GL4 diagonal.
pub const GL4_DIAGONAL: [[i64; 7]; 4] = [
    [-3, -1, -1, 0, 0, 0, 0],
    [1, -1, -1, 0, 0, 0, 0],
    [1, 1, -1, 0, 0, 0, 0],
    [1, 1, 3, 0, 0, 0, 0],
];

/// Exponent vectors (s1..s7) of the SL5 diagonal.
pub const SL5_DIAGONAL: [[i64; 7]; 5] = [
    [0, 0, 0, -4, -3, -2, -1],
    [0, 0, 0, 1, -3, -2, -1],
    [0, 0, 0, 1, 2, -2, -1],
    [0, 0, 0, 1, 2, 3, -1],
    [0, 0, 0, 1, 2, 3, 4],
];

/// A monomial lambda^e0 s1^e1 ... s7^e7.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct WeightMonomial {
    pub exponents: [i64; 8],
}

impl WeightMonomial {
    pub fn new(exponents: [i64; 8]) -> Self {
        WeightMonomial { exponents }
    }

    pub fn lambda(&self) -> i64 {
        self.exponents[0]
    }

    pub fn s(&self) -> [i64; 7] {
        let mut out = [0; 7];
        out.copy_from_slice(&self.exponents[1..]);
        out
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &WeightMonomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    pub fn pow(&self, n: i64) -> WeightMonomial {
        WeightMonomial {
            exponents: self.exponents.map(|e| e * n),
        }
    }
}

impl Add for WeightMonomial {
    type Output = WeightMonomial;
    fn add(self, rhs: WeightMonomial) -> WeightMonomial {
        let mut e = self.exponents;
        for (a, b) in e.iter_mut().zip(rhs.exponents) {
            *a += b;
        }
        WeightMonomial { exponents: e }
    }
}

impl Neg for WeightMonomial {
    type Output = WeightMonomial;
    fn neg(self) -> WeightMonomial {
        WeightMonomial {
            exponents: self.exponents.map(|e| -e),
        }
    }
}

impl std::iter::Sum for WeightMonomial {
    fn sum<I: Iterator<Item = WeightMonomial>>(iter: I) -> Self {
        iter.fold(WeightMonomial::default(), |a, b| a + b)
    }
}

impl fmt::Display for WeightMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let var = if k == 0 {
                "lambda".to_string()
            } else {
                format!("s{}", k)
            };
            parts.push(if e == 1 {
                var
            } else {
                format!("{}^{}", var, e)
            });
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl fmt::Debug for WeightMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w({})", self)
    }
}

fn with_lambda(lambda: i64, s: [i64; 7]) -> WeightMonomial {
    let mut e = [0; 8];
    e[0] = lambda;
    e[1..].copy_from_slice(&s);
    WeightMonomial::new(e)
}

fn add7(a: [i64; 7], b: [i64; 7]) -> [i64; 7] {
    std::array::from_fn(|k| a[k] + b[k])
}

fn sub7(a: [i64; 7], b: [i64; 7]) -> [i64; 7] {
    std::array::from_fn(|k| a[k] - b[k])
}

/// Weight of a coordinate: lambda times its GL4 diagonal entry times the
/// two SL5 diagonal entries of its index pair.
pub fn coordinate_weight(c: CoordId) -> WeightMonomial {
    let (i, j) = c.pair();
    let s = add7(
        GL4_DIAGONAL[c.letter()],
        add7(SL5_DIAGONAL[i - 1], SL5_DIAGONAL[j - 1]),
    );
    with_lambda(1, s)
}

/// Exponents of s1..s7 in the invariant measure: conjugation by the torus
/// scales the lower unipotent entry (i, j), i > j, by diag_i / diag_j, and the
/// measure carries the inverse of the product of these characters.
pub fn haar_exponents() -> [i64; 7] {
    let mut total = [0i64; 7];
    for block in [&GL4_DIAGONAL[..], &SL5_DIAGONAL[..]] {
        for i in 0..block.len() {
            for j in 0..i {
                total = add7(total, sub7(block[i], block[j]));
            }
        }
    }
    total.map(|e| -e)
}

pub fn haar_weight() -> WeightMonomial {
    with_lambda(0, haar_exponents())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_vector() {
        assert_eq!(haar_exponents(), [-12, -8, -12, -20, -30, -30, -20]);
    }

    #[test]
    fn sample_weights() {
        let a12 = coordinate_weight("a12".parse().unwrap());
        assert_eq!(a12.exponents, [1, -3, -1, -1, -3, -6, -4, -2]);
        let d45 = coordinate_weight("d45".parse().unwrap());
        assert_eq!(d45.exponents, [1, 1, 1, 3, 2, 4, 6, 3]);
        let total: WeightMonomial = CoordId::all().map(coordinate_weight).sum();
        assert_eq!(total.exponents, [40, 0, 0, 0, 0, 0, 0, 0]);
    }
}
