use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::IntMatrix;

/// Index pairs (i, j), 1-based with i < j, in coordinate order.
pub const PAIRS: [(usize, usize); 10] = [
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 3),
    (2, 4),
    (2, 5),
    (3, 4),
    (3, 5),
    (4, 5),
];

pub const LETTERS: [char; 4] = ['a', 'b', 'c', 'd'];

pub fn pair_index(i: usize, j: usize) -> Option<usize> {
    PAIRS.iter().position(|&p| p == (i, j))
}

/// One of the forty coordinates a12 ... d45.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct CoordId(u8);

impl CoordId {
    /// `letter` in 0..4 (a..d), `i < j` in 1..=5.
    pub fn new(letter: usize, i: usize, j: usize) -> Option<CoordId> {
        if letter >= 4 {
            return None;
        }
        pair_index(i, j).map(|k| CoordId((letter * 10 + k) as u8))
    }

    pub fn from_index(idx: usize) -> CoordId {
        assert!(idx < 40);
        CoordId(idx as u8)
    }

    pub fn all() -> impl Iterator<Item = CoordId> {
        (0..40).map(|k| CoordId(k as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn letter(self) -> usize {
        self.index() / 10
    }

    /// The 1-based index pair.
    pub fn pair(self) -> (usize, usize) {
        PAIRS[self.index() % 10]
    }
}

impl fmt::Display for CoordId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = self.pair();
        write!(f, "{}{}{}", LETTERS[self.letter()], i, j)
    }
}

impl fmt::Debug for CoordId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a coordinate name: {0:?}")]
pub struct BadCoordName(pub String);

impl FromStr for CoordId {
    type Err = BadCoordName;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BadCoordName(s.to_string());
        let b = s.trim().as_bytes();
        if b.len() != 3 {
            return Err(bad());
        }
        let letter = LETTERS
            .iter()
            .position(|&c| c as u8 == b[0].to_ascii_lowercase())
            .ok_or_else(bad)?;
        let digit = |c: u8| (c as char).to_digit(10).map(|d| d as usize);
        let i = digit(b[1]).ok_or_else(bad)?;
        let j = digit(b[2]).ok_or_else(bad)?;
        CoordId::new(letter, i, j).ok_or_else(bad)
    }
}

impl TryFrom<String> for CoordId {
    type Error = BadCoordName;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<CoordId> for String {
    fn from(c: CoordId) -> String {
        c.to_string()
    }
}

/// A quadruple (A, B, C, D) of integral 5x5 skew-symmetric matrices,
/// stored by its forty upper-triangular coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quadruple {
    coords: Vec<BigInt>,
}

impl Quadruple {
    pub fn zero() -> Self {
        Quadruple {
            coords: vec![BigInt::zero(); 40],
        }
    }

    pub fn from_coords(coords: Vec<BigInt>) -> Option<Self> {
        (coords.len() == 40).then_some(Quadruple { coords })
    }

    pub fn from_i64s(c: &[i64]) -> Option<Self> {
        Self::from_coords(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Build from four skew-symmetric matrices; `None` if any is not skew.
    pub fn from_matrices(ms: &[IntMatrix; 4]) -> Option<Self> {
        let mut coords = Vec::with_capacity(40);
        for m in ms {
            if m.rows() != 5 || !m.is_skew() {
                return None;
            }
            for &(i, j) in &PAIRS {
                coords.push(m.get(i - 1, j - 1).clone());
            }
        }
        Some(Quadruple { coords })
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn get(&self, c: CoordId) -> &BigInt {
        &self.coords[c.index()]
    }

    pub fn set(&mut self, c: CoordId, v: BigInt) {
        self.coords[c.index()] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }

    /// Entry (r, c) of matrix `letter`, 0-based.
    pub fn entry(&self, letter: usize, r: usize, c: usize) -> BigInt {
        use std::cmp::Ordering::*;
        match r.cmp(&c) {
            Equal => BigInt::zero(),
            Less => self.coords[letter * 10 + pair_index(r + 1, c + 1).unwrap()].clone(),
            Greater => -&self.coords[letter * 10 + pair_index(c + 1, r + 1).unwrap()],
        }
    }

    pub fn matrix(&self, letter: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(5, 5);
        for r in 0..5 {
            for c in 0..5 {
                m.set(r, c, self.entry(letter, r, c));
            }
        }
        m
    }

    pub fn matrices(&self) -> [IntMatrix; 4] {
        [self.matrix(0), self.matrix(1), self.matrix(2), self.matrix(3)]
    }

    /// Coordinates drawn uniformly from `[-radius, radius]`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, radius: i64) -> Self {
        Quadruple {
            coords: (0..40)
                .map(|_| BigInt::from(rng.gen_range(-radius..=radius)))
                .collect(),
        }
    }

    /// Entries as floats, in coordinate order.
    pub fn to_f64(&self) -> [f64; 40] {
        use num_traits::ToPrimitive;
        let mut out = [0.0; 40];
        for (o, c) in out.iter_mut().zip(&self.coords) {
            *o = c.to_f64().unwrap_or(f64::NAN);
        }
        out
    }
}

impl fmt::Display for Quadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for Quadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quadruple[{}]", self)
    }
}
