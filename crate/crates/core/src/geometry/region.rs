//! Semi-algebraic regions in dimension at most 4.
//!
//! File format (JSON):
//!
//! ```json
//! {
//!   "dimension": 2,
//!   "box": [[-10, 10], [-10, 10]],
//!   "inequalities": [
//!     [{"c": 1, "e": [2, 0]}, {"c": 1, "e": [0, 2]}, {"c": -100, "e": [0, 0]}]
//!   ],
//!   "shear": [[1, 1000000], [0, 1]]
//! }
//! ```
//!
//! The region is `S . R` where `R` is the set of points of the box on which
//! every polynomial is `<= 0`, and `S` is the optional unipotent triangular
//! shear. Numbers may be integers, floats, or strings such as `"3/7"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::GeometryError;

pub const MAX_DIMENSION: usize = 4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Num {
    pub fn to_rational(&self) -> Result<BigRational, GeometryError> {
        match self {
            Num::Int(n) => Ok(BigRational::from_integer(BigInt::from(*n))),
            Num::Float(f) => BigRational::from_float(*f)
                .ok_or_else(|| GeometryError::InvalidRegion(format!("non-finite number {}", f))),
            Num::Text(s) => {
                let s = s.trim();
                let parsed = match s.split_once('/') {
                    Some((n, d)) => n
                        .trim()
                        .parse::<BigInt>()
                        .ok()
                        .zip(d.trim().parse::<BigInt>().ok())
                        .filter(|(_, d)| !d.is_zero())
                        .map(|(n, d)| BigRational::new(n, d)),
                    None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
                };
                parsed.ok_or_else(|| GeometryError::InvalidRegion(format!("bad number {:?}", s)))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermSpec {
    pub c: Num,
    pub e: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegionSpec {
    pub dimension: usize,
    #[serde(rename = "box")]
    pub bounding_box: Option<Vec<[Num; 2]>>,
    #[serde(default)]
    pub inequalities: Vec<Vec<TermSpec>>,
    #[serde(default)]
    pub shear: Option<Vec<Vec<Num>>>,
}

#[derive(Clone, Debug)]
pub struct Polynomial {
    pub terms: Vec<(BigRational, Vec<u32>)>,
    terms_f64: Vec<(f64, Vec<i32>)>,
}

impl Polynomial {
    pub fn new(terms: Vec<(BigRational, Vec<u32>)>) -> Self {
        let terms_f64 = terms
            .iter()
            .map(|(c, e)| {
                (
                    c.to_f64().unwrap_or(f64::NAN),
                    e.iter().map(|&k| k as i32).collect(),
                )
            })
            .collect();
        Polynomial { terms, terms_f64 }
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(_, e)| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// Value and a bound on its rounding error.
    pub fn eval_f64(&self, x: &[f64]) -> (f64, f64) {
        let mut v = 0.0;
        let mut mag = 0.0;
        for (c, e) in &self.terms_f64 {
            let m: f64 = e.iter().zip(x).map(|(&k, &xi)| xi.powi(k)).product();
            v += c * m;
            mag += (c * m).abs();
        }
        (v, mag * 1e-12 + 1e-300)
    }

    pub fn eval_exact(&self, x: &[BigRational]) -> BigRational {
        let mut v = BigRational::zero();
        for (c, e) in &self.terms {
            let mut m = c.clone();
            for (&k, xi) in e.iter().zip(x) {
                for _ in 0..k {
                    m *= xi;
                }
            }
            v += m;
        }
        v
    }
}

#[derive(Clone, Debug)]
pub struct Region {
    pub dimension: usize,
    pub lo: Vec<BigRational>,
    pub hi: Vec<BigRational>,
    pub lo_f64: Vec<f64>,
    pub hi_f64: Vec<f64>,
    pub inequalities: Vec<Polynomial>,
    /// Shear matrix S (identity when absent) and T = S^-1.
    pub shear: Vec<Vec<BigRational>>,
    pub shear_inv: Vec<Vec<BigRational>>,
    pub shear_f64: Vec<Vec<f64>>,
    pub shear_inv_f64: Vec<Vec<f64>>,
    pub upper: bool,
}

fn to_f64_matrix(m: &[Vec<BigRational>]) -> Vec<Vec<f64>> {
    m.iter()
        .map(|r| r.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect())
        .collect()
}

fn identity(n: usize) -> Vec<Vec<BigRational>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect()
}

/// Solve S X = I for unipotent triangular S, one row at a time starting
/// from the row with no off-diagonal entries.
fn unipotent_inverse(s: &[Vec<BigRational>], upper: bool) -> Vec<Vec<BigRational>> {
    let n = s.len();
    let mut inv = identity(n);
    let order: Vec<usize> = if upper { (0..n).rev().collect() } else { (0..n).collect() };
    for (pos, &i) in order.iter().enumerate() {
        for col in 0..n {
            let mut acc = if col == i { BigRational::one() } else { BigRational::zero() };
            for &k in &order[..pos] {
                acc -= &s[i][k] * &inv[k][col];
            }
            inv[i][col] = acc;
        }
    }
    inv
}

impl Region {
    pub fn from_spec(spec: &RegionSpec) -> Result<Region, GeometryError> {
        let n = spec.dimension;
        if n == 0 || n > MAX_DIMENSION {
            return Err(GeometryError::InvalidRegion(format!(
                "dimension {} outside 1..={}",
                n, MAX_DIMENSION
            )));
        }
        let bx = spec.bounding_box.as_ref().ok_or(GeometryError::Unbounded)?;
        if bx.len() != n {
            return Err(GeometryError::InvalidRegion("box has the wrong dimension".into()));
        }
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for [a, b] in bx {
            let (a, b) = (a.to_rational()?, b.to_rational()?);
            if a > b {
                return Err(GeometryError::InvalidRegion("box side with lo > hi".into()));
            }
            lo.push(a);
            hi.push(b);
        }
        let mut inequalities = Vec::new();
        for poly in &spec.inequalities {
            let mut terms = Vec::new();
            for t in poly {
                if t.e.len() != n {
                    return Err(GeometryError::InvalidRegion(
                        "exponent vector has the wrong length".into(),
                    ));
                }
                terms.push((t.c.to_rational()?, t.e.clone()));
            }
            inequalities.push(Polynomial::new(terms));
        }
        let (shear, upper) = match &spec.shear {
            None => (identity(n), true),
            Some(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(GeometryError::InvalidRegion("shear must be n x n".into()));
                }
                let m: Vec<Vec<BigRational>> = rows
                    .iter()
                    .map(|r| r.iter().map(Num::to_rational).collect())
                    .collect::<Result<_, _>>()?;
                let diag_ok = (0..n).all(|i| m[i][i].is_one());
                let below_zero = (0..n).all(|i| (0..i).all(|j| m[i][j].is_zero()));
                let above_zero = (0..n).all(|i| (i + 1..n).all(|j| m[i][j].is_zero()));
                if !diag_ok || !(below_zero || above_zero) {
                    return Err(GeometryError::InvalidRegion(
                        "shear must be unipotent triangular".into(),
                    ));
                }
                (m, below_zero)
            }
        };
        let shear_inv = unipotent_inverse(&shear, upper);
        Ok(Region {
            dimension: n,
            lo_f64: lo.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect(),
            hi_f64: hi.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect(),
            lo,
            hi,
            inequalities,
            shear_f64: to_f64_matrix(&shear),
            shear_inv_f64: to_f64_matrix(&shear_inv),
            shear,
            shear_inv,
            upper,
        })
    }

    pub fn parse_json(text: &str) -> Result<Region, GeometryError> {
        let spec: RegionSpec =
            serde_json::from_str(text).map_err(|e| GeometryError::InvalidRegion(e.to_string()))?;
        Region::from_spec(&spec)
    }

    pub fn box_volume(&self) -> f64 {
        self.lo_f64
            .iter()
            .zip(&self.hi_f64)
            .map(|(a, b)| b - a)
            .product()
    }

    pub fn max_degree(&self) -> u32 {
        self.inequalities.iter().map(Polynomial::degree).max().unwrap_or(1)
    }

    /// Membership of an unsheared point, in floating point.
    pub fn contains_unsheared_f64(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(self.lo_f64.iter().zip(&self.hi_f64))
            .all(|(v, (a, b))| a <= v && v <= b)
            && self.inequalities.iter().all(|p| p.eval_f64(x).0 <= 0.0)
    }

    pub fn unshear_f64(&self, y: &[f64]) -> Vec<f64> {
        self.shear_inv_f64
            .iter()
            .map(|row| row.iter().zip(y).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn shear_point_f64(&self, x: &[f64]) -> Vec<f64> {
        self.shear_f64
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn contains_exact(&self, y: &[i64]) -> bool {
        let yr: Vec<BigRational> = y.iter().map(|&v| BigRational::from_integer(v.into())).collect();
        let x: Vec<BigRational> = self
            .shear_inv
            .iter()
            .map(|row| row.iter().zip(&yr).fold(BigRational::zero(), |acc, (a, b)| acc + a * b))
            .collect();
        x.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(v, (a, b))| a <= v && v <= b)
            && self
                .inequalities
                .iter()
                .all(|p| !p.eval_exact(&x).is_positive())
    }

    /// Whether the integer point y lies in S . R; floating point first,
    /// exact rational arithmetic when a test is too close to call.
    pub fn contains_lattice_point(&self, y: &[i64]) -> bool {
        let yf: Vec<f64> = y.iter().map(|&v| v as f64).collect();
        let x = self.unshear_f64(&yf);
        let scale: f64 = 1.0 + yf.iter().map(|v| v.abs()).sum::<f64>();
        let mut close = false;
        for (i, v) in x.iter().enumerate() {
            let tol = 1e-9 * scale * (1.0 + self.lo_f64[i].abs() + self.hi_f64[i].abs());
            if *v < self.lo_f64[i] - tol || *v > self.hi_f64[i] + tol {
                return false;
            }
            if (*v - self.lo_f64[i]).abs() <= tol || (*v - self.hi_f64[i]).abs() <= tol {
                close = true;
            }
        }
        for p in &self.inequalities {
            let (v, err) = p.eval_f64(&x);
            let err = err * scale;
            if v > err {
                return false;
            }
            if v >= -err {
                close = true;
            }
        }
        if close {
            self.contains_exact(y)
        } else {
            true
        }
    }

    /// Bounding box of S . box by interval arithmetic.
    pub fn sheared_box(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.dimension;
        let mut lo = vec![0.0; n];
        let mut hi = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                let s = self.shear_f64[i][j];
                let (a, b) = (s * self.lo_f64[j], s * self.hi_f64[j]);
                lo[i] += a.min(b);
                hi[i] += a.max(b);
            }
        }
        (lo, hi)
    }
}
