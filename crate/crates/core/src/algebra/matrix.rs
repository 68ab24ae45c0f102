//! Dense exact matrices over Z and Q.
//!
//! Integer elimination is fraction-free (Bareiss): every intermediate entry
//! is a minor of the input, so the only divisions are exact.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::RatPoly;
use super::AlgebraError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// Result of fraction-free Gauss-Jordan elimination.
///
/// The first `rank` rows of `reduced` carry `denom` in their pivot column
/// and zero in every other pivot column; the remaining rows are zero.
#[derive(Clone, Debug)]
pub struct FractionFreeRref {
    pub reduced: IntMatrix,
    pub pivots: Vec<usize>,
    pub denom: BigInt,
}

impl FractionFreeRref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Non-pivot columns in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.reduced.cols)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    /// Reduce `v` modulo the row space: returns `denom * v - sum v[c] row_c`,
    /// which vanishes on every pivot column.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.reduced.cols);
        let mut out: Vec<BigInt> = v.iter().map(|x| x * &self.denom).collect();
        for (r, &c) in self.pivots.iter().enumerate() {
            if v[c].is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let e = self.reduced.get(r, j);
                if !e.is_zero() {
                    *o -= &v[c] * e;
                }
            }
        }
        out
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch);
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..=i).all(|j| *self.get(i, j) == -self.get(j, i)))
    }

    /// Determinant by Bareiss elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut prev = BigInt::one();
        let mut sign = 1;
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            let pivot = a.get(k, k).clone();
            for i in k + 1..n {
                let aik = a.get(i, k).clone();
                for j in k + 1..n {
                    let v = (&pivot * a.get(i, j) - &aik * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
                a.set(i, k, BigInt::zero());
            }
            prev = pivot;
        }
        let d = a.get(n - 1, n - 1).clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// Fraction-free Gauss-Jordan elimination.
    pub fn ff_rref(&self) -> FractionFreeRref {
        let mut a = self.clone();
        let mut prev = BigInt::one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            let piv = a.get(r, c).clone();
            for i in 0..a.rows {
                if i == r {
                    continue;
                }
                let aic = a.get(i, c).clone();
                for j in 0..a.cols {
                    if j == c {
                        continue;
                    }
                    let v = &piv * a.get(i, j) - &aic * a.get(r, j);
                    a.set(i, j, v / &prev);
                }
                a.set(i, c, BigInt::zero());
            }
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        FractionFreeRref {
            reduced: a,
            pivots,
            denom: prev,
        }
    }

    pub fn rank(&self) -> usize {
        self.ff_rref().rank()
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect(),
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Pfaffian of a 4x4 skew-symmetric matrix.
pub fn pfaffian4(m: &IntMatrix) -> Result<BigInt, AlgebraError> {
    if m.rows() != 4 || m.cols() != 4 {
        return Err(AlgebraError::DimensionMismatch);
    }
    if !m.is_skew() {
        return Err(AlgebraError::NotSkew);
    }
    Ok(m.get(0, 1) * m.get(2, 3) - m.get(0, 2) * m.get(1, 3) + m.get(0, 3) * m.get(1, 2))
}

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch);
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigRational::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc += a * other.get(k, j);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(BigRational::zero(), |acc, j| acc + self.get(i, j) * &v[j])
            })
            .collect()
    }

    pub fn trace(&self) -> BigRational {
        (0..self.rows.min(self.cols)).fold(BigRational::zero(), |acc, i| acc + self.get(i, i))
    }

    /// Clear denominators row by row. Row scaling preserves rank and kernel.
    fn integral_rows(&self) -> IntMatrix {
        let rows = (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let l = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
                row.iter()
                    .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
                    .collect()
            })
            .collect();
        let mut m = IntMatrix::from_rows(rows);
        m.cols = self.cols;
        m
    }

    /// Rank and an exact kernel basis, one vector per free column.
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<BigRational>>) {
        if self.rows == 0 {
            let basis = (0..self.cols)
                .map(|k| {
                    (0..self.cols)
                        .map(|j| if j == k { BigRational::one() } else { BigRational::zero() })
                        .collect()
                })
                .collect();
            return (0, basis);
        }
        let rr = self.integral_rows().ff_rref();
        let mut kernel = Vec::new();
        for f in rr.free_columns() {
            let mut v = vec![BigRational::zero(); self.cols];
            v[f] = BigRational::from_integer(rr.denom.clone());
            for (r, &c) in rr.pivots.iter().enumerate() {
                v[c] = BigRational::from_integer(-rr.reduced.get(r, f));
            }
            let scale = BigRational::from_integer(rr.denom.clone());
            kernel.push(v.into_iter().map(|x| x / &scale).collect());
        }
        (rr.rank(), kernel)
    }

    pub fn rank(&self) -> usize {
        self.rank_kernel().0
    }

    pub fn det(&self) -> BigRational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut a = self.clone();
        let n = self.rows;
        let mut det = BigRational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                return BigRational::zero();
            };
            if p != k {
                for c in 0..n {
                    a.data.swap(p * n + c, k * n + c);
                }
                det = -det;
            }
            let piv = a.get(k, k).clone();
            det *= &piv;
            for i in k + 1..n {
                let f = a.get(i, k) / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = a.get(i, j) - &f * a.get(k, j);
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<RatMatrix, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::DimensionMismatch);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for k in 0..n {
            let p = (k..n)
                .find(|&i| !a.get(i, k).is_zero())
                .ok_or(AlgebraError::Singular)?;
            for c in 0..n {
                a.data.swap(p * n + c, k * n + c);
                inv.data.swap(p * n + c, k * n + c);
            }
            let piv = a.get(k, k).clone();
            for c in 0..n {
                let v = a.get(k, c) / &piv;
                a.set(k, c, v);
                let w = inv.get(k, c) / &piv;
                inv.set(k, c, w);
            }
            for i in 0..n {
                if i == k || a.get(i, k).is_zero() {
                    continue;
                }
                let f = a.get(i, k).clone();
                for c in 0..n {
                    let v = a.get(i, c) - &f * a.get(k, c);
                    a.set(i, c, v);
                    let w = inv.get(i, c) - &f * inv.get(k, c);
                    inv.set(i, c, w);
                }
            }
        }
        Ok(inv)
    }

    /// Characteristic polynomial `det(xI - M)` by Faddeev-LeVerrier.
    pub fn char_poly(&self) -> Result<RatPoly, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::DimensionMismatch);
        }
        let n = self.rows;
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        let mut m_k = RatMatrix::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self.mul(&m_k)?;
            for i in 0..n {
                let v = next.get(i, i) + &coeffs[n - k + 1];
                next.set(i, i, v);
            }
            let am = self.mul(&next)?;
            coeffs[n - k] = -am.trace() / BigRational::from_integer(BigInt::from(k));
            m_k = next;
        }
        Ok(RatPoly::new(coeffs))
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Whether every entry is an integer.
pub fn is_integral(m: &RatMatrix) -> bool {
    m.data.iter().all(|x| x.is_integer())
}

/// Largest absolute entry, used for quick size diagnostics.
pub fn max_abs(m: &IntMatrix) -> BigInt {
    m.data.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
}
