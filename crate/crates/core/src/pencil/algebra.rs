//! The coordinate ring of the five common zeros of Q1..Q5, read off in
//! degrees 2 and 3, and the multiplication operator by a ratio of linear forms.
//!
//! For five points in general position the ideal (Q1..Q5) has Hilbert
//! function 5 in degrees 2 and 3. Multiplication by a linear form l then maps
//! the degree-2 quotient R2 to the degree-3 quotient R3, and when l0 vanishes
//! at none of the points, L0^{-1} L acts on R2 with eigenvalues l(P)/l0(P).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::group::{act, random_unimodular, GroupElementZ};
use super::quadric::{monomial_index, monomials, sub_pfaffians, Form};
use super::quadruple::Quadruple;
use super::PencilError;
use crate::algebra::matrix::FractionFreeRref;
use crate::algebra::poly::interpolate;
use crate::algebra::{IntMatrix, IntPoly, RatMatrix};

pub const DEFAULT_RETRY_CAP: usize = 8;

#[derive(Clone, Debug)]
pub struct PencilAlgebra {
    /// Quadratic monomials spanning R2.
    pub basis: Vec<[u8; 4]>,
    /// Cubic monomials spanning R3.
    pub target_basis: Vec<[u8; 4]>,
    /// Matrix of L0^{-1} L on R2 in `basis`.
    pub operator: RatMatrix,
    pub l0: [i64; 4],
    pub l: [i64; 4],
    /// Unimodular substitution t -> h t applied before the forms were chosen,
    /// if the plain retries were exhausted.
    pub substitution: Option<IntMatrix>,
    /// Primitive integer characteristic polynomial of `operator`.
    pub char_poly: IntPoly,
    pub attempts: usize,
}

/// Degree-2 and degree-3 pieces of the ideal, in fraction-free RREF.
struct Quotients {
    deg2: FractionFreeRref,
    deg3: FractionFreeRref,
}

impl Quotients {
    fn basis(&self) -> Vec<[u8; 4]> {
        self.deg2.free_columns().iter().map(|&c| monomials(2)[c]).collect()
    }

    fn target_basis(&self) -> Vec<[u8; 4]> {
        self.deg3.free_columns().iter().map(|&c| monomials(3)[c]).collect()
    }
}

fn quotients(q: &Quadruple) -> Result<Quotients, PencilError> {
    let qs = sub_pfaffians(q);
    let a2 = IntMatrix::from_rows(qs.iter().map(|f| f.coeffs.clone()).collect());
    let deg2 = a2.ff_rref();
    if deg2.rank() != 5 {
        return Err(PencilError::DegeneratePencil);
    }
    let mut rows = Vec::with_capacity(20);
    for j in 0..4 {
        let mut e = [0i64; 4];
        e[j] = 1;
        let tj = Form::linear_i64(e);
        for f in &qs {
            rows.push(tj.mul(f).coeffs);
        }
    }
    let deg3 = IntMatrix::from_rows(rows).ff_rref();
    if deg3.rank() != 15 {
        return Err(PencilError::DegeneratePencil);
    }
    Ok(Quotients { deg2, deg3 })
}

fn unit_form(e: [u8; 4]) -> Form {
    let mut f = Form::zero(2);
    f.coeffs[monomial_index(&e)] = BigInt::one();
    f
}

/// Columns = reduced images of l * m_k for the R2 basis monomials m_k,
/// scaled by the common RREF denominator.
fn multiplication_matrix(qt: &Quotients, l: [i64; 4]) -> IntMatrix {
    let free3 = qt.deg3.free_columns();
    let lf = Form::linear_i64(l);
    let mut m = IntMatrix::zeros(5, 5);
    for (k, e) in qt.basis().iter().enumerate() {
        let v = lf.mul(&unit_form(*e));
        let red = qt.deg3.reduce(&v.coeffs);
        for (r, &c) in free3.iter().enumerate() {
            m.set(r, k, red[c].clone());
        }
    }
    m
}

/// det(x L0 - L) as an integer polynomial, by interpolation at x = 0..5.
fn pencil_det(l0: &IntMatrix, l: &IntMatrix) -> IntPoly {
    let xs: Vec<BigInt> = (0..=5).map(BigInt::from).collect();
    let ys: Vec<BigInt> = xs
        .iter()
        .map(|x| {
            let mut m = IntMatrix::zeros(5, 5);
            for i in 0..5 {
                for j in 0..5 {
                    m.set(i, j, x * l0.get(i, j) - l.get(i, j));
                }
            }
            m.det()
        })
        .collect();
    interpolate(&xs, &ys).to_primitive_int()
}

fn random_form<R: Rng>(rng: &mut R) -> [i64; 4] {
    loop {
        let f = [0i64; 4].map(|_| rng.gen_range(-3..=3));
        if f.iter().any(|&c| c != 0) {
            return f;
        }
    }
}

struct Attempt {
    m0: IntMatrix,
    m: IntMatrix,
    char_poly: IntPoly,
    l0: [i64; 4],
    l: [i64; 4],
    basis: Vec<[u8; 4]>,
    target_basis: Vec<[u8; 4]>,
    substitution: Option<IntMatrix>,
}

/// `None` when `l0` is a zero divisor on the quotient.
fn try_forms(qt: &Quotients, l0: [i64; 4], l: [i64; 4], h: Option<&IntMatrix>) -> Option<Attempt> {
    let m0 = multiplication_matrix(qt, l0);
    if m0.det().is_zero() {
        return None;
    }
    let m = multiplication_matrix(qt, l);
    let char_poly = pencil_det(&m0, &m);
    (char_poly.degree() == Some(5)).then(|| Attempt {
        m0,
        m,
        char_poly,
        l0,
        l,
        basis: qt.basis(),
        target_basis: qt.target_basis(),
        substitution: h.cloned(),
    })
}

fn finish(a: Attempt, attempts: usize) -> Result<PencilAlgebra, PencilError> {
    let operator = a
        .m0
        .to_rat()
        .inverse()
        .and_then(|inv| inv.mul(&a.m.to_rat()))
        .map_err(|_| PencilError::DegeneratePencil)?;
    Ok(PencilAlgebra {
        basis: a.basis,
        target_basis: a.target_basis,
        operator,
        l0: a.l0,
        l: a.l,
        substitution: a.substitution,
        char_poly: a.char_poly,
        attempts,
    })
}

/// Build the quotient algebra and its multiplication operator.
///
/// Forms are redrawn until the operator has five distinct eigenvalues, at
/// most `retry_cap` times; then the same number of draws is made after a
/// random unimodular substitution in t. If no draw separates the eigenvalues,
/// the first valid algebra is returned and its characteristic polynomial has
/// a repeated root.
pub fn pencil_algebra_with(
    q: &Quadruple,
    seed: u64,
    retry_cap: usize,
) -> Result<PencilAlgebra, PencilError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let qt = quotients(q)?;
    let mut fallback = None;
    let mut attempts = 0;
    for _ in 0..retry_cap.max(1) {
        attempts += 1;
        let (l0, l) = (random_form(&mut rng), random_form(&mut rng));
        if let Some(a) = try_forms(&qt, l0, l, None) {
            if a.char_poly.is_squarefree() {
                return finish(a, attempts);
            }
            fallback.get_or_insert(a);
        }
    }

    // t -> h t turns the pencil into that of (h^T, 1) acting on q
    let h = random_unimodular(&mut rng, 4, 8, 2, false);
    let g = GroupElementZ::new(h.transpose(), IntMatrix::identity(5))?;
    let qt2 = quotients(&act(&g, q))?;
    for _ in 0..retry_cap.max(1) {
        attempts += 1;
        let (l0, l) = (random_form(&mut rng), random_form(&mut rng));
        if let Some(a) = try_forms(&qt2, l0, l, Some(&h)) {
            if a.char_poly.is_squarefree() {
                return finish(a, attempts);
            }
            fallback.get_or_insert(a);
        }
    }
    match fallback {
        Some(a) => finish(a, attempts),
        None => Err(PencilError::DegeneratePencil),
    }
}

pub fn pencil_algebra(q: &Quadruple, seed: u64) -> Result<PencilAlgebra, PencilError> {
    pencil_algebra_with(q, seed, DEFAULT_RETRY_CAP)
}

/// Primitive integer characteristic polynomial of the multiplication operator.
pub fn char_quintic(q: &Quadruple, seed: u64) -> Result<IntPoly, PencilError> {
    Ok(pencil_algebra(q, seed)?.char_poly)
}

/// Characteristic polynomial of `operator` computed directly from the
/// rational matrix, scaled to a primitive integer polynomial.
pub fn operator_char_poly(alg: &PencilAlgebra) -> IntPoly {
    alg.operator
        .char_poly()
        .expect("square operator")
        .to_primitive_int()
}

/// Operator eigenvalue attached to a point `t` of the zero locus.
pub fn form_ratio(alg: &PencilAlgebra, t: &[f64; 4]) -> f64 {
    let dot = |f: &[i64; 4]| f.iter().zip(t).map(|(a, b)| *a as f64 * b).sum::<f64>();
    dot(&alg.l) / dot(&alg.l0)
}

/// Rational value of l/l0 at an integral point.
pub fn form_ratio_exact(alg: &PencilAlgebra, t: &[BigInt; 4]) -> Option<BigRational> {
    let dot = |f: &[i64; 4]| {
        f.iter()
            .zip(t)
            .fold(BigInt::zero(), |acc, (a, b)| acc + BigInt::from(*a) * b)
    };
    let den = dot(&alg.l0);
    (!den.is_zero()).then(|| BigRational::new(dot(&alg.l), den))
}
