//! The Euler product for c5, evaluated two ways.
//!
//! Route A multiplies the local masses directly. Route B multiplies the zeta
//! values by the products of the factors E_p = (1-p^-2)^2 (1-p^-3)^2
//! (1-p^-4)^2 (1-p^-5) beta_p, which converge faster. Both add a rigorous
//! correction for primes beyond the cutoff built from the prime tails
//! T_s = sum_{p > P} p^-s:
//!
//!   log prod_{p>P} beta_p  lies in [T_2 - 3 T_4, T_2]
//!   log prod_{p>P} E_p     lies in [-T_2 - 2 T_3 - 10 T_4, -T_2 - 2 T_3]
//!
//! T_2 is summed over primes up to a sieve limit Q and the rest is bracketed
//! with pi(x) > x / ln x (x >= 17) and pi(x) < x / ln x (1 + 1.2762 / ln x).

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::ball::Ball;
use super::identities::{beta_poly, zeta_euler_factor};
use super::zeta::zeta_ball;
use super::ConstantReport;
use crate::algebra::numtheory::primes_up_to;

pub const DEFAULT_SIEVE_LIMIT: u64 = 10_000_000;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn beta_infinity_ratio() -> BigRational {
    rat(13, 120)
}

/// prod_{p <= p_max} beta_p as a ball.
pub fn beta_partial_product(p_max: u64, bits: u32) -> Ball {
    let beta = beta_poly();
    primes_up_to(p_max).iter().fold(Ball::one(bits), |acc, &p| {
        acc.mul(&Ball::from_ratio(&beta.eval_int(p as i64), bits))
    })
}

fn e_partial_product(p_max: u64, bits: u32) -> Ball {
    let f = &zeta_euler_factor() * &beta_poly();
    primes_up_to(p_max).iter().fold(Ball::one(bits), |acc, &p| {
        acc.mul(&Ball::from_ratio(&f.eval_int(p as i64), bits))
    })
}

/// 13/120 prod_{p <= p_max} beta_p. Every factor exceeds 1 and
/// sum_{p > P} log beta_p < sum_{n > P} n^-2 < 1/P, so the full product
/// lies between the partial product and e^(1/P) times it.
pub fn c5_constant(bits: u32, p_max: u64) -> ConstantReport {
    let partial = beta_partial_product(p_max, bits)
        .mul(&Ball::from_ratio(&beta_infinity_ratio(), bits));
    let tail = (1.0 / p_max as f64).exp_m1() * 1.000_001;
    let bound = partial.radius_f64() + partial.to_f64() * tail;
    ConstantReport::from_ball(
        "c5",
        partial.clone(),
        bound,
        vec![format!(
            "partial product over primes <= {}; true value exceeds it by at most the bound",
            p_max
        )],
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeTails {
    pub p_max: u64,
    pub sieve_limit: u64,
    pub t2: f64,
    pub t2_radius: f64,
    pub t3: f64,
    pub t3_radius: f64,
    /// Upper bound for T_4.
    pub t4_bound: f64,
    #[serde(skip)]
    pub t2_ball: Ball,
    #[serde(skip)]
    pub t3_ball: Ball,
}

pub fn prime_tails(p_max: u64, sieve_limit: u64, bits: u32) -> PrimeTails {
    assert!(sieve_limit > p_max.max(17));
    let primes = primes_up_to(sieve_limit);
    let mut t2 = Ball::zero(bits);
    let mut t3 = Ball::zero(bits);
    for &p in primes.iter().filter(|&&p| p > p_max) {
        let pb = BigInt::from(p);
        let p2 = &pb * &pb;
        t2 = t2.add(&Ball::recip_int(&p2, bits));
        t3 = t3.add(&Ball::recip_int(&(&p2 * &pb), bits));
    }
    let q = sieve_limit as f64;
    let lq = q.ln();
    let pi_q = primes.len() as f64;
    // sum_{p > Q} p^-2 = -pi(Q)/Q^2 + 2 int_Q^inf pi(x) x^-3 dx
    let base = -pi_q / (q * q) + 2.0 / (q * lq);
    let lo = base - 2.0 / (q * lq * lq);
    let hi = base + 2.5524 / (q * lq * lq);
    let slack = 1e-6 * (lo.abs() + hi.abs());
    let t2 = t2.add(&Ball::from_f64((lo + hi) / 2.0, (hi - lo) / 2.0 + slack, bits));
    // sum_{p > Q} p^-3 < sum_{n > Q} n^-3 < 1/(2 Q^2)
    let r3 = 1.0 / (4.0 * q * q) * 1.000_001;
    let t3 = t3.add(&Ball::from_f64(r3, r3, bits));
    let pm = p_max as f64;
    PrimeTails {
        p_max,
        sieve_limit,
        t2: t2.to_f64(),
        t2_radius: t2.radius_f64(),
        t3: t3.to_f64(),
        t3_radius: t3.radius_f64(),
        t4_bound: 1.0 / (3.0 * pm * pm * pm) * 1.000_001,
        t2_ball: t2,
        t3_ball: t3,
    }
}

pub fn zeta_product(bits: u32) -> Ball {
    let z2 = zeta_ball(2, bits);
    let z3 = zeta_ball(3, bits);
    let z4 = zeta_ball(4, bits);
    let z5 = zeta_ball(5, bits);
    z2.pow(2).mul(&z3.pow(2)).mul(&z4.pow(2)).mul(&z5)
}

#[derive(Clone, Debug, Serialize)]
pub struct C5Routes {
    pub route_a: ConstantReport,
    pub route_b: ConstantReport,
    pub tails: PrimeTails,
    pub difference: f64,
    pub combined_error: f64,
    pub overlap: bool,
}

pub fn c5_two_route(bits: u32, p_max: u64, sieve_limit: u64) -> C5Routes {
    let tails = prime_tails(p_max, sieve_limit, bits);
    let t4 = BigRational::from_float(tails.t4_bound).expect("finite");
    let binf = Ball::from_ratio(&beta_infinity_ratio(), bits);

    let half = rat(1, 2);
    let exp_a = tails
        .t2_ball
        .sub(&Ball::from_ratio(&(&t4 * rat(3, 1) * &half), bits))
        .widen(&(&t4 * rat(3, 1) * &half));
    let a = binf
        .mul(&beta_partial_product(p_max, bits))
        .mul(&exp_a.exp());

    let exp_b = tails
        .t2_ball
        .add(&tails.t3_ball.mul_int(2))
        .neg()
        .sub(&Ball::from_ratio(&(&t4 * rat(5, 1)), bits))
        .widen(&(&t4 * rat(5, 1)));
    let b = binf
        .mul(&zeta_product(bits))
        .mul(&e_partial_product(p_max, bits))
        .mul(&exp_b.exp());

    let difference = (a.to_f64() - b.to_f64()).abs();
    let combined_error = a.radius_f64() + b.radius_f64();
    let note = format!("primes <= {}, prime tails summed to {}", p_max, sieve_limit);
    C5Routes {
        overlap: a.overlaps(&b),
        route_a: ConstantReport::from_ball("c5 (direct product)", a.clone(), a.radius_f64(), vec![note.clone()]),
        route_b: ConstantReport::from_ball("c5 (zeta factored)", b.clone(), b.radius_f64(), vec![note]),
        tails,
        difference,
        combined_error,
    }
}

/// n_i for i = 0, 1, 2: automorphism counts of R^5, R^3+C and R+C^2.
pub const AUT_ORDERS: [i64; 3] = [120, 12, 8];

pub fn field_density_constant(i: usize, bits: u32) -> Option<ConstantReport> {
    let n = *AUT_ORDERS.get(i)?;
    let v = zeta_product(bits).div_int(2 * n);
    let r = v.radius_f64();
    Some(ConstantReport::from_ball(
        &format!("zeta(2)^2 zeta(3)^2 zeta(4)^2 zeta(5) / {}", 2 * n),
        v,
        r,
        vec![format!("n_{} = {}", i, n)],
    ))
}
