use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::s5::s5_class_data;
use crate::algebra::{laurent_equal, LaurentP};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub statement: String,
    #[serde(serialize_with = "ser_laurent")]
    pub left: LaurentP,
    #[serde(serialize_with = "ser_laurent")]
    pub right: LaurentP,
    pub verdict: bool,
}

fn ser_laurent<S: serde::Serializer>(l: &LaurentP, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&l.to_string())
}

impl IdentityCheck {
    fn new(name: &str, statement: &str, left: LaurentP, right: LaurentP) -> Self {
        IdentityCheck {
            name: name.into(),
            statement: statement.into(),
            verdict: laurent_equal(&left, &right),
            left,
            right,
        }
    }
}

fn lp(terms: &[(i64, i64)]) -> LaurentP {
    LaurentP::from_terms(terms)
}

/// 1 - p^-k
fn one_minus(k: i64) -> LaurentP {
    lp(&[(1, 0), (-1, -k)])
}

/// p^k - 1
fn pk_minus_one(k: i64) -> LaurentP {
    lp(&[(1, k), (-1, 0)])
}

fn product(factors: &[LaurentP]) -> LaurentP {
    factors.iter().fold(LaurentP::one(), |acc, f| &acc * f)
}

pub fn beta_poly() -> LaurentP {
    lp(&[(1, 0), (1, -2), (-1, -4), (-1, -5)])
}

/// (p-1)^8 p^12 (p+1)^4 (p^2+1)^2 (p^2+p+1)^2 (p^4+p^3+p^2+p+1)(p^4+p^3+2p^2+2p+1)
pub fn maximal_density_numerator() -> LaurentP {
    product(&[
        lp(&[(1, 1), (-1, 0)]).pow(8),
        LaurentP::p_pow(12),
        lp(&[(1, 1), (1, 0)]).pow(4),
        lp(&[(1, 2), (1, 0)]).pow(2),
        lp(&[(1, 2), (1, 1), (1, 0)]).pow(2),
        lp(&[(1, 4), (1, 3), (1, 2), (1, 1), (1, 0)]),
        lp(&[(1, 4), (1, 3), (2, 2), (2, 1), (1, 0)]),
    ])
}

/// |G(F_p)| as the closed product (p-1)^8 p^16 (p+1)^4 (p^2+1)^2 (p^2+p+1)^2 (p^4+p^3+p^2+p+1).
pub fn group_order_claimed() -> LaurentP {
    product(&[
        lp(&[(1, 1), (-1, 0)]).pow(8),
        LaurentP::p_pow(16),
        lp(&[(1, 1), (1, 0)]).pow(4),
        lp(&[(1, 2), (1, 0)]).pow(2),
        lp(&[(1, 2), (1, 1), (1, 0)]).pow(2),
        lp(&[(1, 4), (1, 3), (1, 2), (1, 1), (1, 0)]),
    ])
}

pub fn gl_order(n: i64) -> LaurentP {
    product(
        &(0..n)
            .map(|k| lp(&[(1, n), (-1, k)]))
            .collect::<Vec<_>>(),
    )
}

/// |SL_n(F_p)| = |GL_n(F_p)| / (p - 1), written as p^(n(n-1)/2) prod_{k=2..n} (p^k - 1).
pub fn sl_order(n: i64) -> LaurentP {
    let mut f = LaurentP::p_pow(n * (n - 1) / 2);
    for k in 2..=n {
        f = &f * &pk_minus_one(k);
    }
    f
}

/// Inverse local factor of zeta(2)^2 zeta(3)^2 zeta(4)^2 zeta(5).
pub fn zeta_euler_factor() -> LaurentP {
    product(&[
        one_minus(2).pow(2),
        one_minus(3).pow(2),
        one_minus(4).pow(2),
        one_minus(5),
    ])
}

/// Sum of 1/|centralizer| over the conjugacy classes of S5, which is the
/// total mass of unramified degree 5 algebras.
pub fn unramified_mass() -> BigRational {
    s5_class_data()
        .iter()
        .map(|c| BigRational::new(BigInt::from(1), BigInt::from(c.centralizer)))
        .sum()
}

pub fn euler_factor_identities() -> Vec<IdentityCheck> {
    let mut out = Vec::new();

    out.push(IdentityCheck::new(
        "a",
        "maximal density numerator = p^28 (1-p^-2)^2 (1-p^-3)^2 (1-p^-4)^2 (1-p^-5) beta_p p^12",
        maximal_density_numerator(),
        product(&[
            LaurentP::p_pow(28),
            zeta_euler_factor(),
            beta_poly(),
            LaurentP::p_pow(12),
        ]),
    ));

    out.push(IdentityCheck::new(
        "a'",
        "p^-28 (p^2-1)^2 (p^3-1)^2 (p^4-1)^2 (p^5-1)(p^5+p^3-p-1) = zeta factor * beta_p",
        product(&[
            LaurentP::p_pow(-28),
            pk_minus_one(2).pow(2),
            pk_minus_one(3).pow(2),
            pk_minus_one(4).pow(2),
            pk_minus_one(5),
            lp(&[(1, 5), (1, 3), (-1, 1), (-1, 0)]),
        ]),
        &zeta_euler_factor() * &beta_poly(),
    ));

    out.push(IdentityCheck::new(
        "b",
        "p^5 beta_p = p^5 + p^3 - p - 1",
        &LaurentP::p_pow(5) * &beta_poly(),
        lp(&[(1, 5), (1, 3), (-1, 1), (-1, 0)]),
    ));

    out.push(IdentityCheck::new(
        "c",
        "|G(F_p)| = |GL_4(F_p)| |SL_5(F_p)|",
        group_order_claimed(),
        &gl_order(4) * &sl_order(5),
    ));

    // (d): unramified density |G| p^-40 * mass over mu(U_p); cross-multiplied
    // against N/D with N = (p+1)(p^2+p+1), D = p^4+p^3+2p^2+2p+1.
    let mass = LaurentP::constant(unramified_mass());
    let mu = &maximal_density_numerator() * &LaurentP::p_pow(-40);
    let unram = product(&[group_order_claimed(), LaurentP::p_pow(-40), mass.clone()]);
    let n = &lp(&[(1, 1), (1, 0)]) * &lp(&[(1, 2), (1, 1), (1, 0)]);
    let d = lp(&[(1, 4), (1, 3), (2, 2), (2, 1), (1, 0)]);
    out.push(IdentityCheck::new(
        "d",
        "1 - |G(F_p)| p^-40 / mu(U_p) = (p+1)(p^2+p+1)/(p^4+p^3+2p^2+2p+1)",
        &(&mu - &unram) * &d,
        &mu * &n,
    ));

    out.push(IdentityCheck::new(
        "e",
        "|G(F_p)| p^-40 = (1 - 1/p) * zeta factor * unramified mass",
        &group_order_claimed() * &LaurentP::p_pow(-40),
        product(&[one_minus(1), zeta_euler_factor(), mass]),
    ));

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_hold() {
        for c in euler_factor_identities() {
            assert!(c.verdict, "identity {} failed: {} vs {}", c.name, c.left, c.right);
        }
    }

    #[test]
    fn group_order_at_two() {
        let g = group_order_claimed().eval_int(2);
        assert_eq!(g, BigRational::from_integer(BigInt::from(201_587_097_600u64)));
        assert_eq!((&gl_order(4) * &sl_order(5)).eval_int(2), g);
    }

    #[test]
    fn ramified_share_at_two() {
        let mu = (&maximal_density_numerator() * &LaurentP::p_pow(-40)).eval_int(2);
        let g = (&group_order_claimed() * &LaurentP::p_pow(-40)).eval_int(2);
        let share = BigRational::from_integer(1.into()) - g / mu;
        assert_eq!(share, BigRational::new(21.into(), 37.into()));
        assert_eq!(unramified_mass(), BigRational::from_integer(1.into()));
    }
}
