use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::etale::{algebra_aut_order, etale_quintics, real_quintics, EtaleQuintic};
use super::field::LocalFieldRec;
use super::LocalError;
use crate::algebra::LaurentP;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MassTerm {
    pub algebra: String,
    #[serde(serialize_with = "ser_int")]
    pub aut: BigInt,
    pub disc_exponent: u32,
    #[serde(serialize_with = "ser_rat")]
    pub mass: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MassReport {
    /// `None` for the archimedean place.
    pub p: Option<u64>,
    pub terms: Vec<MassTerm>,
    #[serde(serialize_with = "ser_rat")]
    pub prefactor: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub total: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub closed_form: BigRational,
    pub matches: bool,
}

fn ser_int<S: serde::Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

fn ser_rat<S: serde::Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// 1 + p^-2 - p^-4 - p^-5 as a Laurent polynomial in p.
pub fn beta_closed_form() -> LaurentP {
    LaurentP::from_terms(&[(1, 0), (1, -2), (-1, -4), (-1, -5)])
}

fn term(alg: &EtaleQuintic, p: Option<u64>) -> MassTerm {
    let aut = algebra_aut_order(alg);
    let c = alg.disc_exponent();
    let denom = match p {
        Some(p) => &aut * BigInt::from(p).pow(c),
        None => aut.clone(),
    };
    MassTerm {
        algebra: alg.to_string(),
        aut,
        disc_exponent: c,
        mass: BigRational::new(BigInt::one(), denom),
    }
}

fn report(
    p: Option<u64>,
    algs: &[EtaleQuintic],
    prefactor: BigRational,
    closed_form: BigRational,
) -> MassReport {
    let terms: Vec<MassTerm> = algs.iter().map(|a| term(a, p)).collect();
    let sum = terms
        .iter()
        .fold(BigRational::zero(), |acc, t| acc + &t.mass);
    let total = &prefactor * sum;
    MassReport {
        p,
        matches: total == closed_form,
        terms,
        prefactor,
        total,
        closed_form,
    }
}

/// Table must contain at least one field of each degree 1..=5 at p.
pub fn beta_p(p: u64, table: &[LocalFieldRec]) -> Result<MassReport, LocalError> {
    let fields: Vec<LocalFieldRec> = table.iter().filter(|r| r.p == p).copied().collect();
    for degree in 1..=5 {
        if !fields.iter().any(|r| r.n == degree) {
            return Err(LocalError::IncompleteTable { p, degree });
        }
    }
    let algs = etale_quintics(&fields)?;
    let pb = BigInt::from(p);
    let prefactor = BigRational::new(&pb - 1, pb);
    let closed = beta_closed_form().eval_int(p as i64);
    Ok(report(Some(p), &algs, prefactor, closed))
}

pub fn beta_infinity_report() -> MassReport {
    let half = BigRational::new(1.into(), 2.into());
    report(
        None,
        &real_quintics(),
        half,
        BigRational::new(13.into(), 120.into()),
    )
}

pub fn beta_infinity() -> BigRational {
    beta_infinity_report().total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local::tame::tame_local_fields;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn archimedean() {
        assert_eq!(beta_infinity(), rat(13, 120));
        assert_eq!(beta_infinity(), rat(1, 240) + rat(1, 24) + rat(1, 16));
        assert!(beta_infinity_report().matches);
    }

    #[test]
    fn tame_seven() {
        let r = beta_p(7, &tame_local_fields(7).unwrap()).unwrap();
        assert_eq!(r.total, rat(17142, 16807));
        assert!(r.matches);
    }

    #[test]
    fn incomplete() {
        let fs: Vec<_> = tame_local_fields(7)
            .unwrap()
            .into_iter()
            .filter(|r| r.n != 4)
            .collect();
        assert_eq!(
            beta_p(7, &fs),
            Err(LocalError::IncompleteTable { p: 7, degree: 4 })
        );
    }
}
