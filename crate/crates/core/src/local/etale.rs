use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use super::field::LocalFieldRec;
use super::LocalError;

/// One field factor of an etale algebra. `id` distinguishes non-isomorphic
/// fields that happen to share the same invariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Component {
    Real,
    Complex,
    Local { id: usize, rec: LocalFieldRec },
}

impl Component {
    pub fn degree(&self) -> u32 {
        match self {
            Component::Real => 1,
            Component::Complex => 2,
            Component::Local { rec, .. } => rec.n,
        }
    }

    pub fn aut(&self) -> u32 {
        match self {
            Component::Real => 1,
            Component::Complex => 2,
            Component::Local { rec, .. } => rec.aut,
        }
    }

    pub fn disc_exponent(&self) -> u32 {
        match self {
            Component::Local { rec, .. } => rec.c,
            _ => 0,
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Real => write!(f, "R"),
            Component::Complex => write!(f, "C"),
            Component::Local { id, rec } => {
                write!(f, "K{}(e={},f={},c={})", id, rec.e, rec.f, rec.c)
            }
        }
    }
}

/// Components are kept sorted, so equal multisets compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaleQuintic {
    pub p: Option<u64>,
    pub components: Vec<Component>,
}

impl EtaleQuintic {
    pub fn new(p: Option<u64>, mut components: Vec<Component>) -> Self {
        components.sort();
        EtaleQuintic { p, components }
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().map(Component::degree).sum()
    }

    pub fn disc_exponent(&self) -> u32 {
        self.components.iter().map(Component::disc_exponent).sum()
    }
}

impl fmt::Display for EtaleQuintic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn real_quintics() -> Vec<EtaleQuintic> {
    use Component::{Complex as C, Real as R};
    vec![
        EtaleQuintic::new(None, vec![R, R, R, R, R]),
        EtaleQuintic::new(None, vec![R, R, R, C]),
        EtaleQuintic::new(None, vec![R, C, C]),
    ]
}

fn multisets(
    comps: &[Component],
    start: usize,
    left: u32,
    acc: &mut Vec<Component>,
    out: &mut Vec<Vec<Component>>,
) {
    if left == 0 {
        out.push(acc.clone());
        return;
    }
    for k in start..comps.len() {
        if comps[k].degree() <= left {
            acc.push(comps[k]);
            multisets(comps, k, left - comps[k].degree(), acc, out);
            acc.pop();
        }
    }
}

/// All etale algebras of degree 5 built from the given fields of one prime.
pub fn etale_quintics(fields: &[LocalFieldRec]) -> Result<Vec<EtaleQuintic>, LocalError> {
    let p = match fields.first() {
        Some(r) => r.p,
        None => return Err(LocalError::IncompleteTable { p: 0, degree: 1 }),
    };
    if let Some(r) = fields.iter().find(|r| r.p != p) {
        return Err(LocalError::MixedPrimes(p, r.p));
    }
    let comps: Vec<Component> = fields
        .iter()
        .enumerate()
        .filter(|(_, r)| r.n <= 5)
        .map(|(id, rec)| Component::Local { id, rec: *rec })
        .collect();
    let mut raw = Vec::new();
    multisets(&comps, 0, 5, &mut Vec::new(), &mut raw);
    Ok(raw
        .into_iter()
        .map(|c| EtaleQuintic::new(Some(p), c))
        .collect())
}

/// Product over distinct components of aut^m * m!.
pub fn algebra_aut_order(alg: &EtaleQuintic) -> BigInt {
    let mut total = BigInt::from(1);
    let comps = &alg.components;
    let mut i = 0;
    while i < comps.len() {
        let mut j = i;
        while j < comps.len() && comps[j] == comps[i] {
            j += 1;
        }
        let m = (j - i) as u32;
        total *= BigInt::from(comps[i].aut()).pow(m);
        for k in 2..=m {
            total *= k;
        }
        i = j;
    }
    total
}
