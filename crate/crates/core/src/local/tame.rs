//! Extensions of Q_p of degree at most 5 when p > 5.
//!
//! Over the unramified extension of degree f, the tamely totally ramified
//! extensions of degree e are generated by roots of x^e - p w^r, with w a
//! generator of the residue multiplicative group and r taken modulo
//! g = gcd(e, p^f - 1). Frobenius sends r to p r, so fields over Q_p with
//! invariants (e, f) correspond to orbits of multiplication by p on Z/g; an
//! orbit of length k gives a field with g f / k automorphisms.

use num_integer::Integer;

use super::field::LocalFieldRec;
use super::LocalError;

fn orbits_mul_p(p: u64, g: u64) -> Vec<usize> {
    let mut seen = vec![false; g as usize];
    let mut sizes = Vec::new();
    for start in 0..g {
        if seen[start as usize] {
            continue;
        }
        let mut r = start;
        let mut k = 0;
        while !seen[r as usize] {
            seen[r as usize] = true;
            r = (r * (p % g)) % g;
            k += 1;
        }
        sizes.push(k);
    }
    sizes
}

pub fn tame_local_fields(p: u64) -> Result<Vec<LocalFieldRec>, LocalError> {
    if p <= 5 {
        return Err(LocalError::WildPrime(p));
    }
    let mut out = Vec::new();
    for n in 1..=5u32 {
        for e in 1..=n {
            if n % e != 0 {
                continue;
            }
            let f = n / e;
            let q_minus_1 = (p as u128).pow(f) - 1;
            let g = (e as u128).gcd(&q_minus_1) as u64;
            for k in orbits_mul_p(p, g) {
                out.push(LocalFieldRec {
                    p,
                    n,
                    e,
                    f,
                    c: f * (e - 1),
                    aut: (g as u32 * f) / k as u32,
                });
            }
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    #[test]
    fn unramified_quintic_unique() {
        let fs = tame_local_fields(7).unwrap();
        let unr: Vec<_> = fs.iter().filter(|r| r.e == 1 && r.f == 5).collect();
        assert_eq!(unr.len(), 1);
        assert_eq!(unr[0].aut, 5);
    }

    #[test]
    fn totally_ramified_mass_is_one() {
        for p in [7u64, 11, 13, 17, 31] {
            let fs = tame_local_fields(p).unwrap();
            for e in 1..=5 {
                let mass: Ratio<i64> = fs
                    .iter()
                    .filter(|r| r.e == e && r.f == 1)
                    .map(|r| Ratio::new(1, r.aut as i64))
                    .sum();
                assert_eq!(mass, Ratio::from_integer(1), "p = {p}, e = {e}");
            }
        }
    }

    #[test]
    fn wild_rejected() {
        assert_eq!(tame_local_fields(5), Err(LocalError::WildPrime(5)));
    }
}
