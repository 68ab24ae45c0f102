use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use super::quadruple::Quadruple;
use super::PencilError;
use crate::algebra::IntMatrix;

/// An element (g4, g5) of GL4(Z) x SL5(Z).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElementZ {
    g4: IntMatrix,
    g5: IntMatrix,
}

impl GroupElementZ {
    pub fn new(g4: IntMatrix, g5: IntMatrix) -> Result<Self, PencilError> {
        if g4.rows() != 4 || g4.cols() != 4 || g5.rows() != 5 || g5.cols() != 5 {
            return Err(PencilError::BadDeterminant);
        }
        let d4 = g4.det();
        if d4 != BigInt::one() && d4 != -BigInt::one() {
            return Err(PencilError::BadDeterminant);
        }
        if g5.det() != BigInt::one() {
            return Err(PencilError::BadDeterminant);
        }
        Ok(GroupElementZ { g4, g5 })
    }

    pub fn identity() -> Self {
        GroupElementZ {
            g4: IntMatrix::identity(4),
            g5: IntMatrix::identity(5),
        }
    }

    pub fn g4(&self) -> &IntMatrix {
        &self.g4
    }

    pub fn g5(&self) -> &IntMatrix {
        &self.g5
    }

    pub fn compose(&self, other: &GroupElementZ) -> GroupElementZ {
        GroupElementZ {
            g4: self.g4.mul(&other.g4).expect("4x4"),
            g5: self.g5.mul(&other.g5).expect("5x5"),
        }
    }

    /// Random element as a product of `steps` elementary transvections with
    /// multipliers in `[-c, c]` in each factor, plus a random sign on a row of g4.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, steps: usize, c: i64) -> Self {
        let g4 = random_unimodular(rng, 4, steps, c, true);
        let g5 = random_unimodular(rng, 5, steps, c, false);
        GroupElementZ { g4, g5 }
    }
}

/// Product of random transvections; with `allow_sign`, one row may be negated.
pub fn random_unimodular<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    steps: usize,
    c: i64,
    allow_sign: bool,
) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let k = BigInt::from(rng.gen_range(-c..=c));
        if k.is_zero() {
            continue;
        }
        // row_i += k * row_j
        for col in 0..n {
            let v = m.get(i, col) + &k * m.get(j, col);
            m.set(i, col, v);
        }
    }
    if allow_sign && rng.gen_bool(0.5) {
        let r = rng.gen_range(0..n);
        for col in 0..n {
            let v = -m.get(r, col);
            m.set(r, col, v);
        }
    }
    m
}

/// Apply `g` to `q`: each matrix X goes to g5 X g5^T, then the four
/// matrices are mixed by g4 acting on the column (A, B, C, D)^T.
pub fn act(g: &GroupElementZ, q: &Quadruple) -> Quadruple {
    let g5t = g.g5.transpose();
    let conj: Vec<IntMatrix> = q
        .matrices()
        .iter()
        .map(|x| g.g5.mul(x).and_then(|y| y.mul(&g5t)).expect("5x5"))
        .collect();
    let mixed: Vec<IntMatrix> = (0..4)
        .map(|r| {
            let mut out = IntMatrix::zeros(5, 5);
            for (k, x) in conj.iter().enumerate() {
                let w = g.g4.get(r, k);
                if w.is_zero() {
                    continue;
                }
                for i in 0..5 {
                    for j in 0..5 {
                        let v = out.get(i, j) + w * x.get(i, j);
                        out.set(i, j, v);
                    }
                }
            }
            out
        })
        .collect();
    let arr: [IntMatrix; 4] = mixed.try_into().expect("four matrices");
    Quadruple::from_matrices(&arr).expect("action preserves skew-symmetry")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_and_negation() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let q = Quadruple::random(&mut rng, 5);
        assert_eq!(act(&GroupElementZ::identity(), &q), q);
        let g = GroupElementZ::new(IntMatrix::identity(4).neg(), IntMatrix::identity(5)).unwrap();
        let neg = act(&g, &q);
        for (a, b) in neg.coords().iter().zip(q.coords()) {
            assert_eq!(a, &-b);
        }
    }

    #[test]
    fn determinant_checked() {
        let mut g5 = IntMatrix::identity(5);
        g5.set(0, 0, BigInt::from(-1));
        assert_eq!(
            GroupElementZ::new(IntMatrix::identity(4), g5),
            Err(PencilError::BadDeterminant)
        );
    }

    #[test]
    fn action_is_a_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let q = Quadruple::random(&mut rng, 4);
            let g = GroupElementZ::random(&mut rng, 6, 2);
            let h = GroupElementZ::random(&mut rng, 6, 2);
            assert!(GroupElementZ::new(g.g4.clone(), g.g5.clone()).is_ok());
            assert_eq!(act(&g, &act(&h, &q)), act(&g.compose(&h), &q));
        }
    }
}
