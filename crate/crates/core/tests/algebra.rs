use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use qpl::algebra::factor::{equal_up_to_sign, is_irreducible, product};
use qpl::algebra::modp::{factor_pattern, reduce_poly, SmallField};
use qpl::algebra::{
    factor_quintic, laurent_equal, pfaffian4, poly_discriminant, real_root_count, IntMatrix, IntPoly,
    LaurentP, RatMatrix,
};

fn skew4(v: &[i64]) -> IntMatrix {
    let mut m = IntMatrix::zeros(4, 4);
    let mut k = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            m.set(i, j, BigInt::from(v[k]));
            m.set(j, i, BigInt::from(-v[k]));
            k += 1;
        }
    }
    m
}

fn square(v: &[i64], n: usize) -> IntMatrix {
    let rows: Vec<&[i64]> = v.chunks(n).collect();
    IntMatrix::from_i64_rows(&rows)
}

fn linear(root: i64) -> IntPoly {
    IntPoly::from_i64s(&[-root, 1])
}

fn distinct(v: Vec<i64>) -> bool {
    let mut s = v.clone();
    s.sort_unstable();
    s.dedup();
    s.len() == v.len()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn pfaffian_squares_to_determinant(v in prop::collection::vec(-50i64..=50, 6)) {
        let m = skew4(&v);
        let pf = pfaffian4(&m).unwrap();
        prop_assert_eq!(&pf * &pf, m.det());
    }

    #[test]
    fn pfaffian_transforms_by_determinant(
        v in prop::collection::vec(-9i64..=9, 6),
        p in prop::collection::vec(-4i64..=4, 16),
    ) {
        let m = skew4(&v);
        let p = square(&p, 4);
        let conj = p.mul(&m).unwrap().mul(&p.transpose()).unwrap();
        prop_assert_eq!(pfaffian4(&conj).unwrap(), p.det() * pfaffian4(&m).unwrap());
    }

    #[test]
    fn kernel_vectors_are_annihilated(
        rows in 1usize..6,
        cols in 1usize..7,
        v in prop::collection::vec(-3i64..=3, 42),
    ) {
        let m = RatMatrix::from_rows(
            (0..rows)
                .map(|i| (0..cols).map(|j| BigRational::from_integer(v[i * cols + j].into())).collect())
                .collect(),
        );
        let (rank, kernel) = m.rank_kernel();
        prop_assert_eq!(rank + kernel.len(), cols);
        prop_assert!(rank <= rows.min(cols));
        for k in &kernel {
            prop_assert!(m.mul_vec(k).iter().all(|x| x.is_zero()));
            prop_assert!(k.iter().any(|x| !x.is_zero()));
        }
    }

    #[test]
    fn outer_product_sums_have_rank_at_most_two(
        u in prop::collection::vec(-5i64..=5, 8),
        w in prop::collection::vec(-5i64..=5, 10),
    ) {
        let m = RatMatrix::from_rows(
            (0..4)
                .map(|i| {
                    (0..5)
                        .map(|j| BigRational::from_integer((u[i] * w[j] + u[4 + i] * w[5 + j]).into()))
                        .collect()
                })
                .collect(),
        );
        let (rank, kernel) = m.rank_kernel();
        prop_assert!(rank <= 2);
        prop_assert_eq!(kernel.len(), 5 - rank);
    }

    #[test]
    fn sturm_counts_constructed_roots(
        roots in prop::collection::vec(-20i64..=20, 1..=5),
        quads in prop::collection::vec(1i64..=30, 0..=2),
    ) {
        prop_assume!(distinct(roots.clone()) && distinct(quads.clone()));
        let mut f = IntPoly::from_i64s(&[1]);
        for &r in &roots {
            f = f.mul(&linear(r));
        }
        for &c in &quads {
            f = f.mul(&IntPoly::from_i64s(&[c, 0, 1]));
        }
        let n = real_root_count(&f).unwrap();
        prop_assert_eq!(n, roots.len());
        prop_assert_eq!(n % 2, f.degree().unwrap() % 2);
    }

    #[test]
    fn discriminant_sign_follows_complex_pairs(c in prop::collection::vec(-20i64..=20, 5)) {
        let mut coeffs = c.clone();
        coeffs.push(1);
        let f = IntPoly::from_i64s(&coeffs);
        prop_assume!(f.is_squarefree());
        let real = real_root_count(&f).unwrap();
        let pairs = (5 - real) / 2;
        let d = poly_discriminant(&f).unwrap();
        prop_assert!(!d.is_zero());
        prop_assert_eq!(d.is_positive(), pairs % 2 == 0);
    }

    #[test]
    fn factorization_multiplies_back_and_refines_mod_p(
        root in -10i64..=10,
        lead in 1i64..=4,
        rest in prop::collection::vec(-10i64..=10, 4),
    ) {
        let mut quartic = rest.clone();
        quartic.push(lead);
        let f = linear(root).mul(&IntPoly::from_i64s(&quartic));
        prop_assume!(f.degree() == Some(5) && f.is_squarefree());
        let factors = factor_quintic(&f).unwrap();
        prop_assert!(factors.len() >= 2);
        prop_assert!(equal_up_to_sign(&product(&factors), &f.primitive()));
        for g in &factors {
            prop_assert!(is_irreducible(g).unwrap());
        }
        let d = poly_discriminant(&f).unwrap();
        for p in [101u64, 103, 107, 109, 113] {
            let bad = d.numer() * &f.lc() % BigInt::from(p);
            if bad.is_zero() {
                continue;
            }
            let k = SmallField::new(p);
            let mut joined: Vec<usize> = factors
                .iter()
                .flat_map(|g| factor_pattern(&k, &reduce_poly(&k, g)))
                .collect();
            joined.sort_unstable();
            prop_assert_eq!(factor_pattern(&k, &reduce_poly(&k, &f)), joined);
        }
    }

    #[test]
    fn laurent_products_evaluate_pointwise(
        a in prop::collection::vec((-5i64..=5, -4i64..=4), 0..5),
        b in prop::collection::vec((-5i64..=5, -4i64..=4), 0..5),
        p in 2i64..=13,
    ) {
        let f = LaurentP::from_terms(&a);
        let g = LaurentP::from_terms(&b);
        prop_assert_eq!((&f * &g).eval_int(p), f.eval_int(p) * g.eval_int(p));
        prop_assert_eq!((&f - &g).eval_int(p), f.eval_int(p) - g.eval_int(p));
        prop_assert!(laurent_equal(&(&f + &g), &(&g + &f)));
        prop_assert!(laurent_equal(&(&f - &f), &LaurentP::zero()));
    }
}

#[test]
fn irreducible_quintic_stays_whole() {
    let f = IntPoly::from_i64s(&[-1, -1, 0, 0, 0, 1]);
    assert_eq!(factor_quintic(&f).unwrap(), vec![f.clone()]);
    assert_eq!(real_root_count(&f).unwrap(), 1);
    assert_eq!(poly_discriminant(&f).unwrap(), BigRational::from_integer(2869.into()));
}

#[test]
fn singular_skew_matrix_has_zero_pfaffian() {
    let m = skew4(&[1, 2, 3, 2, 4, 6]);
    assert_eq!(pfaffian4(&m).unwrap().pow(2), m.det());
}
