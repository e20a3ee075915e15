use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use std::sync::Arc;
use thetahyp::qseries::conjectures::{
    aff_eval_conjecture_series, denominator_conjecture_series, hall_limit_check, theorem_x_series, theorem_y_series,
};
use thetahyp::qseries::lemmas::{lemma_sides, theta_lemma_series_check};
use thetahyp::qseries::{
    bilateral_range, bilateral_theta_sum, rat, series_pochhammer, series_triple_product_check, Mono, Ring, Series,
};
use thetahyp::Error;

fn ring() -> Arc<Ring> {
    Ring::new(&[("a", 1), ("b", 0)])
}

fn series(terms: &[(i64, i64, i64)], order: i64) -> Series {
    Series::from_terms(&ring(), terms.iter().map(|&(x, y, c)| (vec![x, y], rat(c))), order)
}

fn arb_terms() -> impl Strategy<Value = Vec<(i64, i64, i64)>> {
    prop::collection::vec((0i64..7, -2i64..3, -5i64..6), 0..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(x in arb_terms(), y in arb_terms(), z in arb_terms(), o in 4i64..9) {
        let (a, b, c) = (series(&x, o), series(&y, o), series(&z, o));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Series::one(&ring(), o), a.clone());
        prop_assert_eq!(-&(-&a), a);
    }

    #[test]
    fn truncation_is_coherent(x in arb_terms(), y in arb_terms(), o in 4i64..9, k in 1i64..4) {
        let (a, b) = (series(&x, o), series(&y, o));
        let cut = o - k;
        prop_assert_eq!((&a * &b).truncate(cut), (&a.truncate(cut) * &b.truncate(cut)).truncate(cut));
        prop_assert_eq!((&a + &b).truncate(cut), (&a.truncate(cut) + &b.truncate(cut)).truncate(cut));
        // nothing at or above the order is stored, and no zero coefficients
        let p = &a * &b;
        let r = ring();
        for (e, c) in p.terms() {
            prop_assert!(r.weight(e) < p.order());
            prop_assert!(*c != rat(0));
        }
    }

    #[test]
    fn unit_series_invert(x in arb_terms(), u in prop::sample::select(vec![1i64, -1, 2, -3]), o in 3i64..9) {
        // a unit constant term plus higher terms
        let tail: Vec<_> = x.into_iter().filter(|t| t.0 > 0).collect();
        let s = &series(&tail, o) + &Series::constant(&ring(), rat(u), o);
        let inv = s.inverse().unwrap();
        prop_assert_eq!(&s * &inv, Series::one(&ring(), o));
    }
}

#[test]
fn euler_product_golden() {
    let r = Ring::new(&[("p", 1)]);
    let p = Mono::unit(&r, &[("p", 1)]);
    let euler = series_pochhammer(&r, &p, &r.exps(&[("p", 1)]), 12).unwrap();
    assert_eq!(euler.to_string(), "1 - p - p^2 + p^5 + p^7 + O[12]");
    let longer = series_pochhammer(&r, &p, &r.exps(&[("p", 1)]), 13).unwrap();
    assert_eq!(longer.to_string(), "1 - p - p^2 + p^5 + p^7 - p^12 + O[13]");
    assert_eq!(&euler * &euler.inverse().unwrap(), Series::one(&r, 12));
    let zero = Mono::new(BigRational::from_integer(BigInt::from(0)), r.exps(&[("p", 1)]));
    assert_eq!(series_pochhammer(&r, &zero, &r.exps(&[("p", 1)]), 12).unwrap(), Series::one(&r, 12));
}

#[test]
fn inverse_requires_a_single_lowest_term() {
    let r = ring();
    let s = series(&[(0, 0, 1), (0, 1, 1)], 6);
    assert!(matches!(s.inverse(), Err(Error::NotInvertible(_))));
    assert!(matches!(Series::zero(&r, 6).inverse(), Err(Error::NotInvertible(_))));
}

#[test]
fn triple_product() {
    assert!(series_triple_product_check(0, 1, 10).unwrap());
    assert!(series_triple_product_check(2, 4, 8).unwrap());
    for kappa in 1..=4 {
        for mu in 0..=2 * kappa {
            assert!(series_triple_product_check(mu, kappa, 12).unwrap(), "mu {mu} kappa {kappa}");
        }
    }
    let r = Ring::new(&[("s", 1), ("l", 0)]);
    let need = bilateral_range(0, 1, 10);
    assert!(matches!(
        bilateral_theta_sum(&r, 0, 1, need - 1, 10),
        Err(Error::InconsistentTruncation(_))
    ));
}

#[test]
fn denominator_expansion() {
    for n in 2..=4 {
        let s = denominator_conjecture_series(n, 1, 6).unwrap();
        assert_eq!(s, Series::one(s.ring(), 6));
    }
    let conj = denominator_conjecture_series(2, 2, 6).unwrap();
    assert!(conj.agrees_with(&theorem_x_series(6).unwrap()));
}

#[test]
fn evaluation_expansion() {
    for n in 2..=3 {
        let s = aff_eval_conjecture_series(n, 2, &vec![0; n - 1], 0, 20).unwrap();
        assert_eq!(s, Series::one(s.ring(), 20));
    }
    for mu in 0..4 {
        for k in 0..4 {
            let a = aff_eval_conjecture_series(2, 2, &[mu], k, 40).unwrap();
            let b = theorem_y_series(mu, k, 40).unwrap();
            assert!(a.agrees_with(&b), "mu {mu} k {k}: {:?}", a.first_difference(&b));
            if mu == k + 2 || mu == k + 3 {
                // a factor (1; x^{2 kappa}) vanishes
                assert!(b.is_zero());
                continue;
            }
            // leading term q^{2 mu} is x^{-2 mu} with coefficient 1
            assert_eq!(b.valuation(), Some(-2 * mu));
            assert_eq!(b.coefficient(&[-2 * mu]), rat(1));
        }
    }
}

#[test]
fn hall_limit() {
    assert!(hall_limit_check(2, 2, 8).unwrap());
    assert!(hall_limit_check(3, 2, 6).unwrap());
    for n in 2..=3 {
        assert!(hall_limit_check(n, 1, 8).unwrap());
    }
}

#[test]
fn theta_lemmas() {
    for (id, order) in [("theta-simp2", 10), ("theta-simp3", 8), ("theta-simp4", 12), ("sym-rearrange", 8)] {
        assert!(theta_lemma_series_check(id, order).unwrap(), "{id}");
    }
    assert!(matches!(lemma_sides("theta-simp9", 8), Err(Error::UnknownId(_))));
}
