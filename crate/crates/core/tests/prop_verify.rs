mod common;

use common::*;
use nnreal::exact::{int, GaussianRational, Polynomial, RatMatrix, Rational};
use nnreal::spectrum::EigenList;
use nnreal::verify::{is_irreducible, jordan_form_of, verify_jcf, verify_spectrum, weyr_profile};
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Divides out each root's minimal polynomial in turn.
fn roots_by_division(m: &RatMatrix, list: &EigenList) -> bool {
    let mut p = m.char_poly().unwrap();
    for z in list.values() {
        if z.im < Rational::zero() {
            continue;
        }
        let factor = if z.im.is_zero() {
            x_minus(&z.re)
        } else {
            Polynomial::new(vec![z.norm_sqr(), int(-2) * &z.re, Rational::one()])
        };
        let (q, r) = p.div_rem(&factor);
        if !r.is_zero() {
            return false;
        }
        p = q;
    }
    p == Polynomial::one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn weyr_recovers_planted_forms((j, p) in planted(7)) {
        let m = p.mul(&real_jordan_matrix(&j)).mul(&p.inverse().unwrap());
        let list = j.eigen_list();
        prop_assert!(verify_spectrum(&m, &list));
        prop_assert_eq!(jordan_form_of(&m, &list), j.clone());
        prop_assert!(verify_jcf(&m, &j));
        for (z, parts) in j.blocks() {
            prop_assert_eq!(&weyr_profile(&m, z).partition(), parts);
        }
    }

    #[test]
    fn spectrum_check_matches_division((j, p) in planted(6), shift in prop::sample::Index::arbitrary(), by in -2i64..=2) {
        let m = p.mul(&real_jordan_matrix(&j)).mul(&p.inverse().unwrap());
        let list = j.eigen_list();
        prop_assert!(roots_by_division(&m, &list));
        let reals: Vec<GaussianRational> = list.values().into_iter().filter(|z| z.im.is_zero()).collect();
        let target = reals[shift.index(reals.len())].clone();
        let moved = list
            .without_one(&target)
            .unwrap()
            .with_real(&(target.re + int(by)), 1);
        prop_assert_eq!(verify_spectrum(&m, &moved), roots_by_division(&m, &moved));
    }

    #[test]
    fn irreducibility_matches_reachability(pattern in (1usize..=10).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(proptest::bool::weighted(0.25), n), n)
    })) {
        let n = pattern.len();
        let m = RatMatrix::from_fn(n, n, |i, j| if pattern[i][j] { Rational::one() } else { Rational::zero() });
        prop_assert_eq!(is_irreducible(&m), strongly_connected_by_powers(&pattern));
    }
}
