mod common;

use common::*;
use nnreal::exact::GaussianRational;
use nnreal::realize::{
    build_aux_chain_with, find_decomposition, realize, scale_to_cs, RealizeError, SearchOptions,
};
use nnreal::spectrum::{jcf_enumerate, EigenList, JordanForm, Spectrum};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

/// One item per Jordan block, conjugate pairs of blocks counted once.
fn items(j: &JordanForm) -> Vec<(GaussianRational, usize)> {
    j.blocks()
        .iter()
        .filter(|(z, _)| !z.im.is_negative())
        .flat_map(|(z, parts)| parts.iter().map(move |&p| (z.clone(), p)))
        .collect()
}

fn sublist(items: &[&(GaussianRational, usize)]) -> Option<EigenList> {
    let mut pairs = Vec::new();
    for (i, (z, size)) in items.iter().enumerate() {
        if items[..i].iter().any(|(w, _)| w == z) {
            return None;
        }
        pairs.push((z.clone(), *size));
        if !z.im.is_zero() {
            pairs.push((z.conj(), *size));
        }
    }
    Some(EigenList::from_pairs(pairs).unwrap())
}

/// Tries every ordered partition of the items into sublists.
fn brute_force(j: &JordanForm, positive_column: bool) -> bool {
    let items = items(j);
    let n = items.len();
    for m in 1..=n {
        let mut labels = vec![0usize; n];
        loop {
            if (0..m).all(|b| labels.contains(&b)) {
                let lists: Option<Vec<EigenList>> = (0..m)
                    .map(|b| {
                        let members: Vec<_> = items.iter().zip(&labels).filter(|(_, l)| **l == b).map(|(it, _)| it).collect();
                        sublist(&members)
                    })
                    .collect();
                if let Some(lists) = lists {
                    if build_aux_chain_with(lists, positive_column).is_ok() {
                        return true;
                    }
                }
            }
            let mut i = 0;
            while i < n && labels[i] + 1 == m {
                labels[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            labels[i] += 1;
        }
    }
    false
}

fn spectrum_with_form(max_items: usize) -> impl Strategy<Value = (Spectrum, JordanForm)> {
    lhp_spectrum(8)
        .prop_flat_map(|s| {
            let forms = jcf_enumerate(s.list());
            (Just(s), prop::sample::select(forms))
        })
        .prop_filter("too many items for brute force", move |(_, j)| items(j).len() <= max_items)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn search_agrees_with_brute_force((spec, j) in spectrum_with_form(5), positive_column in any::<bool>()) {
        let opts = SearchOptions { positive_column, ..SearchOptions::default() };
        let found = match find_decomposition(&spec, &j, &opts) {
            Ok((d, _)) => {
                prop_assert_eq!(&d.union(), spec.list());
                prop_assert_eq!(d.induced_jordan(), j.clone());
                true
            }
            Err(RealizeError::NotFound { exhausted_budget, .. }) => {
                prop_assert!(!exhausted_budget);
                false
            }
            Err(RealizeError::NotRealizable(_)) => false,
            Err(e) => return Err(TestCaseError::fail(format!("unexpected {e}"))),
        };
        prop_assert_eq!(found, brute_force(&j, positive_column), "{} with {}", spec, j);
    }

    #[test]
    fn certificates_reverify((spec, j) in spectrum_with_form(8)) {
        let Ok(cert) = realize(&spec, &j) else { return Ok(()); };
        prop_assert!(cert.reverify());
        prop_assert!(cert.verdicts.realizes());
        prop_assert_eq!(cert.matrix.trace(), spec.list().trace());
        if let Some(d) = &cert.decomposition {
            prop_assert_eq!(&d.union(), spec.list());
            let traces = d.sublists.iter().map(EigenList::trace).fold(nnreal::exact::Rational::zero(), |a, t| a + t);
            prop_assert_eq!(traces, spec.list().trace());
        }
        if cert.verdicts.irreducible {
            let cs = scale_to_cs(&cert.matrix).unwrap();
            prop_assert_eq!(cs.char_poly().unwrap(), cert.matrix.char_poly().unwrap());
            prop_assert!(cs.row_sums().iter().all(|r| r == spec.perron()));
            prop_assert!(cs.entries().all(|x| !x.is_negative()));
        }
    }
}
