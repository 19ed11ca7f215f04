mod common;

use proptest::prelude::*;
use qmzv::evaluator::{EvalConfig, Evaluator, Model, Pathway};
use qmzv::products::{q_product, q_quasi_shuffle, q_shuffle, ProductKind};
use qmzv::words::{Composition, LinComb};

fn word(max_depth: usize) -> impl Strategy<Value = Composition> {
    prop::collection::vec(-3i64..=3, 0..=max_depth).prop_map(Composition)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn q_products_commute(u in word(3), v in word(3)) {
        prop_assert_eq!(q_shuffle(&u, &v), q_shuffle(&v, &u));
        prop_assert_eq!(q_quasi_shuffle(&u, &v), q_quasi_shuffle(&v, &u));
    }

    #[test]
    fn empty_word_is_the_unit(u in word(4)) {
        let e = Composition(vec![]);
        for kind in [ProductKind::QShuffle, ProductKind::QQuasiShuffle] {
            let p = q_product(kind, &u, &e).unwrap();
            prop_assert_eq!(p, LinComb::word(u.clone()));
        }
    }

    #[test]
    fn pathways_match_brute_force(u in word(3)) {
        let order = 14;
        let mut ev = Evaluator::new(order, Pathway::Both);
        prop_assert!(common::agrees_int(&ev.zbar(&u).unwrap(), &common::zbar(&u.0, order)));
    }

    #[test]
    fn evaluation_is_multiplicative(u in word(2), v in word(2)) {
        let cfg = EvalConfig::with_order(12);
        let mut ev = Evaluator::from_config(&cfg);
        let lhs = &ev.zbar(&u).unwrap() * &ev.zbar(&v).unwrap();
        for kind in [ProductKind::QShuffle, ProductKind::QQuasiShuffle] {
            let rhs = ev.eval_lincomb(&q_product(kind, &u, &v).unwrap(), Model::Modified).unwrap();
            prop_assert_eq!(&lhs, &rhs);
        }
    }

    #[test]
    fn ytilde_text_roundtrips(u in word(4)) {
        let text = u.format_ytilde();
        prop_assert_eq!(qmzv::words::parse_ytilde(&text).unwrap(), u);
    }
}
