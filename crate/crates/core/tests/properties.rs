use proptest::prelude::*;
use singlink::braidrep::rho;
use singlink::diagram::{braid_to_diagram, close_braid, mirror, writhe, BraidLetter, BraidWord, Diagram, Tile};
use singlink::evaluator::{evaluate_closed, evaluate_tangle_with, oracle_edge_enumeration, EvalContext, Sweep};
use singlink::laurent::LaurentPoly;
use singlink::spintensor::{CrossingKind, PolyMatrix};

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-12i64..=12, -5i64..=5), 0..6).prop_map(LaurentPoly::from_terms)
}

fn integral_laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, -5i64..=5), 0..6)
        .prop_map(|ts| LaurentPoly::from_terms(ts.into_iter().map(|(e, c)| (2 * e, c))))
}

fn kind(singular: bool) -> impl Strategy<Value = CrossingKind> {
    if singular {
        prop_oneof![
            Just(CrossingKind::Pos),
            Just(CrossingKind::Neg),
            Just(CrossingKind::Sing)
        ]
        .boxed()
    } else {
        prop_oneof![Just(CrossingKind::Pos), Just(CrossingKind::Neg)].boxed()
    }
}

fn word_on(k: usize, max_len: usize, singular: bool) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec((kind(singular), 1..k), 0..=max_len)
        .prop_map(move |ls| BraidWord::new(k, ls.into_iter().map(|(c, i)| BraidLetter::new(c, i)).collect()).unwrap())
}

fn word(max_len: usize, singular: bool) -> impl Strategy<Value = BraidWord> {
    (2usize..=3).prop_flat_map(move |k| word_on(k, max_len, singular))
}

fn same_strands(la: usize, sa: bool, lb: usize, sb: bool) -> impl Strategy<Value = (BraidWord, BraidWord)> {
    (2usize..=3).prop_flat_map(move |k| (word_on(k, la, sa), word_on(k, lb, sb)))
}

fn ctx(n: usize) -> EvalContext {
    EvalContext::new(n).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn laurent_text_round_trip(p in laurent()) {
        let back: LaurentPoly = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!((&a * &b).invert_q(), a.invert_q() * b.invert_q());
        prop_assert_eq!(a.invert_q().invert_q(), a);
    }

    #[test]
    fn laurent_integer_powers_closed(a in integral_laurent(), b in integral_laurent()) {
        prop_assert!((&a * &b).has_integer_powers());
        prop_assert!((&a + &b).has_integer_powers());
    }

    #[test]
    fn mirror_negates_writhe(w in word(6, true)) {
        let d = close_braid(&w);
        let m = mirror(&d);
        prop_assert!(m.validate().is_ok());
        prop_assert_eq!(writhe(&m), -writhe(&d));
        prop_assert_eq!(mirror(&m), d);
    }

    #[test]
    fn constructed_diagrams_are_valid(w in word(6, true)) {
        let open = braid_to_diagram(&w);
        prop_assert!(open.validate().is_ok());
        prop_assert_eq!(open.top().len(), w.strands());
        let closed = close_braid(&w);
        prop_assert!(closed.validate().is_ok());
        prop_assert!(closed.is_closed());
        let k = w.strands();
        let cups = closed.count_tiles(|t| matches!(t, Tile::CupRight | Tile::CupLeft));
        let caps = closed.count_tiles(|t| matches!(t, Tile::CapRight | Tile::CapLeft));
        prop_assert_eq!((cups, caps), (k, k));
        prop_assert_eq!(closed.count_tiles(|t| t.crossing_kind().is_some()), w.len());
    }

    #[test]
    fn json_round_trip(w in word(5, true)) {
        let d = close_braid(&w);
        prop_assert_eq!(Diagram::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn sweeps_agree_and_frontier_bounded(w in word(5, true), n in 2usize..=3) {
        for d in [braid_to_diagram(&w), close_braid(&w)] {
            let (a, sa) = evaluate_tangle_with(&d, &ctx(n), Sweep::TopDown).unwrap();
            let (b, sb) = evaluate_tangle_with(&d, &ctx(n), Sweep::BottomUp).unwrap();
            prop_assert_eq!(a, b);
            let bound = n.pow(d.max_width() as u32);
            prop_assert!(sa.peak_frontier <= bound && sb.peak_frontier <= bound);
        }
    }

    #[test]
    fn evaluator_matches_edge_oracle(w in word(4, true), n in 2usize..=3) {
        let d = close_braid(&w);
        let v = evaluate_closed(&d, &ctx(n)).unwrap();
        prop_assert!(v.has_integer_powers());
        prop_assert_eq!(oracle_edge_enumeration(&d, &ctx(n)).unwrap(), v);
    }

    #[test]
    fn mirror_inverts_q(w in word(5, true), n in 2usize..=3) {
        let d = close_braid(&w);
        let v = evaluate_closed(&d, &ctx(n)).unwrap();
        prop_assert_eq!(evaluate_closed(&mirror(&d), &ctx(n)).unwrap(), v.invert_q());
    }

    #[test]
    fn rho_is_multiplicative((a, b) in same_strands(4, true, 4, true), n in 2usize..=3) {
        let ab = rho(&a.concat(&b), n).unwrap().matrix;
        let prod = rho(&a, n).unwrap().matrix.mat_mul(&rho(&b, n).unwrap().matrix).unwrap();
        prop_assert_eq!(ab, prod);
    }

    #[test]
    fn inverse_words_cancel(w in word(6, false), n in 2usize..=3) {
        let id = PolyMatrix::identity(n.pow(w.strands() as u32));
        prop_assert_eq!(rho(&w.concat(&w.inverse()), n).unwrap().matrix, id.clone());
        prop_assert_eq!(rho(&w.inverse().concat(&w), n).unwrap().matrix, id);
    }

    #[test]
    fn closure_is_conjugation_invariant((w, g) in same_strands(4, true, 3, false), n in 2usize..=3) {
        let conj = g.concat(&w).concat(&g.inverse());
        prop_assert_eq!(
            evaluate_closed(&close_braid(&conj), &ctx(n)).unwrap(),
            evaluate_closed(&close_braid(&w), &ctx(n)).unwrap()
        );
    }
}
