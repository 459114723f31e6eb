use std::sync::Arc;

use proptest::prelude::*;
use smalc_core::calculus::{check_derivation, prove, Mode, ProofResult, SearchBudget};
use smalc_core::semantics::{all_interpretations, enumerate_quantales, holds, valuations};
use smalc_core::syntax::{parse_sequent, validate_signature, Formula, Sequent, Signature, SignatureSpec};

fn sig(w: &[&str], c: &[&str], e: &[&str]) -> Signature {
    let v = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    validate_signature(&SignatureSpec {
        indices: v(&["s", "t"]),
        order: vec![("s".into(), "t".into())],
        weakening: v(w),
        contraction: v(c),
        exchange: v(e),
    })
    .unwrap()
}

fn small_budget() -> SearchBudget {
    SearchBudget {
        max_depth: 12,
        max_contractions_per_branch: 1,
        max_nodes: 20_000,
    }
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop::sample::select(vec!["a", "b"]).prop_map(Formula::atom);
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::product(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::ldiv(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::rdiv(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::with(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::plus(l, r)),
            (prop::sample::select(vec!["s", "t"]), inner).prop_map(|(s, b)| Formula::bang(s, b)),
        ]
    })
}

fn sequent() -> impl Strategy<Value = Sequent> {
    (prop::collection::vec(formula(), 1..4), formula()).prop_map(|(a, s)| Sequent::new(a, s))
}

fn proved(r: &ProofResult) -> bool {
    matches!(r, ProofResult::Proved(_))
}

/// Models on the unital quantales with at most three elements.
fn small_models(s: &Signature) -> Vec<smalc_core::semantics::SubexpInterpretation> {
    enumerate_quantales(3, true)
        .into_iter()
        .flat_map(|q| all_interpretations(&Arc::new(q), s))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn proofs_check_and_are_cut_free(goal in sequent(), mode in prop::sample::select(vec![Mode::L, Mode::Lstar, Mode::L1])) {
        let s = sig(&["t"], &["t"], &["s", "t"]);
        if let ProofResult::Proved(d) = prove(&goal, &s, mode, small_budget()).unwrap() {
            prop_assert_eq!(&d.conclusion, &goal);
            prop_assert!(d.is_cut_free());
            prop_assert_eq!(check_derivation(&d, &s, mode), Ok(()));
        }
    }

    #[test]
    fn modes_are_nested(goal in sequent()) {
        let s = sig(&[], &[], &["t"]);
        if let ProofResult::Proved(d) = prove(&goal, &s, Mode::L, small_budget()).unwrap() {
            prop_assert_eq!(check_derivation(&d, &s, Mode::Lstar), Ok(()));
            prop_assert_eq!(check_derivation(&d, &s, Mode::L1), Ok(()));
            prop_assert!(!matches!(prove(&goal, &s, Mode::L1, small_budget()).unwrap(), ProofResult::NotProvedExhausted(_)));
        }
    }

    #[test]
    fn more_structural_rules_prove_more(goal in sequent()) {
        let poor = sig(&[], &[], &[]);
        let rich = sig(&["t"], &["t"], &["s", "t"]);
        if let ProofResult::Proved(d) = prove(&goal, &poor, Mode::L1, small_budget()).unwrap() {
            prop_assert_eq!(check_derivation(&d, &rich, Mode::L1), Ok(()));
        }
        if let ProofResult::NotProvedExhausted(_) = prove(&goal, &rich, Mode::L1, small_budget()).unwrap() {
            prop_assert!(!proved(&prove(&goal, &poor, Mode::L1, small_budget()).unwrap()));
        }
    }

    #[test]
    fn weakening_and_contraction_give_exchange(a in formula(), b in formula(), c in formula(), d in formula()) {
        // t is in W and C (hence E); moving !{t}a is admissible
        let s = sig(&["t"], &["t"], &["t"]);
        let bang = Formula::bang("t", a);
        let before = Sequent::new(vec![b.clone(), bang.clone(), c.clone()], d.clone());
        let after = Sequent::new(vec![b, c, bang], d);
        if proved(&prove(&before, &s, Mode::L1, small_budget()).unwrap()) {
            let big = SearchBudget { max_depth: 16, max_contractions_per_branch: 2, max_nodes: 200_000 };
            prop_assert!(!matches!(prove(&after, &s, Mode::L1, big).unwrap(), ProofResult::NotProvedExhausted(_)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Semantic oracle: a proved sequent holds in every small model.
    #[test]
    fn proved_sequents_hold_in_small_models(goal in sequent()) {
        let s = sig(&["t"], &["t"], &["s", "t"]);
        if proved(&prove(&goal, &s, Mode::L1, small_budget()).unwrap()) {
            for m in small_models(&s) {
                for f in valuations(&goal.atoms(), m.quantale().size()) {
                    prop_assert!(holds(&m, &f, &goal).unwrap(), "{} fails", goal);
                }
            }
        }
    }
}

#[test]
fn promotion_is_contravariant() {
    let s = sig(&[], &[], &[]);
    let b = SearchBudget::default();
    let down = parse_sequent("!{t}a -> !{s}a").unwrap();
    let up = parse_sequent("!{s}a -> !{t}a").unwrap();
    assert!(proved(&prove(&down, &s, Mode::L1, b).unwrap()));
    assert!(matches!(prove(&up, &s, Mode::L1, b).unwrap(), ProofResult::NotProvedExhausted(_)));
}

#[test]
fn exchange_needs_e() {
    let b = SearchBudget::default();
    let goal = parse_sequent("b, !{s}a -> !{s}a * b").unwrap();
    assert!(proved(&prove(&goal, &sig(&[], &[], &["s", "t"]), Mode::L1, b).unwrap()));
    assert!(matches!(
        prove(&goal, &sig(&[], &[], &["t"]), Mode::L1, b).unwrap(),
        ProofResult::NotProvedExhausted(_)
    ));
}
