mod common;

use common::{tt_consistent, tt_contingent, tt_entails};
use entrench_core::classifier::{preference_value, ClassifierConfig};
use entrench_core::format::{parse_belief_base, write_belief_base};
use entrench_core::logic::{self, Atom, Formula};
use entrench_core::{parse_formula, EntrenchmentRanking, Mode, Rank};
use proptest::prelude::*;

fn atom(max: usize) -> impl Strategy<Value = Formula> + Clone {
    (0..max).prop_map(|i| Formula::atom(Atom::new("p", &format!("c{i}")).unwrap()))
}

fn formula(max_atoms: usize) -> impl Strategy<Value = Formula> {
    atom(max_atoms).prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.implies(b)),
            (inner.clone(), inner).prop_map(|(a, b)| a.iff(b)),
        ]
    })
}

/// Literals and two-literal clauses over six atoms.
fn belief() -> impl Strategy<Value = Formula> {
    fn lit() -> impl Strategy<Value = Formula> {
        (atom(6), any::<bool>()).prop_map(|(a, neg)| if neg { a.not() } else { a })
    }
    prop_oneof![
        2 => lit(),
        1 => (lit(), lit()).prop_map(|(a, b)| a.or(b)),
        1 => (lit(), lit()).prop_map(|(a, b)| a.implies(b)),
    ]
}

fn rank() -> impl Strategy<Value = Rank> {
    (0u32..1000).prop_map(Rank::from_milli)
}

fn positive_rank() -> impl Strategy<Value = Rank> {
    (1u32..1000).prop_map(Rank::from_milli)
}

/// A ranking reached from the empty one by maxi-adjustments.
fn ranking() -> impl Strategy<Value = EntrenchmentRanking> {
    prop::collection::vec((belief(), rank()), 0..8).prop_map(|steps| {
        let mut b = EntrenchmentRanking::new();
        for (f, i) in steps {
            if let Ok((next, _)) = b.maxi_adjust(&f, i) {
                b = next;
            }
        }
        b
    })
}

fn cut_above(b: &EntrenchmentRanking, i: Rank) -> Vec<Formula> {
    b.cut_above(i).into_iter().map(|s| s.as_formula().unwrap().clone()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn entails_matches_truth_tables(premises in prop::collection::vec(formula(10), 0..4), goal in formula(10)) {
        let refs: Vec<&Formula> = premises.iter().collect();
        prop_assert_eq!(logic::entails(refs.iter().copied(), &goal), tt_entails(&refs, &goal));
    }

    #[test]
    fn consistency_matches_truth_tables(set in prop::collection::vec(formula(8), 0..5)) {
        let refs: Vec<&Formula> = set.iter().collect();
        prop_assert_eq!(logic::is_consistent(refs.iter().copied()), tt_consistent(&refs));
    }

    #[test]
    fn entailment_is_refutation(premises in prop::collection::vec(formula(6), 0..4), goal in formula(6)) {
        let mut with_negation = premises.clone();
        with_negation.push(goal.clone().not());
        prop_assert_eq!(logic::entails(&premises, &goal), !logic::is_consistent(&with_negation));
    }

    #[test]
    fn render_then_parse_is_identity(f in formula(10)) {
        let text = f.to_string();
        let back = parse_formula(&text).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn contingency_matches_truth_tables(f in formula(6)) {
        prop_assert_eq!(logic::is_contingent(&f), tt_contingent(&f));
    }

    #[test]
    fn preference_is_antisymmetric_under_even_prior(r in 0u64..50, n in 0u64..50, extra in 0u64..100) {
        prop_assume!(r + n > 0);
        let judged = r + n + extra;
        let cfg = ClassifierConfig::default();
        let a = preference_value(r, n, judged, &cfg);
        let b = preference_value(n, r, judged, &cfg);
        prop_assert!((a + b).abs() < 1e-12);
    }

    #[test]
    fn preference_is_bounded(r in 0u64..200, n in 0u64..200, extra in 0u64..1000, eps in 0.05f64..0.95, prel in 0.05f64..0.95) {
        prop_assume!(r + n > 0);
        let cfg = ClassifierConfig { epsilon: eps, lambda: 0.5, p_rel: prel };
        let pre = preference_value(r, n, r + n + extra, &cfg);
        prop_assert!(pre.abs() <= eps);
    }

    #[test]
    fn preference_grows_with_relevant_share(r in 0u64..100, n in 1u64..100, extra in 0u64..100) {
        let judged = r + n + extra;
        let cfg = ClassifierConfig::default();
        prop_assert!(preference_value(r + 1, n - 1, judged, &cfg) >= preference_value(r, n, judged, &cfg));
    }

    #[test]
    fn maxi_adjust_preserves_per1(b in ranking(), f in belief(), i in rank()) {
        prop_assume!(logic::is_contingent(&f));
        let (after, _) = b.maxi_adjust(&f, i).unwrap();
        let report = after.validate(Mode::Strict);
        prop_assert!(report.is_valid(), "{:?}", report.violations);
    }

    #[test]
    fn maxi_adjust_reaches_target_degree(b in ranking(), f in belief(), i in positive_rank()) {
        prop_assume!(logic::is_contingent(&f));
        let (after, _) = b.maxi_adjust(&f, i).unwrap();
        prop_assert_eq!(after.degree(&f), i);
    }

    #[test]
    fn contraction_postcondition(b in ranking(), f in belief(), i in rank()) {
        prop_assume!(logic::is_contingent(&f));
        let (after, _) = b.contract(&f, i).unwrap();
        prop_assert!(!logic::entails(&cut_above(&after, i), &f));
    }

    #[test]
    fn contraction_adds_nothing(b in ranking(), f in belief()) {
        prop_assume!(logic::is_contingent(&f));
        let (after, _) = b.maxi_adjust(&f, Rank::ZERO).unwrap();
        let before = cut_above(&b, Rank::ZERO);
        for g in cut_above(&after, Rank::ZERO) {
            prop_assert!(logic::entails(&before, &g));
        }
    }

    #[test]
    fn maxi_adjust_is_idempotent(b in ranking(), f in belief(), i in rank()) {
        prop_assume!(logic::is_contingent(&f));
        let (once, _) = b.maxi_adjust(&f, i).unwrap();
        let (twice, report) = once.maxi_adjust(&f, i).unwrap();
        prop_assert_eq!(&twice, &once);
        prop_assert!(report.is_empty());
    }

    #[test]
    fn reports_are_faithful_diffs(b in ranking(), f in belief(), i in rank()) {
        prop_assume!(logic::is_contingent(&f));
        let (after, report) = b.maxi_adjust(&f, i).unwrap();
        prop_assert_eq!(report.apply(&b), after);
    }

    #[test]
    fn no_entry_is_stored_at_rank_zero(b in ranking(), f in belief(), i in rank()) {
        prop_assume!(logic::is_contingent(&f));
        for out in [b.maxi_adjust(&f, i).unwrap().0, b.contract(&f, i).unwrap().0, b.expand(&f, i).unwrap().0] {
            prop_assert!(out.entries().all(|e| !e.rank.is_zero()));
        }
    }

    #[test]
    fn degree_respects_entailment(b in ranking(), a in belief(), x in belief()) {
        // a & x |- a |- a | x
        let (stronger, weaker) = (a.clone().and(x.clone()), a.clone().or(x));
        prop_assert!(b.degree(&stronger) <= b.degree(&a));
        prop_assert!(b.degree(&a) <= b.degree(&weaker));
    }

    #[test]
    fn consistent_cut_is_consistent(b in ranking(), f in belief(), i in positive_rank()) {
        // Expansion alone can introduce conflicts.
        let b = b.expand(&f, i).map(|(x, _)| x).unwrap_or(b);
        prop_assert!(b.is_consistent_set(&b.consistent_cut()));
    }

    #[test]
    fn belief_base_text_round_trips(b in ranking()) {
        let text = write_belief_base(&b);
        let back = parse_belief_base(&text).unwrap();
        prop_assert_eq!(&back, &b);
        prop_assert_eq!(write_belief_base(&back), text);
    }
}
