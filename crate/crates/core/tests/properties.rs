mod common;

use common::{brute_pattern_count, brute_vc, tree_class};
use proptest::prelude::*;
use vcone::compression::{compress, reconstruct, verify_scheme_with, SchemeContext};
use vcone::concept::{
    f_representation, patterns, quotient_indistinguishable, shatters, true_error_uniform,
    vc_dimension, empirical_loss,
};
use vcone::erm::{
    bad_erm, build_ordinal_class, fubini_check, OrdinalClassConfig, SegmentConvention,
};
use vcone::structure::{
    build_order, find_incomparable, is_initial_segment, structure_certificate, verify_partial_order,
    verify_tree_order, OrderRelation, OrderViolation,
};
use vcone::{ConceptClass, Domain, Hypothesis, LabeledSample};

fn arb_class(max_n: usize, max_h: usize) -> impl Strategy<Value = ConceptClass> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(prop::collection::vec(any::<bool>(), n), 1..=max_h).prop_map(move |rows| {
            ConceptClass::new(Domain::numbered(n).unwrap(), rows.into_iter().map(Hypothesis::from_bits)).unwrap()
        })
    })
}

/// A random forest on `n` nodes: node `i` picks a parent among `0..i` or none,
/// then nodes are relabeled by a random permutation.
fn arb_forest(max_n: usize) -> impl Strategy<Value = Vec<Option<usize>>> {
    (1..=max_n).prop_flat_map(|n| {
        (
            prop::collection::vec(any::<prop::sample::Index>(), n),
            prop::collection::vec(any::<bool>(), n),
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        )
            .prop_map(move |(picks, roots, perm)| {
                let mut parents = vec![None; n];
                for i in 1..n {
                    if !roots[i] {
                        parents[perm[i]] = Some(perm[picks[i].index(i)]);
                    }
                }
                parents
            })
    })
}

fn arb_tree_class(max_n: usize) -> impl Strategy<Value = ConceptClass> {
    arb_forest(max_n).prop_flat_map(|parents| {
        let n = parents.len();
        (
            Just(parents),
            prop::collection::vec(0..n, 0..=2 * n),
            prop::collection::vec(any::<bool>(), n),
        )
            .prop_map(|(parents, tops, f)| tree_class(&parents, &tops, &Hypothesis::from_bits(f)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn shattering_is_monotone(c in arb_class(6, 24), mask in 0u32..64, sub in 0u32..64) {
        let a: Vec<usize> = (0..c.n()).filter(|&i| mask >> i & 1 == 1).collect();
        let b: Vec<usize> = a.iter().copied().filter(|&i| sub >> i & 1 == 1).collect();
        if shatters(&c, &a).unwrap() {
            prop_assert!(shatters(&c, &b).unwrap());
        }
    }

    #[test]
    fn representation_preserves_dimension(c in arb_class(6, 20), fbits in prop::collection::vec(any::<bool>(), 6)) {
        let f = Hypothesis::from_bits(fbits.into_iter().take(c.n()));
        let rep = f_representation(&c, &f).unwrap();
        prop_assert_eq!(vc_dimension(&rep), vc_dimension(&c));
        prop_assert_eq!(f_representation(&rep, &f).unwrap(), c);
    }

    #[test]
    fn vc_dimension_matches_oracle(c in arb_class(8, 40)) {
        prop_assert_eq!(vc_dimension(&c), brute_vc(&c));
    }

    #[test]
    fn patterns_match_oracle(c in arb_class(6, 20), mask in 0u32..64) {
        let a: Vec<usize> = (0..c.n()).filter(|&i| mask >> i & 1 == 1).collect();
        let mask = a.iter().fold(0u32, |m, &i| m | 1 << i);
        prop_assert_eq!(patterns(&c, &a).unwrap().len(), brute_pattern_count(&c, mask));
    }

    #[test]
    fn sauer_bound_at_dimension_one(c in arb_tree_class(8), mask in 0u32..256) {
        prop_assume!(vc_dimension(&c) <= 1);
        let a: Vec<usize> = (0..c.n()).filter(|&i| mask >> i & 1 == 1).collect();
        prop_assert!(patterns(&c, &a).unwrap().len() <= a.len() + 1);
        let (_, reduced) = quotient_indistinguishable(&c);
        prop_assert!(reduced.len() <= c.n() + 1);
    }

    #[test]
    fn quotient_is_idempotent_and_preserves_dimension(c in arb_class(7, 16)) {
        let (_, reduced) = quotient_indistinguishable(&c);
        let (again, same) = quotient_indistinguishable(&reduced);
        prop_assert!(again.is_identity());
        prop_assert_eq!(&same, &reduced);
        prop_assert_eq!(vc_dimension(&reduced), vc_dimension(&c));
    }

    #[test]
    fn order_is_a_partial_order_for_any_class(c in arb_class(6, 24), pick in any::<prop::sample::Index>()) {
        // build_order needs points separated in the representation
        let f = c.hypotheses()[pick.index(c.len())].clone();
        let (q, _) = quotient_indistinguishable(&f_representation(&c, &f).unwrap());
        let reps = q.representatives();
        let reduced = c.restrict_points(&reps).unwrap();
        let order = build_order(&reduced, &f.restrict(&reps)).unwrap();
        prop_assert_eq!(verify_partial_order(&order), Ok(()));
    }

    #[test]
    fn certificate_agrees_with_oracle(c in arb_class(7, 12)) {
        let cert = structure_certificate(&c, None).unwrap();
        prop_assert_eq!(cert.is_tree(), brute_vc(&c) <= 1);
        if let Some(w) = cert.witness() {
            prop_assert!(w.is_valid());
            prop_assert!(shatters(&c, &[w.y, w.z]).unwrap());
        }
    }

    #[test]
    fn tree_classes_certify(c in arb_tree_class(10)) {
        prop_assert!(brute_vc(&c) <= 1);
        let cert = structure_certificate(&c, None).unwrap();
        let tree = cert.tree().expect("tree classes have VC dimension at most 1");
        prop_assert_eq!(verify_partial_order(tree.order()), Ok(()));
        prop_assert_eq!(verify_tree_order(tree.order()), Ok(()));
        for h in c.hypotheses() {
            let set = tree.disagreement_set(h);
            prop_assert!(is_initial_segment(&set, tree.order()));
            prop_assert_eq!(find_incomparable(&set, tree.order()), None);
        }
    }

    #[test]
    fn certificate_under_any_member(c in arb_tree_class(8), pick in any::<prop::sample::Index>()) {
        let f = c.hypotheses()[pick.index(c.len())].clone();
        prop_assert!(structure_certificate(&c, Some(&f)).unwrap().is_tree());
    }

    /// Claims 1 and 2 in their valid form: principal down-sets of a tree
    /// order never shatter a pair.
    #[test]
    fn principal_down_sets_have_dimension_one(parents in arb_forest(10), tops in prop::collection::vec(any::<prop::sample::Index>(), 1..16)) {
        let n = parents.len();
        let order = OrderRelation::from_parents(&parents);
        prop_assert_eq!(verify_tree_order(&order), Ok(()));
        let tops: Vec<usize> = tops.iter().map(|t| t.index(n)).collect();
        let c = tree_class(&parents, &tops, &Hypothesis::zeros(n));
        for h in c.hypotheses() {
            let set: Vec<usize> = h.support().collect();
            prop_assert!(is_initial_segment(&set, &order));
        }
        prop_assert!(brute_vc(&c) <= 1);
    }

    #[test]
    fn compression_round_trip(c in arb_tree_class(9), pick in any::<prop::sample::Index>(), mask in any::<u16>()) {
        let ctx = SchemeContext::new(&c, None).unwrap();
        let h = &c.hypotheses()[pick.index(c.len())];
        let points: Vec<usize> = (0..c.n()).filter(|&i| mask >> i & 1 == 1).collect();
        let sample = LabeledSample::labeled_by(h, &points);
        let compressed = compress(&sample, &ctx).unwrap();
        prop_assert!(compressed.len() <= 1);
        if let Some(x) = compressed.point() {
            prop_assert!(points.contains(&x));
        }
        prop_assert_eq!(compress(&sample.reversed(), &ctx).unwrap(), compressed);
        let g = reconstruct(&compressed, &ctx).unwrap();
        prop_assert!(sample.is_consistent_with(&g));
        let set = ctx.certificate().disagreement_set(&g);
        prop_assert!(is_initial_segment(&set, ctx.certificate().order()));
    }

    #[test]
    fn compression_survives_shuffles(c in arb_tree_class(8), pick in any::<prop::sample::Index>(), order in Just((0..8usize).collect::<Vec<_>>()).prop_shuffle()) {
        let ctx = SchemeContext::new(&c, None).unwrap();
        let h = &c.hypotheses()[pick.index(c.len())];
        let points: Vec<usize> = order.into_iter().filter(|&p| p < c.n()).collect();
        let mut sorted = points.clone();
        sorted.sort();
        let a = compress(&LabeledSample::labeled_by(h, &points), &ctx).unwrap();
        let b = compress(&LabeledSample::labeled_by(h, &sorted), &ctx).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn exhaustive_audit_on_random_tree_classes(c in arb_tree_class(7)) {
        let report = verify_scheme_with(&SchemeContext::new(&c, None).unwrap(), c.n()).unwrap();
        prop_assert!(report.passed(), "{:?}", report.failure);
    }

    #[test]
    fn ordinal_erm_identities(ranks in (1usize..=30).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle()),
                              picks in prop::collection::vec(any::<prop::sample::Index>(), 1..20)) {
        let cfg = OrdinalClassConfig::new(ranks).unwrap();
        let n = cfg.n();
        let points: Vec<usize> = picks.iter().map(|p| p.index(n)).collect();
        let target = Hypothesis::ones(n);
        let sample = LabeledSample::labeled_by(&target, &points);
        let h = bad_erm(&sample, &cfg, SegmentConvention::Closed).unwrap();
        prop_assert!(build_ordinal_class(&cfg).contains(&h));
        prop_assert_eq!(empirical_loss(&h, &sample).unwrap(), num::BigRational::from_integer(0.into()));
        let top = points.iter().map(|&p| cfg.rank(p)).max().unwrap();
        prop_assert_eq!(
            true_error_uniform(&h, &target).unwrap(),
            num::BigRational::new(((n - top) as i64).into(), (n as i64).into())
        );
    }

    #[test]
    fn fubini_is_exact(ranks in (1usize..=60).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())) {
        let cfg = OrdinalClassConfig::new(ranks).unwrap();
        let n = cfg.n() as i64;
        let r = fubini_check(&cfg);
        let half = num::BigRational::new((n - 1).into(), (2 * n).into());
        prop_assert_eq!(&r.row_mean, &half);
        prop_assert_eq!(&r.col_mean, &half);
        prop_assert_eq!(r.pair_count as i64, n * (n - 1) / 2);
    }
}

#[test]
fn nested_sets_give_a_chain() {
    // Claim 1 special case: nested sets, f the smallest one.
    let c = common::class(&["00000", "10000", "11000", "11100", "11110", "11111"]);
    let o = build_order(&c, &Hypothesis::zeros(5)).unwrap();
    assert_eq!(o, OrderRelation::chain(&[0, 1, 2, 3, 4]));
    for h in c.hypotheses() {
        assert!(is_initial_segment(&h.support().collect::<Vec<_>>(), &o));
    }
}

#[test]
fn down_closed_alone_is_not_sufficient() {
    // Antichain order: every set is down-closed, yet the full power set
    // shatters everything.
    let order = OrderRelation::identity(3);
    assert_eq!(verify_tree_order(&order), Ok(()));
    let full = ConceptClass::enumerate_all(3).unwrap().last().unwrap();
    assert_eq!(full.len(), 8);
    for h in full.hypotheses() {
        assert!(is_initial_segment(&h.support().collect::<Vec<_>>(), &order));
    }
    assert_eq!(vc_dimension(&full), 3);
}

#[test]
fn full_relation_is_not_antisymmetric() {
    assert_eq!(
        verify_partial_order(&OrderRelation::full(2)),
        Err(OrderViolation::NotAntisymmetric(0, 1))
    );
}
