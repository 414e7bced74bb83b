use std::collections::{BTreeSet, HashMap};

use proptest::prelude::*;

use super::*;
use crate::group::{Element, GeneratingSet, Group};
use crate::DEFAULT_BALL_CAP;

fn f2() -> Group {
    Group::free(2)
}

fn el(g: &Group, s: &str) -> Element {
    g.parse_element(s).unwrap()
}

fn ball(g: &Group, r: usize) -> Vec<Element> {
    g.ball(&g.standard_generators(), r, DEFAULT_BALL_CAP).unwrap()
}

fn word_table(g: &Group, r: usize) -> LengthTable {
    word_length_table(g, &g.standard_generators(), r, DEFAULT_BALL_CAP).unwrap()
}

/// Shortest word over `gens` evaluating to `target`, by listing every word
/// of length at most `n`.
fn shortest_word(g: &Group, gens: &[Element], target: &Element, n: usize) -> Option<usize> {
    let mut words = vec![g.identity()];
    for len in 0..=n {
        if words.contains(target) {
            return Some(len);
        }
        words = words
            .iter()
            .flat_map(|w| gens.iter().map(move |x| g.mul(w, x)))
            .collect();
    }
    None
}

#[test]
fn constant_table_is_a_length_function() {
    let g = f2();
    let t = LengthTable::constant(&g, ball(&g, 3), 3).unwrap();
    assert!(validate_length_axioms(&t).is_valid());
}

#[test]
fn word_length_tables_satisfy_axioms() {
    for g in [f2(), Group::vc(), Group::cyclic(6), Group::ab_torsion(1)] {
        let t = word_table(&g, 4);
        let report = validate_length_axioms(&t);
        assert!(report.is_valid(), "{:?}", report.violations);
        assert!(report.checked_pairs > 0);
    }
}

#[test]
fn asymmetric_table_reports_l2() {
    let g = f2();
    let a = el(&g, "a");
    let entries = vec![
        (g.identity(), LengthValue::Exact(0)),
        (a.clone(), LengthValue::Exact(1)),
        (g.inverse(&a), LengthValue::Exact(2)),
    ];
    let t = LengthTable::new(&g, entries, 0).unwrap();
    let report = validate_length_axioms(&t);
    assert!(report
        .violations
        .iter()
        .any(|v| matches!(v, Violation::L2 { element, .. } if *element == a)));
}

#[test]
fn zero_off_identity_and_missing_inverse_are_reported() {
    let g = f2();
    let entries = vec![
        (g.identity(), LengthValue::Exact(0)),
        (el(&g, "a b"), LengthValue::Exact(0)),
    ];
    let t = LengthTable::new(&g, entries, 0).unwrap();
    let report = validate_length_axioms(&t);
    assert!(report.violations.iter().any(|v| matches!(v, Violation::L1 { .. })));
    assert!(report
        .violations
        .iter()
        .any(|v| matches!(v, Violation::MissingInverse { .. })));
}

#[test]
fn triangle_violation_is_reported() {
    let g = Group::cyclic(4);
    let t = LengthTable::new(
        &g,
        [(0, 0), (1, 1), (2, 5), (3, 1)]
            .into_iter()
            .map(|(x, v)| (el(&g, &x.to_string()), LengthValue::Exact(v))),
        0,
    )
    .unwrap();
    let report = validate_length_axioms(&t);
    assert!(report
        .violations
        .iter()
        .any(|v| matches!(v, Violation::L3 { product, .. } if *product == el(&g, "2"))));
}

#[test]
fn capped_values_are_intervals_not_violations() {
    let g = Group::cyclic(4);
    let t = LengthTable::new(
        &g,
        vec![
            (el(&g, "0"), LengthValue::Exact(0)),
            (el(&g, "1"), LengthValue::Exact(1)),
            (el(&g, "3"), LengthValue::Exact(1)),
            (el(&g, "2"), LengthValue::Capped(1)),
        ],
        0,
    )
    .unwrap();
    assert!(validate_length_axioms(&t).is_valid());
}

#[test]
fn standard_weights_give_reduced_word_length() {
    let g = f2();
    let support = ["a", "a-1", "b", "b-1"].map(|s| (el(&g, s), 1));
    let w = WeightSpec::new(&g, support, DefaultRule::Constant(10)).unwrap();
    let x = el(&g, "a b a-1");
    let t = length_from_weight(&w, &[x.clone()], 20).unwrap();
    assert_eq!(t.get(&x), Some(LengthValue::Exact(3)));
}

#[test]
fn product_generator_shortens_b() {
    let g = f2();
    let support = ["a", "a-1", "a b", "b-1 a-1"].map(|s| (el(&g, s), 1));
    let w = WeightSpec::new(&g, support, DefaultRule::Constant(10)).unwrap();
    let b = el(&g, "b");
    let oracle = brute_force_length(&w, &b, 3, 10, &ball(&g, 2)).unwrap();
    assert_eq!(oracle, OracleValue::Min(2));
    let t = length_from_weight(&w, &[b.clone()], 20).unwrap();
    assert_eq!(t.exact(&b), Some(2));
}

#[test]
fn empty_support_is_constant() {
    for g in [f2(), Group::vc(), Group::cyclic(5)] {
        let w = WeightSpec::new(&g, [], DefaultRule::Constant(5)).unwrap();
        let dom = ball(&g, 2);
        let t = length_from_weight(&w, &dom, 100).unwrap();
        for (x, v) in t.entries() {
            let want = if g.is_identity(x) { 0 } else { 5 };
            assert_eq!(v, LengthValue::Exact(want), "{x}");
        }
    }
}

#[test]
fn oracle_base_cases() {
    let g = f2();
    let w = WeightSpec::new(&g, [], DefaultRule::Constant(7)).unwrap();
    assert_eq!(
        brute_force_length(&w, &g.identity(), 3, 10, &[]).unwrap(),
        OracleValue::Min(0)
    );
    assert_eq!(
        brute_force_length(&w, &el(&g, "a"), 3, 10, &ball(&g, 1)).unwrap(),
        OracleValue::Min(7)
    );
    assert_eq!(
        brute_force_length(&w, &el(&g, "a"), 3, 6, &ball(&g, 1)).unwrap(),
        OracleValue::NoDecomposition
    );
    assert!(brute_force_length(&w, &el(&g, "a"), 6, 10, &[]).is_err());
}

#[test]
fn capped_and_exact_modes() {
    let g = f2();
    let w = WeightSpec::new(&g, [], DefaultRule::Constant(5)).unwrap();
    let a = el(&g, "a");
    let t = length_from_weight(&w, &[a.clone()], 3).unwrap();
    assert_eq!(t.get(&a), Some(LengthValue::Capped(3)));
    assert!(matches!(
        length_from_weight_exact(&w, &[a], 3),
        Err(crate::Error::CapTooSmall { .. })
    ));
}

#[test]
fn support_above_constant_default_is_rejected() {
    let g = f2();
    let support = ["a", "a-1"].map(|s| (el(&g, s), 9));
    assert!(matches!(
        WeightSpec::new(&g, support, DefaultRule::Constant(4)),
        Err(crate::Error::SupportExceedsDefault { .. })
    ));
    assert!(WeightSpec::new(&g, [(el(&g, "a"), 1)], DefaultRule::Constant(4)).is_err());
}

#[test]
fn word_length_examples() {
    let g = f2();
    assert_eq!(word_table(&g, 3).exact(&el(&g, "a b")), Some(2));

    let vc = Group::vc();
    let t = word_table(&vc, 4);
    let target = el(&vc, "a^2 b");
    let gens = vc.standard_generators();
    assert_eq!(shortest_word(&vc, gens.elements(), &target, 4), Some(3));
    assert_eq!(t.exact(&target), Some(3));

    let c4 = Group::cyclic(4);
    let x = GeneratingSet::new(&c4, vec![el(&c4, "1")]).unwrap();
    let t = word_length_table(&c4, &x, 4, 100).unwrap();
    assert_eq!(t.exact(&el(&c4, "2")), Some(2));
    assert_eq!(t.len(), 4);
}

#[test]
fn vc_word_length_matches_word_listing() {
    let vc = Group::vc();
    let gens = vc.standard_generators();
    let t = word_table(&vc, 3);
    for (x, v) in t.entries() {
        assert_eq!(
            shortest_word(&vc, gens.elements(), x, 3).map(|n| n as u64),
            v.exact(),
            "{x}"
        );
    }
}

fn standard_f() -> (Group, LengthTable, Vec<Element>) {
    let g = f2();
    let t = word_table(&g, 5);
    let f: Vec<Element> = ["1", "a", "a-1", "b", "b-1"].iter().map(|s| el(&g, s)).collect();
    (g, t, f)
}

#[test]
fn weight_from_window_agrees_and_is_bounded() {
    let (g, base, f) = standard_f();
    let w = wm_construction(&base, &f, DefaultRule::Constant(2)).unwrap();
    let dom = ball(&g, 4);
    let t = length_from_weight_exact(&w, &dom, 10).unwrap();
    let window = WindowConstraint::new(base, f).unwrap();
    assert!(window.admits(&t).unwrap());
    assert!(t.entries().all(|(_, v)| v.lower() <= 2));
    assert!(validate_length_axioms(&t).is_valid());
}

#[test]
fn ramp_from_window_is_proper_on_the_ball() {
    let (g, base, f) = standard_f();
    let w = wm_construction(&base, &f, DefaultRule::ProperRamp(2)).unwrap();
    let t4 = length_from_weight(&w, &ball(&g, 4), 6).unwrap();
    let window = WindowConstraint::new(base.clone(), f).unwrap();
    assert!(window.admits(&t4).unwrap());
    assert!(validate_length_axioms(&t4).is_valid());
    // Elements of length at most 3 inside the radius-4 ball already lie in
    // the radius-3 ball: low levels do not keep growing with the radius.
    for (x, v) in t4.entries() {
        if v.lower() <= 3 {
            assert!(base.exact(x).unwrap() <= 3, "{x}");
        }
    }
}

#[test]
fn ramp_precondition_allows_equality() {
    let (_, base, f) = standard_f();
    assert!(wm_construction(&base, &f, DefaultRule::ProperRamp(1)).is_ok());
    assert!(matches!(
        wm_construction(&base, &f, DefaultRule::ProperRamp(0)),
        Err(crate::Error::DefaultTooSmall { .. })
    ));
    assert!(matches!(
        wm_construction(&base, &f, DefaultRule::Constant(1)),
        Err(crate::Error::DefaultTooSmall { default: 1, max_on_f: 1 })
    ));
}

#[test]
fn trivial_window_gives_pure_default() {
    let g = f2();
    let base = word_table(&g, 3);
    let w = wm_construction(&base, &[g.identity()], DefaultRule::Constant(4)).unwrap();
    assert!(w.support().is_empty());
    let t = length_from_weight(&w, base.domain(), 10).unwrap();
    assert!(t
        .entries()
        .all(|(x, v)| v.exact() == Some(if g.is_identity(x) { 0 } else { 4 })));
}

#[test]
fn window_input_errors() {
    let g = f2();
    let base = word_table(&g, 1);
    let far = el(&g, "a2");
    assert!(matches!(
        wm_construction(&base, &[g.identity(), far], DefaultRule::Constant(4)),
        Err(crate::Error::InsufficientDomain { .. })
    ));
    assert!(wm_construction(&base, &[el(&g, "a")], DefaultRule::Constant(4)).is_err());
    assert!(wm_construction(&base, &[g.identity(), el(&g, "a")], DefaultRule::Constant(4)).is_err());
}

#[test]
fn ramp_indices_pair_inverses() {
    let g = f2();
    let w = WeightSpec::new(&g, [], DefaultRule::ProperRamp(10)).unwrap();
    let up = w.elements_up_to(12).unwrap();
    // Layer 1 sorted is a, a-1, b, b-1: pairs {a, a-1} and {b, b-1}.
    let got: Vec<(String, u64)> = up.iter().map(|(e, w)| (e.to_string(), *w)).collect();
    assert_eq!(
        got,
        vec![
            ("a1".to_string(), 11),
            ("a-1".to_string(), 11),
            ("b1".to_string(), 12),
            ("b-1".to_string(), 12)
        ]
    );
    for (e, wt) in &up {
        assert_eq!(w.weight(e).unwrap(), *wt);
    }
}

#[test]
fn conjugation_by_identity_is_trivial() {
    let g = f2();
    let t = word_table(&g, 3);
    let c = conjugate_length(&g.identity(), &t, None).unwrap();
    assert!(c.dropped.is_empty());
    for (x, v) in t.entries() {
        assert_eq!(c.table.get(x), Some(v));
    }
}

#[test]
fn conjugated_word_length_is_word_length_of_conjugated_set() {
    let g = f2();
    let a = el(&g, "a");
    let big = word_table(&g, 5);
    let b3 = ball(&g, 3);
    let c = conjugate_length(&a, &big, Some(&b3)).unwrap();
    assert!(c.dropped.is_empty());
    let x2: Vec<Element> = g
        .standard_generators()
        .elements()
        .iter()
        .map(|x| g.conj(x, &g.inverse(&a)))
        .collect();
    let x2 = GeneratingSet::new(&g, x2).unwrap();
    let other = word_length_table(&g, &x2, 5, DEFAULT_BALL_CAP).unwrap();
    for x in &b3 {
        assert_eq!(c.table.get(x), other.get(x), "{x}");
    }
}

#[test]
fn conjugation_reports_dropped_points() {
    let g = f2();
    let t = word_table(&g, 1);
    let out = ball(&g, 1);
    let c = conjugate_length(&el(&g, "b"), &t, Some(&out)).unwrap();
    // b^-1 a b etc. leave the radius-1 ball; only 1, b, b^-1 survive.
    assert_eq!(c.table.len(), 3);
    assert_eq!(c.dropped.len(), 2);
    assert!(matches!(
        conjugate_length(&el(&g, "b"), &t, Some(&[el(&g, "a")])),
        Err(crate::Error::EmptyDomain)
    ));
}

#[test]
fn reconstruction_examples() {
    let g = f2();
    let t = word_table(&g, 3);
    match reconstruct_word_length(&t) {
        Reconstruction::WordLength { generators } => {
            assert_eq!(generators, g.standard_generators().elements().to_vec())
        }
        other => panic!("{other:?}"),
    }
    let three = LengthTable::constant(&g, ball(&g, 2), 3).unwrap();
    assert!(matches!(
        reconstruct_word_length(&three),
        Reconstruction::NotWordLengthOnDomain { .. }
    ));
    let one = LengthTable::constant(&g, ball(&g, 2), 1).unwrap();
    match reconstruct_word_length(&one) {
        Reconstruction::WordLength { generators } => assert_eq!(generators.len(), 16),
        other => panic!("{other:?}"),
    }
}

#[test]
fn reconstructed_generators_reproduce_the_table() {
    for g in [f2(), Group::vc(), Group::ab_torsion(1)] {
        let t = word_table(&g, 3);
        let Reconstruction::WordLength { generators } = reconstruct_word_length(&t) else {
            panic!("word length rejected")
        };
        let x = GeneratingSet::new(&g, generators).unwrap();
        let again = word_length_table(&g, &x, 3, DEFAULT_BALL_CAP).unwrap();
        for (e, v) in t.entries() {
            assert_eq!(again.get(e), Some(v));
        }
    }
}

#[test]
fn lipschitz_examples() {
    let g = f2();
    let t = word_table(&g, 4);
    let one = LengthTable::constant(&g, t.domain().to_vec(), 1).unwrap();
    let first_four = t.entries().find(|(_, v)| v.exact() == Some(4)).unwrap().0.clone();
    assert_eq!(
        lipschitz_compare(&t, &one, 3).unwrap(),
        Comparison::WitnessAgainst {
            element: first_four,
            left: LengthValue::Exact(4),
            right: LengthValue::Exact(1)
        }
    );
    assert!(matches!(
        lipschitz_compare(&t, &t, 1).unwrap(),
        Comparison::BoundedByCOnDomain { compared: 160 }
    ));

    let (_, base, f) = standard_f();
    let w = wm_construction(&base, &f, DefaultRule::Constant(2)).unwrap();
    let bounded = length_from_weight(&w, t.domain(), 10).unwrap();
    assert!(matches!(
        lipschitz_compare(&bounded, &t, 2).unwrap(),
        Comparison::BoundedByCOnDomain { .. }
    ));
}

#[test]
fn table_json_round_trip() {
    let g = Group::vc();
    let mut entries: Vec<(Element, LengthValue)> = word_table(&g, 2).entries().map(|(e, v)| (e.clone(), v)).collect();
    entries.push((el(&g, "a^9"), LengthValue::Capped(4)));
    let t = LengthTable::new(&g, entries, 2).unwrap();
    let json = t.to_json();
    assert!(json.to_string().contains("{\"capped\":4}"));
    let back = LengthTable::from_json(&json.to_string()).unwrap();
    assert_eq!(back, t);
}

#[test]
fn weight_json_round_trip() {
    let g = f2();
    let w = WeightSpec::new(&g, [(el(&g, "a b"), 2), (el(&g, "b-1 a-1"), 2)], DefaultRule::ProperRamp(3)).unwrap();
    let json = w.to_json().to_string();
    assert!(json.contains("\"proper_ramp\":3"));
    assert_eq!(WeightSpec::from_json(&json).unwrap(), w);
}

/// Random symmetric support of at most three inverse pairs drawn from the
/// radius-2 ball of F2, with weights in `1..=m`.
fn support_strategy(m: u64) -> impl Strategy<Value = Vec<(usize, u64)>> {
    prop::collection::vec((1usize..17, 1..=m), 0..=3)
}

fn make_weight(g: &Group, picks: &[(usize, u64)], m: u64) -> Option<WeightSpec> {
    let b2 = ball(g, 2);
    let mut map: HashMap<Element, u64> = HashMap::new();
    for &(i, w) in picks {
        let e = b2[i].clone();
        if map.contains_key(&e) {
            continue;
        }
        map.insert(g.inverse(&e), w);
        map.insert(e, w);
    }
    WeightSpec::new(g, map, DefaultRule::Constant(m)).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closed_form_matches_oracle(m in 2u64..=6, picks in support_strategy(6)) {
        let g = f2();
        let Some(w) = make_weight(&g, &picks, m) else { return Ok(()) };
        let dom = ball(&g, 2);
        let t = length_from_weight(&w, &dom, 100).unwrap();
        prop_assert!(validate_length_axioms(&t).is_valid());
        for x in &dom {
            let fast = t.exact(x).unwrap();
            let o4 = brute_force_length(&w, x, 4, 100, &dom).unwrap();
            let o5 = brute_force_length(&w, x, 5, 100, &dom).unwrap();
            let OracleValue::Min(v4) = o4 else { panic!("single factor always decomposes") };
            prop_assert!(v4 >= fast, "oracle below engine at {}", x);
            if o4 == o5 {
                prop_assert_eq!(v4, fast, "at {}", x);
            }
            prop_assert!(fast <= w.weight(x).unwrap());
        }
    }

    #[test]
    fn raising_weights_never_lowers_length(m in 2u64..=6, picks in support_strategy(5), bump in 0u64..3) {
        let g = f2();
        let Some(w) = make_weight(&g, &picks, m) else { return Ok(()) };
        let heavier = WeightSpec::new(
            &g,
            w.support().iter().map(|(e, &x)| (e.clone(), (x + bump).min(m + bump))),
            DefaultRule::Constant(m + bump),
        ).unwrap();
        let dom = ball(&g, 3);
        let lo = length_from_weight(&w, &dom, 100).unwrap();
        let hi = length_from_weight(&heavier, &dom, 100).unwrap();
        for x in &dom {
            prop_assert!(lo.exact(x).unwrap() <= hi.exact(x).unwrap());
        }
    }

    #[test]
    fn action_laws(gi in 0usize..41, hi in 0usize..41, picks in support_strategy(4)) {
        let g = f2();
        let Some(w) = make_weight(&g, &picks, 4) else { return Ok(()) };
        let b3 = ball(&g, 3);
        let x = b3[gi].clone();
        let y = b3[hi].clone();
        let t = length_from_weight(&w, &ball(&g, 5), 100).unwrap();
        let out = ball(&g, 1);
        let id = conjugate_length(&g.identity(), &t, Some(&out)).unwrap();
        for p in &out {
            prop_assert_eq!(id.table.get(p), t.get(p));
        }
        let inner = conjugate_length(&y, &t, None).unwrap().table;
        let outer = conjugate_length(&x, &inner, Some(&out)).unwrap();
        let direct = conjugate_length(&g.mul(&x, &y), &t, Some(&out)).unwrap();
        let common: BTreeSet<&Element> = outer.table.domain().iter().collect();
        prop_assert!(common.contains(&g.identity()));
        for p in common {
            prop_assert_eq!(outer.table.get(p), direct.table.get(p));
        }
        prop_assert!(validate_length_axioms(&outer.table).is_valid());
    }
}
