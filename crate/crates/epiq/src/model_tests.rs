use crate::formula::{parse, print, Formula};
use crate::model::*;
use std::collections::BTreeSet;

pub fn investor_broker() -> AwarenessStructure {
    let text = include_str!("../fixtures/investor_broker.json");
    AwarenessStructure::from_json_str(text).expect("fixture loads")
}

#[test]
fn fixture_loads_and_validates() {
    let m = investor_broker();
    assert!(m.validate().is_empty());
    assert_eq!(m.n_states(), 1);
    assert_eq!(m.aware_set(1, 0).len(), 2);
    assert_eq!(m.aware_set(2, 0).len(), 5);
    assert!(m.pi(0, "p") && m.pi(0, "q"));
    assert!(!m.pi(0, "unlisted"));
}

#[test]
fn load_rejects_non_sentence_awareness() {
    let text = r#"{
      "agents": 2, "states": ["s"], "vocab": ["p"],
      "pi": {}, "rel": {},
      "aware": {"1": {"s": ["A2 ?x"]}}
    }"#;
    let err = AwarenessStructure::from_json_str(text).unwrap_err();
    assert!(err.to_string().contains("not a sentence"), "{err}");
}

#[test]
fn load_rejects_dangling_state() {
    let text = r#"{
      "agents": 1, "states": ["s"], "vocab": [],
      "pi": {}, "rel": {"1": [["s", "t"]]}, "aware": {}
    }"#;
    let err = AwarenessStructure::from_json_str(text).unwrap_err();
    assert!(err.to_string().contains("unknown state"), "{err}");
}

#[test]
fn json_roundtrip() {
    let m = investor_broker();
    let m2 = AwarenessStructure::from_json_str(&m.to_json_string()).unwrap();
    assert_eq!(m, m2);
}

#[test]
fn rel_class_examples() {
    // {(s,s)} on a single state: reflexive, transitive, Euclidean.
    let m = investor_broker();
    assert_eq!(m.rel_class(1), RelClass { r: true, t: true, e: true });

    // {(s,t)} on two states: transitive vacuously, not reflexive, not
    // Euclidean ((s,t),(s,t) forces (t,t)).
    let mut m = AwarenessStructure::empty(1, vec!["s".into(), "t".into()], vec![]);
    m.rel[0][0].insert(1);
    assert_eq!(m.rel_class(1), RelClass { r: false, t: true, e: false });

    // Universal relation.
    let mut m = AwarenessStructure::empty(1, vec!["s".into(), "t".into()], vec![]);
    for u in 0..2 {
        for v in 0..2 {
            m.rel[0][u].insert(v);
        }
    }
    assert_eq!(m.rel_class(1), RelClass { r: true, t: true, e: true });
}

#[test]
fn rel_class_brute_force_agreement() {
    // Check the three definitions against direct quantifier expansion on
    // every relation over 2 states and a sample over 3 states.
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(3);
    let mut cases: Vec<(usize, Vec<(usize, usize)>)> = Vec::new();
    for bits in 0..16u32 {
        let pairs = (0..4).filter(|i| bits & (1 << i) != 0).map(|i| (i / 2, i % 2)).collect();
        cases.push((2, pairs));
    }
    for _ in 0..200 {
        let pairs = (0..9)
            .filter(|_| rng.gen_bool(0.4))
            .map(|i| (i / 3, i % 3))
            .collect();
        cases.push((3, pairs));
    }
    for (n, pairs) in cases {
        let names = (0..n).map(|i| format!("s{i}")).collect();
        let mut m = AwarenessStructure::empty(1, names, vec![]);
        for (u, v) in &pairs {
            m.rel[0][*u].insert(*v);
        }
        let has = |u: usize, v: usize| pairs.contains(&(u, v));
        let r = (0..n).all(|s| has(s, s));
        let t = (0..n).all(|s| {
            (0..n).all(|u| (0..n).all(|v| !(has(s, u) && has(u, v)) || has(s, v)))
        });
        let e = (0..n).all(|s| {
            (0..n).all(|u| (0..n).all(|v| !(has(s, u) && has(s, v)) || has(u, v)))
        });
        assert_eq!(m.rel_class(1), RelClass { r, t, e }, "pairs {pairs:?}");
    }
}

#[test]
fn knows_aware_exact() {
    let m = investor_broker();
    let rep = m.check_awareness_property(AwarenessProperty::KnowsAware, None);
    assert!(rep.holds);

    let mut m = AwarenessStructure::empty(1, vec!["s".into(), "t".into()], vec!["p".into()]);
    m.rel[0][0].insert(1);
    m.aware[0][0].insert(Formula::prop("p"));
    let rep = m.check_awareness_property(AwarenessProperty::KnowsAware, None);
    assert!(!rep.holds);
    assert_eq!(rep.witness.as_ref().unwrap().state, "s");
}

#[test]
fn closed_exists_fails_with_pinned_witness() {
    let m = investor_broker();
    let rep = m.check_awareness_property(AwarenessProperty::ClosedExists, None);
    assert!(!rep.holds);
    let w = rep.witness.unwrap();
    assert_eq!(w.agent, 2);
    assert_eq!(w.member.as_deref(), Some("A2 q & !A1 q"));
    assert_eq!(w.missing.as_deref(), Some("exists ?x . (A2 ?x & !A1 ?x)"));
}

#[test]
fn empty_awareness_is_weakly_generated_but_not_generated() {
    let m = AwarenessStructure::empty(2, vec!["s".into()], vec!["p".into()]);
    assert!(m.check_awareness_property(AwarenessProperty::WeakGpp, Some(4)).holds);
    let rep = m.check_awareness_property(AwarenessProperty::Gpp, Some(4));
    assert!(!rep.holds);
    // The forcing witness is a proposition-free formula (vacuously generated).
    let missing = rep.witness.unwrap().missing.unwrap();
    let f = parse(&missing).unwrap();
    assert!(f.props().is_empty(), "witness should be proposition-free: {missing}");
}

#[test]
fn gpp_closure_satisfies_gpp_and_consequences() {
    let mut m = AwarenessStructure::empty(2, vec!["s".into()], vec!["p".into(), "q".into()]);
    m.aware[0][0].insert(Formula::prop("p"));
    m.aware[1][0].insert(Formula::prop("p"));
    m.aware[1][0].insert(Formula::prop("q"));
    let b = 4;
    m.close_gpp(b);
    assert!(m.check_awareness_property(AwarenessProperty::Gpp, Some(b)).holds);
    // gpp implies weak gpp and closure under existential quantification.
    assert!(m.check_awareness_property(AwarenessProperty::WeakGpp, Some(b)).holds);
    assert!(m.check_awareness_property(AwarenessProperty::ClosedExists, Some(b)).holds);
}

#[test]
fn weak_gpp_fails_on_fixture() {
    let m = investor_broker();
    // ¬A1 q is in A_2(s) but A1 q is not: the negation biconditional fails.
    let rep = m.check_awareness_property(AwarenessProperty::WeakGpp, None);
    assert!(!rep.holds);
}

#[test]
fn enumerate_sentences_shapes() {
    let props: BTreeSet<String> = ["p".to_string()].into_iter().collect();
    let qf = enumerate_sentences(&props, 1, 3, false);
    // size 1: p; size 2: !p, K1 p, A1 p, X1 p; size 3: 16 unary-over-size-2
    // plus p&p.
    assert_eq!(qf.iter().filter(|f| f.size() == 1).count(), 1);
    assert_eq!(qf.iter().filter(|f| f.size() == 2).count(), 4);
    assert!(qf.iter().all(|f| f.is_sentence() && f.is_quantifier_free()));

    let q = enumerate_sentences(&props, 1, 3, true);
    assert!(q.contains(&parse("forall ?x . ?x").unwrap()));
    assert!(q.iter().all(|f| f.is_sentence()));
    // No duplicates.
    let set: BTreeSet<&Formula> = q.iter().collect();
    assert_eq!(set.len(), q.len());
    let _ = print(&q[0]);
}
