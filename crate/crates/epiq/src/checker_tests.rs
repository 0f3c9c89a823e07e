use crate::checker::*;
use crate::formula::{parse, Formula, ValuationSyn};
use crate::model::AwarenessStructure;

fn fixture() -> AwarenessStructure {
    AwarenessStructure::from_json_str(include_str!("../fixtures/investor_broker.json")).unwrap()
}

#[test]
fn base_clauses_on_fixture() {
    let m = fixture();
    let f = parse("X1 p & X2 p & X2 q & !X1 q & X2 (A2 q & !A1 q)").unwrap();
    assert!(eval_base(&m, 0, &f));
    assert!(eval_base(&m, 0, &parse("p | !p").unwrap()));
}

#[test]
fn vacuous_knowledge_at_dead_end() {
    let mut m = AwarenessStructure::empty(1, vec!["s".into()], vec!["p".into()]);
    // No successors: K1 of anything is vacuously true.
    m.pi[0].clear();
    assert!(eval_base(&m, 0, &parse("K1 p").unwrap()));
    assert!(eval_base(&m, 0, &parse("K1 !p").unwrap()));
}

#[test]
fn realizable_profiles_one_state() {
    let mut m = AwarenessStructure::empty(1, vec!["s".into()], vec!["p".into()]);
    m.pi[0].insert("p".into());
    let mut ev = Evaluator::new(&m);
    let profiles: Vec<u64> = ev.realizable_profiles().keys().copied().collect();
    assert_eq!(profiles, vec![0b0, 0b1]);
}

#[test]
fn realizable_profiles_two_states_universal() {
    let mut m = AwarenessStructure::empty(1, vec!["s".into(), "t".into()], vec!["p".into()]);
    m.pi[0].insert("p".into());
    for u in 0..2 {
        for v in 0..2 {
            m.rel[0][u].insert(v);
        }
    }
    let mut ev = Evaluator::new(&m);
    let profiles: Vec<u64> = ev.realizable_profiles().keys().copied().collect();
    assert_eq!(profiles, vec![0b00, 0b01, 0b10, 0b11]);
    // Representatives realize their profiles; set closed under complement.
    let reps: Vec<(u64, Formula)> =
        ev.realizable_profiles().iter().map(|(p, f)| (*p, f.clone())).collect();
    for (p, f) in reps {
        assert_eq!(ev.profile_of(&f), p);
        assert!(ev.realizable_profiles().contains_key(&(!p & 0b11)));
    }
}

#[test]
fn exact_quantifier_examples_on_fixture() {
    let m = fixture();
    let mut ev = Evaluator::new(&m);
    let v = ValuationSyn::new();
    assert!(ev.eval_exact(0, &v, &parse("X1 (exists ?x . (A2 ?x & !A1 ?x))").unwrap()));
    assert!(ev.eval_exact(0, &v, &parse("!X2 (exists ?x . (A2 ?x & !A1 ?x))").unwrap()));
    assert!(ev.eval_exact(0, &v, &parse("forall ?x . (?x | !?x)").unwrap()));
    // Witnessed by q.
    assert!(ev.eval_exact(0, &v, &parse("exists ?x . X2 (A2 ?x & !A1 ?x)").unwrap()));
    // The full worked-example conjunction.
    let f = parse(
        "X1 p & X2 p & X2 q & !X1 q & X2 (A2 q & !A1 q) & X1 (exists ?x . (A2 ?x & !A1 ?x))",
    )
    .unwrap();
    assert!(ev.eval_exact(0, &v, &f));
    // Not all sentences are in A_1(s): ∀x A1 x fails.
    assert!(!ev.eval_exact(0, &v, &parse("forall ?x . A1 ?x").unwrap()));
}

#[test]
fn sentence_truth_independent_of_valuation() {
    let m = fixture();
    let mut ev = Evaluator::new(&m);
    let f = parse("forall ?x . (A1 ?x -> A2 ?x)").unwrap();
    let v1 = ValuationSyn::new();
    let v2 = ValuationSyn::new().with("x", parse("K1 (p & q)").unwrap());
    assert_eq!(ev.eval_exact(0, &v1, &f), ev.eval_exact(0, &v2, &f));
}

#[test]
fn free_formula_resolved_through_valuation() {
    let m = fixture();
    let mut ev = Evaluator::new(&m);
    let f = parse("A1 ?x").unwrap();
    let v_p = ValuationSyn::new().with("x", parse("p").unwrap());
    let v_q = ValuationSyn::new().with("x", parse("q").unwrap());
    assert!(ev.eval_exact(0, &v_p, &f));
    assert!(!ev.eval_exact(0, &v_q, &f));
}

#[test]
fn oracle_examples() {
    let m = fixture();
    let mut ev = Evaluator::new(&m);
    let v = ValuationSyn::new();
    match ev.eval_oracle(0, &v, &parse("forall ?x . A1 ?x").unwrap(), 50) {
        Verdict3::False { witness: Some(w) } => assert_eq!(w, Formula::prop("q")),
        other => panic!("expected False with witness q, got {other:?}"),
    }
    assert_eq!(ev.eval_oracle(0, &v, &parse("forall ?x . (?x | !?x)").unwrap(), 200), Verdict3::True);
}

#[test]
fn oracle_agrees_with_exact_on_fixture_formulas() {
    let m = fixture();
    let mut ev = Evaluator::new(&m);
    let v = ValuationSyn::new();
    let formulas = [
        "forall ?x . (A2 ?x -> ?x | !?x)",
        "exists ?x . (A2 ?x & !A1 ?x)",
        "forall ?x . (K1 ?x -> ?x)",
        "forall ?x . (X2 ?x -> K2 ?x)",
        "exists ?x . !A1 ?x",
        "forall ?x . exists ?y . (A2 ?y | ?x)",
    ];
    for text in formulas {
        let f = parse(text).unwrap();
        let exact = ev.eval_exact(0, &v, &f);
        if let Some(oracle) = ev.eval_oracle(0, &v, &f, 300).as_bool() {
            assert_eq!(exact, oracle, "disagreement on {text}");
        }
    }
}

#[test]
fn axiom_instances_on_fixture() {
    let m = fixture();
    let mut ev = Evaluator::new(&m);
    // A0: explicit knowledge is implicit knowledge plus awareness.
    assert!(ev.valid_in_structure(&parse("X1 p <-> K1 p & A1 p").unwrap()));
    // Barcan instance.
    assert!(ev.valid_in_structure(&parse("(forall ?x . K1 ?x) -> K1 (forall ?x . ?x)").unwrap()));
    // T (relation is reflexive here).
    assert!(ev.valid_in_structure(&parse("K1 p -> p").unwrap()));
}

#[test]
fn knowledge_of_unawareness_without_witness() {
    // Two states; agent 1 considers both possible. In each state agent 2 is
    // aware of something agent 1 is not, but the formula differs per state:
    // K1 ∃x(A2x ∧ ¬A1x) holds while ∃x K1(A2x ∧ ¬A1x) fails.
    let text = r#"{
      "agents": 2,
      "states": ["s", "t"],
      "vocab": ["p", "q"],
      "pi": { "s": ["p", "q"], "t": ["p", "q"] },
      "rel": { "1": [["s","s"],["s","t"],["t","s"],["t","t"]],
               "2": [["s","s"],["t","t"]] },
      "aware": { "2": { "s": ["p"], "t": ["q"] } }
    }"#;
    let m = AwarenessStructure::from_json_str(text).unwrap();
    let mut ev = Evaluator::new(&m);
    let v = ValuationSyn::new();
    assert!(ev.eval_exact(0, &v, &parse("K1 (exists ?x . (A2 ?x & !A1 ?x))").unwrap()));
    assert!(!ev.eval_exact(0, &v, &parse("exists ?x . K1 (A2 ?x & !A1 ?x)").unwrap()));
}

#[test]
fn match_abstraction_cases() {
    let chi = parse("A2 ?x & !A1 ?x").unwrap();
    let alpha = parse("A2 q & !A1 q").unwrap();
    assert_eq!(match_abstraction(&chi, "x", &alpha), Some(Formula::prop("q")));
    // Inconsistent bindings fail.
    let alpha = parse("A2 q & !A1 p").unwrap();
    assert_eq!(match_abstraction(&chi, "x", &alpha), None);
    // Multi-variable wildcard match binds x consistently.
    let chi = parse("?x & ?y").unwrap();
    let alpha = parse("!p & q").unwrap();
    assert_eq!(match_abstraction(&chi, "x", &alpha), Some(parse("!p").unwrap()));
}
