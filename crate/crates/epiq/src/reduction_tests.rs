use crate::checker::Evaluator;
use crate::formula::{parse, Formula, ValuationSyn};
use crate::reduction::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use std::collections::HashMap;

fn rmodel(domain: &[&str], rel: &[(&str, &str)]) -> RModel {
    let mut m = RModel::new(domain.iter().map(|s| s.to_string()).collect());
    for (a, b) in rel {
        let da = m.domain.iter().position(|d| d == a).unwrap();
        let db = m.domain.iter().position(|d| d == b).unwrap();
        m.rel.insert((da, db));
    }
    m
}

#[test]
fn rformula_parse_and_display_roundtrip() {
    for text in [
        "forall x . exists y . R(x,y)",
        "exists x . R(x,x) & !R(x,x)",
        "forall x . (R(x,x) | !R(x,x)) & R(x,x)",
        "!(forall x . R(x,x))",
    ] {
        let f = parse_rformula(text).unwrap();
        let printed = f.to_string();
        assert_eq!(parse_rformula(&printed).unwrap(), f, "{text} -> {printed}");
    }
    // Quantifiers scope maximally rightward; & binds tighter than |.
    let f = parse_rformula("forall x . R(x,x) | R(x,x) & R(x,x)").unwrap();
    match f {
        RFormula::Forall(_, body) => assert!(matches!(*body, RFormula::Or(..))),
        other => panic!("expected forall at top, got {other}"),
    }
    assert!(parse_rformula("R(x)").is_err());
    assert!(parse_rformula("forall x R(x,x)").is_err());
    assert!(parse_rformula("R(x,y) garbage").is_err());
}

#[test]
fn nnf_pushes_negations_to_literals() {
    let f = parse_rformula("!(forall x . R(x,x) & !(exists y . R(x,y)))").unwrap();
    let g = nnf(&f);
    assert!(g.is_nnf());
    assert_eq!(g, parse_rformula("exists x . !R(x,x) | (exists y . R(x,y))").unwrap());
    // nnf is idempotent and preserves finite truth.
    assert_eq!(nnf(&g), g);
    let n = rmodel(&["a", "b"], &[("a", "b")]);
    for model in [&n] {
        let env = HashMap::new();
        assert_eq!(
            fo_eval(model, &env, &f).unwrap(),
            fo_eval(model, &env, &g).unwrap()
        );
    }
}

#[test]
fn fo_eval_examples() {
    let cycle = rmodel(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]);
    let env = HashMap::new();
    let serial = parse_rformula("forall x . exists y . R(x,y)").unwrap();
    assert!(fo_eval(&cycle, &env, &serial).unwrap());
    let refl = parse_rformula("exists x . R(x,x)").unwrap();
    assert!(!fo_eval(&cycle, &env, &refl).unwrap());
    let sym = parse_rformula("forall x . forall y . (!R(x,y) | R(y,x))").unwrap();
    assert!(!fo_eval(&cycle, &env, &sym).unwrap());
    assert!(matches!(
        fo_eval(&cycle, &env, &RFormula::r("u", "v")),
        Err(ReductionError::UnboundVar(_))
    ));
}

#[test]
fn rmodel_json_roundtrip() {
    let n = rmodel(&["a", "b"], &[("a", "b"), ("b", "b")]);
    let back = RModel::from_json_str(&n.to_json_string()).unwrap();
    assert_eq!(back.domain, n.domain);
    assert_eq!(back.rel, n.rel);
    assert!(RModel::from_json_str(r#"{"domain":["a"],"rel":[["a","z"]]}"#).is_err());
    assert!(RModel::from_json_str(r#"{"domain":[],"rel":[]}"#).is_err());
}

#[test]
fn t51_translation_shapes() {
    let lit = translate_t51(&parse_rformula("forall x . R(x,x)").unwrap()).unwrap();
    let expected = parse(
        "forall ?x . !K1 !((r & A1 (?x & q1)) & A1 (?x & q2))",
    )
    .unwrap();
    assert_eq!(lit, expected);
    // Negated literals carry !r in the same pattern.
    let neg = translate_t51(&nnf(&parse_rformula("!(exists x . R(x,x))").unwrap())).unwrap();
    assert!(neg.to_string().contains("!r"));
    // Non-nnf input is rejected.
    let raw = parse_rformula("!(exists x . R(x,x))").unwrap();
    assert_eq!(translate_t51(&raw).unwrap_err(), ReductionError::NotNnf);
    // The side condition has the guarded-pair shape.
    let sigma = sigma_t51();
    let printed = sigma.to_string();
    assert!(printed.starts_with("forall ?x1 . (forall ?x2 ."), "{printed}");
    assert!(printed.contains("A1 (?x1 & q1)"), "{printed}");
    assert!(printed.contains("A1 (?x2 & q2)"), "{printed}");
    assert!(sigma.is_sentence());
}

#[test]
fn lmap_representative_is_right_inverse() {
    let mut lmap = LMap::new(3);
    for d in 0..3 {
        let rep = lmap.representative(d);
        assert!(rep.is_quantifier_free() && rep.is_sentence());
        assert_eq!(lmap.class_of(&rep), Some(d));
    }
    // Formulas outside the enumerated language have no class.
    assert_eq!(lmap.class_of(&Formula::var("x")), None);
    assert_eq!(lmap.class_of(&parse("forall ?x . ?x").unwrap()), None);
}

#[test]
fn t51_structure_awareness_membership() {
    let n = rmodel(&["a", "b"], &[("a", "b")]);
    let mut m = build_mn_t51(&n);
    let s_ab = m.state(0, 1);
    let mut lmap = LMap::new(2);
    let rep_a = lmap.representative(0);
    let rep_b = lmap.representative(1);
    // At (a, b): aware of ψ∧q1 iff L(ψ)=a, and of ψ∧q2 iff L(ψ)=b.
    assert!(m.aware_member(s_ab, &Formula::and(rep_a.clone(), Formula::prop("q1"))));
    assert!(!m.aware_member(s_ab, &Formula::and(rep_b.clone(), Formula::prop("q1"))));
    assert!(m.aware_member(s_ab, &Formula::and(rep_b.clone(), Formula::prop("q2"))));
    assert!(!m.aware_member(s_ab, &Formula::and(rep_a, Formula::prop("q2"))));
    // Only the ψ∧qi shape is ever in an awareness set.
    assert!(!m.aware_member(s_ab, &Formula::prop("q1")));
    assert!(!m.aware_member(s_ab, &Formula::and(rep_b, Formula::prop("r"))));
    // r holds exactly at related pairs; every other proposition everywhere.
    assert!(quotient_eval(&mut m, s_ab, &parse("r & q1 & q2 & p").unwrap()));
    let s_ba = m.state(1, 0);
    assert!(!quotient_eval(&mut m, s_ba, &parse("r").unwrap()));
}

#[test]
fn t51_sigma_and_hand_equivalences() {
    let cycle = rmodel(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]);
    let cases = [
        ("forall x . exists y . R(x,y)", true),
        ("exists x . R(x,x)", false),
        ("forall x . forall y . (!R(x,y) | R(y,x))", false),
        ("exists x . exists y . R(x,y) & !R(y,x)", true),
    ];
    for (text, expected) in cases {
        let f = parse_rformula(text).unwrap();
        let report = check_equiv(&cycle, &f, Which::T51).unwrap();
        assert!(report.sigma, "sigma fails on {text}");
        assert_eq!(report.fo, expected, "fo wrong on {text}");
        assert!(report.agree, "t51 disagreement on {text}");
    }
}

#[test]
fn t52_translation_shapes() {
    // Single-agent variant mentions only agent 1.
    fn agents(f: &Formula, out: &mut std::collections::BTreeSet<u32>) {
        match f {
            Formula::Prop(_) | Formula::Var(_) => {}
            Formula::Not(g) | Formula::Forall(_, g) => agents(g, out),
            Formula::And(g, h) => {
                agents(g, out);
                agents(h, out);
            }
            Formula::K(i, g) | Formula::A(i, g) | Formula::X(i, g) => {
                out.insert(*i);
                agents(g, out);
            }
        }
    }
    let f = parse_rformula("forall x . exists y . R(x,y)").unwrap();
    let two = translate_t52(&f, 2).unwrap();
    let one = translate_t52(&f, 1).unwrap();
    let mut seen = std::collections::BTreeSet::new();
    agents(&two, &mut seen);
    assert_eq!(seen, [1, 2].into_iter().collect());
    seen.clear();
    agents(&one, &mut seen);
    assert_eq!(seen, [1].into_iter().collect());
    // Quantifiers are relativized to atomic.
    assert!(matches!(&two, Formula::Forall(..)));
    // Both detection diamonds sit inside the agent-1 diamond of a literal.
    let lit = translate_t52(&parse_rformula("forall x . forall y . R(x,y)").unwrap(), 2).unwrap();
    let printed = lit.to_string();
    let outer = printed.find("!K1 !(r").expect("literal diamond");
    assert!(printed[outer..].matches("!K2 !").count() >= 2, "{printed}");
}

#[test]
fn t52_structure_shape_and_classes() {
    let one = rmodel(&["a"], &[("a", "a")]);
    let m1 = build_mn_t52(&one, 2);
    assert_eq!(m1.n_states(), 4);
    assert!(m1.validate().is_empty());
    // Element state: p∧q plus its tag; pair state: r only; branches: p / q.
    assert!(m1.pi[t52_elem_state(1, 0)].contains("p"));
    assert!(m1.pi[t52_elem_state(1, 0)].contains("q"));
    assert!(m1.pi[t52_elem_state(1, 0)].contains("d_a"));
    assert!(m1.pi[t52_pair_state(1, 0, 0)].contains("r"));
    assert!(!m1.pi[t52_pair_state(1, 0, 0)].contains("p"));
    assert!(m1.pi[t52_branch_state(1, 0, 0, 1)].contains("p"));
    assert!(m1.pi[t52_branch_state(1, 0, 0, 2)].contains("q"));

    let two = rmodel(&["a", "b"], &[("a", "b")]);
    let m2 = build_mn_t52(&two, 2);
    assert_eq!(m2.n_states(), 2 + 3 * 4);
    assert!(m2.validate().is_empty());
    // Both relations are equivalence relations.
    for agent in 1..=2 {
        let c = m2.rel_class(agent);
        assert!(c.r && c.t && c.e, "agent {agent}: {c}");
    }
    // The single-agent companion is reflexive; transitivity holds only in
    // the one-element case (a pair state sees all pairs but not the other
    // pairs' branches).
    let s1 = build_mn_t52(&one, 1);
    let c1 = s1.rel_class(1);
    assert!(c1.r && c1.t, "{c1}");
    let s2 = build_mn_t52(&two, 1);
    let c2 = s2.rel_class(1);
    assert!(c2.r && !c2.t, "{c2}");
}

#[test]
fn t52_bisim_classes_separate_elements() {
    let n = rmodel(&["a", "b"], &[("a", "b")]);
    let m = build_mn_t52(&n, 2);
    let classes = bisim_classes(&m);
    let mut union = 0u64;
    for (i, &c) in classes.iter().enumerate() {
        assert_ne!(c, 0);
        for &d in &classes[i + 1..] {
            assert_eq!(c & d, 0, "classes overlap");
        }
        union |= c;
    }
    assert_eq!(union, (1u64 << m.n_states()) - 1);
    // Each domain element is its own class (tag propositions differ).
    for d in 0..2 {
        let bit = 1u64 << t52_elem_state(2, d);
        assert!(classes.contains(&bit), "element {d} not a singleton class");
    }
}

#[test]
fn t52_sigma_and_hand_equivalences() {
    let n = rmodel(&["a", "b"], &[("a", "b"), ("b", "b")]);
    let cases = [
        ("forall x . exists y . R(x,y)", true),
        ("exists x . R(x,x)", true),
        ("forall x . R(x,x)", false),
        ("exists x . forall y . !R(y,x)", true),
        ("exists x . forall y . !R(x,y)", false),
    ];
    for which in [Which::T52, Which::T52Single] {
        for (text, expected) in cases {
            let f = parse_rformula(text).unwrap();
            let report = check_equiv(&n, &f, which).unwrap();
            assert!(report.sigma, "sigma fails on {text} ({which:?})");
            assert_eq!(report.fo, expected, "fo wrong on {text}");
            assert!(report.agree, "{which:?} disagreement on {text}");
        }
    }
}

#[test]
fn t52_single_element_cross_check_against_exact_checker() {
    // At |D| = 1 the companion structure is tiny, so the generic exact
    // checker is feasible and must agree with the quotient evaluator.
    for rel in [&[][..], &[("a", "a")][..]] {
        let n = rmodel(&["a"], rel);
        for agents in [1u32, 2] {
            let m = build_mn_t52(&n, agents);
            let mut ev = Evaluator::new(&m);
            let v = ValuationSyn::new();
            let s = t52_pair_state(1, 0, 0);
            for text in ["exists x . R(x,x)", "forall x . R(x,x)", "forall x . exists y . R(x,y)"] {
                let t = translate_t52(&parse_rformula(text).unwrap(), agents).unwrap();
                assert_eq!(
                    quotient_eval_t52(&m, s, &t),
                    ev.eval_exact(s, &v, &t),
                    "{text} (agents={agents}, rel={rel:?})"
                );
            }
            let sigma = sigma_t52(agents);
            assert_eq!(quotient_eval_t52(&m, s, &sigma), ev.eval_exact(s, &v, &sigma));
        }
    }
}

#[test]
fn random_corpus_agreement_all_reductions() {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut checked = 0;
    for trial in 0..12 {
        let size = 1 + trial % 3; // |D| in 1..=3 for t51; capped at 2 for t52
        let n = random_rmodel(&mut rng, size);
        let f = random_rsentence(&mut rng, 2);
        assert!(f.is_sentence());
        let r51 = check_equiv(&n, &f, Which::T51).unwrap();
        assert!(r51.sigma && r51.agree, "t51 fails on {f} over {}", n.to_json_string());
        if size <= 2 {
            for which in [Which::T52, Which::T52Single] {
                let r = check_equiv(&n, &f, which).unwrap();
                assert!(r.sigma && r.agree, "{which:?} fails on {f} over {}", n.to_json_string());
            }
        }
        checked += 1;
    }
    assert_eq!(checked, 12);
}

#[test]
fn open_formulas_are_rejected_by_the_harness() {
    let n = rmodel(&["a"], &[]);
    let open = parse_rformula("R(x,x)").unwrap();
    assert!(matches!(
        check_equiv(&n, &open, Which::T51),
        Err(ReductionError::UnboundVar(_))
    ));
}
