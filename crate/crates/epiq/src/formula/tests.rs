use super::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn p(name: &str) -> Formula {
    Formula::prop(name)
}

#[test]
fn parse_basic_conjunction() {
    let f = parse("K1 p & A2 q").unwrap();
    assert_eq!(f, Formula::and(Formula::k(1, p("p")), Formula::a(2, p("q"))));
}

#[test]
fn parse_explicit_knowledge_of_existential() {
    // X1 (exists ?x . (A2 ?x & !A1 ?x)) desugars the existential.
    let f = parse("X1 (exists ?x . (A2 ?x & !A1 ?x))").unwrap();
    let body = Formula::and(
        Formula::a(2, Formula::var("x")),
        Formula::not(Formula::a(1, Formula::var("x"))),
    );
    assert_eq!(f, Formula::x(1, Formula::exists("x", body)));
}

#[test]
fn quantifier_scopes_maximally_rightward() {
    let f = parse("forall ?x . ?x -> p").unwrap();
    assert_eq!(f, Formula::forall("x", Formula::implies(Formula::var("x"), p("p"))));
    assert_eq!(print(&f), "forall ?x . (?x -> p)");
}

#[test]
fn print_examples() {
    assert_eq!(print(&Formula::and(p("p"), Formula::not(p("q")))), "p & !q");
    assert_eq!(print(&Formula::forall("x", Formula::a(1, Formula::var("x")))), "forall ?x . A1 ?x");
}

#[test]
fn print_parse_roundtrip_on_samples() {
    let samples = [
        "p",
        "?x",
        "!p",
        "p & q & r",
        "p & (q & r)",
        "p | q",
        "p -> q -> r",
        "(p -> q) -> r",
        "p <-> q",
        "(p <-> q) <-> r",
        "K1 p & A2 q | X3 r",
        "forall ?x . (A1 ?x -> exists ?y . (K2 ?y & ?x))",
        "X1 (exists ?x . (A2 ?x & !A1 ?x))",
        "!(p -> q)",
        "!forall ?x . ?x",
        "exists ?x . (?x | !?x)",
        "K1 (p & q)",
        "K1 !p",
    ];
    for s in samples {
        let f = parse(s).unwrap();
        let text = print(&f);
        let g = parse(&text).unwrap();
        assert_eq!(f, g, "round-trip failed for {s}: printed {text}");
        // print∘parse is idempotent
        assert_eq!(print(&g), text);
    }
}

fn random_formula(rng: &mut StdRng, depth: usize, allow_quant: bool) -> Formula {
    let choice = if depth == 0 { rng.gen_range(0..2) } else { rng.gen_range(0..8) };
    match choice {
        0 => Formula::prop(["p", "q", "r"][rng.gen_range(0..3)]),
        1 => Formula::var(["x", "y"][rng.gen_range(0..2)]),
        2 => Formula::not(random_formula(rng, depth - 1, allow_quant)),
        3 => Formula::and(
            random_formula(rng, depth - 1, allow_quant),
            random_formula(rng, depth - 1, allow_quant),
        ),
        4 => Formula::k(rng.gen_range(1..3), random_formula(rng, depth - 1, allow_quant)),
        5 => Formula::a(rng.gen_range(1..3), random_formula(rng, depth - 1, allow_quant)),
        6 => Formula::x(rng.gen_range(1..3), random_formula(rng, depth - 1, allow_quant)),
        _ => {
            if allow_quant {
                Formula::forall(
                    ["x", "y"][rng.gen_range(0..2)],
                    random_formula(rng, depth - 1, allow_quant),
                )
            } else {
                Formula::not(random_formula(rng, depth - 1, allow_quant))
            }
        }
    }
}

#[test]
fn print_parse_roundtrip_random() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..500 {
        let f = random_formula(&mut rng, 5, true);
        let text = print(&f);
        let g = parse(&text).unwrap_or_else(|e| panic!("reparse of `{text}` failed: {e}"));
        assert_eq!(f, g, "round-trip failed, printed {text}");
    }
}

#[test]
fn free_vars_examples() {
    let f = Formula::forall("x", Formula::and(Formula::var("x"), Formula::var("y")));
    assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), vec!["y".to_string()]);

    let sentence = parse("exists ?x . (A2 ?x & !A1 ?x)").unwrap();
    assert!(sentence.is_sentence());

    assert!(p("p").free_vars().is_empty());
}

#[test]
fn substitute_examples() {
    // No free occurrence: unchanged.
    let f = parse("forall ?x . A1 ?x").unwrap();
    assert_eq!(f.substitute("x", &p("p")).unwrap(), f);

    // (A2 x ∧ ¬A1 x)[x/q] = A2 q ∧ ¬A1 q
    let f = parse("A2 ?x & !A1 ?x").unwrap();
    assert_eq!(f.substitute("x", &p("q")).unwrap(), parse("A2 q & !A1 q").unwrap());

    // Capture: (∀y K1(x∧y))[x/y] rejected, names y.
    let f = parse("forall ?y . K1 (?x & ?y)").unwrap();
    let err = f.substitute("x", &Formula::var("y")).unwrap_err();
    assert_eq!(err.var, "y");
}

#[test]
fn substitutable_examples() {
    let f = parse("forall ?y . (?x & ?y)").unwrap();
    assert!(!f.substitutable("x", &Formula::var("y")));
    assert!(f.substitutable("x", &p("p")));
    let g = parse("K1 ?x").unwrap();
    assert!(g.substitutable("x", &parse("forall ?z . A1 ?z").unwrap()));
}

#[test]
fn substitution_free_vars_invariant() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..300 {
        let f = random_formula(&mut rng, 4, true);
        let g = random_formula(&mut rng, 3, true);
        if !f.substitutable("x", &g) {
            assert!(f.substitute("x", &g).is_err());
            continue;
        }
        let sub = f.substitute("x", &g).unwrap();
        let mut expect = f.free_vars();
        if expect.remove("x") {
            expect.extend(g.free_vars());
        }
        assert_eq!(sub.free_vars(), expect);
        if !f.free_vars().contains("x") {
            assert_eq!(sub, f);
        }
        if g.is_quantifier_free() {
            assert!(sub.qdepth() <= f.qdepth());
        }
    }
}

#[test]
fn qdepth_examples() {
    assert_eq!(p("p").qdepth(), 0);
    assert_eq!(parse("forall ?x . A1 ?x").unwrap().qdepth(), 1);
    assert_eq!(parse("forall ?x . exists ?y . (?x & ?y)").unwrap().qdepth(), 2);
}

#[test]
fn enumeration_smallest_and_injective() {
    let vocab = vec!["p".to_string()];
    assert_eq!(enumerate_qf_sentences(&vocab, 1, 0), p("p"));

    let vocab = vec!["p".to_string(), "q".to_string()];
    let mut en = QfEnumerator::new(&vocab, 2);
    let mut seen = std::collections::HashSet::new();
    for i in 0..1000u64 {
        let f = en.get(i);
        assert!(f.is_quantifier_free() && f.is_sentence());
        assert!(seen.insert(f.clone()), "duplicate at index {i}: {f}");
        assert_eq!(en.index_of(&f), Some(i), "index_of not inverse at {i}: {f}");
    }
}

#[test]
fn agent_bound_enforced() {
    assert!(parse_with_agents("K3 p", Some(2)).is_err());
    assert!(parse_with_agents("K2 p", Some(2)).is_ok());
}

#[test]
fn parse_error_position() {
    let err = parse("p &\n& q").unwrap_err();
    assert_eq!(err.line, 2);
}
