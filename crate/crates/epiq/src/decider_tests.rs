use crate::checker::Evaluator;
use crate::decider::*;
use crate::formula::{parse, Formula, ValuationSyn};
use crate::gen::{search_countermodel, SearchConfig};
use crate::model::{AwarenessStructure, RelClass};
use CountToken::{EInf, C, E};

#[test]
fn atom_count_single_prop_level_zero() {
    // Two point atoms; counts per point atom from {E(0), EInf, C}; the
    // atom's own point count may not be E(0): 2 * (2 * 3) = 12.
    let ret = atoms(1, 0, Variant::Ret);
    assert_eq!(ret.len(), 12);
    assert!(ret.iter().all(|a| a.counts[a.point] != E(0)));
    // Distinctness: every atom differs in point or counts.
    let set: std::collections::BTreeSet<_> = ret.iter().cloned().collect();
    assert_eq!(set.len(), 12);
    // et adds an indist flag; non-indist atoms may carry E(0) for their
    // own point: 12 (indist) + 2 * 9 (non-indist) = 30.
    assert_eq!(atoms(1, 0, Variant::Et).len(), 30);
    // e-variant atoms satisfy the count/KK-count coupling.
    for a in atoms(1, 0, Variant::E) {
        let kk = a.counts_kk.as_ref().unwrap();
        for bm in 0..a.counts.len() {
            match a.counts[bm] {
                E(l) => assert!(matches!(kk[bm], E(m) if m >= l) || kk[bm] == C),
                EInf => assert_ne!(kk[bm], E(0)),
                C => assert_eq!(kk[bm], C),
            }
        }
    }
}

#[test]
fn possible_basics() {
    let all = atoms(1, 0, Variant::Ret);
    for a in &all {
        // Self-possibility whenever the own-point count is nonzero (always
        // true for ret atoms).
        assert!(possible(a, a, Variant::Ret));
    }
    // Atoms differing in any count are mutually impossible.
    for a in &all {
        for b in &all {
            if a.counts != b.counts {
                assert!(!possible(a, b, Variant::Ret));
            }
        }
    }
    // et: a non-indist target is never possible (secondary reflexivity).
    for b in atoms(1, 0, Variant::Et) {
        if b.indist == Some(false) {
            for a in atoms(1, 0, Variant::Et) {
                assert!(!possible(&a, &b, Variant::Et));
            }
        }
    }
}

#[test]
fn x_partition_cases() {
    // Exact counts split additively.
    assert!(x_partition(E(2), E(1), E(1), 1));
    assert!(x_partition(E(2), E(0), E(2), 2));
    // EInf splits as (EInf, EInf), or trivially to one side.
    assert!(x_partition(EInf, EInf, EInf, 1));
    assert!(x_partition(EInf, EInf, E(0), 1));
    assert!(!x_partition(EInf, EInf, E(1), 1));
    assert!(!x_partition(EInf, C, EInf, 1));
    // A saturated count keeps one side saturated.
    assert!(x_partition(C, E(1), C, 1));
    assert!(x_partition(C, C, C, 1));
    assert!(!x_partition(C, E(1), E(1), 1));
    // Splits saturate at the lower level's bound: E(2) at level 1 can
    // place both survivors on one side, which shows up as C.
    assert!(x_partition(E(2), C, E(0), 0));
    assert!(!x_partition(E(2), E(1), E(0), 1));
}

#[test]
fn at_set_base_and_partition() {
    let names = vec!["p".to_string()];
    let f = parse("p").unwrap();
    let s = at_set(&f, &names, 0, Variant::Ret).unwrap();
    assert!(s.atoms.iter().all(|a| a.point & 1 != 0));
    assert_eq!(s.atoms.len(), 6);

    for variant in [Variant::Ret, Variant::Et, Variant::E] {
        for text in ["K1 p -> p", "K1 p -> K1 K1 p", "p & !K1 p", "forall ?x . (K1 ?x -> ?x)"] {
            let f = parse(text).unwrap();
            let neg = Formula::not(f.clone());
            let k = f.qdepth() as u32;
            let pos = at_set(&f, &names, k, variant).unwrap().atoms;
            let negs = at_set(&neg, &names, k, variant).unwrap().atoms;
            let total = atoms(1, k, variant).len();
            assert!(pos.is_disjoint(&negs), "{text} ({variant:?})");
            assert_eq!(pos.len() + negs.len(), total, "{text} ({variant:?})");
        }
    }
}

#[test]
fn quantifier_examples() {
    let some = parse("exists ?x . ?x").unwrap();
    let every = parse("forall ?x . ?x").unwrap();
    for variant in [Variant::Ret, Variant::Et, Variant::E] {
        assert!(decide_valid(&some, variant).unwrap().valid, "exists x.x ({variant:?})");
        assert!(!decide_valid(&every, variant).unwrap().valid, "forall x.x ({variant:?})");
    }
}

#[test]
fn truth_axiom_requires_reflexivity() {
    let t = parse("forall ?x . (K1 ?x -> ?x)").unwrap();
    assert!(decide_valid(&t, Variant::Ret).unwrap().valid);
    assert!(!decide_valid(&t, Variant::Et).unwrap().valid);
    assert!(!decide_valid(&t, Variant::E).unwrap().valid);
}

#[test]
fn positive_introspection_by_variant() {
    // Kp => KKp holds when transitivity is available (ret, et) but fails
    // on Euclidean-only frames: a root may see part of a cluster whose
    // members see further.
    let four = parse("K1 p -> K1 K1 p").unwrap();
    assert!(decide_valid(&four, Variant::Ret).unwrap().valid);
    assert!(decide_valid(&four, Variant::Et).unwrap().valid);
    assert!(!decide_valid(&four, Variant::E).unwrap().valid);

    // Cross-check the Euclidean-only failure with model search.
    let cfg = SearchConfig {
        class: RelClass { r: false, t: false, e: true },
        vocab_size: 1,
        seed: 5,
        max_structures: 1000,
        ..Default::default()
    };
    let hit = search_countermodel(&four, &cfg).expect("Euclidean countermodel to 4");
    assert!(hit.structure.rel_class(1).e);
    // And its validity for et: no Euclidean+transitive countermodel.
    let cfg_et = SearchConfig {
        class: RelClass { r: false, t: true, e: true },
        vocab_size: 1,
        seed: 5,
        max_structures: 400,
        ..Default::default()
    };
    assert!(search_countermodel(&four, &cfg_et).is_none());
}

#[test]
fn negative_introspection_valid_everywhere() {
    let five = parse("!K1 p -> K1 !K1 p").unwrap();
    for variant in [Variant::Ret, Variant::Et, Variant::E] {
        assert!(decide_valid(&five, variant).unwrap().valid, "{variant:?}");
    }
}

#[test]
fn barcan_schema_valid() {
    let barcan = parse("(forall ?x . K1 ?x) -> K1 (forall ?x . ?x)").unwrap();
    for variant in [Variant::Ret, Variant::Et, Variant::E] {
        assert!(decide_valid(&barcan, variant).unwrap().valid, "{variant:?}");
    }
}

#[test]
fn open_formulas_are_closed_and_reports_are_filled() {
    let f = parse("K1 ?x -> ?x").unwrap();
    let r = decide_valid(&f, Variant::Ret).unwrap();
    assert!(r.valid);
    assert_eq!(r.level, 1);
    assert_eq!(r.atoms_satisfying, r.atoms_total);
    let bad = parse("K2 p").unwrap();
    assert_eq!(decide_valid(&bad, Variant::Ret).unwrap_err(), DecideError::MultiAgent(2));
    let aware = parse("A1 p").unwrap();
    assert!(matches!(decide_valid(&aware, Variant::Ret), Err(DecideError::AwarenessOperator(_))));
}

#[test]
fn shadowed_binders_are_renamed() {
    let f = parse("forall ?x . ((forall ?x . ?x) | ?x | !?x)").unwrap();
    assert!(decide_valid(&f, Variant::Ret).unwrap().valid);
}

#[test]
fn expansion_shapes() {
    let p = Formula::prop("p");
    assert_eq!(build_count(E(0), 1, &p).to_string(), "K1 !p");
    let c1 = build_count(C, 1, &p).to_string();
    assert!(c1.starts_with("exists ?c1 ."), "{c1}");
    assert!(c1.contains("!K1 !(?c1 & p)"), "{c1}");
}

#[test]
fn dichotomy_against_model_checking() {
    // Two-state universal structure over {p}: p true in exactly one state.
    // Both states are describable, so the realized atom at the p-state is
    // (p, c_p = E(1), c_¬p = E(1)) at level 1.
    let text = r#"{
      "agents": 1,
      "states": ["s", "t"],
      "vocab": ["p"],
      "pi": { "s": ["p"] },
      "rel": { "1": [["s","s"],["s","t"],["t","s"],["t","t"]] }
    }"#;
    let m = AwarenessStructure::from_json_str(text).unwrap();
    let mut ev = Evaluator::new(&m);
    let v = ValuationSyn::new();
    let names = vec!["p".to_string()];

    assert!(ev.eval_exact(0, &v, &build_describable(&Formula::prop("p"))));
    assert!(ev.eval_exact(0, &v, &build_count(E(1), 2, &Formula::prop("p"))));

    let realized = AtomDescriptor {
        point: 1,
        indist: None,
        indist_kk: None,
        counts: vec![E(1), E(1)], // index 0 = ¬p, index 1 = p
        counts_kk: None,
    };
    assert!(ev.eval_exact(0, &v, &atom_formula(&realized, &names, 1)));

    // possible(realized, b) must agree with the evaluated ¬K¬(expansion of b).
    for b in atoms(1, 1, Variant::Ret) {
        let claim = possible(&realized, &b, Variant::Ret);
        let diamond = Formula::not(Formula::k(1, Formula::not(atom_formula(&b, &names, 1))));
        let actual = ev.eval_exact(0, &v, &diamond);
        assert_eq!(claim, actual, "dichotomy mismatch on {b:?}");
    }
}

#[test]
fn decide_agrees_with_bounded_search_on_small_corpus() {
    let corpus = [
        "K1 (p -> p)",
        "K1 p -> !K1 !p",
        "p -> K1 p",
        "!K1 p -> K1 !K1 p",
        "exists ?x . K1 ?x",
        "forall ?x . (K1 ?x -> K1 K1 ?x)",
    ];
    let cfg = SearchConfig {
        class: RelClass { r: true, t: true, e: true },
        vocab_size: 1,
        seed: 11,
        max_structures: 400,
        ..Default::default()
    };
    for text in corpus {
        let f = parse(text).unwrap();
        let verdict = decide_valid(&f, Variant::Ret).unwrap().valid;
        let counter = search_countermodel(&f, &cfg);
        if verdict {
            assert!(counter.is_none(), "decider says valid but search refutes {text}");
        } else {
            assert!(counter.is_some(), "decider says invalid but no countermodel for {text}");
        }
    }
}
