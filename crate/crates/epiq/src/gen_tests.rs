use crate::formula::parse;
use crate::gen::*;
use crate::model::RelClass;
use rand::rngs::StdRng;
use rand::SeedableRng;

#[test]
fn generated_structures_validate_and_respect_class() {
    let cfg = SearchConfig {
        class: RelClass { r: true, t: true, e: true },
        n_agents: 2,
        seed: 42,
        ..Default::default()
    };
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    for _ in 0..50 {
        let m = random_structure(&mut rng, &cfg);
        assert!(m.validate().is_empty());
        for i in 1..=m.n_agents {
            let c = m.rel_class(i);
            assert!(c.r && c.t && c.e, "class not satisfied: {c}");
        }
    }
}

#[test]
fn rooted_shape_respects_requested_class() {
    let et = SearchConfig { class: RelClass { r: false, t: true, e: true }, seed: 7, ..Default::default() };
    let mut rng = StdRng::seed_from_u64(et.seed);
    for _ in 0..50 {
        let m = random_rooted_euclidean(&mut rng, &et);
        let c = m.rel_class(1);
        assert!(c.e && c.t, "rooted et shape should be Euclidean and transitive: {c}");
    }
    let e_only = SearchConfig { class: RelClass { r: false, t: false, e: true }, seed: 7, ..Default::default() };
    let mut rng = StdRng::seed_from_u64(e_only.seed);
    let mut saw_nontransitive = false;
    for _ in 0..50 {
        let m = random_rooted_euclidean(&mut rng, &e_only);
        let c = m.rel_class(1);
        assert!(c.e, "rooted shape should be Euclidean: {c}");
        saw_nontransitive |= !c.t;
    }
    assert!(saw_nontransitive, "Euclidean-only sampling should reach non-transitive shapes");
}

#[test]
fn search_finds_t_countermodel_only_without_reflexivity() {
    let f = parse("K1 p -> p").unwrap();
    let euclidean = SearchConfig {
        class: RelClass { r: false, t: false, e: true },
        seed: 1,
        max_structures: 500,
        ..Default::default()
    };
    let hit = search_countermodel(&f, &euclidean).expect("T fails without reflexivity");
    assert!(hit.structure.rel_class(1).e);

    let reflexive = SearchConfig {
        class: RelClass { r: true, t: true, e: true },
        seed: 1,
        max_structures: 300,
        ..Default::default()
    };
    assert!(search_countermodel(&f, &reflexive).is_none());
}

#[test]
fn search_is_deterministic() {
    let f = parse("K1 p -> K1 K1 p").unwrap();
    let cfg = SearchConfig { class: RelClass::default(), seed: 9, max_structures: 200, ..Default::default() };
    let a = search_countermodel(&f, &cfg).map(|c| (c.structure.to_json_string(), c.state, c.tried));
    let b = search_countermodel(&f, &cfg).map(|c| (c.structure.to_json_string(), c.state, c.tried));
    assert_eq!(a, b);
}

#[test]
fn barcan_has_no_countermodel() {
    let f = parse("(forall ?x . K1 ?x) -> K1 (forall ?x . ?x)").unwrap();
    let cfg = SearchConfig { seed: 3, max_structures: 150, ..Default::default() };
    assert!(search_countermodel(&f, &cfg).is_none());
}
