//! Decide validity of single-agent pure-knowledge sentences — including
//! propositionally quantified ones — over three classes of structures:
//! ret (equivalence relations), et (transitive + Euclidean), and e
//! (Euclidean only). The decision procedure is symbolic: it enumerates
//! finite atom descriptors rather than structures, so it is a genuine
//! decision procedure, not a bounded search.
//!
//! Run with: cargo run --example decide_validity

use epiq::decider::{decide_valid, Variant};
use epiq::formula::parse;

fn main() {
    let samples = [
        "K1 p -> p",                                  // truth: needs reflexivity
        "K1 p -> K1 K1 p",                            // positive introspection
        "!K1 p -> K1 !K1 p",                          // negative introspection
        "!K1 !K1 p -> K1 p",                          // the 5-collapse
        "exists ?x . ?x",                             // something is true
        "forall ?x . (K1 ?x -> ?x)",                  // quantified truth axiom
        "(forall ?x . K1 ?x) -> K1 (forall ?x . ?x)", // a Barcan instance
        "exists ?x . (?x & !K1 ?x)",                  // an unknown truth
    ];
    for variant in [Variant::Ret, Variant::Et, Variant::E] {
        println!("structure class {}:", variant.name());
        for text in samples {
            let f = parse(text).unwrap();
            let r = decide_valid(&f, variant).unwrap();
            println!(
                "  {:50} {}  ({}/{} atoms at level {})",
                text,
                if r.valid { "valid  " } else { "invalid" },
                r.atoms_satisfying,
                r.atoms_total,
                r.level
            );
        }
    }
}
