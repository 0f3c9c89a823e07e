//! Hunt for finite countermodels to non-valid sentences by sampling random
//! structures in a given relation class, then cross-check the verdicts
//! against the symbolic validity decider.
//!
//! Run with: cargo run --example countermodel_search

use epiq::decider::{decide_valid, Variant};
use epiq::formula::parse;
use epiq::gen::{search_countermodel, SearchConfig};
use epiq::model::RelClass;

fn main() {
    // (formula, class to search, matching decider variant)
    let cases = [
        ("K1 p -> p", RelClass { r: false, t: true, e: true }, Variant::Et),
        ("p -> K1 p", RelClass { r: true, t: true, e: true }, Variant::Ret),
        ("K1 p | K1 !p", RelClass { r: true, t: true, e: true }, Variant::Ret),
        ("exists ?x . (K1 ?x & !?x)", RelClass { r: false, t: false, e: true }, Variant::E),
        ("forall ?x . (?x -> K1 ?x)", RelClass { r: true, t: true, e: true }, Variant::Ret),
    ];
    for (text, class, variant) in cases {
        let f = parse(text).unwrap();
        let report = decide_valid(&f, variant).unwrap();
        let cfg = SearchConfig {
            max_states: 4,
            class,
            vocab_size: 2,
            n_agents: 1,
            seed: 42,
            max_structures: 2000,
        };
        match search_countermodel(&f, &cfg) {
            Some(hit) => {
                assert!(!report.valid, "decider and search disagree on {text}");
                println!(
                    "{text}\n  refuted at state {} of a {}-state structure after {} samples",
                    hit.structure.state_names[hit.state],
                    hit.structure.n_states(),
                    hit.tried + 1,
                );
            }
            None => {
                assert!(report.valid, "no countermodel found but the decider says invalid: {text}");
                println!("{text}\n  no countermodel (and indeed the decider reports it valid)");
            }
        }
    }
}
