//! An investor knows her broker is aware of something she is not aware of
//! herself, without being able to say what it is. This example builds that
//! two-agent scenario from a JSON structure file and evaluates the key
//! formulas with the exact model checker.
//!
//! Run with: cargo run --example investor_broker

use epiq::checker::Evaluator;
use epiq::formula::{parse, ValuationSyn};
use epiq::model::AwarenessStructure;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/investor_broker.json");
    let m = AwarenessStructure::from_json_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    println!("structure: {} states, {} agents, vocab {:?}", m.n_states(), m.n_agents, m.vocab);
    for i in 1..=m.n_agents {
        println!("  agent {i} relation class: {}", m.rel_class(i));
    }

    let mut ev = Evaluator::new(&m);
    let v = ValuationSyn::new();
    let queries = [
        // Agent 1 (the investor) explicitly knows the broker is aware of
        // something she is not aware of, without being able to name it.
        "X1 (exists ?x . (A2 ?x & !A1 ?x))",
        // The broker does not explicitly know that quantified fact — he is
        // not even aware of it.
        "!X2 (exists ?x . (A2 ?x & !A1 ?x))",
        // He does explicitly know the concrete witness, though.
        "X2 (A2 q & !A1 q)",
        // The separation is witnessed by q ...
        "A2 q & !A1 q",
        // ... which the investor is not aware of.
        "!A1 q",
    ];
    for text in queries {
        let f = parse(text).unwrap();
        let holds = ev.eval_exact(0, &v, &f);
        println!("  {text}  =>  {holds}");
        assert!(holds, "expected {text} to hold at the initial state");
    }
    println!("all queries hold at the initial state");
}
