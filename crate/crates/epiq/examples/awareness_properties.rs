//! Awareness sets can have very different shapes: generated by primitive
//! propositions (aware of a formula iff aware of every proposition in it),
//! only weakly generated (closed in one direction), or deliberately
//! "gappy" so that an agent is aware of a quantified fact without being
//! aware of its witnesses. This example builds structures with each shape
//! and runs the bounded property checkers on them.
//!
//! Run with: cargo run --example awareness_properties

use epiq::formula::{parse, Formula};
use epiq::model::{AwarenessProperty, AwarenessStructure};

fn report(m: &AwarenessStructure, bound: Option<usize>, label: &str) {
    println!("{label}:");
    for which in [
        AwarenessProperty::Gpp,
        AwarenessProperty::WeakGpp,
        AwarenessProperty::ClosedExists,
        AwarenessProperty::KnowsAware,
    ] {
        let r = m.check_awareness_property(which, bound);
        print!("  {:14} {}", r.property, r.holds);
        if let Some(w) = &r.witness {
            print!("  (agent {} at {}", w.agent, w.state);
            if let Some(mem) = &w.member {
                print!(", member {mem}");
            }
            if let Some(miss) = &w.missing {
                print!(", missing {miss}");
            }
            print!(")");
        }
        println!();
    }
}

fn main() {
    let vocab = vec!["p".to_string(), "q".to_string()];

    // Awareness generated by {p}: every formula built only from p is in.
    // A generated awareness set is infinite, so the set is materialized (and
    // then checked) up to an explicit size bound.
    let bound = 5;
    let mut gpp = AwarenessStructure::empty(1, vec!["s".into()], vocab.clone());
    gpp.rel[0][0].insert(0);
    gpp.aware[0][0].insert(parse("p").unwrap());
    gpp.close_gpp(bound);
    report(&gpp, Some(bound), "generated by {p}");

    // Weakly generated but not generated: an empty awareness set satisfies
    // every closure clause vacuously, yet full generation still forces the
    // proposition-free sentences in.
    let mut weak = AwarenessStructure::empty(1, vec!["s".into()], vocab.clone());
    weak.rel[0][0].insert(0);
    report(&weak, Some(4), "empty awareness set");

    // Awareness of a concrete witness without awareness of the existential
    // it witnesses: agent 1 is aware that q separates the agents' awareness,
    // yet not aware of the quantified fact "something separates them".
    let mut gap = AwarenessStructure::empty(2, vec!["s".into()], vocab);
    for a in 0..2 {
        gap.rel[a][0].insert(0);
    }
    let witness: Formula = parse("A2 q & !A1 q").unwrap();
    gap.aware[0][0].insert(witness.clone());
    gap.aware[1][0].insert(parse("q").unwrap());
    report(&gap, None, "witness awareness without the existential");
    let r = gap.check_awareness_property(AwarenessProperty::ClosedExists, None);
    assert!(!r.holds, "the gap should violate existential closure");
    println!("\nthe last structure fails closed_exists exactly as intended");
}
