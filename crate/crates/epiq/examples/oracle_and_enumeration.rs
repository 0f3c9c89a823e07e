//! Quantifiers range over all sentences of the language — an infinite
//! domain — so besides the exact checker there is a budgeted oracle that
//! instantiates quantifiers along a canonical enumeration of
//! quantifier-free sentences and answers True, False (with a witness), or
//! Unknown when the budget runs out.
//!
//! Run with: cargo run --example oracle_and_enumeration

use epiq::checker::{Evaluator, Verdict3};
use epiq::formula::{parse, QfEnumerator, ValuationSyn};
use epiq::model::AwarenessStructure;

fn main() {
    // The enumeration itself: the first few quantifier-free sentences
    // over {p} with one agent, and the round-trip back to indices.
    let vocab = vec!["p".to_string()];
    let mut en = QfEnumerator::new(&vocab, 1);
    println!("enumeration of quantifier-free sentences over {{p}}:");
    for i in 0..8u64 {
        let f = en.get(i);
        let back = en.index_of(&f).unwrap();
        println!("  {i:2} -> {f}   (index_of -> {back})");
        assert_eq!(back, i);
    }

    // A two-state structure: p true at exactly one state, agent 1 cannot
    // tell the states apart, and agent 1 is aware of p everywhere.
    let mut m = AwarenessStructure::empty(1, vec!["s0".into(), "s1".into()], vocab);
    m.pi[0].insert("p".to_string());
    for s in 0..2 {
        m.rel[0][s].extend([0, 1]);
        m.aware[0][s].insert(parse("p").unwrap());
    }

    let v = ValuationSyn::new();
    let queries = [
        "exists ?x . (?x & !K1 ?x)",  // a true but unknown sentence (p itself)
        "forall ?x . (K1 ?x -> ?x)",  // quantified truth: holds, relation reflexive
        "forall ?x . K1 ?x",          // refuted, with a witness instantiation
    ];
    let mut ev = Evaluator::new(&m);
    for text in queries {
        let f = parse(text).unwrap();
        let exact = ev.eval_exact(0, &v, &f);
        let verdict = ev.eval_oracle(0, &v, &f, 500);
        let shown = match &verdict {
            Verdict3::True => "True".to_string(),
            Verdict3::False { witness: Some(w) } => format!("False (witness {w})"),
            Verdict3::False { witness: None } => "False".to_string(),
            Verdict3::Unknown => "Unknown".to_string(),
        };
        println!("\n{text}\n  exact: {exact}   oracle: {shown}");
        if let Some(b) = verdict.as_bool() {
            assert_eq!(b, exact, "oracle must agree with the exact checker when conclusive");
        }
    }
    println!("\noracle verdicts agree with the exact checker wherever conclusive");
}
