//! First-order logic over a single binary relation embeds into the
//! propositionally quantified modal language. This example translates
//! R-sentences two ways — into the language with awareness operators, and
//! into the pure knowledge language — and verifies on small finite models
//! that the first-order truth value matches the modal truth value of the
//! translation in the companion structure.
//!
//! Run with: cargo run --example translate_first_order

use epiq::reduction::{check_equiv, nnf, parse_rformula, translate_t51, translate_t52, RModel, Which};

fn main() {
    // A 3-element model: a -> b -> c, plus a loop at c.
    let n = RModel::from_json_str(
        r#"{"domain":["a","b","c"],"rel":[["a","b"],["b","c"],["c","c"]]}"#,
    )
    .unwrap();
    println!("model: {}", n.to_json_string().replace('\n', " ").replace("  ", ""));

    let sentences = [
        "forall x . exists y . R(x,y)",        // true: every element has a successor
        "exists x . R(x,x)",                   // true: c loops
        "forall x . R(x,x)",                   // false
        "exists x . forall y . !R(y,x)",       // true: nothing points at a
        "forall x . forall y . (!R(x,y) | R(y,x))", // false: a->b but not b->a
    ];

    for text in sentences {
        let f = nnf(&parse_rformula(text).unwrap());
        println!("\n{text}");
        println!("  awareness translation: {}", translate_t51(&f).unwrap());
        println!("  knowledge translation: {}", translate_t52(&f, 2).unwrap());
        for which in [Which::T51, Which::T52, Which::T52Single] {
            let r = check_equiv(&n, &f, which).unwrap();
            println!(
                "  {:?}: fo={} modal={} sigma={} agree={}",
                which, r.fo, r.modal, r.sigma, r.agree
            );
            assert!(r.agree, "translation disagreed with first-order truth");
        }
    }
    println!("\nall translations agree with first-order evaluation");
}
