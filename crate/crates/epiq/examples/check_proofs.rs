//! Check Hilbert-style proof scripts in the axiom system for quantified
//! epistemic logic with awareness. The highlight: in S5 (truth plus negative
//! introspection) a Barcan instance is derivable without assuming the Barcan
//! axiom, and the 40-step derivation is machine-checked here.
//!
//! Run with: cargo run --example check_proofs

use epiq::proofs::{check_proof, polarity_mutants, ProofScript, Rule};

fn load(name: &str) -> ProofScript {
    let path = format!("{}/fixtures/proofs/{name}", env!("CARGO_MANIFEST_DIR"));
    ProofScript::from_json_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn main() {
    let dir = format!("{}/fixtures/proofs", env!("CARGO_MANIFEST_DIR"));
    let mut names: Vec<String> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();

    for name in &names {
        let s = load(name);
        let v = check_proof(&s);
        assert!(v.ok, "{name}: {:?}", v.failure);
        println!(
            "{name:32} [{}] ⊢ {}",
            if s.system.is_empty() { "core".to_string() } else { s.system.join(",") },
            v.theorem.unwrap()
        );
        for w in v.warnings {
            println!("{:32} warning: {w}", "");
        }
    }

    // The Barcan derivation uses only T and 5, never the Barcan rule itself.
    let barcan = load("barcan_from_s5.json");
    assert!(!barcan.steps.iter().any(|st| st.rule == Rule::Barcan));
    println!("\nthe Barcan instance above is derived from T and 5 in {} steps", barcan.steps.len());

    // The checker is not a rubber stamp: flipping any single polarity in a
    // step formula breaks the proof.
    let mut rejected = 0;
    for m in polarity_mutants(&barcan) {
        assert!(!check_proof(&m).ok);
        rejected += 1;
    }
    println!("all {rejected} single-polarity mutations of that proof are rejected");
}
