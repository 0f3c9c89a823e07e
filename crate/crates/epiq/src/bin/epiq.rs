//! Thin command-line front end over the library. Exit codes: 0 for
//! true/valid/accepted/found, 1 for false/invalid/rejected/none-found,
//! 2 for unknown verdicts or errors.

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use epiq::checker::{Evaluator, Verdict3};
use epiq::decider::{atoms, decide_valid, Variant};
use epiq::formula::{parse, ValuationSyn};
use epiq::gen::{search_countermodel, SearchConfig};
use epiq::model::{AwarenessProperty, AwarenessStructure, RelClass};
use epiq::proofs::{check_proof, ProofScript};
use epiq::reduction::{check_equiv, nnf, parse_rformula, translate_t51, translate_t52, RModel, Which};
use serde_json::json;

#[derive(Parser)]
#[command(name = "epiq", about = "Workbench for quantified epistemic logic with awareness", version)]
struct Cli {
    /// Seed for all randomized operations.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Suppress human-readable output.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Exact,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Ret,
    Et,
    E,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Ret => Variant::Ret,
            VariantArg::Et => Variant::Et,
            VariantArg::E => Variant::E,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichArg {
    T51,
    T52,
    T52s,
}

impl From<WhichArg> for Which {
    fn from(w: WhichArg) -> Which {
        match w {
            WhichArg::T51 => Which::T51,
            WhichArg::T52 => Which::T52,
            WhichArg::T52s => Which::T52Single,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a formula in a structure file at a state.
    Check {
        model_file: String,
        formula: String,
        /// State to evaluate at (default: the first state).
        #[arg(long)]
        state: Option<String>,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
        /// Instantiation budget for the oracle method.
        #[arg(long, default_value_t = 2000)]
        budget: u64,
    },
    /// Decide validity of a single-agent pure-knowledge formula.
    Decide {
        formula: String,
        /// Structure class: ret (reflexive+euclidean+transitive), et, or e.
        #[arg(long, value_enum, default_value_t = VariantArg::Ret)]
        class: VariantArg,
    },
    /// Search for a countermodel within bounded random structures.
    Search {
        formula: String,
        /// Required relation properties, e.g. "rte", "te", "e", or "".
        #[arg(long, default_value = "")]
        class: String,
        #[arg(long, default_value_t = 4)]
        max_states: usize,
        #[arg(long, default_value_t = 2)]
        vocab_size: usize,
        #[arg(long, default_value_t = 1)]
        agents: u32,
        #[arg(long, default_value_t = 2000)]
        max_structures: usize,
        /// Write the found structure to this file.
        #[arg(long)]
        out: Option<String>,
    },
    /// Translate a first-order R-sentence into the modal language.
    Translate {
        /// R-sentence text, or a path prefixed with @ to read from a file.
        input: String,
        #[arg(long, value_enum, default_value_t = WhichArg::T51)]
        which: WhichArg,
        /// R-model JSON file: also run the finite equivalence harness.
        #[arg(long)]
        harness: Option<String>,
    },
    /// Check a Hilbert-style proof script.
    Prove { proof_file: String },
    /// Report awareness properties and relation classes of a structure.
    Props { model_file: String },
    /// Dump the symbolic atom count for a vocabulary and level (debug).
    Atoms {
        /// Comma-separated proposition names.
        props: String,
        level: u32,
        #[arg(long, value_enum, default_value_t = VariantArg::Ret)]
        class: VariantArg,
    },
}

fn parse_class(text: &str) -> Result<RelClass> {
    let mut c = RelClass::default();
    for ch in text.chars() {
        match ch {
            'r' => c.r = true,
            't' => c.t = true,
            'e' => c.e = true,
            _ => return Err(anyhow!("class characters must be among r, t, e")),
        }
    }
    Ok(c)
}

fn load_model(path: &str) -> Result<AwarenessStructure> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let m = AwarenessStructure::from_json_str(&text).map_err(|e| anyhow!("{path}: {e}"))?;
    let problems = m.validate();
    if !problems.is_empty() {
        return Err(anyhow!("{path}: {}", problems.join("; ")));
    }
    Ok(m)
}

struct Out {
    json: bool,
    quiet: bool,
}

impl Out {
    fn emit(&self, human: String, payload: serde_json::Value) {
        if self.json {
            println!("{payload}");
        } else if !self.quiet {
            println!("{human}");
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    let out = Out { json: cli.json, quiet: cli.quiet };
    match cli.cmd {
        Cmd::Check { model_file, formula, state, method, budget } => {
            let m = load_model(&model_file)?;
            let f = parse(&formula).map_err(|e| anyhow!("formula: {e}"))?;
            let s = match &state {
                Some(name) => m
                    .state_names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| anyhow!("unknown state {name}"))?,
                None => 0,
            };
            let v = ValuationSyn::new();
            let mut ev = Evaluator::new(&m);
            let (verdict, witness) = match method {
                Method::Exact => (
                    if ev.eval_exact(s, &v, &f) { Verdict3::True } else { Verdict3::False { witness: None } },
                    None,
                ),
                Method::Oracle => {
                    let r = ev.eval_oracle(s, &v, &f, budget);
                    let w = match &r {
                        Verdict3::False { witness } => witness.clone(),
                        _ => None,
                    };
                    (r, w)
                }
            };
            let text = match &verdict {
                Verdict3::True => "true".to_string(),
                Verdict3::False { .. } => match &witness {
                    Some(w) => format!("false (witness: {w})"),
                    None => "false".to_string(),
                },
                Verdict3::Unknown => "unknown".to_string(),
            };
            out.emit(
                format!("{} at {}: {}", f, m.state_names[s], text),
                json!({
                    "verdict": match &verdict {
                        Verdict3::True => "true",
                        Verdict3::False { .. } => "false",
                        Verdict3::Unknown => "unknown",
                    },
                    "state": m.state_names[s],
                    "witness": witness.map(|w| w.to_string()),
                }),
            );
            Ok(match verdict {
                Verdict3::True => 0,
                Verdict3::False { .. } => 1,
                Verdict3::Unknown => 2,
            })
        }
        Cmd::Decide { formula, class } => {
            let f = parse(&formula).map_err(|e| anyhow!("formula: {e}"))?;
            let report = decide_valid(&f, class.into())?;
            out.emit(
                format!(
                    "{} [{}]: {} ({}/{} atoms at level {})",
                    f,
                    report.variant.name(),
                    if report.valid { "valid" } else { "invalid" },
                    report.atoms_satisfying,
                    report.atoms_total,
                    report.level
                ),
                serde_json::to_value(&report)?,
            );
            Ok(if report.valid { 0 } else { 1 })
        }
        Cmd::Search { formula, class, max_states, vocab_size, agents, max_structures, out: out_file } => {
            let f = parse(&formula).map_err(|e| anyhow!("formula: {e}"))?;
            let cfg = SearchConfig {
                max_states,
                class: parse_class(&class)?,
                vocab_size,
                n_agents: agents,
                seed: cli.seed,
                max_structures,
            };
            match search_countermodel(&f, &cfg) {
                Some(hit) => {
                    let text = hit.structure.to_json_string();
                    if let Some(path) = &out_file {
                        std::fs::write(path, &text)?;
                    }
                    out.emit(
                        format!(
                            "countermodel at state {} after {} structures:\n{}",
                            hit.structure.state_names[hit.state], hit.tried, text
                        ),
                        json!({
                            "found": true,
                            "state": hit.structure.state_names[hit.state],
                            "tried": hit.tried,
                            "structure": serde_json::from_str::<serde_json::Value>(&text)?,
                        }),
                    );
                    Ok(0)
                }
                None => {
                    out.emit(
                        format!("no countermodel within {max_structures} structures"),
                        json!({ "found": false, "tried": max_structures }),
                    );
                    Ok(1)
                }
            }
        }
        Cmd::Translate { input, which, harness } => {
            let text = match input.strip_prefix('@') {
                Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?,
                None => input,
            };
            let rf = parse_rformula(text.trim()).map_err(|e| anyhow!("{e}"))?;
            let g = nnf(&rf);
            let w: Which = which.into();
            let translated = match w {
                Which::T51 => translate_t51(&g)?,
                Which::T52 => translate_t52(&g, 2)?,
                Which::T52Single => translate_t52(&g, 1)?,
            };
            match harness {
                None => {
                    out.emit(
                        translated.to_string(),
                        json!({ "translation": translated.to_string() }),
                    );
                    Ok(0)
                }
                Some(path) => {
                    let model_text =
                        std::fs::read_to_string(&path).with_context(|| format!("reading {path}"))?;
                    let n = RModel::from_json_str(&model_text)?;
                    let report = check_equiv(&n, &g, w)?;
                    out.emit(
                        format!(
                            "fo={} modal={} sigma={} agree={}",
                            report.fo, report.modal, report.sigma, report.agree
                        ),
                        serde_json::to_value(&report)?,
                    );
                    Ok(if report.agree { 0 } else { 1 })
                }
            }
        }
        Cmd::Prove { proof_file } => {
            let text = std::fs::read_to_string(&proof_file)
                .with_context(|| format!("reading {proof_file}"))?;
            let script = ProofScript::from_json_str(&text)?;
            let v = check_proof(&script);
            let human = if v.ok {
                format!("accepted: {}", v.theorem.as_ref().unwrap())
            } else {
                let (step, reason) = v.failure.as_ref().unwrap();
                format!("rejected at step {step}: {reason}")
            };
            out.emit(
                human,
                json!({
                    "ok": v.ok,
                    "theorem": v.theorem.map(|t| t.to_string()),
                    "failure": v.failure.map(|(s, r)| json!({ "step": s, "reason": r })),
                    "warnings": v.warnings,
                }),
            );
            Ok(if v.ok { 0 } else { 1 })
        }
        Cmd::Props { model_file } => {
            let m = load_model(&model_file)?;
            let mut reports = Vec::new();
            let mut lines = Vec::new();
            for which in [
                AwarenessProperty::Gpp,
                AwarenessProperty::WeakGpp,
                AwarenessProperty::ClosedExists,
                AwarenessProperty::KnowsAware,
            ] {
                let r = m.check_awareness_property(which, None);
                lines.push(format!(
                    "{}: {}{}",
                    r.property,
                    r.holds,
                    r.witness
                        .as_ref()
                        .map(|w| format!(" ({})", serde_json::to_string(w).unwrap()))
                        .unwrap_or_default()
                ));
                reports.push(serde_json::to_value(&r)?);
            }
            let classes: Vec<String> =
                (1..=m.n_agents).map(|i| format!("agent {i}: {}", m.rel_class(i))).collect();
            lines.extend(classes.iter().cloned());
            out.emit(
                lines.join("\n"),
                json!({ "properties": reports, "rel_class": classes }),
            );
            Ok(0)
        }
        Cmd::Atoms { props, level, class } => {
            let names: Vec<String> = props
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
            let variant: Variant = class.into();
            let all = atoms(names.len(), level, variant);
            out.emit(
                format!(
                    "{} atoms over {{{}}} at level {level} ({})",
                    all.len(),
                    names.join(", "),
                    variant.name()
                ),
                json!({ "count": all.len(), "props": names, "level": level, "variant": variant }),
            );
            Ok(0)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let quiet = cli.quiet;
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            if !quiet {
                eprintln!("error: {e}");
            }
            std::process::exit(2);
        }
    }
}
