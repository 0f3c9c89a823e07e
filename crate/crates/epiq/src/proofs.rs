//! A Hilbert-style proof checker for the quantified epistemic system with
//! optional awareness axioms. The trusted kernel is deliberately small:
//! axioms are matched structurally against the concluded formula (no schema
//! unification), and the only rules are modus ponens and the two
//! generalization rules.

use crate::formula::{parse, Formula, ParseError};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Axioms and inference rules.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Rule {
    // Base axioms.
    Prop,
    K,
    A0,
    OneForall,
    KForall,
    NForall,
    Barcan,
    // Optional axioms (gated by the script's system tags).
    T,
    Four,
    Five,
    KA1,
    KA2,
    GPP,
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    // Inference rules.
    MP,
    GenK,
    GenForall,
}

impl Rule {
    /// The system tag gating this rule, if any.
    pub fn required_tag(self) -> Option<&'static str> {
        match self {
            Rule::T => Some("T"),
            Rule::Four => Some("4"),
            Rule::Five => Some("5"),
            Rule::KA1 | Rule::KA2 => Some("KA"),
            Rule::GPP => Some("GPP"),
            Rule::A1 => Some("A1"),
            Rule::A2 => Some("A2"),
            Rule::A3 => Some("A3"),
            Rule::A4 => Some("A4"),
            Rule::A5 => Some("A5"),
            Rule::A6 => Some("A6"),
            Rule::A7 => Some("A7"),
            _ => None,
        }
    }

    pub fn n_premises(self) -> usize {
        match self {
            Rule::MP => 2,
            Rule::GenK | Rule::GenForall => 1,
            _ => 0,
        }
    }
}

/// One line of a proof.
#[derive(Clone, Debug)]
pub struct ProofStep {
    pub formula: Formula,
    pub rule: Rule,
    pub premises: Vec<usize>,
    pub note: Option<String>,
}

/// A proof script: enabled optional-axiom tags plus the ordered steps; the
/// last formula is the theorem proved.
#[derive(Clone, Debug)]
pub struct ProofScript {
    pub system: Vec<String>,
    pub steps: Vec<ProofStep>,
}

#[derive(Serialize, Deserialize)]
struct RawStep {
    formula: String,
    rule: Rule,
    #[serde(default)]
    premises: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct RawScript {
    #[serde(default)]
    system: Vec<String>,
    steps: Vec<RawStep>,
}

#[derive(Debug, thiserror::Error)]
pub enum ProofLoadError {
    #[error("proof file: {0}")]
    Json(String),
    #[error("step {step}: formula parse error: {err}")]
    Formula { step: usize, err: ParseError },
}

impl ProofScript {
    pub fn from_json_str(text: &str) -> Result<ProofScript, ProofLoadError> {
        let raw: RawScript =
            serde_json::from_str(text).map_err(|e| ProofLoadError::Json(e.to_string()))?;
        let mut steps = Vec::new();
        for (i, s) in raw.steps.into_iter().enumerate() {
            let formula = parse(&s.formula)
                .map_err(|err| ProofLoadError::Formula { step: i, err })?;
            steps.push(ProofStep { formula, rule: s.rule, premises: s.premises, note: s.note });
        }
        Ok(ProofScript { system: raw.system, steps })
    }

    pub fn to_json_string(&self) -> String {
        let raw = RawScript {
            system: self.system.clone(),
            steps: self
                .steps
                .iter()
                .map(|s| RawStep {
                    formula: s.formula.to_string(),
                    rule: s.rule,
                    premises: s.premises.clone(),
                    note: s.note.clone(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).unwrap()
    }
}

/// Outcome of checking a script: either the proved theorem, or the first
/// failing step with a reason.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub ok: bool,
    pub theorem: Option<Formula>,
    pub failure: Option<(usize, String)>,
    /// Diagnostics that do not invalidate the proof (e.g. GPP applied to a
    /// quantified formula).
    pub warnings: Vec<String>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TautologyError {
    #[error("boolean abstraction has {0} atoms (limit 20)")]
    TooManyAtoms(usize),
}

/// Propositional tautology check under boolean abstraction: maximal
/// subformulas whose head is not ¬/∧ become atoms, then a truth table over
/// at most 20 atoms decides.
pub fn is_tautology(f: &Formula) -> Result<bool, TautologyError> {
    enum B {
        Atom(usize),
        Not(Box<B>),
        And(Box<B>, Box<B>),
    }
    fn abstract_bool(f: &Formula, atoms: &mut Vec<Formula>) -> B {
        match f {
            Formula::Not(g) => B::Not(Box::new(abstract_bool(g, atoms))),
            Formula::And(g, h) => B::And(
                Box::new(abstract_bool(g, atoms)),
                Box::new(abstract_bool(h, atoms)),
            ),
            other => {
                let id = match atoms.iter().position(|a| a == other) {
                    Some(i) => i,
                    None => {
                        atoms.push(other.clone());
                        atoms.len() - 1
                    }
                };
                B::Atom(id)
            }
        }
    }
    fn eval(b: &B, row: u32) -> bool {
        match b {
            B::Atom(i) => row & (1 << i) != 0,
            B::Not(g) => !eval(g, row),
            B::And(g, h) => eval(g, row) && eval(h, row),
        }
    }
    let mut atoms = Vec::new();
    let b = abstract_bool(f, &mut atoms);
    if atoms.len() > 20 {
        return Err(TautologyError::TooManyAtoms(atoms.len()));
    }
    Ok((0..(1u32 << atoms.len())).all(|row| eval(&b, row)))
}

// -- shape destructors for the desugared connectives ------------------------

/// Recognize `φ ⇒ ψ` in its desugared form `¬(¬¬φ ∧ ¬ψ)`.
pub fn as_implies(f: &Formula) -> Option<(&Formula, &Formula)> {
    if let Formula::Not(body) = f {
        if let Formula::And(l, r) = &**body {
            if let (Formula::Not(ll), Formula::Not(b)) = (&**l, &**r) {
                if let Formula::Not(a) = &**ll {
                    return Some((a, b));
                }
            }
        }
    }
    None
}

/// Recognize `φ ⇔ ψ` as the conjunction of the two desugared implications.
pub fn as_iff(f: &Formula) -> Option<(&Formula, &Formula)> {
    if let Formula::And(l, r) = f {
        let (a, b) = as_implies(l)?;
        let (b2, a2) = as_implies(r)?;
        if a == a2 && b == b2 {
            return Some((a, b));
        }
    }
    None
}

/// Recognize `∃x φ` in its desugared form `¬∀x ¬φ`.
pub fn as_exists(f: &Formula) -> Option<(&str, &Formula)> {
    if let Formula::Not(body) = f {
        if let Formula::Forall(x, inner) = &**body {
            if let Formula::Not(g) = &**inner {
                return Some((x, g));
            }
        }
    }
    None
}

fn subformulas(f: &Formula) -> Vec<&Formula> {
    let mut out = vec![f];
    match f {
        Formula::Prop(_) | Formula::Var(_) => {}
        Formula::Not(g)
        | Formula::K(_, g)
        | Formula::A(_, g)
        | Formula::X(_, g)
        | Formula::Forall(_, g) => out.extend(subformulas(g)),
        Formula::And(g, h) => {
            out.extend(subformulas(g));
            out.extend(subformulas(h));
        }
    }
    out
}

/// Find a witness ψ with `φ[x/ψ] = target`, `substitutable(φ, x, ψ)`, and
/// `ok(ψ)`. If `x` is free in `φ` any witness is a subformula of the
/// target; otherwise the instance degenerates to `φ = target`.
fn find_witness(
    phi: &Formula,
    x: &str,
    target: &Formula,
    ok: impl Fn(&Formula) -> bool,
) -> Option<Formula> {
    if !phi.free_vars().contains(x) {
        if phi == target {
            return Some(Formula::verum());
        }
        return None;
    }
    for cand in subformulas(target) {
        if ok(cand)
            && phi.substitutable(x, cand)
            && phi.substitute(x, cand).as_ref() == Ok(target)
        {
            return Some(cand.clone());
        }
    }
    None
}

/// Match `f` against the axiom `rule`; on failure the reason names the
/// violated shape or side condition. Returns optional diagnostics.
pub fn match_axiom(rule: Rule, f: &Formula) -> Result<Vec<String>, String> {
    let fail = |msg: &str| Err(msg.to_string());
    match rule {
        Rule::Prop => match is_tautology(f) {
            Ok(true) => Ok(vec![]),
            Ok(false) => fail("not a propositional tautology under boolean abstraction"),
            Err(e) => Err(e.to_string()),
        },
        Rule::K => {
            // (K_iφ ∧ K_i(φ⇒ψ)) ⇒ K_iψ
            let (lhs, rhs) = as_implies(f).ok_or("expected an implication")?;
            let Formula::K(i, psi) = rhs else { return fail("consequent must be K_iψ") };
            let Formula::And(kphi, kimp) = lhs else {
                return fail("antecedent must be a conjunction K_iφ ∧ K_i(φ⇒ψ)");
            };
            let (Formula::K(i1, phi), Formula::K(i2, imp)) = (&**kphi, &**kimp) else {
                return fail("antecedent conjuncts must both be K-formulas");
            };
            if i1 != i || i2 != i {
                return fail("agent indices must agree");
            }
            let (a, b) = as_implies(imp).ok_or("second conjunct must be K_i(φ⇒ψ)")?;
            if a != &**phi || b != &**psi {
                return fail("φ/ψ do not line up across the conjuncts");
            }
            Ok(vec![])
        }
        Rule::T => {
            let (lhs, rhs) = as_implies(f).ok_or("expected an implication")?;
            match lhs {
                Formula::K(_, phi) if &**phi == rhs => Ok(vec![]),
                _ => fail("expected K_iφ ⇒ φ"),
            }
        }
        Rule::Four => {
            let (lhs, rhs) = as_implies(f).ok_or("expected an implication")?;
            match (lhs, rhs) {
                (Formula::K(i, phi), Formula::K(j, kk)) if i == j => match &**kk {
                    Formula::K(l, phi2) if l == i && phi2 == phi => Ok(vec![]),
                    _ => fail("expected K_iφ ⇒ K_iK_iφ"),
                },
                _ => fail("expected K_iφ ⇒ K_iK_iφ"),
            }
        }
        Rule::Five => {
            let (lhs, rhs) = as_implies(f).ok_or("expected an implication")?;
            let Formula::Not(kphi) = lhs else { return fail("expected ¬K_iφ ⇒ K_i¬K_iφ") };
            let Formula::K(i, _) = &**kphi else { return fail("expected ¬K_iφ ⇒ K_i¬K_iφ") };
            match rhs {
                Formula::K(j, body) if j == i && &**body == lhs => Ok(vec![]),
                _ => fail("expected ¬K_iφ ⇒ K_i¬K_iφ"),
            }
        }
        Rule::A0 => {
            let (lhs, rhs) = as_iff(f).ok_or("expected a biconditional")?;
            let Formula::X(i, phi) = lhs else { return fail("left side must be X_iφ") };
            let Formula::And(k, a) = rhs else {
                return fail("right side must be K_iφ ∧ A_iφ");
            };
            match (&**k, &**a) {
                (Formula::K(i1, p1), Formula::A(i2, p2))
                    if i1 == i && i2 == i && p1 == phi && p2 == phi =>
                {
                    Ok(vec![])
                }
                _ => fail("right side must be K_iφ ∧ A_iφ with matching agent and body"),
            }
        }
        Rule::OneForall => {
            // ∀xφ ⇒ φ[x/ψ], ψ quantifier-free and substitutable for x in φ.
            let (lhs, rhs) = as_implies(f).ok_or("expected an implication")?;
            let Formula::Forall(x, phi) = lhs else {
                return fail("antecedent must be ∀xφ");
            };
            match find_witness(phi, x, rhs, |psi| psi.is_quantifier_free()) {
                Some(_) => Ok(vec![]),
                None => fail(
                    "consequent is not φ[x/ψ] for any quantifier-free ψ substitutable for x",
                ),
            }
        }
        Rule::KForall => {
            // ∀x(φ⇒ψ) ⇒ (∀xφ ⇒ ∀xψ)
            let (lhs, rhs) = as_implies(f).ok_or("expected an implication")?;
            let Formula::Forall(x, imp) = lhs else {
                return fail("antecedent must be ∀x(φ⇒ψ)");
            };
            let (phi, psi) = as_implies(imp).ok_or("antecedent body must be an implication")?;
            let (all_phi, all_psi) =
                as_implies(rhs).ok_or("consequent must be ∀xφ ⇒ ∀xψ")?;
            match (all_phi, all_psi) {
                (Formula::Forall(x1, p1), Formula::Forall(x2, p2))
                    if x1 == x && x2 == x && &**p1 == phi && &**p2 == psi =>
                {
                    Ok(vec![])
                }
                _ => fail("consequent must be ∀xφ ⇒ ∀xψ with the same x, φ, ψ"),
            }
        }
        Rule::NForall => {
            // φ ⇒ ∀xφ, x not free in φ.
            let (lhs, rhs) = as_implies(f).ok_or("expected an implication")?;
            let Formula::Forall(x, phi) = rhs else {
                return fail("consequent must be ∀xφ");
            };
            if &**phi != lhs {
                return fail("body of ∀ must equal the antecedent");
            }
            if lhs.free_vars().contains(x) {
                return fail("side condition violated: x is free in φ");
            }
            Ok(vec![])
        }
        Rule::Barcan => {
            // ∀xK_iφ ⇒ K_i∀xφ
            let (lhs, rhs) = as_implies(f).ok_or("expected an implication")?;
            let Formula::Forall(x, kphi) = lhs else {
                return fail("antecedent must be ∀xK_iφ");
            };
            let Formula::K(i, phi) = &**kphi else {
                return fail("antecedent body must be K_iφ");
            };
            match rhs {
                Formula::K(j, all) if j == i => match all.as_ref() {
                    Formula::Forall(x2, phi2) if x2 == x && phi2 == phi => Ok(vec![]),
                    _ => fail("consequent must be K_i∀xφ"),
                },
                _ => fail("consequent must be K_i∀xφ"),
            }
        }
        Rule::KA1 => {
            let (lhs, rhs) = as_implies(f).ok_or("expected an implication")?;
            let Formula::A(i, _) = lhs else { return fail("expected A_iφ ⇒ K_iA_iφ") };
            match rhs {
                Formula::K(j, body) if j == i && &**body == lhs => Ok(vec![]),
                _ => fail("expected A_iφ ⇒ K_iA_iφ"),
            }
        }
        Rule::KA2 => {
            let (lhs, rhs) = as_implies(f).ok_or("expected an implication")?;
            let Formula::Not(a) = lhs else { return fail("expected ¬A_iφ ⇒ K_i¬A_iφ") };
            let Formula::A(i, _) = &**a else { return fail("expected ¬A_iφ ⇒ K_i¬A_iφ") };
            match rhs {
                Formula::K(j, body) if j == i && &**body == lhs => Ok(vec![]),
                _ => fail("expected ¬A_iφ ⇒ K_i¬A_iφ"),
            }
        }
        Rule::GPP => {
            // A_iφ ⇔ ⋀_{p occurs in φ} A_ip (empty conjunction = verum).
            let (lhs, rhs) = as_iff(f).ok_or("expected a biconditional")?;
            let Formula::A(i, phi) = lhs else { return fail("left side must be A_iφ") };
            let expected =
                Formula::conj(phi.props().into_iter().map(|p| Formula::a(*i, Formula::prop(&p))));
            if *rhs != expected {
                return fail(
                    "right side must be the conjunction of A_ip over exactly the \
                     primitive propositions occurring in φ (sorted; empty = verum)",
                );
            }
            let mut warnings = vec![];
            if !phi.is_quantifier_free() {
                warnings.push("GPP instance with quantified φ accepted".to_string());
            }
            Ok(warnings)
        }
        Rule::A1 => {
            let (lhs, rhs) = as_iff(f).ok_or("expected a biconditional")?;
            let Formula::A(i, conj) = lhs else { return fail("left side must be A_i(φ∧ψ)") };
            let Formula::And(phi, psi) = &**conj else {
                return fail("left side must be A_i(φ∧ψ)");
            };
            let Formula::And(aphi, apsi) = rhs else {
                return fail("right side must be A_iφ ∧ A_iψ");
            };
            match (&**aphi, &**apsi) {
                (Formula::A(i1, p1), Formula::A(i2, p2))
                    if i1 == i && i2 == i && p1 == phi && p2 == psi =>
                {
                    Ok(vec![])
                }
                _ => fail("right side must be A_iφ ∧ A_iψ with matching agent and bodies"),
            }
        }
        Rule::A2 => {
            let (lhs, rhs) = as_iff(f).ok_or("expected a biconditional")?;
            match (lhs, rhs) {
                (Formula::A(i, neg), Formula::A(j, phi)) if i == j => match &**neg {
                    Formula::Not(inner) if inner == phi => Ok(vec![]),
                    _ => fail("expected A_i¬φ ⇔ A_iφ"),
                },
                _ => fail("expected A_i¬φ ⇔ A_iφ"),
            }
        }
        Rule::A3 | Rule::A4 | Rule::A5 => {
            let (lhs, rhs) = as_iff(f).ok_or("expected a biconditional")?;
            let (Formula::A(i, wrapped), Formula::A(j, phi)) = (lhs, rhs) else {
                return fail("both sides must be A_i-formulas");
            };
            if i != j {
                return fail("agent indices must agree");
            }
            let inner = match (rule, &**wrapped) {
                (Rule::A3, Formula::X(_, g)) => g,
                (Rule::A4, Formula::A(_, g)) => g,
                (Rule::A5, Formula::K(_, g)) => g,
                _ => return fail("left body must be X_jφ / A_jφ / K_jφ respectively"),
            };
            if inner != phi {
                return fail("inner formula must match the right side");
            }
            Ok(vec![])
        }
        Rule::A6 => {
            let (lhs, rhs) = as_implies(f).ok_or("expected an implication")?;
            let (Formula::A(i, phi), Formula::A(j, p)) = (lhs, rhs) else {
                return fail("expected A_iφ ⇒ A_ip");
            };
            if i != j {
                return fail("agent indices must agree");
            }
            let Formula::Prop(name) = &**p else {
                return fail("consequent body must be a primitive proposition");
            };
            if !phi.props().contains(name) {
                return fail("side condition violated: p does not occur in φ");
            }
            Ok(vec![])
        }
        Rule::A7 => {
            // A_iφ[x/ψ] ⇒ A_i∃xφ with ψ quantifier- and variable-free.
            let (lhs, rhs) = as_implies(f).ok_or("expected an implication")?;
            let (Formula::A(i, inst), Formula::A(j, ex)) = (lhs, rhs) else {
                return fail("expected A_iφ[x/ψ] ⇒ A_i∃xφ");
            };
            if i != j {
                return fail("agent indices must agree");
            }
            let (x, phi) = as_exists(ex).ok_or("consequent body must be ∃xφ")?;
            let closed_qf = |psi: &Formula| psi.is_quantifier_free() && psi.free_vars().is_empty();
            match find_witness(phi, x, inst, closed_qf) {
                Some(_) => Ok(vec![]),
                None => fail(
                    "antecedent is not φ[x/ψ] for any quantifier-free, variable-free ψ",
                ),
            }
        }
        Rule::MP | Rule::GenK | Rule::GenForall => {
            fail("inference rules require premises and are not axioms")
        }
    }
}

/// Check a proof script; stops at the first failing step.
pub fn check_proof(script: &ProofScript) -> Verdict {
    let mut warnings = Vec::new();
    let enabled: std::collections::BTreeSet<&str> =
        script.system.iter().map(|s| s.as_str()).collect();
    let mut failure = None;
    if script.steps.is_empty() {
        failure = Some((0, "empty proof".to_string()));
    }
    'steps: for (idx, step) in script.steps.iter().enumerate() {
        if let Some(tag) = step.rule.required_tag() {
            if !enabled.contains(tag) {
                failure = Some((idx, format!("rule {:?} requires system tag {tag}", step.rule)));
                break;
            }
        }
        if step.premises.len() != step.rule.n_premises() {
            failure = Some((
                idx,
                format!(
                    "rule {:?} takes {} premise(s), got {}",
                    step.rule,
                    step.rule.n_premises(),
                    step.premises.len()
                ),
            ));
            break;
        }
        for &p in &step.premises {
            if p >= idx {
                failure = Some((idx, format!("premise {p} does not precede the step")));
                break 'steps;
            }
        }
        match step.rule {
            Rule::MP => {
                let a = &script.steps[step.premises[0]].formula;
                let b = &script.steps[step.premises[1]].formula;
                let fits = |imp: &Formula, ante: &Formula| {
                    as_implies(imp)
                        .map(|(l, r)| l == ante && r == &step.formula)
                        .unwrap_or(false)
                };
                if !(fits(b, a) || fits(a, b)) {
                    failure = Some((
                        idx,
                        "modus ponens premises do not fit: need φ and φ⇒ψ concluding ψ"
                            .to_string(),
                    ));
                    break;
                }
            }
            Rule::GenK => {
                let prem = &script.steps[step.premises[0]].formula;
                match &step.formula {
                    Formula::K(_, body) if &**body == prem => {}
                    _ => {
                        failure =
                            Some((idx, "GenK must conclude K_iφ from premise φ".to_string()));
                        break;
                    }
                }
            }
            Rule::GenForall => {
                let prem = &script.steps[step.premises[0]].formula;
                match &step.formula {
                    Formula::Forall(_, body) if &**body == prem => {}
                    _ => {
                        failure = Some((
                            idx,
                            "GenForall must conclude ∀xφ from premise φ".to_string(),
                        ));
                        break;
                    }
                }
            }
            axiom => match match_axiom(axiom, &step.formula) {
                Ok(mut w) => {
                    warnings.extend(w.drain(..).map(|m| format!("step {idx}: {m}")));
                }
                Err(reason) => {
                    failure = Some((idx, reason));
                    break;
                }
            },
        }
    }
    Verdict {
        ok: failure.is_none(),
        theorem: if failure.is_none() {
            script.steps.last().map(|s| s.formula.clone())
        } else {
            None
        },
        failure,
        warnings,
    }
}

/// Mutations of a script used to exercise the checker's rejection paths:
/// each mutant negates one step's formula.
pub fn polarity_mutants(script: &ProofScript) -> Vec<ProofScript> {
    (0..script.steps.len())
        .map(|i| {
            let mut m = script.clone();
            m.steps[i].formula = match &script.steps[i].formula {
                Formula::Not(inner) => (**inner).clone(),
                other => Formula::not(other.clone()),
            };
            m
        })
        .collect()
}

/// A second mutation family: demote one non-`Prop` step to `Prop` (with no
/// premises). Axiom instances and inference conclusions are never
/// propositional tautologies under boolean abstraction, so each mutant must
/// be rejected.
pub fn rule_mutants(script: &ProofScript) -> Vec<ProofScript> {
    (0..script.steps.len())
        .filter(|&i| script.steps[i].rule != Rule::Prop)
        .map(|i| {
            let mut m = script.clone();
            m.steps[i].rule = Rule::Prop;
            m.steps[i].premises.clear();
            m
        })
        .collect()
}

/// Serialize a step list quickly for fixtures/tests.
pub fn script(system: &[&str], steps: &[(&str, Rule, &[usize])]) -> ProofScript {
    ProofScript {
        system: system.iter().map(|s| s.to_string()).collect(),
        steps: steps
            .iter()
            .map(|(text, rule, prem)| ProofStep {
                formula: parse(text).unwrap(),
                rule: *rule,
                premises: prem.to_vec(),
                note: None,
            })
            .collect(),
    }
}

/// Map rule names used in proof files onto `HashMap` for diagnostics.
pub fn rule_names() -> HashMap<&'static str, Rule> {
    use Rule::*;
    [
        ("Prop", Prop),
        ("K", K),
        ("A0", A0),
        ("OneForall", OneForall),
        ("KForall", KForall),
        ("NForall", NForall),
        ("Barcan", Barcan),
        ("T", T),
        ("Four", Four),
        ("Five", Five),
        ("KA1", KA1),
        ("KA2", KA2),
        ("GPP", GPP),
        ("A1", A1),
        ("A2", A2),
        ("A3", A3),
        ("A4", A4),
        ("A5", A5),
        ("A6", A6),
        ("A7", A7),
        ("MP", MP),
        ("GenK", GenK),
        ("GenForall", GenForall),
    ]
    .into_iter()
    .collect()
}

#[cfg(test)]
#[path = "proofs_tests.rs"]
mod tests;
