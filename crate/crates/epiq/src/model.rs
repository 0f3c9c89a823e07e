//! Finite awareness structures: loading, validation, relation-class
//! checking, and the awareness-property predicates.

use crate::formula::{parse_with_agents, print, Formula};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Internal state index (position in `state_names`).
pub type StateId = usize;

/// Which of reflexive / transitive / Euclidean a relation satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RelClass {
    pub r: bool,
    pub t: bool,
    pub e: bool,
}

impl fmt::Display for RelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.r {
            parts.push("r");
        }
        if self.t {
            parts.push("t");
        }
        if self.e {
            parts.push("e");
        }
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A finite awareness structure `M = (S, π, K_1..K_n, A_1..A_n)`.
///
/// `π` is stored as the set of true propositions per state; propositions not
/// listed (including everything outside `vocab`) are false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AwarenessStructure {
    pub n_agents: u32,
    pub state_names: Vec<String>,
    pub vocab: Vec<String>,
    /// Per state: the set of true propositions.
    pub pi: Vec<BTreeSet<String>>,
    /// Per agent (0-based), per state: successor set.
    pub rel: Vec<Vec<BTreeSet<StateId>>>,
    /// Per agent (0-based), per state: awareness set (sentences).
    pub aware: Vec<Vec<BTreeSet<Formula>>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawStructure {
    agents: u32,
    states: Vec<String>,
    vocab: Vec<String>,
    #[serde(default)]
    pi: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    rel: BTreeMap<String, Vec<(String, String)>>,
    #[serde(default)]
    aware: BTreeMap<String, BTreeMap<String, Vec<String>>>,
}

/// Error loading a structure file.
#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

impl AwarenessStructure {
    pub fn n_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.state_names.iter().position(|s| s == name)
    }

    /// Truth of proposition `p` at state `s`; false outside `vocab`.
    pub fn pi(&self, s: StateId, p: &str) -> bool {
        self.pi[s].contains(p)
    }

    pub fn succ(&self, agent: u32, s: StateId) -> &BTreeSet<StateId> {
        &self.rel[(agent - 1) as usize][s]
    }

    pub fn aware_set(&self, agent: u32, s: StateId) -> &BTreeSet<Formula> {
        &self.aware[(agent - 1) as usize][s]
    }

    /// A fresh structure with empty relations and awareness sets.
    pub fn empty(n_agents: u32, state_names: Vec<String>, vocab: Vec<String>) -> Self {
        let n = state_names.len();
        AwarenessStructure {
            n_agents,
            state_names,
            vocab,
            pi: vec![BTreeSet::new(); n],
            rel: vec![vec![BTreeSet::new(); n]; n_agents as usize],
            aware: vec![vec![BTreeSet::new(); n]; n_agents as usize],
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self, LoadError> {
        let raw: RawStructure = serde_json::from_str(text)?;
        if raw.agents == 0 {
            return Err(LoadError::Invalid("agent count must be at least 1".into()));
        }
        if raw.states.is_empty() {
            return Err(LoadError::Invalid("state set must be nonempty".into()));
        }
        let mut m = AwarenessStructure::empty(raw.agents, raw.states.clone(), raw.vocab.clone());
        let states = raw.states.clone();
        let sid = move |name: &str| -> Result<StateId, LoadError> {
            states
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| LoadError::Invalid(format!("unknown state '{name}'")))
        };
        for (state, props) in &raw.pi {
            let s = sid(state)?;
            for p in props {
                if !raw.vocab.contains(p) {
                    return Err(LoadError::Invalid(format!(
                        "pi lists '{p}' at state '{state}' but '{p}' is not in vocab"
                    )));
                }
                m.pi[s].insert(p.clone());
            }
        }
        let aid = |key: &str| -> Result<usize, LoadError> {
            let i: u32 = key
                .parse()
                .map_err(|_| LoadError::Invalid(format!("bad agent key '{key}'")))?;
            if i == 0 || i > raw.agents {
                return Err(LoadError::Invalid(format!("agent index {i} out of range")));
            }
            Ok((i - 1) as usize)
        };
        for (agent, pairs) in &raw.rel {
            let a = aid(agent)?;
            for (u, v) in pairs {
                let (u, v) = (sid(u)?, sid(v)?);
                m.rel[a][u].insert(v);
            }
        }
        for (agent, per_state) in &raw.aware {
            let a = aid(agent)?;
            for (state, formulas) in per_state {
                let s = sid(state)?;
                for text in formulas {
                    let f = parse_with_agents(text, Some(raw.agents))
                        .map_err(|e| LoadError::Invalid(format!("formula '{text}': {e}")))?;
                    if !f.is_sentence() {
                        return Err(LoadError::Invalid(format!(
                            "awareness entry '{text}' is not a sentence"
                        )));
                    }
                    m.aware[a][s].insert(f);
                }
            }
        }
        Ok(m)
    }

    pub fn to_json_string(&self) -> String {
        let raw = RawStructure {
            agents: self.n_agents,
            states: self.state_names.clone(),
            vocab: self.vocab.clone(),
            pi: self
                .state_names
                .iter()
                .enumerate()
                .filter(|(s, _)| !self.pi[*s].is_empty())
                .map(|(s, name)| (name.clone(), self.pi[s].iter().cloned().collect()))
                .collect(),
            rel: (1..=self.n_agents)
                .map(|i| {
                    let pairs: Vec<(String, String)> = (0..self.n_states())
                        .flat_map(|u| {
                            self.succ(i, u).iter().map(move |v| (u, *v))
                        })
                        .map(|(u, v)| (self.state_names[u].clone(), self.state_names[v].clone()))
                        .collect();
                    (i.to_string(), pairs)
                })
                .collect(),
            aware: (1..=self.n_agents)
                .map(|i| {
                    let per: BTreeMap<String, Vec<String>> = (0..self.n_states())
                        .filter(|s| !self.aware_set(i, *s).is_empty())
                        .map(|s| {
                            (
                                self.state_names[s].clone(),
                                self.aware_set(i, s).iter().map(print).collect(),
                            )
                        })
                        .collect();
                    (i.to_string(), per)
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("structure serialization cannot fail")
    }

    /// Structural diagnostics (empty = valid).
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.n_states();
        for (a, per_state) in self.rel.iter().enumerate() {
            for (u, succs) in per_state.iter().enumerate() {
                for v in succs {
                    if *v >= n {
                        out.push(format!("agent {}: relation pair ({u},{v}) references unknown state", a + 1));
                    }
                }
            }
        }
        for (a, per_state) in self.aware.iter().enumerate() {
            for (s, set) in per_state.iter().enumerate() {
                for f in set {
                    if !f.is_sentence() {
                        out.push(format!(
                            "agent {}, state {}: awareness entry '{f}' is not a sentence",
                            a + 1,
                            self.state_names[s]
                        ));
                    }
                    for i in f.agents() {
                        if i > self.n_agents {
                            out.push(format!(
                                "agent {}, state {}: awareness entry '{f}' mentions agent {i} > n",
                                a + 1,
                                self.state_names[s]
                            ));
                        }
                    }
                }
            }
        }
        out
    }

    /// The maximal subset of {r,t,e} satisfied by agent `i`'s relation,
    /// checked extensionally.
    pub fn rel_class(&self, agent: u32) -> RelClass {
        let n = self.n_states();
        let succ = |s: StateId| self.succ(agent, s);
        let r = (0..n).all(|s| succ(s).contains(&s));
        let t = (0..n).all(|s| succ(s).iter().all(|&u| succ(u).is_subset(succ(s))));
        let e = (0..n).all(|s| {
            succ(s)
                .iter()
                .all(|&u| succ(s).iter().all(|v| succ(u).contains(v)))
        });
        RelClass { r, t, e }
    }

    /// Largest AST size occurring in any awareness set (0 if all empty).
    pub fn max_aware_size(&self) -> usize {
        self.aware
            .iter()
            .flatten()
            .flatten()
            .map(Formula::size)
            .max()
            .unwrap_or(0)
    }

    /// Default size bound for the bounded awareness-property checks.
    pub fn default_bound(&self) -> usize {
        self.max_aware_size() + 2
    }

    /// Primitive propositions the agent is aware of at `s` (`A_i(s) ∩ Φ`).
    pub fn aware_props(&self, agent: u32, s: StateId) -> BTreeSet<String> {
        self.aware_set(agent, s)
            .iter()
            .filter_map(|f| match f {
                Formula::Prop(p) => Some(p.clone()),
                _ => None,
            })
            .collect()
    }
}

/// Which awareness property to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AwarenessProperty {
    /// Generated by primitive propositions.
    Gpp,
    /// Weakly generated by primitive propositions.
    WeakGpp,
    /// Closed under existential quantification.
    ClosedExists,
    /// Agents know what they are aware of.
    KnowsAware,
}

impl AwarenessProperty {
    pub fn name(self) -> &'static str {
        match self {
            AwarenessProperty::Gpp => "gpp",
            AwarenessProperty::WeakGpp => "weak_gpp",
            AwarenessProperty::ClosedExists => "closed_exists",
            AwarenessProperty::KnowsAware => "knows_aware",
        }
    }
}

/// Outcome of a (possibly bounded) awareness-property check.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub property: String,
    pub holds: bool,
    /// Size bound used (absent for the exact `knows_aware` check).
    pub bound: Option<usize>,
    /// On failure: agent, state name, offending member, and (when relevant)
    /// the formula whose membership is forced but missing.
    pub witness: Option<Witness>,
    /// Caveats, e.g. that formulas without primitive propositions are
    /// treated as vacuously generated.
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub agent: u32,
    pub state: String,
    pub member: Option<String>,
    pub missing: Option<String>,
}

/// Incremental size-stratified generator for the sentences of the language
/// over a finite proposition set. With `quantified`, also includes sentences
/// built with `∀` over the single variable `x` (a bounded one-variable
/// approximation of the full quantified language).
pub struct SentencePools {
    props: Vec<String>,
    n_agents: u32,
    quantified: bool,
    /// `pools[s-1]` = (closed formulas of size s, formulas of size s whose
    /// only free variable is `x`).
    pools: Vec<(Vec<Formula>, Vec<Formula>)>,
}

impl SentencePools {
    pub fn new(props: &BTreeSet<String>, n_agents: u32, quantified: bool) -> Self {
        SentencePools {
            props: props.iter().cloned().collect(),
            n_agents,
            quantified,
            pools: Vec::new(),
        }
    }

    /// Closed sentences of exactly `size` AST nodes.
    pub fn closed(&mut self, size: usize) -> &[Formula] {
        while self.pools.len() < size {
            self.grow();
        }
        &self.pools[size - 1].0
    }

    fn grow(&mut self) {
        let s = self.pools.len() + 1;
        let mut closed = Vec::new();
        let mut open = Vec::new();
        if s == 1 {
            closed.extend(self.props.iter().map(|p| Formula::Prop(p.clone())));
            if self.quantified {
                open.push(Formula::var("x"));
            }
        } else {
            let prev = &self.pools[s - 2];
            for (pool, out) in [(&prev.0, &mut closed), (&prev.1, &mut open)] {
                for f in pool.iter() {
                    out.push(Formula::not(f.clone()));
                    for i in 1..=self.n_agents {
                        out.push(Formula::k(i, f.clone()));
                        out.push(Formula::a(i, f.clone()));
                        out.push(Formula::x(i, f.clone()));
                    }
                }
            }
            if self.quantified {
                for f in self.pools[s - 2].0.iter().chain(&self.pools[s - 2].1) {
                    closed.push(Formula::forall("x", f.clone()));
                }
            }
            for left in 1..s - 1 {
                let right = s - 1 - left;
                let (lc, lo) = &self.pools[left - 1];
                let (rc, ro) = &self.pools[right - 1];
                for f in lc {
                    for g in rc {
                        closed.push(Formula::and(f.clone(), g.clone()));
                    }
                    for g in ro {
                        open.push(Formula::and(f.clone(), g.clone()));
                    }
                }
                for f in lo {
                    for g in rc.iter().chain(ro) {
                        open.push(Formula::and(f.clone(), g.clone()));
                    }
                }
            }
        }
        self.pools.push((closed, open));
    }
}

/// All sentences of the language over `props` up to `max_size` AST nodes
/// (see [`SentencePools`]).
pub fn enumerate_sentences(
    props: &BTreeSet<String>,
    n_agents: u32,
    max_size: usize,
    quantified: bool,
) -> Vec<Formula> {
    let mut pools = SentencePools::new(props, n_agents, quantified);
    (1..=max_size)
        .flat_map(|s| pools.closed(s).to_vec())
        .collect()
}

/// Ways to read `phi` as `phi'[x/psi]` with `psi` a quantifier-free sentence
/// occurring as a proper subformula of `phi` and actually replaced (the
/// degenerate readings `phi' = x` and `x` not free in `phi'` are excluded).
/// Returns pairs `(phi', psi)`, ordered by smallest `psi` first, with the
/// all-occurrences replacement before partial replacements.
fn abstractions(phi: &Formula, x: &str) -> Vec<(Formula, Formula)> {
    // Candidate psi: quantifier-free sentence subformulas of phi.
    let mut cands: BTreeSet<Formula> = BTreeSet::new();
    collect_subformulas(phi, &mut |f| {
        if f.is_quantifier_free() && f.is_sentence() {
            cands.insert(f.clone());
        }
    });
    let mut cands: Vec<Formula> = cands.into_iter().collect();
    cands.sort_by_key(|f| (f.size(), print(f)));

    let mut out: Vec<(Formula, Formula)> = Vec::new();
    for psi in &cands {
        if psi == phi {
            continue; // handled below as the degenerate case
        }
        // Only occurrences outside the scope of a same-named binder can be
        // abstracted (the substituted variable must stay free).
        let count = count_occurrences(phi, psi, x);
        if count == 0 {
            continue;
        }
        // Replace all occurrences first, then each single occurrence.
        let mut budget = usize::MAX;
        let full = replace_occurrences(phi, psi, x, &mut budget);
        out.push((full, psi.clone()));
        if count > 1 {
            for k in 0..count {
                out.push((replace_nth(phi, psi, x, k), psi.clone()));
            }
        }
    }
    out
}

fn collect_subformulas(f: &Formula, visit: &mut impl FnMut(&Formula)) {
    visit(f);
    match f {
        Formula::Prop(_) | Formula::Var(_) => {}
        Formula::Not(g)
        | Formula::K(_, g)
        | Formula::A(_, g)
        | Formula::X(_, g)
        | Formula::Forall(_, g) => collect_subformulas(g, visit),
        Formula::And(g, h) => {
            collect_subformulas(g, visit);
            collect_subformulas(h, visit);
        }
    }
}

/// Occurrences of `target` in `f` that are not under a binder named `x`
/// (only those can be abstracted to a free occurrence of `x`).
fn count_occurrences(f: &Formula, target: &Formula, x: &str) -> usize {
    if f == target {
        return 1;
    }
    match f {
        Formula::Prop(_) | Formula::Var(_) => 0,
        Formula::Not(g) | Formula::K(_, g) | Formula::A(_, g) | Formula::X(_, g) => {
            count_occurrences(g, target, x)
        }
        Formula::Forall(v, g) => {
            if v == x {
                0
            } else {
                count_occurrences(g, target, x)
            }
        }
        Formula::And(g, h) => count_occurrences(g, target, x) + count_occurrences(h, target, x),
    }
}

/// Replace up to `budget` abstractable occurrences of `target` (pre-order)
/// by variable `x`; decrements `budget` per replacement.
fn replace_occurrences(f: &Formula, target: &Formula, x: &str, budget: &mut usize) -> Formula {
    if *budget > 0 && f == target {
        *budget -= 1;
        return Formula::var(x);
    }
    match f {
        Formula::Prop(_) | Formula::Var(_) => f.clone(),
        Formula::Not(g) => Formula::not(replace_occurrences(g, target, x, budget)),
        Formula::K(i, g) => Formula::k(*i, replace_occurrences(g, target, x, budget)),
        Formula::A(i, g) => Formula::a(*i, replace_occurrences(g, target, x, budget)),
        Formula::X(i, g) => Formula::x(*i, replace_occurrences(g, target, x, budget)),
        Formula::Forall(v, g) => {
            if v == x {
                f.clone()
            } else {
                Formula::forall(v, replace_occurrences(g, target, x, budget))
            }
        }
        Formula::And(g, h) => {
            let l = replace_occurrences(g, target, x, budget);
            let r = replace_occurrences(h, target, x, budget);
            Formula::and(l, r)
        }
    }
}

/// Replace exactly the `n`-th abstractable occurrence (pre-order) of
/// `target` by `x`.
fn replace_nth(f: &Formula, target: &Formula, x: &str, n: usize) -> Formula {
    fn go(f: &Formula, target: &Formula, x: &str, n: &mut isize) -> Formula {
        if f == target {
            *n -= 1;
            if *n == -1 {
                return Formula::var(x);
            }
        }
        match f {
            Formula::Prop(_) | Formula::Var(_) => f.clone(),
            Formula::Not(g) => Formula::not(go(g, target, x, n)),
            Formula::K(i, g) => Formula::k(*i, go(g, target, x, n)),
            Formula::A(i, g) => Formula::a(*i, go(g, target, x, n)),
            Formula::X(i, g) => Formula::x(*i, go(g, target, x, n)),
            Formula::Forall(v, g) => {
                if v == x {
                    f.clone()
                } else {
                    Formula::forall(v, go(g, target, x, n))
                }
            }
            Formula::And(g, h) => {
                let l = go(g, target, x, n);
                let r = go(h, target, x, n);
                Formula::and(l, r)
            }
        }
    }
    go(f, target, x, &mut (n as isize))
}

impl AwarenessStructure {
    /// Check one of the four awareness properties. `gpp`, `weak_gpp`, and
    /// `closed_exists` are checked relative to a size bound (default:
    /// [`default_bound`](Self::default_bound)); `knows_aware` is exact.
    pub fn check_awareness_property(
        &self,
        which: AwarenessProperty,
        bound: Option<usize>,
    ) -> PropertyReport {
        let b = bound.unwrap_or_else(|| self.default_bound());
        match which {
            AwarenessProperty::KnowsAware => self.check_knows_aware(),
            AwarenessProperty::Gpp => self.check_gpp(b),
            AwarenessProperty::WeakGpp => self.check_weak_gpp(b),
            AwarenessProperty::ClosedExists => self.check_closed_exists(b),
        }
    }

    fn report(
        &self,
        which: AwarenessProperty,
        bound: Option<usize>,
        witness: Option<Witness>,
        notes: Vec<String>,
    ) -> PropertyReport {
        PropertyReport {
            property: which.name().to_string(),
            holds: witness.is_none(),
            bound,
            witness,
            notes,
        }
    }

    fn check_knows_aware(&self) -> PropertyReport {
        for i in 1..=self.n_agents {
            for s in 0..self.n_states() {
                for &t in self.succ(i, s) {
                    if self.aware_set(i, s) != self.aware_set(i, t) {
                        let diff = self
                            .aware_set(i, s)
                            .symmetric_difference(self.aware_set(i, t))
                            .next()
                            .map(print);
                        return self.report(
                            AwarenessProperty::KnowsAware,
                            None,
                            Some(Witness {
                                agent: i,
                                state: self.state_names[s].clone(),
                                member: diff,
                                missing: Some(self.state_names[t].clone()),
                            }),
                            vec![],
                        );
                    }
                }
            }
        }
        self.report(AwarenessProperty::KnowsAware, None, None, vec![])
    }

    fn check_gpp(&self, b: usize) -> PropertyReport {
        let notes = vec![
            "bounded check: membership clauses verified for formulas up to the size bound".into(),
            "formulas with no primitive propositions are treated as vacuously generated (empty conjunction reading)".into(),
        ];
        for i in 1..=self.n_agents {
            for s in 0..self.n_states() {
                let props = self.aware_props(i, s);
                // Left-to-right: every member's propositions are in A_i(s) ∩ Φ.
                for f in self.aware_set(i, s) {
                    if !f.props().is_subset(&props) {
                        let missing = f.props().difference(&props).next().cloned();
                        return self.report(
                            AwarenessProperty::Gpp,
                            Some(b),
                            Some(Witness {
                                agent: i,
                                state: self.state_names[s].clone(),
                                member: Some(print(f)),
                                missing,
                            }),
                            notes,
                        );
                    }
                }
                // Right-to-left: every sentence (up to the bound) over the
                // aware propositions must be a member. Generated size by
                // size so a failure exits before the space blows up.
                let mut pools = SentencePools::new(&props, self.n_agents, true);
                for size in 1..=b {
                    for f in pools.closed(size) {
                        if !self.aware_set(i, s).contains(f) {
                            return self.report(
                                AwarenessProperty::Gpp,
                                Some(b),
                                Some(Witness {
                                    agent: i,
                                    state: self.state_names[s].clone(),
                                    member: None,
                                    missing: Some(print(f)),
                                }),
                                notes,
                            );
                        }
                    }
                }
            }
        }
        self.report(AwarenessProperty::Gpp, Some(b), None, notes)
    }

    fn check_weak_gpp(&self, b: usize) -> PropertyReport {
        let notes =
            vec!["bounded check: forced memberships verified up to the size bound".into()];
        for i in 1..=self.n_agents {
            for s in 0..self.n_states() {
                let set = self.aware_set(i, s);
                let contains = |f: &Formula| set.contains(f);
                let fail = |member: &Formula, missing: &Formula| -> PropertyReport {
                    self.report(
                        AwarenessProperty::WeakGpp,
                        Some(b),
                        Some(Witness {
                            agent: i,
                            state: self.state_names[s].clone(),
                            member: Some(print(member)),
                            missing: Some(print(missing)),
                        }),
                        notes.clone(),
                    )
                };
                for f in set {
                    // Decomposition direction of the operator biconditionals.
                    match f {
                        Formula::Not(g)
                        | Formula::K(_, g)
                        | Formula::A(_, g)
                        | Formula::X(_, g) => {
                            if !contains(g) {
                                return fail(f, g);
                            }
                        }
                        Formula::And(g, h) => {
                            if !contains(g) {
                                return fail(f, g);
                            }
                            if !contains(h) {
                                return fail(f, h);
                            }
                        }
                        Formula::Forall(_, _) => {
                            // ∀xφ ∈ A_i(s) forces each primitive proposition
                            // of ∀xφ (one direction only).
                            for p in f.props() {
                                let pf = Formula::prop(&p);
                                if !contains(&pf) {
                                    return fail(f, &pf);
                                }
                            }
                        }
                        Formula::Prop(_) | Formula::Var(_) => {}
                    }
                    // Composition direction, bounded by size.
                    if f.size() + 1 <= b {
                        let forced = std::iter::once(Formula::not(f.clone())).chain(
                            (1..=self.n_agents).flat_map(|j| {
                                [
                                    Formula::k(j, f.clone()),
                                    Formula::a(j, f.clone()),
                                    Formula::x(j, f.clone()),
                                ]
                            }),
                        );
                        for g in forced {
                            if !contains(&g) {
                                return fail(f, &g);
                            }
                        }
                    }
                    for g in set {
                        if f.size() + g.size() + 1 <= b {
                            let fg = Formula::and(f.clone(), g.clone());
                            if !contains(&fg) {
                                return fail(f, &fg);
                            }
                        }
                    }
                    // Existential clause: if φ[x/ψ] ∈ A_i(s) then ∃xφ ∈ A_i(s).
                    if let Some(mut report) = self.force_exists(i, s, f, b, &notes) {
                        report.property = AwarenessProperty::WeakGpp.name().into();
                        return report;
                    }
                }
            }
        }
        self.report(AwarenessProperty::WeakGpp, Some(b), None, notes)
    }

    /// Shared existential-closure obligation: every way of reading `f` as
    /// `φ'[x/ψ]` forces `∃xφ' ∈ A_i(s)` (bounded by size).
    fn force_exists(
        &self,
        i: u32,
        s: StateId,
        f: &Formula,
        b: usize,
        notes: &[String],
    ) -> Option<PropertyReport> {
        let set = self.aware_set(i, s);
        for (phi1, _psi) in abstractions(f, "x") {
            let ex = Formula::exists("x", phi1);
            if ex.size() > b {
                continue;
            }
            if !set.contains(&ex) {
                return Some(self.report(
                    AwarenessProperty::ClosedExists,
                    Some(b),
                    Some(Witness {
                        agent: i,
                        state: self.state_names[s].clone(),
                        member: Some(print(f)),
                        missing: Some(print(&ex)),
                    }),
                    notes.to_vec(),
                ));
            }
        }
        None
    }

    fn check_closed_exists(&self, b: usize) -> PropertyReport {
        let notes = vec![
            "bounded check: forced existentials verified up to the size bound".into(),
            "only proper abstractions are considered (a subformula occurrence is actually replaced)".into(),
        ];
        for i in 1..=self.n_agents {
            for s in 0..self.n_states() {
                // Largest members first, so the most informative witness
                // (the largest failing member) is reported.
                let mut members: Vec<&Formula> = self.aware_set(i, s).iter().collect();
                members.sort_by_key(|f| (std::cmp::Reverse(f.size()), print(f)));
                for f in members {
                    if let Some(mut report) = self.force_exists(i, s, f, b, &notes) {
                        report.property = AwarenessProperty::ClosedExists.name().into();
                        return report;
                    }
                }
            }
        }
        self.report(AwarenessProperty::ClosedExists, Some(b), None, notes)
    }

    /// Extend every awareness set to be generated by primitive propositions
    /// (relative to size bound `b`): each `A_i(s)` becomes all sentences up
    /// to size `b` over `A_i(s) ∩ Φ`.
    pub fn close_gpp(&mut self, b: usize) {
        for a in 0..self.n_agents as usize {
            for s in 0..self.n_states() {
                let props: BTreeSet<String> = self.aware[a][s]
                    .iter()
                    .filter_map(|f| match f {
                        Formula::Prop(p) => Some(p.clone()),
                        _ => None,
                    })
                    .collect();
                self.aware[a][s] =
                    enumerate_sentences(&props, self.n_agents, b, true).into_iter().collect();
            }
        }
    }
}

#[cfg(test)]
#[path = "model_tests.rs"]
mod tests;
