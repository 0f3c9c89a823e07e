//! The truth relation on finite awareness structures.
//!
//! Universal quantification ranges over the infinite set of quantifier-free
//! sentences (over the full countable proposition vocabulary). Exact
//! evaluation is possible because truth of an instantiated formula depends on
//! the instantiating sentence only through (a) its truth profile — the set of
//! states where it holds — and (b) which awareness-set memberships it
//! triggers through the quantified formula's awareness contexts. Both are
//! finite for a finite structure: truth profiles form a finite fixpoint, and
//! only finitely many instantiations can trigger a membership (awareness
//! sets are finite). The independent [`eval_oracle`] cross-validates this
//! quotient by brute-force enumeration.

use crate::formula::{Formula, QfEnumerator, ValuationSyn};
use crate::model::{AwarenessStructure, StateId};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Truth profile of a sentence: bitmask over states (bit `s` = true at `s`).
pub type Profile = u64;

/// Three-valued oracle verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict3 {
    True,
    False {
        /// Counter-instantiation for the outermost refuted quantifier, if any.
        witness: Option<Formula>,
    },
    Unknown,
}

impl Verdict3 {
    pub fn is_true(&self) -> bool {
        matches!(self, Verdict3::True)
    }
    pub fn is_false(&self) -> bool {
        matches!(self, Verdict3::False { .. })
    }
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Verdict3::True => Some(true),
            Verdict3::False { .. } => Some(false),
            Verdict3::Unknown => None,
        }
    }
    fn not(self) -> Verdict3 {
        match self {
            Verdict3::True => Verdict3::False { witness: None },
            Verdict3::False { .. } => Verdict3::True,
            Verdict3::Unknown => Verdict3::Unknown,
        }
    }
    fn and(self, other: Verdict3) -> Verdict3 {
        match (self, other) {
            (f @ Verdict3::False { .. }, _) | (_, f @ Verdict3::False { .. }) => f,
            (Verdict3::True, Verdict3::True) => Verdict3::True,
            _ => Verdict3::Unknown,
        }
    }
}

/// Evaluate a quantifier-free sentence at a state (the base truth relation).
pub fn eval_base(m: &AwarenessStructure, s: StateId, f: &Formula) -> bool {
    match f {
        Formula::Prop(p) => m.pi(s, p),
        Formula::Var(v) => panic!("eval_base: free variable ?{v}"),
        Formula::Not(g) => !eval_base(m, s, g),
        Formula::And(g, h) => eval_base(m, s, g) && eval_base(m, s, h),
        Formula::K(i, g) => m.succ(*i, s).iter().all(|&t| eval_base(m, t, g)),
        Formula::A(i, g) => m.aware_set(*i, s).contains(g),
        Formula::X(i, g) => {
            m.aware_set(*i, s).contains(g) && m.succ(*i, s).iter().all(|&t| eval_base(m, t, g))
        }
        Formula::Forall(_, _) => panic!("eval_base: quantifier in {f}"),
    }
}

/// An awareness context of a quantified formula: an occurrence `A_i(χ)`
/// where the quantified variable is free in `χ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AContext {
    pub agent: u32,
    pub body: Formula,
}

/// One equivalence class of instantiation sentences, with a representative.
#[derive(Debug, Clone)]
pub struct SentenceClass {
    pub profile: Profile,
    /// Per single-variable awareness context: membership mask over states.
    pub pattern: Vec<Profile>,
    pub representative: Formula,
}

/// Per-structure evaluation session (memoizes profiles and truth values).
pub struct Evaluator<'m> {
    pub m: &'m AwarenessStructure,
    profiles: Option<BTreeMap<Profile, Formula>>,
    memo: HashMap<(StateId, Formula), bool>,
}

impl<'m> Evaluator<'m> {
    pub fn new(m: &'m AwarenessStructure) -> Self {
        assert!(m.n_states() <= 64, "at most 64 states supported");
        Evaluator { m, profiles: None, memo: HashMap::new() }
    }

    fn all_states_mask(&self) -> Profile {
        if self.m.n_states() == 64 {
            u64::MAX
        } else {
            (1u64 << self.m.n_states()) - 1
        }
    }

    /// Profile of a quantifier-free sentence.
    pub fn profile_of(&self, f: &Formula) -> Profile {
        let mut p = 0u64;
        for s in 0..self.m.n_states() {
            if eval_base(self.m, s, f) {
                p |= 1 << s;
            }
        }
        p
    }

    /// The exact set of realizable truth profiles of quantifier-free
    /// sentences (over the full countable vocabulary), each with a
    /// representative sentence. Least fixpoint of: vocabulary propositions,
    /// the all-false profile (any unlisted proposition), awareness-membership
    /// profiles of quantifier-free members, closed under complement,
    /// intersection, and box per agent relation.
    pub fn realizable_profiles(&mut self) -> &BTreeMap<Profile, Formula> {
        if self.profiles.is_none() {
            let m = self.m;
            let full = self.all_states_mask();
            let mut reps: BTreeMap<Profile, Formula> = BTreeMap::new();
            let add = |reps: &mut BTreeMap<Profile, Formula>, p: Profile, f: Formula| {
                reps.entry(p).or_insert(f);
            };
            for p in &m.vocab {
                let f = Formula::Prop(p.clone());
                let mask = self.profile_of(&f);
                add(&mut reps, mask, f);
            }
            // Any proposition outside the vocabulary is false everywhere.
            let fresh = {
                let mut name = "u".to_string();
                while m.vocab.contains(&name) {
                    name.push('u');
                }
                Formula::Prop(name)
            };
            add(&mut reps, 0, fresh);
            for i in 1..=m.n_agents {
                let mut members: BTreeSet<Formula> = BTreeSet::new();
                for s in 0..m.n_states() {
                    members.extend(m.aware_set(i, s).iter().cloned());
                }
                for alpha in members {
                    if !alpha.is_quantifier_free() {
                        continue; // not in the quantification domain
                    }
                    let mut mask = 0u64;
                    for s in 0..m.n_states() {
                        if m.aware_set(i, s).contains(&alpha) {
                            mask |= 1 << s;
                        }
                    }
                    add(&mut reps, mask, Formula::a(i, alpha.clone()));
                    add(&mut reps, self.profile_of(&alpha), alpha);
                }
            }
            // Close under complement, intersection, and box.
            loop {
                let snapshot: Vec<(Profile, Formula)> =
                    reps.iter().map(|(p, f)| (*p, f.clone())).collect();
                let before = reps.len();
                for (p, f) in &snapshot {
                    add(&mut reps, !p & full, Formula::not(f.clone()));
                    for (q, g) in &snapshot {
                        add(&mut reps, p & q, Formula::and(f.clone(), g.clone()));
                    }
                    for i in 1..=m.n_agents {
                        let mut boxed = 0u64;
                        for s in 0..m.n_states() {
                            if m.succ(i, s).iter().all(|t| p & (1 << t) != 0) {
                                boxed |= 1 << s;
                            }
                        }
                        add(&mut reps, boxed, Formula::k(i, f.clone()));
                    }
                }
                if reps.len() == before {
                    break;
                }
            }
            self.profiles = Some(reps);
        }
        self.profiles.as_ref().unwrap()
    }

    /// Awareness contexts of `f` relative to variable `x`: occurrences
    /// `A_i(χ)` with `x` free in `χ`. `single_var_only` keeps only contexts
    /// whose body has `x` as sole free variable (those define the class
    /// pattern); otherwise all are returned (used for candidate matching).
    pub fn a_contexts(f: &Formula, x: &str, single_var_only: bool) -> Vec<AContext> {
        let mut out = BTreeSet::new();
        fn go(f: &Formula, x: &str, single: bool, out: &mut BTreeSet<AContext>) {
            match f {
                Formula::Prop(_) | Formula::Var(_) => {}
                Formula::Not(g) | Formula::K(_, g) | Formula::X(_, g) => go(g, x, single, out),
                Formula::And(g, h) => {
                    go(g, x, single, out);
                    go(h, x, single, out);
                }
                Formula::A(i, g) => {
                    let fv = g.free_vars();
                    if fv.contains(x) && (!single || fv.len() == 1) {
                        out.insert(AContext { agent: *i, body: (**g).clone() });
                    }
                    go(g, x, single, out);
                }
                Formula::Forall(v, g) => {
                    if v != x {
                        go(g, x, single, out);
                    }
                }
            }
        }
        go(f, x, single_var_only, &mut out);
        out.into_iter().collect()
    }

    /// Membership mask of context `χ[x/ψ]` in agent `i`'s awareness sets.
    fn pattern_entry(&self, ctx: &AContext, x: &str, psi: &Formula) -> Profile {
        let inst = match ctx.body.substitute(x, psi) {
            Ok(f) => f,
            Err(_) => return 0,
        };
        let mut mask = 0u64;
        for s in 0..self.m.n_states() {
            if self.m.aware_set(ctx.agent, s).contains(&inst) {
                mask |= 1 << s;
            }
        }
        mask
    }

    /// Candidate instantiations for `∀x f`: sentences obtained by matching
    /// each awareness context of `f` against each awareness-set member
    /// (solving `χ[x/ψ] = α` for `ψ`), plus every quantifier-free member
    /// itself, plus one generic representative per realizable profile
    /// (double-negation padded until it escapes every finite awareness set).
    pub fn candidates(&mut self, f: &Formula, x: &str) -> Vec<Formula> {
        let m = self.m;
        let mut set: BTreeSet<Formula> = BTreeSet::new();
        let contexts = Self::a_contexts(f, x, false);
        let mut members: BTreeSet<Formula> = BTreeSet::new();
        for i in 1..=m.n_agents {
            for s in 0..m.n_states() {
                members.extend(m.aware_set(i, s).iter().cloned());
            }
        }
        for ctx in &contexts {
            for alpha in &members {
                if let Some(psi) = match_abstraction(&ctx.body, x, alpha) {
                    if psi.is_quantifier_free() && psi.is_sentence() {
                        set.insert(psi);
                    }
                }
            }
        }
        for alpha in &members {
            if alpha.is_quantifier_free() {
                set.insert(alpha.clone());
            }
        }
        let max_aware = m.max_aware_size();
        let generics: Vec<Formula> = self
            .realizable_profiles()
            .values()
            .cloned()
            .collect();
        for mut g in generics {
            while g.size() <= max_aware {
                g = Formula::not(Formula::not(g));
            }
            set.insert(g);
        }
        set.into_iter().collect()
    }

    /// The sentence classes for `∀x f` (profiles × patterns with
    /// representatives); mainly used for oracle cross-checking and reporting.
    pub fn sentence_classes(&mut self, f: &Formula, x: &str) -> Vec<SentenceClass> {
        let contexts = Self::a_contexts(f, x, true);
        let mut seen: BTreeMap<(Profile, Vec<Profile>), Formula> = BTreeMap::new();
        for psi in self.candidates(f, x) {
            let profile = self.profile_of(&psi);
            let pattern: Vec<Profile> =
                contexts.iter().map(|c| self.pattern_entry(c, x, &psi)).collect();
            seen.entry((profile, pattern)).or_insert(psi);
        }
        seen.into_iter()
            .map(|((profile, pattern), representative)| SentenceClass {
                profile,
                pattern,
                representative,
            })
            .collect()
    }

    /// Exact truth of a sentence at a state.
    pub fn eval_sentence(&mut self, s: StateId, f: &Formula) -> bool {
        if let Some(v) = self.memo.get(&(s, f.clone())) {
            return *v;
        }
        let v = match f {
            Formula::Prop(p) => self.m.pi(s, p),
            Formula::Var(v) => panic!("eval_sentence: free variable ?{v}"),
            Formula::Not(g) => !self.eval_sentence(s, g),
            Formula::And(g, h) => self.eval_sentence(s, g) && self.eval_sentence(s, h),
            Formula::K(i, g) => {
                let succs: Vec<StateId> = self.m.succ(*i, s).iter().copied().collect();
                succs.into_iter().all(|t| self.eval_sentence(t, g))
            }
            Formula::A(i, g) => self.m.aware_set(*i, s).contains(g.as_ref()),
            Formula::X(i, g) => {
                self.m.aware_set(*i, s).contains(g.as_ref()) && {
                    let succs: Vec<StateId> = self.m.succ(*i, s).iter().copied().collect();
                    succs.into_iter().all(|t| self.eval_sentence(t, g))
                }
            }
            Formula::Forall(x, g) => {
                let cands = self.candidates(g, x);
                cands.into_iter().all(|psi| {
                    let inst = g
                        .substitute(x, &psi)
                        .expect("sentence instantiation cannot be captured");
                    self.eval_sentence(s, &inst)
                })
            }
        };
        self.memo.insert((s, f.clone()), v);
        v
    }

    /// Exact truth of an arbitrary formula under a syntactic valuation:
    /// free variables are instantiated through the valuation first.
    pub fn eval_exact(&mut self, s: StateId, v: &ValuationSyn, f: &Formula) -> bool {
        let closed = v.apply(f);
        self.eval_sentence(s, &closed)
    }

    /// `M ⊨ f`: truth at every state.
    pub fn valid_in_structure(&mut self, f: &Formula) -> bool {
        assert!(f.is_sentence(), "valid_in_structure requires a sentence");
        (0..self.m.n_states()).all(|s| self.eval_sentence(s, f))
    }

    /// Independent bounded-enumeration oracle. Quantifiers are instantiated
    /// with the first `budget` sentences of the canonical enumeration (over
    /// the vocabulary, awareness propositions, and one fresh proposition)
    /// plus every quantifier-free awareness-set member. Returns `False` with
    /// a witness on a counterinstance; `True` only when the tried set covers
    /// every sentence class of the quotient; otherwise `Unknown`.
    pub fn eval_oracle(&mut self, s: StateId, v: &ValuationSyn, f: &Formula, budget: u64) -> Verdict3 {
        let closed = v.apply(f);
        self.oracle_sentence(s, &closed, budget)
    }

    fn oracle_instantiations(&mut self, budget: u64) -> Vec<Formula> {
        let m = self.m;
        let mut props: BTreeSet<String> = m.vocab.iter().cloned().collect();
        let mut members: BTreeSet<Formula> = BTreeSet::new();
        for i in 1..=m.n_agents {
            for st in 0..m.n_states() {
                for alpha in m.aware_set(i, st) {
                    props.extend(alpha.props());
                    if alpha.is_quantifier_free() {
                        members.insert(alpha.clone());
                    }
                }
            }
        }
        let mut fresh = "u".to_string();
        while props.contains(&fresh) {
            fresh.push('u');
        }
        props.insert(fresh);
        let vocab: Vec<String> = props.into_iter().collect();
        let mut en = QfEnumerator::new(&vocab, m.n_agents);
        let mut out: BTreeSet<Formula> = members;
        for idx in 0..budget {
            out.insert(en.get(idx));
        }
        out.into_iter().collect()
    }

    fn oracle_sentence(&mut self, s: StateId, f: &Formula, budget: u64) -> Verdict3 {
        match f {
            Formula::Prop(p) => {
                if self.m.pi(s, p) {
                    Verdict3::True
                } else {
                    Verdict3::False { witness: None }
                }
            }
            Formula::Var(v) => panic!("oracle: free variable ?{v}"),
            Formula::Not(g) => self.oracle_sentence(s, g, budget).not(),
            Formula::And(g, h) => {
                self.oracle_sentence(s, g, budget).and(self.oracle_sentence(s, h, budget))
            }
            Formula::K(i, g) => {
                let succs: Vec<StateId> = self.m.succ(*i, s).iter().copied().collect();
                let mut acc = Verdict3::True;
                for t in succs {
                    acc = acc.and(self.oracle_sentence(t, g, budget));
                    if acc.is_false() {
                        break;
                    }
                }
                acc
            }
            Formula::A(i, g) => {
                if self.m.aware_set(*i, s).contains(g.as_ref()) {
                    Verdict3::True
                } else {
                    Verdict3::False { witness: None }
                }
            }
            Formula::X(i, g) => {
                let aware = if self.m.aware_set(*i, s).contains(g.as_ref()) {
                    Verdict3::True
                } else {
                    Verdict3::False { witness: None }
                };
                aware.and(self.oracle_sentence(s, &Formula::k(*i, (**g).clone()), budget))
            }
            Formula::Forall(x, g) => {
                let tried = self.oracle_instantiations(budget);
                let mut any_unknown = false;
                let mut covered: BTreeSet<(Profile, Vec<Profile>)> = BTreeSet::new();
                let contexts = Self::a_contexts(g, x, true);
                for psi in &tried {
                    let inst = g.substitute(x, psi).expect("sentence instantiation");
                    match self.oracle_sentence(s, &inst, budget) {
                        Verdict3::False { .. } => {
                            return Verdict3::False { witness: Some(psi.clone()) };
                        }
                        Verdict3::Unknown => any_unknown = true,
                        Verdict3::True => {}
                    }
                    let profile = self.profile_of_qf_or_skip(psi);
                    if let Some(profile) = profile {
                        let pattern: Vec<Profile> =
                            contexts.iter().map(|c| self.pattern_entry(c, x, psi)).collect();
                        covered.insert((profile, pattern));
                    }
                }
                if any_unknown {
                    return Verdict3::Unknown;
                }
                // Class-completeness: every quotient class must be covered.
                let classes = self.sentence_classes(g, x);
                let complete = classes
                    .iter()
                    .all(|c| covered.contains(&(c.profile, c.pattern.clone())));
                if complete {
                    Verdict3::True
                } else {
                    Verdict3::Unknown
                }
            }
        }
    }

    fn profile_of_qf_or_skip(&self, f: &Formula) -> Option<Profile> {
        if f.is_quantifier_free() && f.is_sentence() {
            Some(self.profile_of(f))
        } else {
            None
        }
    }
}

/// Solve `χ[x/ψ] = α` for `ψ`, treating every variable occurrence in `χ` as
/// a wildcard (bindings must be consistent per variable). Returns the
/// binding of `x`, if the match succeeds and binds `x`.
pub fn match_abstraction(chi: &Formula, x: &str, alpha: &Formula) -> Option<Formula> {
    let mut bindings: BTreeMap<String, Formula> = BTreeMap::new();
    let mut bound: BTreeSet<String> = BTreeSet::new();
    if !unify(chi, alpha, &mut bindings, &mut bound) {
        return None;
    }
    bindings.remove(x)
}

fn unify(
    chi: &Formula,
    alpha: &Formula,
    bindings: &mut BTreeMap<String, Formula>,
    bound: &mut BTreeSet<String>,
) -> bool {
    match (chi, alpha) {
        // Bound variables are rigid: only a literal occurrence matches.
        (Formula::Var(v), _) if bound.contains(v) => alpha == &Formula::Var(v.clone()),
        (Formula::Var(v), _) => match bindings.get(v) {
            Some(prev) => prev == alpha,
            None => {
                bindings.insert(v.clone(), alpha.clone());
                true
            }
        },
        (Formula::Prop(p), Formula::Prop(q)) => p == q,
        (Formula::Not(g), Formula::Not(h)) => unify(g, h, bindings, bound),
        (Formula::And(g1, g2), Formula::And(h1, h2)) => {
            unify(g1, h1, bindings, bound) && unify(g2, h2, bindings, bound)
        }
        (Formula::K(i, g), Formula::K(j, h))
        | (Formula::A(i, g), Formula::A(j, h))
        | (Formula::X(i, g), Formula::X(j, h)) => i == j && unify(g, h, bindings, bound),
        (Formula::Forall(v, g), Formula::Forall(w, h)) => {
            if v != w {
                return false;
            }
            let fresh = bound.insert(v.clone());
            let ok = unify(g, h, bindings, bound);
            if fresh {
                bound.remove(v);
            }
            ok
        }
        _ => false,
    }
}

#[cfg(test)]
#[path = "checker_tests.rs"]
mod tests;
