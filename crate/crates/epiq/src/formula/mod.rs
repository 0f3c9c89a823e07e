//! Abstract syntax and syntactic operations for the quantified
//! knowledge/awareness language.
//!
//! The core AST keeps only `¬`, `∧`, `K_i`, `A_i`, `X_i`, and `∀`;
//! disjunction, implication, biconditional, and `∃` are derived forms that
//! the parser desugars and the printer re-sugars.

mod enumerate;
mod parse;
mod print;
#[cfg(test)]
mod tests;

pub use enumerate::{enumeration_index, enumerate_qf_sentences, QfEnumerator};
pub use parse::{parse, parse_with_agents, ParseError};
pub use print::print;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Agent index, 1-based.
pub type Agent = u32;

/// A formula of the core language.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    /// Primitive proposition.
    Prop(String),
    /// Propositional variable (disjoint namespace from propositions; written
    /// `?name` in concrete syntax).
    Var(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    /// Implicit knowledge.
    K(Agent, Box<Formula>),
    /// Awareness.
    A(Agent, Box<Formula>),
    /// Explicit knowledge.
    X(Agent, Box<Formula>),
    /// Universal quantification over quantifier-free sentences.
    Forall(String, Box<Formula>),
}

use Formula::*;

impl Formula {
    pub fn prop(name: &str) -> Formula {
        Prop(name.to_string())
    }
    pub fn var(name: &str) -> Formula {
        Var(name.to_string())
    }
    pub fn not(f: Formula) -> Formula {
        Not(Box::new(f))
    }
    pub fn and(f: Formula, g: Formula) -> Formula {
        And(Box::new(f), Box::new(g))
    }
    pub fn k(i: Agent, f: Formula) -> Formula {
        K(i, Box::new(f))
    }
    pub fn a(i: Agent, f: Formula) -> Formula {
        A(i, Box::new(f))
    }
    pub fn x(i: Agent, f: Formula) -> Formula {
        X(i, Box::new(f))
    }
    pub fn forall(v: &str, f: Formula) -> Formula {
        Forall(v.to_string(), Box::new(f))
    }

    /// `φ ∨ ψ`, desugared to `¬(¬φ ∧ ¬ψ)`.
    pub fn or(f: Formula, g: Formula) -> Formula {
        Formula::not(Formula::and(Formula::not(f), Formula::not(g)))
    }
    /// `φ ⇒ ψ`, desugared to `¬φ ∨ ψ`.
    pub fn implies(f: Formula, g: Formula) -> Formula {
        Formula::or(Formula::not(f), g)
    }
    /// `φ ⇔ ψ`, desugared to `(φ ⇒ ψ) ∧ (ψ ⇒ φ)`.
    pub fn iff(f: Formula, g: Formula) -> Formula {
        Formula::and(
            Formula::implies(f.clone(), g.clone()),
            Formula::implies(g, f),
        )
    }
    /// `∃x φ`, desugared to `¬∀x ¬φ`.
    pub fn exists(v: &str, f: Formula) -> Formula {
        Formula::not(Formula::forall(v, Formula::not(f)))
    }

    /// Conjunction of a sequence; empty conjunction is the canonical verum
    /// `¬(p0 ∧ ¬p0)`.
    pub fn conj(items: impl IntoIterator<Item = Formula>) -> Formula {
        let mut it = items.into_iter();
        match it.next() {
            None => Formula::verum(),
            Some(first) => it.fold(first, Formula::and),
        }
    }

    /// A fixed valid sentence used for empty conjunctions and default
    /// valuation images.
    pub fn verum() -> Formula {
        Formula::not(Formula::and(
            Formula::prop("p0"),
            Formula::not(Formula::prop("p0")),
        ))
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Prop(_) | Var(_) => 1,
            Not(f) | K(_, f) | A(_, f) | X(_, f) | Forall(_, f) => 1 + f.size(),
            And(f, g) => 1 + f.size() + g.size(),
        }
    }

    /// Maximum nesting depth of `∀`.
    pub fn qdepth(&self) -> usize {
        match self {
            Prop(_) | Var(_) => 0,
            Not(f) | K(_, f) | A(_, f) | X(_, f) => f.qdepth(),
            And(f, g) => f.qdepth().max(g.qdepth()),
            Forall(_, f) => 1 + f.qdepth(),
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        self.qdepth() == 0
    }

    /// Free variables, in sorted order.
    pub fn free_vars(&self) -> BTreeSet<String> {
        match self {
            Prop(_) => BTreeSet::new(),
            Var(v) => std::iter::once(v.clone()).collect(),
            Not(f) | K(_, f) | A(_, f) | X(_, f) => f.free_vars(),
            And(f, g) => {
                let mut s = f.free_vars();
                s.extend(g.free_vars());
                s
            }
            Forall(v, f) => {
                let mut s = f.free_vars();
                s.remove(v);
                s
            }
        }
    }

    /// A formula with no free variables is a sentence.
    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Primitive propositions occurring anywhere in the formula.
    pub fn props(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| {
            if let Prop(p) = f {
                out.insert(p.clone());
            }
        });
        out
    }

    /// Agent indices occurring in modal operators.
    pub fn agents(&self) -> BTreeSet<Agent> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| match f {
            K(i, _) | A(i, _) | X(i, _) => {
                out.insert(*i);
            }
            _ => {}
        });
        out
    }

    /// All variable names occurring (free or bound).
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| match f {
            Var(v) => {
                out.insert(v.clone());
            }
            Forall(v, _) => {
                out.insert(v.clone());
            }
            _ => {}
        });
        out
    }

    /// A variable name not occurring in the formula, derived from `base`.
    pub fn fresh_var(&self, base: &str) -> String {
        let used = self.all_vars();
        if !used.contains(base) {
            return base.to_string();
        }
        for i in 0.. {
            let cand = format!("{base}{i}");
            if !used.contains(&cand) {
                return cand;
            }
        }
        unreachable!()
    }

    fn walk(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Prop(_) | Var(_) => {}
            Not(g) | K(_, g) | A(_, g) | X(_, g) | Forall(_, g) => g.walk(f),
            And(g, h) => {
                g.walk(f);
                h.walk(f);
            }
        }
    }

    /// True iff `g` is substitutable for `x` in `self`: no free variable of
    /// `g` gets captured by a quantifier at any free occurrence of `x`.
    pub fn substitutable(&self, x: &str, g: &Formula) -> bool {
        fn go(f: &Formula, x: &str, gvars: &BTreeSet<String>) -> bool {
            match f {
                Prop(_) | Var(_) => true,
                Not(h) | K(_, h) | A(_, h) | X(_, h) => go(h, x, gvars),
                And(h1, h2) => go(h1, x, gvars) && go(h2, x, gvars),
                Forall(v, h) => {
                    if v == x {
                        true // x not free below
                    } else if gvars.contains(v) && h.free_vars().contains(x) {
                        false
                    } else {
                        go(h, x, gvars)
                    }
                }
            }
        }
        go(self, x, &g.free_vars())
    }

    /// `φ[x/ψ]`: replace all free occurrences of `x` by `g`. Errors with the
    /// captured variable's name if the substitution is not capture-free.
    pub fn substitute(&self, x: &str, g: &Formula) -> Result<Formula, CaptureError> {
        let mut map = BTreeMap::new();
        map.insert(x.to_string(), g.clone());
        self.substitute_many(&map)
    }

    /// Simultaneous substitution `φ[x1/ψ1, …, xk/ψk]`.
    pub fn substitute_many(&self, map: &BTreeMap<String, Formula>) -> Result<Formula, CaptureError> {
        match self {
            Prop(_) => Ok(self.clone()),
            Var(v) => Ok(map.get(v).cloned().unwrap_or_else(|| self.clone())),
            Not(f) => Ok(Formula::not(f.substitute_many(map)?)),
            And(f, h) => Ok(Formula::and(f.substitute_many(map)?, h.substitute_many(map)?)),
            K(i, f) => Ok(Formula::k(*i, f.substitute_many(map)?)),
            A(i, f) => Ok(Formula::a(*i, f.substitute_many(map)?)),
            X(i, f) => Ok(Formula::x(*i, f.substitute_many(map)?)),
            Forall(v, f) => {
                let inner: BTreeMap<String, Formula> = map
                    .iter()
                    .filter(|(k, _)| *k != v)
                    .map(|(k, g)| (k.clone(), g.clone()))
                    .collect();
                let body_free = f.free_vars();
                for (k, g) in &inner {
                    if body_free.contains(k) && g.free_vars().contains(v) {
                        return Err(CaptureError { var: v.clone() });
                    }
                }
                Ok(Formula::forall(v, f.substitute_many(&inner)?))
            }
        }
    }
}

/// A substitution would capture a free variable of the substituted formula.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("substitution captures variable ?{var}")]
pub struct CaptureError {
    pub var: String,
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

/// A syntactic valuation: a total map from variables to quantifier-free
/// sentences, represented as a finite override map plus a default image
/// (the canonical smallest sentence, `p0`).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValuationSyn {
    map: BTreeMap<String, Formula>,
}

impl ValuationSyn {
    pub fn new() -> Self {
        Self::default()
    }

    /// Bind `x` to `f`. Panics if `f` is not a quantifier-free sentence.
    pub fn bind(&mut self, x: &str, f: Formula) {
        assert!(
            f.is_sentence() && f.is_quantifier_free(),
            "valuation image must be a quantifier-free sentence: {f}"
        );
        self.map.insert(x.to_string(), f);
    }

    pub fn with(mut self, x: &str, f: Formula) -> Self {
        self.bind(x, f);
        self
    }

    /// Image of `x`; unlisted variables map to the default sentence `p0`.
    pub fn get(&self, x: &str) -> Formula {
        self.map
            .get(x)
            .cloned()
            .unwrap_or_else(|| Formula::prop("p0"))
    }

    /// Instantiate every free variable of `f` through this valuation.
    /// Images are sentences, so the substitution is always capture-free.
    pub fn apply(&self, f: &Formula) -> Formula {
        let map: BTreeMap<String, Formula> = f
            .free_vars()
            .into_iter()
            .map(|v| {
                let img = self.get(&v);
                (v, img)
            })
            .collect();
        f.substitute_many(&map)
            .expect("sentence images cannot be captured")
    }
}
