//! Reductions from first-order logic over a single binary predicate `R`
//! into the (awareness-)modal language, companion model constructions, and
//! a finite-instance equivalence harness.
//!
//! Two translations are provided:
//! - `t51`: into the awareness language (single agent), where domain
//!   elements are encoded through awareness of formulas of the shapes
//!   `ψ ∧ q1` / `ψ ∧ q2`;
//! - `t52`: into the pure two-agent knowledge language (no awareness),
//!   where domain elements are encoded as `p ∧ q`-worlds reached through a
//!   `K1 K2 K1` path, with a single-agent variant (`t52_single`) obtained
//!   by replacing every `K2` by `K1`.

use crate::formula::{Formula, QfEnumerator};
use crate::model::{AwarenessStructure, StateId};
use rand::rngs::StdRng;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};
use std::fmt;

// ---------------------------------------------------------------------------
// R-formulas

/// A first-order formula whose only nonlogical symbol is the binary
/// predicate `R` (no equality, constants, or functions).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RFormula {
    R(String, String),
    Not(Box<RFormula>),
    And(Box<RFormula>, Box<RFormula>),
    Or(Box<RFormula>, Box<RFormula>),
    Forall(String, Box<RFormula>),
    Exists(String, Box<RFormula>),
}

impl RFormula {
    pub fn r(x: &str, y: &str) -> RFormula {
        RFormula::R(x.to_string(), y.to_string())
    }
    pub fn not(f: RFormula) -> RFormula {
        RFormula::Not(Box::new(f))
    }
    pub fn and(f: RFormula, g: RFormula) -> RFormula {
        RFormula::And(Box::new(f), Box::new(g))
    }
    pub fn or(f: RFormula, g: RFormula) -> RFormula {
        RFormula::Or(Box::new(f), Box::new(g))
    }
    pub fn forall(x: &str, f: RFormula) -> RFormula {
        RFormula::Forall(x.to_string(), Box::new(f))
    }
    pub fn exists(x: &str, f: RFormula) -> RFormula {
        RFormula::Exists(x.to_string(), Box::new(f))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        match self {
            RFormula::R(x, y) => [x.clone(), y.clone()].into_iter().collect(),
            RFormula::Not(g) => g.free_vars(),
            RFormula::And(g, h) | RFormula::Or(g, h) => {
                let mut s = g.free_vars();
                s.extend(h.free_vars());
                s
            }
            RFormula::Forall(x, g) | RFormula::Exists(x, g) => {
                let mut s = g.free_vars();
                s.remove(x);
                s
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Negations occur only directly on `R`-literals.
    pub fn is_nnf(&self) -> bool {
        match self {
            RFormula::R(..) => true,
            RFormula::Not(g) => matches!(**g, RFormula::R(..)),
            RFormula::And(g, h) | RFormula::Or(g, h) => g.is_nnf() && h.is_nnf(),
            RFormula::Forall(_, g) | RFormula::Exists(_, g) => g.is_nnf(),
        }
    }

    pub fn qdepth(&self) -> usize {
        match self {
            RFormula::R(..) => 0,
            RFormula::Not(g) => g.qdepth(),
            RFormula::And(g, h) | RFormula::Or(g, h) => g.qdepth().max(h.qdepth()),
            RFormula::Forall(_, g) | RFormula::Exists(_, g) => g.qdepth() + 1,
        }
    }
}

impl fmt::Display for RFormula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(f: &RFormula, out: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
            let my = match f {
                RFormula::Forall(..) | RFormula::Exists(..) => 0,
                RFormula::Or(..) => 1,
                RFormula::And(..) => 2,
                RFormula::Not(..) | RFormula::R(..) => 3,
            };
            let paren = my < prec;
            if paren {
                write!(out, "(")?;
            }
            match f {
                RFormula::R(x, y) => write!(out, "R({x},{y})")?,
                RFormula::Not(g) => {
                    write!(out, "!")?;
                    go(g, out, 3)?;
                }
                RFormula::And(g, h) => {
                    go(g, out, 2)?;
                    write!(out, " & ")?;
                    go(h, out, 3)?;
                }
                RFormula::Or(g, h) => {
                    go(g, out, 1)?;
                    write!(out, " | ")?;
                    go(h, out, 2)?;
                }
                RFormula::Forall(x, g) => {
                    write!(out, "forall {x} . ")?;
                    go(g, out, 0)?;
                }
                RFormula::Exists(x, g) => {
                    write!(out, "exists {x} . ")?;
                    go(g, out, 0)?;
                }
            }
            if paren {
                write!(out, ")")?;
            }
            Ok(())
        }
        go(self, out, 0)
    }
}

/// Push negations down to `R`-literals.
pub fn nnf(f: &RFormula) -> RFormula {
    fn pos(f: &RFormula) -> RFormula {
        match f {
            RFormula::R(..) => f.clone(),
            RFormula::Not(g) => neg(g),
            RFormula::And(g, h) => RFormula::and(pos(g), pos(h)),
            RFormula::Or(g, h) => RFormula::or(pos(g), pos(h)),
            RFormula::Forall(x, g) => RFormula::forall(x, pos(g)),
            RFormula::Exists(x, g) => RFormula::exists(x, pos(g)),
        }
    }
    fn neg(f: &RFormula) -> RFormula {
        match f {
            RFormula::R(..) => RFormula::not(f.clone()),
            RFormula::Not(g) => pos(g),
            RFormula::And(g, h) => RFormula::or(neg(g), neg(h)),
            RFormula::Or(g, h) => RFormula::and(neg(g), neg(h)),
            RFormula::Forall(x, g) => RFormula::exists(x, neg(g)),
            RFormula::Exists(x, g) => RFormula::forall(x, neg(g)),
        }
    }
    pos(f)
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("R-formula parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("translation requires negation normal form")]
    NotNnf,
    #[error("free variable {0} has no assignment")]
    UnboundVar(String),
    #[error("R-model error: {0}")]
    Model(String),
}

/// Parse the R-formula grammar: `R(x,y)`, `!`, `&` (left), `|` (left,
/// weaker), `forall x .` / `exists x .` scoping maximally rightward, and
/// parentheses. Variables are plain identifiers.
pub fn parse_rformula(text: &str) -> Result<RFormula, ReductionError> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0usize;
    fn skip(chars: &[char], pos: &mut usize) {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    }
    fn ident(chars: &[char], pos: &mut usize) -> String {
        let start = *pos;
        while *pos < chars.len() && (chars[*pos].is_alphanumeric() || chars[*pos] == '_') {
            *pos += 1;
        }
        chars[start..*pos].iter().collect()
    }
    fn err(pos: usize, msg: &str) -> ReductionError {
        ReductionError::Parse { pos, msg: msg.to_string() }
    }
    fn expect(chars: &[char], pos: &mut usize, c: char) -> Result<(), ReductionError> {
        skip(chars, pos);
        if *pos < chars.len() && chars[*pos] == c {
            *pos += 1;
            Ok(())
        } else {
            Err(err(*pos, &format!("expected '{c}'")))
        }
    }
    fn unary(chars: &[char], pos: &mut usize) -> Result<RFormula, ReductionError> {
        skip(chars, pos);
        if *pos >= chars.len() {
            return Err(err(*pos, "unexpected end of input"));
        }
        match chars[*pos] {
            '!' => {
                *pos += 1;
                Ok(RFormula::not(unary(chars, pos)?))
            }
            '(' => {
                *pos += 1;
                let inner = or_level(chars, pos)?;
                expect(chars, pos, ')')?;
                Ok(inner)
            }
            c if c.is_alphabetic() || c == '_' => {
                let word = ident(chars, pos);
                match word.as_str() {
                    "R" => {
                        expect(chars, pos, '(')?;
                        skip(chars, pos);
                        let x = ident(chars, pos);
                        if x.is_empty() {
                            return Err(err(*pos, "expected variable"));
                        }
                        expect(chars, pos, ',')?;
                        skip(chars, pos);
                        let y = ident(chars, pos);
                        if y.is_empty() {
                            return Err(err(*pos, "expected variable"));
                        }
                        expect(chars, pos, ')')?;
                        Ok(RFormula::r(&x, &y))
                    }
                    "forall" | "exists" => {
                        skip(chars, pos);
                        let x = ident(chars, pos);
                        if x.is_empty() {
                            return Err(err(*pos, "expected variable after quantifier"));
                        }
                        expect(chars, pos, '.')?;
                        let body = or_level(chars, pos)?;
                        Ok(if word == "forall" {
                            RFormula::forall(&x, body)
                        } else {
                            RFormula::exists(&x, body)
                        })
                    }
                    _ => Err(err(*pos, &format!("unexpected identifier '{word}'"))),
                }
            }
            c => Err(err(*pos, &format!("unexpected character '{c}'"))),
        }
    }
    fn and_level(chars: &[char], pos: &mut usize) -> Result<RFormula, ReductionError> {
        let mut left = unary(chars, pos)?;
        loop {
            skip(chars, pos);
            if *pos < chars.len() && chars[*pos] == '&' {
                *pos += 1;
                left = RFormula::and(left, unary(chars, pos)?);
            } else {
                return Ok(left);
            }
        }
    }
    fn or_level(chars: &[char], pos: &mut usize) -> Result<RFormula, ReductionError> {
        let mut left = and_level(chars, pos)?;
        loop {
            skip(chars, pos);
            if *pos < chars.len() && chars[*pos] == '|' {
                *pos += 1;
                left = RFormula::or(left, and_level(chars, pos)?);
            } else {
                return Ok(left);
            }
        }
    }
    let f = or_level(&chars, &mut pos)?;
    skip(&chars, &mut pos);
    if pos != chars.len() {
        return Err(err(pos, "trailing input"));
    }
    Ok(f)
}

// ---------------------------------------------------------------------------
// R-models

/// A finite relational structure interpreting the binary predicate `R`.
#[derive(Clone, Debug)]
pub struct RModel {
    pub domain: Vec<String>,
    pub rel: BTreeSet<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct RawRModel {
    domain: Vec<String>,
    rel: Vec<[String; 2]>,
}

impl RModel {
    pub fn new(domain: Vec<String>) -> RModel {
        RModel { domain, rel: BTreeSet::new() }
    }

    pub fn from_json_str(text: &str) -> Result<RModel, ReductionError> {
        let raw: RawRModel =
            serde_json::from_str(text).map_err(|e| ReductionError::Model(e.to_string()))?;
        if raw.domain.is_empty() {
            return Err(ReductionError::Model("domain must be nonempty".into()));
        }
        let mut m = RModel::new(raw.domain);
        for [a, b] in raw.rel {
            let da = m.elem(&a)?;
            let db = m.elem(&b)?;
            m.rel.insert((da, db));
        }
        Ok(m)
    }

    pub fn to_json_string(&self) -> String {
        let raw = RawRModel {
            domain: self.domain.clone(),
            rel: self
                .rel
                .iter()
                .map(|&(a, b)| [self.domain[a].clone(), self.domain[b].clone()])
                .collect(),
        };
        serde_json::to_string_pretty(&raw).unwrap()
    }

    fn elem(&self, name: &str) -> Result<usize, ReductionError> {
        self.domain
            .iter()
            .position(|d| d == name)
            .ok_or_else(|| ReductionError::Model(format!("unknown domain element {name}")))
    }

    pub fn size(&self) -> usize {
        self.domain.len()
    }
}

/// Tarskian truth over the finite domain; quantifiers iterate over `D`.
pub fn fo_eval(
    n: &RModel,
    env: &HashMap<String, usize>,
    f: &RFormula,
) -> Result<bool, ReductionError> {
    Ok(match f {
        RFormula::R(x, y) => {
            let dx = *env.get(x).ok_or_else(|| ReductionError::UnboundVar(x.clone()))?;
            let dy = *env.get(y).ok_or_else(|| ReductionError::UnboundVar(y.clone()))?;
            n.rel.contains(&(dx, dy))
        }
        RFormula::Not(g) => !fo_eval(n, env, g)?,
        RFormula::And(g, h) => fo_eval(n, env, g)? && fo_eval(n, env, h)?,
        RFormula::Or(g, h) => fo_eval(n, env, g)? || fo_eval(n, env, h)?,
        RFormula::Forall(x, g) => {
            let mut out = true;
            for d in 0..n.size() {
                let mut env2 = env.clone();
                env2.insert(x.clone(), d);
                out &= fo_eval(n, &env2, g)?;
            }
            out
        }
        RFormula::Exists(x, g) => {
            let mut out = false;
            for d in 0..n.size() {
                let mut env2 = env.clone();
                env2.insert(x.clone(), d);
                out |= fo_eval(n, &env2, g)?;
            }
            out
        }
    })
}

// ---------------------------------------------------------------------------
// Translation for the awareness reduction (t51)

fn dia(i: u32, f: Formula) -> Formula {
    Formula::not(Formula::k(i, Formula::not(f)))
}

fn aq(v: &str, q: &str) -> Formula {
    Formula::a(1, Formula::and(Formula::var(v), Formula::prop(q)))
}

/// Translate an nnf R-formula into the awareness language over the
/// distinguished propositions `q1`, `q2`, `r` (single agent).
pub fn translate_t51(f: &RFormula) -> Result<Formula, ReductionError> {
    if !f.is_nnf() {
        return Err(ReductionError::NotNnf);
    }
    fn go(f: &RFormula) -> Formula {
        match f {
            RFormula::R(x, y) => dia(
                1,
                Formula::conj([Formula::prop("r"), aq(x, "q1"), aq(y, "q2")]),
            ),
            RFormula::Not(g) => {
                let (x, y) = match &**g {
                    RFormula::R(x, y) => (x, y),
                    _ => unreachable!("nnf checked"),
                };
                dia(
                    1,
                    Formula::conj([
                        Formula::not(Formula::prop("r")),
                        aq(x, "q1"),
                        aq(y, "q2"),
                    ]),
                )
            }
            RFormula::And(g, h) => Formula::and(go(g), go(h)),
            RFormula::Or(g, h) => Formula::or(go(g), go(h)),
            RFormula::Forall(x, g) => Formula::forall(x, go(g)),
            RFormula::Exists(x, g) => Formula::exists(x, go(g)),
        }
    }
    Ok(go(f))
}

/// The t51 side condition σ: whenever some accessible world marks the pair
/// `(x1, x2)` (through awareness) and satisfies `r`, every accessible
/// world marking that pair satisfies `r`.
pub fn sigma_t51() -> Formula {
    let mark = |x: &str, y: &str| Formula::and(aq(x, "q1"), aq(y, "q2"));
    Formula::forall(
        "x1",
        Formula::forall(
            "x2",
            Formula::implies(
                dia(1, Formula::and(mark("x1", "x2"), Formula::prop("r"))),
                Formula::k(1, Formula::implies(mark("x1", "x2"), Formula::prop("r"))),
            ),
        ),
    )
}

// ---------------------------------------------------------------------------
// Translation for the pure-knowledge reduction (t52)

fn pq(p_sign: bool, q_sign: bool) -> Formula {
    let p = Formula::prop("p");
    let q = Formula::prop("q");
    Formula::and(
        if p_sign { p } else { Formula::not(p) },
        if q_sign { q } else { Formula::not(q) },
    )
}

fn dia121(mid: u32, f: Formula) -> Formula {
    dia(1, dia(mid, dia(1, f)))
}

/// `atomic(x)`: some `K1 (K2|K1) K1`-reachable world satisfies `p ∧ q ∧ x`,
/// and all reachable `x`-worlds agree on every sentence. `mid` is the
/// middle operator's agent (2 normally; 1 for the single-agent variant).
pub fn atomic_t52(x: &str, mid: u32) -> Formula {
    let xv = Formula::var(x);
    let y = if x == "ay" { "az" } else { "ay" };
    let yv = Formula::var(y);
    Formula::and(
        dia121(mid, Formula::and(pq(true, true), xv.clone())),
        Formula::not(Formula::exists(
            y,
            Formula::and(
                dia121(mid, Formula::and(xv.clone(), yv.clone())),
                dia121(mid, Formula::and(xv, Formula::not(yv))),
            ),
        )),
    )
}

/// The branch-and-leaf pattern locating the pair `(x, y)` from a
/// `¬p ∧ ¬q` world: a `K_mid` move to a `p ∧ ¬q` world that `K1`-sees a
/// `p ∧ q ∧ x` world, and one to a `¬p ∧ q` world that `K1`-sees a
/// `p ∧ q ∧ y` world.
fn pair_pattern(x: &str, y: &str, mid: u32) -> Formula {
    Formula::and(
        dia(mid, Formula::and(pq(true, false), dia(1, Formula::and(pq(true, true), Formula::var(x))))),
        dia(mid, Formula::and(pq(false, true), dia(1, Formula::and(pq(true, true), Formula::var(y))))),
    )
}

/// σ1: the set of atomic formulas is nonempty.
pub fn sigma1_t52(mid: u32) -> Formula {
    Formula::exists("ax", atomic_t52("ax", mid))
}

/// σ2: if `r` holds at some accessible world representing `(x, y)`, it
/// holds at all accessible worlds representing `(x, y)`.
pub fn sigma2_t52(mid: u32) -> Formula {
    let body = Formula::implies(
        Formula::conj([
            atomic_t52("ax", mid),
            atomic_t52("ay2", mid),
            dia(
                1,
                Formula::conj([
                    Formula::prop("r"),
                    pq(false, false),
                    pair_pattern("ax", "ay2", mid),
                ]),
            ),
        ]),
        Formula::k(
            1,
            Formula::implies(
                Formula::and(pq(false, false), pair_pattern("ax", "ay2", mid)),
                Formula::prop("r"),
            ),
        ),
    );
    Formula::forall("ax", Formula::forall("ay2", body))
}

/// σ = σ1 ∧ σ2.
pub fn sigma_t52(agents: u32) -> Formula {
    let mid = if agents >= 2 { 2 } else { 1 };
    Formula::and(sigma1_t52(mid), sigma2_t52(mid))
}

/// Translate an nnf R-formula into the pure knowledge language over
/// `p, q, r`. With `agents = 1` every `K2` becomes `K1`.
pub fn translate_t52(f: &RFormula, agents: u32) -> Result<Formula, ReductionError> {
    if !f.is_nnf() {
        return Err(ReductionError::NotNnf);
    }
    let mid = if agents >= 2 { 2 } else { 1 };
    fn go(f: &RFormula, mid: u32) -> Formula {
        match f {
            RFormula::R(x, y) => Formula::conj([
                atomic_t52(x, mid),
                atomic_t52(y, mid),
                dia(
                    1,
                    Formula::conj([
                        Formula::prop("r"),
                        pq(false, false),
                        pair_pattern(x, y, mid),
                    ]),
                ),
            ]),
            RFormula::Not(g) => {
                let (x, y) = match &**g {
                    RFormula::R(x, y) => (x, y),
                    _ => unreachable!("nnf checked"),
                };
                Formula::conj([
                    atomic_t52(x, mid),
                    atomic_t52(y, mid),
                    dia(
                        1,
                        Formula::conj([
                            Formula::not(Formula::prop("r")),
                            pq(false, false),
                            pair_pattern(x, y, mid),
                        ]),
                    ),
                ])
            }
            RFormula::And(g, h) => Formula::and(go(g, mid), go(h, mid)),
            RFormula::Or(g, h) => Formula::or(go(g, mid), go(h, mid)),
            RFormula::Forall(x, g) => {
                Formula::forall(x, Formula::implies(atomic_t52(x, mid), go(g, mid)))
            }
            RFormula::Exists(x, g) => {
                Formula::exists(x, Formula::and(atomic_t52(x, mid), go(g, mid)))
            }
        }
    }
    Ok(go(f, mid))
}

// ---------------------------------------------------------------------------
// L-map and the intensional t51 structure

/// The surjection from quantifier-free sentences onto the domain, realized
/// by enumeration index modulo the domain size. `representative` is a
/// right inverse of `class_of`.
pub struct LMap {
    domain_size: usize,
    enumerator: QfEnumerator,
}

impl LMap {
    pub fn new(domain_size: usize) -> LMap {
        let vocab = vec!["q1".to_string(), "q2".to_string(), "r".to_string()];
        LMap { domain_size, enumerator: QfEnumerator::new(&vocab, 1) }
    }

    /// Which domain element a quantifier-free sentence names; `None` if it
    /// is outside the enumerated language (open, quantified, or using
    /// foreign propositions).
    pub fn class_of(&mut self, f: &Formula) -> Option<usize> {
        let idx = self.enumerator.index_of(f)?;
        Some((idx % self.domain_size as u64) as usize)
    }

    /// The least-index sentence mapping to `d`.
    pub fn representative(&mut self, d: usize) -> Formula {
        assert!(d < self.domain_size);
        self.enumerator.get(d as u64)
    }
}

/// The universal awareness structure representing an R-model for the t51
/// reduction. Awareness sets are infinite by construction, so they are
/// represented intensionally by a membership predicate backed by the
/// L-map; the structure therefore comes with its own evaluator
/// (`quotient_eval`) rather than the generic checker.
pub struct T51Model {
    pub n: RModel,
    pub lmap: LMap,
}

/// Build the t51 companion structure: states are ordered pairs of domain
/// elements, the relation is universal, `r` holds exactly at `R`-pairs and
/// every other proposition holds everywhere.
pub fn build_mn_t51(n: &RModel) -> T51Model {
    T51Model { n: n.clone(), lmap: LMap::new(n.size()) }
}

impl T51Model {
    pub fn n_states(&self) -> usize {
        self.n.size() * self.n.size()
    }

    pub fn state(&self, d1: usize, d2: usize) -> StateId {
        d1 * self.n.size() + d2
    }

    fn pair(&self, s: StateId) -> (usize, usize) {
        (s / self.n.size(), s % self.n.size())
    }

    /// Intensional awareness membership at a pair state: exactly the
    /// formulas `ψ ∧ q1` with `L(ψ) = d1` and `ψ' ∧ q2` with `L(ψ') = d2`.
    pub fn aware_member(&mut self, s: StateId, f: &Formula) -> bool {
        let (d1, d2) = self.pair(s);
        if let Formula::And(psi, tag) = f {
            if !psi.is_quantifier_free() || !psi.is_sentence() {
                return false;
            }
            match &**tag {
                Formula::Prop(name) if name == "q1" => self.lmap.class_of(psi) == Some(d1),
                Formula::Prop(name) if name == "q2" => self.lmap.class_of(psi) == Some(d2),
                _ => false,
            }
        } else {
            false
        }
    }

    fn eval(&mut self, s: StateId, env: &HashMap<String, Formula>, f: &Formula) -> bool {
        match f {
            Formula::Prop(name) => {
                if name == "r" {
                    let (d1, d2) = self.pair(s);
                    self.n.rel.contains(&(d1, d2))
                } else {
                    true
                }
            }
            Formula::Var(x) => {
                let g = env.get(x).cloned().unwrap_or_else(Formula::verum);
                self.eval(s, env, &g)
            }
            Formula::Not(g) => !self.eval(s, env, g),
            Formula::And(g, h) => self.eval(s, env, g) && self.eval(s, env, h),
            Formula::K(i, g) => {
                debug_assert_eq!(*i, 1, "t51 structures are single-agent");
                (0..self.n_states()).all(|t| self.eval(t, env, g))
            }
            Formula::A(i, g) => {
                debug_assert_eq!(*i, 1);
                let inst = instantiate(g, env);
                self.aware_member(s, &inst)
            }
            Formula::X(i, g) => {
                self.eval(s, env, &Formula::k(*i, (**g).clone()))
                    && self.eval(s, env, &Formula::a(*i, (**g).clone()))
            }
            Formula::Forall(x, g) => {
                // Truth of translated formulas depends on a valuation only
                // through the class of each variable's image, so iterating
                // over one representative per domain element is exact for
                // this structure family.
                (0..self.n.size()).all(|d| {
                    let mut env2 = env.clone();
                    env2.insert(x.clone(), self.lmap.representative(d));
                    self.eval(s, &env2, g)
                })
            }
        }
    }
}

fn instantiate(f: &Formula, env: &HashMap<String, Formula>) -> Formula {
    match f {
        Formula::Prop(_) => f.clone(),
        Formula::Var(x) => env.get(x).cloned().unwrap_or_else(Formula::verum),
        Formula::Not(g) => Formula::not(instantiate(g, env)),
        Formula::And(g, h) => Formula::and(instantiate(g, env), instantiate(h, env)),
        Formula::K(i, g) => Formula::k(*i, instantiate(g, env)),
        Formula::A(i, g) => Formula::a(*i, instantiate(g, env)),
        Formula::X(i, g) => Formula::x(*i, instantiate(g, env)),
        Formula::Forall(x, g) => {
            let mut env2 = env.clone();
            env2.remove(x);
            Formula::forall(x, instantiate(g, &env2))
        }
    }
}

/// Evaluate a translated formula (or σ) on a t51 structure, with
/// quantifiers ranging over the L-map representatives.
pub fn quotient_eval(m: &mut T51Model, s: StateId, f: &Formula) -> bool {
    m.eval(s, &HashMap::new(), f)
}

// ---------------------------------------------------------------------------
// Finite t52 companion structures

/// State layout for `build_mn_t52`: domain states, pair states, then the
/// two branch families.
pub fn t52_elem_state(_d: usize, d1: usize) -> StateId {
    d1
}

pub fn t52_pair_state(n_domain: usize, d1: usize, d2: usize) -> StateId {
    n_domain + d1 * n_domain + d2
}

pub fn t52_branch_state(n_domain: usize, d1: usize, d2: usize, branch: usize) -> StateId {
    assert!(branch == 1 || branch == 2);
    n_domain + n_domain * n_domain * branch + d1 * n_domain + d2
}

/// Build the finite Kripke structure (empty awareness) representing an
/// R-model for the t52 reduction. States: one per domain element (`p ∧ q`,
/// tagged by a dedicated proposition), one per ordered pair (`¬p ∧ ¬q`,
/// `r` iff the pair is in the relation), and two branch states per pair
/// (`p ∧ ¬q` / `¬p ∧ q`). With `agents = 2` both relations are
/// equivalence relations; with `agents = 1` the single relation follows
/// the published single-agent shape, which is reflexive (and transitive
/// only for one-element domains — pair states see all pairs but not the
/// other pairs' branches).
pub fn build_mn_t52(n: &RModel, agents: u32) -> AwarenessStructure {
    let nd = n.size();
    let n_states = nd + 3 * nd * nd;
    let mut names = vec![String::new(); n_states];
    for (d, name) in n.domain.iter().enumerate() {
        names[t52_elem_state(nd, d)] = name.clone();
    }
    for d1 in 0..nd {
        for d2 in 0..nd {
            let pair = format!("{}|{}", n.domain[d1], n.domain[d2]);
            names[t52_pair_state(nd, d1, d2)] = pair.clone();
            names[t52_branch_state(nd, d1, d2, 1)] = format!("{pair}|1");
            names[t52_branch_state(nd, d1, d2, 2)] = format!("{pair}|2");
        }
    }
    let mut vocab = vec!["p".to_string(), "q".to_string(), "r".to_string()];
    for name in &n.domain {
        vocab.push(format!("d_{name}"));
    }
    let n_agents = if agents >= 2 { 2 } else { 1 };
    let mut m = AwarenessStructure::empty(n_agents, names, vocab);
    for d in 0..nd {
        let s = t52_elem_state(nd, d);
        m.pi[s].insert("p".into());
        m.pi[s].insert("q".into());
        m.pi[s].insert(format!("d_{}", n.domain[d]));
    }
    for d1 in 0..nd {
        for d2 in 0..nd {
            if n.rel.contains(&(d1, d2)) {
                m.pi[t52_pair_state(nd, d1, d2)].insert("r".into());
            }
            m.pi[t52_branch_state(nd, d1, d2, 1)].insert("p".into());
            m.pi[t52_branch_state(nd, d1, d2, 2)].insert("q".into());
        }
    }
    let pairs: Vec<StateId> =
        (0..nd).flat_map(|a| (0..nd).map(move |b| t52_pair_state(nd, a, b))).collect();
    if n_agents == 2 {
        // K1: pair states form one clique; each domain element forms a
        // clique with its first-component and second-component branches.
        for &u in &pairs {
            for &v in &pairs {
                m.rel[0][u].insert(v);
            }
        }
        for d in 0..nd {
            let mut cluster = vec![t52_elem_state(nd, d)];
            for b in 0..nd {
                cluster.push(t52_branch_state(nd, d, b, 1));
                cluster.push(t52_branch_state(nd, b, d, 2));
            }
            for &u in &cluster {
                for &v in &cluster {
                    m.rel[0][u].insert(v);
                }
            }
        }
        // K2: each pair forms a clique with its two branches; domain
        // elements are isolated points.
        for d1 in 0..nd {
            for d2 in 0..nd {
                let cluster = [
                    t52_pair_state(nd, d1, d2),
                    t52_branch_state(nd, d1, d2, 1),
                    t52_branch_state(nd, d1, d2, 2),
                ];
                for &u in &cluster {
                    for &v in &cluster {
                        m.rel[1][u].insert(v);
                    }
                }
            }
        }
        for d in 0..nd {
            let s = t52_elem_state(nd, d);
            m.rel[1][s].insert(s);
        }
    } else {
        for d1 in 0..nd {
            for d2 in 0..nd {
                let s = t52_pair_state(nd, d1, d2);
                for &v in &pairs {
                    m.rel[0][s].insert(v);
                }
                m.rel[0][s].insert(t52_branch_state(nd, d1, d2, 1));
                m.rel[0][s].insert(t52_branch_state(nd, d1, d2, 2));
                m.rel[0][s].insert(t52_elem_state(nd, d1));
                m.rel[0][s].insert(t52_elem_state(nd, d2));
                let b1 = t52_branch_state(nd, d1, d2, 1);
                m.rel[0][b1].insert(b1);
                m.rel[0][b1].insert(t52_elem_state(nd, d1));
                let b2 = t52_branch_state(nd, d1, d2, 2);
                m.rel[0][b2].insert(b2);
                m.rel[0][b2].insert(t52_elem_state(nd, d2));
            }
        }
        for d in 0..nd {
            let s = t52_elem_state(nd, d);
            m.rel[0][s].insert(s);
        }
    }
    m
}

// ---------------------------------------------------------------------------
// Quotient evaluation on finite awareness-free structures

/// Bisimulation classes of a finite structure (as state bitmasks),
/// computed by partition refinement over the proposition valuation and the
/// per-agent successor block signatures.
pub fn bisim_classes(m: &AwarenessStructure) -> Vec<u64> {
    let n = m.n_states();
    assert!(n <= 64);
    let mut block: Vec<usize> = vec![0; n];
    {
        let mut seen: Vec<&BTreeSet<String>> = Vec::new();
        for s in 0..n {
            let v = &m.pi[s];
            block[s] = match seen.iter().position(|w| *w == v) {
                Some(i) => i,
                None => {
                    seen.push(v);
                    seen.len() - 1
                }
            };
        }
    }
    loop {
        let n_blocks = block.iter().max().unwrap() + 1;
        let mut sig: Vec<(usize, Vec<Vec<bool>>)> = Vec::with_capacity(n);
        for s in 0..n {
            let mut per_agent = Vec::new();
            for a in 0..m.n_agents as usize {
                let mut hits = vec![false; n_blocks];
                for &t in &m.rel[a][s] {
                    hits[block[t]] = true;
                }
                per_agent.push(hits);
            }
            sig.push((block[s], per_agent));
        }
        let mut seen: Vec<&(usize, Vec<Vec<bool>>)> = Vec::new();
        let mut next = vec![0usize; n];
        for s in 0..n {
            next[s] = match seen.iter().position(|w| **w == sig[s]) {
                Some(i) => i,
                None => {
                    seen.push(&sig[s]);
                    seen.len() - 1
                }
            };
        }
        if next == block {
            break;
        }
        block = next;
    }
    let n_blocks = block.iter().max().unwrap() + 1;
    let mut masks = vec![0u64; n_blocks];
    for s in 0..n {
        masks[block[s]] |= 1 << s;
    }
    masks
}

struct T52Eval<'m> {
    m: &'m AwarenessStructure,
    classes: Vec<u64>,
    memo: HashMap<(StateId, Formula, Vec<(String, u64)>), bool>,
}

impl<'m> T52Eval<'m> {
    fn eval(&mut self, s: StateId, env: &HashMap<String, u64>, f: &Formula) -> bool {
        // Memoize only the expensive nodes (successor scans and quantifier
        // loops); truth depends on the state, the subformula, and the
        // masks of its free variables.
        let key = if matches!(f, Formula::K(..) | Formula::Forall(..)) {
            let relevant: Vec<(String, u64)> = f
                .free_vars()
                .into_iter()
                .map(|x| {
                    let mask = env.get(&x).copied().unwrap_or(0);
                    (x, mask)
                })
                .collect();
            let key = (s, f.clone(), relevant);
            if let Some(&v) = self.memo.get(&key) {
                return v;
            }
            Some(key)
        } else {
            None
        };
        let out = match f {
            Formula::Prop(name) => self.m.pi[s].contains(name),
            Formula::Var(x) => env.get(x).copied().unwrap_or(0) & (1 << s) != 0,
            Formula::Not(g) => !self.eval(s, env, g),
            Formula::And(g, h) => self.eval(s, env, g) && self.eval(s, env, h),
            Formula::K(i, g) => {
                let succ: Vec<StateId> = self.m.rel[(*i - 1) as usize][s].iter().copied().collect();
                succ.into_iter().all(|t| self.eval(t, env, g))
            }
            // Awareness sets are empty in this structure family.
            Formula::A(..) | Formula::X(..) => false,
            Formula::Forall(x, g) => {
                let classes = self.classes.clone();
                classes.into_iter().all(|c| {
                    let mut env2 = env.clone();
                    env2.insert(x.clone(), c);
                    self.eval(s, &env2, g)
                })
            }
        };
        if let Some(key) = key {
            self.memo.insert(key, out);
        }
        out
    }
}

/// Evaluate a t52-translated formula (or σ) on a finite awareness-free
/// structure, with quantifiers ranging over the structure's bisimulation
/// classes. Exact for the t52 family evaluated at pair states: every
/// quantifier in those formulas is either relativized to `atomic` (whose
/// witnesses are exactly the single-element classes) or used to split a
/// definable set (witnessed by a class it spans).
pub fn quotient_eval_t52(m: &AwarenessStructure, s: StateId, f: &Formula) -> bool {
    let classes = bisim_classes(m);
    let mut ev = T52Eval { m, classes, memo: HashMap::new() };
    ev.eval(s, &HashMap::new(), f)
}

// ---------------------------------------------------------------------------
// Equivalence harness

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Which {
    T51,
    T52,
    T52Single,
}

impl Which {
    pub fn parse(s: &str) -> Option<Which> {
        match s {
            "t51" => Some(Which::T51),
            "t52" => Some(Which::T52),
            "t52_single" => Some(Which::T52Single),
            _ => None,
        }
    }
}

/// Outcome of one finite-instance comparison between first-order truth and
/// the translated modal formula on the companion structure.
#[derive(Debug, Clone, Serialize)]
pub struct EquivReport {
    pub which: Which,
    pub fo: bool,
    pub modal: bool,
    pub sigma: bool,
    pub agree: bool,
    pub formula: String,
}

/// Compare `fo_eval` on the R-model against the translated formula on the
/// companion structure (σ is checked alongside).
pub fn check_equiv(n: &RModel, f: &RFormula, which: Which) -> Result<EquivReport, ReductionError> {
    if !f.is_sentence() {
        return Err(ReductionError::UnboundVar(
            f.free_vars().into_iter().next().unwrap_or_default(),
        ));
    }
    let g = nnf(f);
    let fo = fo_eval(n, &HashMap::new(), &g)?;
    let (modal, sigma) = match which {
        Which::T51 => {
            let t = translate_t51(&g)?;
            let mut m = build_mn_t51(n);
            let modal = quotient_eval(&mut m, 0, &t);
            let sig = sigma_t51();
            let sigma = (0..m.n_states()).all(|s| quotient_eval(&mut m, s, &sig));
            (modal, sigma)
        }
        Which::T52 | Which::T52Single => {
            let agents = if which == Which::T52 { 2 } else { 1 };
            let t = translate_t52(&g, agents)?;
            let m = build_mn_t52(n, agents);
            let s = t52_pair_state(n.size(), 0, 0);
            let modal = quotient_eval_t52(&m, s, &t);
            let sig = sigma_t52(agents);
            let sigma = (0..n.size()).all(|d1| {
                (0..n.size())
                    .all(|d2| quotient_eval_t52(&m, t52_pair_state(n.size(), d1, d2), &sig))
            });
            (modal, sigma)
        }
    };
    Ok(EquivReport { which, fo, modal, sigma, agree: fo == modal, formula: g.to_string() })
}

// ---------------------------------------------------------------------------
// Random corpus generation for the harness

/// A random R-model over `size` elements (each pair related with
/// probability 1/2).
pub fn random_rmodel(rng: &mut StdRng, size: usize) -> RModel {
    let domain: Vec<String> =
        (0..size).map(|i| format!("{}", (b'a' + i as u8) as char)).collect();
    let mut m = RModel::new(domain);
    for a in 0..size {
        for b in 0..size {
            if rng.gen_bool(0.5) {
                m.rel.insert((a, b));
            }
        }
    }
    m
}

/// A random R-sentence of quantifier depth at most `depth`.
pub fn random_rsentence(rng: &mut StdRng, depth: usize) -> RFormula {
    fn go(rng: &mut StdRng, bound: &[String], depth: usize) -> RFormula {
        if depth == 0 || (!bound.is_empty() && rng.gen_bool(0.3)) {
            if bound.is_empty() {
                // Need at least one quantifier before a literal.
                let x = "x0".to_string();
                let body = go(rng, &[x.clone()], depth.saturating_sub(1));
                return if rng.gen_bool(0.5) {
                    RFormula::forall(&x, body)
                } else {
                    RFormula::exists(&x, body)
                };
            }
            let x = bound[rng.gen_range(0..bound.len())].clone();
            let y = bound[rng.gen_range(0..bound.len())].clone();
            let lit = RFormula::R(x, y);
            return if rng.gen_bool(0.5) { lit } else { RFormula::not(lit) };
        }
        match rng.gen_range(0..4) {
            0 => RFormula::and(go(rng, bound, depth - 1), go(rng, bound, depth - 1)),
            1 => RFormula::or(go(rng, bound, depth - 1), go(rng, bound, depth - 1)),
            k => {
                let x = format!("x{}", bound.len());
                let mut bound2 = bound.to_vec();
                bound2.push(x.clone());
                let body = go(rng, &bound2, depth - 1);
                if k == 2 {
                    RFormula::forall(&x, body)
                } else {
                    RFormula::exists(&x, body)
                }
            }
        }
    }
    go(rng, &[], depth.max(1))
}

#[cfg(test)]
#[path = "reduction_tests.rs"]
mod tests;
