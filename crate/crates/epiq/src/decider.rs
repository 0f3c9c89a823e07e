//! Validity decision procedure for the single-agent propositionally
//! quantified knowledge fragment (no awareness operators) over Euclidean
//! model classes, via quantifier elimination on symbolic atoms.
//!
//! An *atom* fixes a point description (which listed props/vars hold), a
//! bounded count of describable accessible worlds for every point
//! description, and — depending on the model class — indistinguishability
//! flags and second-order (`KK`) counts.  Validity of a formula of
//! quantifier depth `k` over atom list `p` reduces to the question whether
//! every `(p, k)`-atom entails it.
//!
//! Three class variants are supported:
//! - `ret`: reflexive + Euclidean (+ transitive, which is implied),
//! - `et`: Euclidean + transitive,
//! - `e`: Euclidean only.

use crate::formula::Formula;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};

/// Model-class variant of the decision procedure.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Ret,
    Et,
    E,
}

impl Variant {
    pub fn parse(s: &str) -> Option<Variant> {
        match s {
            "ret" => Some(Variant::Ret),
            "et" => Some(Variant::Et),
            "e" => Some(Variant::E),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Variant::Ret => "ret",
            Variant::Et => "et",
            Variant::E => "e",
        }
    }
}

/// A bounded count of describable accessible worlds satisfying a point
/// atom.  In a level-`k` context the tokens are `E(l)` with `l < 2^k`
/// ("exactly `l` describable worlds"), `EInf` ("some, but none
/// describable"), and `C` ("at least `2^k` describable worlds").
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum CountToken {
    E(u32),
    EInf,
    C,
}

use CountToken::{EInf, C, E};

/// A point atom over an atom list of length `m` is a bitmask: bit `i` set
/// means the `i`-th entry occurs positively.
pub type PointAtom = usize;

/// A symbolic `(p, k)`-atom.  `counts` is indexed by point-atom bitmask.
/// `indist` is present for variants `et`/`e`; `indist_kk` and `counts_kk`
/// only for variant `e`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AtomDescriptor {
    pub point: PointAtom,
    pub indist: Option<bool>,
    pub indist_kk: Option<bool>,
    pub counts: Vec<CountToken>,
    pub counts_kk: Option<Vec<CountToken>>,
}

/// A set of atoms at a fixed level over a fixed atom list.
#[derive(Clone, Debug)]
pub struct AtSet {
    pub names: Vec<String>,
    pub level: u32,
    pub variant: Variant,
    pub atoms: BTreeSet<AtomDescriptor>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DecideError {
    #[error("only agent 1 is supported by the decision procedure, found K{0}")]
    MultiAgent(u32),
    #[error("awareness operator {0} is outside the decidable fragment")]
    AwarenessOperator(String),
    #[error("quantifier depth {qdepth} exceeds level {level}")]
    LevelExceeded { qdepth: usize, level: u32 },
    #[error("atom {0} does not occur in the atom list")]
    UnknownAtom(String),
    #[error("duplicate atom-list entry {0}")]
    DuplicateName(String),
}

/// Outcome of `decide_valid`.
#[derive(Debug, Clone, Serialize)]
pub struct DecisionReport {
    pub valid: bool,
    pub atoms_total: usize,
    pub atoms_satisfying: usize,
    pub level: u32,
    pub variant: Variant,
}

/// Count tokens admissible at level `k` (`E(l)` for `l < 2^k`, `EInf`,
/// and the `C` token standing for `C_{2^k}`).
pub fn count_options(k: u32) -> Vec<CountToken> {
    let mut out: Vec<CountToken> = (0..(1u32 << k)).map(E).collect();
    out.push(EInf);
    out.push(C);
    out
}

/// Whether `(c, ckk)` is an admissible count / KK-count pair at level `k`
/// for variant `e`: an exact count forces a KK-count at least as large, an
/// `EInf` count forbids an empty KK-count, and a saturated count forces a
/// saturated KK-count.
fn kk_pair_ok(c: CountToken, ckk: CountToken) -> bool {
    match c {
        E(l) => match ckk {
            E(m) => m >= l,
            EInf => false,
            C => true,
        },
        EInf => ckk != E(0),
        C => ckk == C,
    }
}

fn flag_combos(variant: Variant) -> Vec<(Option<bool>, Option<bool>)> {
    match variant {
        Variant::Ret => vec![(None, None)],
        Variant::Et => vec![(Some(true), None), (Some(false), None)],
        Variant::E => vec![
            (Some(true), Some(true)),
            (Some(false), Some(true)),
            (Some(false), Some(false)),
        ],
    }
}

/// All `(p, k)`-atoms over an atom list of length `m`.
pub fn atoms(m: usize, k: u32, variant: Variant) -> Vec<AtomDescriptor> {
    let n_points = 1usize << m;
    let opts = count_options(k);
    // Per-entry options: (count, optional KK-count).
    let cell_opts: Vec<(CountToken, Option<CountToken>)> = if variant == Variant::E {
        let mut cells = Vec::new();
        for &c in &opts {
            for &ckk in &opts {
                if kk_pair_ok(c, ckk) {
                    cells.push((c, Some(ckk)));
                }
            }
        }
        cells
    } else {
        opts.iter().map(|&c| (c, None)).collect()
    };
    let mut out = Vec::new();
    for point in 0..n_points {
        for (indist, indist_kk) in flag_combos(variant) {
            // Odometer over one cell choice per point atom.
            let mut idx = vec![0usize; n_points];
            loop {
                let counts: Vec<CountToken> = idx.iter().map(|&i| cell_opts[i].0).collect();
                let counts_kk: Option<Vec<CountToken>> = if variant == Variant::E {
                    Some(idx.iter().map(|&i| cell_opts[i].1.unwrap()).collect())
                } else {
                    None
                };
                let own_ok = match variant {
                    Variant::Ret => counts[point] != E(0),
                    Variant::Et => indist != Some(true) || counts[point] != E(0),
                    Variant::E => {
                        (indist != Some(true) || counts[point] != E(0))
                            && (indist_kk != Some(true)
                                || counts_kk.as_ref().unwrap()[point] != E(0))
                    }
                };
                if own_ok {
                    out.push(AtomDescriptor { point, indist, indist_kk, counts, counts_kk });
                }
                // Advance odometer.
                let mut pos = 0;
                loop {
                    if pos == n_points {
                        break;
                    }
                    idx[pos] += 1;
                    if idx[pos] < cell_opts.len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == n_points {
                    break;
                }
            }
        }
    }
    out
}

/// Whether atom `a` entails that atom `b` is considered possible
/// (`a ⇒ ¬K¬b`).  For `ret`/`et` this means identical count maps with a
/// nonzero count for `b`'s own point; `et` additionally requires `b` to
/// carry `indist` (accessible worlds see themselves: secondary
/// reflexivity).  For `e` the accessible worlds' counts range over the
/// *second-order* neighbourhood, so `b`'s counts and KK-counts must both
/// equal `a`'s KK-counts, with `a`'s first-order count of `b`'s point
/// nonzero.  (The `e` rule extends the published `ret` rule along the
/// lines sketched for the Euclidean-only case; it is cross-checked against
/// model search in the tests.)
pub fn possible(a: &AtomDescriptor, b: &AtomDescriptor, variant: Variant) -> bool {
    debug_assert_eq!(a.counts.len(), b.counts.len());
    match variant {
        Variant::Ret => a.counts == b.counts && b.counts[b.point] != E(0),
        Variant::Et => {
            b.indist == Some(true) && a.counts == b.counts && b.counts[b.point] != E(0)
        }
        Variant::E => {
            let akk = a.counts_kk.as_ref().unwrap();
            b.indist == Some(true)
                && b.indist_kk == Some(true)
                && b.counts == *akk
                && *b.counts_kk.as_ref().unwrap() == *akk
                && a.counts[b.point] != E(0)
        }
    }
}

/// The level-`k` token denoting "exactly `l` describable worlds", which
/// saturates to `C` once `l` reaches the level bound.
fn m_token(l: u32, k: u32) -> CountToken {
    if l < (1 << k) {
        E(l)
    } else {
        C
    }
}

/// Whether `(e_plus, e_minus)` (level-`k` counts of `b ∧ x` and `b ∧ ¬x`)
/// is an x-partition of the level-`k+1` count `c` of `b`: an exact count
/// splits additively, a saturated count leaves at least one side
/// saturated, and an `EInf` count splits as `EInf` on both sides or —
/// instantiating the quantified variable by a valid or unsatisfiable
/// sentence, which sends every `b`-world to one side — as `EInf` against
/// `E(0)`.
pub fn x_partition(c: CountToken, e_plus: CountToken, e_minus: CountToken, k: u32) -> bool {
    match c {
        E(l) => (0..=l).any(|lp| e_plus == m_token(lp, k) && e_minus == m_token(l - lp, k)),
        C => matches!(
            (e_plus, e_minus),
            (C, C) | (C, E(_)) | (E(_), C)
        ),
        EInf => matches!(
            (e_plus, e_minus),
            (EInf, EInf) | (EInf, E(0)) | (E(0), EInf)
        ),
    }
}

/// Whether `b` (an atom over `p · x` at level `k`) is x-compatible with
/// `a` (an atom over `p` at level `k + 1`): `b`'s point restricts to `a`'s
/// point, every count of `b` x-partitions the corresponding count of `a`,
/// and — where reflexivity is in force, i.e. always for `ret` and under
/// `indist` for `et`/`e` — the count of `b`'s own point is nonzero.
/// Variants with flags require the flags to agree.  (The KK half of the
/// `e` clause mirrors the first-order half; it is an extrapolation
/// validated by the search-based cross-checks.)
pub fn x_compatible(b: &AtomDescriptor, a: &AtomDescriptor, k: u32, variant: Variant) -> bool {
    let m = a.counts.len().trailing_zeros() as usize; // counts.len() == 2^m
    let top = 1usize << m;
    debug_assert_eq!(b.counts.len(), 2 * a.counts.len());
    if (b.point & (top - 1)) != a.point {
        return false;
    }
    if variant != Variant::Ret && a.indist != b.indist {
        return false;
    }
    if variant == Variant::E && a.indist_kk != b.indist_kk {
        return false;
    }
    let own_idx = b.point;
    let own_required = match variant {
        Variant::Ret => true,
        Variant::Et | Variant::E => a.indist == Some(true),
    };
    if own_required && b.counts[own_idx] == E(0) {
        return false;
    }
    if variant == Variant::E
        && a.indist_kk == Some(true)
        && b.counts_kk.as_ref().unwrap()[own_idx] == E(0)
    {
        return false;
    }
    for bm in 0..top {
        if !x_partition(a.counts[bm], b.counts[bm | top], b.counts[bm], k) {
            return false;
        }
        if variant == Variant::E {
            let akk = a.counts_kk.as_ref().unwrap();
            let bkk = b.counts_kk.as_ref().unwrap();
            if !x_partition(akk[bm], bkk[bm | top], bkk[bm], k) {
                return false;
            }
        }
    }
    true
}

/// The set of atoms over `names` at level `k` that entail `f`.  `f` must
/// mention only negation, conjunction, `K1`, and the universal quantifier,
/// with all props/free vars drawn from `names`, distinct bound-variable
/// names, and quantifier depth at most `k`.
pub fn at_set(
    f: &Formula,
    names: &[String],
    k: u32,
    variant: Variant,
) -> Result<AtSet, DecideError> {
    {
        let mut seen = BTreeSet::new();
        for n in names {
            if !seen.insert(n.clone()) {
                return Err(DecideError::DuplicateName(n.clone()));
            }
        }
    }
    if f.qdepth() > k as usize {
        return Err(DecideError::LevelExceeded { qdepth: f.qdepth(), level: k });
    }
    let atoms = at_set_rec(f, names, k, variant)?;
    Ok(AtSet { names: names.to_vec(), level: k, variant, atoms })
}

fn all_atoms_set(m: usize, k: u32, variant: Variant) -> BTreeSet<AtomDescriptor> {
    atoms(m, k, variant).into_iter().collect()
}

fn at_set_rec(
    f: &Formula,
    names: &[String],
    k: u32,
    variant: Variant,
) -> Result<BTreeSet<AtomDescriptor>, DecideError> {
    let m = names.len();
    match f {
        Formula::Prop(s) | Formula::Var(s) => {
            let idx = names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| DecideError::UnknownAtom(s.clone()))?;
            Ok(atoms(m, k, variant)
                .into_iter()
                .filter(|a| a.point & (1 << idx) != 0)
                .collect())
        }
        Formula::Not(g) => {
            let sub = at_set_rec(g, names, k, variant)?;
            Ok(all_atoms_set(m, k, variant).into_iter().filter(|a| !sub.contains(a)).collect())
        }
        Formula::And(g, h) => {
            let left = at_set_rec(g, names, k, variant)?;
            let right = at_set_rec(h, names, k, variant)?;
            Ok(left.intersection(&right).cloned().collect())
        }
        Formula::K(i, g) => {
            if *i != 1 {
                return Err(DecideError::MultiAgent(*i));
            }
            let sub = at_set_rec(g, names, k, variant)?;
            let all = all_atoms_set(m, k, variant);
            let neg: Vec<&AtomDescriptor> = all.iter().filter(|a| !sub.contains(a)).collect();
            Ok(all
                .iter()
                .filter(|a| neg.iter().all(|b| !possible(a, b, variant)))
                .cloned()
                .collect())
        }
        Formula::A(i, _) | Formula::X(i, _) => {
            let op = if matches!(f, Formula::A(..)) { format!("A{i}") } else { format!("X{i}") };
            Err(DecideError::AwarenessOperator(op))
        }
        Formula::Forall(x, g) => {
            if names.iter().any(|n| n == x) {
                return Err(DecideError::DuplicateName(x.clone()));
            }
            let mut ext = names.to_vec();
            ext.push(x.clone());
            debug_assert!(k >= 1, "qdepth check guarantees a level to spend");
            let sub = at_set_rec(g, &ext, k - 1, variant)?;
            let all_ext = all_atoms_set(m + 1, k - 1, variant);
            let neg: Vec<&AtomDescriptor> =
                all_ext.iter().filter(|b| !sub.contains(b)).collect();
            Ok(atoms(m, k, variant)
                .into_iter()
                .filter(|a| neg.iter().all(|b| !x_compatible(b, a, k - 1, variant)))
                .collect())
        }
    }
}

/// Give every bound variable a fresh distinct name (no prop or other
/// variable name is reused), so atom lists never collide.
fn distinct_bound(f: &Formula, used: &mut BTreeSet<String>, counter: &mut u32) -> Formula {
    fn go(
        f: &Formula,
        map: &HashMap<String, String>,
        used: &mut BTreeSet<String>,
        counter: &mut u32,
    ) -> Formula {
        match f {
            Formula::Prop(_) => f.clone(),
            Formula::Var(v) => match map.get(v) {
                Some(n) => Formula::Var(n.clone()),
                None => f.clone(),
            },
            Formula::Not(g) => Formula::not(go(g, map, used, counter)),
            Formula::And(g, h) => {
                Formula::and(go(g, map, used, counter), go(h, map, used, counter))
            }
            Formula::K(i, g) => Formula::k(*i, go(g, map, used, counter)),
            Formula::A(i, g) => Formula::a(*i, go(g, map, used, counter)),
            Formula::X(i, g) => Formula::x(*i, go(g, map, used, counter)),
            Formula::Forall(v, g) => {
                let fresh = loop {
                    *counter += 1;
                    let cand = format!("x{counter}");
                    if !used.contains(&cand) {
                        break cand;
                    }
                };
                used.insert(fresh.clone());
                let mut map2 = map.clone();
                map2.insert(v.clone(), fresh.clone());
                Formula::Forall(fresh, Box::new(go(g, &map2, used, counter)))
            }
        }
    }
    go(f, &HashMap::new(), used, counter)
}

fn check_language(f: &Formula) -> Result<(), DecideError> {
    match f {
        Formula::Prop(_) | Formula::Var(_) => Ok(()),
        Formula::Not(g) | Formula::Forall(_, g) => check_language(g),
        Formula::And(g, h) => {
            check_language(g)?;
            check_language(h)
        }
        Formula::K(i, g) => {
            if *i != 1 {
                return Err(DecideError::MultiAgent(*i));
            }
            check_language(g)
        }
        Formula::A(i, _) => Err(DecideError::AwarenessOperator(format!("A{i}"))),
        Formula::X(i, _) => Err(DecideError::AwarenessOperator(format!("X{i}"))),
    }
}

/// Decide validity of `f` over the chosen model class.  Open formulas are
/// universally closed first; the formula may mention only `K1` as a modal
/// operator.
pub fn decide_valid(f: &Formula, variant: Variant) -> Result<DecisionReport, DecideError> {
    check_language(f)?;
    let mut closed = f.clone();
    for x in f.free_vars().into_iter().rev() {
        closed = Formula::forall(&x, closed);
    }
    let mut used: BTreeSet<String> = closed.props();
    used.extend(closed.all_vars());
    let mut counter = 0;
    let renamed = distinct_bound(&closed, &mut used, &mut counter);
    let names: Vec<String> = renamed.props().into_iter().collect();
    let k = renamed.qdepth() as u32;
    let sat = at_set(&renamed, &names, k, variant)?;
    let total = atoms(names.len(), k, variant).len();
    Ok(DecisionReport {
        valid: sat.atoms.len() == total,
        atoms_total: total,
        atoms_satisfying: sat.atoms.len(),
        level: k,
        variant,
    })
}

// ---------------------------------------------------------------------------
// Formula expansions of the symbolic abbreviations.  These are only used to
// cross-validate the symbolic machinery against the model checker; the
// decision loop never expands atoms.

fn kd(depth: u32, f: Formula) -> Formula {
    let mut out = f;
    for _ in 0..depth {
        out = Formula::k(1, out);
    }
    out
}

fn diamond(depth: u32, f: Formula) -> Formula {
    Formula::not(kd(depth, Formula::not(f)))
}

fn describable_d(f: &Formula, depth: u32) -> Formula {
    let y = f.fresh_var("y");
    let yv = Formula::var(&y);
    Formula::and(
        diamond(depth, f.clone()),
        Formula::not(Formula::exists(
            &y,
            Formula::and(
                diamond(depth, Formula::and(f.clone(), yv.clone())),
                diamond(depth, Formula::and(f.clone(), Formula::not(yv))),
            ),
        )),
    )
}

/// The "current world is seen by at most one accessible-world profile"
/// abbreviation: some describable accessible world satisfies exactly the
/// truths of the current world.
pub fn build_indist(depth: u32) -> Formula {
    let x = Formula::var("ix");
    let y = Formula::var("iy");
    Formula::exists(
        "ix",
        Formula::and(
            describable_d(&x, depth),
            Formula::forall("iy", Formula::iff(y.clone(), diamond(depth, Formula::and(x, y)))),
        ),
    )
}

fn build_c_d(count: u32, f: &Formula, depth: u32) -> Formula {
    assert!(count >= 1);
    let base: Vec<String> = (1..=count).map(|i| f.fresh_var(&format!("c{i}"))).collect();
    let mut conjuncts = Vec::new();
    for i in 0..count as usize {
        for j in (i + 1)..count as usize {
            conjuncts.push(Formula::not(Formula::k(
                1,
                Formula::iff(Formula::var(&base[i]), Formula::var(&base[j])),
            )));
        }
    }
    for name in &base {
        let xv = Formula::var(name);
        conjuncts.push(Formula::and(
            describable_d(&xv, depth),
            diamond(depth, Formula::and(xv, f.clone())),
        ));
    }
    let mut out = Formula::conj(conjuncts);
    for name in base.iter().rev() {
        out = Formula::exists(name, out);
    }
    out
}

/// Expand a count token applied to `f` into the defining formula.  `n` is
/// the level bound (the `C` token stands for `C_n`); `depth` is the modal
/// nesting of the count (1 for plain counts, 2 for KK-counts).
pub fn build_count_d(kind: CountToken, n: u32, f: &Formula, depth: u32) -> Formula {
    match kind {
        E(0) => kd(depth, Formula::not(f.clone())),
        E(l) => Formula::and(build_c_d(l, f, depth), Formula::not(build_c_d(l + 1, f, depth))),
        EInf => Formula::and(
            diamond(depth, f.clone()),
            Formula::not(build_c_d(1, f, depth)),
        ),
        C => build_c_d(n, f, depth),
    }
}

/// `describable(f)`: `f` is compatible with knowledge and no further
/// refinement of `f` is (so `f` pins down a single accessible world).
pub fn build_describable(f: &Formula) -> Formula {
    describable_d(f, 1)
}

/// Plain (depth-1) count expansion with level bound `n`.
pub fn build_count(kind: CountToken, n: u32, f: &Formula) -> Formula {
    build_count_d(kind, n, f, 1)
}

/// The formula a point atom stands for.
pub fn point_formula(point: PointAtom, names: &[String]) -> Formula {
    Formula::conj(names.iter().enumerate().map(|(i, n)| {
        let atom = Formula::prop(n);
        if point & (1 << i) != 0 {
            atom
        } else {
            Formula::not(atom)
        }
    }))
}

/// Expand a whole atom descriptor into the conjunction it abbreviates.
pub fn atom_formula(a: &AtomDescriptor, names: &[String], k: u32) -> Formula {
    let n = 1u32 << k;
    let mut parts = vec![point_formula(a.point, names)];
    if let Some(flag) = a.indist {
        let ind = build_indist(1);
        parts.push(if flag { ind } else { Formula::not(ind) });
    }
    if let Some(flag) = a.indist_kk {
        let ind = build_indist(2);
        parts.push(if flag { ind } else { Formula::not(ind) });
    }
    for bm in 0..a.counts.len() {
        let b = point_formula(bm, names);
        parts.push(build_count_d(a.counts[bm], n, &b, 1));
        if let Some(kk) = &a.counts_kk {
            parts.push(build_count_d(kk[bm], n, &b, 2));
        }
    }
    Formula::conj(parts)
}

#[cfg(test)]
#[path = "decider_tests.rs"]
mod tests;
