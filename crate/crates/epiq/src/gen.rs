//! Seeded random generation of awareness structures and formulas, plus
//! bounded countermodel search. Everything is deterministic given the seed.

use crate::checker::Evaluator;
use crate::formula::{Formula, ValuationSyn};
use crate::model::{AwarenessStructure, RelClass, StateId};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Configuration for random structure generation and countermodel search.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub max_states: usize,
    /// Required relation properties (relations are closed to satisfy them).
    pub class: RelClass,
    pub vocab_size: usize,
    pub n_agents: u32,
    pub seed: u64,
    pub max_structures: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_states: 4,
            class: RelClass::default(),
            vocab_size: 2,
            n_agents: 1,
            seed: 0,
            max_structures: 2000,
        }
    }
}

fn vocab_names(n: usize) -> Vec<String> {
    ["p", "q", "r", "p1", "p2", "p3", "p4", "p5"]
        .iter()
        .take(n)
        .map(|s| s.to_string())
        .collect()
}

/// Close a relation (as successor sets) to satisfy the required properties.
fn close_relation(succ: &mut Vec<std::collections::BTreeSet<StateId>>, class: RelClass) {
    let n = succ.len();
    loop {
        let mut changed = false;
        if class.r {
            for s in 0..n {
                changed |= succ[s].insert(s);
            }
        }
        if class.t {
            for s in 0..n {
                let step: Vec<StateId> = succ[s]
                    .iter()
                    .flat_map(|&u| succ[u].iter().copied())
                    .collect();
                for v in step {
                    changed |= succ[s].insert(v);
                }
            }
        }
        if class.e {
            for s in 0..n {
                let pairs: Vec<(StateId, StateId)> = succ[s]
                    .iter()
                    .flat_map(|&u| succ[s].iter().map(move |&v| (u, v)))
                    .collect();
                for (u, v) in pairs {
                    changed |= succ[u].insert(v);
                }
            }
        }
        if !changed {
            break;
        }
    }
}

/// A random quantifier-free sentence over `vocab` (size grows with `depth`).
pub fn random_qf_sentence(rng: &mut StdRng, vocab: &[String], n_agents: u32, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return Formula::Prop(vocab[rng.gen_range(0..vocab.len())].clone());
    }
    match rng.gen_range(0..6) {
        0 => Formula::not(random_qf_sentence(rng, vocab, n_agents, depth - 1)),
        1 => Formula::and(
            random_qf_sentence(rng, vocab, n_agents, depth - 1),
            random_qf_sentence(rng, vocab, n_agents, depth - 1),
        ),
        2 | 3 => Formula::k(
            rng.gen_range(1..=n_agents),
            random_qf_sentence(rng, vocab, n_agents, depth - 1),
        ),
        4 => Formula::a(
            rng.gen_range(1..=n_agents),
            random_qf_sentence(rng, vocab, n_agents, depth - 1),
        ),
        _ => Formula::x(
            rng.gen_range(1..=n_agents),
            random_qf_sentence(rng, vocab, n_agents, depth - 1),
        ),
    }
}

/// A random sentence that may contain quantifiers (used to populate
/// awareness sets with quantified members).
pub fn random_quantified_sentence(rng: &mut StdRng, _vocab: &[String], n_agents: u32) -> Formula {
    let i = rng.gen_range(1..=n_agents);
    let j = rng.gen_range(1..=n_agents);
    let x = Formula::var("x");
    let body = match rng.gen_range(0..4) {
        0 => Formula::and(Formula::a(i, x.clone()), Formula::not(Formula::a(j, x))),
        1 => Formula::a(i, x),
        2 => Formula::not(Formula::a(i, x)),
        _ => Formula::and(x.clone(), Formula::a(i, x)),
    };
    if rng.gen_bool(0.5) {
        Formula::exists("x", body)
    } else {
        Formula::forall("x", body)
    }
}

/// A random structure within the configuration (relations closed to the
/// required class; awareness sets small and mostly quantifier-free).
pub fn random_structure(rng: &mut StdRng, cfg: &SearchConfig) -> AwarenessStructure {
    let n = rng.gen_range(1..=cfg.max_states);
    let names = (0..n).map(|i| format!("s{i}")).collect();
    let vocab = vocab_names(cfg.vocab_size);
    let mut m = AwarenessStructure::empty(cfg.n_agents, names, vocab.clone());
    for s in 0..n {
        for p in &vocab {
            if rng.gen_bool(0.5) {
                m.pi[s].insert(p.clone());
            }
        }
    }
    for a in 0..cfg.n_agents as usize {
        for s in 0..n {
            for t in 0..n {
                if rng.gen_bool(0.4) {
                    m.rel[a][s].insert(t);
                }
            }
        }
        close_relation(&mut m.rel[a], cfg.class);
        for s in 0..n {
            let k = rng.gen_range(0..4);
            for _ in 0..k {
                m.aware[a][s].insert(random_qf_sentence(rng, &vocab, cfg.n_agents, 2));
            }
            if rng.gen_bool(0.25) {
                m.aware[a][s].insert(random_quantified_sentence(rng, &vocab, cfg.n_agents));
            }
        }
    }
    m
}

/// The two-layer rooted shape characteristic of single-agent Euclidean
/// structures: a root `s0` seeing a subset `S` of a cluster, with every
/// cluster state seeing the whole cluster. When the configuration also
/// requires transitivity, the root sees the whole cluster (otherwise a
/// root → S → cluster∖S path would escape the root's view). Countermodels
/// to Euclidean-only validities live in this family.
pub fn random_rooted_euclidean(rng: &mut StdRng, cfg: &SearchConfig) -> AwarenessStructure {
    let core = rng.gen_range(1..=cfg.max_states.saturating_sub(1).max(1));
    let n = core + 1; // root + cluster
    let names = (0..n)
        .map(|i| if i == 0 { "s0".to_string() } else { format!("s{i}") })
        .collect();
    let vocab = vocab_names(cfg.vocab_size);
    let mut m = AwarenessStructure::empty(cfg.n_agents, names, vocab.clone());
    for s in 0..n {
        for p in &vocab {
            if rng.gen_bool(0.5) {
                m.pi[s].insert(p.clone());
            }
        }
    }
    for a in 0..cfg.n_agents as usize {
        let mut seen: Vec<StateId> = if cfg.class.t {
            (1..n).collect()
        } else {
            let s: Vec<StateId> = (1..n).filter(|_| rng.gen_bool(0.7)).collect();
            if s.is_empty() {
                vec![1]
            } else {
                s
            }
        };
        if seen.is_empty() {
            seen.push(1);
        }
        for &t in &seen {
            m.rel[a][0].insert(t);
        }
        for u in 1..n {
            for v in 1..n {
                m.rel[a][u].insert(v);
            }
        }
    }
    m
}

/// Result of a countermodel search.
pub struct Countermodel {
    pub structure: AwarenessStructure,
    pub state: StateId,
    pub tried: usize,
}

/// Search for a structure and state where `f` is false, sampling random
/// structures of the configured class (and, for Euclidean-only classes, the
/// rooted two-layer shape). Deterministic given the seed; the first hit in
/// sample order wins.
pub fn search_countermodel(f: &Formula, cfg: &SearchConfig) -> Option<Countermodel> {
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let v = ValuationSyn::new();
    let closed = close_formula(f);
    for tried in 0..cfg.max_structures {
        let m = if cfg.class.e && !cfg.class.r && tried % 2 == 1 {
            random_rooted_euclidean(&mut rng, cfg)
        } else {
            random_structure(&mut rng, cfg)
        };
        let mut ev = Evaluator::new(&m);
        for s in 0..m.n_states() {
            if !ev.eval_exact(s, &v, &closed) {
                return Some(Countermodel { structure: m, state: s, tried: tried + 1 });
            }
        }
    }
    None
}

/// Universally close an open formula.
pub fn close_formula(f: &Formula) -> Formula {
    let mut out = f.clone();
    for x in f.free_vars().into_iter().rev() {
        out = Formula::forall(&x, out);
    }
    out
}

#[cfg(test)]
#[path = "gen_tests.rs"]
mod tests;
