//! Canonical enumeration of quantifier-free sentences.
//!
//! The order is (AST node count, then canonical-print lexicographic), which
//! is a fixed computable bijection between indices and quantifier-free
//! sentences over a finite vocabulary and agent set.

use super::{print, Formula};

/// Incremental enumerator; caches each size class.
#[derive(Debug, Clone)]
pub struct QfEnumerator {
    vocab: Vec<String>,
    n_agents: u32,
    /// `by_size[s]` holds all sentences with `s + 1` AST nodes, sorted by
    /// canonical print.
    by_size: Vec<Vec<Formula>>,
}

impl QfEnumerator {
    pub fn new(vocab: &[String], n_agents: u32) -> Self {
        assert!(!vocab.is_empty(), "vocabulary must be nonempty");
        assert!(n_agents >= 1);
        let mut vocab: Vec<String> = vocab.to_vec();
        vocab.sort();
        vocab.dedup();
        QfEnumerator { vocab, n_agents, by_size: Vec::new() }
    }

    fn grow_to(&mut self, size: usize) {
        while self.by_size.len() < size {
            let s = self.by_size.len() + 1; // node count being generated
            let mut items: Vec<Formula> = Vec::new();
            if s == 1 {
                items.extend(self.vocab.iter().map(|p| Formula::Prop(p.clone())));
            } else {
                for f in &self.by_size[s - 2] {
                    items.push(Formula::not(f.clone()));
                    for i in 1..=self.n_agents {
                        items.push(Formula::k(i, f.clone()));
                        items.push(Formula::a(i, f.clone()));
                        items.push(Formula::x(i, f.clone()));
                    }
                }
                for left in 1..s - 1 {
                    let right = s - 1 - left;
                    for f in &self.by_size[left - 1] {
                        for g in &self.by_size[right - 1] {
                            items.push(Formula::and(f.clone(), g.clone()));
                        }
                    }
                }
            }
            items.sort_by_cached_key(print);
            self.by_size.push(items);
        }
    }

    /// The sentence at `index` (0-based).
    pub fn get(&mut self, index: u64) -> Formula {
        let mut remaining = index;
        for s in 1.. {
            self.grow_to(s);
            let class = &self.by_size[s - 1];
            if (remaining as usize) < class.len() {
                return class[remaining as usize].clone();
            }
            remaining -= class.len() as u64;
        }
        unreachable!()
    }

    /// Inverse of [`get`](Self::get): the index of `f`, or `None` if `f` is
    /// not a quantifier-free sentence over this vocabulary and agent set.
    pub fn index_of(&mut self, f: &Formula) -> Option<u64> {
        if !f.is_quantifier_free()
            || !f.is_sentence()
            || !f.props().iter().all(|p| self.vocab.contains(p))
            || !f.agents().iter().all(|i| *i <= self.n_agents)
        {
            return None;
        }
        let size = f.size();
        self.grow_to(size);
        let mut offset: u64 = 0;
        for s in 1..size {
            offset += self.by_size[s - 1].len() as u64;
        }
        let class = &self.by_size[size - 1];
        let key = print(f);
        let idx = class
            .binary_search_by(|g| print(g).as_str().cmp(key.as_str()))
            .ok()?;
        Some(offset + idx as u64)
    }
}

/// The quantifier-free sentence at `index` over `vocab` with agents
/// `1..=n_agents`, in the canonical (size, print) order.
pub fn enumerate_qf_sentences(vocab: &[String], n_agents: u32, index: u64) -> Formula {
    QfEnumerator::new(vocab, n_agents).get(index)
}

/// Index of `f` in the canonical order, if it lies in the enumerated set.
pub fn enumeration_index(vocab: &[String], n_agents: u32, f: &Formula) -> Option<u64> {
    QfEnumerator::new(vocab, n_agents).index_of(f)
}
