use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use super::{Control, StackSymbol, Terminal};

pub type NtId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GSym {
    T(Terminal),
    N(NtId),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Production {
    pub lhs: NtId,
    pub rhs: Vec<GSym>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NonterminalLabel {
    Start,
    /// `[p X q]`: from control `p` with `X` on top, the machine can reach
    /// control `q` having just popped `X`.
    Triple(Control, StackSymbol, Control),
}

#[derive(Debug, Clone)]
pub struct Grammar {
    labels: Vec<NonterminalLabel>,
    productions: Vec<Production>,
    start: NtId,
    min_len: Vec<Option<usize>>,
}

/// Knuth's generalization of Dijkstra's algorithm: each production is
/// evaluated once all its nonterminals are settled, and nonterminals settle
/// in increasing order of `key`. `key` must be monotone and superior (never
/// smaller than any argument), which concatenation is for both length and
/// short-lex order.
fn knuth_least<K: Ord + Clone>(
    nonterminals: usize,
    productions: &[Production],
    eval: impl Fn(&Production, &[Option<K>]) -> K,
) -> Vec<Option<K>> {
    let mut waiting: Vec<usize> = productions
        .iter()
        .map(|p| p.rhs.iter().filter(|s| matches!(s, GSym::N(_))).count())
        .collect();
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); nonterminals];
    for (i, p) in productions.iter().enumerate() {
        for s in &p.rhs {
            if let GSym::N(n) = s {
                occurs[*n].push(i);
            }
        }
    }
    let mut best: Vec<Option<K>> = vec![None; nonterminals];
    let mut heap = BinaryHeap::new();
    for (i, p) in productions.iter().enumerate() {
        if waiting[i] == 0 {
            heap.push(Reverse((eval(p, &best), p.lhs)));
        }
    }
    while let Some(Reverse((key, nt))) = heap.pop() {
        if best[nt].is_some() {
            continue;
        }
        best[nt] = Some(key);
        for &i in &occurs[nt] {
            waiting[i] -= 1;
            if waiting[i] == 0 && best[productions[i].lhs].is_none() {
                heap.push(Reverse((eval(&productions[i], &best), productions[i].lhs)));
            }
        }
    }
    best
}

impl Grammar {
    pub fn new(labels: Vec<NonterminalLabel>, productions: Vec<Production>, start: NtId) -> Self {
        let n = labels.len();
        assert!(start < n);
        for p in &productions {
            assert!(p.lhs < n && p.rhs.iter().all(|s| !matches!(s, GSym::N(m) if *m >= n)));
        }
        let min_len = knuth_least(n, &productions, |p, best| {
            p.rhs
                .iter()
                .map(|s| match s {
                    GSym::T(_) => 1,
                    GSym::N(m) => best[*m].expect("settled"),
                })
                .sum::<usize>()
        });
        Grammar {
            labels,
            productions,
            start,
            min_len,
        }
    }

    pub fn start(&self) -> NtId {
        self.start
    }

    pub fn nonterminal_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, nt: NtId) -> NonterminalLabel {
        self.labels[nt]
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    pub fn is_generating(&self, nt: NtId) -> bool {
        self.min_len[nt].is_some()
    }

    /// Length of the shortest terminal word derivable from `nt`.
    pub fn min_len(&self, nt: NtId) -> Option<usize> {
        self.min_len[nt]
    }

    pub fn is_empty(&self) -> bool {
        !self.is_generating(self.start)
    }

    /// The short-lex least terminal word derivable from `nt`.
    pub fn shortest_word(&self, nt: NtId) -> Option<Vec<Terminal>> {
        let words = knuth_least(self.labels.len(), &self.productions, |p, best: &[Option<(usize, Vec<Terminal>)>]| {
            let mut w = Vec::new();
            for s in &p.rhs {
                match s {
                    GSym::T(t) => w.push(*t),
                    GSym::N(m) => w.extend_from_slice(&best[*m].as_ref().expect("settled").1),
                }
            }
            (w.len(), w)
        });
        let result = words[nt].as_ref().map(|(_, w)| w.clone());
        debug_assert_eq!(result.as_ref().map(Vec::len), self.min_len[nt]);
        result
    }

    /// Every word of length at most `max_len` derivable from the start
    /// symbol, by fixpoint iteration. Meant for small grammars.
    pub fn words_up_to(&self, max_len: usize) -> BTreeSet<Vec<Terminal>> {
        let mut sets: Vec<BTreeSet<Vec<Terminal>>> = vec![BTreeSet::new(); self.labels.len()];
        loop {
            let mut changed = false;
            for p in &self.productions {
                let mut partial: Vec<Vec<Terminal>> = vec![Vec::new()];
                for s in &p.rhs {
                    partial = match s {
                        GSym::T(t) => partial
                            .into_iter()
                            .filter(|w| w.len() < max_len)
                            .map(|mut w| {
                                w.push(*t);
                                w
                            })
                            .collect(),
                        GSym::N(m) => partial
                            .iter()
                            .flat_map(|w| {
                                sets[*m]
                                    .iter()
                                    .filter(move |x| w.len() + x.len() <= max_len)
                                    .map(move |x| [w.as_slice(), x].concat())
                            })
                            .collect(),
                    };
                }
                for w in partial {
                    changed |= sets[p.lhs].insert(w);
                }
            }
            if !changed {
                break;
            }
        }
        std::mem::take(&mut sets[self.start])
    }
}
