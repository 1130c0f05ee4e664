//! Aho-Corasick automaton over the left-hand sides of a rewrite system.
//!
//! Failure links are folded into a total transition table, so every state
//! has exactly one successor per alphabet symbol. Each state records every
//! rule whose left-hand side is a suffix of the text read so far, longest
//! first.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::system::{shortlex, RewriteSystem, Symbol, Word};

pub type StateId = usize;

pub const ROOT: StateId = 0;

#[derive(Debug, Clone)]
struct State {
    /// Trie path from the root.
    label: Word,
    fail: StateId,
    matches: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct MatchAutomaton {
    states: Vec<State>,
    /// `goto[s * width + symbol]`
    goto: Vec<StateId>,
    width: usize,
    lhs_len: Vec<usize>,
}

/// States reachable from the root without ever completing a left-hand side,
/// each with a shortest witness word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachabilityInfo {
    pub reachable: Vec<StateId>,
    pub witness: BTreeMap<StateId, Word>,
}

impl MatchAutomaton {
    pub fn build(system: &RewriteSystem) -> Self {
        let width = system.alphabet().len();
        let rules = system.rules();

        // Trie with provisional ids; 0 is the root.
        let mut children: Vec<BTreeMap<Symbol, usize>> = vec![BTreeMap::new()];
        let mut terminal: Vec<Vec<usize>> = vec![Vec::new()];
        for (i, rule) in rules.iter().enumerate() {
            let mut node = 0;
            for &s in rule.lhs.iter() {
                node = match children[node].get(&s) {
                    Some(&next) => next,
                    None => {
                        children.push(BTreeMap::new());
                        terminal.push(Vec::new());
                        let id = children.len() - 1;
                        children[node].insert(s, id);
                        id
                    }
                };
            }
            terminal[node].push(i);
        }

        // Renumber breadth-first, children in precedence order.
        let mut order = vec![0usize];
        let mut label_of: HashMap<usize, Word> = HashMap::from([(0, Word::empty())]);
        let mut head = 0;
        while head < order.len() {
            let node = order[head];
            head += 1;
            for (&s, &child) in &children[node] {
                let mut label = label_of[&node].clone();
                label.push(s);
                label_of.insert(child, label);
                order.push(child);
            }
        }
        let mut new_id = vec![0usize; order.len()];
        for (id, &node) in order.iter().enumerate() {
            new_id[node] = id;
        }

        let n = order.len();
        let mut states: Vec<State> = order
            .iter()
            .map(|node| State {
                label: label_of[node].clone(),
                fail: ROOT,
                matches: terminal[*node].clone(),
            })
            .collect();
        let mut goto = vec![ROOT; n * width];
        let trie_child = |id: StateId, s: Symbol| -> Option<StateId> {
            children[order[id]].get(&s).map(|&c| new_id[c])
        };

        // States are already in BFS order, so failure targets are final
        // before they are read.
        for id in 0..n {
            for s in 0..width {
                let sym = Symbol::from_rank(s);
                let next = match trie_child(id, sym) {
                    Some(child) => {
                        let fail = if id == ROOT {
                            ROOT
                        } else {
                            goto[states[id].fail * width + s]
                        };
                        states[child].fail = fail;
                        child
                    }
                    None if id == ROOT => ROOT,
                    None => goto[states[id].fail * width + s],
                };
                goto[id * width + s] = next;
            }
            if id != ROOT {
                let inherited = states[states[id].fail].matches.clone();
                states[id].matches.extend(inherited);
            }
        }

        // Longest first; among equal left-hand sides the short-lex least
        // right-hand side first, then rule order.
        let lhs_len: Vec<usize> = rules.iter().map(|r| r.lhs.len()).collect();
        for st in &mut states {
            st.matches.sort_by(|&a, &b| {
                Reverse(lhs_len[a])
                    .cmp(&Reverse(lhs_len[b]))
                    .then_with(|| shortlex(&rules[a].rhs, &rules[b].rhs))
                    .then(a.cmp(&b))
            });
            st.matches.dedup();
        }

        MatchAutomaton {
            states,
            goto,
            width,
            lhs_len,
        }
    }

    pub fn root(&self) -> StateId {
        ROOT
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn alphabet_len(&self) -> usize {
        self.width
    }

    /// The trie word a state stands for.
    pub fn label(&self, s: StateId) -> &Word {
        &self.states[s].label
    }

    pub fn state_with_label(&self, label: &[Symbol]) -> Option<StateId> {
        self.states.iter().position(|st| st.label.as_slice() == label)
    }

    pub fn failure(&self, s: StateId) -> StateId {
        self.states[s].fail
    }

    #[inline]
    pub fn next(&self, s: StateId, c: Symbol) -> StateId {
        self.goto[s * self.width + c.rank()]
    }

    /// The rule applied when this state completes a redex: the longest
    /// matching left-hand side, with the short-lex least right-hand side.
    #[inline]
    pub fn longest_match(&self, s: StateId) -> Option<usize> {
        self.states[s].matches.first().copied()
    }

    pub fn all_matches(&self, s: StateId) -> &[usize] {
        &self.states[s].matches
    }

    #[inline]
    pub fn is_match_free(&self, s: StateId) -> bool {
        self.states[s].matches.is_empty()
    }

    pub fn lhs_len(&self, rule: usize) -> usize {
        self.lhs_len[rule]
    }

    pub fn advance(&self, s: StateId, c: Symbol) -> (StateId, Option<usize>) {
        let t = self.next(s, c);
        (t, self.longest_match(t))
    }

    pub fn scan(&self, from: StateId, w: &[Symbol]) -> StateId {
        w.iter().fold(from, |s, &c| self.next(s, c))
    }

    /// The first position (exclusive end) at which scanning `w` from `from`
    /// completes a left-hand side, with the rule that applies there.
    pub fn first_match(&self, from: StateId, w: &[Symbol]) -> Option<(usize, usize)> {
        let mut s = from;
        for (i, &c) in w.iter().enumerate() {
            s = self.next(s, c);
            if let Some(rule) = self.longest_match(s) {
                return Some((i + 1, rule));
            }
        }
        None
    }

    pub fn irreducible_reachable_states(&self) -> ReachabilityInfo {
        let mut witness = BTreeMap::from([(ROOT, Word::empty())]);
        let mut reachable = vec![ROOT];
        let mut queue = VecDeque::from([ROOT]);
        while let Some(s) = queue.pop_front() {
            for c in 0..self.width {
                let sym = Symbol::from_rank(c);
                let t = self.next(s, sym);
                if self.is_match_free(t) && !witness.contains_key(&t) {
                    let mut w = witness[&s].clone();
                    w.push(sym);
                    witness.insert(t, w);
                    reachable.push(t);
                    queue.push_back(t);
                }
            }
        }
        ReachabilityInfo { reachable, witness }
    }
}
