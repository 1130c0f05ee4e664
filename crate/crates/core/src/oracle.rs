//! Brute-force ground truth for differential testing.
//!
//! Nothing here uses the match automaton or the leftmost-largest strategy:
//! redexes are found by plain substring search and normal forms by
//! rewriting the leftmost occurrence until none is left. Under convergence
//! every strategy reaches the same normal form, so results are comparable
//! with the decision procedures.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::system::{RewriteSystem, Symbol, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Bound on the length of enumerated words.
    pub max_word_length: usize,
    /// Bound on rewrite steps, per normalization or per exhaustive search.
    pub max_rewrite_steps: usize,
}

impl SearchBudget {
    pub fn new(max_word_length: usize, max_rewrite_steps: usize) -> Self {
        assert!(max_word_length >= 1 && max_rewrite_steps >= 1, "search budget must be positive");
        SearchBudget {
            max_word_length,
            max_rewrite_steps,
        }
    }

    pub fn words(max_word_length: usize) -> Self {
        Self::new(max_word_length, 100_000)
    }
}

/// Result of a bounded search. `Unknown` means the step budget ran out, which
/// says nothing about existence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    Found(T),
    NotFound,
    Unknown,
}

impl<T> Outcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Outcome::Unknown)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForms {
    pub forms: BTreeSet<Word>,
    /// False when the step budget ran out before every descendant was seen.
    pub complete: bool,
}

fn occurrences<'r>(system: &'r RewriteSystem, w: &'r [Symbol]) -> impl Iterator<Item = (usize, usize)> + 'r {
    (0..w.len()).flat_map(move |pos| {
        system
            .rules()
            .iter()
            .enumerate()
            .filter(move |(_, r)| w[pos..].starts_with(&r.lhs))
            .map(move |(i, _)| (pos, i))
    })
}

fn apply(system: &RewriteSystem, w: &[Symbol], pos: usize, rule: usize) -> Word {
    let r = system.rule(rule);
    let mut out = w[..pos].to_vec();
    out.extend_from_slice(&r.rhs);
    out.extend_from_slice(&w[pos + r.lhs.len()..]);
    Word::from(out)
}

pub fn is_irreducible_naive(system: &RewriteSystem, w: &[Symbol]) -> bool {
    occurrences(system, w).next().is_none()
}

/// Rewrites the leftmost redex occurrence until the word is irreducible.
pub fn naive_normal_form(system: &RewriteSystem, w: &[Symbol], max_steps: usize) -> Option<Word> {
    let mut current = Word::from(w);
    for _ in 0..=max_steps {
        let found = occurrences(system, &current).next();
        match found {
            None => return Some(current),
            Some((pos, rule)) => current = apply(system, &current, pos, rule),
        }
    }
    None
}

/// Every irreducible descendant of `w`, exploring all positions and rules.
pub fn all_normal_forms(system: &RewriteSystem, w: &[Symbol], budget: SearchBudget) -> NormalForms {
    let mut seen: BTreeSet<Word> = BTreeSet::from([Word::from(w)]);
    let mut queue = VecDeque::from([Word::from(w)]);
    let mut forms = BTreeSet::new();
    let mut steps = 0;
    while let Some(current) = queue.pop_front() {
        let mut reducible = false;
        for (pos, rule) in occurrences(system, &current) {
            reducible = true;
            steps += 1;
            if steps > budget.max_rewrite_steps {
                return NormalForms { forms, complete: false };
            }
            let next = apply(system, &current, pos, rule);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        if !reducible {
            forms.insert(current);
        }
    }
    NormalForms { forms, complete: true }
}

/// Normal forms of `u·w` for every `w` up to the length bound, each mapped
/// to the short-lex least `w` reaching it.
///
/// Breadth-first by length with one entry per normal form: `ρ(u·w·a)` only
/// depends on `ρ(u·w)`, so a word reaching an already seen normal form can
/// be dropped without losing any shorter or short-lex smaller witness.
#[derive(Debug, Clone)]
pub struct CapExploration {
    pub first_reached: HashMap<Word, Word>,
    pub complete: bool,
}

impl CapExploration {
    pub fn run(system: &RewriteSystem, u: &[Symbol], budget: SearchBudget) -> Self {
        let symbols: Vec<Symbol> = system.alphabet().symbols().collect();
        let Some(start) = naive_normal_form(system, u, budget.max_rewrite_steps) else {
            return CapExploration { first_reached: HashMap::new(), complete: false };
        };
        let mut first_reached: HashMap<Word, Word> = HashMap::new();
        let mut frontier: Vec<(Word, Word)> = vec![(start, Word::empty())];
        for _ in 0..budget.max_word_length {
            let mut next_frontier = Vec::new();
            for (state, w) in &frontier {
                for &a in &symbols {
                    let mut extended = state.clone();
                    extended.push(a);
                    let Some(nf) = naive_normal_form(system, &extended, budget.max_rewrite_steps) else {
                        return CapExploration { first_reached, complete: false };
                    };
                    if !first_reached.contains_key(&nf) {
                        let mut w2 = w.clone();
                        w2.push(a);
                        first_reached.insert(nf.clone(), w2.clone());
                        next_frontier.push((nf, w2));
                    }
                }
            }
            frontier = next_frontier;
        }
        CapExploration { first_reached, complete: true }
    }

    pub fn witness(&self, v: &[Symbol]) -> Outcome<Word> {
        match self.first_reached.get(v) {
            Some(w) => Outcome::Found(w.clone()),
            None if self.complete => Outcome::NotFound,
            None => Outcome::Unknown,
        }
    }
}

/// Short-lex least non-empty `w` with `|w| <= max_word_length` and
/// `ρ(u·w) = v`.
pub fn brute_force_cap(system: &RewriteSystem, u: &[Symbol], v: &[Symbol], budget: SearchBudget) -> Outcome<Word> {
    CapExploration::run(system, u, budget).witness(v)
}

/// Irreducible words of length at most `max_len`, in short-lex order.
pub fn irreducible_words(system: &RewriteSystem, max_len: usize) -> Vec<Word> {
    let symbols: Vec<Symbol> = system.alphabet().symbols().collect();
    let mut out = vec![Word::empty()];
    let mut level = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &level {
            for &a in &symbols {
                let mut w2 = w.clone();
                w2.push(a);
                // Only the suffixes ending at the new symbol can be redexes.
                if system.rules().iter().all(|r| !w2.ends_with(&r.lhs)) {
                    next.push(w2);
                }
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// A collapsing pair `(x, y)`: `x` irreducible, `y` non-empty,
/// `|x| + |y| <= max_word_length` and `ρ(x·y) = x`. Pairs with the smallest
/// combined length win, then short-lex order on `x`, then on `y`.
pub fn brute_force_collapse(system: &RewriteSystem, budget: SearchBudget) -> Outcome<(Word, Word)> {
    let bound = budget.max_word_length;
    let mut best: Option<(usize, Word, Word)> = None;
    let mut unknown = false;
    for x in irreducible_words(system, bound - 1) {
        let room = bound - x.len();
        if best.as_ref().is_some_and(|(total, _, _)| x.len() + 1 >= *total) {
            break;
        }
        let explored = CapExploration::run(system, &x, SearchBudget::new(room, budget.max_rewrite_steps));
        match explored.witness(&x) {
            Outcome::Found(y) => {
                let total = x.len() + y.len();
                if best.as_ref().is_none_or(|(t, _, _)| total < *t) {
                    best = Some((total, x, y));
                }
            }
            Outcome::Unknown => unknown = true,
            Outcome::NotFound => {}
        }
    }
    match best {
        Some((_, x, y)) => Outcome::Found((x, y)),
        None if unknown => Outcome::Unknown,
        None => Outcome::NotFound,
    }
}
