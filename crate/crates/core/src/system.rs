//! Alphabets, words, rules and rewrite systems.
//!
//! Symbols are single printable characters. The position of a symbol in its
//! [`Alphabet`] is its precedence rank: later symbols are greater. All
//! orderings on words derive from that rank.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;
use std::sync::OnceLock;

use crate::analysis::{check_termination_shortlex, TerminationCertificate};
use crate::error::{InputError, PreconditionError};
use crate::matcher::MatchAutomaton;

/// Bottom-of-stack marker used by the pushdown machine.
pub const BOTTOM_MARKER: char = '$';
/// End-of-input marker used by the pushdown machine.
pub const END_MARKER: char = '#';
/// Text spelling of the empty word.
pub const EMPTY_WORD: &str = "eps";

/// An alphabet symbol, identified by its precedence rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u16);

impl Symbol {
    pub fn from_rank(rank: usize) -> Self {
        Symbol(u16::try_from(rank).expect("alphabet rank fits in u16"))
    }

    #[inline]
    pub fn rank(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    /// Listing order is ascending precedence.
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self, InputError> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(InputError::EmptyAlphabet);
        }
        if symbols.len() > u16::MAX as usize {
            return Err(InputError::RankOutOfRange(symbols.len()));
        }
        let mut seen = BTreeSet::new();
        for &c in &symbols {
            if c == BOTTOM_MARKER || c == END_MARKER || c.is_whitespace() || c.is_control() {
                return Err(InputError::ReservedSymbol(c));
            }
            if !seen.insert(c) {
                return Err(InputError::DuplicateSymbol(c));
            }
        }
        Ok(Alphabet { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Symbols in ascending precedence.
    pub fn symbols(&self) -> impl ExactSizeIterator<Item = Symbol> + '_ {
        (0..self.symbols.len()).map(Symbol::from_rank)
    }

    pub fn char_of(&self, s: Symbol) -> char {
        self.symbols[s.rank()]
    }

    pub fn chars(&self) -> &[char] {
        &self.symbols
    }

    pub fn symbol(&self, c: char) -> Result<Symbol, InputError> {
        self.symbols
            .iter()
            .position(|&d| d == c)
            .map(Symbol::from_rank)
            .ok_or(InputError::UnknownSymbol(c))
    }

    pub fn contains(&self, s: Symbol) -> bool {
        s.rank() < self.symbols.len()
    }

    /// Parses a word, one symbol per character. `eps` and the empty string
    /// both denote the empty word.
    pub fn word(&self, text: &str) -> Result<Word, InputError> {
        let text = text.trim();
        if text == EMPTY_WORD {
            return Ok(Word::empty());
        }
        text.chars().map(|c| self.symbol(c)).collect()
    }

    /// Renders a word as plain characters; the empty word renders as "".
    pub fn render(&self, w: &[Symbol]) -> String {
        w.iter().map(|&s| self.char_of(s)).collect()
    }

    /// Like [`Alphabet::render`] but spells the empty word as `eps`.
    pub fn display(&self, w: &[Symbol]) -> String {
        if w.is_empty() {
            EMPTY_WORD.to_string()
        } else {
            self.render(w)
        }
    }

    fn validate(&self, w: &[Symbol]) -> Result<(), InputError> {
        match w.iter().find(|s| !self.contains(**s)) {
            Some(s) => Err(InputError::RankOutOfRange(s.rank())),
            None => Ok(()),
        }
    }

    /// Length first, then lexicographic by precedence rank.
    pub fn compare_shortlex(&self, a: &[Symbol], b: &[Symbol]) -> Result<Ordering, InputError> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(shortlex(a, b))
    }
}

/// Short-lex comparison of words over the same alphabet.
pub fn shortlex(a: &[Symbol], b: &[Symbol]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// True iff some non-empty proper suffix of `u` is a prefix of `v`.
pub fn overlaps<T: PartialEq>(u: &[T], v: &[T]) -> bool {
    (1..u.len()).any(|k| k <= v.len() && u[u.len() - k..] == v[..k])
}

/// A finite sequence of symbols; may be empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_ranks(ranks: &[usize]) -> Self {
        Word(ranks.iter().map(|&r| Symbol::from_rank(r)).collect())
    }

    pub fn concat(&self, other: &[Symbol]) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn into_vec(self) -> Vec<Symbol> {
        self.0
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.0
    }
}

impl std::borrow::Borrow<[Symbol]> for Word {
    fn borrow(&self) -> &[Symbol] {
        &self.0
    }
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

impl Rule {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Rule { lhs, rhs }
    }
}

/// Declared-but-unverified facts about a system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Assumption {
    Terminating,
}

impl fmt::Display for Assumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Assumption::Terminating => f.write_str("terminating"),
        }
    }
}

/// How termination of a system is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TerminationBasis {
    Certified,
    Assumed,
}

impl fmt::Display for TerminationBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TerminationBasis::Certified => f.write_str("certified"),
            TerminationBasis::Assumed => f.write_str("assumed"),
        }
    }
}

/// A string rewriting system: an alphabet with its precedence order and an
/// ordered list of rules. Immutable once built.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    alphabet: Alphabet,
    rules: Vec<Rule>,
    assumptions: BTreeSet<Assumption>,
    matcher: OnceLock<MatchAutomaton>,
    termination: OnceLock<TerminationCertificate>,
}

impl PartialEq for RewriteSystem {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet
            && self.rules == other.rules
            && self.assumptions == other.assumptions
    }
}

impl Eq for RewriteSystem {}

impl RewriteSystem {
    pub fn new(alphabet: Alphabet, rules: Vec<Rule>) -> Result<Self, InputError> {
        for (i, rule) in rules.iter().enumerate() {
            if rule.lhs.is_empty() {
                return Err(InputError::EmptyLhs(i));
            }
            alphabet.validate(&rule.lhs)?;
            alphabet.validate(&rule.rhs)?;
            if let Some(j) = rules[..i].iter().position(|r| r == rule) {
                return Err(InputError::DuplicateRule(i, j));
            }
        }
        Ok(RewriteSystem {
            alphabet,
            rules,
            assumptions: BTreeSet::new(),
            matcher: OnceLock::new(),
            termination: OnceLock::new(),
        })
    }

    /// Builds a system from an alphabet string (ascending precedence) and
    /// `(lhs, rhs)` pairs; `""` or `eps` is the empty word.
    pub fn from_strs(alphabet: &str, rules: &[(&str, &str)]) -> Result<Self, InputError> {
        let alphabet = Alphabet::new(alphabet.chars().filter(|c| !c.is_whitespace()))?;
        let rules = rules
            .iter()
            .map(|(l, r)| Ok(Rule::new(alphabet.word(l)?, alphabet.word(r)?)))
            .collect::<Result<Vec<_>, InputError>>()?;
        RewriteSystem::new(alphabet, rules)
    }

    pub fn with_assumption(mut self, a: Assumption) -> Self {
        self.assumptions.insert(a);
        self
    }

    pub fn with_assumptions(mut self, set: impl IntoIterator<Item = Assumption>) -> Self {
        self.assumptions.extend(set);
        self
    }

    /// Same alphabet and assumptions, different rules. Duplicate rules are
    /// collapsed to their first occurrence.
    pub fn with_rules(&self, rules: Vec<Rule>) -> Self {
        let mut unique: Vec<Rule> = Vec::with_capacity(rules.len());
        for r in rules {
            if !unique.contains(&r) {
                unique.push(r);
            }
        }
        RewriteSystem::new(self.alphabet.clone(), unique)
            .expect("rules over the same alphabet")
            .with_assumptions(self.assumptions.iter().copied())
    }

    /// Replaces one right-hand side; duplicates are tolerated here and
    /// removed by [`RewriteSystem::with_rules`].
    pub(crate) fn replace_rhs(&self, i: usize, rhs: Word) -> Self {
        let mut rules = self.rules.clone();
        rules[i].rhs = rhs;
        RewriteSystem {
            alphabet: self.alphabet.clone(),
            rules,
            assumptions: self.assumptions.clone(),
            matcher: OnceLock::new(),
            termination: OnceLock::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, i: usize) -> &Rule {
        &self.rules[i]
    }

    pub fn assumptions(&self) -> &BTreeSet<Assumption> {
        &self.assumptions
    }

    pub fn assumes(&self, a: Assumption) -> bool {
        self.assumptions.contains(&a)
    }

    pub fn word(&self, text: &str) -> Result<Word, InputError> {
        self.alphabet.word(text)
    }

    pub fn render(&self, w: &[Symbol]) -> String {
        self.alphabet.render(w)
    }

    /// The Aho-Corasick automaton over this system's left-hand sides.
    pub fn matcher(&self) -> &MatchAutomaton {
        self.matcher.get_or_init(|| MatchAutomaton::build(self))
    }

    /// Short-lex termination certificate, computed once.
    pub fn termination_certificate(&self) -> &TerminationCertificate {
        self.termination
            .get_or_init(|| check_termination_shortlex(self))
    }

    /// Certificate first, then the declared assumption.
    pub fn termination_basis(&self) -> Option<TerminationBasis> {
        if self.termination_certificate().is_certified() {
            Some(TerminationBasis::Certified)
        } else if self.assumes(Assumption::Terminating) {
            Some(TerminationBasis::Assumed)
        } else {
            None
        }
    }

    pub fn require_termination(&self) -> Result<TerminationBasis, PreconditionError> {
        self.termination_basis()
            .ok_or(PreconditionError::NoTerminationEvidence)
    }

    /// Serializes to the `.srs` text format.
    pub fn to_srs_text(&self) -> String {
        let mut out = String::new();
        out.push_str("alphabet:");
        for c in self.alphabet.chars() {
            out.push(' ');
            out.push(*c);
        }
        out.push('\n');
        for a in &self.assumptions {
            out.push_str(&format!("assume: {a}\n"));
        }
        out.push_str("rules:\n");
        for r in &self.rules {
            out.push_str(&format!(
                "{} -> {}\n",
                self.alphabet.display(&r.lhs),
                self.alphabet.display(&r.rhs)
            ));
        }
        out
    }
}

impl fmt::Display for RewriteSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, r) in self.rules.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(
                f,
                "{} -> {}",
                self.alphabet.display(&r.lhs),
                self.alphabet.display(&r.rhs)
            )?;
        }
        f.write_str("}")
    }
}
