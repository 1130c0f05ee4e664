//! The deterministic pushdown machine for
//! `L(u, v) = { w# | u·w has normal form v, w non-empty }`.
//!
//! The stack holds the normal form of everything read so far, one cell per
//! symbol, each cell tagged with the matcher state reached by the stack word
//! up to and including it. Reading a symbol either pushes it or, when it
//! completes a redex, pops the rest of the l-part and pushes the
//! right-hand side. Popping uncovers the matcher state of the new top, so no
//! rescanning is needed.
//!
//! The machine is given in single-pop form: every move pops the top cell,
//! keeps it, or pushes exactly one cell on top of it. Multi-cell pops and
//! pushes go through intermediate control states. The same move function
//! drives [`CollapsePda::run`] and the grammar conversion.

mod convert;
mod grammar;

use std::fmt;

pub use grammar::{GSym, Grammar, NonterminalLabel, Production};

use crate::analysis::CertifiedSystem;
use crate::error::{Error, InputError, PreconditionError};
use crate::matcher::StateId;
use crate::rewrite::is_irreducible;
use crate::system::{RewriteSystem, Symbol, Word, BOTTOM_MARKER, END_MARKER};

/// Input tape symbol: an alphabet symbol or the end marker `#`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Terminal {
    Sym(Symbol),
    End,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StackSymbol {
    Bottom,
    Cell { symbol: Symbol, state: StateId },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Control {
    /// Pushing symbol `i` of the initial word.
    Init(usize),
    Read { consumed: bool },
    /// A redex for `rule` completed; `remaining` cells of its l-part are
    /// still on the stack.
    Pop { rule: usize, remaining: usize },
    /// Pushing symbol `next` of the right-hand side of `rule`.
    Push { rule: usize, next: usize },
    /// End marker read; `remaining` symbols of the target word are still to
    /// be matched, top first.
    Check(usize),
    Accept,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Pop,
    Keep,
    Push(StackSymbol),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Move {
    pub input: Option<Terminal>,
    pub action: Action,
    pub to: Control,
    /// The rule whose redex this move starts reducing.
    pub reduces: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    /// No redex completed; the symbol was pushed.
    Push,
    /// The symbol completed a redex with this l-part rule.
    Reduce(usize),
    End,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub input: Terminal,
    pub kind: StepKind,
    /// Stack word above the bottom marker once the step is complete.
    pub stack: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunTrace {
    pub initial: Word,
    pub steps: Vec<TraceStep>,
    pub accepted: bool,
}

impl RunTrace {
    /// `$`-prefixed stack words, initial configuration first.
    pub fn render(&self, system: &RewriteSystem) -> Vec<String> {
        std::iter::once(&self.initial)
            .chain(self.steps.iter().map(|s| &s.stack))
            .map(|w| format!("{BOTTOM_MARKER}{}", system.render(w)))
            .collect()
    }
}

/// Shortest member of `L(u, v)` with the end marker stripped, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageDecision {
    pub witness: Option<Word>,
    pub nonterminals: usize,
    pub productions: usize,
}

impl LanguageDecision {
    pub fn is_empty(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone)]
pub struct CollapsePda<'a> {
    certified: &'a CertifiedSystem,
    u: Word,
    v: Word,
}

impl<'a> CollapsePda<'a> {
    pub fn new(certified: &'a CertifiedSystem, u: Word, v: Word) -> Result<Self, PreconditionError> {
        let system = certified.system();
        for w in [&u, &v] {
            if !is_irreducible(system, w) {
                return Err(PreconditionError::Reducible(system.render(w)));
            }
        }
        Ok(CollapsePda { certified, u, v })
    }

    pub fn system(&self) -> &RewriteSystem {
        self.certified.system()
    }

    pub fn u(&self) -> &Word {
        &self.u
    }

    pub fn v(&self) -> &Word {
        &self.v
    }

    pub fn initial_control(&self) -> Control {
        if self.u.is_empty() {
            Control::Read { consumed: false }
        } else {
            Control::Init(0)
        }
    }

    /// Control state after the l-part of `rule` has been popped.
    fn after_pops(&self, rule: usize) -> Control {
        if self.system().rule(rule).rhs.is_empty() {
            Control::Read { consumed: true }
        } else {
            Control::Push { rule, next: 0 }
        }
    }

    fn state_of(&self, x: StackSymbol) -> StateId {
        match x {
            StackSymbol::Bottom => self.system().matcher().root(),
            StackSymbol::Cell { state, .. } => state,
        }
    }

    /// Every move available in control `p` with `top` on the stack.
    pub fn moves(&self, p: Control, top: StackSymbol) -> Result<Vec<Move>, PreconditionError> {
        let system = self.system();
        let m = system.matcher();
        let q = self.state_of(top);
        let mut out = Vec::new();
        match p {
            Control::Init(i) => {
                let c = self.u[i];
                let t = m.next(q, c);
                if !m.is_match_free(t) {
                    return Err(PreconditionError::Reducible(system.render(&self.u)));
                }
                let to = if i + 1 < self.u.len() {
                    Control::Init(i + 1)
                } else {
                    Control::Read { consumed: false }
                };
                out.push(Move {
                    input: None,
                    action: Action::Push(StackSymbol::Cell { symbol: c, state: t }),
                    to,
                    reduces: None,
                });
            }
            Control::Read { consumed } => {
                for c in system.alphabet().symbols() {
                    let (t, hit) = m.advance(q, c);
                    let mv = match hit {
                        None => Move {
                            input: Some(Terminal::Sym(c)),
                            action: Action::Push(StackSymbol::Cell { symbol: c, state: t }),
                            to: Control::Read { consumed: true },
                            reduces: None,
                        },
                        Some(rule) => {
                            let k = m.lhs_len(rule);
                            let (action, to) = match k {
                                1 => (Action::Keep, self.after_pops(rule)),
                                2 => (Action::Pop, self.after_pops(rule)),
                                _ => (Action::Pop, Control::Pop { rule, remaining: k - 2 }),
                            };
                            Move {
                                input: Some(Terminal::Sym(c)),
                                action,
                                to,
                                reduces: Some(rule),
                            }
                        }
                    };
                    out.push(mv);
                }
                if consumed {
                    out.push(Move {
                        input: Some(Terminal::End),
                        action: Action::Keep,
                        to: Control::Check(self.v.len()),
                        reduces: None,
                    });
                }
            }
            Control::Pop { rule, remaining } => {
                if top != StackSymbol::Bottom {
                    let to = if remaining == 1 {
                        self.after_pops(rule)
                    } else {
                        Control::Pop { rule, remaining: remaining - 1 }
                    };
                    out.push(Move { input: None, action: Action::Pop, to, reduces: None });
                }
            }
            Control::Push { rule, next } => {
                let rhs = &system.rule(rule).rhs;
                let c = rhs[next];
                let (t, hit) = m.advance(q, c);
                if hit.is_some() {
                    return Err(PreconditionError::ReductReducible(rule));
                }
                let to = if next + 1 < rhs.len() {
                    Control::Push { rule, next: next + 1 }
                } else {
                    Control::Read { consumed: true }
                };
                out.push(Move {
                    input: None,
                    action: Action::Push(StackSymbol::Cell { symbol: c, state: t }),
                    to,
                    reduces: None,
                });
            }
            Control::Check(0) => {
                if top == StackSymbol::Bottom {
                    out.push(Move { input: None, action: Action::Pop, to: Control::Accept, reduces: None });
                }
            }
            Control::Check(j) => {
                if matches!(top, StackSymbol::Cell { symbol, .. } if symbol == self.v[j - 1]) {
                    out.push(Move { input: None, action: Action::Pop, to: Control::Check(j - 1), reduces: None });
                }
            }
            Control::Accept => {}
        }
        Ok(out)
    }

    /// Runs the machine on `w#`.
    pub fn run_word(&self, w: &[Symbol]) -> Result<RunTrace, Error> {
        let tape: Vec<Terminal> = w
            .iter()
            .map(|&s| Terminal::Sym(s))
            .chain(std::iter::once(Terminal::End))
            .collect();
        self.run(&tape)
    }

    /// Deterministic simulation. The tape must end with exactly one `#` and
    /// contain no other. Every configuration is checked to admit at most one
    /// move for the next input.
    pub fn run(&self, tape: &[Terminal]) -> Result<RunTrace, Error> {
        let ends = tape.iter().filter(|t| **t == Terminal::End).count();
        if ends != 1 || tape.last() != Some(&Terminal::End) {
            return Err(InputError::MalformedTape.into());
        }
        let mut control = self.initial_control();
        let mut stack = vec![StackSymbol::Bottom];
        let mut input = tape.iter().copied().peekable();
        let mut steps: Vec<TraceStep> = Vec::new();
        let mut initial: Option<Word> = None;
        let mut current: Option<(Terminal, StepKind)> = None;

        loop {
            let moves = match stack.last() {
                Some(&top) => self.moves(control, top)?,
                None => Vec::new(),
            };
            let epsilon: Vec<&Move> = moves.iter().filter(|m| m.input.is_none()).collect();
            let chosen = if !epsilon.is_empty() {
                assert!(
                    epsilon.len() == 1 && moves.len() == 1,
                    "nondeterministic configuration {control:?}"
                );
                Some(*epsilon[0])
            } else {
                // The machine now waits for input: the previous step is done.
                let snapshot = stack_word(&stack);
                match current.take() {
                    Some((t, kind)) => steps.push(TraceStep { input: t, kind, stack: snapshot }),
                    None => {
                        if initial.is_none() {
                            initial = Some(snapshot);
                        }
                    }
                }
                match input.next() {
                    None => None,
                    Some(t) => {
                        let fitting: Vec<&Move> =
                            moves.iter().filter(|m| m.input == Some(t)).collect();
                        assert!(fitting.len() <= 1, "nondeterministic configuration {control:?}");
                        match fitting.first() {
                            Some(&&mv) => {
                                match (t, mv.reduces) {
                                    // The end marker step reports the stack being checked.
                                    (Terminal::End, _) => steps.push(TraceStep {
                                        input: t,
                                        kind: StepKind::End,
                                        stack: stack_word(&stack),
                                    }),
                                    (_, Some(rule)) => current = Some((t, StepKind::Reduce(rule))),
                                    (_, None) => current = Some((t, StepKind::Push)),
                                }
                                Some(mv)
                            }
                            None => {
                                // Stuck: record the rejected symbol and stop.
                                let kind = if t == Terminal::End { StepKind::End } else { StepKind::Push };
                                steps.push(TraceStep { input: t, kind, stack: stack_word(&stack) });
                                break;
                            }
                        }
                    }
                }
            };
            let Some(mv) = chosen else { break };
            match mv.action {
                Action::Pop => {
                    stack.pop();
                }
                Action::Keep => {}
                Action::Push(cell) => stack.push(cell),
            }
            control = mv.to;
        }

        let accepted = control == Control::Accept && stack.is_empty() && input.peek().is_none();
        Ok(RunTrace {
            initial: initial.unwrap_or_default(),
            steps,
            accepted,
        })
    }

    /// Grammar generating exactly the words accepted by this machine.
    pub fn to_grammar(&self) -> Result<Grammar, PreconditionError> {
        convert::pda_to_grammar(self)
    }
}

fn stack_word(stack: &[StackSymbol]) -> Word {
    stack
        .iter()
        .filter_map(|x| match x {
            StackSymbol::Bottom => None,
            StackSymbol::Cell { symbol, .. } => Some(*symbol),
        })
        .collect()
}

impl fmt::Display for Terminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Terminal::Sym(s) => write!(f, "<{}>", s.rank()),
            Terminal::End => write!(f, "{END_MARKER}"),
        }
    }
}

/// Decides `L(u, v)` and returns its short-lex least member.
pub fn decide_language(
    certified: &CertifiedSystem,
    u: &[Symbol],
    v: &[Symbol],
) -> Result<LanguageDecision, Error> {
    let pda = CollapsePda::new(certified, Word::from(u), Word::from(v))?;
    let grammar = pda.to_grammar()?;
    let witness = grammar.shortest_word(grammar.start()).map(|word| {
        debug_assert_eq!(word.last(), Some(&Terminal::End));
        word.iter()
            .filter_map(|t| match t {
                Terminal::Sym(s) => Some(*s),
                Terminal::End => None,
            })
            .collect::<Word>()
    });
    if let Some(w) = &witness {
        let trace = pda.run_word(w)?;
        assert!(
            !w.is_empty() && trace.accepted,
            "grammar witness rejected by the machine"
        );
    }
    Ok(LanguageDecision {
        witness,
        nonterminals: grammar.nonterminal_count(),
        productions: grammar.productions().len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn certified(alpha: &str, rules: &[(&str, &str)]) -> CertifiedSystem {
        CertifiedSystem::certify(&RewriteSystem::from_strs(alpha, rules).unwrap()).unwrap()
    }

    fn pda<'a>(c: &'a CertifiedSystem, u: &str, v: &str) -> CollapsePda<'a> {
        let r = c.system();
        CollapsePda::new(c, r.word(u).unwrap(), r.word(v).unwrap()).unwrap()
    }

    fn run(c: &CertifiedSystem, u: &str, v: &str, w: &str) -> RunTrace {
        pda(c, u, v).run_word(&c.system().word(w).unwrap()).unwrap()
    }

    #[test]
    fn initial_stack_holds_u() {
        let c = certified("ab", &[("aa", "a")]);
        assert_eq!(run(&c, "a", "a", "").render(c.system())[0], "$a");
        let c = certified("abc", &[("ab", "c")]);
        assert_eq!(run(&c, "a", "c", "").render(c.system())[0], "$a");
    }

    #[test]
    fn reducible_endpoints_are_rejected() {
        let c = certified("abc", &[("ab", "c")]);
        let r = c.system();
        assert_eq!(
            CollapsePda::new(&c, r.word("aab").unwrap(), r.word("c").unwrap()).err(),
            Some(PreconditionError::Reducible("aab".into()))
        );
    }

    #[test]
    fn run_examples() {
        let c = certified("ab", &[("aa", "a")]);
        let t = run(&c, "a", "a", "a");
        assert!(t.accepted);
        assert_eq!(t.render(c.system()), ["$a", "$a", "$a"]);
        assert_eq!(t.steps[0].kind, StepKind::Reduce(0));

        let c = certified("abc", &[("ab", "c")]);
        let t = run(&c, "a", "c", "b");
        assert!(t.accepted);
        assert_eq!(t.render(c.system()), ["$a", "$c", "$c"]);

        let t = run(&c, "a", "c", "");
        assert!(!t.accepted);
    }

    #[test]
    fn malformed_tapes() {
        let c = certified("abc", &[("ab", "c")]);
        let p = pda(&c, "a", "c");
        let b = Terminal::Sym(c.system().word("b").unwrap()[0]);
        assert_eq!(p.run(&[b]).err(), Some(InputError::MalformedTape.into()));
        assert_eq!(
            p.run(&[b, Terminal::End, Terminal::End]).err(),
            Some(InputError::MalformedTape.into())
        );
        assert_eq!(
            p.run(&[Terminal::End, b, Terminal::End]).err(),
            Some(InputError::MalformedTape.into())
        );
    }

    #[test]
    fn pushing_rhs_restores_matcher_state() {
        // After ab -> c the top cell must carry the state for "c", so that a
        // following d completes cd.
        let c = certified("abcde", &[("ab", "c"), ("cd", "e")]);
        let t = run(&c, "a", "e", "bd");
        assert!(t.accepted);
        assert_eq!(t.render(c.system()), ["$a", "$c", "$e", "$e"]);
    }

    #[test]
    fn decision_examples() {
        let c = certified("abc", &[("ab", "c")]);
        let r = c.system();
        let d = decide_language(&c, &r.word("a").unwrap(), &r.word("c").unwrap()).unwrap();
        assert_eq!(d.witness, Some(r.word("b").unwrap()));
        let d = decide_language(&c, &r.word("b").unwrap(), &r.word("c").unwrap()).unwrap();
        assert!(d.is_empty());

        let c = certified("ab", &[("aa", "a")]);
        let r = c.system();
        let d = decide_language(&c, &r.word("a").unwrap(), &r.word("a").unwrap()).unwrap();
        assert_eq!(d.witness, Some(r.word("a").unwrap()));
    }

    #[test]
    fn empty_rhs_and_empty_endpoints() {
        let c = certified("ab", &[("ab", "")]);
        let r = c.system();
        let d = decide_language(&c, &[], &[]).unwrap();
        assert_eq!(d.witness, Some(r.word("ab").unwrap()));
        let d = decide_language(&c, &r.word("a").unwrap(), &[]).unwrap();
        assert_eq!(d.witness, Some(r.word("b").unwrap()));
    }
}
