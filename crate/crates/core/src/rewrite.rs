//! Rewriting primitives: irreducibility, innermost redexes, leftmost-largest
//! steps and normal forms.

use crate::analysis::CertifiedSystem;
use crate::error::PreconditionError;
use crate::matcher::StateId;
use crate::system::{RewriteSystem, Symbol, Word};

/// An innermost redex split into its s-part and l-part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedexSplit {
    pub s_part: Word,
    pub l_part: Word,
    pub rule: usize,
    /// Exclusive end of the redex in the scanned word.
    pub end: usize,
}

/// One `(x_i, y_i)` pair of a normalization decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionStep {
    pub x: Word,
    pub y: Word,
}

pub fn is_irreducible(system: &RewriteSystem, w: &[Symbol]) -> bool {
    system.matcher().first_match(system.matcher().root(), w).is_none()
}

/// Splits the shortest reducible prefix of `w`, if any.
pub fn leftmost_innermost_redex(system: &RewriteSystem, w: &[Symbol]) -> Option<RedexSplit> {
    let m = system.matcher();
    let (end, rule) = m.first_match(m.root(), w)?;
    let start = end - m.lhs_len(rule);
    Some(RedexSplit {
        s_part: Word::from(&w[..start]),
        l_part: Word::from(&w[start..end]),
        rule,
        end,
    })
}

/// One leftmost-largest step, or `None` when `w` is irreducible.
pub fn ll_step(system: &RewriteSystem, w: &[Symbol]) -> Option<Word> {
    let split = leftmost_innermost_redex(system, w)?;
    let mut out = split.s_part.into_vec();
    out.extend_from_slice(&system.rule(split.rule).rhs);
    out.extend_from_slice(&w[split.end..]);
    Some(Word::from(out))
}

/// The leftmost-largest normal form of `w`.
///
/// Refuses to run unless termination is certified or assumed.
pub fn normalize(system: &RewriteSystem, w: &[Symbol]) -> Result<Word, PreconditionError> {
    system.require_termination()?;
    Ok(normal_form(system, w))
}

/// Leftmost-largest normalization without the termination guard.
///
/// The scanned prefix is kept as a stack of matcher states. When a redex
/// completes, its l-part is popped and the right-hand side is pushed back
/// in front of the remaining input, so scanning resumes right after the
/// (irreducible) s-part.
pub(crate) fn normal_form(system: &RewriteSystem, w: &[Symbol]) -> Word {
    let m = system.matcher();
    let mut out: Vec<Symbol> = Vec::with_capacity(w.len());
    let mut states: Vec<StateId> = Vec::with_capacity(w.len());
    // Pending input, reversed so the next symbol is at the end.
    let mut input: Vec<Symbol> = w.iter().rev().copied().collect();
    while let Some(c) = input.pop() {
        let from = states.last().copied().unwrap_or(m.root());
        let (to, hit) = m.advance(from, c);
        match hit {
            None => {
                out.push(c);
                states.push(to);
            }
            Some(rule) => {
                let keep = out.len() + 1 - m.lhs_len(rule);
                out.truncate(keep);
                states.truncate(keep);
                input.extend(system.rule(rule).rhs.iter().rev());
            }
        }
    }
    Word::from(out)
}

/// Splits the normalization of `x·y` into innermost one-step reductions.
///
/// Returns `(x_1, y_1), ..., (x_{n+1}, y_{n+1})` with `y = y_1 ... y_{n+1}`,
/// each `x_i y_i` (i <= n) an innermost redex rewriting in one step to
/// `x_{i+1}`, and `x_{n+1} y_{n+1}` the normal form of `x·y`.
pub fn decompose_normalization(
    certified: &CertifiedSystem,
    x: &[Symbol],
    y: &[Symbol],
) -> Result<Vec<DecompositionStep>, PreconditionError> {
    let system = certified.system();
    for part in [x, y] {
        if !is_irreducible(system, part) {
            return Err(PreconditionError::Reducible(system.render(part)));
        }
    }
    let m = system.matcher();
    let mut steps = Vec::new();
    let mut current = Word::from(x);
    let mut rest = y;
    loop {
        let from = m.scan(m.root(), &current);
        match m.first_match(from, rest) {
            None => {
                steps.push(DecompositionStep {
                    x: current,
                    y: Word::from(rest),
                });
                return Ok(steps);
            }
            Some((cut, rule)) => {
                let piece = &rest[..cut];
                let redex = current.concat(piece);
                let keep = redex.len() - m.lhs_len(rule);
                let next = Word::from(&redex[..keep]).concat(&system.rule(rule).rhs);
                if !is_irreducible(system, &next) {
                    return Err(PreconditionError::ReductReducible(rule));
                }
                steps.push(DecompositionStep {
                    x: std::mem::replace(&mut current, next),
                    y: Word::from(piece),
                });
                rest = &rest[cut..];
            }
        }
    }
}

/// Renders a word as a monadic term over `x`; the first symbol is applied
/// innermost, so `gh` becomes `h(g(x))`.
pub fn to_monadic_term(system: &RewriteSystem, w: &[Symbol]) -> String {
    let mut term = String::from("x");
    for &s in w {
        term = format!("{}({term})", system.alphabet().char_of(s));
    }
    term
}
