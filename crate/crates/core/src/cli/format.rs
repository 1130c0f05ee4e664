//! The `.srs` system file format.
//!
//! ```text
//! # comment
//! alphabet: a b c
//! assume: terminating
//! rules:
//! ab -> c
//! ba -> eps
//! ```

use std::collections::BTreeSet;
use std::path::PathBuf;

use crate::error::InputError;
use crate::system::{Alphabet, Assumption, RewriteSystem, Rule, EMPTY_WORD};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemFile {
    pub path: Option<PathBuf>,
    pub system: RewriteSystem,
    /// Assumptions declared in the file itself.
    pub assumptions: BTreeSet<Assumption>,
}

fn parse_error(line: usize, message: impl Into<String>) -> InputError {
    InputError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_assumption(text: &str) -> Option<Assumption> {
    match text {
        "terminating" => Some(Assumption::Terminating),
        _ => None,
    }
}

pub fn parse_system_file(text: &str) -> Result<SystemFile, InputError> {
    let mut alphabet: Option<Alphabet> = None;
    let mut in_rules = false;
    let mut assumptions = BTreeSet::new();
    let mut rules: Vec<Rule> = Vec::new();
    let mut rule_lines: Vec<usize> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        if let Some(rest) = content.strip_prefix("alphabet:") {
            if alphabet.is_some() {
                return Err(parse_error(line, "alphabet declared twice"));
            }
            let mut symbols = Vec::new();
            for token in rest.split_whitespace() {
                let mut chars = token.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => symbols.push(c),
                    _ => return Err(parse_error(line, format!("alphabet entry {token:?} is not a single character"))),
                }
            }
            alphabet = Some(Alphabet::new(symbols).map_err(|e| parse_error(line, e.to_string()))?);
        } else if let Some(rest) = content.strip_prefix("assume:") {
            let name = rest.trim();
            let a = parse_assumption(name).ok_or_else(|| parse_error(line, format!("unknown assumption {name:?}")))?;
            assumptions.insert(a);
        } else if content == "rules:" {
            if alphabet.is_none() {
                return Err(parse_error(line, "rules: must follow the alphabet: line"));
            }
            if in_rules {
                return Err(parse_error(line, "rules: declared twice"));
            }
            in_rules = true;
        } else if in_rules {
            let alphabet = alphabet.as_ref().expect("checked at rules:");
            let (lhs, rhs) = content
                .split_once("->")
                .ok_or_else(|| parse_error(line, "expected a rule of the form LHS -> RHS"))?;
            let (lhs, rhs) = (lhs.trim(), rhs.trim());
            if lhs.is_empty() || lhs == EMPTY_WORD {
                return Err(parse_error(line, "empty left-hand side"));
            }
            if rhs.is_empty() {
                return Err(parse_error(line, format!("empty right-hand side; write {EMPTY_WORD}")));
            }
            let lhs = alphabet.word(lhs).map_err(|e| parse_error(line, e.to_string()))?;
            let rhs = alphabet.word(rhs).map_err(|e| parse_error(line, e.to_string()))?;
            let rule = Rule::new(lhs, rhs);
            if let Some(k) = rules.iter().position(|r| *r == rule) {
                return Err(parse_error(line, format!("duplicate of the rule on line {}", rule_lines[k])));
            }
            rules.push(rule);
            rule_lines.push(line);
        } else {
            return Err(parse_error(line, format!("unexpected line {content:?}")));
        }
    }

    let end = last_line.max(1);
    let alphabet = alphabet.ok_or_else(|| parse_error(end, "missing alphabet: section"))?;
    if !in_rules {
        return Err(parse_error(end, "missing rules: section"));
    }
    let system = RewriteSystem::new(alphabet, rules)
        .map_err(|e| parse_error(end, e.to_string()))?
        .with_assumptions(assumptions.iter().copied());
    Ok(SystemFile {
        path: None,
        system,
        assumptions,
    })
}
