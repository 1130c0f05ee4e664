use std::cmp::Ordering;

use crate::system::{shortlex, RewriteSystem};

/// Why a single rule decreases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleOrientation {
    LengthReducing,
    ShortlexDecreasing,
    None,
}

/// Sufficient-condition termination check: every rule strictly decreases
/// in the short-lex order. A failed check says nothing about termination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminationCertificate {
    pub per_rule: Vec<RuleOrientation>,
}

impl TerminationCertificate {
    pub fn is_certified(&self) -> bool {
        self.per_rule.iter().all(|r| *r != RuleOrientation::None)
    }
}

pub fn check_termination_shortlex(system: &RewriteSystem) -> TerminationCertificate {
    let per_rule = system
        .rules()
        .iter()
        .map(|rule| {
            if rule.lhs.len() > rule.rhs.len() {
                RuleOrientation::LengthReducing
            } else if shortlex(&rule.lhs, &rule.rhs) == Ordering::Greater {
                RuleOrientation::ShortlexDecreasing
            } else {
                RuleOrientation::None
            }
        })
        .collect();
    TerminationCertificate { per_rule }
}
