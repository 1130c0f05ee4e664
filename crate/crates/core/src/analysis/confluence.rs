use crate::error::PreconditionError;
use crate::rewrite::normal_form;
use crate::system::{RewriteSystem, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverlapKind {
    /// A proper suffix of the first lhs is a proper prefix of the second.
    SuffixPrefix,
    /// The first lhs occurs inside the second.
    Embedding,
}

/// Two one-step reducts of a common superposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPair {
    pub left: Word,
    pub right: Word,
    pub rules: (usize, usize),
    pub kind: OverlapKind,
    pub superposition: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub confluent: bool,
    /// Failing pairs together with the distinct normal forms of each side.
    pub non_joinable: Vec<(CriticalPair, Word, Word)>,
}

/// All critical pairs over ordered rule pairs, self-overlaps included. The
/// trivial overlap of a rule with itself at the same position is skipped.
pub fn critical_pairs(system: &RewriteSystem) -> Vec<CriticalPair> {
    let rules = system.rules();
    let mut out = Vec::new();
    for (i, r1) in rules.iter().enumerate() {
        for (j, r2) in rules.iter().enumerate() {
            let (l1, l2) = (&r1.lhs, &r2.lhs);
            // l1 = x·t, l2 = t·y with t a proper suffix/prefix of both.
            for t in 1..l1.len().min(l2.len()) {
                if l1[l1.len() - t..] == l2[..t] {
                    let x = &l1[..l1.len() - t];
                    let y = &l2[t..];
                    out.push(CriticalPair {
                        left: r1.rhs.concat(y),
                        right: Word::from(x).concat(&r2.rhs),
                        rules: (i, j),
                        kind: OverlapKind::SuffixPrefix,
                        superposition: l1.concat(y),
                    });
                }
            }
            // l2 = x·l1·y.
            if i != j && l1.len() <= l2.len() {
                for start in 0..=(l2.len() - l1.len()) {
                    if l2[start..start + l1.len()] == l1[..] {
                        let x = &l2[..start];
                        let y = &l2[start + l1.len()..];
                        out.push(CriticalPair {
                            left: r2.rhs.clone(),
                            right: Word::from(x).concat(&r1.rhs).concat(y),
                            rules: (i, j),
                            kind: OverlapKind::Embedding,
                            superposition: l2.clone(),
                        });
                    }
                }
            }
        }
    }
    out
}

/// Under termination, the system is confluent iff every critical pair has a
/// single normal form.
pub fn check_confluence(system: &RewriteSystem) -> Result<ConfluenceReport, PreconditionError> {
    system.require_termination()?;
    let non_joinable: Vec<_> = critical_pairs(system)
        .into_iter()
        .filter_map(|cp| {
            let a = normal_form(system, &cp.left);
            let b = normal_form(system, &cp.right);
            (a != b).then_some((cp, a, b))
        })
        .collect();
    Ok(ConfluenceReport {
        confluent: non_joinable.is_empty(),
        non_joinable,
    })
}
