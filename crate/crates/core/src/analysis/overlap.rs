use crate::system::{overlaps, RewriteSystem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapReport {
    /// `(i, j)` where lhs i overlaps lhs j; `i == j` for self-overlaps.
    pub lhs_lhs: Vec<(usize, usize)>,
    /// `(i, j)` where lhs i overlaps rhs j.
    pub lhs_rhs: Vec<(usize, usize)>,
}

impl OverlapReport {
    pub fn is_clean(&self) -> bool {
        self.lhs_lhs.is_empty() && self.lhs_rhs.is_empty()
    }
}

pub fn overlap_diagnostics(system: &RewriteSystem) -> OverlapReport {
    let rules = system.rules();
    let mut lhs_lhs = Vec::new();
    let mut lhs_rhs = Vec::new();
    for (i, a) in rules.iter().enumerate() {
        for (j, b) in rules.iter().enumerate() {
            if overlaps(&a.lhs, &b.lhs) {
                lhs_lhs.push((i, j));
            }
            if overlaps(&a.lhs, &b.rhs) {
                lhs_rhs.push((i, j));
            }
        }
    }
    OverlapReport { lhs_lhs, lhs_rhs }
}

/// Pairs of distinct rules sharing a left-hand side.
pub fn distinct_lhs_violations(system: &RewriteSystem) -> Vec<(usize, usize)> {
    let rules = system.rules();
    let mut out = Vec::new();
    for i in 0..rules.len() {
        for j in i + 1..rules.len() {
            if rules[i].lhs == rules[j].lhs {
                out.push((i, j));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(alpha: &str, rules: &[(&str, &str)]) -> RewriteSystem {
        RewriteSystem::from_strs(alpha, rules).unwrap()
    }

    #[test]
    fn overlap_examples() {
        assert!(overlap_diagnostics(&sys("abc", &[("ab", "c")])).is_clean());

        let report = overlap_diagnostics(&sys("ab", &[("aa", "a")]));
        assert_eq!(report.lhs_lhs, [(0, 0)]);
        // The suffix "a" of "aa" is also a prefix of the rhs "a".
        assert_eq!(report.lhs_rhs, [(0, 0)]);

        let report = overlap_diagnostics(&sys("ab", &[("ba", "ab")]));
        assert_eq!(report.lhs_rhs, [(0, 0)]);
        assert!(report.lhs_lhs.is_empty());
    }

    #[test]
    fn shared_lhs_detected() {
        assert_eq!(
            distinct_lhs_violations(&sys("abcd", &[("ab", "c"), ("ab", "d")])),
            [(0, 1)]
        );
        assert!(distinct_lhs_violations(&sys("abcd", &[("ab", "c"), ("db", "ac")])).is_empty());
    }
}
