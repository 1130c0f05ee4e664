use std::collections::BTreeMap;

use crate::system::{RewriteSystem, Symbol, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiDetReport {
    pub holds: bool,
    /// Rules whose right-hand side is empty.
    pub lambda_rhs: Vec<usize>,
    /// Rules whose two sides end in the same symbol.
    pub end_stable: Vec<usize>,
    /// Pairs of distinct rules with the same unordered pair of last symbols.
    pub end_pair_repetitions: Vec<(usize, usize)>,
}

/// A right-hand-side critical pair `{x·l1, l2}` from rules `l1 -> r1` and
/// `l2 -> r2` with `r2 = x·r1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhsPair {
    pub first: Word,
    pub second: Word,
    pub extension: Word,
    pub rules: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhsQuasiDetReport {
    pub holds: bool,
    pub pairs: Vec<RhsPair>,
    /// Indices into `pairs` whose two words end in the same symbol.
    pub end_stable_pairs: Vec<usize>,
    /// Index pairs into `pairs` sharing an unordered pair of last symbols.
    pub repetitions: Vec<(usize, usize)>,
}

fn end_pair(a: &[Symbol], b: &[Symbol]) -> Option<(Symbol, Symbol)> {
    let (x, y) = (*a.last()?, *b.last()?);
    Some((x.min(y), x.max(y)))
}

fn repetitions(keys: impl Iterator<Item = Option<(Symbol, Symbol)>>) -> Vec<(usize, usize)> {
    let mut first_seen: BTreeMap<(Symbol, Symbol), Vec<usize>> = BTreeMap::new();
    for (i, key) in keys.enumerate() {
        if let Some(key) = key {
            first_seen.entry(key).or_default().push(i);
        }
    }
    let mut out: Vec<(usize, usize)> = first_seen
        .values()
        .flat_map(|ids| {
            ids.iter()
                .enumerate()
                .flat_map(move |(k, &i)| ids[k + 1..].iter().map(move |&j| (i, j)))
        })
        .collect();
    out.sort_unstable();
    out
}

pub fn check_quasi_deterministic(system: &RewriteSystem) -> QuasiDetReport {
    let rules = system.rules();
    let lambda_rhs: Vec<usize> = (0..rules.len()).filter(|&i| rules[i].rhs.is_empty()).collect();
    let end_stable: Vec<usize> = (0..rules.len())
        .filter(|&i| !rules[i].rhs.is_empty() && rules[i].lhs.last() == rules[i].rhs.last())
        .collect();
    let end_pair_repetitions = repetitions(rules.iter().map(|r| end_pair(&r.lhs, &r.rhs)));
    QuasiDetReport {
        holds: lambda_rhs.is_empty() && end_stable.is_empty() && end_pair_repetitions.is_empty(),
        lambda_rhs,
        end_stable,
        end_pair_repetitions,
    }
}

/// Every RHS critical pair, each unordered pair of words reported once.
pub fn rhs_critical_pairs(system: &RewriteSystem) -> Vec<RhsPair> {
    let rules = system.rules();
    let mut out: Vec<RhsPair> = Vec::new();
    for (i, r1) in rules.iter().enumerate() {
        for (j, r2) in rules.iter().enumerate() {
            if i == j || !r2.rhs.ends_with(&r1.rhs) {
                continue;
            }
            let extension = Word::from(&r2.rhs[..r2.rhs.len() - r1.rhs.len()]);
            let first = extension.concat(&r1.lhs);
            let second = r2.lhs.clone();
            let seen = out.iter().any(|p| {
                (p.first == first && p.second == second) || (p.first == second && p.second == first)
            });
            if !seen {
                out.push(RhsPair {
                    first,
                    second,
                    extension,
                    rules: (i, j),
                });
            }
        }
    }
    out
}

/// Quasi-determinism of RHS(R): no pair ends in the same symbol on both
/// sides, and no two pairs share an unordered pair of last symbols.
/// Repetitions are only compared pair to pair, not against rules of R.
pub fn check_rhs_quasi_deterministic(system: &RewriteSystem) -> RhsQuasiDetReport {
    let pairs = rhs_critical_pairs(system);
    let end_stable_pairs: Vec<usize> = (0..pairs.len())
        .filter(|&i| pairs[i].first.last() == pairs[i].second.last())
        .collect();
    let reps = repetitions(pairs.iter().map(|p| end_pair(&p.first, &p.second)));
    RhsQuasiDetReport {
        holds: end_stable_pairs.is_empty() && reps.is_empty(),
        pairs,
        end_stable_pairs,
        repetitions: reps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(alpha: &str, rules: &[(&str, &str)]) -> RewriteSystem {
        RewriteSystem::from_strs(alpha, rules).unwrap()
    }

    #[test]
    fn quasi_determinism_examples() {
        assert!(check_quasi_deterministic(&sys("abc", &[("ab", "c")])).holds);

        let report = check_quasi_deterministic(&sys("ab", &[("aa", "a")]));
        assert!(!report.holds);
        assert_eq!(report.end_stable, [0]);

        let report = check_quasi_deterministic(&sys("abcd", &[("ab", "c"), ("db", "ac")]));
        assert!(!report.holds);
        assert_eq!(report.end_pair_repetitions, [(0, 1)]);
        assert!(report.end_stable.is_empty());
    }

    #[test]
    fn lambda_rhs_is_flagged() {
        let report = check_quasi_deterministic(&sys("ab", &[("ab", "")]));
        assert_eq!(report.lambda_rhs, [0]);
        assert!(report.end_stable.is_empty());
        assert!(!report.holds);
    }

    #[test]
    fn end_pairs_are_unordered() {
        // {b, c} from ab -> c and {c, b} from ac -> b.
        let report = check_quasi_deterministic(&sys("abc", &[("ab", "c"), ("ac", "b")]));
        assert_eq!(report.end_pair_repetitions, [(0, 1)]);
    }

    fn rendered(r: &RewriteSystem) -> Vec<(String, String, String)> {
        rhs_critical_pairs(r)
            .iter()
            .map(|p| (r.render(&p.first), r.render(&p.second), r.render(&p.extension)))
            .collect()
    }

    #[test]
    fn rhs_pair_examples() {
        let r = sys("abcd", &[("ab", "c"), ("db", "ac")]);
        assert_eq!(rendered(&r), [("aab".into(), "db".into(), "a".into())]);

        assert!(rhs_critical_pairs(&sys("abc", &[("ab", "c")])).is_empty());

        let r = sys("abcd", &[("ab", "c"), ("db", "c")]);
        assert_eq!(rendered(&r), [("ab".into(), "db".into(), "".into())]);
    }

    #[test]
    fn rhs_quasi_determinism_examples() {
        assert!(check_rhs_quasi_deterministic(&sys("abc", &[("ab", "c")])).holds);

        let r = sys("abcd", &[("ab", "c"), ("cd", "ac")]);
        let report = check_rhs_quasi_deterministic(&r);
        assert_eq!(report.pairs.len(), 1);
        assert!(report.holds);

        let r = sys("abcdefgh", &[("ab", "c"), ("cd", "ac"), ("fb", "g"), ("hd", "eg")]);
        assert!(check_quasi_deterministic(&r).holds);
        let report = check_rhs_quasi_deterministic(&r);
        let words: Vec<(String, String)> = report
            .pairs
            .iter()
            .map(|p| (r.render(&p.first), r.render(&p.second)))
            .collect();
        assert_eq!(words, [("aab".into(), "cd".into()), ("efb".into(), "hd".into())]);
        assert_eq!(report.repetitions, [(0, 1)]);
        assert!(!report.holds);
    }

    #[test]
    fn rhs_pair_end_stability() {
        // ab -> c, cb -> ac: pair {aab, cb} ends in b on both sides.
        let r = sys("abc", &[("ab", "c"), ("cb", "ac")]);
        let report = check_rhs_quasi_deterministic(&r);
        assert_eq!(report.end_stable_pairs, [0]);
        assert!(!report.holds);
    }
}
