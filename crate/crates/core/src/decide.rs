//! Subterm-collapse, cap queries and the full LM verdict.

use std::fmt;

use crate::analysis::{
    check_confluence, check_forward_closed, check_quasi_deterministic, check_rhs_quasi_deterministic,
    check_termination_shortlex, distinct_lhs_violations, overlap_diagnostics, right_reduce, CertifiedSystem,
    ConfluenceReport, ForwardClosureReport, OverlapReport, QuasiDetReport, RhsQuasiDetReport, TerminationCertificate,
};
use crate::error::{Error, PreconditionError};
use crate::pushdown::decide_language;
use crate::rewrite::{is_irreducible, normal_form};
use crate::system::{RewriteSystem, Symbol, TerminationBasis, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseWitness {
    /// Index of a rule in the right-reduced system whose rhs collapses.
    pub rule: usize,
    pub rhs: Word,
    pub y: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseVerdict {
    pub collapsing: bool,
    pub witness: Option<CollapseWitness>,
    /// Number of right-hand sides whose language was decided.
    pub rhs_checked: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapResult {
    pub derivable: bool,
    pub cap_term: Option<Word>,
}

/// Shortest non-empty `y` with `ρ(x·y) = x`, if any.
pub fn causes_collapse(certified: &CertifiedSystem, x: &[Symbol]) -> Result<Option<Word>, Error> {
    let witness = decide_language(certified, x, x)?.witness;
    if let Some(y) = &witness {
        assert_eq!(normal_form(certified.system(), &Word::from(x).concat(y)), Word::from(x));
    }
    Ok(witness)
}

/// A system collapses iff some right-hand side does, so only the distinct
/// right-hand sides of the right-reduced system are tried.
pub fn is_subterm_collapsing(certified: &CertifiedSystem) -> Result<CollapseVerdict, Error> {
    let system = certified.system();
    let mut tried: Vec<&Word> = Vec::new();
    for (i, rule) in system.rules().iter().enumerate() {
        if tried.contains(&&rule.rhs) {
            continue;
        }
        tried.push(&rule.rhs);
        if let Some(y) = causes_collapse(certified, &rule.rhs)? {
            return Ok(CollapseVerdict {
                collapsing: true,
                witness: Some(CollapseWitness { rule: i, rhs: rule.rhs.clone(), y }),
                rhs_checked: tried.len(),
            });
        }
    }
    Ok(CollapseVerdict {
        collapsing: false,
        witness: None,
        rhs_checked: tried.len(),
    })
}

/// Shortest non-empty `w` with `ρ(u·w) = v`.
pub fn solve_cap(certified: &CertifiedSystem, u: &[Symbol], v: &[Symbol]) -> Result<CapResult, Error> {
    if u.is_empty() || v.is_empty() {
        return Err(PreconditionError::EmptyWord.into());
    }
    let cap_term = decide_language(certified, u, v)?.witness;
    if let Some(w) = &cap_term {
        assert_eq!(normal_form(certified.system(), &Word::from(u).concat(w)), Word::from(v));
    }
    Ok(CapResult {
        derivable: cap_term.is_some(),
        cap_term,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LmVerdict {
    Lm,
    /// Every checked stage passes, but termination was assumed.
    LmAssumingTermination,
    NotLm,
    /// Termination could not be certified and was not assumed.
    Inconclusive,
}

impl LmVerdict {
    pub fn is_lm(self) -> bool {
        matches!(self, LmVerdict::Lm | LmVerdict::LmAssumingTermination)
    }
}

impl fmt::Display for LmVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LmVerdict::Lm => "lm",
            LmVerdict::LmAssumingTermination => "lm-assuming-termination",
            LmVerdict::NotLm => "not-lm",
            LmVerdict::Inconclusive => "inconclusive",
        })
    }
}

/// Stage-by-stage results. Stages after a missing termination basis are
/// `None`; the collapse decision is `None` whenever its hypotheses fail.
#[derive(Debug, Clone)]
pub struct LmReport {
    pub verdict: LmVerdict,
    pub original: RewriteSystem,
    pub termination: TerminationCertificate,
    pub termination_basis: Option<TerminationBasis>,
    pub originally_right_reduced: Option<bool>,
    pub right_reduced: Option<RewriteSystem>,
    pub confluence: Option<ConfluenceReport>,
    pub forward_closure: Option<ForwardClosureReport>,
    pub distinct_lhs_violations: Vec<(usize, usize)>,
    pub quasi_deterministic: Option<QuasiDetReport>,
    pub rhs_quasi_deterministic: Option<RhsQuasiDetReport>,
    pub collapse: Option<CollapseVerdict>,
    pub overlaps: OverlapReport,
}

impl LmReport {
    pub fn is_lm(&self) -> bool {
        self.verdict.is_lm()
    }
}

pub fn verify_lm_system(system: &RewriteSystem) -> LmReport {
    let mut report = LmReport {
        verdict: LmVerdict::Inconclusive,
        original: system.clone(),
        termination: check_termination_shortlex(system),
        termination_basis: system.termination_basis(),
        originally_right_reduced: None,
        right_reduced: None,
        confluence: None,
        forward_closure: None,
        distinct_lhs_violations: Vec::new(),
        quasi_deterministic: None,
        rhs_quasi_deterministic: None,
        collapse: None,
        overlaps: overlap_diagnostics(system),
    };
    let Some(basis) = report.termination_basis else {
        return report;
    };
    let reduced = right_reduce(system).expect("termination evidence present");
    report.originally_right_reduced = Some(
        system
            .rules()
            .iter()
            .all(|r| is_irreducible(system, &r.rhs)),
    );
    let confluence = check_confluence(&reduced).expect("termination evidence present");
    let forward = check_forward_closed(&reduced);
    let rhs_quasi = check_rhs_quasi_deterministic(&reduced);
    report.distinct_lhs_violations = distinct_lhs_violations(&reduced);
    report.quasi_deterministic = Some(check_quasi_deterministic(&reduced));
    report.overlaps = overlap_diagnostics(&reduced);

    // The collapse decision needs a convergent forward-closed system.
    let collapse = CertifiedSystem::certify(system)
        .ok()
        .map(|c| is_subterm_collapsing(&c).expect("certified system"));
    let passes = confluence.confluent
        && forward.holds
        && rhs_quasi.holds
        && collapse.as_ref().is_some_and(|v| !v.collapsing);
    report.verdict = match (passes, basis) {
        (false, _) => LmVerdict::NotLm,
        (true, TerminationBasis::Certified) => LmVerdict::Lm,
        (true, TerminationBasis::Assumed) => LmVerdict::LmAssumingTermination,
    };
    report.right_reduced = Some(reduced);
    report.confluence = Some(confluence);
    report.forward_closure = Some(forward);
    report.rhs_quasi_deterministic = Some(rhs_quasi);
    report.collapse = collapse;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::Assumption;

    fn certified(alpha: &str, rules: &[(&str, &str)]) -> CertifiedSystem {
        CertifiedSystem::certify(&RewriteSystem::from_strs(alpha, rules).unwrap()).unwrap()
    }

    fn word(c: &CertifiedSystem, w: &str) -> Word {
        c.system().word(w).unwrap()
    }

    #[test]
    fn causes_collapse_examples() {
        let c = certified("ab", &[("aa", "a")]);
        assert_eq!(causes_collapse(&c, &word(&c, "a")).unwrap(), Some(word(&c, "a")));
        assert_eq!(causes_collapse(&c, &word(&c, "b")).unwrap(), None);
        let c = certified("abc", &[("ab", "c")]);
        assert_eq!(causes_collapse(&c, &word(&c, "c")).unwrap(), None);
        assert!(causes_collapse(&c, &word(&c, "ab")).is_err());
    }

    #[test]
    fn subterm_collapse_examples() {
        let c = certified("ab", &[("aa", "a")]);
        let v = is_subterm_collapsing(&c).unwrap();
        assert!(v.collapsing);
        let w = v.witness.unwrap();
        assert_eq!((w.rhs, w.y), (word(&c, "a"), word(&c, "a")));

        assert!(!is_subterm_collapsing(&certified("abc", &[("ab", "c")])).unwrap().collapsing);
        let r = RewriteSystem::from_strs("cab", &[("ab", "ca")]).unwrap();
        assert!(!is_subterm_collapsing(&CertifiedSystem::certify(&r).unwrap()).unwrap().collapsing);
    }

    #[test]
    fn cap_examples() {
        let c = certified("abc", &[("ab", "c")]);
        let r = solve_cap(&c, &word(&c, "a"), &word(&c, "c")).unwrap();
        assert_eq!(r.cap_term, Some(word(&c, "b")));
        assert!(!solve_cap(&c, &word(&c, "b"), &word(&c, "c")).unwrap().derivable);
        assert_eq!(
            solve_cap(&c, &[], &word(&c, "c")).err(),
            Some(PreconditionError::EmptyWord.into())
        );
        let c = certified("ab", &[("aa", "a")]);
        assert_eq!(solve_cap(&c, &word(&c, "a"), &word(&c, "a")).unwrap().cap_term, Some(word(&c, "a")));
    }

    fn verdict(alpha: &str, rules: &[(&str, &str)]) -> LmReport {
        verify_lm_system(&RewriteSystem::from_strs(alpha, rules).unwrap())
    }

    #[test]
    fn lm_examples() {
        assert_eq!(verdict("abc", &[("ab", "c")]).verdict, LmVerdict::Lm);

        let report = verdict("ab", &[("aa", "a")]);
        assert_eq!(report.verdict, LmVerdict::NotLm);
        assert!(report.collapse.unwrap().collapsing);
        assert!(!report.quasi_deterministic.unwrap().holds);

        let report = verdict("ab", &[("ab", "b")]);
        assert_eq!(report.verdict, LmVerdict::NotLm);
        assert!(!report.forward_closure.unwrap().holds);
        assert!(report.collapse.is_none());
    }

    #[test]
    fn termination_provenance() {
        let r = RewriteSystem::from_strs("ab", &[("ab", "ba")]).unwrap();
        assert_eq!(verify_lm_system(&r).verdict, LmVerdict::Inconclusive);
        let r = RewriteSystem::from_strs("abc", &[("ab", "ca")])
            .unwrap()
            .with_assumption(Assumption::Terminating);
        assert_eq!(verify_lm_system(&r).verdict, LmVerdict::LmAssumingTermination);
    }
}
