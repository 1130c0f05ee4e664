use crate::error::PreconditionError;
use crate::rewrite::{is_irreducible, normal_form};
use crate::system::RewriteSystem;

/// Replaces every right-hand side by its normal form, one rule at a time,
/// each time normalizing with the system as updated so far. Left-hand sides
/// are untouched, so the set of irreducible words is unchanged. Rules that
/// become identical are merged.
pub fn right_reduce(system: &RewriteSystem) -> Result<RewriteSystem, PreconditionError> {
    system.require_termination()?;
    let mut current = system.clone();
    for i in 0..system.rules().len() {
        let rhs = &current.rule(i).rhs;
        if is_irreducible(&current, rhs) {
            continue;
        }
        let reduced = normal_form(&current, rhs);
        current = current.replace_rhs(i, reduced);
    }
    Ok(system.with_rules(current.rules().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(alpha: &str, rules: &[(&str, &str)]) -> RewriteSystem {
        RewriteSystem::from_strs(alpha, rules).unwrap()
    }

    #[test]
    fn reduces_reducible_rhs() {
        let r = sys("abcd", &[("bb", "c"), ("ad", "abb")]);
        // ad -> abb grows, so termination has to be declared.
        let r = r.with_assumption(crate::system::Assumption::Terminating);
        let rr = right_reduce(&r).unwrap();
        assert_eq!(rr.to_string(), "{bb -> c, ad -> ac}");
    }

    #[test]
    fn right_reduced_systems_are_fixed_points() {
        for r in [sys("abc", &[("ab", "c")]), sys("ab", &[("aa", "a")])] {
            assert_eq!(right_reduce(&r).unwrap(), r);
        }
    }

    #[test]
    fn merges_rules_that_collapse_together() {
        let r = sys("abcd", &[("ab", "c"), ("ab", "d"), ("d", "c")]);
        let rr = right_reduce(&r).unwrap();
        assert_eq!(rr.to_string(), "{ab -> c, d -> c}");
    }

    #[test]
    fn needs_termination_evidence() {
        let r = sys("ab", &[("a", "ab")]);
        assert_eq!(right_reduce(&r), Err(PreconditionError::NoTerminationEvidence));
    }
}
