use crate::system::{RewriteSystem, Word};

/// An innermost redex `s_part·lhs(rule)` none of whose one-step reducts is
/// irreducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForwardClosureCounterexample {
    pub s_part: Word,
    pub rule: usize,
}

impl ForwardClosureCounterexample {
    pub fn redex(&self, system: &RewriteSystem) -> Word {
        self.s_part.concat(&system.rule(self.rule).lhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForwardClosureReport {
    pub holds: bool,
    pub counterexample: Option<ForwardClosureCounterexample>,
}

/// Decides whether every innermost redex has an irreducible one-step reduct.
///
/// Whether `x·l` is an innermost redex with l-part `l`, and which of its
/// one-step reducts are irreducible, depends only on the matcher state
/// reached by the irreducible s-part `x`. The check therefore ranges over
/// match-free reachable states instead of words, and the counterexample
/// uses the shortest s-part reaching the offending state.
///
/// Every redex occurrence inside an innermost redex ends at its last
/// symbol, so the candidate reducts are exactly one per left-hand side that
/// is a suffix of the redex.
pub fn check_forward_closed(system: &RewriteSystem) -> ForwardClosureReport {
    let m = system.matcher();
    let reach = m.irreducible_reachable_states();
    let rules = system.rules();
    let mut path = Vec::new();
    for &q in &reach.reachable {
        for (i, rule) in rules.iter().enumerate() {
            if rules[..i].iter().any(|r| r.lhs == rule.lhs) {
                continue;
            }
            path.clear();
            path.push(q);
            let mut s = q;
            let mut innermost = true;
            for (k, &c) in rule.lhs.iter().enumerate() {
                s = m.next(s, c);
                path.push(s);
                if k + 1 < rule.lhs.len() && !m.is_match_free(s) {
                    innermost = false;
                    break;
                }
            }
            if !innermost {
                continue;
            }
            let l_part_is_lhs = m
                .longest_match(s)
                .is_some_and(|r| m.lhs_len(r) == rule.lhs.len());
            if !l_part_is_lhs {
                continue;
            }
            let has_normal_reduct = m.all_matches(s).iter().any(|&j| {
                let cut = rule.lhs.len() - m.lhs_len(j);
                m.first_match(path[cut], &rules[j].rhs).is_none()
            });
            if !has_normal_reduct {
                return ForwardClosureReport {
                    holds: false,
                    counterexample: Some(ForwardClosureCounterexample {
                        s_part: reach.witness[&q].clone(),
                        rule: i,
                    }),
                };
            }
        }
    }
    ForwardClosureReport {
        holds: true,
        counterexample: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(alpha: &str, rules: &[(&str, &str)]) -> RewriteSystem {
        RewriteSystem::from_strs(alpha, rules).unwrap()
    }

    #[test]
    fn forward_closure_examples() {
        assert!(check_forward_closed(&sys("abc", &[("ab", "c")])).holds);
        assert!(check_forward_closed(&sys("ab", &[("aa", "a")])).holds);

        let r = sys("ab", &[("ab", "b")]);
        let report = check_forward_closed(&r);
        assert!(!report.holds);
        let cx = report.counterexample.unwrap();
        assert_eq!(r.render(&cx.s_part), "a");
        assert_eq!(r.render(&cx.redex(&r)), "aab");
    }

    #[test]
    fn reducible_rhs_can_be_rescued_by_a_shorter_lhs() {
        // ab -> ag is not right-reduced, but b -> e takes x·ab to the
        // irreducible x·ae in one step.
        let r = sys("aegb", &[("ab", "ag"), ("b", "e"), ("g", "e")]);
        assert!(check_forward_closed(&r).holds);
    }

    #[test]
    fn not_forward_closed_without_right_reduction() {
        let r = sys("abcd", &[("bb", "c"), ("ad", "abb")]);
        let report = check_forward_closed(&r);
        assert!(!report.holds);
        assert_eq!(r.render(&report.counterexample.unwrap().redex(&r)), "ad");
    }

    #[test]
    fn sorting_rule_is_not_forward_closed() {
        let r = sys("ab", &[("ba", "ab")]);
        let report = check_forward_closed(&r);
        assert_eq!(r.render(&report.counterexample.unwrap().redex(&r)), "bba");
    }
}
