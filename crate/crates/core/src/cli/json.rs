//! JSON renderings of verdicts. Words are rendered as strings, with the
//! empty word as "".

use serde_json::{json, Value};

use crate::analysis::{
    ConfluenceReport, ForwardClosureReport, OverlapReport, QuasiDetReport, RhsQuasiDetReport, RuleOrientation,
    TerminationCertificate,
};
use crate::decide::{CapResult, CollapseVerdict, LmReport};
use crate::pushdown::{RunTrace, StepKind, Terminal};
use crate::system::{RewriteSystem, Symbol, TerminationBasis, END_MARKER};

pub fn word(system: &RewriteSystem, w: &[Symbol]) -> Value {
    Value::String(system.render(w))
}

pub fn rules(system: &RewriteSystem) -> Value {
    system
        .rules()
        .iter()
        .map(|r| json!({"lhs": word(system, &r.lhs), "rhs": word(system, &r.rhs)}))
        .collect()
}

pub fn basis(b: Option<TerminationBasis>) -> Value {
    match b {
        Some(b) => Value::String(b.to_string()),
        None => Value::String("none".into()),
    }
}

pub fn termination(cert: &TerminationCertificate) -> Value {
    let per_rule: Vec<&str> = cert
        .per_rule
        .iter()
        .map(|o| match o {
            RuleOrientation::LengthReducing => "length-reducing",
            RuleOrientation::ShortlexDecreasing => "shortlex-decreasing",
            RuleOrientation::None => "not-decreasing",
        })
        .collect();
    json!({"certified": cert.is_certified(), "per_rule": per_rule})
}

pub fn confluence(system: &RewriteSystem, c: &ConfluenceReport) -> Value {
    let failures: Vec<Value> = c
        .non_joinable
        .iter()
        .map(|(cp, a, b)| {
            json!({
                "rules": [cp.rules.0, cp.rules.1],
                "superposition": word(system, &cp.superposition),
                "left": word(system, &cp.left),
                "right": word(system, &cp.right),
                "normal_forms": [word(system, a), word(system, b)],
            })
        })
        .collect();
    json!({"confluent": c.confluent, "non_joinable": failures})
}

pub fn forward(system: &RewriteSystem, f: &ForwardClosureReport) -> Value {
    let cx = f.counterexample.as_ref().map(|cx| {
        json!({
            "s_part": word(system, &cx.s_part),
            "rule": cx.rule,
            "redex": word(system, &cx.redex(system)),
        })
    });
    json!({"holds": f.holds, "counterexample": cx})
}

pub fn quasi(q: &QuasiDetReport) -> Value {
    json!({
        "holds": q.holds,
        "lambda_rhs": q.lambda_rhs,
        "end_stable": q.end_stable,
        "end_pair_repetitions": q.end_pair_repetitions,
    })
}

pub fn rhs_quasi(system: &RewriteSystem, q: &RhsQuasiDetReport) -> Value {
    let pairs: Vec<Value> = q
        .pairs
        .iter()
        .map(|p| {
            json!({
                "first": word(system, &p.first),
                "second": word(system, &p.second),
                "rules": [p.rules.0, p.rules.1],
            })
        })
        .collect();
    json!({
        "holds": q.holds,
        "pairs": pairs,
        "end_stable_pairs": q.end_stable_pairs,
        "repetitions": q.repetitions,
    })
}

pub fn overlaps(o: &OverlapReport) -> Value {
    json!({"lhs_lhs": o.lhs_lhs, "lhs_rhs": o.lhs_rhs})
}

pub fn collapse(system: &RewriteSystem, v: &CollapseVerdict) -> Value {
    let witness = v.witness.as_ref().map(|w| {
        json!({"rule": w.rule, "rhs": word(system, &w.rhs), "y": word(system, &w.y)})
    });
    json!({"collapsing": v.collapsing, "witness": witness, "rhs_checked": v.rhs_checked})
}

pub fn cap(system: &RewriteSystem, u: &[Symbol], v: &[Symbol], r: &CapResult) -> Value {
    json!({
        "u": word(system, u),
        "v": word(system, v),
        "derivable": r.derivable,
        "cap_term": r.cap_term.as_ref().map(|w| word(system, w)),
    })
}

pub fn lm(r: &LmReport) -> Value {
    let reduced = r.right_reduced.as_ref();
    let on_reduced = |f: &dyn Fn(&RewriteSystem) -> Value| reduced.map(f);
    json!({
        "verdict": r.verdict.to_string(),
        "is_lm": r.is_lm(),
        "termination": termination(&r.termination),
        "termination_basis": basis(r.termination_basis),
        "originally_right_reduced": r.originally_right_reduced,
        "right_reduced": reduced.map(rules),
        "confluence": on_reduced(&|s| confluence(s, r.confluence.as_ref().expect("stage ran"))),
        "forward_closure": on_reduced(&|s| forward(s, r.forward_closure.as_ref().expect("stage ran"))),
        "distinct_lhs_violations": r.distinct_lhs_violations,
        "quasi_deterministic": r.quasi_deterministic.as_ref().map(quasi),
        "rhs_quasi_deterministic": on_reduced(&|s| rhs_quasi(s, r.rhs_quasi_deterministic.as_ref().expect("stage ran"))),
        "collapse": reduced.zip(r.collapse.as_ref()).map(|(s, c)| collapse(s, c)),
        "overlaps": overlaps(&r.overlaps),
    })
}

pub fn terminal(system: &RewriteSystem, t: Terminal) -> String {
    match t {
        Terminal::Sym(s) => system.alphabet().char_of(s).to_string(),
        Terminal::End => END_MARKER.to_string(),
    }
}

pub fn trace(system: &RewriteSystem, t: &RunTrace) -> Value {
    let steps: Vec<Value> = t
        .steps
        .iter()
        .map(|s| {
            let (kind, rule) = match s.kind {
                StepKind::Push => ("push", None),
                StepKind::Reduce(i) => ("reduce", Some(i)),
                StepKind::End => ("end", None),
            };
            json!({
                "input": terminal(system, s.input),
                "kind": kind,
                "rule": rule,
                "stack": word(system, &s.stack),
            })
        })
        .collect();
    json!({"initial": word(system, &t.initial), "steps": steps, "accepted": t.accepted})
}
