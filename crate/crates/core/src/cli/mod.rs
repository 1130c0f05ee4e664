//! Command-line front end.
//!
//! Exit codes: 0 the property holds or the query is derivable, 1 it fails,
//! 2 input or precondition error, 3 inconclusive (no termination evidence),
//! 4 the `--oracle` cross-check disagreed with a decision.

mod format;
mod json;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub use format::{parse_system_file, SystemFile};

use crate::analysis::{
    check_confluence, check_forward_closed, check_quasi_deterministic, check_rhs_quasi_deterministic,
    check_termination_shortlex, distinct_lhs_violations, overlap_diagnostics, right_reduce, CertifiedSystem,
};
use crate::decide::{is_subterm_collapsing, solve_cap, verify_lm_system, LmVerdict};
use crate::error::{Error, InputError, PreconditionError};
use crate::oracle::{all_normal_forms, brute_force_cap, brute_force_collapse, Outcome, SearchBudget};
use crate::pushdown::CollapsePda;
use crate::rewrite::{ll_step, normalize, to_monadic_term};
use crate::system::{Assumption, RewriteSystem};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_DISCREPANCY: i32 = 4;

/// Version of the JSON report layout; see `schema/report.schema.json`.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

const ORACLE_STEPS: usize = 100_000;

#[derive(Debug, Parser)]
#[command(name = "srslm", version, about = "Normal forms, LM conditions, subterm collapse and cap queries for string rewriting systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Treat the system as terminating even without a short-lex certificate.
    #[arg(long, global = true)]
    assume_terminating: bool,
    /// Cross-check decisions against brute-force search up to this length.
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u64).range(1..=16))]
    oracle: Option<u64>,
    /// Include rewrite steps or pushdown runs in the output.
    #[arg(long, global = true)]
    trace: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every analysis check.
    Check { file: PathBuf },
    /// Print the leftmost-largest normal form of WORD.
    Normalize {
        file: PathBuf,
        word: String,
        /// Also print the word as a monadic term.
        #[arg(long)]
        term: bool,
    },
    /// Decide whether the system is subterm-collapsing.
    Collapse { file: PathBuf },
    /// Find the shortest cap term w with u·w reducing to v.
    Cap {
        file: PathBuf,
        #[arg(short)]
        u: String,
        #[arg(short)]
        v: String,
    },
    /// Verify the LM conditions.
    Lm { file: PathBuf },
    /// Run the pushdown machine for (u, v) on w.
    Explain {
        file: PathBuf,
        #[arg(short)]
        u: String,
        #[arg(short)]
        v: String,
        #[arg(short)]
        w: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Normalize { .. } => "normalize",
            Command::Collapse { .. } => "collapse",
            Command::Cap { .. } => "cap",
            Command::Lm { .. } => "lm",
            Command::Explain { .. } => "explain",
        }
    }

    fn file(&self) -> &Path {
        match self {
            Command::Check { file }
            | Command::Normalize { file, .. }
            | Command::Collapse { file }
            | Command::Cap { file, .. }
            | Command::Lm { file }
            | Command::Explain { file, .. } => file,
        }
    }
}

#[derive(Debug, Serialize)]
struct Input {
    path: String,
    sha256: String,
}

#[derive(Debug, Serialize)]
struct Provenance {
    termination: String,
    assumptions: Vec<Value>,
}

#[derive(Debug, Serialize)]
struct Envelope {
    schema_version: u32,
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    input: Input,
    provenance: Option<Provenance>,
    exit_code: i32,
    result: Option<Value>,
    oracle: Option<Value>,
    error: Option<Value>,
    timing: Value,
}

/// What a command produced before it is wrapped for output.
struct Report {
    exit: i32,
    text: Vec<String>,
    result: Value,
    oracle: Option<Value>,
}

enum Failure {
    Io(String),
    Input(InputError),
    Precondition(PreconditionError),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Input(e) => Failure::Input(e),
            Error::Precondition(e) => Failure::Precondition(e),
        }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<PreconditionError> for Failure {
    fn from(e: PreconditionError) -> Self {
        Failure::Precondition(e)
    }
}

impl Failure {
    fn exit(&self) -> i32 {
        match self {
            Failure::Precondition(PreconditionError::NoTerminationEvidence) => EXIT_INCONCLUSIVE,
            _ => EXIT_ERROR,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Io(_) => "io",
            Failure::Input(_) => "input",
            Failure::Precondition(_) => "precondition",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Io(m) => m.clone(),
            Failure::Input(e) => e.to_string(),
            Failure::Precondition(e) => e.to_string(),
        }
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn load(path: &Path, assume_terminating: bool) -> Result<(SystemFile, Vec<u8>), Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Failure::Io(format!("{}: not valid UTF-8", path.display())))?;
    let mut file = parse_system_file(&text)?;
    file.path = Some(path.to_path_buf());
    if assume_terminating {
        file.system = file.system.with_assumption(Assumption::Terminating);
    }
    Ok((file, bytes))
}

fn provenance(file: &SystemFile, flag: bool) -> Provenance {
    let mut assumptions = Vec::new();
    for a in file.system.assumptions() {
        let source = if flag { "flag" } else { "file" };
        assumptions.push(json!({"assumption": a.to_string(), "source": source}));
    }
    Provenance {
        termination: json::basis(file.system.termination_basis()).as_str().unwrap_or("none").to_string(),
        assumptions,
    }
}

/// Runs the command line and writes the report. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_HOLDS };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let started = Instant::now();
    let path = cli.command.file().to_path_buf();
    let loaded = load(&path, cli.assume_terminating);
    let digest = loaded.as_ref().map(|(_, b)| sha256_hex(b)).unwrap_or_default();
    let prov = loaded.as_ref().ok().map(|(f, _)| provenance(f, cli.assume_terminating));
    let outcome = loaded.and_then(|(file, _)| execute(&cli, &file.system));
    let elapsed_ms = started.elapsed().as_secs_f64() * 1000.0;

    let (exit, result, oracle, error, text) = match outcome {
        Ok(r) => (r.exit, Some(r.result), r.oracle, None, r.text),
        Err(f) => (
            f.exit(),
            None,
            None,
            Some(json!({"kind": f.kind(), "message": f.message()})),
            Vec::new(),
        ),
    };

    if cli.json {
        let envelope = Envelope {
            schema_version: REPORT_SCHEMA_VERSION,
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: cli.command.name(),
            input: Input {
                path: path.display().to_string(),
                sha256: digest,
            },
            provenance: prov,
            exit_code: exit,
            result,
            oracle,
            error,
            timing: json!({"elapsed_ms": elapsed_ms}),
        };
        let rendered = serde_json::to_string_pretty(&envelope).expect("report serializes");
        let _ = writeln!(out, "{rendered}");
    } else {
        for line in &text {
            let _ = writeln!(out, "{line}");
        }
        if let Some(e) = &error {
            let _ = writeln!(err, "error: {}", e["message"].as_str().unwrap_or_default());
        }
        if let Some(o) = oracle.as_ref().filter(|o| o["agrees"] == false) {
            let _ = writeln!(err, "oracle discrepancy: {}", o["counterexample"]);
        }
    }
    exit
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn execute(cli: &Cli, system: &RewriteSystem) -> Result<Report, Failure> {
    let oracle = cli.oracle.map(|n| SearchBudget::new(n as usize, ORACLE_STEPS));
    match &cli.command {
        Command::Check { .. } => Ok(check(system)),
        Command::Normalize { word, term, .. } => normalize_cmd(system, word, *term, cli.trace, oracle),
        Command::Collapse { .. } => collapse_cmd(system, cli.trace, oracle),
        Command::Cap { u, v, .. } => cap_cmd(system, u, v, cli.trace, oracle),
        Command::Lm { .. } => Ok(lm_cmd(system, oracle)),
        Command::Explain { u, v, w, .. } => explain_cmd(system, u, v, w),
    }
}

fn with_oracle(mut report: Report, oracle: Option<Value>) -> Report {
    if let Some(o) = &oracle {
        if o["agrees"] == false {
            report.exit = EXIT_DISCREPANCY;
        }
    }
    report.oracle = oracle;
    report
}

fn check(system: &RewriteSystem) -> Report {
    let cert = check_termination_shortlex(system);
    let basis = system.termination_basis();
    let mut text = vec![format!("system: {system}")];
    text.push(format!("termination: {}", json::basis(basis).as_str().unwrap_or("none")));
    let mut result = json!({
        "system": json::rules(system),
        "termination": json::termination(&cert),
        "termination_basis": json::basis(basis),
        "overlaps": json::overlaps(&overlap_diagnostics(system)),
        "quasi_deterministic": json::quasi(&check_quasi_deterministic(system)),
    });
    let Ok(reduced) = right_reduce(system) else {
        text.push("remaining checks need termination evidence".into());
        result["convergent_forward_closed"] = Value::Null;
        return Report { exit: EXIT_INCONCLUSIVE, text, result, oracle: None };
    };
    let confluence = check_confluence(&reduced).expect("termination evidence present");
    let forward = check_forward_closed(&reduced);
    let distinct = distinct_lhs_violations(&reduced);
    let rhs_quasi = check_rhs_quasi_deterministic(&reduced);
    let holds = confluence.confluent && forward.holds && distinct.is_empty();
    text.push(format!("right-reduced: {reduced}"));
    text.push(format!("confluent: {}", confluence.confluent));
    text.push(format!("forward-closed: {}", forward.holds));
    if let Some(cx) = &forward.counterexample {
        text.push(format!("  counterexample redex: {}", reduced.alphabet().display(&cx.redex(&reduced))));
    }
    text.push(format!("distinct left-hand sides: {}", distinct.is_empty()));
    text.push(format!("RHS(R) quasi-deterministic: {}", rhs_quasi.holds));
    result["right_reduced"] = json::rules(&reduced);
    result["confluence"] = json::confluence(&reduced, &confluence);
    result["forward_closure"] = json::forward(&reduced, &forward);
    result["distinct_lhs_violations"] = json!(distinct);
    result["rhs_quasi_deterministic"] = json::rhs_quasi(&reduced, &rhs_quasi);
    result["convergent_forward_closed"] = json!(holds);
    Report {
        exit: if holds { EXIT_HOLDS } else { EXIT_FAILS },
        text,
        result,
        oracle: None,
    }
}

fn normalize_cmd(
    system: &RewriteSystem,
    word: &str,
    term: bool,
    trace: bool,
    oracle: Option<SearchBudget>,
) -> Result<Report, Failure> {
    let w = system.word(word)?;
    let nf = normalize(system, &w)?;
    let display = |w: &[crate::system::Symbol]| system.alphabet().display(w);
    let mut text = vec![display(&nf)];
    let mut result = json!({"word": json::word(system, &w), "normal_form": json::word(system, &nf)});
    if term {
        let t = to_monadic_term(system, &nf);
        text.push(t.clone());
        result["term"] = json!(t);
    }
    if trace {
        let mut steps = vec![w.clone()];
        while let Some(next) = ll_step(system, steps.last().expect("non-empty")) {
            steps.push(next);
        }
        text.extend(steps.iter().map(|s| format!("  {}", display(s))));
        result["steps"] = steps.iter().map(|s| json::word(system, s)).collect();
    }
    let report = Report { exit: EXIT_HOLDS, text, result, oracle: None };
    let checked = oracle.map(|budget| {
        let forms = all_normal_forms(system, &w, budget);
        let agrees = !forms.complete || forms.forms.contains(&nf);
        let found: Vec<Value> = forms.forms.iter().map(|f| json::word(system, f)).collect();
        json!({
            "bound": budget.max_word_length,
            "complete": forms.complete,
            "agrees": agrees,
            "counterexample": if agrees { Value::Null } else {
                json!({"word": json::word(system, &w), "normal_form": json::word(system, &nf), "oracle_normal_forms": found})
            },
        })
    });
    Ok(with_oracle(report, checked))
}

fn collapse_oracle(system: &RewriteSystem, collapsing: Option<(usize, Value)>, budget: SearchBudget) -> Value {
    let found = brute_force_collapse(system, budget);
    let (agrees, counterexample) = match (&found, &collapsing) {
        (Outcome::Found((x, y)), None) => (
            false,
            json!({"x": json::word(system, x), "y": json::word(system, y), "decision": "not collapsing"}),
        ),
        (Outcome::NotFound, Some((len, witness))) if *len <= budget.max_word_length => {
            (false, json!({"decision_witness": witness, "oracle": "none within bound"}))
        }
        _ => (true, Value::Null),
    };
    json!({
        "bound": budget.max_word_length,
        "complete": !found.is_unknown(),
        "oracle_witness": found.found().map(|(x, y)| json!({"x": json::word(system, &x), "y": json::word(system, &y)})),
        "agrees": agrees,
        "counterexample": counterexample,
    })
}

fn collapse_cmd(system: &RewriteSystem, trace: bool, oracle: Option<SearchBudget>) -> Result<Report, Failure> {
    let certified = CertifiedSystem::certify(system)?;
    let reduced = certified.system();
    let verdict = is_subterm_collapsing(&certified)?;
    let mut result = json::collapse(reduced, &verdict);
    let mut text = Vec::new();
    match &verdict.witness {
        Some(w) => {
            text.push("collapsing".to_string());
            text.push(format!(
                "  rhs {} of rule {} collapses with y = {}",
                reduced.alphabet().display(&w.rhs),
                w.rule,
                reduced.alphabet().display(&w.y)
            ));
            if trace {
                let pda = CollapsePda::new(&certified, w.rhs.clone(), w.rhs.clone())?;
                let run = pda.run_word(&w.y)?;
                text.extend(run.render(reduced).into_iter().map(|s| format!("  {s}")));
                result["trace"] = json::trace(reduced, &run);
            }
        }
        None => text.push("not collapsing".to_string()),
    }
    let report = Report {
        exit: if verdict.collapsing { EXIT_FAILS } else { EXIT_HOLDS },
        text,
        result: json!({"right_reduced": json::rules(reduced), "verdict": result}),
        oracle: None,
    };
    let decision = verdict.witness.as_ref().map(|w| (w.rhs.len() + w.y.len(), json::collapse(reduced, &verdict)["witness"].clone()));
    let checked = oracle.map(|b| collapse_oracle(reduced, decision, b));
    Ok(with_oracle(report, checked))
}

fn cap_cmd(
    system: &RewriteSystem,
    u: &str,
    v: &str,
    trace: bool,
    oracle: Option<SearchBudget>,
) -> Result<Report, Failure> {
    let certified = CertifiedSystem::certify(system)?;
    let reduced = certified.system();
    let (u, v) = (reduced.word(u)?, reduced.word(v)?);
    let answer = solve_cap(&certified, &u, &v)?;
    let mut result = json::cap(reduced, &u, &v, &answer);
    let mut text = vec![match &answer.cap_term {
        Some(w) => format!("cap term: {}", reduced.alphabet().display(w)),
        None => "not derivable".to_string(),
    }];
    if let (true, Some(w)) = (trace, &answer.cap_term) {
        let run = CollapsePda::new(&certified, u.clone(), v.clone())?.run_word(w)?;
        text.extend(run.render(reduced).into_iter().map(|s| format!("  {s}")));
        result["trace"] = json::trace(reduced, &run);
    }
    let report = Report {
        exit: if answer.derivable { EXIT_HOLDS } else { EXIT_FAILS },
        text,
        result,
        oracle: None,
    };
    let checked = oracle.map(|budget| {
        let found = brute_force_cap(reduced, &u, &v, budget);
        let agrees = match (&found, &answer.cap_term) {
            (Outcome::Found(o), Some(d)) => o.len() == d.len(),
            (Outcome::Found(_), None) => false,
            (Outcome::NotFound, Some(d)) => d.len() > budget.max_word_length,
            _ => true,
        };
        json!({
            "bound": budget.max_word_length,
            "complete": !found.is_unknown(),
            "oracle_witness": found.clone().found().map(|w| json::word(reduced, &w)),
            "agrees": agrees,
            "counterexample": if agrees { Value::Null } else {
                json!({
                    "u": json::word(reduced, &u),
                    "v": json::word(reduced, &v),
                    "decision": answer.cap_term.as_ref().map(|w| json::word(reduced, w)),
                    "oracle": found.found().map(|w| json::word(reduced, &w)),
                })
            },
        })
    });
    Ok(with_oracle(report, checked))
}

fn lm_cmd(system: &RewriteSystem, oracle: Option<SearchBudget>) -> Report {
    let report = verify_lm_system(system);
    let exit = match report.verdict {
        LmVerdict::Lm | LmVerdict::LmAssumingTermination => EXIT_HOLDS,
        LmVerdict::NotLm => EXIT_FAILS,
        LmVerdict::Inconclusive => EXIT_INCONCLUSIVE,
    };
    let mut text = vec![format!("verdict: {}", report.verdict)];
    if let Some(r) = &report.right_reduced {
        text.push(format!("right-reduced: {r}"));
    }
    let stage = |name: &str, v: Option<bool>| match v {
        Some(b) => format!("  {name}: {b}"),
        None => format!("  {name}: not checked"),
    };
    text.push(stage("confluent", report.confluence.as_ref().map(|c| c.confluent)));
    text.push(stage("forward-closed", report.forward_closure.as_ref().map(|f| f.holds)));
    text.push(stage("RHS(R) quasi-deterministic", report.rhs_quasi_deterministic.as_ref().map(|q| q.holds)));
    text.push(stage("non-collapsing", report.collapse.as_ref().map(|c| !c.collapsing)));
    let result = json::lm(&report);
    let checked = match (oracle, &report.right_reduced, &report.collapse) {
        (Some(budget), Some(reduced), Some(verdict)) => {
            let decision = verdict
                .witness
                .as_ref()
                .map(|w| (w.rhs.len() + w.y.len(), result["collapse"]["witness"].clone()));
            Some(collapse_oracle(reduced, decision, budget))
        }
        _ => None,
    };
    with_oracle(Report { exit, text, result, oracle: None }, checked)
}

fn explain_cmd(system: &RewriteSystem, u: &str, v: &str, w: &str) -> Result<Report, Failure> {
    let certified = CertifiedSystem::certify(system)?;
    let reduced = certified.system();
    let (u, v, w) = (reduced.word(u)?, reduced.word(v)?, reduced.word(w)?);
    let pda = CollapsePda::new(&certified, u.clone(), v.clone())?;
    let run = pda.run_word(&w)?;
    let mut text: Vec<String> = run.render(reduced);
    text.push(if run.accepted { "accepted" } else { "rejected" }.to_string());
    let mut result = json::trace(reduced, &run);
    result["u"] = json::word(reduced, &u);
    result["v"] = json::word(reduced, &v);
    result["w"] = json::word(reduced, &w);
    Ok(Report {
        exit: if run.accepted { EXIT_HOLDS } else { EXIT_FAILS },
        text,
        result,
        oracle: None,
    })
}
