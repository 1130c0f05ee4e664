//! Checkers for the conditions the decision procedures rely on.

mod certified;
mod confluence;
mod forward;
mod overlap;
mod quasi;
mod reduce;
mod termination;

pub use certified::CertifiedSystem;
pub use confluence::{check_confluence, critical_pairs, ConfluenceReport, CriticalPair, OverlapKind};
pub use forward::{check_forward_closed, ForwardClosureCounterexample, ForwardClosureReport};
pub use overlap::{distinct_lhs_violations, overlap_diagnostics, OverlapReport};
pub use quasi::{
    check_quasi_deterministic, check_rhs_quasi_deterministic, rhs_critical_pairs, QuasiDetReport,
    RhsPair, RhsQuasiDetReport,
};
pub use reduce::right_reduce;
pub use termination::{check_termination_shortlex, RuleOrientation, TerminationCertificate};
