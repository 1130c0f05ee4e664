//! Analysis and decision procedures for string rewriting systems that are
//! convergent and forward-closed: normal forms, LM conditions, subterm
//! collapse and cap queries.

pub mod analysis;
pub mod cli;
pub mod decide;
pub mod error;
pub mod matcher;
pub mod oracle;
pub mod pushdown;
pub mod rewrite;
pub mod system;

pub use analysis::CertifiedSystem;
pub use error::{Error, InputError, PreconditionError, Result};
pub use system::{Alphabet, Assumption, RewriteSystem, Rule, Symbol, Word};
