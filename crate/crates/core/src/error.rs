use thiserror::Error;

/// Malformed input: bad symbols, bad system files, bad tapes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("alphabet must not be empty")]
    EmptyAlphabet,
    #[error("symbol {0:?} appears twice in the alphabet")]
    DuplicateSymbol(char),
    #[error("symbol {0:?} is reserved or not printable")]
    ReservedSymbol(char),
    #[error("symbol {0:?} is not declared in the alphabet")]
    UnknownSymbol(char),
    #[error("symbol rank {0} is outside the alphabet")]
    RankOutOfRange(usize),
    #[error("rule {0} has an empty left-hand side")]
    EmptyLhs(usize),
    #[error("rule {0} duplicates rule {1}")]
    DuplicateRule(usize, usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("input tape must end with exactly one end marker")]
    MalformedTape,
}

/// A hypothesis required by an operation was not established.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PreconditionError {
    #[error("termination is neither certified nor assumed")]
    NoTerminationEvidence,
    #[error("system is not confluent")]
    NotConfluent,
    #[error("system is not forward-closed")]
    NotForwardClosed,
    #[error("rules {0} and {1} share a left-hand side in the right-reduced system")]
    SharedLhs(usize, usize),
    #[error("word {0:?} is reducible")]
    Reducible(String),
    #[error("word must be non-empty")]
    EmptyWord,
    #[error("stack word became reducible after applying rule {0}; the forward-closure assumption is violated")]
    ReductReducible(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Precondition(#[from] PreconditionError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
