use thiserror::Error;

use crate::analysis::StrongViolation;

/// Errors produced by parsing, validation and the automaton algorithms.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: undeclared {kind} symbol `{token}`")]
    UndeclaredSymbol {
        line: usize,
        kind: &'static str,
        token: String,
    },

    #[error("line {line}: undeclared state `{name}`")]
    UndeclaredState { line: usize, name: String },

    #[error("duplicate state name `{0}`")]
    DuplicateState(String),

    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),

    #[error("invalid symbol token `{0}`")]
    InvalidToken(String),

    #[error("line {line}: transition with missing weight")]
    MissingWeight { line: usize },

    #[error("invalid machine: {0}")]
    Invalid(String),

    #[error("symbol id {id} outside the {kind} alphabet (size {size})")]
    SymbolOutOfRange { kind: &'static str, id: usize, size: usize },

    #[error("unknown {kind} symbol `{token}`")]
    UnknownToken { kind: &'static str, token: String },

    #[error("weight words of different lengths compared ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("machine is not strongly functional: {0}")]
    NotStronglyFunctional(StrongViolation),

    #[error("automaton has epsilon-input transitions")]
    EpsilonInput,

    #[error("infinite output set possible: output-producing epsilon-cycle through state {state}")]
    InfiniteOutput { state: usize },

    #[error("outputs cannot be deferred past the input: output-producing cycle through state {state}")]
    UnboundedOutputDelay { state: usize },

    #[error("n must be ≥ 3 (got {0})")]
    FamilyTooSmall(usize),

    #[error("invalid range: min {min} > max {max}")]
    BadRange { min: usize, max: usize },

    #[error("conditioning on null event")]
    NullEvent,

    #[error("invalid interval ({lo}, {hi})")]
    BadInterval { lo: String, hi: String },
}

pub type Result<T> = std::result::Result<T, Error>;
