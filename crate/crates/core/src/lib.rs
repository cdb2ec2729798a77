//! Lexicographic finite-state transducers.
//!
//! A lexicographic transducer reads one input symbol and one weight symbol
//! per transition and writes an output word. Weight words of equal length are
//! compared right to left, so the most recent symbol dominates. Among the
//! accepting paths for an input, the ones of minimal weight select the
//! outputs.
//!
//! The crate covers evaluation by pruned superpositions ([`eval`]), a path
//! enumeration oracle ([`oracle`]), two weight-erasure constructions
//! ([`erase`]), decision procedures ([`analysis`]), the state-blowup family
//! ([`family`]) and an exact interval measure for probabilistic automata
//! ([`prob`]).

pub mod alphabet;
pub mod analysis;
pub mod encode;
pub mod erase;
pub mod error;
pub mod eval;
pub mod family;
pub mod format;
pub mod machine;
pub mod oracle;
pub mod prob;
pub mod random;
pub mod weight;

pub use alphabet::{Alphabet, SymbolId, WeightAlphabet, Word};
pub use encode::{encode_single_tape, Encoding};
pub use erase::{erase_general, erase_strong, OrderFormula};
pub use error::{Error, Result};
pub use eval::{quotient, run, step_superposition, QuotientMode, RunResult, Superposition};
pub use family::{bench_family, gen_family, BenchRow};
pub use machine::{
    LexTransducer, LexTransition, SingleTapeAutomaton, SingleTapeTransition, StateId, TwoTapeAutomaton,
    TwoTapeTransition,
};
pub use oracle::{enumerate_accepting, oracle_run, PathWitness};
pub use weight::cmp_weights;
