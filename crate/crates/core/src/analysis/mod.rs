//! Structural analyses: classification, conflicts, functionality, ε-cycles,
//! two-tape evaluation and minimal DFA sizes.

mod classify;
mod conflicts;
mod dfa;
mod epsilon;
mod functional;

pub use classify::{classify, classify_lex, ClassReport};
pub use conflicts::{
    check_strongly_functional, find_conflicts, square_reachable, Conflict, ConflictReport, StrongViolation,
};
pub use dfa::{determinize, minimal_dfa_size, minimize, Dfa};
pub use epsilon::{detect_eps_cycles, eval_two_tape, EpsCycle};
pub use functional::{check_functional, check_functional_unweighted, Functionality};
