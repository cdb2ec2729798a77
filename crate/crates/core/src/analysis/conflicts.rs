use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::alphabet::SymbolId;
use crate::machine::{LexTransducer, StateId};

/// Two distinct transitions entering one target over one input symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conflict {
    pub q1: StateId,
    pub q2: StateId,
    pub input: SymbolId,
    pub target: StateId,
    pub w1: SymbolId,
    pub w2: SymbolId,
    pub equal_weights: bool,
    /// `(q1, q2)` is reachable in the input-synchronized square from `I × I`.
    pub co_reachable: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConflictReport {
    pub pairs: Vec<Conflict>,
}

impl ConflictReport {
    pub fn blocking(&self) -> impl Iterator<Item = &Conflict> {
        self.pairs.iter().filter(|c| c.equal_weights && c.co_reachable)
    }
}

/// Pairs of states reachable together by some common input.
pub fn square_reachable(m: &LexTransducer) -> BTreeSet<(StateId, StateId)> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    for &p in m.initial() {
        for &q in m.initial() {
            if seen.insert((p, q)) {
                queue.push_back((p, q));
            }
        }
    }
    while let Some((p, q)) = queue.pop_front() {
        for input in 0..m.inputs().len() {
            for tp in m.outgoing(p, input) {
                for tq in m.outgoing(q, input) {
                    if seen.insert((tp.dst, tq.dst)) {
                        queue.push_back((tp.dst, tq.dst));
                    }
                }
            }
        }
    }
    seen
}

/// All conflicts, including parallel transitions leaving one source.
pub fn find_conflicts(m: &LexTransducer) -> ConflictReport {
    let square = square_reachable(m);
    let ts = m.transitions();
    let mut pairs = Vec::new();
    for (i, t1) in ts.iter().enumerate() {
        for t2 in &ts[i + 1..] {
            if t1.input != t2.input || t1.dst != t2.dst {
                continue;
            }
            pairs.push(Conflict {
                q1: t1.src,
                q2: t2.src,
                input: t1.input,
                target: t1.dst,
                w1: t1.weight,
                w2: t2.weight,
                equal_weights: t1.weight == t2.weight,
                co_reachable: square.contains(&(t1.src, t2.src)),
            });
        }
    }
    ConflictReport { pairs }
}

/// Why a machine fails to be strongly functional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrongViolation {
    /// `|F| ≠ 1`; carries the final states.
    FinalStates(Vec<StateId>),
    EqualWeightConflict(Conflict),
}

impl fmt::Display for StrongViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrongViolation::FinalStates(fs) if fs.is_empty() => write!(f, "no final state"),
            StrongViolation::FinalStates(fs) => write!(f, "multiple final states {fs:?}"),
            StrongViolation::EqualWeightConflict(c) => write!(
                f,
                "states {} and {} enter {} over input {} with equal weight {}",
                c.q1, c.q2, c.target, c.input, c.w1
            ),
        }
    }
}

/// Single final state and no co-reachable equal-weight conflict.
pub fn check_strongly_functional(m: &LexTransducer) -> Result<(), StrongViolation> {
    if m.finals().len() != 1 {
        return Err(StrongViolation::FinalStates(m.finals().iter().copied().collect()));
    }
    match find_conflicts(m).blocking().next() {
        Some(c) => Err(StrongViolation::EqualWeightConflict(c.clone())),
        None => Ok(()),
    }
}
