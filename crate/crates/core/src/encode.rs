//! Single-tape encoding of a two-tape automaton as the language `x # y`.
//!
//! Outputs are deferred: while the input is read, the outputs produced so far
//! are carried in the state as a pending buffer, and after the separator the
//! buffer is spelled out. This is exact but only finite when no useful cycle
//! emits output, which holds for erased lexicographic machines whose outputs
//! are produced a bounded number of times (the benchmark family, for one).

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::alphabet::{Alphabet, SymbolId, Word};
use crate::error::{Error, Result};
use crate::machine::{SingleTapeAutomaton, SingleTapeTransition, StateId, TwoTapeAutomaton};

/// The separator between the input and output halves of an encoded word.
pub const SEPARATOR: &str = "#";

/// Symbol layout of the encoded alphabet: inputs, then `#`, then outputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Encoding {
    pub automaton: SingleTapeAutomaton,
    pub separator: SymbolId,
    /// Id offset of the output alphabet inside the encoded alphabet.
    pub output_offset: usize,
}

impl Encoding {
    /// The encoded word for the pair `(x, y)`.
    pub fn word(&self, x: &[SymbolId], y: &[SymbolId]) -> Word {
        let mut w = x.to_vec();
        w.push(self.separator);
        w.extend(y.iter().map(|&g| g + self.output_offset));
        w
    }
}

fn encoded_alphabet(n: &TwoTapeAutomaton) -> Result<Alphabet> {
    let clash = n.inputs().tokens().iter().any(|t| n.outputs().contains(t));
    let mut alphabet = Alphabet::default();
    for t in n.inputs().tokens() {
        alphabet.push(if clash { format!("i:{t}") } else { t.clone() })?;
    }
    alphabet.push_reserved(SEPARATOR)?;
    for t in n.outputs().tokens() {
        alphabet.push(if clash { format!("o:{t}") } else { t.clone() })?;
    }
    Ok(alphabet)
}

/// Fails if some transition between useful states lies on a cycle and emits
/// output, since the pending buffer would then be unbounded.
fn check_bounded(n: &TwoTapeAutomaton, useful: &BTreeSet<StateId>) -> Result<()> {
    let adj = n.adjacency();
    let reaches = |from: StateId, to: StateId| {
        let mut seen = BTreeSet::from([from]);
        let mut stack = vec![from];
        while let Some(q) = stack.pop() {
            if q == to {
                return true;
            }
            for t in &adj[q] {
                if useful.contains(&t.dst) && seen.insert(t.dst) {
                    stack.push(t.dst);
                }
            }
        }
        false
    };
    for t in n.transitions() {
        let inside = useful.contains(&t.src) && useful.contains(&t.dst);
        if inside && !t.output.is_empty() && reaches(t.dst, t.src) {
            return Err(Error::UnboundedOutputDelay { state: t.src });
        }
    }
    Ok(())
}

/// Encodes `N` as a single-tape automaton accepting `{ x # y : (x, y) ∈ L(N) }`.
///
/// Input and output symbols are prefixed with `i:` and `o:` when the two
/// alphabets share a token.
pub fn encode_single_tape(n: &TwoTapeAutomaton) -> Result<Encoding> {
    if !n.is_epsilon_free() {
        return Err(Error::EpsilonInput);
    }
    let alphabet = encoded_alphabet(n)?;
    let sigma = n.inputs().len();
    let separator = sigma;
    let output_offset = sigma + 1;

    let useful = n.useful_states();
    check_bounded(n, &useful)?;
    let adj = n.adjacency();

    // phase-1 states (q, pending) and phase-2 states keyed by the remainder
    let mut reading: HashMap<(StateId, Word), StateId> = HashMap::new();
    let mut spelling: HashMap<Word, StateId> = HashMap::new();
    let mut num_states = 0usize;
    let mut transitions = Vec::new();
    let mut initial = BTreeSet::new();
    let mut queue = VecDeque::new();

    for &q in n.initial().iter().filter(|q| useful.contains(q)) {
        let key = (q, Word::new());
        if !reading.contains_key(&key) {
            reading.insert(key.clone(), num_states);
            initial.insert(num_states);
            num_states += 1;
            queue.push_back(key);
        }
    }
    let mut spell_queue = VecDeque::new();
    while let Some((q, pending)) = queue.pop_front() {
        let id = reading[&(q, pending.clone())];
        for t in &adj[q] {
            if !useful.contains(&t.dst) {
                continue;
            }
            let mut buf = pending.clone();
            buf.extend(&t.output);
            let key = (t.dst, buf);
            let dst = match reading.get(&key) {
                Some(&d) => d,
                None => {
                    let d = num_states;
                    num_states += 1;
                    reading.insert(key.clone(), d);
                    queue.push_back(key);
                    d
                }
            };
            transitions.push(SingleTapeTransition {
                src: id,
                symbol: t.input,
                dst,
            });
        }
        if n.is_final(q) {
            let dst = *spelling.entry(pending.clone()).or_insert_with(|| {
                spell_queue.push_back(pending.clone());
                num_states += 1;
                num_states - 1
            });
            transitions.push(SingleTapeTransition {
                src: id,
                symbol: Some(separator),
                dst,
            });
        }
    }
    let mut finals = BTreeSet::new();
    while let Some(rest) = spell_queue.pop_front() {
        let id = spelling[&rest];
        if rest.is_empty() {
            finals.insert(id);
            continue;
        }
        let tail = rest[1..].to_vec();
        let dst = *spelling.entry(tail.clone()).or_insert_with(|| {
            spell_queue.push_back(tail.clone());
            num_states += 1;
            num_states - 1
        });
        transitions.push(SingleTapeTransition {
            src: id,
            symbol: Some(rest[0] + output_offset),
            dst,
        });
    }

    let automaton = SingleTapeAutomaton::new(alphabet, num_states, initial, finals, transitions)?;
    Ok(Encoding {
        automaton,
        separator,
        output_offset,
    })
}
