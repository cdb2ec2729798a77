//! Superposition-based evaluation of lexicographic transducers.
//!
//! A superposition maps each active state to the smallest weight word that
//! reaches it together with every output produced at that weight. Keeping
//! only the minimum per state is sound: appending a common symbol preserves
//! the order, so a dominated branch can never become minimal later.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::alphabet::{SymbolId, Word};
use crate::error::Result;
use crate::machine::{LexTransducer, StateId};
use crate::oracle;
use crate::weight::suffix_cmp;

/// Weight comparison used by the evaluator; the default is the
/// suffix-dominant order.
pub type WeightOrder = fn(&[SymbolId], &[SymbolId]) -> Ordering;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperpositionEntry {
    pub weight: Word,
    pub outputs: BTreeSet<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Superposition {
    entries: BTreeMap<StateId, SuperpositionEntry>,
    consumed: usize,
}

/// A raw, possibly redundant, superposition element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub state: StateId,
    pub weight: Word,
    pub outputs: BTreeSet<Word>,
}

impl Superposition {
    /// `{(q, ε, {ε}) : q ∈ I}`.
    pub fn initial(m: &LexTransducer) -> Self {
        let entries = m
            .initial()
            .iter()
            .map(|&q| {
                (
                    q,
                    SuperpositionEntry {
                        weight: Vec::new(),
                        outputs: BTreeSet::from([Vec::new()]),
                    },
                )
            })
            .collect();
        Superposition { entries, consumed: 0 }
    }

    /// Canonical form of a candidate list: one entry per state holding the
    /// minimal weight and the union of outputs tied at it.
    pub fn from_candidates(consumed: usize, candidates: impl IntoIterator<Item = Candidate>) -> Self {
        Self::canonicalize(consumed, candidates, suffix_cmp)
    }

    fn canonicalize(consumed: usize, candidates: impl IntoIterator<Item = Candidate>, order: WeightOrder) -> Self {
        let mut entries: BTreeMap<StateId, SuperpositionEntry> = BTreeMap::new();
        for c in candidates {
            assert_eq!(c.weight.len(), consumed, "weight length must equal symbols consumed");
            match entries.get_mut(&c.state) {
                None => {
                    entries.insert(
                        c.state,
                        SuperpositionEntry {
                            weight: c.weight,
                            outputs: c.outputs,
                        },
                    );
                }
                Some(e) => match order(&c.weight, &e.weight) {
                    Ordering::Less => {
                        e.weight = c.weight;
                        e.outputs = c.outputs;
                    }
                    Ordering::Equal => e.outputs.extend(c.outputs),
                    Ordering::Greater => {}
                },
            }
        }
        Superposition { entries, consumed }
    }

    pub fn entries(&self) -> &BTreeMap<StateId, SuperpositionEntry> {
        &self.entries
    }

    pub fn get(&self, q: StateId) -> Option<&SuperpositionEntry> {
        self.entries.get(&q)
    }

    pub fn consumed(&self) -> usize {
        self.consumed
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn configuration(&self) -> BTreeSet<StateId> {
        self.entries.keys().copied().collect()
    }
}

pub fn step_superposition(m: &LexTransducer, s: &Superposition, input: SymbolId) -> Result<Superposition> {
    m.inputs().check(input, "input")?;
    Ok(step_with(m, s, input, suffix_cmp))
}

fn step_with(m: &LexTransducer, s: &Superposition, input: SymbolId, order: WeightOrder) -> Superposition {
    let candidates = s.entries.iter().flat_map(|(&q, entry)| {
        m.outgoing(q, input).map(move |t| {
            let mut weight = entry.weight.clone();
            weight.push(t.weight);
            let outputs = entry
                .outputs
                .iter()
                .map(|d| {
                    let mut d = d.clone();
                    d.extend_from_slice(&t.output);
                    d
                })
                .collect();
            Candidate {
                state: t.dst,
                weight,
                outputs,
            }
        })
    });
    Superposition::canonicalize(s.consumed + 1, candidates, order)
}

/// Result of evaluating one input word.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RunResult {
    pub accepted: bool,
    /// Output word ↦ minimal weight word producing it.
    pub quotient: BTreeMap<Word, Word>,
    /// Outputs achieving the global minimum.
    pub selected: BTreeSet<Word>,
    pub min_weight: Option<Word>,
}

impl RunResult {
    /// Builds the result from (output, weight) pairs, keeping per-output
    /// minima under `order`.
    pub(crate) fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a Word, &'a Word)>, order: WeightOrder) -> Self {
        let mut quotient: BTreeMap<Word, Word> = BTreeMap::new();
        for (out, w) in pairs {
            match quotient.get_mut(out) {
                Some(best) if order(w, best) == Ordering::Less => *best = w.clone(),
                Some(_) => {}
                None => {
                    quotient.insert(out.clone(), w.clone());
                }
            }
        }
        let min_weight = quotient.values().min_by(|a, b| order(a, b)).cloned();
        let selected = match &min_weight {
            Some(min) => quotient
                .iter()
                .filter(|(_, w)| order(w, min) == Ordering::Equal)
                .map(|(d, _)| d.clone())
                .collect(),
            None => BTreeSet::new(),
        };
        RunResult {
            accepted: !quotient.is_empty(),
            quotient,
            selected,
            min_weight,
        }
    }

    /// The single selected output, if exactly one.
    pub fn output(&self) -> Option<&Word> {
        match self.selected.len() {
            1 => self.selected.iter().next(),
            _ => None,
        }
    }
}

/// Folds [`step_superposition`] over `input` and reads off the result at the
/// final states. The per-output quotient is the pruned one.
pub fn run(m: &LexTransducer, input: &[SymbolId]) -> Result<RunResult> {
    run_with_order(m, input, suffix_cmp)
}

/// [`run`] under an arbitrary weight order. Used to check that the oracle
/// catches a wrong pruning rule.
pub fn run_with_order(m: &LexTransducer, input: &[SymbolId], order: WeightOrder) -> Result<RunResult> {
    m.check_word(input)?;
    let last = trace_with(m, input, order).pop().expect("trace is never empty");
    Ok(result_at_finals(m, &last, order))
}

/// All superpositions visited while reading `input`, starting with the
/// initial one.
pub fn trace(m: &LexTransducer, input: &[SymbolId]) -> Result<Vec<Superposition>> {
    m.check_word(input)?;
    Ok(trace_with(m, input, suffix_cmp))
}

fn trace_with(m: &LexTransducer, input: &[SymbolId], order: WeightOrder) -> Vec<Superposition> {
    let mut out = vec![Superposition::initial(m)];
    for &sym in input {
        let next = step_with(m, out.last().unwrap(), sym, order);
        debug_assert!(next.entries.values().all(|e| e.weight.len() == next.consumed));
        let dead = next.is_empty();
        out.push(next);
        if dead {
            // nothing can be reached any more; pad with empty superpositions
            let consumed = out.last().unwrap().consumed;
            out.extend((1..=input.len() + 1 - out.len()).map(|k| Superposition {
                entries: BTreeMap::new(),
                consumed: consumed + k,
            }));
            break;
        }
    }
    out
}

fn result_at_finals(m: &LexTransducer, s: &Superposition, order: WeightOrder) -> RunResult {
    let pairs: Vec<(&Word, &Word)> = s
        .entries
        .iter()
        .filter(|(q, _)| m.is_final(**q))
        .flat_map(|(_, e)| e.outputs.iter().map(move |d| (d, &e.weight)))
        .collect();
    RunResult::from_pairs(pairs, order)
}

/// How per-output quotient values are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientMode {
    /// From the pruned superposition: exact for the selected outputs only.
    Pruned,
    /// From all accepting paths.
    Exact,
}

/// `M(c)\W*`: each output word mapped to its minimal weight.
pub fn quotient(m: &LexTransducer, input: &[SymbolId], mode: QuotientMode) -> Result<BTreeMap<Word, Word>> {
    Ok(match mode {
        QuotientMode::Pruned => run(m, input)?.quotient,
        QuotientMode::Exact => {
            m.check_word(input)?;
            oracle::oracle_run(m, input).quotient
        }
    })
}
