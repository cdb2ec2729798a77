//! Brute-force reference semantics.
//!
//! Enumerates every accepting path and takes minima directly. Nothing here
//! prunes, so the fast evaluator and the erasure constructions can be checked
//! against it.

use std::collections::BTreeSet;

use crate::alphabet::{SymbolId, Word};
use crate::analysis::eval_two_tape;
use crate::error::Result;
use crate::eval::{self, RunResult, WeightOrder};
use crate::machine::{LexTransducer, LexTransition, TwoTapeAutomaton};
use crate::weight::suffix_cmp;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathWitness {
    pub transitions: Vec<LexTransition>,
    pub weight: Word,
    pub output: Word,
}

/// Every accepting path whose input label is `input`.
pub fn enumerate_accepting(m: &LexTransducer, input: &[SymbolId]) -> Vec<PathWitness> {
    fn walk<'a>(
        m: &'a LexTransducer,
        input: &[SymbolId],
        q: usize,
        path: &mut Vec<&'a LexTransition>,
        out: &mut Vec<PathWitness>,
    ) {
        let Some((&sym, rest)) = input.split_first() else {
            if m.is_final(q) {
                out.push(PathWitness {
                    transitions: path.iter().map(|&t| t.clone()).collect(),
                    weight: path.iter().map(|t| t.weight).collect(),
                    output: path.iter().flat_map(|t| t.output.iter().copied()).collect(),
                });
            }
            return;
        };
        for t in m.transitions().iter().filter(|t| t.src == q && t.input == sym) {
            path.push(t);
            walk(m, rest, t.dst, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    for &q in m.initial() {
        walk(m, input, q, &mut Vec::new(), &mut out);
    }
    out
}

/// Exact per-output and global minima over all accepting paths.
pub fn oracle_run(m: &LexTransducer, input: &[SymbolId]) -> RunResult {
    oracle_run_with_order(m, input, suffix_cmp)
}

pub(crate) fn oracle_run_with_order(m: &LexTransducer, input: &[SymbolId], order: WeightOrder) -> RunResult {
    let paths = enumerate_accepting(m, input);
    RunResult::from_pairs(paths.iter().map(|p| (&p.output, &p.weight)), order)
}

/// All words over an alphabet of `size` symbols with length ≤ `max_len`, in
/// length-then-lexicographic order.
pub fn all_words(size: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Word| {
                (0..size).map(move |s| {
                    let mut w = w.clone();
                    w.push(s);
                    w
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// First input (shortest first) on which `evaluate` disagrees with the
/// oracle on acceptance, selected outputs or minimal weight.
pub fn oracle_equivalence_with<F>(m: &LexTransducer, max_len: usize, mut evaluate: F) -> Option<Word>
where
    F: FnMut(&LexTransducer, &[SymbolId]) -> RunResult,
{
    all_words(m.inputs().len(), max_len).into_iter().find(|c| {
        let fast = evaluate(m, c);
        let slow = oracle_run(m, c);
        fast.accepted != slow.accepted || fast.selected != slow.selected || fast.min_weight != slow.min_weight
    })
}

/// Compares [`eval::run`] with [`oracle_run`] on every input up to `max_len`.
pub fn oracle_equivalence(m: &LexTransducer, max_len: usize) -> Option<Word> {
    oracle_equivalence_with(m, max_len, |m, c| eval::run(m, c).expect("input drawn from Σ"))
}

/// Compares a weight-erased automaton with the min-selected oracle relation
/// of `m`. Errors from two-tape evaluation are propagated.
pub fn oracle_equivalence_erased(m: &LexTransducer, erased: &TwoTapeAutomaton, max_len: usize) -> Result<Option<Word>> {
    for c in all_words(m.inputs().len(), max_len) {
        let outputs: BTreeSet<Word> = eval_two_tape(erased, &c)?;
        if outputs != oracle_run(m, &c).selected {
            return Ok(Some(c));
        }
    }
    Ok(None)
}
