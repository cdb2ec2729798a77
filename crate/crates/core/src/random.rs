//! Seeded random machine generators for the property suites.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::alphabet::Alphabet;
use crate::machine::{LexTransducer, LexTransition, StateId, TwoTapeAutomaton, TwoTapeTransition};

/// Size limits for generated machines. Every bound is inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomParams {
    pub max_states: usize,
    pub max_weights: usize,
    pub max_inputs: usize,
    pub max_outputs: usize,
    pub max_transitions: usize,
    pub max_output_len: usize,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            max_states: 5,
            max_weights: 3,
            max_inputs: 2,
            max_outputs: 2,
            max_transitions: 12,
            max_output_len: 2,
        }
    }
}

fn alphabet(prefix: &str, size: usize) -> Alphabet {
    Alphabet::new((0..size).map(|i| format!("{prefix}{i}"))).expect("generated tokens are valid")
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("s{i}")).collect()
}

fn subset<R: Rng>(rng: &mut R, n: usize, p: f64) -> BTreeSet<StateId> {
    (0..n).filter(|_| rng.gen_bool(p)).collect()
}

fn output<R: Rng>(rng: &mut R, p: &RandomParams, gamma: usize) -> Vec<usize> {
    let len = rng.gen_range(0..=p.max_output_len);
    (0..len).map(|_| rng.gen_range(0..gamma)).collect()
}

struct Shape {
    states: usize,
    weights: usize,
    inputs: usize,
    outputs: usize,
}

fn shape<R: Rng>(rng: &mut R, p: &RandomParams) -> Shape {
    Shape {
        states: rng.gen_range(1..=p.max_states),
        weights: rng.gen_range(1..=p.max_weights),
        inputs: rng.gen_range(1..=p.max_inputs),
        outputs: rng.gen_range(1..=p.max_outputs),
    }
}

fn build(s: &Shape, initial: BTreeSet<StateId>, finals: BTreeSet<StateId>, ts: Vec<LexTransition>) -> LexTransducer {
    LexTransducer::new(
        alphabet("w", s.weights),
        alphabet("x", s.inputs),
        alphabet("y", s.outputs),
        names(s.states),
        initial,
        finals,
        ts,
    )
    .expect("generated machine is valid")
}

/// A random lexicographic transducer within `p`.
pub fn random_lex<R: Rng>(rng: &mut R, p: &RandomParams) -> LexTransducer {
    let s = shape(rng, p);
    let mut initial = subset(rng, s.states, 0.3);
    if initial.is_empty() {
        initial.insert(0);
    }
    let finals = subset(rng, s.states, 0.4);
    let count = rng.gen_range(0..=p.max_transitions);
    let ts = (0..count)
        .map(|_| LexTransition {
            src: rng.gen_range(0..s.states),
            input: rng.gen_range(0..s.inputs),
            weight: rng.gen_range(0..s.weights),
            output: output(rng, p, s.outputs),
            dst: rng.gen_range(0..s.states),
        })
        .collect();
    build(&s, initial, finals, ts)
}

/// A random transducer that is deterministic up to the input tape: one
/// initial state and at most one transition per (state, input).
pub fn random_deterministic<R: Rng>(rng: &mut R, p: &RandomParams) -> LexTransducer {
    let s = shape(rng, p);
    let finals = subset(rng, s.states, 0.5);
    let mut ts = Vec::new();
    for src in 0..s.states {
        for input in 0..s.inputs {
            if ts.len() < p.max_transitions && rng.gen_bool(0.8) {
                ts.push(LexTransition {
                    src,
                    input,
                    weight: rng.gen_range(0..s.weights),
                    output: output(rng, p, s.outputs),
                    dst: rng.gen_range(0..s.states),
                });
            }
        }
    }
    build(&s, BTreeSet::from([0]), finals, ts)
}

/// A random two-tape automaton; each transition reads no input with
/// probability `eps_prob`.
pub fn random_two_tape<R: Rng>(rng: &mut R, p: &RandomParams, eps_prob: f64) -> TwoTapeAutomaton {
    let s = shape(rng, p);
    let mut initial = subset(rng, s.states, 0.3);
    if initial.is_empty() {
        initial.insert(0);
    }
    let finals = subset(rng, s.states, 0.4);
    let count = rng.gen_range(0..=p.max_transitions);
    let ts = (0..count)
        .map(|_| TwoTapeTransition {
            src: rng.gen_range(0..s.states),
            input: if rng.gen_bool(eps_prob) {
                None
            } else {
                Some(rng.gen_range(0..s.inputs))
            },
            output: output(rng, p, s.outputs),
            dst: rng.gen_range(0..s.states),
        })
        .collect();
    TwoTapeAutomaton::new(
        alphabet("x", s.inputs),
        alphabet("y", s.outputs),
        names(s.states),
        initial,
        finals,
        ts,
    )
    .expect("generated machine is valid")
}

/// A random two-tape automaton with a planted output-producing ε-cycle that
/// is reachable from the initial state and reaches a final state.
pub fn random_eps_cycle_machine<R: Rng>(rng: &mut R, p: &RandomParams) -> TwoTapeAutomaton {
    let base = random_two_tape(rng, p, 0.0);
    let n = base.num_states();
    let sigma = base.inputs().len();
    let gamma = base.outputs().len();
    let mut ts = base.transitions().to_vec();
    // path 0 -> c over inputs, cycle at c of length 1 or 2, then c -> final
    let c = rng.gen_range(0..n);
    let fin = rng.gen_range(0..n);
    ts.push(TwoTapeTransition {
        src: 0,
        input: Some(rng.gen_range(0..sigma)),
        output: vec![],
        dst: c,
    });
    let emit = vec![rng.gen_range(0..gamma)];
    if n > 1 && rng.gen_bool(0.5) {
        let d = (c + 1) % n;
        ts.push(TwoTapeTransition {
            src: c,
            input: None,
            output: vec![],
            dst: d,
        });
        ts.push(TwoTapeTransition {
            src: d,
            input: None,
            output: emit,
            dst: c,
        });
    } else {
        ts.push(TwoTapeTransition {
            src: c,
            input: None,
            output: emit,
            dst: c,
        });
    }
    ts.push(TwoTapeTransition {
        src: c,
        input: Some(rng.gen_range(0..sigma)),
        output: vec![],
        dst: fin,
    });
    let mut finals = base.finals().clone();
    finals.insert(fin);
    TwoTapeAutomaton::new(
        base.inputs().clone(),
        base.outputs().clone(),
        base.state_names().to_vec(),
        BTreeSet::from([0]),
        finals,
        ts,
    )
    .expect("generated machine is valid")
}

/// `count` machines from `generate`, seeded deterministically.
pub fn corpus<T>(seed: u64, count: usize, mut generate: impl FnMut(&mut StdRng) -> T) -> Vec<T> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count).map(|_| generate(&mut rng)).collect()
}
