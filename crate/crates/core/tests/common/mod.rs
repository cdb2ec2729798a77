//! Shared corpora for the integration suites.
#![allow(dead_code)]

use std::collections::BTreeSet;

use lexfst::alphabet::Alphabet;
use lexfst::prob::{rat, Partition, ProbAutomaton, ProbTransition};
use lexfst::random::{corpus, random_deterministic, random_lex, RandomParams};
use lexfst::LexTransducer;
use rand::rngs::StdRng;
use rand::Rng;

pub const MAX_LEN: usize = 6;

pub fn lex_corpus(count: usize) -> Vec<LexTransducer> {
    let p = RandomParams::default();
    corpus(0x1e7f, count, |r| random_lex(r, &p))
}

pub fn deterministic_corpus(count: usize) -> Vec<LexTransducer> {
    let p = RandomParams::default();
    corpus(0xde7, count, |r| random_deterministic(r, &p))
}

/// A two-tape interval automaton where every transition writes exactly one
/// symbol on each tape, so all paths for `c` have length `|c|`.
pub fn finite_support_pfsa(rng: &mut StdRng) -> ProbAutomaton {
    let n = rng.gen_range(1..=4);
    let k = rng.gen_range(1..=4usize);
    let mut cuts: BTreeSet<(i64, i64)> = BTreeSet::new();
    while cuts.len() < k - 1 {
        let den = rng.gen_range(2..=9);
        let num = rng.gen_range(1..den);
        cuts.insert((num, den));
    }
    let mut points: Vec<_> = cuts.into_iter().map(|(a, b)| rat(a, b)).collect();
    points.sort();
    points.dedup();
    points.insert(0, rat(0, 1));
    points.push(rat(1, 1));
    let partition = Partition::new(points).unwrap();
    let gamma = Alphabet::new(["a", "b"]).unwrap();
    let delta = Alphabet::new(["u", "v"]).unwrap();
    let mut ts = Vec::new();
    for src in 0..n {
        for interval in 1..=partition.len() {
            if rng.gen_bool(0.7) {
                ts.push(ProbTransition {
                    src,
                    interval,
                    outputs: vec![vec![rng.gen_range(0..2)], vec![rng.gen_range(0..2)]],
                    dst: rng.gen_range(0..n),
                });
            }
        }
    }
    let finals = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    ProbAutomaton::new(
        partition,
        vec![gamma, delta],
        (0..n).map(|i| format!("s{i}")).collect(),
        0,
        finals,
        ts,
    )
    .unwrap()
}
