//! The exponential-separation family and its state-blowup benchmark.
//!
//! `gen_family(n)` is a shift register of width `n`: `q_i` is active after
//! reading `x` iff the `i`-th symbol from the end of `x` is `1`. Reading `2`
//! from `q_k` emits `y_k` with weight `w_{n+1-k}`, so the largest active index
//! (the oldest `1` still inside the window) wins. Appending `0`s pushes that
//! bit out and exposes the next one, so the responses to `x 0^j 2` spell out
//! the whole register. The machine has `n + 2` states, while a deterministic
//! automaton for its selected relation needs at least `2^n`.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use crate::alphabet::Alphabet;
use crate::analysis::{check_strongly_functional, minimal_dfa_size};
use crate::encode::encode_single_tape;
use crate::erase::erase_strong;
use crate::error::{Error, Result};
use crate::machine::{LexTransducer, LexTransition};

/// Validated family parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyParams {
    n: usize,
}

impl FamilyParams {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            Err(Error::FamilyTooSmall(n))
        } else {
            Ok(FamilyParams { n })
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Builds the family member of width `n` (`n ≥ 3`).
pub fn gen_family(n: usize) -> Result<LexTransducer> {
    let n = FamilyParams::new(n)?.n();
    let weights = Alphabet::new((1..=n).map(|k| format!("w{k}")))?;
    let inputs = Alphabet::new(["0", "1", "2"])?;
    let outputs = Alphabet::new((1..=n).map(|k| format!("y{k}")))?;
    let names = (0..=n + 1).map(|i| format!("q{i}")).collect();
    let (zero, one, two) = (0, 1, 2);
    let w1 = 0;
    let edge = |src, input, weight, output: Vec<usize>, dst| LexTransition {
        src,
        input,
        weight,
        output,
        dst,
    };
    let mut ts = vec![
        edge(0, zero, w1, vec![], 0),
        edge(0, one, w1, vec![], 0),
        edge(0, one, w1, vec![], 1),
    ];
    for i in 1..n {
        ts.push(edge(i, zero, w1, vec![], i + 1));
        ts.push(edge(i, one, w1, vec![], i + 1));
    }
    for k in 1..=n {
        ts.push(edge(k, two, n - k, vec![k - 1], n + 1));
    }
    LexTransducer::new(
        weights,
        inputs,
        outputs,
        names,
        BTreeSet::from([0]),
        BTreeSet::from([n + 1]),
        ts,
    )
}

/// One benchmark measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub states_lex: usize,
    pub states_erased: usize,
    pub min_dfa_states: usize,
    pub erase_ms: f64,
    pub mindfa_ms: f64,
}

/// Runs generate, strong-functionality check, strong erasure, encoding and
/// minimization for each `n` in `min..=max`.
pub fn bench_family(min: usize, max: usize) -> Result<Vec<BenchRow>> {
    if min > max {
        return Err(Error::BadRange { min, max });
    }
    FamilyParams::new(min)?;
    (min..=max).map(bench_row).collect()
}

fn bench_row(n: usize) -> Result<BenchRow> {
    let m = gen_family(n)?;
    check_strongly_functional(&m).map_err(Error::NotStronglyFunctional)?;
    let start = Instant::now();
    let erased = erase_strong(&m)?;
    let erase_ms = start.elapsed().as_secs_f64() * 1e3;
    let start = Instant::now();
    let encoded = encode_single_tape(&erased)?;
    let min_dfa_states = minimal_dfa_size(&encoded.automaton);
    let mindfa_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(BenchRow {
        n,
        states_lex: m.num_states(),
        states_erased: erased.num_states(),
        min_dfa_states,
        erase_ms,
        mindfa_ms,
    })
}

pub const CSV_HEADER: &str = "n,states_lex,states_erased,min_dfa_states,erase_ms,mindfa_ms";

/// Renders rows as CSV with a header line.
pub fn rows_to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{:.3},{:.3}",
            r.n, r.states_lex, r.states_erased, r.min_dfa_states, r.erase_ms, r.mindfa_ms
        );
    }
    out
}
