//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every check is exact except the benchmark wall-clock budget.

mod common;

use std::time::{Duration, Instant};

use common::{deterministic_corpus, finite_support_pfsa, lex_corpus, MAX_LEN};
use lexfst::analysis::{check_functional, check_strongly_functional, detect_eps_cycles, eval_two_tape, Functionality};
use lexfst::eval::trace;
use lexfst::oracle::{all_words, oracle_run};
use lexfst::prob::{interval_mul, interval_norm, joint_bracket, prob_bracket, rat, Interval, Rational};
use lexfst::random::{corpus, random_eps_cycle_machine, random_two_tape, RandomParams};
use lexfst::{bench_family, erase_general, erase_strong, gen_family, run, Error};
use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const BENCH_BUDGET: Duration = Duration::from_secs(120);
const CORPUS_SIZE: usize = 200;
const DETERMINISTIC_SIZE: usize = 100;
const NORM_PAIRS: usize = 1000;
const GEOMETRIC_MAX_DEPTH: usize = 20;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn family_scaling() -> Check {
    for n in 3..=8 {
        let states = gen_family(n).map_err(|e| e.to_string())?.num_states();
        ensure(states == n + 2, || format!("n={n}: {states} states"))?;
    }
    let start = Instant::now();
    let rows = bench_family(3, 8).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(elapsed < BENCH_BUDGET, || format!("bench took {elapsed:?}"))?;
    for r in &rows {
        let bound = 1usize << r.n;
        ensure(r.min_dfa_states >= bound, || {
            format!("n={}: min DFA {} < 2^n = {bound}", r.n, r.min_dfa_states)
        })?;
        // ratio ≥ 2^n / (n+2), compared without division
        ensure(r.min_dfa_states * (r.n + 2) >= bound * r.states_lex, || {
            format!("n={}: ratio {}/{} below 2^n/(n+2)", r.n, r.min_dfa_states, r.states_lex)
        })?;
    }
    let sizes: Vec<String> = rows.iter().map(|r| format!("{}:{}", r.n, r.min_dfa_states)).collect();
    Ok(format!("min DFA sizes {} in {elapsed:.2?}", sizes.join(" ")))
}

fn oracle_equivalence() -> Check {
    let machines = lex_corpus(CORPUS_SIZE);
    let mut inputs = 0;
    for (i, m) in machines.iter().enumerate() {
        for c in all_words(m.inputs().len(), MAX_LEN) {
            let fast = run(m, &c).map_err(|e| e.to_string())?;
            let slow = oracle_run(m, &c);
            ensure(
                fast.accepted == slow.accepted && fast.selected == slow.selected && fast.min_weight == slow.min_weight,
                || format!("machine {i}, input {c:?}"),
            )?;
            inputs += 1;
        }
    }
    Ok(format!("{} machines, {inputs} runs", machines.len()))
}

fn general_erasure() -> Check {
    let mut inputs = 0;
    for (i, m) in lex_corpus(CORPUS_SIZE).iter().enumerate() {
        let n = erase_general(m);
        for c in all_words(m.inputs().len(), MAX_LEN) {
            let got = eval_two_tape(&n, &c).map_err(|e| format!("machine {i}: {e}"))?;
            ensure(got == run(m, &c).map_err(|e| e.to_string())?.selected, || {
                format!("machine {i}, input {c:?}")
            })?;
            inputs += 1;
        }
    }
    Ok(format!("{CORPUS_SIZE} machines, {inputs} inputs"))
}

fn strong_erasure_agreement() -> Check {
    let mut subset = 0;
    for (i, m) in lex_corpus(CORPUS_SIZE).iter().enumerate() {
        if check_strongly_functional(m).is_err() {
            continue;
        }
        subset += 1;
        let strong = erase_strong(m).map_err(|e| format!("machine {i}: {e}"))?;
        let general = erase_general(m);
        for c in all_words(m.inputs().len(), MAX_LEN) {
            let a = eval_two_tape(&strong, &c).map_err(|e| e.to_string())?;
            let b = eval_two_tape(&general, &c).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("machine {i}, input {c:?}"))?;
        }
    }
    ensure(subset > 0, || "no strongly functional machine in the corpus".into())?;
    Ok(format!("{subset} strongly functional machines"))
}

fn deterministic_suites() -> Check {
    let mut pairs = 0;
    for (i, m) in deterministic_corpus(DETERMINISTIC_SIZE).iter().enumerate() {
        let words = all_words(m.inputs().len(), MAX_LEN);
        for c in &words {
            let t = trace(m, c).map_err(|e| e.to_string())?;
            ensure(t.iter().all(|s| s.len() <= 1), || {
                format!("machine {i}: superposition > 1 on {c:?}")
            })?;
        }
        for x in &words {
            let rx = run(m, x).map_err(|e| e.to_string())?;
            let Some(y) = rx.output() else { continue };
            for xx in words.iter().filter(|w| w.len() > x.len() && w.starts_with(x)) {
                let rxx = run(m, xx).map_err(|e| e.to_string())?;
                if let Some(yy) = rxx.output() {
                    ensure(yy.starts_with(y), || {
                        format!("machine {i}: {x:?} -> {y:?}, {xx:?} -> {yy:?}")
                    })?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{DETERMINISTIC_SIZE} machines, {pairs} accepted prefix pairs"))
}

fn epsilon_cycles() -> Check {
    let p = RandomParams::default();
    let mut clean = 0;
    for (i, n) in corpus(0xe95, CORPUS_SIZE, |r| random_two_tape(r, &p, 0.3))
        .iter()
        .enumerate()
    {
        if !detect_eps_cycles(n).is_empty() {
            continue;
        }
        clean += 1;
        for c in all_words(n.inputs().len(), MAX_LEN) {
            eval_two_tape(n, &c).map_err(|e| format!("machine {i}, input {c:?}: {e}"))?;
        }
    }
    let seeded = corpus(0xc7c, 50, |r| random_eps_cycle_machine(r, &p));
    for (i, n) in seeded.iter().enumerate() {
        for c in all_words(n.inputs().len(), 2) {
            ensure(
                matches!(eval_two_tape(n, &c), Err(Error::InfiniteOutput { .. })),
                || format!("seeded machine {i}: no error on {c:?}"),
            )?;
        }
    }
    Ok(format!(
        "{clean} cycle-free machines finite, {} seeded machines rejected",
        seeded.len()
    ))
}

fn functionality() -> Check {
    let (mut ambiguous, mut witnesses) = (0, 0);
    for (i, m) in lex_corpus(CORPUS_SIZE).iter().enumerate() {
        let verdict = check_functional(m);
        let oracle_ambiguous = all_words(m.inputs().len(), MAX_LEN)
            .iter()
            .any(|c| oracle_run(m, c).selected.len() >= 2);
        if oracle_ambiguous {
            ambiguous += 1;
            ensure(!verdict.is_functional(), || format!("machine {i} declared functional"))?;
        }
        if let Functionality::NotFunctional { input, outputs: (a, b) } = verdict {
            let selected = oracle_run(m, &input).selected;
            ensure(a != b && selected.contains(&a) && selected.contains(&b), || {
                format!("machine {i}: witness {input:?} not confirmed")
            })?;
            witnesses += 1;
        }
    }
    Ok(format!(
        "{ambiguous} ambiguous machines, {witnesses} witnesses confirmed"
    ))
}

fn random_interval<R: Rng>(rng: &mut R) -> Interval {
    let den = rng.gen_range(1..=1000i64);
    let a = rng.gen_range(0..=den);
    let mut b = rng.gen_range(0..=den);
    if a == b {
        b = if a == den { 0 } else { den };
    }
    Interval::new(rat(a.min(b), den), rat(a.max(b), den)).expect("lo < hi")
}

fn probability() -> Check {
    let product = interval_mul(
        &Interval::new(rat(0, 1), rat(1, 2)).unwrap(),
        &Interval::new(rat(1, 2), rat(1, 1)).unwrap(),
    );
    ensure(product == Interval::new(rat(1, 4), rat(1, 2)).unwrap(), || {
        format!("product {product}")
    })?;

    let mut rng = StdRng::seed_from_u64(0x9a1);
    for _ in 0..NORM_PAIRS {
        let (x, y) = (random_interval(&mut rng), random_interval(&mut rng));
        ensure(
            interval_norm(&x.mul(&y)) == interval_norm(&x) * interval_norm(&y),
            || format!("norm of {x} * {y}"),
        )?;
    }

    let geometric = lexfst::format::parse_pfsa(include_str!("data/geometric.pfsa")).map_err(|e| e.to_string())?;
    for k in 1..=GEOMETRIC_MAX_DEPTH {
        let b = prob_bracket(&geometric, &[0], k).map_err(|e| e.to_string())?;
        let want = Rational::one() - rat(1, 1i64 << k);
        ensure(b.lower == want && b.upper.is_one(), || {
            format!("depth {k}: [{}, {}]", b.lower, b.upper)
        })?;
    }

    let machines = corpus(0xadd, 100, finite_support_pfsa);
    for (i, p) in machines.iter().enumerate() {
        for c in all_words(2, 3) {
            let depth = c.len();
            let marginal = prob_bracket(p, &c, depth).map_err(|e| e.to_string())?;
            let mut sum = rat(0, 1);
            for d in all_words(2, depth).iter().filter(|d| d.len() == depth) {
                sum += joint_bracket(p, &c, d, depth).map_err(|e| e.to_string())?.lower;
            }
            ensure(marginal.lower == marginal.upper && marginal.lower == sum, || {
                format!("machine {i}, c = {c:?}: P(c) = {} vs sum {sum}", marginal.lower)
            })?;
        }
    }
    Ok(format!(
        "worked product exact, {NORM_PAIRS} norm pairs, geometric k<=20, {} finite-support machines",
        machines.len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("family state blowup", family_scaling),
        ("run equals oracle", oracle_equivalence),
        ("general erasure exact", general_erasure),
        ("strong and general erasure agree", strong_erasure_agreement),
        ("deterministic superpositions and prefixes", deterministic_suites),
        ("epsilon-cycles and finiteness", epsilon_cycles),
        ("functionality agrees with oracle", functionality),
        ("interval probabilities", probability),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{}] {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
