//! End-to-end runs of the `lexfst` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const T1: &str = "lexfst v1\nW: a b\nSigma: x\nGamma: p q\nQ: s0 s1\nI: s0\nF: s1\nT: s0 x a p s1\nT: s0 x b q s1\n";
const T1_TIE: &str =
    "lexfst v1\nW: a b\nSigma: x\nGamma: p q\nQ: s0 s1\nI: s0\nF: s1\nT: s0 x a p s1\nT: s0 x a q s1\n";
const T2: &str = "lexfst v1\nW: a b\nSigma: x\nGamma: p q\nQ: s0 s1 t1 s2\nI: s0\nF: s2\n\
                  T: s0 x b p s1\nT: s1 x a p s2\nT: s0 x a q t1\nT: t1 x b q s2\n";
const EPS_LOOP: &str = "fst2 v1\nSigma: x\nGamma: p\nQ: s0 s1\nI: s0\nF: s1\nT: s0 x - s1\nT: s1 - p s1\n";
const JOINT: &str = "pfsa v1\ncuts: 0 1/4 1/2 1\nGamma: a b\nDelta: u v\nQ: s f\nI: s\nF: f\n\
                     T: s 1 a u f\nT: s 2 a v f\nT: s 3 b u f\n";

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        Fixture {
            dir: TempDir::new().unwrap(),
        }
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        fs::write(&path, text).unwrap();
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn lexfst(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lexfst")).args(args).output().unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn run_accepts_and_rejects() {
    let f = Fixture::new();
    let t1 = f.file("t1.lfst", T1);
    let o = lexfst(&["run", p(&t1), "--input", "x"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "ACCEPT minWeight=a outputs: p\n"));
    let o = lexfst(&["run", p(&t1), "--input", ""]);
    assert_eq!((code(&o), stdout(&o).as_str()), (1, "REJECT\n"));

    let t2 = f.file("t2.lfst", T2);
    let o = lexfst(&["run", p(&t2), "--input", "x x", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["min_weight"], "b.a");
    assert_eq!(v["outputs"][0], "p.p");
}

#[test]
fn input_errors_exit_2() {
    let f = Fixture::new();
    let t1 = f.file("t1.lfst", T1);
    assert_eq!(code(&lexfst(&["run", p(&t1), "--input", "z"])), 2);
    assert_eq!(code(&lexfst(&["run", "/nonexistent.lfst", "--input", "x"])), 2);
    let bad = f.file("bad.lfst", &T1.replace("T: s0 x b q s1", "T: s0 x c q s1"));
    let o = lexfst(&["validate", p(&bad)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("undeclared weight symbol"));
    assert_eq!(code(&lexfst(&["check", p(&t1)])), 2);
    assert_eq!(code(&lexfst(&["run", p(&t1), "--input", "x", "--bogus"])), 2);
}

#[test]
fn gen_family_rejects_small_n() {
    let f = Fixture::new();
    let o = lexfst(&["gen-family", "2", "-o", p(&f.path("f.lfst"))]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("n must be ≥ 3"));
}

#[test]
fn checks_print_witnesses() {
    let f = Fixture::new();
    let tie = f.file("tie.lfst", T1_TIE);
    let o = lexfst(&["check", p(&tie), "--strong-functional"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("witness: conflict s0 s0 -> s1 over x with equal weight a"));

    let o = lexfst(&["check", p(&tie), "--functional"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("witness: input=x outputs=p | q"));

    let t1 = f.file("t1.lfst", T1);
    assert_eq!(code(&lexfst(&["check", p(&t1), "--strong-functional"])), 0);
    assert_eq!(code(&lexfst(&["check", p(&t1), "--functional"])), 0);
    assert_eq!(code(&lexfst(&["check", p(&t1), "--eps-cycles"])), 0);
    assert_eq!(code(&lexfst(&["check", p(&t1), "--classify"])), 1);

    let eps = f.file("eps.fst2", EPS_LOOP);
    let o = lexfst(&["check", p(&eps), "--eps-cycles", "--format", "json"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["witness"], "cycle s1 -> s1 output=p");
}

#[test]
fn erase_then_min_dfa() {
    let f = Fixture::new();
    let fam = f.path("f3.lfst");
    assert_eq!(code(&lexfst(&["gen-family", "3", "-o", p(&fam)])), 0);
    let erased = f.path("f3.fst2");
    let o = lexfst(&["erase", p(&fam), "--method", "strong", "-o", p(&erased)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("input: 5 states, 10 transitions\n"));
    let o = lexfst(&["min-dfa", p(&erased), "--encode"]);
    assert_eq!(stdout(&o), "15\n");
    // outputs present, so the plain acceptor view is refused
    assert_eq!(code(&lexfst(&["min-dfa", p(&erased)])), 2);

    let tie = f.file("tie.lfst", T1_TIE);
    let o = lexfst(&["erase", p(&tie), "--method", "strong", "-o", p(&f.path("x.fst2"))]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("witness:"));
}

#[test]
fn oracle_and_validate() {
    let f = Fixture::new();
    let t2 = f.file("t2.lfst", T2);
    let o = lexfst(&["oracle", p(&t2), "--max-len", "6"]);
    assert_eq!(code(&o), 0);
    let o = lexfst(&["validate", p(&t2)]);
    assert_eq!(stdout(&o), "ok lexfst v1: 4 states, 4 transitions\n");
}

#[test]
fn prob_brackets() {
    let f = Fixture::new();
    let joint = f.file("joint.pfsa", JOINT);
    let o = lexfst(&["prob", p(&joint), "--input", "a", "--cond-output", "u", "--depth", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "P(c) in [1/2, 1/2] ~ [0.500000, 0.500000] (depth 3)\n\
         P(c,d) in [1/4, 1/4] ~ [0.250000, 0.250000] (depth 3)\n\
         P(d|c) in [1/2, 1/2] ~ [0.500000, 0.500000] (depth 3)\n"
    );
}

#[test]
fn bench_writes_csv() {
    let f = Fixture::new();
    let csv = f.path("bench.csv");
    let o = lexfst(&["bench", "--min", "3", "--max", "5", "--csv", p(&csv)]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("n,states_lex,states_erased,min_dfa_states,erase_ms,mindfa_ms")
    );
    let counts: Vec<String> = lines
        .map(|l| l.split(',').take(4).collect::<Vec<_>>().join(","))
        .collect();
    assert_eq!(counts, ["3,5,21,15", "4,6,49,25", "5,7,113,43"]);
    assert_eq!(code(&lexfst(&["bench", "--min", "5", "--max", "4"])), 2);
}

#[test]
fn output_is_deterministic() {
    let f = Fixture::new();
    let tie = f.file("tie.lfst", T1_TIE);
    let t2 = f.file("t2.lfst", T2);
    let runs = [
        vec!["check", p(&tie), "--functional"],
        vec!["run", p(&t2), "--input", "x x"],
        vec!["erase", p(&t2), "--method", "general", "-o", "/dev/null"],
    ];
    for args in runs {
        assert_eq!(lexfst(&args).stdout, lexfst(&args).stdout);
    }
    let a = f.path("a.fst2");
    let b = f.path("b.fst2");
    lexfst(&["erase", p(&t2), "--method", "general", "-o", p(&a)]);
    lexfst(&["erase", p(&t2), "--method", "general", "-o", p(&b)]);
    assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
}
