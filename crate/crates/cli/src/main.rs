//! `lexfst` command-line front end.
//!
//! Exit codes: 0 when the command succeeds or the checked property holds,
//! 1 when the input is rejected or the property fails (a `witness:` line is
//! printed), 2 on usage or input errors.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use lexfst::analysis::{
    check_functional, check_functional_unweighted, check_strongly_functional, classify, classify_lex,
    detect_eps_cycles, minimal_dfa_size, ClassReport, Functionality,
};
use lexfst::format::{detect_format, parse_fst2, parse_lexfst, parse_pfsa, serialize_fst2, serialize_lexfst, Format};
use lexfst::oracle::oracle_equivalence;
use lexfst::prob::{cond_from_brackets, joint_bracket, prob_bracket, ProbBracket, Rational};
use lexfst::{
    bench_family, encode_single_tape, erase_general, erase_strong, gen_family, run, Alphabet, LexTransducer,
    SingleTapeAutomaton, SingleTapeTransition, TwoTapeAutomaton,
};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "lexfst", version, about = "Lexicographic finite-state transducers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    General,
    Strong,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a lexfst, fst2 or pfsa document.
    Validate { file: PathBuf },
    /// Evaluate a lexfst machine on one input.
    Run {
        file: PathBuf,
        /// Whitespace-separated input symbols.
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Erase weights, writing an fst2 document.
    Erase {
        file: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check one property of a machine.
    #[command(group(ArgGroup::new("property").required(true).args(
        ["strong_functional", "functional", "eps_cycles", "classify"]
    )))]
    Check {
        file: PathBuf,
        #[arg(long)]
        strong_functional: bool,
        #[arg(long)]
        functional: bool,
        #[arg(long)]
        eps_cycles: bool,
        /// Exits 0 iff the machine is deterministic up to the input tape.
        #[arg(long)]
        classify: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Write the family member of width N.
    GenFamily {
        n: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run the state-blowup benchmark over a range of widths.
    Bench {
        #[arg(long, default_value_t = 3)]
        min: usize,
        #[arg(long, default_value_t = 8)]
        max: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Compare pruned evaluation with path enumeration on all short inputs.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Size of the minimal DFA of an fst2 input tape, or of its `x#y`
    /// encoding with --encode.
    MinDfa {
        file: PathBuf,
        #[arg(long)]
        encode: bool,
    },
    /// Probability brackets for a pfsa machine.
    Prob {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        /// Second-tape output for P(d | c).
        #[arg(long, allow_hyphen_values = true)]
        cond_output: Option<String>,
        #[arg(long, default_value_t = 20)]
        depth: usize,
    },
}

/// A command's report and exit status.
struct Outcome {
    code: u8,
    text: String,
}

impl Outcome {
    fn new(code: u8, text: String) -> Self {
        Outcome { code, text }
    }
}

type CmdResult = Result<Outcome, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Validate { file } => validate(&file),
        Command::Run { file, input, format } => run_cmd(&file, &input, format),
        Command::Erase { file, method, output } => erase_cmd(&file, method, &output),
        Command::Check {
            file,
            strong_functional,
            functional,
            eps_cycles,
            classify: _,
            format,
        } => {
            let text = read(&file)?;
            if strong_functional {
                check_strong(&text, format)
            } else if functional {
                check_functional_cmd(&text, format)
            } else if eps_cycles {
                check_eps(&text, format)
            } else {
                check_classify(&text, format)
            }
        }
        Command::GenFamily { n, output } => {
            let m = gen_family(n).map_err(|e| e.to_string())?;
            write(&output, &serialize_lexfst(&m))?;
            Ok(Outcome::new(
                0,
                format!(
                    "wrote family n={n}: {} states, {} transitions\n",
                    m.num_states(),
                    m.transitions().len()
                ),
            ))
        }
        Command::Bench { min, max, csv, format } => bench_cmd(min, max, csv.as_deref(), format),
        Command::Oracle { file, max_len } => oracle_cmd(&file, max_len),
        Command::MinDfa { file, encode } => min_dfa_cmd(&file, encode),
        Command::Prob {
            file,
            input,
            cond_output,
            depth,
        } => prob_cmd(&file, &input, cond_output.as_deref(), depth),
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn lexfst(text: &str) -> Result<LexTransducer, String> {
    parse_lexfst(text).map_err(|e| e.to_string())
}

/// Either machine kind, for commands that accept both.
enum Machine {
    Lex(LexTransducer),
    Plain(TwoTapeAutomaton),
}

fn machine(text: &str) -> Result<Machine, String> {
    match detect_format(text).map_err(|e| e.to_string())? {
        Format::Lexfst => lexfst(text).map(Machine::Lex),
        Format::Fst2 => parse_fst2(text).map(Machine::Plain).map_err(|e| e.to_string()),
        Format::Pfsa => Err("expected a lexfst or fst2 document, found pfsa".into()),
    }
}

fn word(alphabet: &Alphabet, text: &str, kind: &'static str) -> Result<Vec<usize>, String> {
    alphabet.parse_word(text, kind).map_err(|e| e.to_string())
}

fn json_text(value: Value) -> String {
    format!("{value}\n")
}

fn validate(file: &Path) -> CmdResult {
    let text = read(file)?;
    let summary = match detect_format(&text).map_err(|e| e.to_string())? {
        Format::Lexfst => {
            let m = lexfst(&text)?;
            format!(
                "lexfst v1: {} states, {} transitions",
                m.num_states(),
                m.transitions().len()
            )
        }
        Format::Fst2 => {
            let n = parse_fst2(&text).map_err(|e| e.to_string())?;
            format!(
                "fst2 v1: {} states, {} transitions",
                n.num_states(),
                n.transitions().len()
            )
        }
        Format::Pfsa => {
            let p = parse_pfsa(&text).map_err(|e| e.to_string())?;
            format!(
                "pfsa v1: {} states, {} transitions, {} intervals",
                p.state_names().len(),
                p.transitions().len(),
                p.partition().len()
            )
        }
    };
    Ok(Outcome::new(0, format!("ok {summary}\n")))
}

fn run_cmd(file: &Path, input: &str, format: OutputFormat) -> CmdResult {
    let m = lexfst(&read(file)?)?;
    let c = word(m.inputs(), input, "input")?;
    let r = run(&m, &c).map_err(|e| e.to_string())?;
    let outputs: Vec<String> = r.selected.iter().map(|y| m.outputs().render(y, ".")).collect();
    let min_weight = r.min_weight.as_ref().map(|w| m.weights().render(w, "."));
    let code = if r.accepted { 0 } else { 1 };
    let text = match format {
        OutputFormat::Json => json_text(json!({
            "accepted": r.accepted,
            "min_weight": min_weight,
            "outputs": outputs,
        })),
        OutputFormat::Text if r.accepted => format!(
            "ACCEPT minWeight={} outputs: {}\n",
            min_weight.unwrap_or_default(),
            outputs.join(" ")
        ),
        OutputFormat::Text => "REJECT\n".to_string(),
    };
    Ok(Outcome::new(code, text))
}

fn erase_cmd(file: &Path, method: Method, output: &Path) -> CmdResult {
    let m = lexfst(&read(file)?)?;
    let erased = match method {
        Method::General => erase_general(&m),
        Method::Strong => match erase_strong(&m) {
            Ok(n) => n,
            Err(lexfst::Error::NotStronglyFunctional(v)) => {
                return Ok(Outcome::new(
                    1,
                    format!("not strongly functional\nwitness: {}\n", violation_text(&m, &v)),
                ))
            }
            Err(e) => return Err(e.to_string()),
        },
    };
    write(output, &serialize_fst2(&erased))?;
    Ok(Outcome::new(
        0,
        format!(
            "input: {} states, {} transitions\noutput: {} states, {} transitions\n",
            m.num_states(),
            m.transitions().len(),
            erased.num_states(),
            erased.transitions().len()
        ),
    ))
}

fn violation_text(m: &LexTransducer, v: &lexfst::analysis::StrongViolation) -> String {
    use lexfst::analysis::StrongViolation;
    match v {
        StrongViolation::FinalStates(fs) if fs.is_empty() => "no final state".into(),
        StrongViolation::FinalStates(fs) => {
            let names: Vec<&str> = fs.iter().map(|&q| m.state_name(q)).collect();
            format!("multiple final states {}", names.join(" "))
        }
        StrongViolation::EqualWeightConflict(c) => format!(
            "conflict {} {} -> {} over {} with equal weight {}",
            m.state_name(c.q1),
            m.state_name(c.q2),
            m.state_name(c.target),
            m.inputs().token(c.input),
            m.weights().token(c.w1)
        ),
    }
}

fn verdict(holds: bool, name: &str, witness: Option<String>, format: OutputFormat) -> Outcome {
    let code = if holds { 0 } else { 1 };
    let text = match format {
        OutputFormat::Json => json_text(json!({ "property": name, "holds": holds, "witness": witness })),
        OutputFormat::Text => {
            let mut s = format!("{name}: {}\n", if holds { "yes" } else { "no" });
            if let Some(w) = witness {
                let _ = writeln!(s, "witness: {w}");
            }
            s
        }
    };
    Outcome::new(code, text)
}

fn check_strong(text: &str, format: OutputFormat) -> CmdResult {
    let m = lexfst(text)?;
    Ok(match check_strongly_functional(&m) {
        Ok(()) => verdict(true, "strongly functional", None, format),
        Err(v) => verdict(false, "strongly functional", Some(violation_text(&m, &v)), format),
    })
}

fn check_functional_cmd(text: &str, format: OutputFormat) -> CmdResult {
    let (result, inputs, outputs) = match machine(text)? {
        Machine::Lex(m) => (check_functional(&m), m.inputs().clone(), m.outputs().clone()),
        Machine::Plain(n) => {
            let r = check_functional_unweighted(&n.trim()).map_err(|e| e.to_string())?;
            (r, n.inputs().clone(), n.outputs().clone())
        }
    };
    Ok(match result {
        Functionality::Functional => verdict(true, "functional", None, format),
        Functionality::NotFunctional { input, outputs: (a, b) } => {
            let witness = format!(
                "input={} outputs={} | {}",
                inputs.render(&input, " "),
                outputs.render(&a, "."),
                outputs.render(&b, ".")
            );
            verdict(false, "functional", Some(witness), format)
        }
    })
}

fn check_eps(text: &str, format: OutputFormat) -> CmdResult {
    let n = match machine(text)? {
        Machine::Lex(m) => m.without_weights(),
        Machine::Plain(n) => n,
    };
    let cycles = detect_eps_cycles(&n);
    let witness = cycles.first().map(|c| {
        let mut path: Vec<&str> = c.states.iter().map(|&q| n.state_name(q)).collect();
        path.push(n.state_name(c.states[0]));
        format!(
            "cycle {} output={}",
            path.join(" -> "),
            n.outputs().render(&c.output, ".")
        )
    });
    let mut out = verdict(
        cycles.is_empty(),
        "free of output-producing epsilon-cycles",
        witness,
        format,
    );
    if format == OutputFormat::Text && cycles.len() > 1 {
        let _ = writeln!(out.text, "cycles found: {}", cycles.len());
    }
    Ok(out)
}

fn class_lines(r: &ClassReport) -> String {
    format!(
        "sequential up to input: {}\nepsilon-free up to input: {}\ndeterministic up to input: {}\nsingle initial state: {}\n",
        r.sequential_up_to_input, r.epsilon_free_up_to_input, r.deterministic_up_to_input, r.single_initial
    )
}

fn check_classify(text: &str, format: OutputFormat) -> CmdResult {
    let r = match machine(text)? {
        Machine::Lex(m) => classify_lex(&m),
        Machine::Plain(n) => classify(&n),
    };
    let code = if r.deterministic_up_to_input { 0 } else { 1 };
    let text = match format {
        OutputFormat::Json => json_text(json!({
            "sequential_up_to_input": r.sequential_up_to_input,
            "epsilon_free_up_to_input": r.epsilon_free_up_to_input,
            "deterministic_up_to_input": r.deterministic_up_to_input,
            "single_initial": r.single_initial,
        })),
        OutputFormat::Text => class_lines(&r),
    };
    Ok(Outcome::new(code, text))
}

fn bench_cmd(min: usize, max: usize, csv: Option<&Path>, format: OutputFormat) -> CmdResult {
    let rows = bench_family(min, max).map_err(|e| e.to_string())?;
    let table = lexfst::family::rows_to_csv(&rows);
    if let Some(path) = csv {
        write(path, &table)?;
    }
    let text = match format {
        OutputFormat::Json => json_text(Value::Array(
            rows.iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "states_lex": r.states_lex,
                        "states_erased": r.states_erased,
                        "min_dfa_states": r.min_dfa_states,
                        "erase_ms": r.erase_ms,
                        "mindfa_ms": r.mindfa_ms,
                    })
                })
                .collect(),
        )),
        OutputFormat::Text => table,
    };
    Ok(Outcome::new(0, text))
}

fn oracle_cmd(file: &Path, max_len: usize) -> CmdResult {
    let m = lexfst(&read(file)?)?;
    Ok(match oracle_equivalence(&m, max_len) {
        None => Outcome::new(0, format!("equivalent on all inputs up to length {max_len}\n")),
        Some(c) => Outcome::new(1, format!("diverges\nwitness: input={}\n", m.inputs().render(&c, " "))),
    })
}

/// The input tape of an fst2 automaton read as an acceptor.
fn input_acceptor(n: &TwoTapeAutomaton) -> Result<SingleTapeAutomaton, String> {
    if n.transitions().iter().any(|t| !t.output.is_empty()) {
        return Err("automaton has output symbols; use --encode".into());
    }
    SingleTapeAutomaton::new(
        n.inputs().clone(),
        n.num_states(),
        n.initial().clone(),
        n.finals().clone(),
        n.transitions()
            .iter()
            .map(|t| SingleTapeTransition {
                src: t.src,
                symbol: t.input,
                dst: t.dst,
            })
            .collect(),
    )
    .map_err(|e| e.to_string())
}

fn min_dfa_cmd(file: &Path, encode: bool) -> CmdResult {
    let n = match machine(&read(file)?)? {
        Machine::Lex(m) => erase_general(&m),
        Machine::Plain(n) => n,
    };
    let nfa = if encode {
        encode_single_tape(&n).map_err(|e| e.to_string())?.automaton
    } else {
        input_acceptor(&n)?
    };
    Ok(Outcome::new(0, format!("{}\n", minimal_dfa_size(&nfa))))
}

fn decimal(r: &Rational) -> String {
    format!("{:.6}", r.to_f64().unwrap_or(f64::NAN))
}

fn bracket_line(label: &str, b: &ProbBracket) -> String {
    format!(
        "{label} in [{}, {}] ~ [{}, {}] (depth {})\n",
        b.lower,
        b.upper,
        decimal(&b.lower),
        decimal(&b.upper),
        b.depth
    )
}

fn prob_cmd(file: &Path, input: &str, cond: Option<&str>, depth: usize) -> CmdResult {
    let p = parse_pfsa(&read(file)?).map_err(|e| e.to_string())?;
    let c = word(&p.tapes()[0], input, "output")?;
    let marginal = prob_bracket(&p, &c, depth).map_err(|e| e.to_string())?;
    let mut text = bracket_line("P(c)", &marginal);
    if let Some(d) = cond {
        let tape = p
            .tapes()
            .get(1)
            .ok_or("--cond-output needs a machine with a Delta tape")?;
        let d = word(tape, d, "output")?;
        let joint = joint_bracket(&p, &c, &d, depth).map_err(|e| e.to_string())?;
        text += &bracket_line("P(c,d)", &joint);
        let conditional = cond_from_brackets(&joint, &marginal).map_err(|e| e.to_string())?;
        text += &bracket_line("P(d|c)", &conditional);
    }
    Ok(Outcome::new(0, text))
}
