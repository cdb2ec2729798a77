//! Line-oriented text formats: `lexfst v1`, `fst2 v1` and `pfsa v1`.
//!
//! ```text
//! lexfst v1
//! W: a b              # ascending, leftmost is smallest
//! Sigma: x y
//! Gamma: p q
//! Q: s0 s1
//! I: s0
//! F: s1
//! T: s0 x a p s1      # src input weight output dst
//! ```
//!
//! Outputs are `-` for the empty word or symbols joined by `.`. The `fst2`
//! format drops `W:` and the weight column and allows `-` as input. The
//! `pfsa` format declares `cuts:` (or `N:` for a uniform partition),
//! `Gamma:`, an optional second tape `Delta:`, and transitions
//! `T: src k output [output2] dst` with `k` a 1-based interval index.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::alphabet::{Alphabet, SymbolId, Word};
use crate::error::{Error, Result};
use crate::machine::{LexTransducer, LexTransition, StateId, TwoTapeAutomaton, TwoTapeTransition};
use crate::prob::{Partition, ProbAutomaton, ProbTransition, Rational};

/// Which of the three formats a document declares in its header.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Lexfst,
    Fst2,
    Pfsa,
}

#[derive(Debug, Clone)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

#[derive(Debug)]
struct Line<'a> {
    number: usize,
    key: &'a str,
    values: Vec<Token<'a>>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn tokens(text: &str, offset: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &text[s..i],
                    column: offset + text[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &text[s..],
            column: offset + text[..s].chars().count() + 1,
        });
    }
    out
}

/// Splits a document into its header format and keyed lines.
fn scan(text: &str) -> Result<(Format, Vec<Line<'_>>)> {
    let mut header = None;
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        if header.is_none() {
            let words: Vec<&str> = content.split_whitespace().collect();
            header = Some(match words.as_slice() {
                ["lexfst", "v1"] => Format::Lexfst,
                ["fst2", "v1"] => Format::Fst2,
                ["pfsa", "v1"] => Format::Pfsa,
                _ => return Err(syntax(number, 1, "expected header `lexfst v1`, `fst2 v1` or `pfsa v1`")),
            });
            continue;
        }
        let colon = content.find(':').ok_or_else(|| {
            let col = content.chars().take_while(|c| c.is_whitespace()).count() + 1;
            syntax(number, col, "expected `Key: values`")
        })?;
        let key = content[..colon].trim();
        let offset = content[..=colon].chars().count();
        lines.push(Line {
            number,
            key,
            values: tokens(&content[colon + 1..], offset),
        });
    }
    let header = header.ok_or_else(|| syntax(1, 1, "empty document"))?;
    Ok((header, lines))
}

/// Detects the format of a document from its header line.
pub fn detect_format(text: &str) -> Result<Format> {
    scan(text).map(|(f, _)| f)
}

#[derive(Default)]
struct Decls<'a> {
    alphabets: HashMap<&'static str, Alphabet>,
    names: Vec<String>,
    state_index: HashMap<String, StateId>,
    initial: Option<&'a Line<'a>>,
    finals: Option<&'a Line<'a>>,
    transitions: Vec<&'a Line<'a>>,
    cuts: Option<&'a Line<'a>>,
    uniform: Option<&'a Line<'a>>,
}

impl<'a> Decls<'a> {
    fn collect(lines: &'a [Line<'a>], allowed: &[&'static str]) -> Result<Self> {
        let mut decls = Decls::default();
        let mut seen = BTreeSet::new();
        for line in lines {
            let key = allowed
                .iter()
                .find(|k| **k == line.key)
                .ok_or_else(|| syntax(line.number, 1, format!("unknown key `{}`", line.key)))?;
            if *key != "T" && !seen.insert(*key) {
                return Err(syntax(line.number, 1, format!("duplicate `{key}:` line")));
            }
            match *key {
                "W" | "Sigma" | "Gamma" | "Delta" => {
                    let alphabet = Alphabet::new(line.values.iter().map(|t| t.text))?;
                    decls.alphabets.insert(key, alphabet);
                }
                "Q" => {
                    for t in &line.values {
                        crate::alphabet::validate_token(t.text)?;
                        if decls.state_index.contains_key(t.text) {
                            return Err(Error::DuplicateState(t.text.to_string()));
                        }
                        decls.state_index.insert(t.text.to_string(), decls.names.len());
                        decls.names.push(t.text.to_string());
                    }
                }
                "I" => decls.initial = Some(line),
                "F" => decls.finals = Some(line),
                "T" => decls.transitions.push(line),
                "cuts" => decls.cuts = Some(line),
                "N" => decls.uniform = Some(line),
                _ => unreachable!(),
            }
        }
        Ok(decls)
    }

    fn alphabet(&self, key: &'static str) -> Alphabet {
        self.alphabets.get(key).cloned().unwrap_or_default()
    }

    fn state(&self, line: usize, name: &str) -> Result<StateId> {
        self.state_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UndeclaredState {
                line,
                name: name.to_string(),
            })
    }

    fn state_set(&self, line: Option<&Line<'_>>) -> Result<BTreeSet<StateId>> {
        match line {
            None => Ok(BTreeSet::new()),
            Some(l) => l.values.iter().map(|t| self.state(l.number, t.text)).collect(),
        }
    }
}

fn symbol(alphabet: &Alphabet, line: usize, kind: &'static str, token: &str) -> Result<SymbolId> {
    alphabet.id(token).ok_or_else(|| Error::UndeclaredSymbol {
        line,
        kind,
        token: token.to_string(),
    })
}

fn output_word(alphabet: &Alphabet, line: usize, kind: &'static str, token: &str) -> Result<Word> {
    if token == "-" {
        return Ok(Vec::new());
    }
    token.split('.').map(|t| symbol(alphabet, line, kind, t)).collect()
}

fn expect_format(found: Format, wanted: Format) -> Result<()> {
    if found == wanted {
        Ok(())
    } else {
        Err(syntax(1, 1, format!("expected a {wanted:?} document, found {found:?}")))
    }
}

pub fn parse_lexfst(text: &str) -> Result<LexTransducer> {
    let (format, lines) = scan(text)?;
    expect_format(format, Format::Lexfst)?;
    let d = Decls::collect(&lines, &["W", "Sigma", "Gamma", "Q", "I", "F", "T"])?;
    let (weights, inputs, outputs) = (d.alphabet("W"), d.alphabet("Sigma"), d.alphabet("Gamma"));
    let mut transitions = Vec::new();
    for line in &d.transitions {
        let v = &line.values;
        match v.len() {
            5 => {}
            4 => return Err(Error::MissingWeight { line: line.number }),
            _ => {
                let col = v.get(5).map_or(1, |t| t.column);
                return Err(syntax(line.number, col, "expected `T: src input weight output dst`"));
            }
        }
        let n = line.number;
        transitions.push(LexTransition {
            src: d.state(n, v[0].text)?,
            input: symbol(&inputs, n, "input", v[1].text)?,
            weight: symbol(&weights, n, "weight", v[2].text)?,
            output: output_word(&outputs, n, "output", v[3].text)?,
            dst: d.state(n, v[4].text)?,
        });
    }
    LexTransducer::new(
        weights,
        inputs,
        outputs,
        d.names.clone(),
        d.state_set(d.initial)?,
        d.state_set(d.finals)?,
        transitions,
    )
}

pub fn parse_fst2(text: &str) -> Result<TwoTapeAutomaton> {
    let (format, lines) = scan(text)?;
    expect_format(format, Format::Fst2)?;
    let d = Decls::collect(&lines, &["Sigma", "Gamma", "Q", "I", "F", "T"])?;
    let (inputs, outputs) = (d.alphabet("Sigma"), d.alphabet("Gamma"));
    let mut transitions = Vec::new();
    for line in &d.transitions {
        let v = &line.values;
        if v.len() != 4 {
            let col = v.get(4).map_or(1, |t| t.column);
            return Err(syntax(line.number, col, "expected `T: src input output dst`"));
        }
        let n = line.number;
        let input = match v[1].text {
            "-" => None,
            tok => Some(symbol(&inputs, n, "input", tok)?),
        };
        transitions.push(TwoTapeTransition {
            src: d.state(n, v[0].text)?,
            input,
            output: output_word(&outputs, n, "output", v[2].text)?,
            dst: d.state(n, v[3].text)?,
        });
    }
    TwoTapeAutomaton::new(
        inputs,
        outputs,
        d.names.clone(),
        d.state_set(d.initial)?,
        d.state_set(d.finals)?,
        transitions,
    )
}

fn rational(token: &Token<'_>, line: usize) -> Result<Rational> {
    token
        .text
        .parse::<Rational>()
        .map_err(|_| syntax(line, token.column, format!("invalid rational `{}`", token.text)))
}

pub fn parse_pfsa(text: &str) -> Result<ProbAutomaton> {
    let (format, lines) = scan(text)?;
    expect_format(format, Format::Pfsa)?;
    let d = Decls::collect(&lines, &["cuts", "N", "Gamma", "Delta", "Q", "I", "F", "T"])?;
    let partition = match (d.cuts, d.uniform) {
        (Some(l), None) => Partition::new(l.values.iter().map(|t| rational(t, l.number)).collect::<Result<_>>()?)?,
        (None, Some(l)) => {
            let n = match l.values.as_slice() {
                [t] => t
                    .text
                    .parse::<usize>()
                    .map_err(|_| syntax(l.number, t.column, "N must be a positive integer"))?,
                _ => return Err(syntax(l.number, 1, "expected `N: count`")),
            };
            Partition::uniform(n)?
        }
        _ => return Err(syntax(1, 1, "exactly one of `cuts:` or `N:` is required")),
    };
    let mut tapes = vec![d.alphabet("Gamma")];
    if d.alphabets.contains_key("Delta") {
        tapes.push(d.alphabet("Delta"));
    }
    let initial = d.state_set(d.initial)?;
    let initial = match initial.iter().collect::<Vec<_>>().as_slice() {
        [q] => **q,
        _ => {
            let line = d.initial.map_or(1, |l| l.number);
            return Err(syntax(line, 1, "exactly one initial state is required"));
        }
    };
    let kinds = ["output", "second output"];
    let mut transitions = Vec::new();
    for line in &d.transitions {
        let v = &line.values;
        let want = 3 + tapes.len();
        if v.len() != want {
            let col = v.get(want).map_or(1, |t| t.column);
            let shape = if tapes.len() == 1 {
                "expected `T: src k output dst`"
            } else {
                "expected `T: src k output output2 dst`"
            };
            return Err(syntax(line.number, col, shape));
        }
        let n = line.number;
        let k = v[1]
            .text
            .parse::<usize>()
            .map_err(|_| syntax(n, v[1].column, "interval index must be a positive integer"))?;
        let outputs = tapes
            .iter()
            .enumerate()
            .map(|(i, a)| output_word(a, n, kinds[i], v[2 + i].text))
            .collect::<Result<Vec<_>>>()?;
        transitions.push(ProbTransition {
            src: d.state(n, v[0].text)?,
            interval: k,
            outputs,
            dst: d.state(n, v[want - 1].text)?,
        });
    }
    ProbAutomaton::new(
        partition,
        tapes,
        d.names.clone(),
        initial,
        d.state_set(d.finals)?,
        transitions,
    )
}

fn line_of(out: &mut String, key: &str, items: impl IntoIterator<Item = impl AsRef<str>>) {
    out.push_str(key);
    out.push(':');
    for item in items {
        out.push(' ');
        out.push_str(item.as_ref());
    }
    out.push('\n');
}

fn names<'a>(all: &'a [String], set: &'a BTreeSet<StateId>) -> impl Iterator<Item = &'a str> {
    set.iter().map(move |&q| all[q].as_str())
}

pub fn serialize_lexfst(m: &LexTransducer) -> String {
    let mut out = String::from("lexfst v1\n");
    line_of(&mut out, "W", m.weights().tokens());
    line_of(&mut out, "Sigma", m.inputs().tokens());
    line_of(&mut out, "Gamma", m.outputs().tokens());
    line_of(&mut out, "Q", m.state_names());
    line_of(&mut out, "I", names(m.state_names(), m.initial()));
    line_of(&mut out, "F", names(m.state_names(), m.finals()));
    for t in m.transitions() {
        let _ = writeln!(
            out,
            "T: {} {} {} {} {}",
            m.state_name(t.src),
            m.inputs().token(t.input),
            m.weights().token(t.weight),
            m.outputs().render(&t.output, "."),
            m.state_name(t.dst)
        );
    }
    out
}

pub fn serialize_fst2(n: &TwoTapeAutomaton) -> String {
    let mut out = String::from("fst2 v1\n");
    line_of(&mut out, "Sigma", n.inputs().tokens());
    line_of(&mut out, "Gamma", n.outputs().tokens());
    line_of(&mut out, "Q", n.state_names());
    line_of(&mut out, "I", names(n.state_names(), n.initial()));
    line_of(&mut out, "F", names(n.state_names(), n.finals()));
    for t in n.transitions() {
        let _ = writeln!(
            out,
            "T: {} {} {} {}",
            n.state_name(t.src),
            t.input.map_or("-", |s| n.inputs().token(s)),
            n.outputs().render(&t.output, "."),
            n.state_name(t.dst)
        );
    }
    out
}

pub fn serialize_pfsa(p: &ProbAutomaton) -> String {
    let mut out = String::from("pfsa v1\n");
    line_of(&mut out, "cuts", p.partition().cuts().iter().map(|c| c.to_string()));
    line_of(&mut out, "Gamma", p.tapes()[0].tokens());
    if let Some(delta) = p.tapes().get(1) {
        line_of(&mut out, "Delta", delta.tokens());
    }
    line_of(&mut out, "Q", p.state_names());
    line_of(&mut out, "I", [p.state_names()[p.initial()].as_str()]);
    line_of(&mut out, "F", names(p.state_names(), p.finals()));
    for t in p.transitions() {
        let outs: Vec<String> = t.outputs.iter().zip(p.tapes()).map(|(w, a)| a.render(w, ".")).collect();
        let _ = writeln!(
            out,
            "T: {} {} {} {}",
            p.state_names()[t.src],
            t.interval,
            outs.join(" "),
            p.state_names()[t.dst]
        );
    }
    out
}
