//! Interval probabilistic semiring.
//!
//! Weight symbols are subintervals of `(0, 1)` taken from a partition given by
//! rational cut points. Composition rescales the right operand into the left
//! one, so the length of a composed interval is the product of the lengths.
//! A weight word `b` stands for the event "an infinite random sequence starts
//! with `b`", whose measure is the length of the composed interval.
//!
//! Probabilities of outputs are computed as sound brackets: every path up to
//! a depth bound is explored, accepted mass goes into `lower`, and mass of
//! prefixes that are still able to succeed goes into the gap.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::alphabet::{Alphabet, SymbolId, Word};
use crate::error::{Error, Result};
use crate::machine::StateId;

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Open subinterval `(lo, hi)` of `(0, 1)` with `lo < hi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo < Rational::zero() || hi > Rational::one() || lo >= hi {
            return Err(Error::BadInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Interval { lo, hi })
    }

    /// `(0, 1)`, the identity of composition.
    pub fn unit() -> Self {
        Interval {
            lo: Rational::zero(),
            hi: Rational::one(),
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    /// Affine composition: `other` is placed inside `self`.
    pub fn mul(&self, other: &Interval) -> Interval {
        let width = &self.hi - &self.lo;
        Interval {
            lo: &self.lo + &width * &other.lo,
            hi: &self.lo + &width * &other.hi,
        }
    }

    pub fn norm(&self) -> Rational {
        &self.hi - &self.lo
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

pub fn interval_mul(x: &Interval, y: &Interval) -> Interval {
    x.mul(y)
}

pub fn interval_norm(x: &Interval) -> Rational {
    x.norm()
}

/// Removes every word that has a proper prefix in the set.
pub fn prefix_free_reduce(words: &BTreeSet<Word>) -> BTreeSet<Word> {
    words
        .iter()
        .filter(|w| (0..w.len()).all(|k| !words.contains(&w[..k])))
        .cloned()
        .collect()
}

/// Partition of `(0, 1)` into `N` intervals by ascending cut points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    cuts: Vec<Rational>,
}

impl Partition {
    pub fn new(cuts: Vec<Rational>) -> Result<Self> {
        let ok = cuts.len() >= 2
            && cuts[0].is_zero()
            && cuts[cuts.len() - 1].is_one()
            && cuts.windows(2).all(|w| w[0] < w[1]);
        if ok {
            Ok(Partition { cuts })
        } else {
            Err(Error::Invalid("cut points must ascend strictly from 0 to 1".into()))
        }
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("partition needs N ≥ 1".into()));
        }
        Partition::new((0..=n).map(|i| rat(i as i64, n as i64)).collect())
    }

    pub fn cuts(&self) -> &[Rational] {
        &self.cuts
    }

    /// Number of intervals `N`.
    pub fn len(&self) -> usize {
        self.cuts.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `ω_k` for `k` in `1..=N`.
    pub fn interval(&self, k: usize) -> Interval {
        assert!((1..=self.len()).contains(&k), "interval index {k} out of range");
        Interval {
            lo: self.cuts[k - 1].clone(),
            hi: self.cuts[k].clone(),
        }
    }

    /// Composed interval of a word of 1-based indices.
    pub fn word_interval(&self, word: &[usize]) -> Interval {
        word.iter().fold(Interval::unit(), |acc, &k| acc.mul(&self.interval(k)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProbTransition {
    pub src: StateId,
    /// 1-based interval index.
    pub interval: usize,
    /// One word per output tape.
    pub outputs: Vec<Word>,
    pub dst: StateId,
}

/// Automaton whose weight tape is the interval semiring. Deterministic on the
/// weight tape: a weight word determines at most one path.
#[derive(Debug, Clone)]
pub struct ProbAutomaton {
    partition: Partition,
    tapes: Vec<Alphabet>,
    names: Vec<String>,
    initial: StateId,
    finals: BTreeSet<StateId>,
    transitions: Vec<ProbTransition>,
    // (state, interval) -> transition index
    index: HashMap<(StateId, usize), usize>,
}

impl ProbAutomaton {
    pub fn new(
        partition: Partition,
        tapes: Vec<Alphabet>,
        names: Vec<String>,
        initial: StateId,
        finals: BTreeSet<StateId>,
        transitions: Vec<ProbTransition>,
    ) -> Result<Self> {
        let n = names.len();
        if tapes.is_empty() || tapes.len() > 2 {
            return Err(Error::Invalid("one or two output tapes expected".into()));
        }
        if initial >= n || finals.iter().any(|&q| q >= n) {
            return Err(Error::Invalid("state out of range".into()));
        }
        let mut index = HashMap::new();
        for (i, t) in transitions.iter().enumerate() {
            if t.src >= n || t.dst >= n {
                return Err(Error::Invalid("transition endpoint out of range".into()));
            }
            if !(1..=partition.len()).contains(&t.interval) {
                return Err(Error::Invalid(format!(
                    "interval index {} outside 1..={}",
                    t.interval,
                    partition.len()
                )));
            }
            if t.outputs.len() != tapes.len() {
                return Err(Error::Invalid("wrong number of output words".into()));
            }
            for (word, alphabet) in t.outputs.iter().zip(&tapes) {
                for &s in word {
                    alphabet.check(s, "output")?;
                }
            }
            if index.insert((t.src, t.interval), i).is_some() {
                return Err(Error::Invalid(format!(
                    "state {} has two transitions on interval {}",
                    names[t.src], t.interval
                )));
            }
        }
        Ok(ProbAutomaton {
            partition,
            tapes,
            names,
            initial,
            finals,
            transitions,
            index,
        })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn tapes(&self) -> &[Alphabet] {
        &self.tapes
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    pub fn transitions(&self) -> &[ProbTransition] {
        &self.transitions
    }

    pub fn transition(&self, q: StateId, interval: usize) -> Option<&ProbTransition> {
        self.index.get(&(q, interval)).map(|&i| &self.transitions[i])
    }

    fn check_target(&self, tape: usize, word: &[SymbolId]) -> Result<()> {
        let alphabet = self
            .tapes
            .get(tape)
            .ok_or_else(|| Error::Invalid(format!("machine has no output tape {tape}")))?;
        word.iter().try_for_each(|&s| alphabet.check(s, "output"))
    }
}

/// Sound enclosure `[lower, upper]` of a probability at a depth bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbBracket {
    pub lower: Rational,
    pub upper: Rational,
    pub depth: usize,
}

impl ProbBracket {
    pub fn gap(&self) -> Rational {
        &self.upper - &self.lower
    }

    pub fn contains(&self, other: &ProbBracket) -> bool {
        self.lower <= other.lower && other.upper <= self.upper
    }
}

// Exploration node: state plus matched length on each constrained tape.
type Node = (StateId, Vec<usize>);

struct Matcher<'a> {
    p: &'a ProbAutomaton,
    targets: &'a [Option<&'a [SymbolId]>],
}

impl Matcher<'_> {
    fn start(&self) -> Node {
        (self.p.initial, vec![0; self.targets.len()])
    }

    fn accepting(&self, (q, pos): &Node) -> bool {
        self.p.finals.contains(q)
            && self
                .targets
                .iter()
                .zip(pos)
                .all(|(t, &i)| t.is_none_or(|w| i == w.len()))
    }

    fn advance(&self, (_, pos): &Node, t: &ProbTransition) -> Option<Node> {
        let mut next = pos.clone();
        for (tape, target) in self.targets.iter().enumerate() {
            if let Some(w) = target {
                let out = &t.outputs[tape];
                let i = next[tape];
                if !w[i..].starts_with(out) {
                    return None;
                }
                next[tape] = i + out.len();
            }
        }
        Some((t.dst, next))
    }

    fn successors(&self, node: &Node) -> Vec<(usize, Node)> {
        (1..=self.p.partition.len())
            .filter_map(|k| {
                let t = self.p.transition(node.0, k)?;
                Some((k, self.advance(node, t)?))
            })
            .collect()
    }

    /// Nodes reachable from the start that can still reach an accepting node.
    fn live_nodes(&self) -> BTreeSet<Node> {
        let start = self.start();
        let mut seen = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        let mut preds: BTreeMap<Node, Vec<Node>> = BTreeMap::new();
        while let Some(node) = queue.pop_front() {
            for (_, next) in self.successors(&node) {
                preds.entry(next.clone()).or_default().push(node.clone());
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut live: BTreeSet<Node> = seen.iter().filter(|n| self.accepting(n)).cloned().collect();
        let mut stack: Vec<Node> = live.iter().cloned().collect();
        while let Some(node) = stack.pop() {
            for p in preds.get(&node).into_iter().flatten() {
                if live.insert(p.clone()) {
                    stack.push(p.clone());
                }
            }
        }
        live
    }

    fn bracket(&self, depth: usize) -> ProbBracket {
        let live = self.live_nodes();
        let mut lower = Rational::zero();
        let mut frontier: BTreeMap<Node, Rational> = BTreeMap::new();
        let start = self.start();
        if live.contains(&start) {
            frontier.insert(start, Rational::one());
        }
        for level in 0..=depth {
            let mut next: BTreeMap<Node, Rational> = BTreeMap::new();
            for (node, mass) in std::mem::take(&mut frontier) {
                if self.accepting(&node) {
                    lower += mass;
                    continue;
                }
                if level == depth {
                    // unresolved but live: kept for the gap
                    next.insert(node, mass);
                    continue;
                }
                for (k, child) in self.successors(&node) {
                    if live.contains(&child) {
                        let m = &mass * self.p.partition.interval(k).norm();
                        *next.entry(child).or_insert_with(Rational::zero) += m;
                    }
                }
            }
            frontier = next;
        }
        let gap: Rational = frontier.values().cloned().sum();
        ProbBracket {
            upper: &lower + gap,
            lower,
            depth,
        }
    }

    /// Accepted weight words of length ≤ depth along which no shorter prefix
    /// was accepted, by explicit path enumeration.
    fn accepted_words(&self, depth: usize) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        let mut stack = vec![(self.start(), Vec::new())];
        while let Some((node, word)) = stack.pop() {
            if self.accepting(&node) {
                out.insert(word);
                continue;
            }
            if word.len() == depth {
                continue;
            }
            for (k, child) in self.successors(&node) {
                let mut w = word.clone();
                w.push(k);
                stack.push((child, w));
            }
        }
        out
    }
}

fn general_bracket(p: &ProbAutomaton, targets: &[Option<&[SymbolId]>], depth: usize) -> Result<ProbBracket> {
    for (tape, t) in targets.iter().enumerate() {
        if let Some(w) = t {
            p.check_target(tape, w)?;
        }
    }
    Ok(Matcher { p, targets }.bracket(depth))
}

/// Bracket for `P(c)`: output `c` on the first tape, other tapes free.
pub fn prob_bracket(p: &ProbAutomaton, c: &[SymbolId], depth: usize) -> Result<ProbBracket> {
    let mut targets: Vec<Option<&[SymbolId]>> = vec![None; p.tapes.len()];
    targets[0] = Some(c);
    general_bracket(p, &targets, depth)
}

/// Bracket for `P(c, d)`: `c` on the first tape and `d` on the second.
pub fn joint_bracket(p: &ProbAutomaton, c: &[SymbolId], d: &[SymbolId], depth: usize) -> Result<ProbBracket> {
    general_bracket(p, &[Some(c), Some(d)], depth)
}

/// Bracket for `P(d | c) = P(c, d) / P(c)` by interval division.
pub fn cond_prob(p: &ProbAutomaton, c: &[SymbolId], d: &[SymbolId], depth: usize) -> Result<ProbBracket> {
    let joint = joint_bracket(p, c, d, depth)?;
    let marginal = prob_bracket(p, c, depth)?;
    cond_from_brackets(&joint, &marginal)
}

pub fn cond_from_brackets(joint: &ProbBracket, marginal: &ProbBracket) -> Result<ProbBracket> {
    if marginal.upper.is_zero() {
        return Err(Error::NullEvent);
    }
    let lower = &joint.lower / &marginal.upper;
    let upper = if joint.upper.is_zero() {
        Rational::zero()
    } else if marginal.lower.is_zero() {
        Rational::one()
    } else {
        (&joint.upper / &marginal.lower).min(Rational::one())
    };
    Ok(ProbBracket {
        lower,
        upper,
        depth: joint.depth.min(marginal.depth),
    })
}

/// Minimal accepted weight words for output `c` up to `depth`, enumerated
/// path by path. Exponential; meant for cross-checking brackets.
pub fn accepted_weight_words(p: &ProbAutomaton, c: &[SymbolId], depth: usize) -> BTreeSet<Word> {
    let mut targets: Vec<Option<&[SymbolId]>> = vec![None; p.tapes.len()];
    targets[0] = Some(c);
    Matcher { p, targets: &targets }.accepted_words(depth)
}
