//! Automaton types: lexicographic transducers, unweighted two-tape automata
//! and single-tape automata.
//!
//! States are dense integer ids. Names are kept only so the text formats can
//! round-trip them.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::alphabet::{validate_token, Alphabet, SymbolId, WeightAlphabet, Word};
use crate::error::{Error, Result};

pub type StateId = usize;

/// One transition `src --input/weight:output--> dst` of a lexicographic
/// transducer. Each transition reads exactly one input and one weight symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LexTransition {
    pub src: StateId,
    pub input: SymbolId,
    pub weight: SymbolId,
    pub output: Word,
    pub dst: StateId,
}

/// Transition of a two-tape automaton; `input == None` is an ε-input move.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoTapeTransition {
    pub src: StateId,
    pub input: Option<SymbolId>,
    pub output: Word,
    pub dst: StateId,
}

/// Transition of a single-tape automaton; `None` is an ε move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SingleTapeTransition {
    pub src: StateId,
    pub symbol: Option<SymbolId>,
    pub dst: StateId,
}

fn check_names(names: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for name in names {
        validate_token(name)?;
        if !seen.insert(name.as_str()) {
            return Err(Error::DuplicateState(name.clone()));
        }
    }
    Ok(())
}

fn check_states(set: &BTreeSet<StateId>, n: usize, what: &str) -> Result<()> {
    match set.iter().find(|&&q| q >= n) {
        Some(q) => Err(Error::Invalid(format!("{what} state {q} out of range"))),
        None => Ok(()),
    }
}

fn check_endpoint(q: StateId, n: usize) -> Result<()> {
    if q < n {
        Ok(())
    } else {
        Err(Error::Invalid(format!("transition endpoint {q} out of range")))
    }
}

/// Removes duplicates while keeping first occurrences in order.
fn dedup_stable<T: Clone + Eq + std::hash::Hash>(items: Vec<T>) -> Vec<T> {
    let mut seen = HashSet::new();
    items.into_iter().filter(|t| seen.insert(t.clone())).collect()
}

/// A lexicographic transducer over `W* × Σ* × Γ*`.
#[derive(Debug, Clone)]
pub struct LexTransducer {
    weights: WeightAlphabet,
    inputs: Alphabet,
    outputs: Alphabet,
    names: Vec<String>,
    initial: BTreeSet<StateId>,
    finals: BTreeSet<StateId>,
    transitions: Vec<LexTransition>,
    // transition indices keyed by `src * |Σ| + input`
    by_input: Vec<Vec<usize>>,
}

impl LexTransducer {
    pub fn new(
        weights: WeightAlphabet,
        inputs: Alphabet,
        outputs: Alphabet,
        names: Vec<String>,
        initial: BTreeSet<StateId>,
        finals: BTreeSet<StateId>,
        transitions: Vec<LexTransition>,
    ) -> Result<Self> {
        check_names(&names)?;
        let n = names.len();
        check_states(&initial, n, "initial")?;
        check_states(&finals, n, "final")?;
        for t in &transitions {
            check_endpoint(t.src, n)?;
            check_endpoint(t.dst, n)?;
            inputs.check(t.input, "input")?;
            weights.check(t.weight, "weight")?;
            for &g in &t.output {
                outputs.check(g, "output")?;
            }
        }
        let transitions = dedup_stable(transitions);
        let sigma = inputs.len();
        let mut by_input = vec![Vec::new(); n * sigma];
        for (i, t) in transitions.iter().enumerate() {
            by_input[t.src * sigma + t.input].push(i);
        }
        Ok(LexTransducer {
            weights,
            inputs,
            outputs,
            names,
            initial,
            finals,
            transitions,
            by_input,
        })
    }

    pub fn weights(&self) -> &WeightAlphabet {
        &self.weights
    }

    pub fn inputs(&self) -> &Alphabet {
        &self.inputs
    }

    pub fn outputs(&self) -> &Alphabet {
        &self.outputs
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.names[q]
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn initial(&self) -> &BTreeSet<StateId> {
        &self.initial
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals.contains(&q)
    }

    pub fn transitions(&self) -> &[LexTransition] {
        &self.transitions
    }

    /// Transitions leaving `q` that read `input`.
    pub fn outgoing(&self, q: StateId, input: SymbolId) -> impl Iterator<Item = &LexTransition> {
        let sigma = self.inputs.len();
        self.by_input[q * sigma + input]
            .iter()
            .map(move |&i| &self.transitions[i])
    }

    /// `δ_C(K, σ)`: states reachable from configuration `config` over `input`.
    pub fn image(&self, config: &BTreeSet<StateId>, input: SymbolId) -> BTreeSet<StateId> {
        config
            .iter()
            .flat_map(|&q| self.outgoing(q, input).map(|t| t.dst))
            .collect()
    }

    pub fn check_word(&self, word: &[SymbolId]) -> Result<()> {
        word.iter().try_for_each(|&s| self.inputs.check(s, "input"))
    }

    /// Whether `|I| = 1` and every `(state, input)` pair has at most one
    /// transition.
    pub fn is_deterministic(&self) -> bool {
        self.initial.len() == 1 && self.by_input.iter().all(|ts| ts.len() <= 1)
    }

    /// Drops the weight tape, keeping input and output.
    pub fn without_weights(&self) -> TwoTapeAutomaton {
        TwoTapeAutomaton {
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
            names: self.names.clone(),
            initial: self.initial.clone(),
            finals: self.finals.clone(),
            transitions: dedup_stable(
                self.transitions
                    .iter()
                    .map(|t| TwoTapeTransition {
                        src: t.src,
                        input: Some(t.input),
                        output: t.output.clone(),
                        dst: t.dst,
                    })
                    .collect(),
            ),
        }
    }
}

/// An unweighted automaton over `Σ* × Γ*`.
#[derive(Debug, Clone)]
pub struct TwoTapeAutomaton {
    inputs: Alphabet,
    outputs: Alphabet,
    names: Vec<String>,
    initial: BTreeSet<StateId>,
    finals: BTreeSet<StateId>,
    transitions: Vec<TwoTapeTransition>,
}

impl TwoTapeAutomaton {
    pub fn new(
        inputs: Alphabet,
        outputs: Alphabet,
        names: Vec<String>,
        initial: BTreeSet<StateId>,
        finals: BTreeSet<StateId>,
        transitions: Vec<TwoTapeTransition>,
    ) -> Result<Self> {
        check_names(&names)?;
        let n = names.len();
        check_states(&initial, n, "initial")?;
        check_states(&finals, n, "final")?;
        for t in &transitions {
            check_endpoint(t.src, n)?;
            check_endpoint(t.dst, n)?;
            if let Some(s) = t.input {
                inputs.check(s, "input")?;
            }
            for &g in &t.output {
                outputs.check(g, "output")?;
            }
        }
        Ok(TwoTapeAutomaton {
            inputs,
            outputs,
            names,
            initial,
            finals,
            transitions: dedup_stable(transitions),
        })
    }

    pub fn inputs(&self) -> &Alphabet {
        &self.inputs
    }

    pub fn outputs(&self) -> &Alphabet {
        &self.outputs
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.names[q]
    }

    pub fn initial(&self) -> &BTreeSet<StateId> {
        &self.initial
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals.contains(&q)
    }

    pub fn transitions(&self) -> &[TwoTapeTransition] {
        &self.transitions
    }

    pub fn is_epsilon_free(&self) -> bool {
        self.transitions.iter().all(|t| t.input.is_some())
    }

    /// Outgoing transition lists indexed by source state.
    pub fn adjacency(&self) -> Vec<Vec<&TwoTapeTransition>> {
        let mut adj = vec![Vec::new(); self.num_states()];
        for t in &self.transitions {
            adj[t.src].push(t);
        }
        adj
    }

    /// States reachable from `I` and able to reach `F`.
    pub fn useful_states(&self) -> BTreeSet<StateId> {
        let edges: Vec<(StateId, StateId)> = self.transitions.iter().map(|t| (t.src, t.dst)).collect();
        useful(self.num_states(), &edges, &self.initial, &self.finals)
    }

    /// Restricts the automaton to its useful states, renumbering densely.
    pub fn trim(&self) -> TwoTapeAutomaton {
        self.restrict(&self.useful_states())
    }

    /// Keeps only the states in `keep`, renumbering densely in id order.
    pub fn restrict(&self, keep: &BTreeSet<StateId>) -> TwoTapeAutomaton {
        let mut remap = vec![usize::MAX; self.num_states()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
        }
        let map_set = |s: &BTreeSet<StateId>| -> BTreeSet<StateId> {
            s.iter().filter(|q| keep.contains(q)).map(|&q| remap[q]).collect()
        };
        TwoTapeAutomaton {
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
            names: keep.iter().map(|&q| self.names[q].clone()).collect(),
            initial: map_set(&self.initial),
            finals: map_set(&self.finals),
            transitions: self
                .transitions
                .iter()
                .filter(|t| keep.contains(&t.src) && keep.contains(&t.dst))
                .map(|t| TwoTapeTransition {
                    src: remap[t.src],
                    input: t.input,
                    output: t.output.clone(),
                    dst: remap[t.dst],
                })
                .collect(),
        }
    }
}

/// A nondeterministic single-tape automaton with optional ε moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingleTapeAutomaton {
    pub alphabet: Alphabet,
    pub num_states: usize,
    pub initial: BTreeSet<StateId>,
    pub finals: BTreeSet<StateId>,
    pub transitions: Vec<SingleTapeTransition>,
}

impl SingleTapeAutomaton {
    pub fn new(
        alphabet: Alphabet,
        num_states: usize,
        initial: BTreeSet<StateId>,
        finals: BTreeSet<StateId>,
        transitions: Vec<SingleTapeTransition>,
    ) -> Result<Self> {
        check_states(&initial, num_states, "initial")?;
        check_states(&finals, num_states, "final")?;
        for t in &transitions {
            check_endpoint(t.src, num_states)?;
            check_endpoint(t.dst, num_states)?;
            if let Some(s) = t.symbol {
                alphabet.check(s, "tape")?;
            }
        }
        Ok(SingleTapeAutomaton {
            alphabet,
            num_states,
            initial,
            finals,
            transitions: dedup_stable(transitions),
        })
    }

    /// Membership by direct simulation.
    pub fn accepts(&self, word: &[SymbolId]) -> bool {
        let mut current = self.eps_closure(self.initial.clone());
        for &s in word {
            let next = self
                .transitions
                .iter()
                .filter(|t| t.symbol == Some(s) && current.contains(&t.src))
                .map(|t| t.dst)
                .collect();
            current = self.eps_closure(next);
        }
        current.iter().any(|q| self.finals.contains(q))
    }

    pub fn eps_closure(&self, mut set: BTreeSet<StateId>) -> BTreeSet<StateId> {
        let mut stack: Vec<StateId> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for t in &self.transitions {
                if t.src == q && t.symbol.is_none() && set.insert(t.dst) {
                    stack.push(t.dst);
                }
            }
        }
        set
    }
}

/// Forward/backward reachability intersection over a plain edge list.
pub(crate) fn useful(
    n: usize,
    edges: &[(StateId, StateId)],
    initial: &BTreeSet<StateId>,
    finals: &BTreeSet<StateId>,
) -> BTreeSet<StateId> {
    let mut fwd = vec![Vec::new(); n];
    let mut bwd = vec![Vec::new(); n];
    for &(s, d) in edges {
        fwd[s].push(d);
        bwd[d].push(s);
    }
    let reach = |adj: &[Vec<StateId>], start: &BTreeSet<StateId>| {
        let mut seen = vec![false; n];
        let mut queue: VecDeque<StateId> = start.iter().copied().collect();
        for &q in start {
            seen[q] = true;
        }
        while let Some(q) = queue.pop_front() {
            for &r in &adj[q] {
                if !seen[r] {
                    seen[r] = true;
                    queue.push_back(r);
                }
            }
        }
        seen
    };
    let a = reach(&fwd, initial);
    let c = reach(&bwd, finals);
    (0..n).filter(|&q| a[q] && c[q]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    #[test]
    fn rejects_out_of_range_symbols() {
        let t = LexTransition {
            src: 0,
            input: 0,
            weight: 2,
            output: vec![],
            dst: 0,
        };
        let err = LexTransducer::new(
            ab(),
            ab(),
            ab(),
            vec!["s".into()],
            BTreeSet::from([0]),
            BTreeSet::new(),
            vec![t],
        )
        .unwrap_err();
        assert!(matches!(err, Error::SymbolOutOfRange { kind: "weight", .. }));
    }

    #[test]
    fn deduplicates_transitions() {
        let t = LexTransition {
            src: 0,
            input: 0,
            weight: 0,
            output: vec![1],
            dst: 0,
        };
        let m = LexTransducer::new(
            ab(),
            ab(),
            ab(),
            vec!["s".into()],
            BTreeSet::from([0]),
            BTreeSet::from([0]),
            vec![t.clone(), t],
        )
        .unwrap();
        assert_eq!(m.transitions().len(), 1);
        assert!(m.is_deterministic());
    }

    #[test]
    fn duplicate_state_names() {
        let err = TwoTapeAutomaton::new(
            ab(),
            ab(),
            vec!["s".into(), "s".into()],
            BTreeSet::new(),
            BTreeSet::new(),
            vec![],
        )
        .unwrap_err();
        assert_eq!(err, Error::DuplicateState("s".into()));
    }

    #[test]
    fn trim_drops_dead_and_unreachable() {
        let tr = |src, dst| TwoTapeTransition {
            src,
            input: Some(0),
            output: vec![],
            dst,
        };
        let n = TwoTapeAutomaton::new(
            ab(),
            ab(),
            vec!["i".into(), "f".into(), "dead".into(), "orphan".into()],
            BTreeSet::from([0]),
            BTreeSet::from([1]),
            vec![tr(0, 1), tr(0, 2), tr(3, 1)],
        )
        .unwrap();
        let t = n.trim();
        assert_eq!(t.state_names(), &["i".to_string(), "f".to_string()]);
        assert_eq!(t.transitions().len(), 1);
    }
}
