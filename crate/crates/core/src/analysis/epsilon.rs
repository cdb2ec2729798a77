use std::collections::BTreeSet;

use crate::alphabet::{SymbolId, Word};
use crate::error::{Error, Result};
use crate::machine::{StateId, TwoTapeAutomaton, TwoTapeTransition};

/// An elementary cycle of ε-input transitions with a nonempty output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsCycle {
    /// Indices into the automaton's transition list, in cycle order.
    pub transitions: Vec<usize>,
    pub states: Vec<StateId>,
    pub output: Word,
}

/// Enumerates every elementary ε-input cycle whose concatenated output is
/// nonempty. An empty result means every `N(x)` is finite.
pub fn detect_eps_cycles(n: &TwoTapeAutomaton) -> Vec<EpsCycle> {
    let ts = n.transitions();
    let mut eps_out: Vec<Vec<usize>> = vec![Vec::new(); n.num_states()];
    for (i, t) in ts.iter().enumerate() {
        if t.input.is_none() {
            eps_out[t.src].push(i);
        }
    }

    struct Search<'a> {
        ts: &'a [TwoTapeTransition],
        eps_out: &'a [Vec<usize>],
        root: StateId,
        on_path: Vec<bool>,
        path: Vec<usize>,
        found: Vec<EpsCycle>,
    }

    impl Search<'_> {
        fn visit(&mut self, q: StateId) {
            for &i in &self.eps_out[q] {
                let t = &self.ts[i];
                if t.dst == self.root {
                    self.path.push(i);
                    let output: Word = self
                        .path
                        .iter()
                        .flat_map(|&j| self.ts[j].output.iter().copied())
                        .collect();
                    if !output.is_empty() {
                        self.found.push(EpsCycle {
                            transitions: self.path.clone(),
                            states: self.path.iter().map(|&j| self.ts[j].src).collect(),
                            output,
                        });
                    }
                    self.path.pop();
                } else if t.dst > self.root && !self.on_path[t.dst] {
                    self.on_path[t.dst] = true;
                    self.path.push(i);
                    self.visit(t.dst);
                    self.path.pop();
                    self.on_path[t.dst] = false;
                }
            }
        }
    }

    let mut found = Vec::new();
    for root in 0..n.num_states() {
        let mut search = Search {
            ts,
            eps_out: &eps_out,
            root,
            on_path: vec![false; n.num_states()],
            path: Vec::new(),
            found: Vec::new(),
        };
        search.on_path[root] = true;
        search.visit(root);
        found.append(&mut search.found);
    }
    found
}

/// Finds an output-producing ε-cycle among `states`, reporting one of its
/// states.
fn productive_eps_cycle(n: &TwoTapeAutomaton, states: &BTreeSet<StateId>) -> Option<StateId> {
    let eps: Vec<&TwoTapeTransition> = n
        .transitions()
        .iter()
        .filter(|t| t.input.is_none() && states.contains(&t.src) && states.contains(&t.dst))
        .collect();
    let reaches = |from: StateId, to: StateId| {
        let mut seen = BTreeSet::from([from]);
        let mut stack = vec![from];
        while let Some(q) = stack.pop() {
            if q == to {
                return true;
            }
            for t in eps.iter().filter(|t| t.src == q) {
                if seen.insert(t.dst) {
                    stack.push(t.dst);
                }
            }
        }
        false
    };
    eps.iter()
        .find(|t| !t.output.is_empty() && reaches(t.dst, t.src))
        .map(|t| t.src)
}

type Superposition = BTreeSet<(StateId, Word)>;

fn eps_closure(adj: &[Vec<&TwoTapeTransition>], mut s: Superposition) -> Superposition {
    let mut stack: Vec<(StateId, Word)> = s.iter().cloned().collect();
    while let Some((q, d)) = stack.pop() {
        for t in adj[q].iter().filter(|t| t.input.is_none()) {
            let mut out = d.clone();
            out.extend_from_slice(&t.output);
            let item = (t.dst, out);
            if s.insert(item.clone()) {
                stack.push(item);
            }
        }
    }
    s
}

/// All outputs `d` with `(c, d)` accepted, by superposition stepping with
/// interleaved ε-closure over the useful part of the automaton.
pub fn eval_two_tape(n: &TwoTapeAutomaton, input: &[SymbolId]) -> Result<BTreeSet<Word>> {
    for &s in input {
        n.inputs().check(s, "input")?;
    }
    let useful = n.useful_states();
    if let Some(state) = productive_eps_cycle(n, &useful) {
        return Err(Error::InfiniteOutput { state });
    }
    let mut adj: Vec<Vec<&TwoTapeTransition>> = vec![Vec::new(); n.num_states()];
    for t in n.transitions() {
        if useful.contains(&t.src) && useful.contains(&t.dst) {
            adj[t.src].push(t);
        }
    }
    let start = n
        .initial()
        .iter()
        .filter(|q| useful.contains(q))
        .map(|&q| (q, Vec::new()))
        .collect();
    let mut current = eps_closure(&adj, start);
    for &sym in input {
        let mut next = Superposition::new();
        for (q, d) in &current {
            for t in adj[*q].iter().filter(|t| t.input == Some(sym)) {
                let mut out = d.clone();
                out.extend_from_slice(&t.output);
                next.insert((t.dst, out));
            }
        }
        current = eps_closure(&adj, next);
        if current.is_empty() {
            break;
        }
    }
    Ok(current
        .into_iter()
        .filter(|(q, _)| n.is_final(*q))
        .map(|(_, d)| d)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_fst2;

    #[test]
    fn self_loop_with_output() {
        let n = parse_fst2("fst2 v1\nGamma: g\nQ: s\nI: s\nF: s\nT: s - g s\n").unwrap();
        let cycles = detect_eps_cycles(&n);
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].output, vec![0]);
        assert_eq!(eval_two_tape(&n, &[]), Err(Error::InfiniteOutput { state: 0 }));
    }

    #[test]
    fn silent_self_loop() {
        let n = parse_fst2("fst2 v1\nGamma: g\nQ: s\nI: s\nF: s\nT: s - - s\n").unwrap();
        assert!(detect_eps_cycles(&n).is_empty());
        assert_eq!(eval_two_tape(&n, &[]).unwrap(), BTreeSet::from([vec![]]));
    }

    #[test]
    fn two_state_cycle() {
        let n = parse_fst2("fst2 v1\nGamma: g\nQ: s t\nI: s\nF: s\nT: s - - t\nT: t - g s\n").unwrap();
        let cycles = detect_eps_cycles(&n);
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].states, vec![0, 1]);
        assert_eq!(cycles[0].transitions, vec![0, 1]);
        assert!(eval_two_tape(&n, &[]).is_err());
    }

    #[test]
    fn cycle_off_the_useful_part_is_ignored_by_eval() {
        let n = parse_fst2("fst2 v1\nSigma: x\nGamma: g\nQ: s f d\nI: s\nF: f\nT: s x g f\nT: s x - d\nT: d - g d\n")
            .unwrap();
        assert_eq!(detect_eps_cycles(&n).len(), 1);
        assert_eq!(eval_two_tape(&n, &[0]).unwrap(), BTreeSet::from([vec![0]]));
    }

    #[test]
    fn epsilon_closure_outputs() {
        let n = parse_fst2("fst2 v1\nSigma: x\nGamma: g h\nQ: a b c\nI: a\nF: c\nT: a x g b\nT: b - h c\nT: a - - c\n")
            .unwrap();
        assert_eq!(eval_two_tape(&n, &[]).unwrap(), BTreeSet::from([vec![]]));
        assert_eq!(eval_two_tape(&n, &[0]).unwrap(), BTreeSet::from([vec![0, 1]]));
        assert!(eval_two_tape(&n, &[5]).is_err());
    }

    #[test]
    fn accepts_only_empty_pair() {
        let n = parse_fst2("fst2 v1\nQ: s\nI: s\nF: s\n").unwrap();
        assert_eq!(eval_two_tape(&n, &[]).unwrap(), BTreeSet::from([vec![]]));
    }
}
