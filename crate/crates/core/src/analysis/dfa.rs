//! Subset construction and partition-refinement minimization.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::alphabet::SymbolId;
use crate::machine::{SingleTapeAutomaton, StateId};

/// A partial deterministic automaton; missing transitions go to an implicit
/// dead state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    pub num_symbols: usize,
    pub initial: Option<StateId>,
    pub finals: BTreeSet<StateId>,
    /// `delta[state][symbol]`.
    pub delta: Vec<Vec<Option<StateId>>>,
}

impl Dfa {
    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn accepts(&self, word: &[SymbolId]) -> bool {
        let mut q = self.initial;
        for &s in word {
            q = q.and_then(|q| self.delta[q][s]);
        }
        q.is_some_and(|q| self.finals.contains(&q))
    }
}

/// Subset construction; only accessible subsets are built and the empty
/// subset is left implicit.
pub fn determinize(nfa: &SingleTapeAutomaton) -> Dfa {
    let k = nfa.alphabet.len();
    let mut eps: Vec<Vec<StateId>> = vec![Vec::new(); nfa.num_states];
    let mut step: Vec<Vec<Vec<StateId>>> = vec![vec![Vec::new(); k]; nfa.num_states];
    for t in &nfa.transitions {
        match t.symbol {
            None => eps[t.src].push(t.dst),
            Some(s) => step[t.src][s].push(t.dst),
        }
    }
    let closure = |mut set: BTreeSet<StateId>| {
        let mut stack: Vec<StateId> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &r in &eps[q] {
                if set.insert(r) {
                    stack.push(r);
                }
            }
        }
        set
    };

    let mut index: HashMap<BTreeSet<StateId>, StateId> = HashMap::new();
    let mut subsets: Vec<BTreeSet<StateId>> = Vec::new();
    let mut delta: Vec<Vec<Option<StateId>>> = Vec::new();
    let mut queue = VecDeque::new();

    let start = closure(nfa.initial.clone());
    let initial = if start.is_empty() {
        None
    } else {
        index.insert(start.clone(), 0);
        subsets.push(start);
        delta.push(vec![None; k]);
        queue.push_back(0);
        Some(0)
    };
    while let Some(id) = queue.pop_front() {
        for s in 0..k {
            let next: BTreeSet<StateId> = subsets[id].iter().flat_map(|&q| step[q][s].iter().copied()).collect();
            let next = closure(next);
            if next.is_empty() {
                continue;
            }
            let target = match index.get(&next) {
                Some(&t) => t,
                None => {
                    let t = subsets.len();
                    index.insert(next.clone(), t);
                    subsets.push(next);
                    delta.push(vec![None; k]);
                    queue.push_back(t);
                    t
                }
            };
            delta[id][s] = Some(target);
        }
    }
    let finals = subsets
        .iter()
        .enumerate()
        .filter(|(_, set)| set.iter().any(|q| nfa.finals.contains(q)))
        .map(|(i, _)| i)
        .collect();
    Dfa {
        num_symbols: k,
        initial,
        finals,
        delta,
    }
}

/// Minimal partial DFA: Moore refinement on the completed automaton, then
/// the dead class is dropped. Its state count is the number of live
/// Myhill–Nerode classes.
pub fn minimize(dfa: &Dfa) -> Dfa {
    let n = dfa.num_states();
    let k = dfa.num_symbols;
    let dead = n;
    let succ = |q: StateId, s: usize| -> StateId {
        if q == dead {
            dead
        } else {
            dfa.delta[q][s].unwrap_or(dead)
        }
    };
    // initial split by acceptance; the dead state is non-accepting
    let mut class: Vec<usize> = (0..=n).map(|q| usize::from(dfa.finals.contains(&q))).collect();
    let mut count = 0;
    loop {
        let mut signatures: HashMap<Vec<usize>, usize> = HashMap::new();
        let next: Vec<usize> = (0..=n)
            .map(|q| {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[q]);
                sig.extend((0..k).map(|s| class[succ(q, s)]));
                let fresh = signatures.len();
                *signatures.entry(sig).or_insert(fresh)
            })
            .collect();
        let new_count = signatures.len();
        class = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }

    // live classes: able to reach an accepting class
    let mut live = vec![false; count];
    for &f in &dfa.finals {
        live[class[f]] = true;
    }
    let mut changed = true;
    while changed {
        changed = false;
        for q in 0..n {
            if !live[class[q]] && (0..k).any(|s| live[class[succ(q, s)]]) {
                live[class[q]] = true;
                changed = true;
            }
        }
    }
    let mut renumber: Vec<Option<StateId>> = vec![None; count];
    let mut next_id = 0;
    // number classes in order of first appearance among accessible states
    for &c in &class[..n] {
        if live[c] && renumber[c].is_none() {
            renumber[c] = Some(next_id);
            next_id += 1;
        }
    }
    let mut delta = vec![vec![None; k]; next_id];
    let mut finals = BTreeSet::new();
    for q in 0..n {
        let Some(id) = renumber[class[q]] else { continue };
        if dfa.finals.contains(&q) {
            finals.insert(id);
        }
        for s in 0..k {
            delta[id][s] = renumber[class[succ(q, s)]];
        }
    }
    Dfa {
        num_symbols: k,
        initial: dfa.initial.and_then(|q| renumber[class[q]]),
        finals,
        delta,
    }
}

/// Number of live states of the minimal DFA for the language of `nfa`.
pub fn minimal_dfa_size(nfa: &SingleTapeAutomaton) -> usize {
    minimize(&determinize(nfa)).num_states()
}
