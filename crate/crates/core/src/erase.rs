//! Weight erasure: unweighted two-tape automata recognizing the min-selected
//! relation `{(c, d) : d ∈ run(M, c).selected}` of a lexicographic transducer.
//!
//! The general construction tracks, besides the current state, an order
//! formula: how the minimal weights of all active states compare. The formula
//! after one more symbol depends only on the previous formula and on the
//! weight symbols taken, so the state space stays finite. Whenever several
//! transitions enter one target over one symbol, only those whose weight is
//! minimal under the formula survive.
//!
//! The strongly functional construction needs only the configuration, since
//! conflicting transitions always differ in their last weight symbol.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::alphabet::{SymbolId, Word};
use crate::analysis::check_strongly_functional;
use crate::error::{Error, Result};
use crate::machine::{LexTransducer, StateId, TwoTapeAutomaton, TwoTapeTransition};

/// A weak ordering of the active states by their minimal weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderFormula {
    /// Ascending weight classes; states within a class share their weight.
    pub classes: Vec<Vec<StateId>>,
    /// The lowest class carries the empty weight word.
    pub epsilon_bottom: bool,
}

impl OrderFormula {
    /// `ε = S(q1) = … = S(qn)` over the initial states.
    pub fn initial(m: &LexTransducer) -> Self {
        let states: Vec<StateId> = m.initial().iter().copied().collect();
        OrderFormula {
            classes: if states.is_empty() { vec![] } else { vec![states] },
            epsilon_bottom: true,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// The configuration `K_φ`.
    pub fn configuration(&self) -> BTreeSet<StateId> {
        self.classes.iter().flatten().copied().collect()
    }

    pub fn class_of(&self, q: StateId) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&q))
    }
}

/// Minimal `(weight symbol, source class)` pair per target state; ordering
/// these pairs lexicographically is the suffix-dominant order restricted to
/// one appended symbol.
fn entering_keys(m: &LexTransducer, phi: &OrderFormula, input: SymbolId) -> BTreeMap<StateId, (SymbolId, usize)> {
    let mut best: BTreeMap<StateId, (SymbolId, usize)> = BTreeMap::new();
    for (ci, class) in phi.classes.iter().enumerate() {
        for &q in class {
            for t in m.outgoing(q, input) {
                let key = (t.weight, ci);
                best.entry(t.dst).and_modify(|k| *k = (*k).min(key)).or_insert(key);
            }
        }
    }
    best
}

pub fn successor_formula(m: &LexTransducer, phi: &OrderFormula, input: SymbolId) -> Result<OrderFormula> {
    m.inputs().check(input, "input")?;
    Ok(successor(m, phi, input))
}

fn successor(m: &LexTransducer, phi: &OrderFormula, input: SymbolId) -> OrderFormula {
    let mut groups: BTreeMap<(SymbolId, usize), Vec<StateId>> = BTreeMap::new();
    for (target, key) in entering_keys(m, phi, input) {
        groups.entry(key).or_default().push(target);
    }
    OrderFormula {
        classes: groups.into_values().collect(),
        epsilon_bottom: false,
    }
}

/// State of the general erasure: a pair `(q, φ)` or the sink `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ErasedState {
    Pair { state: StateId, formula: usize },
    Sink,
}

/// The general erasure together with what each of its states stands for.
#[derive(Debug, Clone)]
pub struct GeneralErasure {
    pub automaton: TwoTapeAutomaton,
    /// Meaning of each automaton state, indexed by state id.
    pub states: Vec<ErasedState>,
    /// Interned order formulas referenced by [`ErasedState::Pair`].
    pub formulas: Vec<OrderFormula>,
}

struct Candidate<K> {
    src: usize,
    input: SymbolId,
    output: Word,
    dst: usize,
    group: usize,
    key: K,
}

/// Drops candidates whose key is strictly above the minimum among those
/// sharing (source group, input, target).
fn prune_conflicts<K: Ord + Copy>(candidates: Vec<Candidate<K>>) -> Vec<TwoTapeTransition> {
    let mut min: HashMap<(usize, SymbolId, usize), K> = HashMap::new();
    for c in &candidates {
        min.entry((c.group, c.input, c.dst))
            .and_modify(|k| *k = (*k).min(c.key))
            .or_insert(c.key);
    }
    candidates
        .into_iter()
        .filter(|c| min[&(c.group, c.input, c.dst)] == c.key)
        .map(|c| TwoTapeTransition {
            src: c.src,
            input: Some(c.input),
            output: c.output,
            dst: c.dst,
        })
        .collect()
}

struct Interner<T> {
    items: Vec<T>,
    index: HashMap<T, usize>,
}

impl<T: Clone + Eq + std::hash::Hash> Interner<T> {
    fn new() -> Self {
        Interner {
            items: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// Returns the id and whether the item is new.
    fn intern(&mut self, item: T) -> (usize, bool) {
        if let Some(&id) = self.index.get(&item) {
            return (id, false);
        }
        let id = self.items.len();
        self.index.insert(item.clone(), id);
        self.items.push(item);
        (id, true)
    }
}

pub fn erase_general(m: &LexTransducer) -> TwoTapeAutomaton {
    erase_general_detailed(m).automaton
}

pub fn erase_general_detailed(m: &LexTransducer) -> GeneralErasure {
    const SINK: usize = 0;
    let mut formulas = Interner::new();
    let mut states = Interner::new();
    states.intern(ErasedState::Sink);

    let mut initial = BTreeSet::new();
    let mut candidates = Vec::new();
    let mut queue = VecDeque::new();

    let start = OrderFormula::initial(m);
    if !start.is_empty() {
        let (phi, _) = formulas.intern(start.clone());
        for &q in m.initial() {
            initial.insert(states.intern(ErasedState::Pair { state: q, formula: phi }).0);
        }
        queue.push_back(phi);
    }
    if m.initial().iter().any(|&q| m.is_final(q)) {
        initial.insert(SINK);
    }

    while let Some(phi_id) = queue.pop_front() {
        let phi: OrderFormula = formulas.items[phi_id].clone();
        for input in 0..m.inputs().len() {
            let next = successor(m, &phi, input);
            if next.is_empty() {
                continue;
            }
            let (next_id, fresh) = formulas.intern(next);
            if fresh {
                queue.push_back(next_id);
            }
            for (ci, class) in phi.classes.iter().enumerate() {
                for &q1 in class {
                    let src = states
                        .intern(ErasedState::Pair {
                            state: q1,
                            formula: phi_id,
                        })
                        .0;
                    for t in m.outgoing(q1, input) {
                        let dst = states
                            .intern(ErasedState::Pair {
                                state: t.dst,
                                formula: next_id,
                            })
                            .0;
                        let key = (t.weight, ci);
                        let mut targets = vec![dst];
                        if m.is_final(t.dst) {
                            targets.push(SINK);
                        }
                        for dst in targets {
                            candidates.push(Candidate {
                                src,
                                input,
                                output: t.output.clone(),
                                dst,
                                group: phi_id,
                                key,
                            });
                        }
                    }
                }
            }
        }
    }

    let names = states
        .items
        .iter()
        .map(|s| match s {
            ErasedState::Sink => "f".to_string(),
            ErasedState::Pair { state, formula } => format!("{}@{}", m.state_name(*state), formula),
        })
        .collect();
    let raw = TwoTapeAutomaton::new(
        m.inputs().clone(),
        m.outputs().clone(),
        names,
        initial,
        BTreeSet::from([SINK]),
        prune_conflicts(candidates),
    )
    .expect("erasure emits only declared states and symbols");

    let mut keep = raw.useful_states();
    keep.insert(SINK);
    GeneralErasure {
        automaton: raw.restrict(&keep),
        states: keep.iter().map(|&i| states.items[i]).collect(),
        formulas: formulas.items,
    }
}

/// Erasure for strongly functional machines over `(configuration, state)`
/// pairs.
pub fn erase_strong(m: &LexTransducer) -> Result<TwoTapeAutomaton> {
    check_strongly_functional(m).map_err(Error::NotStronglyFunctional)?;

    let mut configs: Interner<BTreeSet<StateId>> = Interner::new();
    let mut states: Interner<(usize, StateId)> = Interner::new();
    let mut initial = BTreeSet::new();
    let mut candidates = Vec::new();
    let mut queue = VecDeque::new();

    if !m.initial().is_empty() {
        let (k0, _) = configs.intern(m.initial().clone());
        for &q in m.initial() {
            initial.insert(states.intern((k0, q)).0);
        }
        queue.push_back(k0);
    }

    while let Some(k_id) = queue.pop_front() {
        let config = configs.items[k_id].clone();
        for input in 0..m.inputs().len() {
            let image = m.image(&config, input);
            if image.is_empty() {
                continue;
            }
            let (next_id, fresh) = configs.intern(image);
            if fresh {
                queue.push_back(next_id);
            }
            for &q1 in &config {
                let src = states.intern((k_id, q1)).0;
                for t in m.outgoing(q1, input) {
                    candidates.push(Candidate {
                        src,
                        input,
                        output: t.output.clone(),
                        dst: states.intern((next_id, t.dst)).0,
                        group: k_id,
                        key: t.weight,
                    });
                }
            }
        }
    }

    let finals = states
        .items
        .iter()
        .enumerate()
        .filter(|(_, (_, q))| m.is_final(*q))
        .map(|(i, _)| i)
        .collect();
    let names = states
        .items
        .iter()
        .map(|(k, q)| format!("{}@{}", m.state_name(*q), k))
        .collect();
    let raw = TwoTapeAutomaton::new(
        m.inputs().clone(),
        m.outputs().clone(),
        names,
        initial,
        finals,
        prune_conflicts(candidates),
    )
    .expect("erasure emits only declared states and symbols");
    Ok(raw.trim())
}
