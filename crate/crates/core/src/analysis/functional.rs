//! Functionality via the input-synchronized square with output delays.
//!
//! Running two paths on the same input, the delay is what one output is ahead
//! of the other once the common prefix is cancelled. A trim automaton is
//! functional iff every co-accessible pair of the square carries a single
//! delay and every final pair carries the empty delay.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::alphabet::Word;
use crate::erase::erase_general;
use crate::error::{Error, Result};
use crate::machine::{LexTransducer, StateId, TwoTapeAutomaton, TwoTapeTransition};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Functionality {
    Functional,
    /// A shortest input with two distinct outputs.
    NotFunctional {
        input: Word,
        outputs: (Word, Word),
    },
}

impl Functionality {
    pub fn is_functional(&self) -> bool {
        matches!(self, Functionality::Functional)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Delay {
    /// Residual outputs of the first and second path; at most one nonempty.
    Ahead(Word, Word),
    /// Outputs already differ at some position.
    Diverged,
}

impl Delay {
    fn balanced() -> Self {
        Delay::Ahead(Vec::new(), Vec::new())
    }

    fn extend(&self, out1: &[usize], out2: &[usize]) -> Delay {
        let Delay::Ahead(u, v) = self else {
            return Delay::Diverged;
        };
        let a: Word = u.iter().chain(out1).copied().collect();
        let b: Word = v.iter().chain(out2).copied().collect();
        let common = a.iter().zip(&b).take_while(|(x, y)| x == y).count();
        if common < a.len() && common < b.len() {
            Delay::Diverged
        } else {
            Delay::Ahead(a[common..].to_vec(), b[common..].to_vec())
        }
    }

    fn len(&self) -> Option<usize> {
        match self {
            Delay::Ahead(u, v) => Some(u.len() + v.len()),
            Delay::Diverged => None,
        }
    }
}

type Pair = (StateId, StateId);

struct Square<'a> {
    n: &'a TwoTapeAutomaton,
    adj: Vec<Vec<&'a TwoTapeTransition>>,
    useful: BTreeSet<Pair>,
}

impl<'a> Square<'a> {
    fn new(n: &'a TwoTapeAutomaton) -> Self {
        let adj = n.adjacency();
        let mut sq = Square {
            n,
            adj,
            useful: BTreeSet::new(),
        };
        sq.useful = sq.co_accessible_pairs();
        sq
    }

    fn moves(&self, (p, q): Pair) -> impl Iterator<Item = (&'a TwoTapeTransition, &'a TwoTapeTransition)> + '_ {
        self.adj[p].iter().flat_map(move |t1| {
            self.adj[q]
                .iter()
                .filter(move |t2| t2.input == t1.input)
                .map(move |t2| (*t1, *t2))
        })
    }

    fn initial_pairs(&self) -> Vec<Pair> {
        let init = self.n.initial();
        init.iter()
            .flat_map(|&p| init.iter().map(move |&q| (p, q)))
            .filter(|pair| self.useful.contains(pair))
            .collect()
    }

    fn is_final(&self, (p, q): Pair) -> bool {
        self.n.is_final(p) && self.n.is_final(q)
    }

    fn co_accessible_pairs(&self) -> BTreeSet<Pair> {
        let init = self.n.initial();
        let mut seen: BTreeSet<Pair> = init.iter().flat_map(|&p| init.iter().map(move |&q| (p, q))).collect();
        let mut queue: VecDeque<Pair> = seen.iter().copied().collect();
        let mut preds: BTreeMap<Pair, Vec<Pair>> = BTreeMap::new();
        while let Some(pair) = queue.pop_front() {
            for (t1, t2) in self.moves(pair) {
                let next = (t1.dst, t2.dst);
                preds.entry(next).or_default().push(pair);
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        let mut useful: BTreeSet<Pair> = seen.iter().copied().filter(|&p| self.is_final(p)).collect();
        let mut stack: Vec<Pair> = useful.iter().copied().collect();
        while let Some(pair) = stack.pop() {
            for &prev in preds.get(&pair).into_iter().flatten() {
                if useful.insert(prev) {
                    stack.push(prev);
                }
            }
        }
        useful
    }

    /// Unique-delay propagation; `true` when functional.
    fn unique_delays(&self, bound: usize) -> bool {
        let mut delays: HashMap<Pair, Delay> = HashMap::new();
        let mut queue = VecDeque::new();
        for pair in self.initial_pairs() {
            delays.insert(pair, Delay::balanced());
            queue.push_back(pair);
        }
        while let Some(pair) = queue.pop_front() {
            let delay = delays[&pair].clone();
            if self.is_final(pair) && delay != Delay::balanced() {
                return false;
            }
            for (t1, t2) in self.moves(pair) {
                let next = (t1.dst, t2.dst);
                if !self.useful.contains(&next) {
                    continue;
                }
                let d = delay.extend(&t1.output, &t2.output);
                match d.len() {
                    Some(len) if len <= bound => {}
                    _ => return false,
                }
                match delays.get(&next) {
                    Some(existing) if *existing != d => return false,
                    Some(_) => {}
                    None => {
                        delays.insert(next, d);
                        queue.push_back(next);
                    }
                }
            }
        }
        true
    }

    /// Breadth-first search over (pair, delay) nodes for the shortest input
    /// ending in a final pair with unequal outputs.
    fn shortest_witness(&self) -> Option<(Word, Word, Word)> {
        type Node = (Pair, Delay);
        let mut parent: HashMap<Node, Option<(Node, &TwoTapeTransition, &TwoTapeTransition)>> = HashMap::new();
        let mut queue = VecDeque::new();
        for pair in self.initial_pairs() {
            let node = (pair, Delay::balanced());
            parent.insert(node.clone(), None);
            queue.push_back(node);
        }
        while let Some(node) = queue.pop_front() {
            if self.is_final(node.0) && node.1 != Delay::balanced() {
                let mut steps = Vec::new();
                let mut cur = &node;
                while let Some(Some((prev, t1, t2))) = parent.get(cur) {
                    steps.push((*t1, *t2));
                    cur = prev;
                }
                steps.reverse();
                let input = steps.iter().map(|(t1, _)| t1.input.expect("ε-free")).collect();
                let out1 = steps.iter().flat_map(|(t1, _)| t1.output.iter().copied()).collect();
                let out2 = steps.iter().flat_map(|(_, t2)| t2.output.iter().copied()).collect();
                return Some((input, out1, out2));
            }
            for (t1, t2) in self.moves(node.0) {
                let pair = (t1.dst, t2.dst);
                if !self.useful.contains(&pair) {
                    continue;
                }
                let next = (pair, node.1.extend(&t1.output, &t2.output));
                if !parent.contains_key(&next) {
                    parent.insert(next.clone(), Some((node.clone(), t1, t2)));
                    queue.push_back(next);
                }
            }
        }
        None
    }
}

/// Functionality of an ε-free two-tape automaton. The automaton is trimmed
/// first.
pub fn check_functional_unweighted(n: &TwoTapeAutomaton) -> Result<Functionality> {
    if !n.is_epsilon_free() {
        return Err(Error::EpsilonInput);
    }
    let trimmed = n.trim();
    let square = Square::new(&trimmed);
    let max_out = trimmed.transitions().iter().map(|t| t.output.len()).max().unwrap_or(0);
    let bound = trimmed.num_states().pow(2) * max_out;
    if square.unique_delays(bound) {
        return Ok(Functionality::Functional);
    }
    let (input, a, b) = square
        .shortest_witness()
        .expect("a non-functional automaton has a witnessing input");
    Ok(Functionality::NotFunctional { input, outputs: (a, b) })
}

/// Functionality of the min-selected relation of a lexicographic transducer.
pub fn check_functional(m: &LexTransducer) -> Functionality {
    check_functional_unweighted(&erase_general(m)).expect("general erasure is ε-free")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::{parse_fst2, parse_lexfst};

    const T1: &str =
        "lexfst v1\nW: a b\nSigma: x\nGamma: p q\nQ: s0 s1\nI: s0\nF: s1\nT: s0 x a p s1\nT: s0 x b q s1\n";

    #[test]
    fn delay_arithmetic() {
        let d = Delay::balanced().extend(&[0, 1], &[0]);
        assert_eq!(d, Delay::Ahead(vec![1], vec![]));
        assert_eq!(d.extend(&[], &[1]), Delay::balanced());
        assert_eq!(d.extend(&[], &[0]), Delay::Diverged);
        assert_eq!(Delay::Diverged.extend(&[], &[]), Delay::Diverged);
    }

    #[test]
    fn erased_t1_is_functional() {
        let m = parse_lexfst(T1).unwrap();
        assert!(check_functional_unweighted(&erase_general(&m)).unwrap().is_functional());
        assert!(check_functional(&m).is_functional());
    }

    #[test]
    fn ambiguous_outputs() {
        let n = parse_fst2("fst2 v1\nSigma: x\nGamma: p q\nQ: s t\nI: s\nF: t\nT: s x p t\nT: s x q t\n").unwrap();
        assert_eq!(
            check_functional_unweighted(&n).unwrap(),
            Functionality::NotFunctional {
                input: vec![0],
                outputs: (vec![0], vec![1])
            }
        );
        let m = parse_lexfst(&T1.replace("T: s0 x b q s1", "T: s0 x a q s1")).unwrap();
        match check_functional(&m) {
            Functionality::NotFunctional { input, .. } => assert_eq!(input, vec![0]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_language() {
        let n = parse_fst2("fst2 v1\nSigma: x\nQ: s\nI: s\nT: s x - s\n").unwrap();
        assert!(check_functional_unweighted(&n).unwrap().is_functional());
    }

    #[test]
    fn delayed_but_equal_outputs_are_functional() {
        // two paths emit "p q" in different phases
        let n = parse_fst2(
            "fst2 v1\nSigma: x\nGamma: p q\nQ: s a b f\nI: s\nF: f\n\
             T: s x p.q a\nT: a x - f\nT: s x - b\nT: b x p.q f\n",
        )
        .unwrap();
        assert!(check_functional_unweighted(&n).unwrap().is_functional());
    }

    #[test]
    fn late_divergence_witness_is_shortest() {
        let n = parse_fst2(
            "fst2 v1\nSigma: x y\nGamma: p q\nQ: s a b f\nI: s\nF: f\n\
             T: s x p a\nT: s x - b\nT: a y - f\nT: b y q f\nT: s y p f\n",
        )
        .unwrap();
        assert_eq!(
            check_functional_unweighted(&n).unwrap(),
            Functionality::NotFunctional {
                input: vec![0, 1],
                outputs: (vec![0], vec![1])
            }
        );
    }

    #[test]
    fn epsilon_input_rejected() {
        let n = parse_fst2("fst2 v1\nQ: s\nI: s\nF: s\nT: s - - s\n").unwrap();
        assert_eq!(check_functional_unweighted(&n), Err(Error::EpsilonInput));
    }
}
