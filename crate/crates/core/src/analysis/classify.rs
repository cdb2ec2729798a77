use std::collections::HashMap;

use crate::machine::{LexTransducer, TwoTapeAutomaton};

/// Syntactic properties with respect to the input tape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassReport {
    pub sequential_up_to_input: bool,
    pub epsilon_free_up_to_input: bool,
    pub deterministic_up_to_input: bool,
    pub single_initial: bool,
}

pub fn classify(n: &TwoTapeAutomaton) -> ClassReport {
    let mut fanout: HashMap<(usize, Option<usize>), usize> = HashMap::new();
    for t in n.transitions() {
        *fanout.entry((t.src, t.input)).or_default() += 1;
    }
    // every transition carries at most one input symbol
    let sequential = true;
    let epsilon_free = n.is_epsilon_free();
    let single_initial = n.initial().len() == 1;
    ClassReport {
        sequential_up_to_input: sequential,
        epsilon_free_up_to_input: epsilon_free,
        deterministic_up_to_input: sequential && epsilon_free && single_initial && fanout.values().all(|&c| c <= 1),
        single_initial,
    }
}

/// Classification of a lexicographic transducer with respect to its input
/// tape; weights and outputs together form the other tape.
pub fn classify_lex(m: &LexTransducer) -> ClassReport {
    ClassReport {
        sequential_up_to_input: true,
        epsilon_free_up_to_input: true,
        deterministic_up_to_input: m.is_deterministic(),
        single_initial: m.initial().len() == 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_fst2;

    #[test]
    fn single_state() {
        let n = parse_fst2("fst2 v1\nQ: s\nI: s\n").unwrap();
        let r = classify(&n);
        assert!(r.sequential_up_to_input && r.epsilon_free_up_to_input);
        assert!(r.deterministic_up_to_input && r.single_initial);
    }

    #[test]
    fn epsilon_input() {
        let n = parse_fst2("fst2 v1\nSigma: x\nQ: s t\nI: s\nT: s - - t\n").unwrap();
        let r = classify(&n);
        assert!(!r.epsilon_free_up_to_input);
        assert!(!r.deterministic_up_to_input);
    }

    #[test]
    fn nondeterministic_branching() {
        let n = parse_fst2("fst2 v1\nSigma: x\nQ: s t u\nI: s\nT: s x - t\nT: s x - u\n").unwrap();
        let r = classify(&n);
        assert!(r.sequential_up_to_input);
        assert!(!r.deterministic_up_to_input);
    }

    #[test]
    fn two_initial_states() {
        let n = parse_fst2("fst2 v1\nQ: s t\nI: s t\n").unwrap();
        let r = classify(&n);
        assert!(!r.single_initial && !r.deterministic_up_to_input);
    }
}
