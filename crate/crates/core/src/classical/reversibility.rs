//! Reversibility of one-way multi-head DFAs.
//!
//! Condition (1): all transitions entering a state share one move vector.
//! Condition (2): every reachable configuration has at most one transition
//! that could have produced it.
//!
//! Condition (1) is checked exactly. Condition (2) quantifies over the
//! configurations reachable on every input word, so it is checked either on
//! all words up to a length bound ([`ReversibilityMode::Bounded`]) or through
//! a syntactic criterion that is sufficient for all words
//! ([`ReversibilityMode::Syntactic`]).

use std::collections::{BTreeMap, BTreeSet};

use crate::model::{mark_word, TapeSymbol, Word};

use super::dfa::{run_1dfa_k, ClassicalConfiguration, MultiHeadDfa, Transition};

pub const DEFAULT_REVERSIBILITY_MAX_LEN: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReversibilityMode {
    /// Condition (2) over the reachable configurations of every word of
    /// length at most `max_len`.
    Bounded { max_len: usize },
    /// Condition (2) via: no two transitions entering the same state with the
    /// same move vector read the same symbol tuple. Two transitions can only
    /// both match a configuration when they read identical tuples at
    /// identical predecessor positions, so this certifies every word.
    Syntactic,
}

impl ReversibilityMode {
    pub fn describe(&self) -> String {
        match self {
            ReversibilityMode::Bounded { max_len } => {
                format!("bounded (words up to length {max_len})")
            }
            ReversibilityMode::Syntactic => "syntactic (all words)".to_string(),
        }
    }
}

/// Two transitions entering the same state with different move vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct MoveConflict {
    pub target: usize,
    pub first: Transition,
    pub second: Transition,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub word: Word,
    pub configuration: ClassicalConfiguration,
}

/// Several transitions that could all have produced one configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct PredecessorConflict {
    pub target: usize,
    pub transitions: Vec<Transition>,
    /// A reachable configuration with these predecessors; present in
    /// bounded mode only.
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReversibilityReport {
    pub mode: ReversibilityMode,
    pub move_conflicts: Vec<MoveConflict>,
    pub predecessor_conflicts: Vec<PredecessorConflict>,
}

impl ReversibilityReport {
    pub fn passed(&self) -> bool {
        self.move_conflicts.is_empty() && self.predecessor_conflicts.is_empty()
    }
}

/// Transitions `δ(q', (x_{p1−d1}, …)) = (q, d)` matching configuration `c`
/// on the marked tape `tape`.
pub fn predecessors<'a>(
    a: &'a MultiHeadDfa,
    tape: &[TapeSymbol],
    c: &ClassicalConfiguration,
) -> Vec<&'a Transition> {
    a.incoming(c.state)
        .filter(|t| {
            c.positions
                .iter()
                .zip(t.moves.bits())
                .zip(&t.read)
                .all(|((p, d), sym)| {
                    let d = usize::from(*d);
                    *p >= d && tape.get(p - d) == Some(sym)
                })
        })
        .collect()
}

/// The configuration a matching transition came from.
pub fn predecessor_configuration(
    t: &Transition,
    c: &ClassicalConfiguration,
) -> ClassicalConfiguration {
    ClassicalConfiguration {
        state: t.from,
        positions: c
            .positions
            .iter()
            .zip(t.moves.bits())
            .map(|(p, d)| p - usize::from(*d))
            .collect(),
    }
}

pub fn check_reversibility(a: &MultiHeadDfa, mode: ReversibilityMode) -> ReversibilityReport {
    let move_conflicts = move_conflicts(a);
    let predecessor_conflicts = match mode {
        ReversibilityMode::Bounded { max_len } => bounded_conflicts(a, max_len),
        ReversibilityMode::Syntactic => syntactic_conflicts(a),
    };
    ReversibilityReport {
        mode,
        move_conflicts,
        predecessor_conflicts,
    }
}

fn move_conflicts(a: &MultiHeadDfa) -> Vec<MoveConflict> {
    let mut out = Vec::new();
    for q in 0..a.state_count() {
        let incoming: Vec<&Transition> = a.incoming(q).collect();
        for (i, first) in incoming.iter().enumerate() {
            for second in &incoming[i + 1..] {
                if first.moves != second.moves {
                    out.push(MoveConflict {
                        target: q,
                        first: (*first).clone(),
                        second: (*second).clone(),
                    });
                }
            }
        }
    }
    out
}

fn syntactic_conflicts(a: &MultiHeadDfa) -> Vec<PredecessorConflict> {
    let mut groups: BTreeMap<(usize, &[bool], &[TapeSymbol]), Vec<Transition>> = BTreeMap::new();
    for t in a.transitions() {
        groups
            .entry((t.to, t.moves.bits(), &t.read))
            .or_default()
            .push(t.clone());
    }
    groups
        .into_iter()
        .filter(|(_, ts)| ts.len() > 1)
        .map(|((target, _, _), transitions)| PredecessorConflict {
            target,
            transitions,
            witness: None,
        })
        .collect()
}

fn bounded_conflicts(a: &MultiHeadDfa, max_len: usize) -> Vec<PredecessorConflict> {
    let mut out = Vec::new();
    let mut reported: BTreeSet<Vec<Transition>> = BTreeSet::new();
    for word in a.alphabet().words_up_to(max_len) {
        let tape = mark_word(&word);
        let run = run_1dfa_k(a, &word).expect("words come from the machine's alphabet");
        for c in &run.trace {
            let preds = predecessors(a, &tape, c);
            if preds.len() < 2 {
                continue;
            }
            let transitions: Vec<Transition> = preds.into_iter().cloned().collect();
            if reported.insert(transitions.clone()) {
                out.push(PredecessorConflict {
                    target: c.state,
                    transitions,
                    witness: Some(Witness {
                        word: word.clone(),
                        configuration: c.clone(),
                    }),
                });
            }
        }
    }
    out
}
