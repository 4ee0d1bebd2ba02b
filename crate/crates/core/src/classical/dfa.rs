use std::collections::{BTreeMap, HashSet};

use crate::model::{mark_word, Alphabet, ModelError, MoveVector, Symbol, TapeSymbol, Word};

use super::ClassicalError;

/// Upper bound on the length of a recorded trace.
pub const DEFAULT_TRACE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub from: usize,
    pub read: Vec<TapeSymbol>,
    pub to: usize,
    pub moves: MoveVector,
}

/// One-way deterministic k-head finite automaton over `#w$`.
///
/// The transition function is partial; the machine halts as soon as no
/// transition applies and accepts iff it halts in an accepting state.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiHeadDfa {
    name: String,
    alphabet: Alphabet,
    heads: usize,
    states: Vec<String>,
    accepting: Vec<bool>,
    initial: usize,
    transitions: BTreeMap<(usize, Vec<TapeSymbol>), Transition>,
}

impl MultiHeadDfa {
    pub fn new(
        name: impl Into<String>,
        alphabet: Alphabet,
        heads: usize,
        states: Vec<(String, bool)>,
        initial: usize,
        transitions: Vec<Transition>,
    ) -> Result<Self, ClassicalError> {
        let invalid = |msg: String| Err(ClassicalError::InvalidMachine(msg));
        if heads == 0 {
            return invalid("a machine needs at least one head".into());
        }
        if states.is_empty() {
            return invalid("the state set is empty".into());
        }
        for (i, (s, _)) in states.iter().enumerate() {
            if states[..i].iter().any(|(t, _)| t == s) {
                return invalid(format!("state {s:?} is declared twice"));
            }
        }
        if initial >= states.len() {
            return invalid(format!("initial state index {initial} is out of range"));
        }
        let mut table = BTreeMap::new();
        for t in transitions {
            if t.from >= states.len() || t.to >= states.len() {
                return invalid("a transition refers to an undeclared state".into());
            }
            if t.read.len() != heads || t.moves.len() != heads {
                return invalid(format!(
                    "a transition from {:?} does not match the head count {heads}",
                    states[t.from].0
                ));
            }
            for s in &t.read {
                if let TapeSymbol::Sym(x) = s {
                    alphabet.check_word(&[*x])?;
                }
            }
            if let Some(head) = t
                .read
                .iter()
                .zip(t.moves.bits())
                .position(|(s, d)| *s == TapeSymbol::Right && *d)
            {
                return Err(ClassicalError::MoveOffRightMarker {
                    state: states[t.from].0.clone(),
                    head,
                });
            }
            let key = (t.from, t.read.clone());
            if table.contains_key(&key) {
                return Err(ClassicalError::Nondeterministic {
                    state: states[t.from].0.clone(),
                });
            }
            table.insert(key, t);
        }
        let (names, accepting) = states.into_iter().unzip();
        Ok(MultiHeadDfa {
            name: name.into(),
            alphabet,
            heads,
            states: names,
            accepting,
            initial,
            transitions: table,
        })
    }

    pub fn builder(name: impl Into<String>, alphabet: Alphabet, heads: usize) -> DfaBuilder {
        DfaBuilder {
            name: name.into(),
            alphabet,
            heads,
            states: Vec::new(),
            initial: None,
            transitions: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn heads(&self) -> usize {
        self.heads
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state_name(&self, q: usize) -> &str {
        &self.states[q]
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn transition(&self, q: usize, read: &[TapeSymbol]) -> Option<&Transition> {
        self.transitions.get(&(q, read.to_vec()))
    }

    /// Transitions ordered by source state, then by the symbols read.
    pub fn transitions(&self) -> impl Iterator<Item = &Transition> {
        self.transitions.values()
    }

    /// Transitions entering `q`.
    pub fn incoming(&self, q: usize) -> impl Iterator<Item = &Transition> {
        self.transitions.values().filter(move |t| t.to == q)
    }

    /// `(state, symbol)` pairs over input symbols with no transition, for
    /// single-head machines. Missing end-marker transitions are not listed.
    pub fn undefined_input_slots(&self) -> Vec<(usize, Symbol)> {
        if self.heads != 1 {
            return Vec::new();
        }
        let mut out = Vec::new();
        for q in 0..self.states.len() {
            for a in self.alphabet.symbols() {
                if self.transition(q, &[TapeSymbol::Sym(a)]).is_none() {
                    out.push((q, a));
                }
            }
        }
        out
    }

    /// Describes a transition as `q (a,b) -> q' (1,0)`.
    pub fn render_transition(&self, t: &Transition) -> String {
        let read: Vec<&str> = t.read.iter().map(|s| self.alphabet.tape_name(*s)).collect();
        let moves: Vec<&str> = t
            .moves
            .bits()
            .iter()
            .map(|d| if *d { "1" } else { "0" })
            .collect();
        format!(
            "{} ({}) -> {} ({})",
            self.states[t.from],
            read.join(","),
            self.states[t.to],
            moves.join(",")
        )
    }
}

/// Name-based construction of a [`MultiHeadDfa`]; errors surface in
/// [`DfaBuilder::build`].
#[derive(Debug, Clone)]
pub struct DfaBuilder {
    name: String,
    alphabet: Alphabet,
    heads: usize,
    states: Vec<(String, bool)>,
    initial: Option<String>,
    transitions: Vec<(String, Vec<String>, String, Vec<u8>)>,
}

impl DfaBuilder {
    pub fn state(mut self, name: &str, accepting: bool) -> Self {
        self.states.push((name.to_string(), accepting));
        self
    }

    pub fn initial(mut self, name: &str) -> Self {
        self.initial = Some(name.to_string());
        self
    }

    pub fn transition(mut self, from: &str, read: &[&str], to: &str, moves: &[u8]) -> Self {
        self.transitions.push((
            from.to_string(),
            read.iter().map(|s| s.to_string()).collect(),
            to.to_string(),
            moves.to_vec(),
        ));
        self
    }

    pub fn build(self) -> Result<MultiHeadDfa, ClassicalError> {
        let index = |name: &str| {
            self.states
                .iter()
                .position(|(s, _)| s == name)
                .ok_or_else(|| ClassicalError::UnknownState(name.to_string()))
        };
        let initial = match &self.initial {
            Some(name) => index(name)?,
            None => 0,
        };
        let mut transitions = Vec::with_capacity(self.transitions.len());
        for (from, read, to, moves) in &self.transitions {
            let read = read
                .iter()
                .map(|s| {
                    self.alphabet
                        .tape_symbol(s)
                        .ok_or_else(|| ClassicalError::Model(ModelError::UnknownSymbol(s.clone())))
                })
                .collect::<Result<Vec<_>, _>>()?;
            transitions.push(Transition {
                from: index(from)?,
                read,
                to: index(to)?,
                moves: MoveVector::from_digits(moves),
            });
        }
        MultiHeadDfa::new(
            self.name,
            self.alphabet,
            self.heads,
            self.states,
            initial,
            transitions,
        )
    }
}

/// A state and head positions; the word is implicit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassicalConfiguration {
    pub state: usize,
    pub positions: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DfaVerdict {
    Accepted,
    Rejected,
    /// The machine revisited a configuration or hit the trace cap.
    NonHalting,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DfaRun {
    pub word: Word,
    pub verdict: DfaVerdict,
    /// Every configuration visited, starting with `(q0, (0,…,0))`.
    pub trace: Vec<ClassicalConfiguration>,
}

impl DfaRun {
    pub fn accepted(&self) -> bool {
        self.verdict == DfaVerdict::Accepted
    }
}

pub fn run_1dfa_k(a: &MultiHeadDfa, w: &[Symbol]) -> Result<DfaRun, ClassicalError> {
    run_1dfa_k_capped(a, w, DEFAULT_TRACE_CAP)
}

pub fn run_1dfa_k_capped(
    a: &MultiHeadDfa,
    w: &[Symbol],
    trace_cap: usize,
) -> Result<DfaRun, ClassicalError> {
    a.alphabet.check_word(w)?;
    let tape = mark_word(w);
    let mut current = ClassicalConfiguration {
        state: a.initial,
        positions: vec![0; a.heads],
    };
    let mut seen = HashSet::new();
    let mut trace = Vec::new();
    let verdict = loop {
        if !seen.insert(current.clone()) || trace.len() >= trace_cap {
            break DfaVerdict::NonHalting;
        }
        trace.push(current.clone());
        let read: Vec<TapeSymbol> = current.positions.iter().map(|p| tape[*p]).collect();
        match a.transitions.get(&(current.state, read)) {
            Some(t) => {
                current = ClassicalConfiguration {
                    state: t.to,
                    positions: current
                        .positions
                        .iter()
                        .zip(t.moves.bits())
                        .map(|(p, d)| p + usize::from(*d))
                        .collect(),
                };
            }
            None if a.accepting[current.state] => break DfaVerdict::Accepted,
            None => break DfaVerdict::Rejected,
        }
    };
    Ok(DfaRun {
        word: w.to_vec(),
        verdict,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::samples::{anbn_dfa, parity_dfa};

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    #[test]
    fn no_transitions_accepting_start() {
        let m = MultiHeadDfa::builder("all", ab(), 2)
            .state("q0", true)
            .build()
            .unwrap();
        for text in ["", "ab", "bbb"] {
            let w = ab().parse_word(text).unwrap();
            let r = run_1dfa_k(&m, &w).unwrap();
            assert!(r.accepted());
            assert_eq!(r.trace.len(), 1);
        }
    }

    #[test]
    fn empty_word_starts_on_left_markers() {
        let m = MultiHeadDfa::builder("probe", ab(), 2)
            .state("q0", false)
            .state("seen", true)
            .transition("q0", &["#", "#"], "seen", &[0, 0])
            .build()
            .unwrap();
        assert!(run_1dfa_k(&m, &[]).unwrap().accepted());
    }

    #[test]
    fn anbn_walk() {
        let m = anbn_dfa();
        let a = m.alphabet().clone();
        let accepted = |t: &str| {
            run_1dfa_k(&m, &a.parse_word(t).unwrap())
                .unwrap()
                .accepted()
        };
        assert!(accepted("aabb"));
        assert!(accepted("ab"));
        assert!(accepted(""));
        assert!(!accepted("aab"));
        assert!(!accepted("abb"));
        assert!(!accepted("abab"));
        assert!(!accepted("ba"));
        assert!(!accepted("a"));
    }

    #[test]
    fn parity_walk() {
        let m = parity_dfa();
        let a = m.alphabet().clone();
        let r = run_1dfa_k(&m, &a.parse_word("aba").unwrap()).unwrap();
        assert!(r.accepted());
        assert_eq!(r.trace.len(), 5);
        assert!(!run_1dfa_k(&m, &a.parse_word("ab").unwrap())
            .unwrap()
            .accepted());
    }

    #[test]
    fn trace_steps_follow_the_transitions() {
        let m = anbn_dfa();
        let w = m.alphabet().parse_word("aaabbb").unwrap();
        let tape = mark_word(&w);
        let r = run_1dfa_k(&m, &w).unwrap();
        for pair in r.trace.windows(2) {
            let read: Vec<TapeSymbol> = pair[0].positions.iter().map(|p| tape[*p]).collect();
            let t = m.transition(pair[0].state, &read).expect("defined");
            assert_eq!(t.to, pair[1].state);
            for ((p, q), d) in pair[0]
                .positions
                .iter()
                .zip(&pair[1].positions)
                .zip(t.moves.bits())
            {
                assert_eq!(*q, p + usize::from(*d));
            }
        }
    }

    #[test]
    fn stationary_cycles_are_non_halting() {
        let m = MultiHeadDfa::builder("spin", ab(), 1)
            .state("q0", true)
            .state("q1", true)
            .transition("q0", &["#"], "q1", &[0])
            .transition("q1", &["#"], "q0", &[0])
            .build()
            .unwrap();
        let r = run_1dfa_k(&m, &[]).unwrap();
        assert_eq!(r.verdict, DfaVerdict::NonHalting);
        assert_eq!(r.trace.len(), 2);
        let capped = run_1dfa_k_capped(&m, &[], 1).unwrap();
        assert_eq!(capped.verdict, DfaVerdict::NonHalting);
    }

    #[test]
    fn validation_errors() {
        let moved_off = MultiHeadDfa::builder("bad", ab(), 1)
            .state("q0", false)
            .transition("q0", &["$"], "q0", &[1])
            .build();
        assert!(matches!(
            moved_off,
            Err(ClassicalError::MoveOffRightMarker { head: 0, .. })
        ));
        let dup = MultiHeadDfa::builder("dup", ab(), 1)
            .state("q0", false)
            .state("q1", false)
            .transition("q0", &["a"], "q0", &[1])
            .transition("q0", &["a"], "q1", &[1])
            .build();
        assert!(matches!(dup, Err(ClassicalError::Nondeterministic { .. })));
        let unknown = MultiHeadDfa::builder("u", ab(), 1)
            .state("q0", false)
            .transition("q0", &["a"], "q9", &[1])
            .build();
        assert_eq!(
            unknown.unwrap_err(),
            ClassicalError::UnknownState("q9".into())
        );
        let arity = MultiHeadDfa::builder("arity", ab(), 2)
            .state("q0", false)
            .transition("q0", &["a"], "q0", &[1])
            .build();
        assert!(matches!(arity, Err(ClassicalError::InvalidMachine(_))));
    }

    #[test]
    fn undefined_slots_of_parity() {
        let m = parity_dfa();
        assert!(m.undefined_input_slots().is_empty());
        let partial = MultiHeadDfa::builder("p", ab(), 1)
            .state("q0", true)
            .transition("q0", &["a"], "q0", &[1])
            .build()
            .unwrap();
        assert_eq!(partial.undefined_input_slots().len(), 1);
    }
}
