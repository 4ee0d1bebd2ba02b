use std::collections::{BTreeSet, VecDeque};

use crate::model::{complement_strands, ComplementarityRelation, Symbol, Word};

use super::ClassicalError;

/// `q (u1 over u2) -> q'`: read the chunk `u1` on the upper strand and `u2`
/// on the lower one. Either chunk may be empty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct WkRule {
    pub from: usize,
    pub upper: Word,
    pub lower: Word,
    pub to: usize,
}

/// Nondeterministic Watson-Crick finite automaton.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalWkAutomaton {
    name: String,
    rho: ComplementarityRelation,
    states: Vec<String>,
    finals: Vec<bool>,
    initial: usize,
    rules: Vec<WkRule>,
}

impl ClassicalWkAutomaton {
    pub fn new(
        name: impl Into<String>,
        rho: ComplementarityRelation,
        states: Vec<(String, bool)>,
        initial: usize,
        rules: Vec<WkRule>,
    ) -> Result<Self, ClassicalError> {
        if states.is_empty() {
            return Err(ClassicalError::InvalidMachine(
                "the state set is empty".into(),
            ));
        }
        if initial >= states.len() {
            return Err(ClassicalError::InvalidMachine(format!(
                "initial state index {initial} is out of range"
            )));
        }
        for r in &rules {
            if r.from >= states.len() || r.to >= states.len() {
                return Err(ClassicalError::InvalidMachine(
                    "a rule refers to an undeclared state".into(),
                ));
            }
            rho.alphabet().check_word(&r.upper)?;
            rho.alphabet().check_word(&r.lower)?;
        }
        let (names, finals) = states.into_iter().unzip();
        Ok(ClassicalWkAutomaton {
            name: name.into(),
            rho,
            states: names,
            finals,
            initial,
            rules,
        })
    }

    pub fn builder(name: impl Into<String>, rho: ComplementarityRelation) -> WkBuilder {
        WkBuilder {
            name: name.into(),
            rho,
            states: Vec::new(),
            initial: None,
            rules: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rho(&self) -> &ComplementarityRelation {
        &self.rho
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state_name(&self, q: usize) -> &str {
        &self.states[q]
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn rules(&self) -> &[WkRule] {
        &self.rules
    }
}

#[derive(Debug, Clone)]
pub struct WkBuilder {
    name: String,
    rho: ComplementarityRelation,
    states: Vec<(String, bool)>,
    initial: Option<String>,
    rules: Vec<(String, String, String, String)>,
}

impl WkBuilder {
    pub fn state(mut self, name: &str, is_final: bool) -> Self {
        self.states.push((name.to_string(), is_final));
        self
    }

    pub fn initial(mut self, name: &str) -> Self {
        self.initial = Some(name.to_string());
        self
    }

    /// Chunks are parsed with [`crate::model::Alphabet::parse_word`].
    pub fn rule(mut self, from: &str, upper: &str, lower: &str, to: &str) -> Self {
        self.rules
            .push((from.into(), upper.into(), lower.into(), to.into()));
        self
    }

    pub fn build(self) -> Result<ClassicalWkAutomaton, ClassicalError> {
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
        let alphabet = self.rho.alphabet();
        let rules = self
            .rules
            .iter()
            .map(|(from, upper, lower, to)| {
                Ok(WkRule {
                    from: index(from)?,
                    upper: alphabet.parse_word(upper)?,
                    lower: alphabet.parse_word(lower)?,
                    to: index(to)?,
                })
            })
            .collect::<Result<Vec<_>, ClassicalError>>()?;
        ClassicalWkAutomaton::new(self.name, self.rho, self.states, initial, rules)
    }
}

/// True iff some rule path consumes exactly `w1` over `w2` and ends in a
/// final state. Breadth-first over (state, upper offset, lower offset); the
/// visited set makes cycles of empty-chunk rules harmless.
pub fn accepts_pair(a: &ClassicalWkAutomaton, w1: &[Symbol], w2: &[Symbol]) -> bool {
    let start = (a.initial, 0usize, 0usize);
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((q, i, j)) = queue.pop_front() {
        if a.finals[q] && i == w1.len() && j == w2.len() {
            return true;
        }
        for r in a.rules.iter().filter(|r| r.from == q) {
            if w1[i..].starts_with(&r.upper) && w2[j..].starts_with(&r.lower) {
                let next = (r.to, i + r.upper.len(), j + r.lower.len());
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
    }
    false
}

/// Accepts `w1` iff some complementary lower strand is accepted with it.
pub fn run_wk_classical(
    a: &ClassicalWkAutomaton,
    w1: &[Symbol],
    complement_guard: usize,
) -> Result<bool, ClassicalError> {
    let lowers = complement_strands(&a.rho, w1, complement_guard)?;
    Ok(lowers.iter().any(|w2| accepts_pair(a, w1, w2)))
}
