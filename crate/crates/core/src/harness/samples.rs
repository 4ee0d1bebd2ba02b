//! Sample machines, each with its expected acceptance function.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, FRAC_PI_6};
use std::fmt;
use std::sync::Arc;

use crate::classical::{
    check_reversibility, ClassicalWkAutomaton, MultiHeadDfa, ReversibilityMode,
};
use crate::embed::reversible_to_quantum;
use crate::linalg::ComplexMatrix;
use crate::model::{Alphabet, ComplementarityRelation, Symbol};
use crate::quantum::{MachineDraft, Mwkqfa, StateKind};

use super::oracles::{ab_alphabet, oracle_anbn, oracle_parity};

fn ab_identity() -> ComplementarityRelation {
    ComplementarityRelation::identity(ab_alphabet())
}

/// Unary machine whose `a` operator rotates the two live states by `theta`.
/// `p_acc(a^n) = cos²(nθ)`.
pub fn rotor(theta: f64) -> Mwkqfa {
    let rho = ComplementarityRelation::identity(Alphabet::new(["a"]).expect("valid alphabet"));
    let mut d = MachineDraft::new(format!("rotor({theta})"), rho, 1, 1);
    d.add_state("r0", StateKind::NonHalting, &[1, 1]);
    d.add_state("r1", StateKind::NonHalting, &[1, 1]);
    d.add_state("acc", StateKind::Accepting, &[0, 0]);
    d.add_state("rej", StateKind::Rejecting, &[0, 0]);
    let (s, c) = theta.sin_cos();
    let rotation = ComplexMatrix::from_real_rows(&[
        &[c, -s, 0.0, 0.0],
        &[s, c, 0.0, 0.0],
        &[0.0, 0.0, 1.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
    ]);
    let start = d.tuple(&["#"], &["#"]).expect("markers");
    d.set_operator(start, ComplexMatrix::identity(4));
    let step = d.tuple(&["a"], &["a"]).expect("declared symbol");
    d.set_operator(step, rotation);
    let end = d.tuple(&["$"], &["$"]).expect("markers");
    d.set_operator(end, ComplexMatrix::permutation(&[2, 3, 0, 1]));
    d.build().expect("well-formed sample")
}

/// One head; accepts words with an even number of `a`.
pub fn parity_dfa() -> MultiHeadDfa {
    MultiHeadDfa::builder("parity", ab_alphabet(), 1)
        .state("even", true)
        .state("odd", false)
        .initial("even")
        .transition("even", &["#"], "even", &[1])
        .transition("even", &["a"], "odd", &[1])
        .transition("odd", &["a"], "even", &[1])
        .transition("even", &["b"], "even", &[1])
        .transition("odd", &["b"], "odd", &[1])
        .build()
        .expect("valid sample")
}

/// Two heads; accepts `a^n b^n`, `n ≥ 0`. The second head first skips the
/// `a` block, then both heads advance together over `a` and `b`.
pub fn anbn_dfa() -> MultiHeadDfa {
    MultiHeadDfa::builder("anbn", ab_alphabet(), 2)
        .state("s0", false)
        .state("s1", false)
        .state("L", false)
        .state("C", false)
        .state("D", false)
        .state("acc", true)
        .initial("s0")
        .transition("s0", &["#", "#"], "s1", &[0, 1])
        .transition("s1", &["#", "a"], "s1", &[0, 1])
        .transition("s1", &["#", "b"], "L", &[1, 1])
        .transition("L", &["a", "b"], "L", &[1, 1])
        .transition("L", &["a", "$"], "C", &[1, 0])
        .transition("C", &["b", "$"], "acc", &[0, 0])
        .transition("s1", &["#", "$"], "D", &[1, 0])
        .transition("D", &["$", "$"], "acc", &[0, 0])
        .build()
        .expect("valid sample")
}

/// Classical Watson-Crick automaton for `a^n b^n`: the upper strand reads
/// the `a` block, then the `b` block in step with the lower strand's `a`
/// block, then the lower strand finishes its `b` block.
pub fn anbn_wk() -> ClassicalWkAutomaton {
    ClassicalWkAutomaton::builder("anbn-wk", ab_identity())
        .state("q0", true)
        .state("q1", false)
        .state("q2", true)
        .rule("q0", "a", "", "q0")
        .rule("q0", "b", "a", "q1")
        .rule("q1", "b", "a", "q1")
        .rule("q1", "", "b", "q2")
        .rule("q2", "", "b", "q2")
        .build()
        .expect("valid sample")
}

/// Both `q1 a` and `q0 a` enter `sink` with the same move, so the
/// configuration `(sink, 2)` on input `a` has two predecessors.
pub fn irreversible_sink_dfa() -> MultiHeadDfa {
    MultiHeadDfa::builder("irreversible-sink", ab_alphabet(), 1)
        .state("q0", false)
        .state("q1", false)
        .state("sink", true)
        .transition("q0", &["#"], "q1", &[1])
        .transition("q1", &["a"], "sink", &[1])
        .transition("q0", &["a"], "sink", &[1])
        .build()
        .expect("valid sample")
}

/// `q` is entered both moving and standing still.
pub fn move_conflict_dfa() -> MultiHeadDfa {
    MultiHeadDfa::builder("move-conflict", ab_alphabet(), 1)
        .state("s", false)
        .state("t", false)
        .state("q", true)
        .transition("s", &["#"], "t", &[1])
        .transition("t", &["a"], "q", &[1])
        .transition("t", &["b"], "q", &[0])
        .build()
        .expect("valid sample")
}

fn embed_syntactic(dfa: &MultiHeadDfa, name: &str) -> Mwkqfa {
    let report = check_reversibility(dfa, ReversibilityMode::Syntactic);
    let m = reversible_to_quantum(dfa, &report).expect("reversible sample");
    let mut draft = m.to_draft();
    draft.name = name.to_string();
    draft.build().expect("embedded sample")
}

pub fn embedded_parity() -> Mwkqfa {
    embed_syntactic(&parity_dfa(), "embedded-parity")
}

pub fn embedded_anbn() -> Mwkqfa {
    embed_syntactic(&anbn_dfa(), "embedded-anbn")
}

/// Splits `s0` into `(p+m)/√2`; on `a`, `p` and `m` both reach `acc`, with
/// amplitudes `1/2` and `−1/2`, and both reach `x` with `1/2`. The `acc`
/// amplitudes cancel, so `p_acc(a^n) = 0` for `n ≥ 1` while `p_acc(λ) = 1/2`.
pub fn interference() -> Mwkqfa {
    let rho = ComplementarityRelation::identity(Alphabet::new(["a"]).expect("valid alphabet"));
    let mut d = MachineDraft::new("interference", rho, 1, 1);
    let s0 = d.add_state("s0", StateKind::NonHalting, &[0, 0]);
    let p = d.add_state("p", StateKind::NonHalting, &[1, 1]);
    let m = d.add_state("m", StateKind::NonHalting, &[1, 1]);
    let x = d.add_state("x", StateKind::NonHalting, &[1, 1]);
    let acc = d.add_state("acc", StateKind::Accepting, &[0, 0]);
    let rej = d.add_state("rej", StateKind::Rejecting, &[0, 0]);
    let rej2 = d.add_state("rej2", StateKind::Rejecting, &[0, 0]);
    let n = d.states.len();
    let h = FRAC_1_SQRT_2;
    let column = |entries: &[(usize, f64)]| {
        let mut v = vec![0.0; n];
        for (i, a) in entries {
            v[*i] = *a;
        }
        v
    };
    let matrix = |cols: Vec<Vec<f64>>| {
        let cols: Vec<_> = cols
            .into_iter()
            .map(|c| c.into_iter().map(|v| v.into()).collect())
            .collect();
        ComplexMatrix::from_columns(&cols)
    };

    let mut start = vec![Vec::new(); n];
    start[s0] = column(&[(p, h), (m, h)]);
    start[p] = column(&[(p, h), (m, -h)]);
    start[m] = column(&[(s0, 1.0)]);
    for q in [x, acc, rej, rej2] {
        start[q] = column(&[(q, 1.0)]);
    }
    let mut step = vec![Vec::new(); n];
    step[s0] = column(&[(s0, 1.0)]);
    step[p] = column(&[(acc, h), (x, h)]);
    step[m] = column(&[(acc, -h), (x, h)]);
    step[x] = column(&[(rej2, 1.0)]);
    step[acc] = column(&[(m, 1.0)]);
    step[rej] = column(&[(rej, 1.0)]);
    step[rej2] = column(&[(p, 1.0)]);
    let mut targets = vec![0; n];
    for (from, to) in [
        (s0, s0),
        (p, acc),
        (m, rej),
        (x, rej2),
        (acc, p),
        (rej, m),
        (rej2, x),
    ] {
        targets[from] = to;
    }

    let t = d.tuple(&["#"], &["#"]).expect("markers");
    d.set_operator(t, matrix(start));
    let t = d.tuple(&["a"], &["a"]).expect("declared symbol");
    d.set_operator(t, matrix(step));
    let t = d.tuple(&["$"], &["$"]).expect("markers");
    d.set_operator(t, ComplexMatrix::permutation(&targets));
    d.build().expect("well-formed sample")
}

/// Rejects every word at the first step.
pub fn always_reject() -> Mwkqfa {
    let mut d = MachineDraft::new("always-reject", ab_identity(), 1, 1);
    d.add_state("q0", StateKind::NonHalting, &[1, 1]);
    d.add_state("rej", StateKind::Rejecting, &[0, 0]);
    let t = d.tuple(&["#"], &["#"]).expect("markers");
    d.set_operator(t, ComplexMatrix::permutation(&[1, 0]));
    d.build().expect("well-formed sample")
}

/// Never moves and never halts; every run ends on the step budget.
pub fn stationary() -> Mwkqfa {
    let mut d = MachineDraft::new("stationary", ab_identity(), 1, 1);
    d.add_state("q0", StateKind::NonHalting, &[0, 0]);
    let t = d.tuple(&["#"], &["#"]).expect("markers");
    d.set_operator(t, ComplexMatrix::identity(1));
    d.build().expect("well-formed sample")
}

#[derive(Debug, Clone)]
pub enum SampleMachine {
    Quantum(Mwkqfa),
    Dfa(MultiHeadDfa),
    Wk(ClassicalWkAutomaton),
}

impl SampleMachine {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            SampleMachine::Quantum(m) => m.alphabet(),
            SampleMachine::Dfa(d) => d.alphabet(),
            SampleMachine::Wk(a) => a.rho().alphabet(),
        }
    }
}

/// A named machine and its acceptance function: the best acceptance
/// probability for quantum machines, 0 or 1 for classical ones.
#[derive(Clone)]
pub struct Sample {
    pub name: &'static str,
    pub machine: SampleMachine,
    expected: Arc<dyn Fn(&[Symbol]) -> f64 + Send + Sync>,
}

impl Sample {
    fn new<F>(name: &'static str, machine: SampleMachine, expected: F) -> Self
    where
        F: Fn(&[Symbol]) -> f64 + Send + Sync + 'static,
    {
        Sample {
            name,
            machine,
            expected: Arc::new(expected),
        }
    }

    pub fn expected(&self, w: &[Symbol]) -> f64 {
        (self.expected)(w)
    }
}

impl fmt::Debug for Sample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Sample")
            .field("name", &self.name)
            .field("machine", &self.machine)
            .finish_non_exhaustive()
    }
}

fn indicator(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

pub fn rotor_thetas() -> [(&'static str, f64); 4] {
    [
        ("rotor-0", 0.0),
        ("rotor-pi6", FRAC_PI_6),
        ("rotor-pi4", FRAC_PI_4),
        ("rotor-pi2", FRAC_PI_2),
    ]
}

pub fn sample_library() -> Vec<Sample> {
    let mut out = Vec::new();
    for (name, theta) in rotor_thetas() {
        let mut draft = rotor(theta).to_draft();
        draft.name = name.to_string();
        let m = draft.build().expect("well-formed sample");
        out.push(Sample::new(name, SampleMachine::Quantum(m), move |w| {
            (w.len() as f64 * theta).cos().powi(2)
        }));
    }
    out.push(Sample::new(
        "parity-dfa",
        SampleMachine::Dfa(parity_dfa()),
        |w| indicator(oracle_parity(w)),
    ));
    out.push(Sample::new(
        "anbn-dfa",
        SampleMachine::Dfa(anbn_dfa()),
        |w| indicator(oracle_anbn(w)),
    ));
    out.push(Sample::new("anbn-wk", SampleMachine::Wk(anbn_wk()), |w| {
        indicator(oracle_anbn(w))
    }));
    out.push(Sample::new(
        "embedded-parity",
        SampleMachine::Quantum(embedded_parity()),
        |w| indicator(oracle_parity(w)),
    ));
    out.push(Sample::new(
        "embedded-anbn",
        SampleMachine::Quantum(embedded_anbn()),
        |w| indicator(oracle_anbn(w)),
    ));
    out.push(Sample::new(
        "interference",
        SampleMachine::Quantum(interference()),
        |w| if w.is_empty() { 0.5 } else { 0.0 },
    ));
    out.push(Sample::new(
        "always-reject",
        SampleMachine::Quantum(always_reject()),
        |_| 0.0,
    ));
    out.push(Sample::new(
        "stationary",
        SampleMachine::Quantum(stationary()),
        |_| 0.0,
    ));
    out.push(Sample::new(
        "irreversible-sink",
        SampleMachine::Dfa(irreversible_sink_dfa()),
        |w| indicator(w.first().map(|s| s.index()) == Some(0)),
    ));
    out.push(Sample::new(
        "move-conflict",
        SampleMachine::Dfa(move_conflict_dfa()),
        |w| indicator(!w.is_empty()),
    ));
    out
}
