//! Step and run semantics.
//!
//! One step applies the operator selected by the symbols under the heads to
//! every live configuration, moves the heads of each branch according to the
//! target state's move vector, and then measures: amplitude on accepting or
//! rejecting states is removed and added to the accumulated halting
//! probabilities. The live vector is never renormalized.
//!
//! A move that would carry a head past `$` is governed by [`HeadOverrun`].
//! Under the default, [`HeadOverrun::Reject`], the branch lands on a virtual
//! cell beyond `$`; amplitudes meeting there are summed like any others and
//! the result is measured as rejection, unless the target state is itself
//! halting. Each step is then an isometry on configuration space, so
//! `p_acc + p_rej + live mass` stays at 1. [`HeadOverrun::Clamp`] holds the
//! head on `$` instead; two branches can then merge into one configuration
//! and total probability drifts.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::linalg::ZERO;
use crate::model::{make_wk_tape, DoubleTape, Symbol, TapeSymbol};

use super::machine::{Mwkqfa, StateKind, SymbolTuple, UnmentionedTuples};
use super::EngineError;

pub const DEFAULT_MASS_EPSILON: f64 = 1e-12;

/// Machine state plus the position of every head. Position 0 holds `#`,
/// position `|w|+1` holds `$`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    pub state: usize,
    pub upper: Vec<usize>,
    pub lower: Vec<usize>,
}

impl Configuration {
    pub fn initial(m: &Mwkqfa) -> Self {
        Configuration {
            state: m.initial(),
            upper: vec![0; m.upper_heads()],
            lower: vec![0; m.lower_heads()],
        }
    }
}

/// Live amplitudes over configurations together with the probability
/// already measured as accept or reject.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Superposition {
    amplitudes: BTreeMap<Configuration, Complex64>,
    p_acc: f64,
    p_rej: f64,
}

impl Superposition {
    /// Amplitude 1 on `q0` with every head on `#`.
    pub fn initial(m: &Mwkqfa) -> Self {
        let mut amplitudes = BTreeMap::new();
        amplitudes.insert(Configuration::initial(m), Complex64::new(1.0, 0.0));
        Superposition {
            amplitudes,
            p_acc: 0.0,
            p_rej: 0.0,
        }
    }

    pub fn from_parts(
        amplitudes: BTreeMap<Configuration, Complex64>,
        p_acc: f64,
        p_rej: f64,
    ) -> Self {
        Superposition {
            amplitudes,
            p_acc,
            p_rej,
        }
    }

    /// Live configurations in (state, upper, lower) order.
    pub fn amplitudes(&self) -> &BTreeMap<Configuration, Complex64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, c: &Configuration) -> Complex64 {
        self.amplitudes.get(c).copied().unwrap_or(ZERO)
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    /// Squared norm of the live part.
    pub fn live_mass(&self) -> f64 {
        // A fold from +0.0: `sum` of nothing is -0.0.
        self.amplitudes
            .values()
            .map(Complex64::norm_sqr)
            .fold(0.0, |a, b| a + b)
    }

    pub fn p_acc(&self) -> f64 {
        self.p_acc
    }

    pub fn p_rej(&self) -> f64 {
        self.p_rej
    }

    /// `p_acc + p_rej + live mass`; 1 for a well-formed machine.
    pub fn total_probability(&self) -> f64 {
        self.p_acc + self.p_rej + self.live_mass()
    }
}

/// Symbols under the heads of `c`: the upper heads first, then the lower ones.
///
/// # Panics
///
/// If a head lies outside its strand. Configurations produced by the engine
/// never do.
pub fn read_tuple(m: &Mwkqfa, tape: &DoubleTape, c: &Configuration) -> SymbolTuple {
    debug_assert_eq!(c.upper.len(), m.upper_heads());
    debug_assert_eq!(c.lower.len(), m.lower_heads());
    let read = |strand: &[TapeSymbol], heads: &[usize]| -> Vec<TapeSymbol> {
        heads
            .iter()
            .map(|p| {
                *strand.get(*p).unwrap_or_else(|| {
                    panic!("head at {p} is off a strand of length {}", strand.len())
                })
            })
            .collect()
    };
    SymbolTuple::new(read(tape.upper(), &c.upper), read(tape.lower(), &c.lower))
}

/// What happens to a head told to move while it is on `$`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HeadOverrun {
    /// The branch moves onto a virtual cell past `$` and is measured as
    /// rejection.
    #[default]
    Reject,
    /// The head stays on `$`.
    Clamp,
}

impl HeadOverrun {
    pub fn as_str(self) -> &'static str {
        match self {
            HeadOverrun::Reject => "reject",
            HeadOverrun::Clamp => "clamp",
        }
    }
}

/// Advances `heads` by `moves`. With `clamp`, a head already on `end` stays
/// there; otherwise it may reach `end + 1`.
fn advance(heads: &[usize], moves: &[bool], end: usize, clamp: bool) -> Vec<usize> {
    heads
        .iter()
        .zip(moves)
        .map(|(p, d)| {
            if *d && !(clamp && *p >= end) {
                p + 1
            } else {
                *p
            }
        })
        .collect()
}

/// One unitary stage followed by one measurement stage.
pub fn evolve_step(
    m: &Mwkqfa,
    tape: &DoubleTape,
    s: &Superposition,
    overrun: HeadOverrun,
) -> Result<Superposition, EngineError> {
    let clamp = overrun == HeadOverrun::Clamp;
    let k1 = m.upper_heads();
    let upper_end = tape.upper_end();
    let lower_end = tape.lower_end();
    let mut next: BTreeMap<Configuration, Complex64> = BTreeMap::new();
    let mut p_rej = s.p_rej;
    let mut p_acc = s.p_acc;

    for (c, alpha) in &s.amplitudes {
        if *alpha == ZERO {
            continue;
        }
        let tuple = read_tuple(m, tape, c);
        let Some(op) = m.sparse_operator(&tuple) else {
            match m.unmentioned() {
                // The implicit sink of each state is distinct and stationary,
                // so no two branches can meet there: its mass is final.
                UnmentionedTuples::DefaultReject => {
                    p_rej += alpha.norm_sqr();
                    continue;
                }
                UnmentionedTuples::Error => {
                    return Err(EngineError::MissingOperator {
                        tuple: tuple.render(m.alphabet()),
                    });
                }
            }
        };
        for (target, u) in &op.images[c.state] {
            let moves = m.moves(*target).bits();
            let successor = Configuration {
                state: *target,
                upper: advance(&c.upper, &moves[..k1], upper_end, clamp),
                lower: advance(&c.lower, &moves[k1..], lower_end, clamp),
            };
            *next.entry(successor).or_insert(ZERO) += alpha * u;
        }
    }

    let mut amplitudes = BTreeMap::new();
    for (c, amp) in next {
        match m.kind(c.state) {
            StateKind::Accepting => p_acc += amp.norm_sqr(),
            StateKind::Rejecting => p_rej += amp.norm_sqr(),
            StateKind::NonHalting
                if c.upper.iter().any(|p| *p > upper_end)
                    || c.lower.iter().any(|p| *p > lower_end) =>
            {
                p_rej += amp.norm_sqr()
            }
            StateKind::NonHalting => {
                if amp != ZERO {
                    amplitudes.insert(c, amp);
                }
            }
        }
    }
    Ok(Superposition {
        amplitudes,
        p_acc,
        p_rej,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunParams {
    /// `None` selects [`default_step_budget`].
    pub step_budget: Option<usize>,
    pub mass_epsilon: f64,
    pub overrun: HeadOverrun,
}

impl Default for RunParams {
    fn default() -> Self {
        RunParams {
            step_budget: None,
            mass_epsilon: DEFAULT_MASS_EPSILON,
            overrun: HeadOverrun::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HaltReason {
    MassExhausted,
    StepBudget,
    NoLiveConfigurations,
}

impl HaltReason {
    pub fn as_str(self) -> &'static str {
        match self {
            HaltReason::MassExhausted => "mass-exhausted",
            HaltReason::StepBudget => "step-budget",
            HaltReason::NoLiveConfigurations => "no-live-configurations",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunOutcome {
    pub p_acc: f64,
    pub p_rej: f64,
    /// Live mass left when the run stopped.
    pub p_residual: f64,
    pub steps: usize,
    pub halt_reason: HaltReason,
    /// Largest `|p_acc + p_rej + live mass − 1|` seen at any step boundary.
    pub conservation_error: f64,
}

/// One more than the number of configurations: `|Q|·(n1+2)^k1·(n2+2)^k2 + 1`,
/// saturating.
pub fn default_step_budget(m: &Mwkqfa, upper_len: usize, lower_len: usize) -> usize {
    let cells = |len: usize, heads: usize| (len as u128 + 2).saturating_pow(heads as u32);
    let configurations = (m.state_count() as u128)
        .saturating_mul(cells(upper_len, m.upper_heads()))
        .saturating_mul(cells(lower_len, m.lower_heads()));
    usize::try_from(configurations.saturating_add(1)).unwrap_or(usize::MAX)
}

/// Runs `m` on `w1` over `w2`.
pub fn run(
    m: &Mwkqfa,
    w1: &[Symbol],
    w2: &[Symbol],
    params: RunParams,
) -> Result<RunOutcome, EngineError> {
    run_observed(m, w1, w2, params, |_, _| {})
}

/// Like [`run`], calling `observer` with the step number and superposition
/// after every step.
pub fn run_observed<F>(
    m: &Mwkqfa,
    w1: &[Symbol],
    w2: &[Symbol],
    params: RunParams,
    mut observer: F,
) -> Result<RunOutcome, EngineError>
where
    F: FnMut(usize, &Superposition),
{
    let tape = make_wk_tape(m.rho(), w1, w2)?;
    let budget = params
        .step_budget
        .unwrap_or_else(|| default_step_budget(m, w1.len(), w2.len()));
    if budget == 0 {
        return Err(EngineError::InvalidParameter(
            "the step budget must be at least 1".into(),
        ));
    }
    if !(params.mass_epsilon >= 0.0) {
        return Err(EngineError::InvalidParameter(format!(
            "mass epsilon must be non-negative, got {}",
            params.mass_epsilon
        )));
    }

    let mut state = Superposition::initial(m);
    let mut steps = 0;
    let mut conservation_error: f64 = 0.0;
    let halt_reason = loop {
        state = evolve_step(m, &tape, &state, params.overrun)?;
        steps += 1;
        conservation_error = conservation_error.max((state.total_probability() - 1.0).abs());
        observer(steps, &state);
        if state.is_empty() {
            break HaltReason::NoLiveConfigurations;
        }
        if state.live_mass() < params.mass_epsilon {
            break HaltReason::MassExhausted;
        }
        if steps >= budget {
            break HaltReason::StepBudget;
        }
    };
    Ok(RunOutcome {
        p_acc: state.p_acc(),
        p_rej: state.p_rej(),
        p_residual: state.live_mass(),
        steps,
        halt_reason,
        conservation_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;
    use crate::model::{Alphabet, ComplementarityRelation};
    use crate::quantum::machine::MachineDraft;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn ab_identity() -> ComplementarityRelation {
        ComplementarityRelation::identity(Alphabet::new(["a", "b"]).unwrap())
    }

    fn word(m: &Mwkqfa, text: &str) -> Vec<Symbol> {
        m.alphabet().parse_word(text).unwrap()
    }

    fn stationary() -> Mwkqfa {
        let mut d = MachineDraft::new("stationary", ab_identity(), 1, 1);
        d.add_state("q0", StateKind::NonHalting, &[0, 0]);
        let t = d.tuple(&["#"], &["#"]).unwrap();
        d.set_operator(t, ComplexMatrix::identity(1));
        d.build().unwrap()
    }

    fn split() -> Mwkqfa {
        let mut d = MachineDraft::new("split", ab_identity(), 1, 1);
        d.add_state("q0", StateKind::NonHalting, &[1, 1]);
        d.add_state("qa", StateKind::Accepting, &[0, 0]);
        d.add_state("qr", StateKind::Rejecting, &[0, 0]);
        let s = FRAC_1_SQRT_2;
        let t = d.tuple(&["#"], &["#"]).unwrap();
        d.set_operator(
            t,
            ComplexMatrix::from_real_rows(&[&[0.0, s, s], &[s, 0.5, -0.5], &[s, -0.5, 0.5]]),
        );
        d.build().unwrap()
    }

    #[test]
    fn read_tuple_indexes_marked_strands() {
        let rho = ab_identity();
        let mut d = MachineDraft::new("k", rho.clone(), 2, 1);
        d.add_state("q0", StateKind::NonHalting, &[0, 0, 0]);
        let m2 = d.build().unwrap();
        let ab = m2.alphabet().parse_word("ab").unwrap();
        let tape = make_wk_tape(&rho, &ab, &ab).unwrap();
        let c = Configuration {
            state: 0,
            upper: vec![1, 2],
            lower: vec![0],
        };
        assert_eq!(read_tuple(&m2, &tape, &c).render(m2.alphabet()), "a,b|#");

        let m = stationary();
        let c = Configuration {
            state: 0,
            upper: vec![0],
            lower: vec![0],
        };
        assert_eq!(read_tuple(&m, &tape, &c).render(m.alphabet()), "#|#");
        let c = Configuration {
            state: 0,
            upper: vec![3],
            lower: vec![1],
        };
        assert_eq!(read_tuple(&m, &tape, &c).render(m.alphabet()), "$|a");
    }

    #[test]
    #[should_panic(expected = "off a strand")]
    fn read_tuple_out_of_bounds_panics() {
        let m = stationary();
        let tape = make_wk_tape(m.rho(), &[], &[]).unwrap();
        let c = Configuration {
            state: 0,
            upper: vec![2],
            lower: vec![0],
        };
        read_tuple(&m, &tape, &c);
    }

    #[test]
    fn identity_step_is_a_fixed_point() {
        let m = stationary();
        let tape = make_wk_tape(m.rho(), &word(&m, "ab"), &word(&m, "ab")).unwrap();
        let s0 = Superposition::initial(&m);
        let s1 = evolve_step(&m, &tape, &s0, HeadOverrun::Reject).unwrap();
        assert_eq!(s0, s1);
        assert_eq!((s1.p_acc(), s1.p_rej()), (0.0, 0.0));
    }

    #[test]
    fn even_split_measures_half_and_half() {
        let m = split();
        let tape = make_wk_tape(m.rho(), &[], &[]).unwrap();
        let s1 = evolve_step(&m, &tape, &Superposition::initial(&m), HeadOverrun::Reject).unwrap();
        assert!((s1.p_acc() - 0.5).abs() < 1e-15);
        assert!((s1.p_rej() - 0.5).abs() < 1e-15);
        assert!(s1.is_empty());
    }

    #[test]
    fn zero_amplitudes_spawn_nothing() {
        let m = split();
        let tape = make_wk_tape(m.rho(), &[], &[]).unwrap();
        let mut amps = BTreeMap::new();
        amps.insert(Configuration::initial(&m), ZERO);
        let s = Superposition::from_parts(amps, 0.0, 0.0);
        let next = evolve_step(&m, &tape, &s, HeadOverrun::Reject).unwrap();
        assert!(next.is_empty());
        assert_eq!((next.p_acc(), next.p_rej()), (0.0, 0.0));
    }

    #[test]
    fn unmentioned_tuple_policies() {
        let mut d = split().to_draft();
        d.operators.clear();
        let m = d.clone().build().unwrap();
        let out = run(&m, &[], &[], RunParams::default()).unwrap();
        assert_eq!(out.p_rej, 1.0);
        assert_eq!(out.steps, 1);

        d.unmentioned = UnmentionedTuples::Error;
        let strict = d.build().unwrap();
        let err = run(&strict, &[], &[], RunParams::default()).unwrap_err();
        assert_eq!(
            err,
            EngineError::MissingOperator {
                tuple: "#|#".into()
            }
        );
    }

    #[test]
    fn immediate_accept() {
        let mut d = MachineDraft::new("acc", ab_identity(), 1, 1);
        d.add_state("q0", StateKind::NonHalting, &[0, 0]);
        d.add_state("qa", StateKind::Accepting, &[0, 0]);
        let t = d.tuple(&["#"], &["#"]).unwrap();
        d.set_operator(t, ComplexMatrix::permutation(&[1, 0]));
        let m = d.build().unwrap();
        for text in ["", "a", "abba"] {
            let w = word(&m, text);
            let out = run(&m, &w, &w, RunParams::default()).unwrap();
            assert_eq!(out.p_acc, 1.0);
            assert_eq!(out.steps, 1);
            assert_eq!(out.halt_reason, HaltReason::NoLiveConfigurations);
        }
    }

    #[test]
    fn stationary_loop_exhausts_budget() {
        let m = stationary();
        let w = word(&m, "ab");
        let out = run(&m, &w, &w, RunParams::default()).unwrap();
        assert_eq!(out.halt_reason, HaltReason::StepBudget);
        assert_eq!(out.p_residual, 1.0);
        assert_eq!(out.steps, default_step_budget(&m, 2, 2));
        assert_eq!(out.steps, 17);
    }

    #[test]
    fn invalid_pair_and_parameters() {
        let m = stationary();
        let a = word(&m, "a");
        let b = word(&m, "b");
        assert!(matches!(
            run(&m, &a, &b, RunParams::default()),
            Err(EngineError::Model(_))
        ));
        let params = RunParams {
            step_budget: Some(0),
            ..RunParams::default()
        };
        assert!(matches!(
            run(&m, &a, &a, params),
            Err(EngineError::InvalidParameter(_))
        ));
    }

    #[test]
    fn head_advance_at_right_marker() {
        assert_eq!(advance(&[2, 1], &[true, true], 2, true), vec![2, 2]);
        assert_eq!(advance(&[0, 1], &[false, true], 2, true), vec![0, 2]);
        assert_eq!(advance(&[2, 1], &[true, true], 2, false), vec![3, 2]);
    }

    /// On `a`, the branches `(u,1)` and `(s,0)` become `(r,2)` and `(r,1)`;
    /// one step later both enter `t`, from `$` and from `a`.
    fn merging() -> Mwkqfa {
        let mut d = MachineDraft::new("merge", ab_identity(), 1, 1);
        d.add_state("q0", StateKind::NonHalting, &[1, 1]);
        d.add_state("u", StateKind::NonHalting, &[1, 1]);
        d.add_state("s", StateKind::NonHalting, &[0, 0]);
        d.add_state("r", StateKind::NonHalting, &[1, 1]);
        d.add_state("t", StateKind::NonHalting, &[1, 1]);
        let h = FRAC_1_SQRT_2;
        let t = d.tuple(&["#"], &["#"]).unwrap();
        d.set_operator(
            t,
            ComplexMatrix::from_real_rows(&[
                &[0.0, 0.0, 0.0, 1.0, 0.0],
                &[h, h, 0.0, 0.0, 0.0],
                &[h, -h, 0.0, 0.0, 0.0],
                &[0.0, 0.0, 1.0, 0.0, 0.0],
                &[0.0, 0.0, 0.0, 0.0, 1.0],
            ]),
        );
        let t = d.tuple(&["a"], &["a"]).unwrap();
        d.set_operator(t, ComplexMatrix::permutation(&[0, 3, 2, 4, 1]));
        let t = d.tuple(&["$"], &["$"]).unwrap();
        d.set_operator(t, ComplexMatrix::permutation(&[0, 1, 2, 4, 3]));
        d.build().unwrap()
    }

    #[test]
    fn clamping_merges_branches() {
        let m = merging();
        let w = word(&m, "a");
        let clamp = RunParams {
            step_budget: Some(6),
            overrun: HeadOverrun::Clamp,
            ..RunParams::default()
        };
        let out = run(&m, &w, &w, clamp).unwrap();
        assert!((out.p_residual - 2.0).abs() < 1e-12);
        assert!((out.conservation_error - 1.0).abs() < 1e-12);

        let reject = RunParams {
            step_budget: Some(6),
            ..RunParams::default()
        };
        let out = run(&m, &w, &w, reject).unwrap();
        assert!(out.conservation_error < 1e-12);
        assert!((out.p_rej - 1.0).abs() < 1e-12);
    }
}
