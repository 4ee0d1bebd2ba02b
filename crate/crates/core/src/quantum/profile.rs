//! Acceptance over every complementary lower strand, and bounded language
//! sweeps.

use crate::model::{complement_strands, geometric_sum, Symbol, Word, DEFAULT_COMPLEMENT_GUARD};

use super::engine::{run, RunOutcome, RunParams};
use super::machine::Mwkqfa;
use super::EngineError;

/// Default bound on the number of runs a sweep may perform.
pub const DEFAULT_WORK_GUARD: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileEntry {
    pub lower: Word,
    pub outcome: RunOutcome,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AcceptanceProfile {
    /// One entry per complement of the upper word, lexicographic.
    pub entries: Vec<ProfileEntry>,
    /// Maximum acceptance probability over all complements; 0 when there are
    /// none.
    pub best_p_acc: f64,
}

impl AcceptanceProfile {
    /// Largest residual mass among the runs.
    pub fn max_residual(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.outcome.p_residual)
            .fold(0.0, f64::max)
    }
}

/// Runs `m` on `w1` against every lower strand the relation allows.
pub fn acceptance_profile(
    m: &Mwkqfa,
    w1: &[Symbol],
    params: RunParams,
    complement_guard: usize,
) -> Result<AcceptanceProfile, EngineError> {
    let lowers = complement_strands(m.rho(), w1, complement_guard)?;
    let mut entries = Vec::with_capacity(lowers.len());
    let mut best_p_acc: f64 = 0.0;
    for lower in lowers {
        let outcome = run(m, w1, &lower, params)?;
        best_p_acc = best_p_acc.max(outcome.p_acc);
        entries.push(ProfileEntry { lower, outcome });
    }
    Ok(AcceptanceProfile {
        entries,
        best_p_acc,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepParams {
    pub run: RunParams,
    pub complement_guard: usize,
    pub work_guard: usize,
}

impl Default for SweepParams {
    fn default() -> Self {
        SweepParams {
            run: RunParams::default(),
            complement_guard: DEFAULT_COMPLEMENT_GUARD,
            work_guard: DEFAULT_WORK_GUARD,
        }
    }
}

/// Number of runs needed to profile every upper word up to `max_len`:
/// summing the complement counts over `V^n` gives `(Σ_a |ρ(a)|)^n`.
pub fn sweep_work(m: &Mwkqfa, max_len: usize) -> u128 {
    geometric_sum(m.rho().len() as u128, max_len)
}

pub(crate) fn check_work(m: &Mwkqfa, max_len: usize, guard: usize) -> Result<(), EngineError> {
    let required = sweep_work(m, max_len);
    if required > guard as u128 {
        return Err(EngineError::WorkGuard {
            required,
            bound: guard,
        });
    }
    Ok(())
}

/// Every upper word of length at most `max_len` whose best acceptance
/// probability is strictly above `cutpoint`, shortest first then
/// lexicographic.
pub fn language_sample(
    m: &Mwkqfa,
    max_len: usize,
    cutpoint: f64,
    params: &SweepParams,
) -> Result<Vec<Word>, EngineError> {
    check_work(m, max_len, params.work_guard)?;
    let mut accepted = Vec::new();
    for w1 in m.alphabet().words_up_to(max_len) {
        let profile = acceptance_profile(m, &w1, params.run, params.complement_guard)?;
        if profile.best_p_acc > cutpoint {
            accepted.push(w1);
        }
    }
    Ok(accepted)
}
