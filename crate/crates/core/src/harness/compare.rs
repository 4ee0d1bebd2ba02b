use crate::classical::{run_1dfa_k, MultiHeadDfa};
use crate::model::{Alphabet, Word};
use crate::quantum::{acceptance_profile, check_work, Mwkqfa, RunParams, SweepParams};

use super::oracles::LanguageOracle;
use super::HarnessError;

#[derive(Debug, Clone, PartialEq)]
pub struct Disagreement {
    pub word: Word,
    pub oracle_verdict: bool,
    pub best_p_acc: f64,
    pub max_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub machine: String,
    pub oracle: String,
    pub max_len: usize,
    pub cutpoint: f64,
    pub run: RunParams,
    pub words_tested: usize,
    /// In sweep order: shortest first, then lexicographic.
    pub disagreements: Vec<Disagreement>,
    /// Largest residual mass left by any run; a large value means some
    /// verdicts rest on truncated runs.
    pub max_residual: f64,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

fn check_alphabet(machine: &Alphabet, oracle: &LanguageOracle) -> Result<(), HarnessError> {
    if machine.names() != oracle.alphabet.names() {
        return Err(HarnessError::AlphabetMismatch {
            machine: machine.names().to_vec(),
            oracle: oracle.alphabet.names().to_vec(),
        });
    }
    Ok(())
}

/// Runs `verdict` on every word up to `max_len`; it returns the best
/// acceptance probability and the largest residual of its runs.
fn sweep<F>(
    alphabet: &Alphabet,
    oracle: &LanguageOracle,
    max_len: usize,
    cutpoint: f64,
    mut verdict: F,
) -> Result<(usize, Vec<Disagreement>, f64), HarnessError>
where
    F: FnMut(&Word) -> Result<(f64, f64), HarnessError>,
{
    let mut tested = 0;
    let mut disagreements = Vec::new();
    let mut max_residual: f64 = 0.0;
    for word in alphabet.words_up_to(max_len) {
        let (best_p_acc, residual) = verdict(&word)?;
        tested += 1;
        max_residual = max_residual.max(residual);
        let expected = oracle.decide(&word);
        if expected != (best_p_acc > cutpoint) {
            disagreements.push(Disagreement {
                word,
                oracle_verdict: expected,
                best_p_acc,
                max_residual: residual,
            });
        }
    }
    Ok((tested, disagreements, max_residual))
}

/// Compares `oracle` with "best acceptance probability strictly above
/// `cutpoint`" on every word of length at most `max_len`.
pub fn exhaustive_compare(
    m: &Mwkqfa,
    oracle: &LanguageOracle,
    max_len: usize,
    cutpoint: f64,
    params: &SweepParams,
) -> Result<ComparisonReport, HarnessError> {
    check_alphabet(m.alphabet(), oracle)?;
    if !(0.0..=1.0).contains(&cutpoint) {
        return Err(HarnessError::InvalidParameter(format!(
            "the cutpoint must lie in [0, 1], got {cutpoint}"
        )));
    }
    check_work(m, max_len, params.work_guard)?;
    let (words_tested, disagreements, max_residual) =
        sweep(m.alphabet(), oracle, max_len, cutpoint, |w| {
            let profile = acceptance_profile(m, w, params.run, params.complement_guard)?;
            Ok((profile.best_p_acc, profile.max_residual()))
        })?;
    Ok(ComparisonReport {
        machine: m.name().to_string(),
        oracle: oracle.name.clone(),
        max_len,
        cutpoint,
        run: params.run,
        words_tested,
        disagreements,
        max_residual,
    })
}

/// The same sweep for a classical machine, with acceptance read as 0 or 1.
pub fn compare_dfa(
    d: &MultiHeadDfa,
    oracle: &LanguageOracle,
    max_len: usize,
) -> Result<ComparisonReport, HarnessError> {
    check_alphabet(d.alphabet(), oracle)?;
    let (words_tested, disagreements, max_residual) =
        sweep(d.alphabet(), oracle, max_len, 0.5, |w| {
            let accepted = run_1dfa_k(d, w)?.accepted();
            Ok((if accepted { 1.0 } else { 0.0 }, 0.0))
        })?;
    Ok(ComparisonReport {
        machine: d.name().to_string(),
        oracle: oracle.name.clone(),
        max_len,
        cutpoint: 0.5,
        run: RunParams::default(),
        words_tested,
        disagreements,
        max_residual,
    })
}
