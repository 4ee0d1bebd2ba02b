//! Language oracles, bounded comparison sweeps and sample machines.

mod compare;
mod oracles;
pub mod samples;

use thiserror::Error;

use crate::classical::ClassicalError;
use crate::quantum::EngineError;

pub use compare::{compare_dfa, exhaustive_compare, ComparisonReport, Disagreement};
pub use oracles::{
    ab_alphabet, oracle_anbn, oracle_by_name, oracle_names, oracle_parity, oracle_regular,
    oracle_ww, oracle_yao_rivest, regular_oracle, yao_rivest_alphabet, LanguageOracle,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Classical(#[from] ClassicalError),
    #[error("machine alphabet {machine:?} differs from the oracle alphabet {oracle:?}")]
    AlphabetMismatch {
        machine: Vec<String>,
        oracle: Vec<String>,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
