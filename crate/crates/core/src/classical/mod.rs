//! Classical baselines: one-way multi-head DFAs, their reversibility check,
//! and nondeterministic Watson-Crick automata.

mod dfa;
mod reversibility;
mod wk;

use thiserror::Error;

use crate::model::ModelError;

pub use dfa::{
    run_1dfa_k, run_1dfa_k_capped, ClassicalConfiguration, DfaBuilder, DfaRun, DfaVerdict,
    MultiHeadDfa, Transition, DEFAULT_TRACE_CAP,
};
pub use reversibility::{
    check_reversibility, predecessor_configuration, predecessors, MoveConflict,
    PredecessorConflict, ReversibilityMode, ReversibilityReport, Witness,
    DEFAULT_REVERSIBILITY_MAX_LEN,
};
pub use wk::{accepts_pair, run_wk_classical, ClassicalWkAutomaton, WkBuilder, WkRule};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassicalError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("invalid machine: {0}")]
    InvalidMachine(String),
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("state {state:?} moves head {head} past the right end marker")]
    MoveOffRightMarker { state: String, head: usize },
    #[error("state {state:?} has two transitions on the same symbols")]
    Nondeterministic { state: String },
}
