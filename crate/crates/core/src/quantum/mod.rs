//! Multi-head Watson-Crick quantum finite automata.

mod engine;
mod machine;
mod profile;
mod wellformed;
mod wkqfa;

use thiserror::Error;

use crate::model::ModelError;

pub use engine::{
    default_step_budget, evolve_step, read_tuple, run, run_observed, Configuration, HaltReason,
    HeadOverrun, RunOutcome, RunParams, Superposition, DEFAULT_MASS_EPSILON,
};
pub use machine::{
    MachineDraft, Mwkqfa, OperatorEntry, StateDecl, StateKind, SymbolTuple, UnmentionedTuples,
};
pub use profile::{
    acceptance_profile, language_sample, sweep_work, AcceptanceProfile, ProfileEntry, SweepParams,
    DEFAULT_WORK_GUARD,
};
pub use wellformed::{
    check_operator_table, check_well_formed, TupleDeviation, WellFormednessReport,
};
pub use wkqfa::Wkqfa;

pub(crate) use profile::check_work;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("invalid machine: {0}")]
    InvalidMachine(String),
    #[error("operator for tuple {tuple} is {rows}x{cols}, expected {expected}x{expected}")]
    Structural {
        tuple: String,
        rows: usize,
        cols: usize,
        expected: usize,
    },
    #[error("operator for tuple {tuple} is only partially authored; complete it first")]
    PartialOperator { tuple: String },
    #[error("no operator for tuple {tuple} and the machine has no default completion")]
    MissingOperator { tuple: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("the sweep needs {required} runs, more than the bound of {bound}")]
    WorkGuard { required: u128, bound: usize },
}
