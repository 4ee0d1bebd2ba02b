//! Simulation and verification of multi-head Watson-Crick quantum finite
//! automata, with the classical machines they are measured against.
//!
//! - [`model`]: alphabets, complementarity relations, double-stranded tapes.
//! - [`quantum`]: the quantum machine, its unitarity check and run semantics.
//! - [`classical`]: one-way multi-head DFAs, the reversibility checker and
//!   classical Watson-Crick automata.
//! - [`embed`]: default-reject completion of operator tables and the
//!   reversible-DFA to quantum embedding.
//! - [`harness`]: language oracles, bounded comparison sweeps and a library
//!   of sample machines.

pub mod classical;
pub mod embed;
pub mod harness;
pub mod linalg;
pub mod model;
pub mod quantum;

pub use num_complex::Complex64;
