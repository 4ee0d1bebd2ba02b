//! Document format and command implementations behind the `wkqfa` binary.

pub mod commands;
pub mod document;
