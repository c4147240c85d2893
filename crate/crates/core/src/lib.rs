//! Weighted tree automata over strong bimonoids: run semantics, trimming,
//! pumping, crisp-determinization, preimage automata, and decision
//! procedures for the finite-image property and related questions.

pub mod algebra;
pub mod counting;
pub mod crisp;
pub mod decide;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod fta;
pub mod grammar;
pub mod structure;
pub mod oracle;
pub mod term;
pub mod wta;

pub use error::{Error, Result};
