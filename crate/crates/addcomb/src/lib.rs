//! Command-line driver, file formats, reference oracles and the acceptance suite.

pub use addcomb_core as core;

#[macro_use]
pub mod table;
pub mod cli;
pub mod failure;
pub mod formats;
pub mod oracle;
pub mod verify;
