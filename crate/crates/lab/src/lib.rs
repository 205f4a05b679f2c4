//! Command implementations, L-function config ingestion and CSV output
//! on top of `selberg-core`. The `selberg-lab` binary is a thin clap
//! front end over [`commands`] and [`suite`].

pub mod commands;
pub mod config;
pub mod error;
pub mod expr;
pub mod output;
pub mod suite;
pub mod target;

pub use error::LabError;
