//! Command-line front end: configuration, pipelines, fixtures and output
//! handling behind the `supergrid` binary.

pub mod config;
pub mod error;
pub mod fixtures;
pub mod output;
pub mod pipeline;

pub use error::CliError;
