//! Command-line front end and JSON formats for `xcc-core`.

pub mod cli;
pub mod commands;
pub mod error;
pub mod formats;
pub mod specs;
