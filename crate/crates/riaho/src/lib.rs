//! Command-line front end: datasets, verification suites and their reports.

pub mod cli;
pub mod commands;
pub mod config;
pub mod fmt;
pub mod output;
pub mod parse;
pub mod report;

pub use cli::{main_with, Cli, Outcome};
