//! Command-line driver: argument parsing, dispatch and report emission.

pub mod args;
pub mod graphspec;
pub mod report;
pub mod run;
