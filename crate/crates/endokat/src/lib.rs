//! JSON formats, audit suites and the command-line front end.

pub mod audit;
pub mod cli;
pub mod generate;
pub mod json;
pub mod linearize;
pub mod validate;
