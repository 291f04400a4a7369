//! File formats, experiment protocol and command-line harness around
//! `bicut-core`.

pub mod cli;
pub mod config;
pub mod experiment;
pub mod io;
pub mod options;
pub mod oracle_check;
pub mod pipeline;
pub mod report;
