//! Library surface of the command-line front end: the file formats, the
//! command implementations and the report renderer. The binary in `main.rs`
//! is a thin clap dispatcher over these.

pub mod commands;
pub mod format;
pub mod report;
