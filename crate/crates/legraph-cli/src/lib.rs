//! File format and command implementations behind the `legraph` binary.

pub mod commands;
pub mod format;

pub use commands::{Command, Outcome, Report};
pub use format::{parse, serialize, Document, FormatError};
