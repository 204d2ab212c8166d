//! Text formats and batch commands for the `tilesmith` binary.
//!
//! Every command is a plain function from inputs to an [`Outcome`] (text and
//! exit code) so the binary stays a thin argument parser.

pub mod commands;
pub mod format;

pub use commands::{ExitCode, Outcome};
pub use format::{ParseError, SystemDoc};
