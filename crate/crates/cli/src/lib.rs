//! Command-line front end and the numeric jet oracle.

pub mod app;
pub mod input;
pub mod jet;
pub mod oracle;
pub mod report;

pub use app::{run, Cli, Command, Io};
