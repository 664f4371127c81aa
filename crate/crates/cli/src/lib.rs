//! Report types and subcommand bodies behind the `cyclotan` binary.

pub mod report;

/// Output format of every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}
