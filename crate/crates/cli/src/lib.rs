//! Subcommand implementations and the report model behind the `kyfan` binary.

pub mod commands;
pub mod report;
