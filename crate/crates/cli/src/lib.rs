//! Library side of the `twocx` command: interchange documents, run reports
//! and the subcommands themselves.

pub mod commands;
pub mod interchange;
pub mod report;
