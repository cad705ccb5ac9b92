//! File formats, reports and subcommands behind the `hodgegauge` binary.

pub mod commands;
pub mod error;
pub mod format;
pub mod report;

pub use commands::{GeometryKind, Outcome};
pub use error::CliError;
pub use format::{MulticomplexFile, StructureFile};
pub use report::Report;

/// When set, documents and JSON reports are also written into this directory.
pub const OUTPUT_DIR_VAR: &str = "HODGEGAUGE_OUTPUT_DIR";
