//! Command-line front end for the `lsgbp` local-search engine: JSON
//! instance and solution formats plus the `lsgbp` binary's subcommands
//! (`solve`, `oracle`, `verify-types`, `eval`). The library form exists
//! so integration tests can drive the full CLI in-process.

pub mod cli;
pub mod formats;

pub use cli::cli_main;
pub use formats::{parse_instance, InstanceFile, Meta, PiTag, SolutionFile};
