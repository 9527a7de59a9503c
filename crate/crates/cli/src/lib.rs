//! Command-line layer: state files, reports, sweeps and the `gqd` commands.

pub mod commands;
pub mod error;
pub mod io;
pub mod report;
pub mod sweep;

pub use commands::{run, Cli, DEFAULT_SEED};
pub use error::CliError;
pub use io::{load_state, StateFile};
pub use report::ReportFile;
pub use sweep::{run_sweep, SweepConfig, SweepTable};
