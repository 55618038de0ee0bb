//! Config files, parameter sweeps, CSV/JSON output and the `gpatch` command line.

pub mod cli;
pub mod config;
pub mod emit;
pub mod sweep;
pub mod units;
