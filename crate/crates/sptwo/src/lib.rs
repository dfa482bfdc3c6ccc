//! Command-line front end for `sptwo-core`: parallel table builders,
//! seeded sweeps and CSV/JSON reports.

pub mod cli;
pub mod io;
pub mod parallel;
