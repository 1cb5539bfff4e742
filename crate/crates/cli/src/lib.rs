//! Command-line front end for the exact differential-stability toolkit:
//! JSON parsing with stable error codes, seeded random instance generation,
//! batch verification, and the `polystab` binary's dispatch logic.

pub mod batch;
pub mod dispatch;
pub mod generate;
pub mod io;

pub use batch::{run_batch, BatchFailure, BatchSummary};
pub use dispatch::{cli_dispatch, CliOutcome};
pub use generate::{generate_instance, InstanceSpec};
pub use io::{parse_problem, parse_vector, CliError, ErrorCode};
