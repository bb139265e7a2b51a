//! Command-line front end for `negbeta`: base specifications, reports and built-in checks.

pub mod commands;
pub mod session;
pub mod spec;
pub mod verify;

pub use commands::{Outcome, Status};
pub use session::{CliError, Session};
pub use spec::BetaSpec;
