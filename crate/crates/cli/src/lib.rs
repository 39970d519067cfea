//! Command-line front end for `padic-voa`: a state-expression parser and
//! the subcommand bodies, each producing a deterministic JSON report.

pub mod commands;
pub mod expr;

pub use commands::{CliError, Report, Suite};
pub use expr::{parse_state, ExprError, StateExpr};
