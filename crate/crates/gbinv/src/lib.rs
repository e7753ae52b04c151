//! System files, reports, the bundled example corpus and the `gbinv`
//! command line on top of `gbinv-core`.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod report;
pub mod syntax;

pub use error::{CliError, Result};
pub use syntax::{format_system, parse_order, parse_polynomial, parse_system, SystemFile};
