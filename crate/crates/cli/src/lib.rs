//! Session scripts for the gradal kernel: parsing, execution, reports.

pub mod ast;
pub mod parse;
pub mod run;

pub use parse::{parse_session, ParseError};
pub use run::{run, Report, Settings, Status};
