//! Text formats, report rendering and the command pipelines behind the
//! `nuchern` binary.

pub mod output;
pub mod parse;
pub mod run;

pub use parse::{parse_element, parse_element_matrix, parse_form, parse_matrix, ParseError};
pub use run::{run, Command, Format, RunConfig, RunError};
