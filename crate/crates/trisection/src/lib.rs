//! Text formats, reports and the command-line driver for
//! [`trisection_core`].

pub mod cli;
pub mod dsl;
pub mod report;

pub use dsl::{
    parse_document, parse_presentation, parse_trisection, serialize_document, serialize_trisection, ParseError,
    ParseErrorKind, TrisectionDocument,
};
pub use report::Report;
