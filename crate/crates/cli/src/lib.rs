//! Expression language, JSON format and command-line driver for `projquant`.

pub mod json;
pub mod parse;
pub mod random;
pub mod run;

pub use json::{emit_json, operator_to_json, parse_symbol_json, symbol_from_json, symbol_to_json};
pub use parse::{elaborate, parse, parse_symbol, Expr, ExprKind, ParseError};
pub use run::{run, Cli, Outcome};
