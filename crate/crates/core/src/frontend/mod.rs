//! Lexing, parsing and pretty-printing of `.mg` sources.

pub mod ast;
pub mod lexer;
pub mod parser;
pub mod pretty;

pub use ast::*;
pub use parser::{parse, parse_expr_annotated, ParseError};
pub use pretty::pretty_modules;
