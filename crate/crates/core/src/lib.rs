//! Compiler core for Magnolia-lite, a small algebraic-specification language
//! with concepts, renaming, satisfactions and axioms.
//!
//! Pipeline: [`frontend`] parses sources, [`modsys`] flattens module
//! expressions and checks satisfactions, [`semantics`] type checks bodies,
//! [`oracle`] turns axioms into executable tests, [`codegen`] transpiles
//! programs to a host backend and [`interp`] is the reference interpreter.

pub mod codegen;
pub mod corpus;
pub mod diag;
pub mod frontend;
pub mod interp;
pub mod modsys;
pub mod oracle;
pub mod semantics;
pub mod source;

pub use diag::{DiagKind, Diagnostic, Diagnostics, Severity};
pub use source::{FileId, SourceMap, SourceUnit, Span};
