//! The `.gfo` model language: parser with span-carrying diagnostics,
//! canonical serializer and the proposition syntax used by queries.

mod diagnostic;
mod lexer;
mod lower;
mod parser;
mod query;
mod serialize;

use gfo_core::Model;

pub use diagnostic::{Code, ParseDiagnostic, SourceSpan, Span};
pub use query::parse_proposition;
pub use serialize::serialize;

/// Parses `source`, reporting diagnostics against the name `file`.
///
/// Syntax errors stop before name resolution, so a model is returned only
/// when both passes are clean.
pub fn parse_named(file: &str, source: &str) -> Result<Model, Vec<ParseDiagnostic>> {
    let index = diagnostic::LineIndex::new(source);
    let mut p = parser::Parser::new(source);
    let stmts = p.statements();
    if !p.errors.is_empty() {
        return Err(index.finish(file, p.errors));
    }
    lower::lower(&stmts).map_err(|raw| index.finish(file, raw))
}

pub fn parse(source: &str) -> Result<Model, Vec<ParseDiagnostic>> {
    parse_named("<input>", source)
}
