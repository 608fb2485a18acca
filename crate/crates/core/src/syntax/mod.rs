//! Text formats: a Turtle subset for instance data and a Manchester subset
//! for class expressions.

mod lexer;
pub mod manchester;
pub mod turtle;

use thiserror::Error;

use crate::graph::{GraphError, Iri, PrefixMap};
use crate::schema::AliasTable;

pub use manchester::{manchester_tokens, parse_manchester, parse_manchester_with, serialize_manchester};
pub use turtle::{parse_turtle, parse_turtle_with, serialize_turtle, TurtleDocument};

pub(crate) use lexer::{tokenize, Tok, Token};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("{line}:{column}: expected {expected}, found {found}")]
    Unexpected { line: usize, column: usize, expected: String, found: String },
    #[error("unknown prefix {0:?}")]
    UnknownPrefix(String),
    #[error("{line}:{column}: unknown name {name:?}")]
    UnknownName { line: usize, column: usize, name: String },
    #[error("{line}:{column}: {message}")]
    Invalid { line: usize, column: usize, message: String },
}

/// `in relation to` -> `inRelationTo`; the first word keeps its case.
pub(crate) fn camel_case(label: &str) -> String {
    let mut out = String::new();
    for (i, word) in label.split_whitespace().enumerate() {
        let mut chars = word.chars();
        if i > 0 {
            if let Some(first) = chars.next() {
                out.extend(first.to_uppercase());
            }
        }
        out.push_str(chars.as_str());
    }
    out
}

/// Prefixes plus label aliases: everything needed to turn a written name into an IRI.
#[derive(Debug, Clone)]
pub(crate) struct NameContext<'a> {
    pub prefixes: PrefixMap,
    pub aliases: &'a AliasTable,
}

pub(crate) enum Position {
    Predicate,
    Other,
}

impl NameContext<'_> {
    pub(crate) fn resolve(&self, token: &Token, position: Position) -> Result<Iri, SyntaxError> {
        let invalid =
            |e: GraphError| SyntaxError::Invalid { line: token.line, column: token.column, message: e.to_string() };
        match &token.tok {
            Tok::IriRef(iri) => Iri::new(iri.as_str()).map_err(invalid),
            Tok::Name { prefix: Some(prefix), local, quoted } => {
                let ns = self.prefixes.get(prefix).ok_or_else(|| SyntaxError::UnknownPrefix(prefix.clone()))?;
                if *quoted {
                    if let Some(iri) = self.aliases.lookup_in(local, ns) {
                        return Ok(iri.clone());
                    }
                    return Iri::new(format!("{}{}", ns.as_str(), camel_case(local))).map_err(invalid);
                }
                if prefix.is_empty() && matches!(position, Position::Predicate) {
                    if let Some(iri) = self.aliases.lookup(local) {
                        return Ok(iri.clone());
                    }
                }
                Iri::new(format!("{}{}", ns.as_str(), local)).map_err(invalid)
            }
            Tok::Name { prefix: None, local, .. } => self.aliases.lookup(local).cloned().ok_or_else(|| {
                SyntaxError::UnknownName { line: token.line, column: token.column, name: local.clone() }
            }),
            _ => Err(token.error("IRI or name")),
        }
    }
}
