//! Manchester-syntax subset for class expressions.
//!
//! ```text
//! expr    := conj ("or" conj)*
//! conj    := unary ("and" unary)*
//! unary   := name "some" unary | name "min" INT unary | primary
//! primary := name | "(" expr ")"
//! ```
//!
//! Unparenthesized chains flatten into one n-ary node; a parenthesized
//! operand stays nested, so `(A and B) and C` keeps its shape.

use super::{tokenize, NameContext, Position, SyntaxError, Tok, Token};
use crate::graph::{Iri, PrefixMap};
use crate::schema::{builtin_ontology, AliasTable, ClassExpression};

const KEYWORDS: [&str; 4] = ["and", "or", "some", "min"];

/// Parses with the built-in ontology's label aliases.
pub fn parse_manchester(text: &str, prefixes: &PrefixMap) -> Result<ClassExpression, SyntaxError> {
    parse_manchester_with(text, prefixes, builtin_ontology().aliases())
}

pub fn parse_manchester_with(
    text: &str,
    prefixes: &PrefixMap,
    aliases: &AliasTable,
) -> Result<ClassExpression, SyntaxError> {
    let mut parser =
        Parser { tokens: tokenize(text)?, pos: 0, names: NameContext { prefixes: prefixes.clone(), aliases } };
    let expr = parser.disjunction()?;
    match parser.peek().tok {
        Tok::Eof => Ok(expr),
        _ => Err(parser.peek().error("'and', 'or' or end of expression")),
    }
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    names: NameContext<'a>,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        &self.tokens[(self.pos + offset).min(self.tokens.len() - 1)].tok
    }

    fn advance(&mut self) -> Token {
        let token = self.tokens[self.pos].clone();
        if token.tok != Tok::Eof {
            self.pos += 1;
        }
        token
    }

    fn disjunction(&mut self) -> Result<ClassExpression, SyntaxError> {
        let mut operands = vec![self.conjunction()?];
        while self.peek().tok.is_word("or") {
            self.advance();
            operands.push(self.conjunction()?);
        }
        Ok(if operands.len() == 1 { operands.pop().unwrap() } else { ClassExpression::Or(operands) })
    }

    fn conjunction(&mut self) -> Result<ClassExpression, SyntaxError> {
        let mut operands = vec![self.unary()?];
        while self.peek().tok.is_word("and") {
            self.advance();
            operands.push(self.unary()?);
        }
        Ok(if operands.len() == 1 { operands.pop().unwrap() } else { ClassExpression::And(operands) })
    }

    fn unary(&mut self) -> Result<ClassExpression, SyntaxError> {
        if self.is_name() && self.peek_at(1).is_word("some") {
            let property = self.name()?;
            self.advance();
            let filler = self.unary()?;
            return Ok(ClassExpression::exists(property, filler));
        }
        if self.is_name() && self.peek_at(1).is_word("min") {
            let property = self.name()?;
            self.advance();
            let count_token = self.advance();
            let count = match count_token.tok {
                Tok::Int(n) if n >= 1 => u32::try_from(n).map_err(|_| count_token.error("cardinality below 2^32"))?,
                _ => return Err(count_token.error("positive integer")),
            };
            let filler = self.unary()?;
            return Ok(ClassExpression::at_least(count, property, filler));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<ClassExpression, SyntaxError> {
        if self.peek().tok == Tok::Punct('(') {
            self.advance();
            let inner = self.disjunction()?;
            if self.peek().tok != Tok::Punct(')') {
                return Err(self.peek().error("')'"));
            }
            self.advance();
            return Ok(inner);
        }
        if self.is_name() {
            return Ok(ClassExpression::Named(self.name()?));
        }
        Err(self.peek().error("class name or '('"))
    }

    fn is_name(&self) -> bool {
        match &self.peek().tok {
            Tok::IriRef(_) => true,
            Tok::Name { prefix: None, local, quoted: false } => !KEYWORDS.contains(&local.as_str()),
            Tok::Name { .. } => true,
            _ => false,
        }
    }

    fn name(&mut self) -> Result<Iri, SyntaxError> {
        let token = self.advance();
        self.names.resolve(&token, Position::Other)
    }
}

/// Renders `expr`; compound operands are parenthesized so the text parses
/// back to the same tree.
pub fn serialize_manchester(expr: &ClassExpression, prefixes: &PrefixMap) -> String {
    let mut out = String::new();
    write_expr(expr, prefixes, &mut out);
    out
}

fn write_operand(expr: &ClassExpression, prefixes: &PrefixMap, out: &mut String) {
    if expr.is_named() {
        write_expr(expr, prefixes, out);
    } else {
        out.push('(');
        write_expr(expr, prefixes, out);
        out.push(')');
    }
}

fn write_expr(expr: &ClassExpression, prefixes: &PrefixMap, out: &mut String) {
    match expr {
        ClassExpression::Named(class) => out.push_str(&prefixes.render(class)),
        ClassExpression::And(ops) | ClassExpression::Or(ops) => {
            let keyword = if matches!(expr, ClassExpression::And(_)) { " and " } else { " or " };
            for (i, op) in ops.iter().enumerate() {
                if i > 0 {
                    out.push_str(keyword);
                }
                write_operand(op, prefixes, out);
            }
        }
        ClassExpression::Exists { property, filler } => {
            out.push_str(&prefixes.render(property));
            out.push_str(" some ");
            write_operand(filler, prefixes, out);
        }
        ClassExpression::AtLeast { count, property, filler } => {
            out.push_str(&prefixes.render(property));
            out.push_str(&format!(" min {count} "));
            write_operand(filler, prefixes, out);
        }
    }
}

/// Token stream of a Manchester text with parentheses dropped and every name
/// resolved to its full IRI. Two texts with equal token streams say the same
/// thing up to whitespace, bracketing and the choice of name spelling.
pub fn manchester_tokens(text: &str, prefixes: &PrefixMap, aliases: &AliasTable) -> Result<Vec<String>, SyntaxError> {
    let names = NameContext { prefixes: prefixes.clone(), aliases };
    let mut out = Vec::new();
    for token in tokenize(text)? {
        match &token.tok {
            Tok::Eof | Tok::Punct('(') | Tok::Punct(')') => {}
            Tok::Name { prefix: None, local, quoted: false } if KEYWORDS.contains(&local.as_str()) => {
                out.push(local.clone())
            }
            Tok::Int(n) => out.push(n.to_string()),
            Tok::IriRef(_) | Tok::Name { .. } => out.push(names.resolve(&token, Position::Other)?.as_str().to_string()),
            _ => return Err(token.error("Manchester token")),
        }
    }
    Ok(out)
}
