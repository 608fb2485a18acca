//! Turtle subset: prefix directives, `a`, predicate (`;`) and object (`,`)
//! lists, `[...]` anonymous nodes, `_:` labels and plain string literals.
//! No collections, numbers or datatypes.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use super::{tokenize, NameContext, Position, SyntaxError, Tok, Token};
use crate::graph::{Graph, GraphBuilder, Iri, Literal, PrefixMap, Term, Triple};
use crate::schema::{builtin_ontology, AliasTable};
use crate::vocab;

#[derive(Debug, Clone, PartialEq)]
pub struct TurtleDocument {
    pub prefixes: PrefixMap,
    pub graph: Graph,
}

impl TurtleDocument {
    pub fn new(prefixes: PrefixMap, graph: Graph) -> TurtleDocument {
        TurtleDocument { prefixes, graph }
    }
}

/// Prefixes in scope before any directive: the standard ontology prefixes
/// and a default namespace for instance data.
pub fn initial_prefixes() -> PrefixMap {
    let mut prefixes = PrefixMap::standard();
    prefixes.insert("", Iri::new(vocab::DEFAULT_INSTANCE).expect("valid namespace"));
    prefixes
}

/// Parses with the built-in ontology's label aliases.
pub fn parse_turtle(text: &str) -> Result<TurtleDocument, SyntaxError> {
    parse_turtle_with(text, builtin_ontology().aliases())
}

pub fn parse_turtle_with(text: &str, aliases: &AliasTable) -> Result<TurtleDocument, SyntaxError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        names: NameContext { prefixes: initial_prefixes(), aliases },
        builder: GraphBuilder::new(),
        labels: HashMap::new(),
        fresh: 0,
    };
    parser.document()?;
    Ok(TurtleDocument { prefixes: parser.names.prefixes, graph: parser.builder.seal() })
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    names: NameContext<'a>,
    builder: GraphBuilder,
    labels: HashMap<String, Term>,
    fresh: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> Token {
        let token = self.tokens[self.pos].clone();
        if token.tok != Tok::Eof {
            self.pos += 1;
        }
        token
    }

    fn expect_punct(&mut self, c: char) -> Result<(), SyntaxError> {
        if self.peek().tok == Tok::Punct(c) {
            self.advance();
            Ok(())
        } else {
            Err(self.peek().error(format!("'{c}'")))
        }
    }

    fn fresh_blank(&mut self) -> Term {
        let term = Term::blank(format!("b{}", self.fresh));
        self.fresh += 1;
        term
    }

    fn emit(&mut self, subject: Term, predicate: Iri, object: Term) {
        self.builder.insert(Triple { subject, predicate, object });
    }

    fn document(&mut self) -> Result<(), SyntaxError> {
        loop {
            let token = self.peek().clone();
            match &token.tok {
                Tok::Eof => return Ok(()),
                Tok::Directive(d) if d == "prefix" => {
                    self.advance();
                    self.prefix_binding()?;
                    self.expect_punct('.')?;
                }
                Tok::Directive(_) => return Err(token.error("@prefix")),
                t if t.is_word_ci("prefix") => {
                    self.advance();
                    self.prefix_binding()?;
                }
                _ => {
                    self.statement()?;
                    self.expect_punct('.')?;
                }
            }
        }
    }

    fn prefix_binding(&mut self) -> Result<(), SyntaxError> {
        let label_token = self.advance();
        let Tok::Name { prefix: Some(label), local, quoted: false } = &label_token.tok else {
            return Err(label_token.error("prefix label ending in ':'"));
        };
        if !local.is_empty() {
            return Err(label_token.error("prefix label ending in ':'"));
        }
        let ns_token = self.advance();
        let Tok::IriRef(ns) = &ns_token.tok else {
            return Err(ns_token.error("namespace IRI"));
        };
        let ns = Iri::new(ns.as_str()).map_err(|e| SyntaxError::Invalid {
            line: ns_token.line,
            column: ns_token.column,
            message: e.to_string(),
        })?;
        self.names.prefixes.insert(label.clone(), ns);
        Ok(())
    }

    fn statement(&mut self) -> Result<(), SyntaxError> {
        if self.peek().tok == Tok::Punct('[') {
            let subject = self.blank_property_list()?;
            if self.peek().tok != Tok::Punct('.') {
                self.predicate_object_list(&subject)?;
            }
            return Ok(());
        }
        let subject = self.subject()?;
        self.predicate_object_list(&subject)
    }

    fn subject(&mut self) -> Result<Term, SyntaxError> {
        let token = self.advance();
        match &token.tok {
            Tok::Blank(label) => Ok(self.labelled_blank(label)),
            Tok::IriRef(_) | Tok::Name { .. } => Ok(Term::Iri(self.names.resolve(&token, Position::Other)?)),
            _ => Err(token.error("subject")),
        }
    }

    fn labelled_blank(&mut self, label: &str) -> Term {
        if let Some(term) = self.labels.get(label) {
            return term.clone();
        }
        let term = self.fresh_blank();
        self.labels.insert(label.to_string(), term.clone());
        term
    }

    fn predicate_object_list(&mut self, subject: &Term) -> Result<(), SyntaxError> {
        loop {
            let predicate = self.verb()?;
            loop {
                let object = self.object()?;
                self.emit(subject.clone(), predicate.clone(), object);
                if self.peek().tok == Tok::Punct(',') {
                    self.advance();
                } else {
                    break;
                }
            }
            if self.peek().tok != Tok::Punct(';') {
                return Ok(());
            }
            while self.peek().tok == Tok::Punct(';') {
                self.advance();
            }
            if matches!(self.peek().tok, Tok::Punct('.') | Tok::Punct(']')) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> Result<Iri, SyntaxError> {
        let token = self.advance();
        if token.tok.is_word("a") {
            return Ok(vocab::rdf_type());
        }
        match &token.tok {
            Tok::IriRef(_) | Tok::Name { .. } => self.names.resolve(&token, Position::Predicate),
            _ => Err(token.error("predicate")),
        }
    }

    fn object(&mut self) -> Result<Term, SyntaxError> {
        if self.peek().tok == Tok::Punct('[') {
            return self.blank_property_list();
        }
        let token = self.advance();
        match &token.tok {
            Tok::Str { text, lang } => Ok(Term::Literal(Literal { text: text.clone(), lang: lang.clone() })),
            Tok::Blank(label) => Ok(self.labelled_blank(label)),
            Tok::IriRef(_) | Tok::Name { .. } => Ok(Term::Iri(self.names.resolve(&token, Position::Other)?)),
            _ => Err(token.error("object")),
        }
    }

    fn blank_property_list(&mut self) -> Result<Term, SyntaxError> {
        self.expect_punct('[')?;
        let node = self.fresh_blank();
        if self.peek().tok != Tok::Punct(']') {
            self.predicate_object_list(&node)?;
        }
        self.expect_punct(']')?;
        Ok(node)
    }
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

struct TermWriter<'a> {
    prefixes: &'a PrefixMap,
    blanks: HashMap<&'a Term, String>,
}

impl<'a> TermWriter<'a> {
    fn term(&mut self, term: &'a Term) -> String {
        match term {
            Term::Iri(iri) => self.prefixes.render(iri),
            Term::Literal(lit) => match &lit.lang {
                Some(lang) => format!("{}@{lang}", escape(&lit.text)),
                None => escape(&lit.text),
            },
            Term::Blank(_) => {
                let next = self.blanks.len();
                self.blanks.entry(term).or_insert_with(|| format!("_:b{next}")).clone()
            }
        }
    }
}

/// Writes prefix directives followed by one statement per subject.
/// Blank nodes are relabelled `_:b0`, `_:b1`, ... in order of appearance.
pub fn serialize_turtle(doc: &TurtleDocument) -> String {
    let mut out = String::new();
    for (label, ns) in doc.prefixes.iter() {
        let _ = writeln!(out, "@prefix {label}: <{}> .", ns.as_str());
    }

    let mut writer = TermWriter { prefixes: &doc.prefixes, blanks: HashMap::new() };

    let mut by_subject: BTreeMap<&Term, BTreeMap<&Iri, Vec<&Term>>> = BTreeMap::new();
    for t in doc.graph.iter() {
        by_subject.entry(&t.subject).or_default().entry(&t.predicate).or_default().push(&t.object);
    }
    if !by_subject.is_empty() && !doc.prefixes.is_empty() {
        out.push('\n');
    }

    let default_ns = doc.prefixes.get("").map(|ns| ns.as_str().to_string());
    let rdf_type = vocab::rdf_type();
    for (subject, predicates) in by_subject {
        let subject_text = writer.term(subject);
        let lines: Vec<String> = predicates
            .into_iter()
            .map(|(predicate, objects)| {
                let predicate_text = if *predicate == rdf_type {
                    "a".to_string()
                } else if default_ns.as_deref().is_some_and(|ns| predicate.as_str().starts_with(ns)) {
                    // default-namespace predicates may be alias-rewritten on reading
                    format!("<{}>", predicate.as_str())
                } else {
                    doc.prefixes.render(predicate)
                };
                let objects: Vec<String> = objects.into_iter().map(|o| writer.term(o)).collect();
                format!("{predicate_text} {}", objects.join(", "))
            })
            .collect();
        let _ = writeln!(out, "{subject_text} {} .", lines.join(" ;\n    "));
    }
    out
}
