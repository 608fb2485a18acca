//! Basic graph-pattern queries over the ontology and instance data.
//!
//! Supported text: `prefix` declarations, `select ?v ...` (or `*`), an
//! optional `where`, and a block of triple patterns each ending in `.`.
//! The predicate position may hold an alternation `(p1|p2|...)`.
//!
//! Ontology axioms are exposed as triples through a schema view. Complex
//! class expressions become blank nodes that bind to [`Value::Expression`].

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, GraphBuilder, Iri, Literal, PrefixMap, Term, Triple};
use crate::schema::{Axiom, ClassExpression, Ontology};
use crate::syntax::turtle::initial_prefixes;
use crate::syntax::{serialize_manchester, tokenize, NameContext, Position, SyntaxError, Tok, Token};
use crate::vocab::{self, owl, rdf_type, rdfs};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("selected variable ?{0} does not occur in any pattern")]
    UnusedVariable(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternTerm {
    Term(Term),
    Var(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PredicatePattern {
    Iri(Iri),
    Var(String),
    Alternation(Vec<Iri>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriplePattern {
    pub subject: PatternTerm,
    pub predicate: PredicatePattern,
    pub object: PatternTerm,
}

impl TriplePattern {
    pub fn variables(&self) -> Vec<&str> {
        let mut out = Vec::new();
        if let PatternTerm::Var(v) = &self.subject {
            out.push(v.as_str());
        }
        if let PredicatePattern::Var(v) = &self.predicate {
            out.push(v.as_str());
        }
        if let PatternTerm::Var(v) = &self.object {
            out.push(v.as_str());
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Query {
    pub variables: Vec<String>,
    pub patterns: Vec<TriplePattern>,
    /// Prefixes in scope after the query's own declarations; used for rendering.
    pub prefixes: PrefixMap,
}

pub fn parse_query(text: &str) -> Result<Query, QueryError> {
    let aliases = crate::schema::builtin_ontology();
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        names: NameContext { prefixes: initial_prefixes(), aliases: aliases.aliases() },
    };
    parser.query()
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

    fn advance(&mut self) -> Token {
        let token = self.tokens[self.pos].clone();
        if token.tok != Tok::Eof {
            self.pos += 1;
        }
        token
    }

    fn expect(&mut self, c: char) -> Result<(), SyntaxError> {
        if self.peek().tok == Tok::Punct(c) {
            self.advance();
            Ok(())
        } else {
            Err(self.peek().error(format!("'{c}'")))
        }
    }

    fn query(&mut self) -> Result<Query, QueryError> {
        loop {
            let token = self.peek().clone();
            match &token.tok {
                Tok::Directive(d) if d == "prefix" => {
                    self.advance();
                    self.prefix_binding()?;
                    self.expect('.')?;
                }
                t if t.is_word_ci("prefix") => {
                    self.advance();
                    self.prefix_binding()?;
                }
                _ => break,
            }
        }
        if !self.peek().tok.is_word_ci("select") {
            return Err(self.peek().error("'select'").into());
        }
        self.advance();
        let mut variables = Vec::new();
        let mut star = false;
        if self.peek().tok == Tok::Punct('*') {
            self.advance();
            star = true;
        } else {
            while let Tok::Var(v) = &self.peek().tok {
                variables.push(v.clone());
                self.advance();
            }
            if variables.is_empty() {
                return Err(self.peek().error("variable or '*'").into());
            }
        }
        if self.peek().tok.is_word_ci("where") {
            self.advance();
        }
        self.expect('{')?;
        let mut patterns = Vec::new();
        while self.peek().tok != Tok::Punct('}') {
            patterns.push(self.pattern()?);
            if self.peek().tok == Tok::Punct('.') {
                self.advance();
            } else if self.peek().tok != Tok::Punct('}') {
                return Err(self.peek().error("'.' or '}'").into());
            }
        }
        self.advance();
        if self.peek().tok != Tok::Eof {
            return Err(self.peek().error("end of query").into());
        }

        let mentioned: Vec<&str> = patterns.iter().flat_map(TriplePattern::variables).collect();
        if star {
            for v in &mentioned {
                if !variables.iter().any(|x| x == v) {
                    variables.push(v.to_string());
                }
            }
        }
        if let Some(unused) = variables.iter().find(|v| !mentioned.contains(&v.as_str())) {
            return Err(QueryError::UnusedVariable(unused.clone()));
        }
        Ok(Query { variables, patterns, prefixes: self.names.prefixes.clone() })
    }

    fn prefix_binding(&mut self) -> Result<(), SyntaxError> {
        let label_token = self.advance();
        let label = match &label_token.tok {
            Tok::Name { prefix: Some(label), local, quoted: false } if local.is_empty() => label.clone(),
            _ => return Err(label_token.error("prefix label ending in ':'")),
        };
        let ns_token = self.advance();
        let Tok::IriRef(ns) = &ns_token.tok else {
            return Err(ns_token.error("namespace IRI"));
        };
        let ns = Iri::new(ns.as_str()).map_err(|e| SyntaxError::Invalid {
            line: ns_token.line,
            column: ns_token.column,
            message: e.to_string(),
        })?;
        self.names.prefixes.insert(label, ns);
        Ok(())
    }

    fn pattern(&mut self) -> Result<TriplePattern, SyntaxError> {
        let subject = self.node(false)?;
        let predicate = self.predicate()?;
        let object = self.node(true)?;
        Ok(TriplePattern { subject, predicate, object })
    }

    fn node(&mut self, literal_allowed: bool) -> Result<PatternTerm, SyntaxError> {
        let token = self.advance();
        match &token.tok {
            Tok::Var(v) => Ok(PatternTerm::Var(v.clone())),
            Tok::IriRef(_) | Tok::Name { .. } => {
                Ok(PatternTerm::Term(Term::Iri(self.names.resolve(&token, Position::Other)?)))
            }
            Tok::Str { text, lang } if literal_allowed => {
                Ok(PatternTerm::Term(Term::Literal(Literal { text: text.clone(), lang: lang.clone() })))
            }
            _ => Err(token.error(if literal_allowed { "variable, IRI or literal" } else { "variable or IRI" })),
        }
    }

    fn predicate(&mut self) -> Result<PredicatePattern, SyntaxError> {
        if self.peek().tok.is_word("a") {
            self.advance();
            return Ok(PredicatePattern::Iri(rdf_type()));
        }
        if self.peek().tok == Tok::Punct('(') {
            self.advance();
            let mut options = vec![self.predicate_iri()?];
            while self.peek().tok == Tok::Punct('|') {
                self.advance();
                options.push(self.predicate_iri()?);
            }
            self.expect(')')?;
            return Ok(if options.len() == 1 {
                PredicatePattern::Iri(options.pop().unwrap())
            } else {
                PredicatePattern::Alternation(options)
            });
        }
        if let Tok::Var(v) = &self.peek().tok {
            let v = v.clone();
            self.advance();
            return Ok(PredicatePattern::Var(v));
        }
        Ok(PredicatePattern::Iri(self.predicate_iri()?))
    }

    fn predicate_iri(&mut self) -> Result<Iri, SyntaxError> {
        let token = self.advance();
        match &token.tok {
            Tok::IriRef(_) | Tok::Name { .. } => self.names.resolve(&token, Position::Predicate),
            _ => Err(token.error("predicate IRI")),
        }
    }
}

/// Ontology axioms as triples.
#[derive(Debug, Clone)]
pub struct SchemaView {
    pub graph: Graph,
    /// Blank nodes standing for complex class expressions.
    pub expressions: BTreeMap<Term, ClassExpression>,
}

/// Blank ids of expression nodes start with this; parsed data never uses it.
const EXPRESSION_BLANK: &str = "expr.";

pub fn schema_view(ont: &Ontology) -> SchemaView {
    let mut builder = GraphBuilder::new();
    let mut expressions = BTreeMap::new();
    let mut object_for = |expr: &ClassExpression| -> Term {
        match expr.as_named() {
            Some(class) => Term::Iri(class.clone()),
            None => {
                let node = Term::blank(format!("{EXPRESSION_BLANK}{}", expressions.len()));
                expressions.insert(node.clone(), expr.clone());
                node
            }
        }
    };
    let mut add = |s: Term, p: Iri, o: Term| {
        builder.insert(Triple { subject: s, predicate: p, object: o });
    };
    for axiom in ont.axioms() {
        match axiom {
            Axiom::ClassDeclaration(c) => add(c.clone().into(), rdf_type(), owl("Class").into()),
            Axiom::PropertyDeclaration(p) => add(p.clone().into(), rdf_type(), owl("ObjectProperty").into()),
            Axiom::SubClassOf { sub, sup } => add(sub.clone().into(), rdfs("subClassOf"), object_for(sup)),
            Axiom::EquivalentTo { class, expression } => {
                add(class.clone().into(), owl("equivalentClass"), object_for(expression))
            }
            Axiom::DisjointClasses(set) => {
                for a in set {
                    for b in set {
                        if a != b {
                            add(a.clone().into(), owl("disjointWith"), b.clone().into());
                        }
                    }
                }
            }
            Axiom::ClassAssertion { individual, class } => {
                add(individual.clone().into(), rdf_type(), class.clone().into())
            }
        }
    }
    for (iri, label) in ont.labels() {
        add(iri.clone().into(), vocab::rdfs_label(), Term::literal(label.clone()));
    }
    SchemaView { graph: builder.seal(), expressions }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Value {
    Term(Term),
    Expression(ClassExpression),
}

impl Value {
    pub fn render(&self, prefixes: &PrefixMap) -> String {
        match self {
            Value::Term(t) => prefixes.render_term(t),
            Value::Expression(e) => serialize_manchester(e, prefixes),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&PrefixMap::standard()))
    }
}

/// Result rows; each row holds one value per selected variable, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BindingSet {
    pub variables: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl BindingSet {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column(&self, variable: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == variable)
    }

    pub fn rendered(&self, prefixes: &PrefixMap) -> Vec<Vec<String>> {
        self.rows.iter().map(|row| row.iter().map(|v| v.render(prefixes)).collect()).collect()
    }
}

type Bindings = HashMap<String, Term>;

/// Matches the query against the schema view together with `graph`.
pub fn execute(ont: &Ontology, graph: &Graph, query: &Query) -> BindingSet {
    let view = schema_view(ont);
    let mut builder = GraphBuilder::new();
    builder.extend(view.graph.iter().cloned());
    builder.extend(graph.iter().cloned());
    let dataset = builder.seal();
    execute_on(&dataset, &view.expressions, query)
}

/// Matches against `dataset` alone; blank nodes in `expressions` bind as expressions.
pub fn execute_on(dataset: &Graph, expressions: &BTreeMap<Term, ClassExpression>, query: &Query) -> BindingSet {
    let mut solutions = Vec::new();
    let remaining: Vec<&TriplePattern> = query.patterns.iter().collect();
    join(dataset, &remaining, &mut Bindings::new(), &mut solutions);

    let mut rows: Vec<(Vec<String>, Vec<Value>)> = solutions
        .into_iter()
        .map(|b| {
            let row: Vec<Value> = query
                .variables
                .iter()
                .map(|v| {
                    let term = b[v].clone();
                    match expressions.get(&term) {
                        Some(e) => Value::Expression(e.clone()),
                        None => Value::Term(term),
                    }
                })
                .collect();
            (row.iter().map(|v| v.render(&query.prefixes)).collect(), row)
        })
        .collect();
    rows.sort();
    BindingSet { variables: query.variables.clone(), rows: rows.into_iter().map(|(_, r)| r).collect() }
}

fn resolve<'b>(pt: &'b PatternTerm, bindings: &'b Bindings) -> Option<&'b Term> {
    match pt {
        PatternTerm::Term(t) => Some(t),
        PatternTerm::Var(v) => bindings.get(v),
    }
}

fn predicate_options(pp: &PredicatePattern, bindings: &Bindings) -> Vec<Option<Iri>> {
    match pp {
        PredicatePattern::Iri(p) => vec![Some(p.clone())],
        PredicatePattern::Alternation(ps) => ps.iter().cloned().map(Some).collect(),
        PredicatePattern::Var(v) => match bindings.get(v) {
            Some(Term::Iri(p)) => vec![Some(p.clone())],
            Some(_) => Vec::new(),
            None => vec![None],
        },
    }
}

fn candidates<'g>(graph: &'g Graph, pattern: &TriplePattern, bindings: &Bindings) -> Vec<&'g Triple> {
    let s = resolve(&pattern.subject, bindings);
    let o = resolve(&pattern.object, bindings);
    let mut out = Vec::new();
    for p in predicate_options(&pattern.predicate, bindings) {
        out.extend(graph.matching(s, p.as_ref(), o));
    }
    out
}

/// Binds the pattern's variables to the triple, or `None` on a clash
/// (a variable used twice in one pattern must take one value).
fn extend(pattern: &TriplePattern, triple: &Triple, bindings: &Bindings) -> Option<Vec<(String, Term)>> {
    let mut added: Vec<(String, Term)> = Vec::new();
    let mut bind = |var: &str, value: Term| -> bool {
        if let Some(existing) = bindings.get(var) {
            return *existing == value;
        }
        if let Some((_, v)) = added.iter().find(|(name, _)| name == var) {
            return *v == value;
        }
        added.push((var.to_string(), value));
        true
    };
    let ok = match &pattern.subject {
        PatternTerm::Var(v) => bind(v, triple.subject.clone()),
        PatternTerm::Term(_) => true,
    } && match &pattern.predicate {
        PredicatePattern::Var(v) => bind(v, Term::Iri(triple.predicate.clone())),
        _ => true,
    } && match &pattern.object {
        PatternTerm::Var(v) => bind(v, triple.object.clone()),
        PatternTerm::Term(_) => true,
    };
    ok.then_some(added)
}

fn join(graph: &Graph, remaining: &[&TriplePattern], bindings: &mut Bindings, out: &mut Vec<Bindings>) {
    if remaining.is_empty() {
        out.push(bindings.clone());
        return;
    }
    // most selective pattern first under the current bindings
    let (index, matches) = remaining
        .iter()
        .enumerate()
        .map(|(i, p)| (i, candidates(graph, p, bindings)))
        .min_by_key(|(_, m)| m.len())
        .expect("non-empty");
    let pattern = remaining[index];
    let rest: Vec<&TriplePattern> =
        remaining.iter().enumerate().filter(|(i, _)| *i != index).map(|(_, p)| *p).collect();
    for triple in matches {
        let Some(added) = extend(pattern, triple, bindings) else {
            continue;
        };
        for (k, v) in &added {
            bindings.insert(k.clone(), v.clone());
        }
        join(graph, &rest, bindings, out);
        for (k, _) in &added {
            bindings.remove(k);
        }
    }
}

/// Distinct rows, for comparisons that ignore multiplicity.
pub fn row_set(bindings: &BindingSet) -> BTreeSet<Vec<Value>> {
    bindings.rows.iter().cloned().collect()
}
