//! In-memory triple store.
//!
//! Graphs are built through a [`GraphBuilder`] and then sealed into an
//! immutable [`Graph`] carrying subject, predicate and subject+predicate
//! indexes. A sealed graph is plain data and can be shared across threads.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid IRI {0:?}")]
    InvalidIri(String),
    #[error("unknown prefix {0:?}")]
    UnknownPrefix(String),
    #[error("literal in subject position: {0}")]
    LiteralSubject(String),
    #[error("prefix {label:?} is already bound to {existing}")]
    PrefixConflict { label: String, existing: String },
}

/// An absolute IRI. Equality is exact string equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Iri(String);

impl Iri {
    pub fn new(value: impl Into<String>) -> Result<Iri, GraphError> {
        let value = value.into();
        if is_absolute_iri(&value) {
            Ok(Iri(value))
        } else {
            Err(GraphError::InvalidIri(value))
        }
    }

    pub(crate) fn new_unchecked(value: String) -> Iri {
        debug_assert!(is_absolute_iri(&value), "{value}");
        Iri(value)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Splits after the last `#`, `/` or `:`.
    pub fn local_name(&self) -> &str {
        let cut = self.0.rfind(['#', '/', ':']).map_or(0, |i| i + 1);
        &self.0[cut..]
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

fn is_absolute_iri(value: &str) -> bool {
    let Some(colon) = value.find(':') else {
        return false;
    };
    let scheme = &value[..colon];
    let mut chars = scheme.chars();
    let scheme_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'));
    scheme_ok
        && value.len() > colon + 1
        && !value
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\'))
}

/// Plain literal: lexical text plus optional language tag. No datatypes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub text: String,
    pub lang: Option<String>,
}

impl Literal {
    pub fn plain(text: impl Into<String>) -> Literal {
        Literal { text: text.into(), lang: None }
    }

    pub fn tagged(text: impl Into<String>, lang: impl Into<String>) -> Literal {
        Literal { text: text.into(), lang: Some(lang.into()) }
    }
}

/// Blank node id, unique within one graph load.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlankNode(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Iri(Iri),
    Literal(Literal),
    Blank(BlankNode),
}

impl Term {
    pub fn blank(id: impl Into<String>) -> Term {
        Term::Blank(BlankNode(id.into()))
    }

    pub fn literal(text: impl Into<String>) -> Term {
        Term::Literal(Literal::plain(text))
    }

    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::Blank(_))
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Term {
        Term::Iri(iri)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => iri.fmt(f),
            Term::Literal(lit) => {
                write!(f, "{:?}", lit.text)?;
                if let Some(lang) = &lit.lang {
                    write!(f, "@{lang}")?;
                }
                Ok(())
            }
            Term::Blank(b) => write!(f, "_:{}", b.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub subject: Term,
    pub predicate: Iri,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Iri, object: Term) -> Result<Triple, GraphError> {
        if let Term::Literal(lit) = &subject {
            return Err(GraphError::LiteralSubject(lit.text.clone()));
        }
        Ok(Triple { subject, predicate, object })
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

/// Prefix label to namespace map. The empty label is the default prefix.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrefixMap {
    entries: BTreeMap<String, Iri>,
}

impl PrefixMap {
    pub fn new() -> PrefixMap {
        PrefixMap::default()
    }

    /// The ontology prefixes (sio, prov, eo, ep) plus rdf, rdfs and owl.
    pub fn standard() -> PrefixMap {
        let mut map = PrefixMap::new();
        for (label, ns) in [
            ("eo", vocab::EO),
            ("ep", vocab::EP),
            ("owl", vocab::OWL),
            ("prov", vocab::PROV),
            ("rdf", vocab::RDF),
            ("rdfs", vocab::RDFS),
            ("sio", vocab::SIO),
        ] {
            map.insert(label, Iri::new_unchecked(ns.to_string()));
        }
        map
    }

    /// Binds `label`, replacing any previous binding of the same label.
    pub fn insert(&mut self, label: impl Into<String>, namespace: Iri) {
        self.entries.insert(label.into(), namespace);
    }

    pub fn get(&self, label: &str) -> Option<&Iri> {
        self.entries.get(label)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Iri)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Expands `label:local`; `<absolute>` passes through unchanged.
    pub fn expand(&self, curie: &str) -> Result<Iri, GraphError> {
        let curie = curie.trim();
        if let Some(inner) = curie.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
            return Iri::new(inner);
        }
        let (label, local) = curie.split_once(':').ok_or_else(|| GraphError::InvalidIri(curie.to_string()))?;
        let ns = self.entries.get(label).ok_or_else(|| GraphError::UnknownPrefix(label.to_string()))?;
        Iri::new(format!("{}{}", ns.as_str(), local))
    }

    /// Shortest `label:local` form for `iri`, when the local part is a plain name.
    pub fn compress(&self, iri: &Iri) -> Option<String> {
        self.entries
            .iter()
            .filter_map(|(label, ns)| {
                let local = iri.as_str().strip_prefix(ns.as_str())?;
                is_plain_local(local).then(|| (ns.as_str().len(), label, local))
            })
            .max_by_key(|(len, label, _)| (*len, std::cmp::Reverse(label.len())))
            .map(|(_, label, local)| format!("{label}:{local}"))
    }

    /// CURIE when compressible, otherwise `<iri>`.
    pub fn render(&self, iri: &Iri) -> String {
        self.compress(iri).unwrap_or_else(|| format!("<{}>", iri.as_str()))
    }

    pub fn render_term(&self, term: &Term) -> String {
        match term {
            Term::Iri(iri) => self.render(iri),
            other => other.to_string(),
        }
    }
}

/// `[A-Za-z_][A-Za-z0-9_-]*`, the local-name shape every parser here reads back.
pub(crate) fn is_plain_local(local: &str) -> bool {
    let mut chars = local.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

/// `expand_curie` as a free function over a prefix map.
pub fn expand_curie(prefixes: &PrefixMap, curie: &str) -> Result<Iri, GraphError> {
    prefixes.expand(curie)
}

/// Mutable accumulation phase of a graph.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    triples: BTreeSet<Triple>,
}

impl GraphBuilder {
    pub fn new() -> GraphBuilder {
        GraphBuilder::default()
    }

    /// Returns whether the triple was new.
    pub fn insert(&mut self, triple: Triple) -> bool {
        self.triples.insert(triple)
    }

    pub fn remove(&mut self, triple: &Triple) -> bool {
        self.triples.remove(triple)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Adds every triple of `graph`, renaming its blank nodes with `tag`
    /// so that documents loaded separately never share blank nodes.
    pub fn extend_renamed(&mut self, graph: &Graph, tag: &str) {
        let rename = |t: &Term| match t {
            Term::Blank(b) => Term::blank(format!("{tag}.{}", b.0)),
            other => other.clone(),
        };
        for t in graph.iter() {
            self.triples.insert(Triple {
                subject: rename(&t.subject),
                predicate: t.predicate.clone(),
                object: rename(&t.object),
            });
        }
    }

    pub fn seal(self) -> Graph {
        Graph::from_sorted(self.triples.into_iter().collect())
    }
}

impl Extend<Triple> for GraphBuilder {
    fn extend<I: IntoIterator<Item = Triple>>(&mut self, iter: I) {
        self.triples.extend(iter);
    }
}

/// Sealed, immutable triple store.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    triples: Vec<Triple>,
    by_subject: HashMap<Term, Vec<usize>>,
    by_predicate: HashMap<Iri, Vec<usize>>,
    by_subject_predicate: HashMap<(Term, Iri), Vec<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Graph) -> bool {
        self.triples == other.triples
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn empty() -> Graph {
        Graph::default()
    }

    pub fn from_triples(triples: impl IntoIterator<Item = Triple>) -> Graph {
        let mut builder = GraphBuilder::new();
        builder.extend(triples);
        builder.seal()
    }

    fn from_sorted(triples: Vec<Triple>) -> Graph {
        let mut graph = Graph { triples, ..Graph::default() };
        for (i, t) in graph.triples.iter().enumerate() {
            graph.by_subject.entry(t.subject.clone()).or_default().push(i);
            graph.by_predicate.entry(t.predicate.clone()).or_default().push(i);
            graph.by_subject_predicate.entry((t.subject.clone(), t.predicate.clone())).or_default().push(i);
        }
        graph
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Triples in sorted order.
    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.binary_search(triple).is_ok()
    }

    /// Triples agreeing with every bound position; `None` is a wildcard.
    pub fn matching<'a>(
        &'a self,
        subject: Option<&Term>,
        predicate: Option<&Iri>,
        object: Option<&Term>,
    ) -> impl Iterator<Item = &'a Triple> + 'a {
        let candidates: Box<dyn Iterator<Item = &'a Triple> + 'a> = match (subject, predicate) {
            (Some(s), Some(p)) => Box::new(self.indexed(self.by_subject_predicate.get(&(s.clone(), p.clone())))),
            (Some(s), None) => Box::new(self.indexed(self.by_subject.get(s))),
            (None, Some(p)) => Box::new(self.indexed(self.by_predicate.get(p))),
            (None, None) => Box::new(self.triples.iter()),
        };
        let subject = subject.cloned();
        let predicate = predicate.cloned();
        let object = object.cloned();
        candidates.filter(move |t| {
            subject.as_ref().is_none_or(|s| &t.subject == s)
                && predicate.as_ref().is_none_or(|p| &t.predicate == p)
                && object.as_ref().is_none_or(|o| &t.object == o)
        })
    }

    fn indexed<'a>(&'a self, ids: Option<&'a Vec<usize>>) -> impl Iterator<Item = &'a Triple> + 'a {
        ids.into_iter().flatten().map(move |&i| &self.triples[i])
    }

    /// `match(s, p, o)` collected into a set.
    pub fn match_pattern(
        &self,
        subject: Option<&Term>,
        predicate: Option<&Iri>,
        object: Option<&Term>,
    ) -> BTreeSet<Triple> {
        self.matching(subject, predicate, object).cloned().collect()
    }

    /// Objects of `(subject, predicate, ?)` in sorted order.
    pub fn objects<'a>(&'a self, subject: &Term, predicate: &Iri) -> impl Iterator<Item = &'a Term> + 'a {
        self.indexed(self.by_subject_predicate.get(&(subject.clone(), predicate.clone()))).map(|t| &t.object)
    }

    /// Triples with the given predicate.
    pub fn with_predicate<'a>(&'a self, predicate: &Iri) -> impl Iterator<Item = &'a Triple> + 'a {
        self.indexed(self.by_predicate.get(predicate))
    }

    pub fn subjects(&self) -> BTreeSet<&Term> {
        self.by_subject.keys().collect()
    }

    pub fn predicates(&self) -> BTreeSet<&Iri> {
        self.by_predicate.keys().collect()
    }

    /// Every non-literal term in subject or object position.
    pub fn nodes(&self) -> BTreeSet<Term> {
        self.triples.iter().flat_map(|t| [&t.subject, &t.object]).filter(|t| !t.is_literal()).cloned().collect()
    }

    pub fn blank_nodes(&self) -> BTreeSet<&BlankNode> {
        self.triples
            .iter()
            .flat_map(|t| [&t.subject, &t.object])
            .filter_map(|t| match t {
                Term::Blank(b) => Some(b),
                _ => None,
            })
            .collect()
    }

    /// Copy of the graph without the given triples.
    pub fn without<'a>(&self, remove: impl IntoIterator<Item = &'a Triple>) -> Graph {
        let remove: BTreeSet<&Triple> = remove.into_iter().collect();
        Graph::from_triples(self.triples.iter().filter(|t| !remove.contains(t)).cloned())
    }

    /// Graph isomorphism: equal up to a bijective renaming of blank nodes.
    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        isomorphism::isomorphic(self, other)
    }
}

mod isomorphism {
    use super::*;

    type Signature = Vec<(u8, Iri, Option<Term>)>;

    fn signature(graph: &Graph, node: &BlankNode) -> Signature {
        let me = Term::Blank(node.clone());
        let ground = |t: &Term| (!t.is_blank()).then(|| t.clone());
        let mut sig: Signature = Vec::new();
        for t in graph.iter() {
            if t.subject == me {
                sig.push((if t.object == me { 2 } else { 0 }, t.predicate.clone(), ground(&t.object)));
            } else if t.object == me {
                sig.push((1, t.predicate.clone(), ground(&t.subject)));
            }
        }
        sig.sort();
        sig
    }

    pub(super) fn isomorphic(a: &Graph, b: &Graph) -> bool {
        if a.len() != b.len() {
            return false;
        }
        let is_ground = |t: &Triple| !t.subject.is_blank() && !t.object.is_blank();
        let ground_a: BTreeSet<&Triple> = a.iter().filter(|t| is_ground(t)).collect();
        let ground_b: BTreeSet<&Triple> = b.iter().filter(|t| is_ground(t)).collect();
        if ground_a != ground_b {
            return false;
        }
        let blanks_a: Vec<&BlankNode> = a.blank_nodes().into_iter().collect();
        let blanks_b: Vec<&BlankNode> = b.blank_nodes().into_iter().collect();
        if blanks_a.len() != blanks_b.len() {
            return false;
        }

        let sig_b: Vec<Signature> = blanks_b.iter().map(|n| signature(b, n)).collect();
        let mut candidates: Vec<(&BlankNode, Vec<usize>)> = Vec::with_capacity(blanks_a.len());
        for node in &blanks_a {
            let sig = signature(a, node);
            let options: Vec<usize> = (0..blanks_b.len()).filter(|&j| sig_b[j] == sig).collect();
            if options.is_empty() {
                return false;
            }
            candidates.push((node, options));
        }
        candidates.sort_by_key(|(_, opts)| opts.len());

        let mut triples_of: HashMap<&BlankNode, Vec<&Triple>> = HashMap::new();
        for t in a.iter() {
            for term in [&t.subject, &t.object] {
                if let Term::Blank(n) = term {
                    let entry = triples_of.entry(n).or_default();
                    if entry.last() != Some(&t) {
                        entry.push(t);
                    }
                }
            }
        }

        let mut mapping: HashMap<&BlankNode, &BlankNode> = HashMap::new();
        let mut used = vec![false; blanks_b.len()];
        search(0, &candidates, &blanks_b, &triples_of, b, &mut mapping, &mut used)
    }

    fn search<'g>(
        depth: usize,
        candidates: &[(&'g BlankNode, Vec<usize>)],
        blanks_b: &[&'g BlankNode],
        triples_of: &HashMap<&'g BlankNode, Vec<&'g Triple>>,
        b: &Graph,
        mapping: &mut HashMap<&'g BlankNode, &'g BlankNode>,
        used: &mut [bool],
    ) -> bool {
        let Some((node, options)) = candidates.get(depth) else {
            return true;
        };
        for &j in options {
            if used[j] {
                continue;
            }
            mapping.insert(node, blanks_b[j]);
            used[j] = true;
            if consistent(node, triples_of, mapping, b)
                && search(depth + 1, candidates, blanks_b, triples_of, b, mapping, used)
            {
                return true;
            }
            used[j] = false;
            mapping.remove(node);
        }
        false
    }

    fn consistent(
        node: &BlankNode,
        triples_of: &HashMap<&BlankNode, Vec<&Triple>>,
        mapping: &HashMap<&BlankNode, &BlankNode>,
        b: &Graph,
    ) -> bool {
        let map_term = |t: &Term| -> Option<Term> {
            match t {
                Term::Blank(n) => mapping.get(n).map(|m| Term::Blank((*m).clone())),
                other => Some(other.clone()),
            }
        };
        triples_of.get(node).into_iter().flatten().all(|t| match (map_term(&t.subject), map_term(&t.object)) {
            (Some(subject), Some(object)) => b.contains(&Triple { subject, predicate: t.predicate.clone(), object }),
            _ => true,
        })
    }
}
