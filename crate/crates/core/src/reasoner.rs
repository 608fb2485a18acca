//! Closed-world instance checking over a sealed graph.
//!
//! A node belongs to a named class when one of its asserted `rdf:type`s is a
//! subclass of it, or when the classification fixpoint derived it from an
//! `EquivalentTo` axiom. Restrictions are checked against the facts present;
//! anything absent is false. Equivalences are applied only in the
//! sufficiency direction (expression implies class). The necessary direction
//! is reported by [`validate_graph`] as warnings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::graph::{Graph, Iri, Term};
use crate::schema::{ClassExpression, ExplanationKind, Ontology, SchemaError};
use crate::syntax::serialize_manchester;
use crate::vocab;

/// Reflexive-transitive named superclasses of a declared class.
pub fn superclasses(ont: &Ontology, class: &Iri) -> Result<BTreeSet<Iri>, SchemaError> {
    ont.superclasses(class).cloned()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Origin {
    Asserted,
    Derived,
}

/// Type assignments for one graph after running the classification fixpoint.
#[derive(Debug, Clone)]
pub struct Reasoner<'a> {
    ont: &'a Ontology,
    graph: &'a Graph,
    types: BTreeMap<Term, BTreeSet<Iri>>,
    members: BTreeMap<Iri, BTreeSet<Term>>,
    asserted: BTreeMap<Term, BTreeSet<Iri>>,
    derived: BTreeMap<Term, BTreeSet<Iri>>,
    rounds: usize,
}

impl<'a> Reasoner<'a> {
    pub fn new(ont: &'a Ontology, graph: &'a Graph) -> Reasoner<'a> {
        let mut reasoner = Reasoner {
            ont,
            graph,
            types: BTreeMap::new(),
            members: BTreeMap::new(),
            asserted: BTreeMap::new(),
            derived: BTreeMap::new(),
            rounds: 0,
        };
        for t in graph.with_predicate(&vocab::rdf_type()) {
            if let Term::Iri(class) = &t.object {
                reasoner.asserted.entry(t.subject.clone()).or_default().insert(class.clone());
                reasoner.add_type(&t.subject, class);
            }
        }
        reasoner.saturate();
        reasoner
    }

    fn add_type(&mut self, node: &Term, class: &Iri) -> bool {
        let entry = self.types.entry(node.clone()).or_default();
        if entry.contains(class) {
            return false;
        }
        for sup in self.ont.superclasses_or_self(class) {
            if entry.insert(sup.clone()) {
                self.members.entry(sup).or_default().insert(node.clone());
            }
        }
        true
    }

    fn saturate(&mut self) {
        loop {
            self.rounds += 1;
            let mut changed = false;
            for (class, expression) in self.ont.equivalences() {
                for node in self.instances(expression) {
                    if self.add_type(&node, class) {
                        self.derived.entry(node).or_default().insert(class.clone());
                        changed = true;
                    }
                }
            }
            if !changed {
                return;
            }
        }
    }

    /// Number of passes over the equivalence axioms until nothing changed.
    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn ontology(&self) -> &Ontology {
        self.ont
    }

    /// All classes of `node`, closed under named superclasses.
    pub fn types_of(&self, node: &Term) -> Option<&BTreeSet<Iri>> {
        self.types.get(node)
    }

    pub fn has_type(&self, node: &Term, class: &Iri) -> bool {
        self.types.get(node).is_some_and(|t| t.contains(class))
    }

    /// Classes the fixpoint added to `node` that were not already implied by assertions.
    pub fn derived_types(&self, node: &Term) -> Option<&BTreeSet<Iri>> {
        self.derived.get(node)
    }

    /// Set-at-a-time evaluation over the graph indexes.
    pub fn instances(&self, expr: &ClassExpression) -> BTreeSet<Term> {
        match expr {
            ClassExpression::Named(class) => self.members.get(class).cloned().unwrap_or_default(),
            ClassExpression::And(ops) => {
                let mut iter = ops.iter();
                let Some(first) = iter.next() else {
                    return BTreeSet::new();
                };
                let mut acc = self.instances(first);
                for op in iter {
                    if acc.is_empty() {
                        break;
                    }
                    let next = self.instances(op);
                    acc.retain(|n| next.contains(n));
                }
                acc
            }
            ClassExpression::Or(ops) => ops.iter().flat_map(|op| self.instances(op)).collect(),
            ClassExpression::Exists { property, filler } => {
                let fillers = self.instances(filler);
                self.graph
                    .with_predicate(property)
                    .filter(|t| fillers.contains(&t.object))
                    .map(|t| t.subject.clone())
                    .collect()
            }
            ClassExpression::AtLeast { count, property, filler } => {
                let fillers = self.instances(filler);
                let mut counts: BTreeMap<&Term, u32> = BTreeMap::new();
                for t in self.graph.with_predicate(property) {
                    if fillers.contains(&t.object) {
                        *counts.entry(&t.subject).or_default() += 1;
                    }
                }
                counts.into_iter().filter(|(_, c)| c >= count).map(|(n, _)| n.clone()).collect()
            }
        }
    }

    /// Whether `node` satisfies `expr`, without building a trace.
    pub fn satisfies(&self, node: &Term, expr: &ClassExpression) -> bool {
        match expr {
            ClassExpression::Named(class) => self.has_type(node, class),
            ClassExpression::And(ops) => ops.iter().all(|op| self.satisfies(node, op)),
            ClassExpression::Or(ops) => ops.iter().any(|op| self.satisfies(node, op)),
            ClassExpression::Exists { property, filler } => {
                self.graph.objects(node, property).any(|o| self.satisfies(o, filler))
            }
            ClassExpression::AtLeast { count, property, filler } => {
                let n = self.graph.objects(node, property).filter(|o| self.satisfies(o, filler)).count();
                n >= *count as usize
            }
        }
    }

    pub fn check(&self, node: &Term, expr: &ClassExpression) -> MembershipReport {
        let trace = self.trace(node, expr);
        MembershipReport { node: node.clone(), expression: expr.clone(), satisfied: trace.satisfied, trace }
    }

    fn trace(&self, node: &Term, expr: &ClassExpression) -> TraceNode {
        let mut out = TraceNode {
            expression: expr.clone(),
            node: node.clone(),
            satisfied: false,
            witnesses: Vec::new(),
            note: None,
            children: Vec::new(),
        };
        match expr {
            ClassExpression::Named(class) => {
                out.satisfied = self.has_type(node, class);
                if !self.ont.is_class(class) {
                    out.note = Some(format!("warning: {} is not a declared class", self.ont.prefixes().render(class)));
                } else if out.satisfied && self.derived.get(node).is_some_and(|d| d.contains(class)) {
                    out.note = Some("derived".to_string());
                }
            }
            ClassExpression::And(ops) | ClassExpression::Or(ops) => {
                out.children = ops.iter().map(|op| self.trace(node, op)).collect();
                out.satisfied = if matches!(expr, ClassExpression::And(_)) {
                    out.children.iter().all(|c| c.satisfied)
                } else {
                    out.children.iter().any(|c| c.satisfied)
                };
            }
            ClassExpression::Exists { property, filler } | ClassExpression::AtLeast { property, filler, .. } => {
                let needed = match expr {
                    ClassExpression::AtLeast { count, .. } => *count as usize,
                    _ => 1,
                };
                out.children = self.graph.objects(node, property).map(|o| self.trace(o, filler)).collect();
                out.witnesses = out.children.iter().filter(|c| c.satisfied).map(|c| c.node.clone()).collect();
                out.satisfied = out.witnesses.len() >= needed;
                let shown = self.ont.prefixes().render(property);
                out.note = if !self.ont.is_property(property) {
                    Some(format!("warning: {shown} is not a declared property"))
                } else if out.children.is_empty() {
                    Some(format!("no {shown} values"))
                } else if !out.satisfied {
                    Some(format!(
                        "{} of {} {shown} values qualify, {needed} needed",
                        out.witnesses.len(),
                        out.children.len()
                    ))
                } else {
                    None
                };
            }
        }
        out
    }

    /// Explanation-type memberships per node, marked asserted or derived.
    pub fn explanation_memberships(&self) -> BTreeMap<Term, BTreeMap<ExplanationKind, Origin>> {
        let mut out: BTreeMap<Term, BTreeMap<ExplanationKind, Origin>> = BTreeMap::new();
        for kind in ExplanationKind::ALL {
            let class = kind.class();
            for node in self.members.get(&class).into_iter().flatten() {
                let origin =
                    if self.asserted_closure(node).contains(&class) { Origin::Asserted } else { Origin::Derived };
                out.entry(node.clone()).or_default().insert(kind, origin);
            }
        }
        out
    }

    fn asserted_closure(&self, node: &Term) -> BTreeSet<Iri> {
        self.asserted.get(node).into_iter().flatten().flat_map(|c| self.ont.superclasses_or_self(c)).collect()
    }

    pub fn validate(&self) -> Diagnostics {
        let ont = self.ont;
        let mut prefixes = ont.prefixes().clone();
        if prefixes.get("").is_none() {
            prefixes.insert("", Iri::new_unchecked(vocab::DEFAULT_INSTANCE.to_string()));
        }
        let render = |iri: &Iri| prefixes.render(iri);
        let render_term = |t: &Term| prefixes.render_term(t);
        let mut diagnostics = Diagnostics::default();

        for set in ont.disjoint_sets() {
            let mut nodes: BTreeSet<&Term> = BTreeSet::new();
            for class in set {
                for node in self.members.get(class).into_iter().flatten() {
                    let shared = set.iter().filter(|c| self.has_type(node, c)).count();
                    if shared >= 2 {
                        nodes.insert(node);
                    }
                }
            }
            for node in nodes {
                let classes: Vec<String> = set.iter().filter(|c| self.has_type(node, c)).map(render).collect();
                diagnostics.push(Diagnostic {
                    severity: Severity::Error,
                    code: codes::DISJOINTNESS_VIOLATION.to_string(),
                    message: format!("{} is typed by disjoint classes {}", render_term(node), classes.join(", ")),
                    terms: vec![node.clone()],
                });
            }
        }

        for predicate in self.graph.predicates() {
            if !ont.is_property(predicate) {
                diagnostics.push(Diagnostic {
                    severity: Severity::Warning,
                    code: codes::UNKNOWN_TERM.to_string(),
                    message: format!("predicate {} is not declared", render(predicate)),
                    terms: vec![Term::Iri(predicate.clone())],
                });
            }
        }
        let classes: BTreeSet<&Iri> = self.asserted.values().flatten().collect();
        for class in classes {
            if !ont.is_class(class) {
                diagnostics.push(Diagnostic {
                    severity: Severity::Warning,
                    code: codes::UNKNOWN_TERM.to_string(),
                    message: format!("class {} is not declared", render(class)),
                    terms: vec![Term::Iri(class.clone())],
                });
            }
        }

        for (node, types) in &self.types {
            let asserted = self.asserted_closure(node);
            for class in types {
                let mut required: Vec<&ClassExpression> = ont.necessary_restrictions(class).collect();
                if asserted.contains(class) {
                    required.extend(ont.equivalence_for(class));
                }
                for expr in required {
                    if !self.satisfies(node, expr) {
                        diagnostics.push(Diagnostic {
                            severity: Severity::Warning,
                            code: codes::NECESSARY_CONDITION_UNMET.to_string(),
                            message: format!(
                                "{} is a {} but does not satisfy {}",
                                render_term(node),
                                render(class),
                                serialize_manchester(expr, &prefixes)
                            ),
                            terms: vec![node.clone(), Term::Iri(class.clone())],
                        });
                    }
                }
            }
        }
        diagnostics
    }
}

/// Per-node verdict tree mirroring a class expression.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceNode {
    pub expression: ClassExpression,
    pub node: Term,
    pub satisfied: bool,
    /// For restrictions: the property values that satisfy the filler.
    pub witnesses: Vec<Term>,
    pub note: Option<String>,
    /// Operands for `And`/`Or`; one filler trace per property value for restrictions.
    pub children: Vec<TraceNode>,
}

impl TraceNode {
    pub fn walk<'t>(&'t self, f: &mut impl FnMut(&'t TraceNode)) {
        f(self);
        for child in &self.children {
            child.walk(f);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MembershipReport {
    pub node: Term,
    pub expression: ClassExpression,
    pub satisfied: bool,
    pub trace: TraceNode,
}

impl MembershipReport {
    /// For every satisfied occurrence of `expr` in the trace: the node it was
    /// checked on and its witnesses.
    pub fn witnesses_of(&self, expr: &ClassExpression) -> Vec<(Term, Vec<Term>)> {
        let mut out = Vec::new();
        self.trace.walk(&mut |t| {
            if t.satisfied && &t.expression == expr {
                out.push((t.node.clone(), t.witnesses.clone()));
            }
        });
        out
    }
}

pub mod codes {
    pub const DISJOINTNESS_VIOLATION: &str = "disjointness-violation";
    pub const UNKNOWN_TERM: &str = "unknown-term";
    pub const NECESSARY_CONDITION_UNMET: &str = "necessary-condition-unmet";
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Warning => "warning",
            Severity::Error => "error",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: String,
    pub message: String,
    pub terms: Vec<Term>,
}

/// An empty list means the graph passed every check.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub entries: Vec<Diagnostic>,
}

impl Diagnostics {
    fn push(&mut self, d: Diagnostic) {
        self.entries.push(d);
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn errors(&self) -> impl Iterator<Item = &Diagnostic> {
        self.entries.iter().filter(|d| d.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Diagnostic> {
        self.entries.iter().filter(|d| d.severity == Severity::Warning)
    }

    pub fn has_errors(&self) -> bool {
        self.errors().next().is_some()
    }

    pub fn with_code<'d>(&'d self, code: &'d str) -> impl Iterator<Item = &'d Diagnostic> {
        self.entries.iter().filter(move |d| d.code == code)
    }
}

pub fn check_membership(ont: &Ontology, graph: &Graph, node: &Term, expr: &ClassExpression) -> MembershipReport {
    Reasoner::new(ont, graph).check(node, expr)
}

pub fn instances_of(ont: &Ontology, graph: &Graph, expr: &ClassExpression) -> BTreeSet<Term> {
    Reasoner::new(ont, graph).instances(expr)
}

/// Node to explanation classes (asserted or derived). Nodes without any are omitted.
pub fn classify_explanations(ont: &Ontology, graph: &Graph) -> BTreeMap<Term, BTreeSet<Iri>> {
    Reasoner::new(ont, graph)
        .explanation_memberships()
        .into_iter()
        .map(|(node, kinds)| (node, kinds.into_keys().map(ExplanationKind::class).collect()))
        .collect()
}

pub fn validate_graph(ont: &Ontology, graph: &Graph) -> Diagnostics {
    Reasoner::new(ont, graph).validate()
}
