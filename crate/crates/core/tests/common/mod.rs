//! Shared fixtures, generators and the naive reference evaluator.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use eokit_core::vocab::{self, eo, ep, prov, rdf_type, sio};
use eokit_core::{
    CapabilityProfile, ClassExpression, Graph, GraphBuilder, Iri, Literal, Ontology, Term, Triple, TurtleDocument,
};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn clinical_case() -> TurtleDocument {
    eokit_core::parse_turtle(&fixture("clinical_case.ttl")).expect("fixture parses")
}

pub fn inst(local: &str) -> Term {
    Term::Iri(Iri::new(format!("{}{local}", vocab::DEFAULT_INSTANCE)).unwrap())
}

/// Whitespace-normalized text.
pub fn squash(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

pub fn classes() -> Vec<Iri> {
    vec![
        eo("SystemRecommendation"),
        eo("Fact"),
        eo("Foil"),
        eo("Knowledge"),
        eo("ContextualKnowledge"),
        eo("ScientificKnowledge"),
        eo("EverydayKnowledge"),
        eo("NumericalEvidence"),
        eo("SystemTrace"),
        eo("AlternativeInput"),
        eo("Simulation"),
        eo("ObjectRecord"),
        eo("User"),
        eo("Study"),
        eo("ScientificMethod"),
        ep("Situation"),
        ep("Explanation"),
        eo("ContrastiveExplanation"),
    ]
}

pub fn properties() -> Vec<Iri> {
    vec![ep("isBasedOn"), prov("used"), sio("inRelationTo"), prov("wasGeneratedBy"), prov("wasAssociatedWith")]
}

pub fn expression(depth: u32) -> BoxedStrategy<ClassExpression> {
    let leaf = prop::sample::select(classes()).prop_map(ClassExpression::Named);
    leaf.prop_recursive(depth, 48, 3, |inner| {
        let props = prop::sample::select(properties());
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..=3).prop_map(ClassExpression::And),
            prop::collection::vec(inner.clone(), 2..=3).prop_map(ClassExpression::Or),
            (props.clone(), inner.clone()).prop_map(|(p, f)| ClassExpression::exists(p, f)),
            (1..=3u32, props, inner).prop_map(|(n, p, f)| ClassExpression::at_least(n, p, f)),
        ]
    })
    .boxed()
}

/// Node `i` of a generated graph: a few trailing ones are blank.
fn node(i: usize, n: usize) -> Term {
    if n > 4 && i >= n - 2 {
        Term::blank(format!("g{i}"))
    } else {
        inst(&format!("n{i}"))
    }
}

#[derive(Debug, Clone)]
enum Edge {
    Type(usize, usize),
    Link(usize, usize, usize),
}

fn build(n: usize, edges: &[Edge]) -> Vec<Triple> {
    let classes = classes();
    let props = properties();
    edges
        .iter()
        .map(|e| match *e {
            Edge::Type(s, c) => Triple::new(node(s, n), rdf_type(), Term::Iri(classes[c].clone())).unwrap(),
            Edge::Link(s, p, o) => Triple::new(node(s, n), props[p].clone(), node(o, n)).unwrap(),
        })
        .collect()
}

fn edges(n: usize, max: usize) -> impl Strategy<Value = Vec<Edge>> {
    let c = classes().len();
    let p = properties().len();
    let edge = prop_oneof![
        1 => (0..n, 0..c).prop_map(|(s, c)| Edge::Type(s, c)),
        2 => (0..n, 0..p, 0..n).prop_map(|(s, p, o)| Edge::Link(s, p, o)),
    ];
    prop::collection::vec(edge, 0..=max)
}

/// Graphs over at most 30 nodes and 120 triples, using the ontology's vocabulary.
pub fn graph() -> impl Strategy<Value = Graph> {
    (1..=30usize).prop_flat_map(|n| edges(n, 120).prop_map(move |e| Graph::from_triples(build(n, &e))))
}

/// A graph and a supergraph of it.
pub fn graph_pair() -> impl Strategy<Value = (Graph, Graph)> {
    (1..=30usize).prop_flat_map(|n| {
        (edges(n, 80), edges(n, 40)).prop_map(move |(a, b)| {
            let small = build(n, &a);
            let mut big = small.clone();
            big.extend(build(n, &b));
            (Graph::from_triples(small), Graph::from_triples(big))
        })
    })
}

fn literal() -> impl Strategy<Value = Term> {
    let text = "[a-zA-Z0-9 \"\\\\\n\t\r'`.,;#<>:_-]{0,10}";
    (text, prop::option::of(prop::sample::select(vec!["en", "de-AT", "en-GB"]))).prop_map(|(t, lang)| {
        Term::Literal(match lang {
            Some(l) => Literal::tagged(t, l),
            None => Literal::plain(t),
        })
    })
}

fn iri() -> impl Strategy<Value = Iri> {
    let fixed = vec![
        eo("SystemRecommendation"),
        ep("isBasedOn"),
        sio("inRelationTo"),
        Iri::new("http://elsewhere.example/path/x.y").unwrap(),
        Iri::new("urn:isbn:0451450523").unwrap(),
    ];
    prop_oneof![
        prop::sample::select(fixed),
        (0..12usize).prop_map(|i| Iri::new(format!("{}r{i}", vocab::DEFAULT_INSTANCE)).unwrap()),
    ]
}

/// Arbitrary graphs for syntax round trips: odd IRIs, literals, blank nodes.
pub fn turtle_graph() -> impl Strategy<Value = Graph> {
    let subject = prop_oneof![iri().prop_map(Term::Iri), (0..6usize).prop_map(|i| Term::blank(format!("x{i}")))];
    let predicate = prop_oneof![
        Just(rdf_type()),
        Just(vocab::rdfs_label()),
        Just(prov("used")),
        Just(Iri::new("http://elsewhere.example/p#has.part").unwrap()),
        Just(Iri::new(format!("{}rel", vocab::DEFAULT_INSTANCE)).unwrap()),
    ];
    let object = prop_oneof![subject.clone(), literal()];
    prop::collection::vec((subject, predicate, object), 0..40).prop_map(|ts| {
        let mut b = GraphBuilder::new();
        for (s, p, o) in ts {
            b.insert(Triple::new(s, p, o).unwrap());
        }
        b.seal()
    })
}

pub fn profile() -> impl Strategy<Value = CapabilityProfile> {
    let classes = prop::collection::btree_set(prop::sample::select(profile_classes()), 0..10);
    let tasks = prop::collection::btree_set(prop::sample::select(profile_tasks()), 0..3);
    (classes, tasks).prop_map(|(producible_classes, tasks)| CapabilityProfile {
        producible_classes,
        tasks,
        methods: BTreeSet::new(),
        mode: None,
    })
}

/// A profile and an enlargement of it.
pub fn profile_pair() -> impl Strategy<Value = (CapabilityProfile, CapabilityProfile)> {
    (profile(), profile()).prop_map(|(small, extra)| {
        let mut big = small.clone();
        big.producible_classes.extend(extra.producible_classes);
        big.tasks.extend(extra.tasks);
        (small, big)
    })
}

pub fn profile_classes() -> Vec<Iri> {
    let mut out = classes();
    out.retain(|c| *c != eo("ContrastiveExplanation"));
    out
}

pub fn profile_tasks() -> Vec<Iri> {
    vec![eo("AITask"), eo("InductiveTask"), eo("AbductiveTask"), eo("RankingTask")]
}

/// Draws `count` values from `strategy` with a fixed seed.
pub fn sample<S: Strategy>(strategy: S, count: usize, seed: u8) -> Vec<S::Value> {
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]);
    let mut runner = TestRunner::new_with_rng(Config::default(), rng);
    (0..count).map(|_| strategy.new_tree(&mut runner).expect("strategy generates").current()).collect()
}

/// Reference evaluator: closed-world semantics written directly against
/// `Graph::iter`, with its own naive classification loop.
pub struct Naive<'a> {
    ont: &'a Ontology,
    graph: &'a Graph,
    pub types: BTreeMap<Term, BTreeSet<Iri>>,
}

impl<'a> Naive<'a> {
    pub fn new(ont: &'a Ontology, graph: &'a Graph) -> Naive<'a> {
        let mut naive = Naive { ont, graph, types: BTreeMap::new() };
        for t in graph.iter() {
            if t.predicate == rdf_type() {
                if let Term::Iri(c) = &t.object {
                    let sups = ont.superclasses_or_self(c);
                    naive.types.entry(t.subject.clone()).or_default().extend(sups);
                }
            }
        }
        let nodes: BTreeSet<Term> =
            graph.iter().flat_map(|t| [t.subject.clone(), t.object.clone()]).filter(|n| !n.is_literal()).collect();
        loop {
            let mut added = Vec::new();
            for (class, expr) in ont.equivalences() {
                for n in &nodes {
                    if !naive.has(n, class) && naive.holds(n, expr) {
                        added.push((n.clone(), class.clone()));
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            for (n, c) in added {
                let sups = naive.ont.superclasses_or_self(&c);
                naive.types.entry(n).or_default().extend(sups);
            }
        }
        naive
    }

    fn has(&self, n: &Term, c: &Iri) -> bool {
        self.types.get(n).is_some_and(|t| t.contains(c))
    }

    pub fn holds(&self, n: &Term, expr: &ClassExpression) -> bool {
        match expr {
            ClassExpression::Named(c) => self.has(n, c),
            ClassExpression::And(ops) => ops.iter().all(|op| self.holds(n, op)),
            ClassExpression::Or(ops) => ops.iter().any(|op| self.holds(n, op)),
            ClassExpression::Exists { property, filler } => {
                self.graph.iter().any(|t| &t.subject == n && &t.predicate == property && self.holds(&t.object, filler))
            }
            ClassExpression::AtLeast { count, property, filler } => {
                let objects: BTreeSet<&Term> = self
                    .graph
                    .iter()
                    .filter(|t| &t.subject == n && &t.predicate == property && self.holds(&t.object, filler))
                    .map(|t| &t.object)
                    .collect();
                objects.len() >= *count as usize
            }
        }
    }
}

/// Every node mentioned in `graph` (subjects and non-literal objects).
pub fn nodes(graph: &Graph) -> BTreeSet<Term> {
    graph.iter().flat_map(|t| [t.subject.clone(), t.object.clone()]).filter(|n| !n.is_literal()).collect()
}
