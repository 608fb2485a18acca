//! Explanation-type modeling toolkit.
//!
//! The crate stores RDF-style instance data ([`graph`]), reads and writes the
//! Turtle and Manchester subsets ([`syntax`]), ships the explanation ontology
//! with its nine explanation types ([`schema`]), decides closed-world class
//! membership ([`reasoner`]), recommends explanation types from capability
//! profiles ([`recommender`]) and answers basic graph-pattern queries over the
//! schema and instance data ([`query`]).

pub mod graph;
pub mod query;
pub mod reasoner;
pub mod recommender;
pub mod schema;
pub mod syntax;
pub mod vocab;

pub use graph::{BlankNode, Graph, GraphBuilder, GraphError, Iri, Literal, PrefixMap, Term, Triple};
pub use query::{execute, parse_query, schema_view, BindingSet, Query, QueryError, SchemaView, Value};
pub use reasoner::{
    check_membership, classify_explanations, instances_of, superclasses, validate_graph, Diagnostic, Diagnostics,
    MembershipReport, Origin, Reasoner, Severity, TraceNode,
};
pub use recommender::{
    abstractly_satisfiable, applicable_types, example_questions, method_labels, methods_for_type, plan_for_question,
    CapabilityProfile, GenerationPlan, QuestionDescriptor, QuestionIntent, QuestionPlan, QuestionSource,
    RecommendationEntry, RecommendationReport, RecommenderError, Satisfiability,
};
pub use schema::{
    builtin_ontology, explanation_types, seed_kb, sufficiency_condition, AliasTable, Axiom, ClassExpression,
    ExplanationKind, ExplanationTypeSpec, Ontology, SchemaError, SeedKnowledgeBase,
};
pub use syntax::{parse_manchester, parse_turtle, serialize_manchester, serialize_turtle, SyntaxError, TurtleDocument};
