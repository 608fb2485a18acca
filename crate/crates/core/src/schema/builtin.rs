use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use super::{Axiom, ClassExpression, ExplanationKind, Ontology};
use crate::graph::{Iri, PrefixMap};
use crate::vocab::{eo, ep, prov, rdfs, sio};

fn named(iri: Iri) -> ClassExpression {
    ClassExpression::named(iri)
}

fn based_on(filler: ClassExpression) -> ClassExpression {
    ClassExpression::exists(ep("isBasedOn"), filler)
}

fn and(ops: Vec<ClassExpression>) -> ClassExpression {
    ClassExpression::and(ops)
}

fn or(ops: Vec<ClassExpression>) -> ClassExpression {
    ClassExpression::or(ops)
}

/// `isBasedOn some SystemRecommendation`
fn based_on_recommendation() -> ClassExpression {
    based_on(named(eo("SystemRecommendation")))
}

/// `isBasedOn some (SystemRecommendation and (prov:used some <used>))`
fn recommendation_using(used: ClassExpression) -> ClassExpression {
    based_on(and(vec![named(eo("SystemRecommendation")), ClassExpression::exists(prov("used"), used)]))
}

/// `isBasedOn some (<knowledge> and (sio:inRelationTo some <target>))`
fn knowledge_about(knowledge: Iri, target: Iri) -> ClassExpression {
    based_on(and(vec![named(knowledge), ClassExpression::exists(sio("inRelationTo"), named(target))]))
}

fn scientific_basis() -> ClassExpression {
    and(vec![
        named(eo("ScientificKnowledge")),
        or(vec![
            ClassExpression::exists(prov("wasGeneratedBy"), named(eo("Study"))),
            ClassExpression::exists(prov("wasAssociatedWith"), named(eo("ScientificMethod"))),
        ]),
    ])
}

pub(crate) fn condition(kind: ExplanationKind) -> ClassExpression {
    match kind {
        ExplanationKind::CaseBased => {
            and(vec![based_on_recommendation(), knowledge_about(eo("ObjectRecord"), ep("Situation"))])
        }
        ExplanationKind::Contextual => and(vec![
            based_on_recommendation(),
            or(vec![
                knowledge_about(eo("ContextualKnowledge"), ep("Situation")),
                knowledge_about(eo("ContextualKnowledge"), eo("ObjectRecord")),
            ]),
        ]),
        ExplanationKind::Contrastive => {
            and(vec![recommendation_using(named(eo("Fact"))), recommendation_using(named(eo("Foil")))])
        }
        ExplanationKind::Counterfactual => and(vec![
            ClassExpression::at_least(2, ep("isBasedOn"), named(eo("SystemRecommendation"))),
            recommendation_using(named(eo("AlternativeInput"))),
        ]),
        ExplanationKind::Everyday => {
            and(vec![based_on_recommendation(), knowledge_about(eo("EverydayKnowledge"), eo("User"))])
        }
        ExplanationKind::Scientific => or(vec![
            and(vec![based_on(scientific_basis()), based_on_recommendation()]),
            recommendation_using(scientific_basis()),
        ]),
        ExplanationKind::SimulationBased => {
            and(vec![based_on_recommendation(), knowledge_about(eo("Simulation"), ep("Situation"))])
        }
        ExplanationKind::Statistical => recommendation_using(named(eo("NumericalEvidence"))),
        ExplanationKind::TraceBased => recommendation_using(named(eo("SystemTrace"))),
    }
}

/// (IRI, label, direct named superclass)
const CLASSES: &[(&str, &str, &str, Option<&str>)] = &[
    ("ep", "Explanation", "Explanation", Some("sio:computationalEntity")),
    ("sio", "computationalEntity", "computational entity", None),
    ("eo", "SystemRecommendation", "System Recommendation", None),
    ("eo", "AITask", "AI Task", None),
    ("eo", "DeductiveTask", "Deductive", Some("eo:AITask")),
    ("eo", "InductiveTask", "Inductive", Some("eo:AITask")),
    ("eo", "AbductiveTask", "Abductive", Some("eo:AITask")),
    ("eo", "AbstractionTask", "Abstraction", Some("eo:AITask")),
    ("eo", "RankingTask", "Ranking", Some("eo:AITask")),
    ("eo", "AIMethod", "AI Method", None),
    ("eo", "KnowledgeBasedSystem", "Knowledge-based systems", Some("eo:AIMethod")),
    ("eo", "DecisionTree", "Machine learning model: decision trees", Some("eo:AIMethod")),
    ("eo", "Clustering", "Clustering", Some("eo:AIMethod")),
    ("eo", "ReasoningMode", "Reasoning Mode", None),
    ("eo", "User", "User", None),
    ("sio", "question", "question", None),
    ("eo", "ObjectRecord", "Object Record", None),
    ("ep", "Situation", "Situation", None),
    ("eo", "ExplanationModality", "Explanation Modality", None),
    ("eo", "Knowledge", "Knowledge", None),
    ("eo", "ContextualKnowledge", "Contextual Knowledge", Some("eo:Knowledge")),
    ("eo", "ScientificKnowledge", "Scientific Knowledge", Some("eo:Knowledge")),
    ("eo", "EverydayKnowledge", "Everyday Knowledge", Some("eo:Knowledge")),
    ("eo", "NumericalEvidence", "Numerical Evidence", Some("eo:Knowledge")),
    ("eo", "SystemTrace", "System Trace", Some("eo:Knowledge")),
    ("eo", "AlternativeInput", "Alternative Input", Some("eo:Knowledge")),
    ("eo", "Simulation", "Simulation", Some("eo:Knowledge")),
    ("eo", "Fact", "Fact", None),
    ("eo", "Foil", "Foil", None),
    ("eo", "ScientificMethod", "Scientific Method", None),
    ("eo", "Study", "Study", None),
];

const PROPERTIES: &[(&str, &str, &str)] = &[
    ("ep", "isBasedOn", "is based on"),
    ("ep", "isConceptualizedBy", "is conceptualized by"),
    ("ep", "hasSetting", "has setting"),
    ("eo", "implements", "implements"),
    ("eo", "addresses", "addresses"),
    ("sio", "inRelationTo", "in relation to"),
    ("sio", "hasOutput", "has output"),
    ("sio", "isInputIn", "is input in"),
    ("prov", "used", "used"),
    ("prov", "wasGeneratedBy", "was generated by"),
    ("prov", "wasAssociatedWith", "was associated with"),
    ("rdfs", "label", "label"),
];

const REASONING_MODES: &[(&str, &str)] = &[
    ("TreatmentPlanning", "Treatment Planning"),
    ("DifferentialDiagnosis", "Differential Diagnosis"),
    ("PlanCritiquing", "Plan Critiquing"),
];

fn iri(prefix: &str, local: &str) -> Iri {
    match prefix {
        "eo" => eo(local),
        "ep" => ep(local),
        "sio" => sio(local),
        "prov" => prov(local),
        "rdfs" => rdfs(local),
        other => unreachable!("no builtin namespace {other}"),
    }
}

fn curie(text: &str) -> Iri {
    let (prefix, local) = text.split_once(':').expect("builtin curie");
    iri(prefix, local)
}

fn build() -> Ontology {
    let mut axioms = Vec::new();
    let mut labels = BTreeMap::new();

    for &(prefix, local, label, sup) in CLASSES {
        let class = iri(prefix, local);
        axioms.push(Axiom::ClassDeclaration(class.clone()));
        if let Some(sup) = sup {
            axioms.push(Axiom::SubClassOf { sub: class.clone(), sup: named(curie(sup)) });
        }
        labels.insert(class, label.to_string());
    }
    for &(prefix, local, label) in PROPERTIES {
        let property = iri(prefix, local);
        axioms.push(Axiom::PropertyDeclaration(property.clone()));
        labels.insert(property, label.to_string());
    }

    for restriction in [
        based_on(named(eo("Knowledge"))),
        based_on(named(eo("SystemRecommendation"))),
        ClassExpression::exists(ep("isConceptualizedBy"), named(eo("AITask"))),
    ] {
        axioms.push(Axiom::SubClassOf { sub: ep("Explanation"), sup: restriction });
    }

    for kind in ExplanationKind::ALL {
        let class = kind.class();
        axioms.push(Axiom::ClassDeclaration(class.clone()));
        axioms.push(Axiom::EquivalentTo { class: class.clone(), expression: condition(kind) });
        axioms.push(Axiom::SubClassOf { sub: class.clone(), sup: named(ep("Explanation")) });
        labels.insert(class, kind.label());
    }

    axioms.push(Axiom::DisjointClasses(BTreeSet::from([eo("Fact"), eo("Foil")])));

    for &(local, label) in REASONING_MODES {
        axioms.push(Axiom::ClassAssertion { individual: eo(local), class: eo("ReasoningMode") });
        labels.insert(eo(local), label.to_string());
    }

    Ontology::new(axioms, PrefixMap::standard(), labels).expect("builtin ontology is well formed")
}

/// The explanation ontology shipped with the crate.
pub fn builtin_ontology() -> Ontology {
    static ONTOLOGY: OnceLock<Ontology> = OnceLock::new();
    ONTOLOGY.get_or_init(build).clone()
}
