use std::collections::{BTreeMap, BTreeSet};

use super::{Axiom, ClassExpression, ExplanationKind, Ontology, SchemaError};
use crate::graph::{Graph, Iri, Term};
use crate::vocab::{self, eo};

/// Design-time knowledge behind the competency questions: which task/method
/// pairs generate each explanation type, example questions, and the context
/// (tasks, reasoning modes, knowledge) each type is tied to.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SeedKnowledgeBase {
    pub generators: BTreeMap<ExplanationKind, BTreeSet<(Iri, Iri)>>,
    pub example_questions: BTreeMap<ExplanationKind, Vec<String>>,
    pub context_rules: BTreeMap<ExplanationKind, BTreeSet<Iri>>,
}

pub fn seed_kb() -> SeedKnowledgeBase {
    let mut kb = SeedKnowledgeBase::default();
    kb.generators.insert(
        ExplanationKind::TraceBased,
        BTreeSet::from([(eo("AITask"), eo("KnowledgeBasedSystem")), (eo("AITask"), eo("DecisionTree"))]),
    );
    kb.generators.insert(ExplanationKind::Statistical, BTreeSet::from([(eo("InductiveTask"), eo("Clustering"))]));
    kb.example_questions.insert(
        ExplanationKind::Counterfactual,
        vec![
            "What other factors about the patient does the system know of?".to_string(),
            "What if the major problem was a fasting plasma glucose?".to_string(),
        ],
    );
    kb.context_rules.insert(
        ExplanationKind::Contrastive,
        BTreeSet::from([eo("AbductiveTask"), eo("RankingTask"), eo("Fact"), eo("Foil")]),
    );
    kb.context_rules.insert(ExplanationKind::TraceBased, BTreeSet::from([eo("TreatmentPlanning")]));
    kb.context_rules.insert(ExplanationKind::Scientific, BTreeSet::from([eo("PlanCritiquing")]));
    kb
}

impl SeedKnowledgeBase {
    /// Every referenced IRI must be declared in `ont`.
    pub fn validate(&self, ont: &Ontology) -> Result<(), SchemaError> {
        let pairs = self.generators.values().flatten().flat_map(|(t, m)| [t, m]);
        let context = self.context_rules.values().flatten();
        match pairs.chain(context).find(|iri| !ont.is_declared(iri)) {
            Some(iri) => Err(SchemaError::Undeclared(iri.clone())),
            None => Ok(()),
        }
    }

    pub fn generators_for(&self, kind: ExplanationKind) -> BTreeSet<(Iri, Iri)> {
        self.generators.get(&kind).cloned().unwrap_or_default()
    }

    pub fn questions_for(&self, kind: ExplanationKind) -> &[String] {
        self.example_questions.get(&kind).map_or(&[], Vec::as_slice)
    }

    pub fn context_for(&self, kind: ExplanationKind) -> BTreeSet<Iri> {
        self.context_rules.get(&kind).cloned().unwrap_or_default()
    }

    /// Applies an overlay document.
    ///
    /// Overlay vocabulary, with subjects being explanation classes:
    /// `eo:hasGenerator [ eo:task T ; eo:method M ]`, `eo:hasExampleQuestion "..."`,
    /// `eo:hasContextRequirement C`. New task or method classes may be declared in
    /// the same document with `rdfs:subClassOf` (onto a declared class) and
    /// `rdfs:label`; the returned ontology carries those declarations.
    pub fn with_overlay(&self, ont: &Ontology, overlay: &Graph) -> Result<(Ontology, SeedKnowledgeBase), SchemaError> {
        let has_generator = eo("hasGenerator");
        let has_question = eo("hasExampleQuestion");
        let has_context = eo("hasContextRequirement");
        let task = eo("task");
        let method = eo("method");
        let sub_class_of = vocab::rdfs("subClassOf");
        let label = vocab::rdfs_label();

        let mut extra = Vec::new();
        let mut labels = BTreeMap::new();
        for t in overlay.with_predicate(&sub_class_of) {
            let (Term::Iri(sub), Term::Iri(sup)) = (&t.subject, &t.object) else {
                return Err(SchemaError::Overlay(format!("subClassOf needs IRIs: {t}")));
            };
            if !ont.is_class(sub) {
                extra.push(Axiom::ClassDeclaration(sub.clone()));
            }
            extra.push(Axiom::SubClassOf { sub: sub.clone(), sup: ClassExpression::named(sup.clone()) });
            for l in overlay.objects(&t.subject, &label) {
                if let Term::Literal(lit) = l {
                    labels.insert(sub.clone(), lit.text.clone());
                }
            }
        }
        let ont = if extra.is_empty() { ont.clone() } else { ont.extended(extra, labels)? };

        let mut kb = self.clone();
        let known = [&has_generator, &has_question, &has_context, &task, &method, &sub_class_of, &label];
        for t in overlay.iter() {
            if !known.contains(&&t.predicate) {
                return Err(SchemaError::Overlay(format!("unsupported predicate {}", t.predicate)));
            }
            let kind = || -> Result<ExplanationKind, SchemaError> {
                t.subject
                    .as_iri()
                    .and_then(ExplanationKind::from_class)
                    .ok_or_else(|| SchemaError::UnknownExplanationType(t.subject.to_string()))
            };
            if t.predicate == has_generator {
                let one = |p: &Iri| -> Result<Iri, SchemaError> {
                    let mut it = overlay.objects(&t.object, p);
                    match (it.next(), it.next()) {
                        (Some(Term::Iri(iri)), None) => Ok(iri.clone()),
                        _ => Err(SchemaError::Overlay(format!("generator {} needs exactly one {}", t.object, p))),
                    }
                };
                kb.generators.entry(kind()?).or_default().insert((one(&task)?, one(&method)?));
            } else if t.predicate == has_question {
                let Term::Literal(lit) = &t.object else {
                    return Err(SchemaError::Overlay(format!("example question must be a literal: {t}")));
                };
                let list = kb.example_questions.entry(kind()?).or_default();
                if !list.contains(&lit.text) {
                    list.push(lit.text.clone());
                }
            } else if t.predicate == has_context {
                let Term::Iri(iri) = &t.object else {
                    return Err(SchemaError::Overlay(format!("context requirement must be an IRI: {t}")));
                };
                kb.context_rules.entry(kind()?).or_default().insert(iri.clone());
            }
        }
        kb.validate(&ont)?;
        Ok((ont, kb))
    }
}
