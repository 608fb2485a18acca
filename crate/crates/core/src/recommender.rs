//! Capability-level selection of explanation types.
//!
//! A profile lists what a system can produce (knowledge and recommendation
//! classes), which AI tasks and methods it runs, and optionally its active
//! reasoning mode. Conditions are evaluated at the type level: a named class
//! is available when the profile offers it or one of its subclasses, and
//! restrictions reduce to their filler, so cardinalities are ignored.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GraphError, Iri};
use crate::schema::{
    sufficiency_condition, ClassExpression, ExplanationKind, Ontology, SchemaError, SeedKnowledgeBase,
};
use crate::vocab::eo;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecommenderError {
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error(transparent)]
    Name(#[from] GraphError),
    #[error("{0} is not declared in the ontology")]
    Undeclared(Iri),
    #[error("{0} is not a class")]
    NotAClass(Iri),
    #[error("unknown question intent {0:?}")]
    UnknownIntent(String),
    #[error("invalid document: {0}")]
    Document(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CapabilityProfile {
    pub producible_classes: BTreeSet<Iri>,
    pub tasks: BTreeSet<Iri>,
    pub methods: BTreeSet<Iri>,
    pub mode: Option<Iri>,
}

/// On-disk shape of a profile: CURIEs or `<iri>` strings.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileDocument {
    #[serde(default)]
    pub producible_classes: Vec<String>,
    #[serde(default)]
    pub tasks: Vec<String>,
    #[serde(default)]
    pub methods: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
}

impl CapabilityProfile {
    /// Checks that every class is a declared class and the mode is declared.
    pub fn validate(&self, ont: &Ontology) -> Result<(), RecommenderError> {
        for iri in self.producible_classes.iter().chain(&self.tasks).chain(&self.methods) {
            if !ont.is_declared(iri) {
                return Err(RecommenderError::Undeclared(iri.clone()));
            }
            if !ont.is_class(iri) {
                return Err(RecommenderError::NotAClass(iri.clone()));
            }
        }
        match &self.mode {
            Some(mode) if !ont.is_declared(mode) => Err(RecommenderError::Undeclared(mode.clone())),
            _ => Ok(()),
        }
    }

    pub fn from_document(ont: &Ontology, doc: &ProfileDocument) -> Result<CapabilityProfile, RecommenderError> {
        let expand = |items: &[String]| -> Result<BTreeSet<Iri>, RecommenderError> {
            items.iter().map(|c| Ok(ont.prefixes().expand(c)?)).collect()
        };
        let profile = CapabilityProfile {
            producible_classes: expand(&doc.producible_classes)?,
            tasks: expand(&doc.tasks)?,
            methods: expand(&doc.methods)?,
            mode: doc.mode.as_deref().map(|m| ont.prefixes().expand(m)).transpose()?,
        };
        profile.validate(ont)?;
        Ok(profile)
    }

    pub fn from_toml(ont: &Ontology, text: &str) -> Result<CapabilityProfile, RecommenderError> {
        let doc: ProfileDocument = toml::from_str(text).map_err(|e| RecommenderError::Document(e.to_string()))?;
        CapabilityProfile::from_document(ont, &doc)
    }

    pub fn to_document(&self, ont: &Ontology) -> ProfileDocument {
        let render = |set: &BTreeSet<Iri>| set.iter().map(|i| ont.prefixes().render(i)).collect();
        ProfileDocument {
            producible_classes: render(&self.producible_classes),
            tasks: render(&self.tasks),
            methods: render(&self.methods),
            mode: self.mode.as_ref().map(|m| ont.prefixes().render(m)),
        }
    }

    /// Every class the profile offers, whatever its role.
    pub fn available(&self) -> BTreeSet<Iri> {
        let mut out: BTreeSet<Iri> =
            self.producible_classes.iter().chain(&self.tasks).chain(&self.methods).cloned().collect();
        out.extend(self.mode.iter().cloned());
        out
    }

    /// True when `self` offers everything `other` does.
    pub fn includes(&self, other: &CapabilityProfile) -> bool {
        self.producible_classes.is_superset(&other.producible_classes)
            && self.tasks.is_superset(&other.tasks)
            && self.methods.is_superset(&other.methods)
            && (other.mode.is_none() || self.mode == other.mode)
    }
}

/// The nine question forms, each tied to one explanation type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuestionIntent {
    OtherSituations,
    BroaderInfo,
    WhyThisNotThat,
    WhatIfInput,
    WhyMakesSense,
    WhatStudies,
    WhatIfFollowed,
    WhatPercentage,
    WhatSteps,
}

impl QuestionIntent {
    pub const ALL: [QuestionIntent; 9] = [
        QuestionIntent::OtherSituations,
        QuestionIntent::BroaderInfo,
        QuestionIntent::WhyThisNotThat,
        QuestionIntent::WhatIfInput,
        QuestionIntent::WhyMakesSense,
        QuestionIntent::WhatStudies,
        QuestionIntent::WhatIfFollowed,
        QuestionIntent::WhatPercentage,
        QuestionIntent::WhatSteps,
    ];

    pub fn token(self) -> &'static str {
        match self {
            QuestionIntent::OtherSituations => "other-situations",
            QuestionIntent::BroaderInfo => "broader-info",
            QuestionIntent::WhyThisNotThat => "why-this-not-that",
            QuestionIntent::WhatIfInput => "what-if-input",
            QuestionIntent::WhyMakesSense => "why-makes-sense",
            QuestionIntent::WhatStudies => "what-studies",
            QuestionIntent::WhatIfFollowed => "what-if-followed",
            QuestionIntent::WhatPercentage => "what-percentage",
            QuestionIntent::WhatSteps => "what-steps",
        }
    }

    pub fn kind(self) -> ExplanationKind {
        match self {
            QuestionIntent::OtherSituations => ExplanationKind::CaseBased,
            QuestionIntent::BroaderInfo => ExplanationKind::Contextual,
            QuestionIntent::WhyThisNotThat => ExplanationKind::Contrastive,
            QuestionIntent::WhatIfInput => ExplanationKind::Counterfactual,
            QuestionIntent::WhyMakesSense => ExplanationKind::Everyday,
            QuestionIntent::WhatStudies => ExplanationKind::Scientific,
            QuestionIntent::WhatIfFollowed => ExplanationKind::SimulationBased,
            QuestionIntent::WhatPercentage => ExplanationKind::Statistical,
            QuestionIntent::WhatSteps => ExplanationKind::TraceBased,
        }
    }

    pub fn for_kind(kind: ExplanationKind) -> QuestionIntent {
        QuestionIntent::ALL.into_iter().find(|i| i.kind() == kind).expect("every kind has an intent")
    }

    /// The prototypical question this intent stands for.
    pub fn question(self) -> &'static str {
        self.kind().prototypical_question()
    }
}

impl fmt::Display for QuestionIntent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for QuestionIntent {
    type Err = RecommenderError;

    fn from_str(s: &str) -> Result<QuestionIntent, RecommenderError> {
        QuestionIntent::ALL
            .into_iter()
            .find(|i| i.token() == s.trim())
            .ok_or_else(|| RecommenderError::UnknownIntent(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuestionDescriptor {
    pub intent: QuestionIntent,
    /// Carried along for display; never interpreted.
    pub text: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuestionDocument {
    pub intent: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
}

impl QuestionDescriptor {
    pub fn new(intent: QuestionIntent) -> QuestionDescriptor {
        QuestionDescriptor { intent, text: None }
    }

    pub fn from_toml(text: &str) -> Result<QuestionDescriptor, RecommenderError> {
        let doc: QuestionDocument = toml::from_str(text).map_err(|e| RecommenderError::Document(e.to_string()))?;
        Ok(QuestionDescriptor { intent: doc.intent.parse()?, text: doc.text })
    }

    pub fn to_document(&self) -> QuestionDocument {
        QuestionDocument { intent: self.intent.token().to_string(), text: self.text.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Satisfiability {
    pub satisfiable: bool,
    /// Smallest set of classes whose addition would make the expression
    /// satisfiable; empty exactly when it already is.
    pub missing: BTreeSet<Iri>,
    /// Leaf classes of the smallest satisfied branch; empty when unsatisfiable.
    pub required: BTreeSet<Iri>,
}

/// Disjunctive normal form over named leaves; restrictions contribute their filler.
fn dnf(expr: &ClassExpression) -> Vec<BTreeSet<Iri>> {
    match expr {
        ClassExpression::Named(c) => vec![BTreeSet::from([c.clone()])],
        ClassExpression::Exists { filler, .. } | ClassExpression::AtLeast { filler, .. } => dnf(filler),
        ClassExpression::Or(ops) => prune(ops.iter().flat_map(dnf).collect()),
        ClassExpression::And(ops) => {
            let mut acc = vec![BTreeSet::new()];
            for op in ops {
                let branches = dnf(op);
                let mut next = Vec::with_capacity(acc.len() * branches.len());
                for left in &acc {
                    for right in &branches {
                        next.push(left.union(right).cloned().collect());
                    }
                }
                acc = prune(next);
            }
            acc
        }
    }
}

/// Drops duplicate and superset conjuncts; they never give a smaller answer.
fn prune(mut sets: Vec<BTreeSet<Iri>>) -> Vec<BTreeSet<Iri>> {
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut kept: Vec<BTreeSet<Iri>> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    kept
}

fn smallest(sets: impl Iterator<Item = BTreeSet<Iri>>) -> Option<BTreeSet<Iri>> {
    sets.min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
}

fn covered(ont: &Ontology, available: &BTreeSet<Iri>, class: &Iri) -> bool {
    available.iter().any(|d| ont.is_subclass_of(d, class))
}

pub fn abstractly_satisfiable(ont: &Ontology, profile: &CapabilityProfile, expr: &ClassExpression) -> Satisfiability {
    let available = profile.available();
    let branches = dnf(expr);
    let uncovered = |branch: &BTreeSet<Iri>| -> BTreeSet<Iri> {
        branch.iter().filter(|c| !covered(ont, &available, c)).cloned().collect()
    };
    let missing = smallest(branches.iter().map(uncovered)).unwrap_or_default();
    let satisfiable = missing.is_empty();
    let required = if satisfiable {
        smallest(branches.iter().filter(|b| uncovered(b).is_empty()).cloned()).unwrap_or_default()
    } else {
        BTreeSet::new()
    };
    Satisfiability { satisfiable, missing, required }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationPlan {
    pub task: Iri,
    pub method: Iri,
    pub required_knowledge: BTreeSet<Iri>,
    /// Whether the profile supports both the task and the method.
    pub runnable: bool,
}

impl GenerationPlan {
    /// One-line instruction, e.g. "run `Inductive' AI task with `Clustering' method to generate numerical evidence".
    pub fn describe(&self, ont: &Ontology) -> String {
        let name = |iri: &Iri| ont.label(iri).map_or_else(|| iri.local_name().to_string(), str::to_string);
        let produced: Vec<String> = self.required_knowledge.iter().map(|k| name(k).to_lowercase()).collect();
        let target = if produced.is_empty() { "the explanation".to_string() } else { produced.join(" and ") };
        format!("run `{}' AI task with `{}' method to generate {target}", name(&self.task), name(&self.method))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecommendationEntry {
    pub kind: ExplanationKind,
    pub satisfiable: bool,
    pub missing: BTreeSet<Iri>,
    /// Context-rule entries the profile covers.
    pub context_matched: BTreeSet<Iri>,
    /// Whether the type has a context rule and the profile covers all of it.
    pub context_complete: bool,
    pub required: BTreeSet<Iri>,
    pub plan: Option<GenerationPlan>,
}

impl RecommendationEntry {
    /// "Contrastive explanation"
    pub fn title(&self) -> String {
        format!("{} explanation", self.kind.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecommendationReport {
    pub entries: Vec<RecommendationEntry>,
}

impl RecommendationReport {
    pub fn top(&self) -> Option<&RecommendationEntry> {
        self.entries.first().filter(|e| e.satisfiable)
    }

    pub fn satisfiable(&self) -> impl Iterator<Item = &RecommendationEntry> {
        self.entries.iter().filter(|e| e.satisfiable)
    }

    pub fn entry(&self, kind: ExplanationKind) -> Option<&RecommendationEntry> {
        self.entries.iter().find(|e| e.kind == kind)
    }
}

fn plan_for(
    ont: &Ontology,
    seed: &SeedKnowledgeBase,
    profile: &CapabilityProfile,
    kind: ExplanationKind,
    required: &BTreeSet<Iri>,
) -> Option<GenerationPlan> {
    let supports = |offered: &BTreeSet<Iri>, wanted: &Iri| offered.iter().any(|o| ont.is_subclass_of(o, wanted));
    let pairs = seed.generators_for(kind);
    let chosen = pairs
        .iter()
        .find(|(t, m)| supports(&profile.tasks, t) && supports(&profile.methods, m))
        .or_else(|| pairs.iter().next())?;
    let knowledge = eo("Knowledge");
    Some(GenerationPlan {
        task: chosen.0.clone(),
        method: chosen.1.clone(),
        required_knowledge: required.iter().filter(|c| ont.is_subclass_of(c, &knowledge)).cloned().collect(),
        runnable: supports(&profile.tasks, &chosen.0) && supports(&profile.methods, &chosen.1),
    })
}

fn evaluate(
    ont: &Ontology,
    seed: &SeedKnowledgeBase,
    profile: &CapabilityProfile,
    kind: ExplanationKind,
) -> Result<RecommendationEntry, RecommenderError> {
    let condition = sufficiency_condition(ont, &kind.class())?;
    let sat = abstractly_satisfiable(ont, profile, condition);
    let available = profile.available();
    let rule = seed.context_for(kind);
    let context_matched: BTreeSet<Iri> = rule.iter().filter(|r| covered(ont, &available, r)).cloned().collect();
    let context_complete = !rule.is_empty() && context_matched.len() == rule.len();
    let plan = if sat.satisfiable { plan_for(ont, seed, profile, kind, &sat.required) } else { None };
    Ok(RecommendationEntry {
        kind,
        satisfiable: sat.satisfiable,
        missing: sat.missing,
        context_matched,
        context_complete,
        required: sat.required,
        plan,
    })
}

/// All nine types, satisfiable ones first. Among those, a fully covered
/// context rule ranks highest, then more matched context entries, then
/// fewer required classes, then the type token.
pub fn applicable_types(
    ont: &Ontology,
    seed: &SeedKnowledgeBase,
    profile: &CapabilityProfile,
) -> Result<RecommendationReport, RecommenderError> {
    let mut entries =
        ExplanationKind::ALL.into_iter().map(|k| evaluate(ont, seed, profile, k)).collect::<Result<Vec<_>, _>>()?;
    entries.sort_by(|a, b| {
        b.satisfiable
            .cmp(&a.satisfiable)
            .then(b.context_complete.cmp(&a.context_complete))
            .then(b.context_matched.len().cmp(&a.context_matched.len()))
            .then(a.required.len().cmp(&b.required.len()))
            .then(a.missing.len().cmp(&b.missing.len()))
            .then(a.kind.token().cmp(b.kind.token()))
    });
    Ok(RecommendationReport { entries })
}

/// Answer to a user question: the bound type, and either a plan or the gap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuestionPlan {
    pub question: QuestionDescriptor,
    pub kind: ExplanationKind,
    pub satisfiable: bool,
    pub missing: BTreeSet<Iri>,
    pub plan: Option<GenerationPlan>,
}

impl QuestionPlan {
    /// Human-readable answer lines.
    pub fn answer_lines(&self, ont: &Ontology) -> Vec<String> {
        let mut lines = vec![format!("Explanation type: {}", self.kind.name().to_lowercase())];
        if let Some(plan) = &self.plan {
            lines.push(format!("System: {}", plan.describe(ont)));
        }
        if !self.missing.is_empty() {
            let names: Vec<String> = self.missing.iter().map(|m| ont.prefixes().render(m)).collect();
            lines.push(format!("Missing: {}", names.join(", ")));
        }
        lines
    }
}

pub fn plan_for_question(
    ont: &Ontology,
    seed: &SeedKnowledgeBase,
    profile: &CapabilityProfile,
    question: &QuestionDescriptor,
) -> Result<QuestionPlan, RecommenderError> {
    let entry = evaluate(ont, seed, profile, question.intent.kind())?;
    Ok(QuestionPlan {
        question: question.clone(),
        kind: entry.kind,
        satisfiable: entry.satisfiable,
        missing: entry.missing,
        plan: entry.plan,
    })
}

fn kind_of(class: &Iri) -> Result<ExplanationKind, RecommenderError> {
    ExplanationKind::from_class(class)
        .ok_or_else(|| SchemaError::UnknownExplanationType(class.as_str().to_string()).into())
}

/// Task/method pairs recorded as generators of the type.
pub fn methods_for_type(seed: &SeedKnowledgeBase, class: &Iri) -> Result<BTreeSet<(Iri, Iri)>, RecommenderError> {
    Ok(seed.generators_for(kind_of(class)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum QuestionSource {
    Seed,
    Prototypical,
}

/// Seed questions followed by the type's prototypical question (once).
pub fn example_questions(
    seed: &SeedKnowledgeBase,
    class: &Iri,
) -> Result<Vec<(String, QuestionSource)>, RecommenderError> {
    let kind = kind_of(class)?;
    let mut out: Vec<(String, QuestionSource)> =
        seed.questions_for(kind).iter().map(|q| (q.clone(), QuestionSource::Seed)).collect();
    let proto = kind.prototypical_question();
    if !out.iter().any(|(q, _)| q == proto) {
        out.push((proto.to_string(), QuestionSource::Prototypical));
    }
    Ok(out)
}

/// Distinct method labels in alphabetical order, e.g. for trace-based
/// "Knowledge-based systems", "Machine learning model: decision trees".
pub fn method_labels(ont: &Ontology, pairs: &BTreeSet<(Iri, Iri)>) -> Vec<String> {
    let labels: BTreeSet<String> =
        pairs.iter().map(|(_, m)| ont.label(m).map_or_else(|| m.local_name().to_string(), str::to_string)).collect();
    labels.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schema::{builtin_ontology, seed_kb};
    use crate::vocab::ep;

    fn profile(classes: &[Iri], tasks: &[Iri], methods: &[Iri]) -> CapabilityProfile {
        CapabilityProfile {
            producible_classes: classes.iter().cloned().collect(),
            tasks: tasks.iter().cloned().collect(),
            methods: methods.iter().cloned().collect(),
            mode: None,
        }
    }

    fn q4_profile() -> CapabilityProfile {
        profile(
            &[eo("SystemRecommendation"), eo("Fact"), eo("Foil"), eo("ContextualKnowledge"), eo("ScientificKnowledge")],
            &[eo("AbductiveTask"), eo("RankingTask")],
            &[],
        )
    }

    #[test]
    fn contextual_satisfied_by_situation() {
        let ont = builtin_ontology();
        let p = profile(&[eo("SystemRecommendation"), eo("ContextualKnowledge"), ep("Situation")], &[], &[]);
        let cond = sufficiency_condition(&ont, &eo("ContextualExplanation")).unwrap();
        let sat = abstractly_satisfiable(&ont, &p, cond);
        assert!(sat.satisfiable);
        assert!(sat.missing.is_empty());
        assert_eq!(sat.required.len(), 3);
    }

    #[test]
    fn trace_based_gap() {
        let ont = builtin_ontology();
        let p = profile(&[eo("SystemRecommendation")], &[], &[]);
        let cond = sufficiency_condition(&ont, &eo("TraceBasedExplanation")).unwrap();
        let sat = abstractly_satisfiable(&ont, &p, cond);
        assert!(!sat.satisfiable);
        assert_eq!(sat.missing, BTreeSet::from([eo("SystemTrace")]));
    }

    #[test]
    fn subclass_covers_superclass() {
        let ont = builtin_ontology();
        let p = profile(&[eo("NumericalEvidence")], &[], &[]);
        let sat = abstractly_satisfiable(&ont, &p, &ClassExpression::named(eo("Knowledge")));
        assert!(sat.satisfiable);
        let p = profile(&[eo("Knowledge")], &[], &[]);
        assert!(!abstractly_satisfiable(&ont, &p, &ClassExpression::named(eo("NumericalEvidence"))).satisfiable);
    }

    #[test]
    fn or_picks_fewest_missing() {
        let ont = builtin_ontology();
        let e = ClassExpression::or(vec![
            ClassExpression::and(vec![ClassExpression::named(eo("Fact")), ClassExpression::named(eo("Foil"))]),
            ClassExpression::named(eo("User")),
        ]);
        let sat = abstractly_satisfiable(&ont, &CapabilityProfile::default(), &e);
        assert_eq!(sat.missing, BTreeSet::from([eo("User")]));
    }

    #[test]
    fn empty_profile_rejects_everything() {
        let ont = builtin_ontology();
        let report = applicable_types(&ont, &seed_kb(), &CapabilityProfile::default()).unwrap();
        assert_eq!(report.entries.len(), 9);
        assert!(report.entries.iter().all(|e| !e.satisfiable && !e.missing.is_empty()));
        assert!(report.top().is_none());
    }

    #[test]
    fn supremum_profile_accepts_everything() {
        let ont = builtin_ontology();
        let p = profile(&ont.classes().iter().cloned().collect::<Vec<_>>(), &[], &[]);
        let report = applicable_types(&ont, &seed_kb(), &p).unwrap();
        assert!(report.entries.iter().all(|e| e.satisfiable && e.missing.is_empty()));
    }

    #[test]
    fn q4_ranks_contrastive_first() {
        let ont = builtin_ontology();
        let report = applicable_types(&ont, &seed_kb(), &q4_profile()).unwrap();
        let top = report.top().unwrap();
        assert_eq!(top.kind, ExplanationKind::Contrastive);
        assert_eq!(top.title(), "Contrastive explanation");
        assert!(top.context_complete);
    }

    #[test]
    fn q5_statistical_plan() {
        let ont = builtin_ontology();
        let p = profile(
            &[eo("SystemRecommendation"), eo("NumericalEvidence")],
            &[eo("InductiveTask")],
            &[eo("Clustering")],
        );
        let q = QuestionDescriptor {
            intent: QuestionIntent::WhatPercentage,
            text: Some("numerical evidence about patients on this drug".into()),
        };
        let answer = plan_for_question(&ont, &seed_kb(), &p, &q).unwrap();
        assert_eq!(answer.kind, ExplanationKind::Statistical);
        let plan = answer.plan.as_ref().unwrap();
        assert!(plan.runnable);
        assert_eq!(
            answer.answer_lines(&ont),
            [
                "Explanation type: statistical",
                "System: run `Inductive' AI task with `Clustering' method to generate numerical evidence"
            ]
        );
    }

    #[test]
    fn what_steps_without_trace() {
        let ont = builtin_ontology();
        let q = QuestionDescriptor::new(QuestionIntent::WhatSteps);
        let answer = plan_for_question(&ont, &seed_kb(), &q4_profile(), &q).unwrap();
        assert_eq!(answer.kind, ExplanationKind::TraceBased);
        assert!(!answer.satisfiable);
        assert_eq!(answer.missing, BTreeSet::from([eo("SystemTrace")]));
        assert!(answer.plan.is_none());
    }

    #[test]
    fn intents_are_a_bijection() {
        let kinds: BTreeSet<ExplanationKind> = QuestionIntent::ALL.iter().map(|i| i.kind()).collect();
        assert_eq!(kinds.len(), 9);
        for kind in ExplanationKind::ALL {
            assert_eq!(QuestionIntent::for_kind(kind).kind(), kind);
        }
        for intent in QuestionIntent::ALL {
            assert_eq!(intent.token().parse::<QuestionIntent>().unwrap(), intent);
        }
        assert!("why".parse::<QuestionIntent>().is_err());
    }

    #[test]
    fn methods_and_questions() {
        let ont = builtin_ontology();
        let seed = seed_kb();
        let pairs = methods_for_type(&seed, &eo("TraceBasedExplanation")).unwrap();
        assert_eq!(method_labels(&ont, &pairs), ["Knowledge-based systems", "Machine learning model: decision trees"]);
        assert!(methods_for_type(&seed, &eo("EverydayExplanation")).unwrap().is_empty());
        assert!(methods_for_type(&seed, &eo("Fact")).is_err());

        let qs = example_questions(&seed, &eo("SimulationBasedExplanation")).unwrap();
        assert_eq!(
            qs,
            [("What would happen if this recommendation is followed?".to_string(), QuestionSource::Prototypical)]
        );
        let qs = example_questions(&seed, &eo("CounterfactualExplanation")).unwrap();
        assert_eq!(qs.len(), 3);
        assert_eq!(qs[2].0, "What if input A was over 1000?");
    }

    #[test]
    fn profile_documents() {
        let ont = builtin_ontology();
        let p = CapabilityProfile::from_toml(
            &ont,
            r#"
            producible_classes = ["eo:SystemRecommendation", "eo:NumericalEvidence"]
            tasks = ["eo:InductiveTask"]
            methods = ["eo:Clustering"]
            mode = "eo:TreatmentPlanning"
            "#,
        )
        .unwrap();
        assert_eq!(p.mode, Some(eo("TreatmentPlanning")));
        let back = toml::to_string(&p.to_document(&ont)).unwrap();
        assert_eq!(CapabilityProfile::from_toml(&ont, &back).unwrap(), p);

        assert_eq!(
            CapabilityProfile::from_toml(&ont, "tasks = [\"eo:Nope\"]").unwrap_err(),
            RecommenderError::Undeclared(eo("Nope"))
        );
        assert!(matches!(CapabilityProfile::from_toml(&ont, "producible = []"), Err(RecommenderError::Document(_))));
        let q = QuestionDescriptor::from_toml("intent = \"what-steps\"\ntext = \"how?\"").unwrap();
        assert_eq!(q.intent, QuestionIntent::WhatSteps);
        assert!(QuestionDescriptor::from_toml("intent = \"huh\"").is_err());
    }
}
