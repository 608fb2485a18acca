use std::fmt;
use std::str::FromStr;

use super::{ClassExpression, SchemaError};
use crate::graph::Iri;
use crate::vocab::{self, eo};

/// The nine explanation types, in table order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExplanationKind {
    CaseBased,
    Contextual,
    Contrastive,
    Counterfactual,
    Everyday,
    Scientific,
    SimulationBased,
    Statistical,
    TraceBased,
}

impl ExplanationKind {
    pub const ALL: [ExplanationKind; 9] = [
        ExplanationKind::CaseBased,
        ExplanationKind::Contextual,
        ExplanationKind::Contrastive,
        ExplanationKind::Counterfactual,
        ExplanationKind::Everyday,
        ExplanationKind::Scientific,
        ExplanationKind::SimulationBased,
        ExplanationKind::Statistical,
        ExplanationKind::TraceBased,
    ];

    /// Kebab-case command-line token.
    pub fn token(self) -> &'static str {
        match self {
            ExplanationKind::CaseBased => "case-based",
            ExplanationKind::Contextual => "contextual",
            ExplanationKind::Contrastive => "contrastive",
            ExplanationKind::Counterfactual => "counterfactual",
            ExplanationKind::Everyday => "everyday",
            ExplanationKind::Scientific => "scientific",
            ExplanationKind::SimulationBased => "simulation-based",
            ExplanationKind::Statistical => "statistical",
            ExplanationKind::TraceBased => "trace-based",
        }
    }

    /// Short display name, e.g. "Simulation Based".
    pub fn name(self) -> &'static str {
        match self {
            ExplanationKind::CaseBased => "Case Based",
            ExplanationKind::Contextual => "Contextual",
            ExplanationKind::Contrastive => "Contrastive",
            ExplanationKind::Counterfactual => "Counterfactual",
            ExplanationKind::Everyday => "Everyday",
            ExplanationKind::Scientific => "Scientific",
            ExplanationKind::SimulationBased => "Simulation Based",
            ExplanationKind::Statistical => "Statistical",
            ExplanationKind::TraceBased => "Trace Based",
        }
    }

    pub fn label(self) -> String {
        format!("{} Explanation", self.name())
    }

    pub fn class(self) -> Iri {
        eo(&format!("{}Explanation", self.name().replace(' ', "")))
    }

    pub fn from_class(class: &Iri) -> Option<ExplanationKind> {
        ExplanationKind::ALL.into_iter().find(|k| k.class() == *class)
    }

    pub fn prototypical_question(self) -> &'static str {
        match self {
            ExplanationKind::CaseBased => "To what other situations has this recommendation been applied?",
            ExplanationKind::Contextual => {
                "What broader information about the current situation prompted the suggestion of this recommendation?"
            }
            ExplanationKind::Contrastive => "Why choose option A over option B that I typically choose?",
            ExplanationKind::Counterfactual => "What if input A was over 1000?",
            ExplanationKind::Everyday => "Why does option A make sense",
            ExplanationKind::Scientific => "What studies have backed this recommendation?",
            ExplanationKind::SimulationBased => "What would happen if this recommendation is followed?",
            ExplanationKind::Statistical => "What percentage of people with this condition have recovered?",
            ExplanationKind::TraceBased => "What steps were taken by the system to generate this recommendation?",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            ExplanationKind::CaseBased => "Supports a conclusion by pointing at comparable prior cases.",
            ExplanationKind::Contextual => {
                "Draws on information beyond the direct inputs and output, such as the user and their situation."
            }
            ExplanationKind::Contrastive => {
                "Sets the given output and its supporting facts against an alternative output and its foil."
            }
            ExplanationKind::Counterfactual => "Shows which outcome a changed set of inputs would have produced.",
            ExplanationKind::Everyday => "Relies on common real-world accounts that fit what the user already knows.",
            ExplanationKind::Scientific => "Cites results of scientific methods, studies and measurements.",
            ExplanationKind::SimulationBased => "Runs an imitation of the situation and reports what emerges.",
            ExplanationKind::Statistical => "Reports numerical evidence about how likely outcomes are.",
            ExplanationKind::TraceBased => "Walks through the steps the system took to reach its result.",
        }
    }

    /// Whether the condition is printed in full in the source material
    /// rather than formalized here from a prose description.
    pub fn condition_is_verbatim(self) -> bool {
        matches!(self, ExplanationKind::Contextual | ExplanationKind::Scientific)
    }
}

impl fmt::Display for ExplanationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for ExplanationKind {
    type Err = SchemaError;

    /// Accepts the kebab token, the class local name, `eo:` CURIE or full IRI.
    fn from_str(s: &str) -> Result<ExplanationKind, SchemaError> {
        let s = s.trim();
        let local = s
            .strip_prefix('<')
            .and_then(|r| r.strip_suffix('>'))
            .and_then(|r| r.strip_prefix(vocab::EO))
            .or_else(|| s.strip_prefix("eo:"))
            .unwrap_or(s);
        ExplanationKind::ALL
            .into_iter()
            .find(|k| k.token() == local || k.class().local_name() == local)
            .ok_or_else(|| SchemaError::UnknownExplanationType(s.to_string()))
    }
}

/// One row of the explanation-type catalog.
#[derive(Debug, Clone, PartialEq)]
pub struct ExplanationTypeSpec {
    pub kind: ExplanationKind,
    pub class: Iri,
    pub label: String,
    pub description: String,
    pub prototypical_question: String,
    pub condition: ClassExpression,
    pub provenance: String,
}

impl ExplanationTypeSpec {
    pub fn new(kind: ExplanationKind, condition: ClassExpression) -> ExplanationTypeSpec {
        let provenance = if kind.condition_is_verbatim() {
            "published OWL restriction, transcribed as printed"
        } else {
            "formalized from the prose sufficiency condition over declared vocabulary"
        };
        ExplanationTypeSpec {
            kind,
            class: kind.class(),
            label: kind.label(),
            description: kind.description().to_string(),
            prototypical_question: kind.prototypical_question().to_string(),
            condition,
            provenance: provenance.to_string(),
        }
    }
}
