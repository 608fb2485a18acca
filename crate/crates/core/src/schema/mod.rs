//! The explanation ontology: axioms, the nine explanation types with their
//! sufficiency conditions, and the seed knowledge base behind the
//! competency questions.

mod builtin;
mod expr;
mod kinds;
mod seed;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{Iri, PrefixMap};
use crate::vocab;

pub use builtin::builtin_ontology;
pub use expr::ClassExpression;
pub use kinds::{ExplanationKind, ExplanationTypeSpec};
pub use seed::{seed_kb, SeedKnowledgeBase};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("undeclared term {0} used in an axiom")]
    Undeclared(Iri),
    #[error("subclass cycle through {0}")]
    SubclassCycle(Iri),
    #[error("malformed class expression: {0}")]
    MalformedExpression(String),
    #[error("unknown explanation type {0:?}")]
    UnknownExplanationType(String),
    #[error("unknown class {0}")]
    UnknownClass(Iri),
    #[error("seed overlay: {0}")]
    Overlay(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Axiom {
    ClassDeclaration(Iri),
    PropertyDeclaration(Iri),
    SubClassOf {
        sub: Iri,
        sup: ClassExpression,
    },
    EquivalentTo {
        class: Iri,
        expression: ClassExpression,
    },
    DisjointClasses(BTreeSet<Iri>),
    /// Named individual typed by a declared class; declares the individual.
    ClassAssertion {
        individual: Iri,
        class: Iri,
    },
}

/// Label and local-name lookup used to resolve quoted names such as
/// sio:`in relation to' or a bare `Study'.
///
/// Keys are case-folded with whitespace collapsed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AliasTable {
    entries: BTreeMap<String, BTreeSet<Iri>>,
}

impl AliasTable {
    pub fn new() -> AliasTable {
        AliasTable::default()
    }

    fn key(text: &str) -> String {
        text.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase()
    }

    pub fn insert(&mut self, text: &str, iri: Iri) {
        self.entries.entry(AliasTable::key(text)).or_default().insert(iri);
    }

    /// The single IRI known under `text`; ambiguous or absent names yield `None`.
    pub fn lookup(&self, text: &str) -> Option<&Iri> {
        let set = self.entries.get(&AliasTable::key(text))?;
        if set.len() == 1 {
            set.iter().next()
        } else {
            None
        }
    }

    /// The IRI known under `text` inside `namespace`.
    pub fn lookup_in(&self, text: &str, namespace: &Iri) -> Option<&Iri> {
        let mut hits = self
            .entries
            .get(&AliasTable::key(text))?
            .iter()
            .filter(|iri| iri.as_str().strip_prefix(namespace.as_str()).is_some_and(|rest| !rest.is_empty()));
        let first = hits.next()?;
        hits.next().is_none().then_some(first)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct Ontology {
    axioms: Vec<Axiom>,
    prefixes: PrefixMap,
    labels: BTreeMap<Iri, String>,
    aliases: AliasTable,
    classes: BTreeSet<Iri>,
    properties: BTreeSet<Iri>,
    individuals: BTreeMap<Iri, BTreeSet<Iri>>,
    superclasses: BTreeMap<Iri, BTreeSet<Iri>>,
    equivalences: Vec<(Iri, ClassExpression)>,
}

/// Predicates every graph may use without declaration.
fn is_builtin_property(iri: &Iri) -> bool {
    *iri == vocab::rdf_type()
}

impl Ontology {
    /// Validates declarations, expression shapes and subclass acyclicity.
    pub fn new(
        axioms: Vec<Axiom>,
        prefixes: PrefixMap,
        labels: BTreeMap<Iri, String>,
    ) -> Result<Ontology, SchemaError> {
        let mut classes = BTreeSet::new();
        let mut properties = BTreeSet::new();
        let mut individuals: BTreeMap<Iri, BTreeSet<Iri>> = BTreeMap::new();
        for axiom in &axioms {
            match axiom {
                Axiom::ClassDeclaration(c) => {
                    classes.insert(c.clone());
                }
                Axiom::PropertyDeclaration(p) => {
                    properties.insert(p.clone());
                }
                Axiom::ClassAssertion { individual, class } => {
                    individuals.entry(individual.clone()).or_default().insert(class.clone());
                }
                _ => {}
            }
        }

        let class_ok = |c: &Iri| if classes.contains(c) { Ok(()) } else { Err(SchemaError::Undeclared(c.clone())) };
        let expr_ok = |e: &ClassExpression| -> Result<(), SchemaError> {
            e.well_formed().map_err(SchemaError::MalformedExpression)?;
            e.named_classes().iter().try_for_each(class_ok)?;
            for p in e.properties() {
                if !properties.contains(&p) && !is_builtin_property(&p) {
                    return Err(SchemaError::Undeclared(p));
                }
            }
            Ok(())
        };

        let mut direct: BTreeMap<Iri, BTreeSet<Iri>> = BTreeMap::new();
        let mut equivalences = Vec::new();
        for axiom in &axioms {
            match axiom {
                Axiom::SubClassOf { sub, sup } => {
                    class_ok(sub)?;
                    expr_ok(sup)?;
                    if let ClassExpression::Named(sup) = sup {
                        direct.entry(sub.clone()).or_default().insert(sup.clone());
                    }
                }
                Axiom::EquivalentTo { class, expression } => {
                    class_ok(class)?;
                    expr_ok(expression)?;
                    equivalences.push((class.clone(), expression.clone()));
                }
                Axiom::DisjointClasses(set) => set.iter().try_for_each(class_ok)?,
                Axiom::ClassAssertion { class, .. } => class_ok(class)?,
                Axiom::ClassDeclaration(_) | Axiom::PropertyDeclaration(_) => {}
            }
        }

        let superclasses = subclass_closure(&classes, &direct)?;

        let mut aliases = AliasTable::new();
        let declared = classes.iter().chain(&properties).chain(individuals.keys());
        for iri in declared {
            aliases.insert(iri.local_name(), iri.clone());
            if let Some(label) = labels.get(iri) {
                aliases.insert(label, iri.clone());
            }
        }

        Ok(Ontology { axioms, prefixes, labels, aliases, classes, properties, individuals, superclasses, equivalences })
    }

    /// A new ontology with `extra` axioms and labels appended.
    pub fn extended(&self, extra: Vec<Axiom>, labels: BTreeMap<Iri, String>) -> Result<Ontology, SchemaError> {
        let mut axioms = self.axioms.clone();
        axioms.extend(extra);
        let mut all_labels = self.labels.clone();
        all_labels.extend(labels);
        Ontology::new(axioms, self.prefixes.clone(), all_labels)
    }

    pub fn axioms(&self) -> &[Axiom] {
        &self.axioms
    }

    pub fn prefixes(&self) -> &PrefixMap {
        &self.prefixes
    }

    pub fn aliases(&self) -> &AliasTable {
        &self.aliases
    }

    pub fn labels(&self) -> &BTreeMap<Iri, String> {
        &self.labels
    }

    pub fn label(&self, iri: &Iri) -> Option<&str> {
        self.labels.get(iri).map(String::as_str)
    }

    pub fn classes(&self) -> &BTreeSet<Iri> {
        &self.classes
    }

    pub fn properties(&self) -> &BTreeSet<Iri> {
        &self.properties
    }

    pub fn individuals(&self) -> &BTreeMap<Iri, BTreeSet<Iri>> {
        &self.individuals
    }

    pub fn is_class(&self, iri: &Iri) -> bool {
        self.classes.contains(iri)
    }

    pub fn is_property(&self, iri: &Iri) -> bool {
        self.properties.contains(iri) || is_builtin_property(iri)
    }

    pub fn is_declared(&self, iri: &Iri) -> bool {
        self.is_class(iri) || self.is_property(iri) || self.individuals.contains_key(iri)
    }

    /// Reflexive-transitive named superclasses of a declared class.
    pub fn superclasses(&self, class: &Iri) -> Result<&BTreeSet<Iri>, SchemaError> {
        self.superclasses.get(class).ok_or_else(|| SchemaError::UnknownClass(class.clone()))
    }

    /// As [`Ontology::superclasses`], treating an undeclared class as its own only superclass.
    pub fn superclasses_or_self(&self, class: &Iri) -> BTreeSet<Iri> {
        self.superclasses.get(class).cloned().unwrap_or_else(|| BTreeSet::from([class.clone()]))
    }

    pub fn is_subclass_of(&self, sub: &Iri, sup: &Iri) -> bool {
        match self.superclasses.get(sub) {
            Some(set) => set.contains(sup),
            None => sub == sup,
        }
    }

    /// Declared classes having `class` among their superclasses (reflexive).
    pub fn subclasses(&self, class: &Iri) -> BTreeSet<Iri> {
        self.superclasses.iter().filter(|(_, sups)| sups.contains(class)).map(|(sub, _)| sub.clone()).collect()
    }

    pub fn equivalences(&self) -> &[(Iri, ClassExpression)] {
        &self.equivalences
    }

    pub fn equivalence_for(&self, class: &Iri) -> Option<&ClassExpression> {
        self.equivalences.iter().find(|(c, _)| c == class).map(|(_, e)| e)
    }

    /// Non-named `SubClassOf` restrictions stated on `class` itself.
    pub fn necessary_restrictions(&self, class: &Iri) -> impl Iterator<Item = &ClassExpression> + '_ {
        let class = class.clone();
        self.axioms.iter().filter_map(move |a| match a {
            Axiom::SubClassOf { sub, sup } if *sub == class && !sup.is_named() => Some(sup),
            _ => None,
        })
    }

    pub fn disjoint_sets(&self) -> impl Iterator<Item = &BTreeSet<Iri>> + '_ {
        self.axioms.iter().filter_map(|a| match a {
            Axiom::DisjointClasses(set) => Some(set),
            _ => None,
        })
    }
}

fn subclass_closure(
    classes: &BTreeSet<Iri>,
    direct: &BTreeMap<Iri, BTreeSet<Iri>>,
) -> Result<BTreeMap<Iri, BTreeSet<Iri>>, SchemaError> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Active,
        Done,
    }

    fn visit(
        class: &Iri,
        direct: &BTreeMap<Iri, BTreeSet<Iri>>,
        marks: &mut BTreeMap<Iri, Mark>,
        out: &mut BTreeMap<Iri, BTreeSet<Iri>>,
    ) -> Result<(), SchemaError> {
        match marks.get(class) {
            Some(Mark::Done) => return Ok(()),
            Some(Mark::Active) => return Err(SchemaError::SubclassCycle(class.clone())),
            None => {}
        }
        marks.insert(class.clone(), Mark::Active);
        let mut closure = BTreeSet::from([class.clone()]);
        for sup in direct.get(class).into_iter().flatten() {
            visit(sup, direct, marks, out)?;
            closure.extend(out[sup].iter().cloned());
        }
        marks.insert(class.clone(), Mark::Done);
        out.insert(class.clone(), closure);
        Ok(())
    }

    let mut marks = BTreeMap::new();
    let mut out = BTreeMap::new();
    for class in classes {
        visit(class, direct, &mut marks, &mut out)?;
    }
    Ok(out)
}

/// The nine explanation types in table order, with their conditions.
pub fn explanation_types(ont: &Ontology) -> Vec<ExplanationTypeSpec> {
    ExplanationKind::ALL
        .iter()
        .filter_map(|&kind| {
            let condition = ont.equivalence_for(&kind.class())?.clone();
            Some(ExplanationTypeSpec::new(kind, condition))
        })
        .collect()
}

/// The `EquivalentTo` right-hand side of an explanation class.
pub fn sufficiency_condition<'o>(ont: &'o Ontology, class: &Iri) -> Result<&'o ClassExpression, SchemaError> {
    ExplanationKind::from_class(class)
        .and_then(|kind| ont.equivalence_for(&kind.class()))
        .ok_or_else(|| SchemaError::UnknownExplanationType(class.as_str().to_string()))
}
