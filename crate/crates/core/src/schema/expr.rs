use std::collections::BTreeSet;

use crate::graph::Iri;

/// Class expression tree. No negation: every constructor is monotone.
///
/// `And`/`Or` hold at least two operands; `AtLeast` counts are positive.
/// Both are checked by [`ClassExpression::well_formed`] when an ontology loads.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassExpression {
    Named(Iri),
    And(Vec<ClassExpression>),
    Or(Vec<ClassExpression>),
    Exists { property: Iri, filler: Box<ClassExpression> },
    AtLeast { count: u32, property: Iri, filler: Box<ClassExpression> },
}

impl ClassExpression {
    pub fn named(class: Iri) -> ClassExpression {
        ClassExpression::Named(class)
    }

    pub fn and(operands: Vec<ClassExpression>) -> ClassExpression {
        ClassExpression::And(operands)
    }

    pub fn or(operands: Vec<ClassExpression>) -> ClassExpression {
        ClassExpression::Or(operands)
    }

    pub fn exists(property: Iri, filler: ClassExpression) -> ClassExpression {
        ClassExpression::Exists { property, filler: Box::new(filler) }
    }

    pub fn at_least(count: u32, property: Iri, filler: ClassExpression) -> ClassExpression {
        ClassExpression::AtLeast { count, property, filler: Box::new(filler) }
    }

    pub fn is_named(&self) -> bool {
        matches!(self, ClassExpression::Named(_))
    }

    pub fn as_named(&self) -> Option<&Iri> {
        match self {
            ClassExpression::Named(iri) => Some(iri),
            _ => None,
        }
    }

    /// Describes the first violated structural invariant, if any.
    pub fn well_formed(&self) -> Result<(), String> {
        match self {
            ClassExpression::Named(_) => Ok(()),
            ClassExpression::And(ops) | ClassExpression::Or(ops) => {
                if ops.len() < 2 {
                    return Err(format!("{} operand list of length {}", self.connective(), ops.len()));
                }
                ops.iter().try_for_each(ClassExpression::well_formed)
            }
            ClassExpression::Exists { filler, .. } => filler.well_formed(),
            ClassExpression::AtLeast { count, filler, .. } => {
                if *count == 0 {
                    return Err("min cardinality of 0".to_string());
                }
                filler.well_formed()
            }
        }
    }

    fn connective(&self) -> &'static str {
        match self {
            ClassExpression::And(_) => "and",
            ClassExpression::Or(_) => "or",
            _ => "",
        }
    }

    /// Named classes occurring anywhere in the tree.
    pub fn named_classes(&self) -> BTreeSet<Iri> {
        let mut out = BTreeSet::new();
        self.visit(&mut |e| {
            if let ClassExpression::Named(c) = e {
                out.insert(c.clone());
            }
        });
        out
    }

    /// Properties used by restrictions anywhere in the tree.
    pub fn properties(&self) -> BTreeSet<Iri> {
        let mut out = BTreeSet::new();
        self.visit(&mut |e| match e {
            ClassExpression::Exists { property, .. } | ClassExpression::AtLeast { property, .. } => {
                out.insert(property.clone());
            }
            _ => {}
        });
        out
    }

    pub fn depth(&self) -> usize {
        match self {
            ClassExpression::Named(_) => 1,
            ClassExpression::And(ops) | ClassExpression::Or(ops) => {
                1 + ops.iter().map(ClassExpression::depth).max().unwrap_or(0)
            }
            ClassExpression::Exists { filler, .. } | ClassExpression::AtLeast { filler, .. } => 1 + filler.depth(),
        }
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a ClassExpression)) {
        f(self);
        match self {
            ClassExpression::Named(_) => {}
            ClassExpression::And(ops) | ClassExpression::Or(ops) => ops.iter().for_each(|op| op.visit(f)),
            ClassExpression::Exists { filler, .. } | ClassExpression::AtLeast { filler, .. } => filler.visit(f),
        }
    }
}
