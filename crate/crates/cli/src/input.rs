use std::io::Read;
use std::path::Path;

use anyhow::{Context, Result};
use eokit_core::syntax::parse_turtle_with;
use eokit_core::{Graph, GraphBuilder, Ontology, PrefixMap, SeedKnowledgeBase, TurtleDocument};

/// Reads a file, or stdin for "-".
pub fn read(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).context("reading stdin")?;
        return Ok(text);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn turtle(ont: &Ontology, path: &Path) -> Result<TurtleDocument> {
    let text = read(path)?;
    parse_turtle_with(&text, ont.aliases()).with_context(|| format!("parsing {}", path.display()))
}

/// Merges several documents; blank nodes are kept apart per file.
pub fn merged(ont: &Ontology, paths: &[impl AsRef<Path>]) -> Result<(PrefixMap, Graph)> {
    let mut prefixes = eokit_core::syntax::turtle::initial_prefixes();
    let mut builder = GraphBuilder::new();
    for (i, path) in paths.iter().enumerate() {
        let doc = turtle(ont, path.as_ref())?;
        for (label, ns) in doc.prefixes.iter() {
            prefixes.insert(label, ns.clone());
        }
        builder.extend_renamed(&doc.graph, &format!("f{i}"));
    }
    Ok((prefixes, builder.seal()))
}

/// The built-in ontology and seed knowledge, with an optional overlay applied.
pub fn knowledge(overlay: Option<&Path>) -> Result<(Ontology, SeedKnowledgeBase)> {
    let ont = eokit_core::builtin_ontology();
    let seed = eokit_core::seed_kb();
    match overlay {
        None => Ok((ont, seed)),
        Some(path) => {
            let doc = turtle(&ont, path)?;
            seed.with_overlay(&ont, &doc.graph).with_context(|| format!("applying overlay {}", path.display()))
        }
    }
}
