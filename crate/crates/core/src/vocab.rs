//! Namespace constants and IRI constructors for the vocabularies in use.

use crate::graph::Iri;

pub const EO: &str = "https://purl.org/heals/eo#";
pub const EP: &str = "http://linkedu.eu/dedalo/explanationPattern.owl#";
pub const SIO: &str = "http://semanticscience.org/resource/";
pub const PROV: &str = "http://www.w3.org/ns/prov-o#";
pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const OWL: &str = "http://www.w3.org/2002/07/owl#";

/// Namespace bound to the empty prefix when a document does not declare one.
pub const DEFAULT_INSTANCE: &str = "http://example.org/eo-instance#";

fn join(ns: &str, local: &str) -> Iri {
    Iri::new_unchecked(format!("{ns}{local}"))
}

pub fn eo(local: &str) -> Iri {
    join(EO, local)
}

pub fn ep(local: &str) -> Iri {
    join(EP, local)
}

pub fn sio(local: &str) -> Iri {
    join(SIO, local)
}

pub fn prov(local: &str) -> Iri {
    join(PROV, local)
}

pub fn rdf(local: &str) -> Iri {
    join(RDF, local)
}

pub fn rdfs(local: &str) -> Iri {
    join(RDFS, local)
}

pub fn owl(local: &str) -> Iri {
    join(OWL, local)
}

pub fn rdf_type() -> Iri {
    rdf("type")
}

pub fn rdfs_label() -> Iri {
    rdfs("label")
}
