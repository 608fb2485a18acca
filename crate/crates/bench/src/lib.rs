//! Synthetic workloads for the benchmarks.

use eokit_core::vocab::{eo, ep, prov, rdf_type, sio, DEFAULT_INSTANCE};
use eokit_core::{Graph, GraphBuilder, Iri, Term, Triple};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn node(name: String) -> Term {
    Term::Iri(Iri::new(format!("{DEFAULT_INSTANCE}{name}")).expect("valid IRI"))
}

const KNOWLEDGE: [&str; 5] = ["Fact", "Foil", "ContextualKnowledge", "ScientificKnowledge", "NumericalEvidence"];

/// `cases` copies of a recommendation scenario shaped like the clinical
/// fixture, with knowledge types drawn at random so that only some cases
/// classify as contrastive. No explanation types are asserted.
pub fn clinical_graph(cases: usize, seed: u64) -> Graph {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut b = GraphBuilder::new();
    let mut add = |s: &Term, p: Iri, o: Term| {
        b.insert(Triple::new(s.clone(), p, o).expect("IRI subject"));
    };
    for i in 0..cases {
        let explanation = node(format!("exp{i}"));
        let task = node(format!("task{i}"));
        add(&explanation, rdf_type(), Term::Iri(ep("Explanation")));
        add(&task, rdf_type(), Term::Iri(eo("AITask")));
        for r in 0..2 {
            let rec = node(format!("rec{i}_{r}"));
            add(&rec, rdf_type(), Term::Iri(eo("SystemRecommendation")));
            add(&explanation, ep("isBasedOn"), rec.clone());
            add(&task, sio("hasOutput"), rec.clone());
            let knowledge = node(format!("k{i}_{r}"));
            let kind = KNOWLEDGE[rng.gen_range(0..KNOWLEDGE.len())];
            add(&knowledge, rdf_type(), Term::Iri(eo(kind)));
            add(&rec, prov("used"), knowledge.clone());
            add(&task, prov("used"), knowledge.clone());
            if rng.gen_bool(0.3) {
                let situation = node(format!("s{i}_{r}"));
                add(&situation, rdf_type(), Term::Iri(ep("Situation")));
                add(&knowledge, sio("inRelationTo"), situation);
            }
        }
    }
    b.seal()
}
