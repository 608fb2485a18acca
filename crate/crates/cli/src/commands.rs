use std::collections::BTreeSet;
use std::fmt::Write;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use eokit_core::reasoner::Origin;
use eokit_core::recommender::{method_labels, QuestionSource};
use eokit_core::syntax::parse_manchester_with;
use eokit_core::vocab::rdf_type;
use eokit_core::{
    applicable_types, example_questions, execute, methods_for_type, parse_query, plan_for_question,
    serialize_manchester, sufficiency_condition, CapabilityProfile, ExplanationKind, GenerationPlan, Iri, Ontology,
    PrefixMap, QuestionDescriptor, Reasoner, Term,
};

use crate::input;
use crate::output::*;
use crate::{Cli, Command, Format};

pub struct Outcome {
    pub text: String,
    pub code: u8,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, code: 0 }
    }
}

fn structured(doc: &impl Serialize) -> Result<String> {
    toml::to_string(doc).context("rendering structured output")
}

fn kind(token: &str) -> Result<ExplanationKind> {
    token.parse::<ExplanationKind>().map_err(|_| {
        let known: Vec<&str> = ExplanationKind::ALL.iter().map(|k| k.token()).collect();
        anyhow::anyhow!("unknown explanation type {token:?}; expected one of {}", known.join(", "))
    })
}

fn render_all<'a>(prefixes: &PrefixMap, iris: impl IntoIterator<Item = &'a Iri>) -> Vec<String> {
    iris.into_iter().map(|i| prefixes.render(i)).collect()
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let (ont, seed) = input::knowledge(cli.seed_overlay.as_deref())?;
    let format = cli.format;
    match &cli.command {
        Command::Validate { file } => validate(&ont, file, format),
        Command::Classify { file, derive_only, explain } => classify(&ont, file, *derive_only, *explain, format),
        Command::Sufficiency { kind: token } => {
            let k = kind(token)?;
            let cond = sufficiency_condition(&ont, &k.class())?;
            let text = serialize_manchester(cond, ont.prefixes());
            Ok(Outcome::ok(match format {
                Format::Table => format!("{text}\n"),
                Format::Structured => structured(&SufficiencyDoc {
                    kind: k.token().to_string(),
                    class: ont.prefixes().render(&k.class()),
                    condition: text,
                    verbatim: k.condition_is_verbatim(),
                })?,
            }))
        }
        Command::Methods { kind: token } => {
            let k = kind(token)?;
            let pairs = methods_for_type(&seed, &k.class())?;
            let labels = method_labels(&ont, &pairs);
            Ok(Outcome::ok(match format {
                Format::Table => labels.iter().map(|l| format!("{l}\n")).collect(),
                Format::Structured => structured(&MethodsDoc {
                    kind: k.token().to_string(),
                    methods: labels,
                    generator: pairs
                        .iter()
                        .map(|(t, m)| GeneratorDoc { task: ont.prefixes().render(t), method: ont.prefixes().render(m) })
                        .collect(),
                })?,
            }))
        }
        Command::Questions { kind: token } => {
            let k = kind(token)?;
            let questions = example_questions(&seed, &k.class())?;
            let source = |s: QuestionSource| match s {
                QuestionSource::Seed => "seed",
                QuestionSource::Prototypical => "prototypical",
            };
            Ok(Outcome::ok(match format {
                Format::Table => questions
                    .iter()
                    .map(|(q, s)| match s {
                        QuestionSource::Seed => format!("{q}\n"),
                        QuestionSource::Prototypical => format!("{q}  [prototypical]\n"),
                    })
                    .collect(),
                Format::Structured => structured(&QuestionsDoc {
                    kind: k.token().to_string(),
                    question: questions
                        .into_iter()
                        .map(|(text, s)| QuestionDoc { text, source: source(s).to_string() })
                        .collect(),
                })?,
            }))
        }
        Command::Recommend { profile, question } => {
            let text = input::read(profile)?;
            let profile = CapabilityProfile::from_toml(&ont, &text)
                .with_context(|| format!("loading profile {}", profile.display()))?;
            match question {
                None => recommend(&ont, &seed, &profile, format),
                Some(path) => {
                    let q = QuestionDescriptor::from_toml(&input::read(path)?)
                        .with_context(|| format!("loading question {}", path.display()))?;
                    answer(&ont, &seed, &profile, &q, format)
                }
            }
        }
        Command::Query { query, data } => {
            let text = input::read(query)?;
            let q = parse_query(&text).with_context(|| format!("parsing {}", query.display()))?;
            let (_, graph) = input::merged(&ont, data)?;
            let rows = execute(&ont, &graph, &q);
            let rendered = rows.rendered(&q.prefixes);
            Ok(Outcome::ok(match format {
                Format::Table => {
                    let header: Vec<String> = q.variables.iter().map(|v| format!("?{v}")).collect();
                    table(&header, &rendered)
                }
                Format::Structured => structured(&QueryDoc { variables: q.variables.clone(), rows: rendered })?,
            }))
        }
        Command::Check { file, node, kind: token, expr } => {
            let doc = input::turtle(&ont, file)?;
            let node = Term::Iri(doc.prefixes.expand(node).with_context(|| format!("resolving node {node}"))?);
            let expression = match (token, expr) {
                (Some(t), _) => sufficiency_condition(&ont, &kind(t)?.class())?.clone(),
                (None, Some(path)) => parse_manchester_with(&input::read(path)?, &doc.prefixes, ont.aliases())
                    .with_context(|| format!("parsing {}", path.display()))?,
                (None, None) => bail!("either --kind or --expr is required"),
            };
            let report = Reasoner::new(&ont, &doc.graph).check(&node, &expression);
            let trace = trace_lines(&report.trace, &doc.prefixes);
            Ok(Outcome::ok(match format {
                Format::Table => {
                    let verdict = if report.satisfied { "satisfied" } else { "not satisfied" };
                    let mut out = format!("{}: {verdict}\n", doc.prefixes.render_term(&node));
                    for line in trace {
                        let _ = writeln!(out, "  {line}");
                    }
                    out
                }
                Format::Structured => structured(&CheckDoc {
                    node: doc.prefixes.render_term(&node),
                    expression: serialize_manchester(&expression, &doc.prefixes),
                    satisfied: report.satisfied,
                    trace,
                })?,
            }))
        }
    }
}

fn validate(ont: &Ontology, file: &std::path::Path, format: Format) -> Result<Outcome> {
    let doc = input::turtle(ont, file)?;
    let diags = Reasoner::new(ont, &doc.graph).validate();
    let code = if diags.has_errors() { 1 } else { 0 };
    let entries: Vec<DiagnosticDoc> = diags
        .entries
        .iter()
        .map(|d| DiagnosticDoc {
            severity: d.severity.to_string(),
            code: d.code.clone(),
            message: d.message.clone(),
            terms: d.terms.iter().map(|t| doc.prefixes.render_term(t)).collect(),
        })
        .collect();
    let (errors, warnings) = (diags.errors().count(), diags.warnings().count());
    let text = match format {
        Format::Table => {
            let mut out = String::new();
            for d in &entries {
                let _ = writeln!(out, "{}[{}]: {}", d.severity, d.code, d.message);
            }
            let _ = writeln!(out, "{errors} error(s), {warnings} warning(s)");
            out
        }
        Format::Structured => structured(&DiagnosticsDoc { errors, warnings, diagnostic: entries })?,
    };
    Ok(Outcome { text, code })
}

fn classify(
    ont: &Ontology,
    file: &std::path::Path,
    derive_only: bool,
    explain: bool,
    format: Format,
) -> Result<Outcome> {
    let doc = input::turtle(ont, file)?;
    let graph = if derive_only {
        let explanation_classes: BTreeSet<Term> = ExplanationKind::ALL.iter().map(|k| Term::Iri(k.class())).collect();
        let asserted: Vec<_> =
            doc.graph.with_predicate(&rdf_type()).filter(|t| explanation_classes.contains(&t.object)).collect();
        doc.graph.without(asserted)
    } else {
        doc.graph.clone()
    };
    let reasoner = Reasoner::new(ont, &graph);
    let p = &doc.prefixes;
    let mut memberships = Vec::new();
    for (node, kinds) in reasoner.explanation_memberships() {
        for (k, origin) in kinds {
            let trace = if explain {
                let cond = sufficiency_condition(ont, &k.class())?;
                trace_lines(&reasoner.check(&node, cond).trace, p)
            } else {
                Vec::new()
            };
            memberships.push(MembershipDoc {
                node: p.render_term(&node),
                kind: k.token().to_string(),
                class: p.render(&k.class()),
                origin: match origin {
                    Origin::Asserted => "asserted",
                    Origin::Derived => "derived",
                }
                .to_string(),
                trace,
            });
        }
    }
    let text = match format {
        Format::Table => {
            let mut out = String::new();
            for m in &memberships {
                let local = m.class.rsplit(':').next().unwrap_or(&m.class);
                let _ = writeln!(out, "{} : {local} ({})", m.node, m.origin);
                for line in &m.trace {
                    let _ = writeln!(out, "    {line}");
                }
            }
            out
        }
        Format::Structured => structured(&ClassifyDoc { membership: memberships })?,
    };
    Ok(Outcome::ok(text))
}

fn plan_doc(ont: &Ontology, plan: &GenerationPlan) -> PlanDoc {
    PlanDoc {
        task: ont.prefixes().render(&plan.task),
        method: ont.prefixes().render(&plan.method),
        required_knowledge: render_all(ont.prefixes(), &plan.required_knowledge),
        runnable: plan.runnable,
        description: plan.describe(ont),
    }
}

fn recommend(
    ont: &Ontology,
    seed: &eokit_core::SeedKnowledgeBase,
    profile: &CapabilityProfile,
    format: Format,
) -> Result<Outcome> {
    let report = applicable_types(ont, seed, profile)?;
    let p = ont.prefixes();
    let entries: Vec<EntryDoc> = report
        .entries
        .iter()
        .enumerate()
        .map(|(i, e)| EntryDoc {
            rank: i + 1,
            kind: e.kind.token().to_string(),
            title: e.title(),
            satisfiable: e.satisfiable,
            missing: render_all(p, &e.missing),
            context_matched: render_all(p, &e.context_matched),
            plan: e.plan.as_ref().map(|plan| plan_doc(ont, plan)),
        })
        .collect();
    let text = match format {
        Format::Table => {
            let mut out = String::new();
            for e in &entries {
                let status =
                    if e.satisfiable { "satisfiable".to_string() } else { format!("missing {}", e.missing.join(", ")) };
                let _ = writeln!(out, "{}. {}  {status}", e.rank, e.title);
                if let Some(plan) = &e.plan {
                    let _ = writeln!(out, "   plan: {}", plan.description);
                }
            }
            out
        }
        Format::Structured => structured(&RecommendDoc { entry: entries })?,
    };
    Ok(Outcome::ok(text))
}

fn answer(
    ont: &Ontology,
    seed: &eokit_core::SeedKnowledgeBase,
    profile: &CapabilityProfile,
    question: &QuestionDescriptor,
    format: Format,
) -> Result<Outcome> {
    let plan = plan_for_question(ont, seed, profile, question)?;
    let lines = plan.answer_lines(ont);
    let text = match format {
        Format::Table => lines.iter().map(|l| format!("{l}\n")).collect(),
        Format::Structured => structured(&AnswerDoc {
            intent: question.intent.token().to_string(),
            text: question.text.clone(),
            kind: plan.kind.token().to_string(),
            satisfiable: plan.satisfiable,
            missing: render_all(ont.prefixes(), &plan.missing),
            answer: lines,
            plan: plan.plan.as_ref().map(|p| plan_doc(ont, p)),
        })?,
    };
    Ok(Outcome::ok(text))
}
