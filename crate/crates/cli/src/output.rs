//! Structured (TOML) documents and table text for each command.

use serde::Serialize;

use eokit_core::{serialize_manchester, PrefixMap, TraceNode};

#[derive(Debug, Serialize)]
pub struct DiagnosticsDoc {
    pub errors: usize,
    pub warnings: usize,
    pub diagnostic: Vec<DiagnosticDoc>,
}

#[derive(Debug, Serialize)]
pub struct DiagnosticDoc {
    pub severity: String,
    pub code: String,
    pub message: String,
    pub terms: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct ClassifyDoc {
    pub membership: Vec<MembershipDoc>,
}

#[derive(Debug, Serialize)]
pub struct MembershipDoc {
    pub node: String,
    #[serde(rename = "type")]
    pub kind: String,
    pub class: String,
    pub origin: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct SufficiencyDoc {
    #[serde(rename = "type")]
    pub kind: String,
    pub class: String,
    pub condition: String,
    pub verbatim: bool,
}

#[derive(Debug, Serialize)]
pub struct MethodsDoc {
    #[serde(rename = "type")]
    pub kind: String,
    pub methods: Vec<String>,
    pub generator: Vec<GeneratorDoc>,
}

#[derive(Debug, Serialize)]
pub struct GeneratorDoc {
    pub task: String,
    pub method: String,
}

#[derive(Debug, Serialize)]
pub struct QuestionsDoc {
    #[serde(rename = "type")]
    pub kind: String,
    pub question: Vec<QuestionDoc>,
}

#[derive(Debug, Serialize)]
pub struct QuestionDoc {
    pub text: String,
    pub source: String,
}

#[derive(Debug, Serialize)]
pub struct PlanDoc {
    pub task: String,
    pub method: String,
    pub required_knowledge: Vec<String>,
    pub runnable: bool,
    pub description: String,
}

#[derive(Debug, Serialize)]
pub struct RecommendDoc {
    pub entry: Vec<EntryDoc>,
}

#[derive(Debug, Serialize)]
pub struct EntryDoc {
    pub rank: usize,
    #[serde(rename = "type")]
    pub kind: String,
    pub title: String,
    pub satisfiable: bool,
    pub missing: Vec<String>,
    pub context_matched: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plan: Option<PlanDoc>,
}

#[derive(Debug, Serialize)]
pub struct AnswerDoc {
    pub intent: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
    #[serde(rename = "type")]
    pub kind: String,
    pub satisfiable: bool,
    pub missing: Vec<String>,
    pub answer: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plan: Option<PlanDoc>,
}

#[derive(Debug, Serialize)]
pub struct QueryDoc {
    pub variables: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct CheckDoc {
    pub node: String,
    pub expression: String,
    pub satisfied: bool,
    pub trace: Vec<String>,
}

/// Indented one-line-per-step rendering of a trace.
pub fn trace_lines(trace: &TraceNode, prefixes: &PrefixMap) -> Vec<String> {
    let mut out = Vec::new();
    write_trace(trace, prefixes, 0, &mut out);
    out
}

fn write_trace(t: &TraceNode, prefixes: &PrefixMap, depth: usize, out: &mut Vec<String>) {
    let mark = if t.satisfied { "+" } else { "-" };
    let mut line = format!(
        "{}{mark} {} at {}",
        "  ".repeat(depth),
        serialize_manchester(&t.expression, prefixes),
        prefixes.render_term(&t.node)
    );
    if !t.witnesses.is_empty() {
        let w: Vec<String> = t.witnesses.iter().map(|w| prefixes.render_term(w)).collect();
        line.push_str(&format!(" via {}", w.join(", ")));
    }
    if let Some(note) = &t.note {
        line.push_str(&format!(" ({note})"));
    }
    out.push(line);
    for child in &t.children {
        write_trace(child, prefixes, depth + 1, out);
    }
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> =
            cells.iter().enumerate().map(|(i, c)| format!("{c:<width$}", width = widths[i])).collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(header);
    for row in rows {
        out.push_str(&line(row));
    }
    out
}
