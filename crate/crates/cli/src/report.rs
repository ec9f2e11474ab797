use homalg::chaincx::ChainMap;
use homalg::AbGroupShape;
use serde::Serialize;
use serde_json::{json, Value};

use crate::parse::MatrixText;

#[derive(Clone, Debug, Default, Serialize)]
pub struct Certificates {
    pub window: Option<(i64, i64)>,
    pub stages: Option<usize>,
}

/// What a command produced, before formatting.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub inputs: Value,
    pub result: Value,
    pub certificates: Certificates,
    pub text: Vec<String>,
    /// A failing outcome (e.g. an axiom suite with failures) still prints its report.
    pub success: bool,
}

#[derive(Serialize)]
struct Report<'a> {
    command: &'a str,
    inputs: &'a Value,
    result: &'a Value,
    certificates: &'a Certificates,
    timing_ms: Option<u128>,
}

pub fn shape_json(s: &AbGroupShape) -> Value {
    let divisors: Vec<Value> = s
        .divisors()
        .iter()
        .map(|d| u64::try_from(d).map(Value::from).unwrap_or_else(|_| Value::from(d.to_string())))
        .collect();
    json!({ "shape": s.to_string(), "divisors": divisors, "free_rank": s.free_rank() })
}

/// Components in the `n: matrix; ...` input syntax.
pub fn render_map(f: &ChainMap) -> String {
    let Some((lo, hi)) = f.span() else {
        return "0".into();
    };
    let parts: Vec<String> = (lo..=hi)
        .filter(|&n| f.source().gens(n) > 0 && f.target().gens(n) > 0)
        .map(|n| format!("{n}: {}", MatrixText(f.component(n).matrix())))
        .collect();
    if parts.is_empty() {
        return "0".into();
    }
    parts.join("; ")
}

pub fn render_json(command: &str, out: &Outcome, timing_ms: Option<u128>) -> String {
    let report = Report {
        command,
        inputs: &out.inputs,
        result: &out.result,
        certificates: &out.certificates,
        timing_ms,
    };
    serde_json::to_string_pretty(&report).expect("reports serialize")
}

pub fn render_text(out: &Outcome, timing_ms: Option<u128>) -> String {
    let mut lines = out.text.clone();
    if let Some(ms) = timing_ms {
        lines.push(format!("time: {ms} ms"));
    }
    lines.join("\n")
}
