//! Machine-readable certificate reports.
//!
//! Every command emits one report: the command echo, the tool version, a
//! command-specific payload carrying verdicts together with re-checkable
//! evidence (matrices, coordinates, witnesses — never a bare boolean),
//! and optionally a wall-clock timing. Timing is off by default so that
//! reports are byte-identical across runs; JSON object keys are sorted by
//! the serializer, so serialization is canonical.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
    pub payload: Value,
}

impl ReportDocument {
    pub fn new(command: impl Into<String>, payload: Value) -> ReportDocument {
        ReportDocument {
            tool: "gradext".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.into(),
            timing_ms: None,
            payload,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// Plain-text rendering: a header line followed by the payload tree,
    /// one `key: value` line per leaf. Long arrays are summarized.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} — {}\n", self.tool, self.version, self.command);
        if let Some(ms) = self.timing_ms {
            out.push_str(&format!("timing_ms: {ms}\n"));
        }
        render_value(&self.payload, "", &mut out);
        out
    }
}

fn render_scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn render_value(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                let path = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                render_value(val, &path, out);
            }
        }
        Value::Array(items) => {
            if items.iter().all(is_scalar) && items.len() <= 16 {
                let inline: Vec<String> = items.iter().map(render_scalar).collect();
                out.push_str(&format!("{prefix}: [{}]\n", inline.join(", ")));
            } else if items.len() > 8 {
                out.push_str(&format!("{prefix}: [{} items]\n", items.len()));
            } else {
                for (i, item) in items.iter().enumerate() {
                    render_value(item, &format!("{prefix}[{i}]"), out);
                }
            }
        }
        scalar => {
            out.push_str(&format!("{prefix}: {}\n", render_scalar(scalar)));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_rendering_walks_the_tree() {
        let report = ReportDocument::new(
            "demo",
            json!({"verdict": true, "evidence": {"vector": ["1", "0"]}}),
        );
        let text = report.to_text();
        assert!(text.contains("verdict: true"));
        assert!(text.contains("evidence.vector: [1, 0]"));
        assert!(text.starts_with("gradext"));
    }

    #[test]
    fn timing_absent_by_default() {
        let report = ReportDocument::new("demo", json!({}));
        assert!(!report.to_json().contains("timing_ms"));
    }
}
