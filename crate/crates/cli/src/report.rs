use std::fmt::Write as _;

use gspace::Groupoid;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
    Dot,
}

/// A multiplication table over labelled elements; `None` marks an escape.
#[derive(Debug, Clone)]
pub struct TableOut {
    pub labels: Vec<String>,
    pub rows: Vec<Vec<Option<usize>>>,
}

/// What a command produces, before rendering.
#[derive(Debug, Default)]
pub struct Output {
    pub payload: Value,
    pub text: Vec<String>,
    pub table: Option<TableOut>,
    pub list: Option<Vec<String>>,
    pub verdict: Option<bool>,
}

#[derive(Serialize)]
pub struct GroupoidInfo {
    pub name: String,
    pub elements: Vec<String>,
    pub fingerprint: String,
}

impl GroupoidInfo {
    pub fn new(g: &Groupoid) -> Self {
        GroupoidInfo {
            name: g.name().to_string(),
            elements: g.names().to_vec(),
            fingerprint: fingerprint(g),
        }
    }
}

/// SHA-256 over the name, the element names and the table.
pub fn fingerprint(g: &Groupoid) -> String {
    let mut hasher = Sha256::new();
    hasher.update(g.name().as_bytes());
    for name in g.names() {
        hasher.update([0u8]);
        hasher.update(name.as_bytes());
    }
    for row in g.table() {
        for v in row {
            hasher.update((v as u32).to_le_bytes());
        }
    }
    hasher.finalize().iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[derive(Serialize)]
struct Report<'a> {
    command: &'a [String],
    groupoid: Option<&'a GroupoidInfo>,
    result: &'a Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<&'static str>,
}

fn verdict_word(v: Option<bool>) -> Option<&'static str> {
    v.map(|ok| if ok { "pass" } else { "fail" })
}

/// Renders the report; `Err` carries a message for formats the output
/// cannot take.
pub fn render(
    format: Format,
    command: &[String],
    groupoid: Option<&GroupoidInfo>,
    out: &Output,
) -> Result<String, String> {
    match format {
        Format::Json => {
            let report = Report {
                command,
                groupoid,
                result: &out.payload,
                verdict: verdict_word(out.verdict),
            };
            Ok(serde_json::to_string_pretty(&report).expect("reports serialize") + "\n")
        }
        Format::Text => {
            let mut s = format!("command: {}\n", command.join(" "));
            if let Some(g) = groupoid {
                let _ = writeln!(
                    s,
                    "groupoid: {} [{}] fingerprint {}",
                    g.name,
                    g.elements.join(","),
                    &g.fingerprint[..16]
                );
            }
            for line in &out.text {
                let _ = writeln!(s, "{line}");
            }
            if let Some(v) = verdict_word(out.verdict) {
                let _ = writeln!(s, "verdict: {v}");
            }
            Ok(s)
        }
        Format::Csv => {
            if let Some(t) = &out.table {
                Ok(csv_table(t))
            } else if let Some(list) = &out.list {
                let mut s = String::from("index,element\n");
                for (i, label) in list.iter().enumerate() {
                    let _ = writeln!(s, "{i},{}", csv_field(label));
                }
                Ok(s)
            } else {
                Err("csv output needs a command that yields a table or a list".into())
            }
        }
        Format::Dot => out
            .table
            .as_ref()
            .map(dot_graph)
            .ok_or_else(|| "dot output needs a command that yields a table".into()),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_table(t: &TableOut) -> String {
    let mut s = String::from("# legend\n");
    for (i, label) in t.labels.iter().enumerate() {
        let _ = writeln!(s, "# {i},{}", csv_field(label));
    }
    let header: Vec<String> = (0..t.labels.len()).map(|i| i.to_string()).collect();
    let _ = writeln!(s, "∘,{}", header.join(","));
    for (i, row) in t.rows.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .map(|c| c.map(|v| v.to_string()).unwrap_or_default())
            .collect();
        let _ = writeln!(s, "{i},{}", cells.join(","));
    }
    s
}

/// One node per element and an edge `x → x∘y` labelled `y`.
fn dot_graph(t: &TableOut) -> String {
    let mut s = String::from("digraph multiplication {\n");
    for (i, label) in t.labels.iter().enumerate() {
        let _ = writeln!(s, "  n{i} [label=\"{}\"];", label.replace('"', "\\\""));
    }
    for (i, row) in t.rows.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            if let Some(k) = cell {
                let _ = writeln!(s, "  n{i} -> n{k} [label=\"{j}\"];");
            }
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Output {
        Output {
            payload: serde_json::json!({"x": 1}),
            text: vec!["hello".into()],
            table: Some(TableOut {
                labels: vec!["<[0]>".into(), "<[0,1]>".into()],
                rows: vec![vec![Some(0), None], vec![Some(1), Some(1)]],
            }),
            list: None,
            verdict: Some(true),
        }
    }

    #[test]
    fn csv_legend_and_escapes() {
        let csv = render(Format::Csv, &[], None, &sample()).unwrap();
        assert_eq!(
            csv,
            "# legend\n# 0,<[0]>\n# 1,\"<[0,1]>\"\n∘,0,1\n0,0,\n1,1,1\n"
        );
    }

    #[test]
    fn dot_edges() {
        let dot = render(Format::Dot, &[], None, &sample()).unwrap();
        assert!(dot.contains("n0 -> n0 [label=\"0\"];"));
        assert!(!dot.contains("n0 -> n1"));
        assert_eq!(dot.matches("->").count(), 3);
    }

    #[test]
    fn unsupported_formats() {
        let plain = Output::default();
        assert!(render(Format::Csv, &[], None, &plain).is_err());
        assert!(render(Format::Dot, &[], None, &plain).is_err());
        assert!(render(Format::Json, &[], None, &plain).is_ok());
    }

    #[test]
    fn fingerprints_differ() {
        let a = fingerprint(&Groupoid::builtin("cyclic", 3).unwrap());
        let b = fingerprint(&Groupoid::builtin("right-zero", 3).unwrap());
        assert_eq!(a.len(), 64);
        assert_ne!(a, b);
        assert_eq!(a, fingerprint(&Groupoid::builtin("cyclic", 3).unwrap()));
    }
}
