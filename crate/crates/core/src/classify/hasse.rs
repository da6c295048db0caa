//! Hasse diagram of the class structure (DOT or JSON) and JSONL class records.

use super::{ClassRecord, HasseEdge};
use serde::Serialize;
use std::fmt::Write;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HasseFormat {
    Dot,
    Json,
}

#[derive(Serialize)]
struct JsonNode {
    id: String,
    m: usize,
    index: usize,
    cardinality: String,
}

#[derive(Serialize)]
struct JsonDiagram<'a> {
    nodes: Vec<JsonNode>,
    edges: &'a [HasseEdge],
}

/// Edge labels read "spaces / friends": the first number belongs to the lower class.
pub fn emit_hasse(records: &[ClassRecord], edges: &[HasseEdge], format: HasseFormat) -> String {
    match format {
        HasseFormat::Dot => {
            let mut s = String::from("digraph classes {\n  rankdir=BT;\n  node [shape=box];\n");
            let mut layers: Vec<usize> = records.iter().map(|r| r.id.m).collect();
            layers.dedup();
            for m in layers {
                s.push_str("  { rank=same;");
                for r in records.iter().filter(|r| r.id.m == m) {
                    write!(s, " \"{}\";", r.id).unwrap();
                }
                s.push_str(" }\n");
            }
            for r in records {
                writeln!(
                    s,
                    "  \"{}\" [label=\"{}\\n{}\"];",
                    r.id, r.id, r.cardinality
                )
                .unwrap();
            }
            for e in edges {
                writeln!(
                    s,
                    "  \"{}\" -> \"{}\" [label=\"{} / {}\"];",
                    e.lower, e.upper, e.spaces, e.friends
                )
                .unwrap();
            }
            s.push_str("}\n");
            s
        }
        HasseFormat::Json => {
            let nodes = records
                .iter()
                .map(|r| JsonNode {
                    id: r.id.to_string(),
                    m: r.id.m,
                    index: r.id.index,
                    cardinality: r.cardinality.to_string(),
                })
                .collect();
            serde_json::to_string_pretty(&JsonDiagram { nodes, edges }).expect("diagram serializes")
                + "\n"
        }
    }
}

#[derive(Serialize)]
struct JsonRecord {
    id: String,
    n: usize,
    m: usize,
    representative: Vec<String>,
    cardinality: String,
    affine_free: String,
    fingerprint: String,
}

/// One JSON object per line per class.
pub fn records_jsonl(records: &[ClassRecord]) -> String {
    let mut s = String::new();
    for r in records {
        let j = JsonRecord {
            id: r.id.to_string(),
            n: r.representative.num_vars(),
            m: r.id.m,
            representative: r
                .representative
                .anfs()
                .iter()
                .map(|a| a.to_string())
                .collect(),
            cardinality: r.cardinality.to_string(),
            affine_free: r.affine_free.to_string(),
            fingerprint: r.fingerprint.clone(),
        };
        s.push_str(&serde_json::to_string(&j).expect("record serializes"));
        s.push('\n');
    }
    s
}
