//! Edge-list documents and report rendering.
//!
//! An edge list is the order on the first line followed by one `u v` line
//! per edge with `u < v`. Reports render to CSV and JSON from the same
//! cells; only JSON carries timing.

use std::fmt::Write as _;

use serde_json::{json, Value};
use thiserror::Error;

use crate::harness::{Cell, VerificationReport};
use crate::tree::{ChemicalTree, Tree, TreeError, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty document: expected the vertex count on line 1")]
    Empty,
    #[error("line {line}: {reason}: {content:?}")]
    Malformed {
        line: usize,
        content: String,
        reason: &'static str,
    },
    #[error("line {line}: vertex {vertex} out of range for order {order}")]
    OutOfRange { line: usize, vertex: Vertex, order: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: Vertex, v: Vertex },
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("vertex {vertex} has degree {degree}; at most 4 allowed")]
    DegreeTooHigh { vertex: Vertex, degree: usize },
}

fn malformed(line: usize, content: &str, reason: &'static str) -> ParseError {
    ParseError::Malformed {
        line,
        content: content.to_string(),
        reason,
    }
}

/// Parses an edge-list document into a chemical tree.
pub fn parse_edge_list(text: &str) -> Result<ChemicalTree, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first, header) = lines.next().ok_or(ParseError::Empty)?;
    let n: usize = header
        .parse()
        .map_err(|_| malformed(first, header, "expected a vertex count"))?;
    if n == 0 {
        return Err(malformed(first, header, "vertex count must be positive"));
    }
    let mut edges: Vec<(Vertex, Vertex)> = Vec::with_capacity(n - 1);
    let mut seen = std::collections::HashSet::new();
    for (line, content) in lines {
        let fields: Vec<&str> = content.split_whitespace().collect();
        let [a, b] = fields[..] else {
            return Err(malformed(line, content, "expected two vertices"));
        };
        let parse = |s: &str| s.parse::<Vertex>().map_err(|_| malformed(line, content, "vertex is not a non-negative integer"));
        let (u, v) = (parse(a)?, parse(b)?);
        for vertex in [u, v] {
            if vertex >= n {
                return Err(ParseError::OutOfRange { line, vertex, order: n });
            }
        }
        if u >= v {
            return Err(malformed(line, content, "expected u < v"));
        }
        if !seen.insert((u, v)) {
            return Err(ParseError::DuplicateEdge { line, u, v });
        }
        edges.push((u, v));
    }
    let mut degree = vec![0usize; n];
    for &(u, v) in &edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    if let Some((vertex, &degree)) = degree.iter().enumerate().find(|(_, &d)| d > 4) {
        return Err(ParseError::DegreeTooHigh { vertex, degree });
    }
    ChemicalTree::from_edges(n, &edges).map_err(|e| match e {
        TreeError::DegreeTooHigh { vertex, degree } => ParseError::DegreeTooHigh { vertex, degree },
        other => ParseError::NotATree(other.to_string()),
    })
}

/// Renders a tree as an edge-list document.
pub fn serialize(tree: &Tree) -> String {
    let mut out = format!("{}\n", tree.order());
    for (u, v) in tree.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

fn csv_field(cell: &Cell) -> String {
    match cell {
        Cell::Text(s) if s.contains([',', '"', '\n', '\r']) => format!("\"{}\"", s.replace('"', "\"\"")),
        other => other.to_string(),
    }
}

/// Header row plus one row per report row.
pub fn report_to_csv(report: &VerificationReport) -> String {
    let mut out = report.header().join(",");
    out.push('\n');
    for row in report.cells() {
        let fields: Vec<String> = row.iter().map(csv_field).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

fn cell_json(cell: &Cell) -> Value {
    match cell {
        Cell::Int(v) => json!(v),
        Cell::Bool(v) => json!(v),
        Cell::Text(v) => json!(v),
        Cell::Missing => json!("n/a"),
    }
}

pub fn report_to_json_value(report: &VerificationReport) -> Value {
    let rows: Vec<Value> = report
        .cells()
        .iter()
        .map(|row| Value::Array(row.iter().map(cell_json).collect()))
        .collect();
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| {
            json!({
                "kind": v.kind,
                "key": v.key,
                "detail": v.detail,
                "witness": v.witness,
            })
        })
        .collect();
    json!({
        "campaign": report.campaign,
        "n_min": report.n_min,
        "n_max": report.n_max,
        "columns": report.header(),
        "rows": rows,
        "violations": violations,
        "passed": report.passed(),
        "elapsed_ms": report.elapsed.as_millis() as u64,
    })
}

pub fn report_to_json(report: &VerificationReport) -> String {
    let mut s = serde_json::to_string_pretty(&report_to_json_value(report)).expect("report values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::verify_wp_equivalence;

    #[test]
    fn single_edge_and_path() {
        let t = parse_edge_list("2\n0 1\n").unwrap();
        assert_eq!(t.size(), 1);
        let p4 = parse_edge_list("4\n0 1\n1 2\n2 3\n").unwrap();
        assert_eq!(p4.canonical_form(), ChemicalTree::path_graph(4).canonical_form());
        assert_eq!(parse_edge_list("1\n").unwrap().order(), 1);
    }

    #[test]
    fn distinct_errors() {
        assert!(matches!(parse_edge_list("5\n0 1\n0 2\n0 3\n0 4\n1 2\n"), Err(ParseError::NotATree(_))));
        assert!(matches!(parse_edge_list(""), Err(ParseError::Empty)));
        assert!(matches!(parse_edge_list("3\n0 1\n1\n"), Err(ParseError::Malformed { line: 3, .. })));
        assert!(matches!(parse_edge_list("3\n0 x\n"), Err(ParseError::Malformed { .. })));
        assert!(matches!(parse_edge_list("3\n1 0\n1 2\n"), Err(ParseError::Malformed { .. })));
        assert!(matches!(parse_edge_list("3\n0 1\n1 3\n"), Err(ParseError::OutOfRange { vertex: 3, .. })));
        assert!(matches!(parse_edge_list("3\n0 1\n0 1\n"), Err(ParseError::DuplicateEdge { line: 3, .. })));
        assert!(matches!(parse_edge_list("4\n0 1\n2 3\n"), Err(ParseError::NotATree(_))));
        assert!(matches!(
            parse_edge_list("6\n0 1\n0 2\n0 3\n0 4\n0 5\n"),
            Err(ParseError::DegreeTooHigh { vertex: 0, degree: 5 })
        ));
    }

    #[test]
    fn serialize_round_trip() {
        let t = ChemicalTree::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let text = serialize(&t);
        assert_eq!(text, "5\n0 1\n1 2\n1 3\n3 4\n");
        assert_eq!(parse_edge_list(&text).unwrap(), t);
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field(&Cell::Text("a,b".into())), "\"a,b\"");
        assert_eq!(csv_field(&Cell::Text("say \"hi\"".into())), "\"say \"\"hi\"\"\"");
        assert_eq!(csv_field(&Cell::Int(-3)), "-3");
        assert_eq!(csv_field(&Cell::Missing), "n/a");
    }

    #[test]
    fn renderings_share_cells() {
        let r = verify_wp_equivalence(4, 7).unwrap();
        let csv = report_to_csv(&r);
        let json = report_to_json_value(&r);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "n,trees,mismatches,max_wp");
        let rows = json["rows"].as_array().unwrap();
        assert_eq!(rows.len(), lines.len() - 1);
        for (line, row) in lines[1..].iter().zip(rows) {
            let from_json: Vec<String> = row
                .as_array()
                .unwrap()
                .iter()
                .map(|v| v.as_str().map_or_else(|| v.to_string(), str::to_string))
                .collect();
            assert_eq!(line.split(',').collect::<Vec<_>>(), from_json);
        }
        assert!(!csv.contains("elapsed"));
        assert!(json.get("elapsed_ms").is_some());
    }
}
