//! Graph ingestion and export: edge lists, JSON documents and DOT.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Json,
}

pub fn parse(text: &str, format: Format) -> Result<Graph> {
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Json => parse_json(text),
    }
}

/// Parses one `u v` pair per line. `#` starts a comment; a line holding a
/// single token declares an isolated vertex. Vertex ids follow first appearance.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, Vertex> = HashMap::new();
    let mut edges = Vec::new();
    let mut intern = |tok: &str, labels: &mut Vec<String>| -> Vertex {
        *index.entry(tok.to_string()).or_insert_with(|| {
            labels.push(tok.to_string());
            labels.len() - 1
        })
    };
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            [v] => {
                intern(v, &mut labels);
            }
            [u, v] => {
                let a = intern(u, &mut labels);
                let b = intern(v, &mut labels);
                edges.push((a, b, lineno + 1));
            }
            _ => return Err(Error::Parse(format!("line {}: expected `u v`, got {line:?}", lineno + 1))),
        }
    }
    let mut g = Graph::with_labels(labels)?;
    for (a, b, line) in edges {
        g.add_edge(a, b).map_err(|e| Error::Parse(format!("line {line}: {e}")))?;
    }
    Ok(g)
}

fn label_of(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Parse(format!("vertex must be a string or number, got {other}"))),
    }
}

/// Parses `{"vertices": [...], "edges": [[u, v], ...]}`. Vertices may be
/// strings or numbers; `vertices` may be omitted when every vertex has an edge.
pub fn parse_json(text: &str) -> Result<Graph> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = doc.as_object().ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, Vertex> = HashMap::new();
    if let Some(vs) = obj.get("vertices") {
        let arr = vs.as_array().ok_or_else(|| Error::Parse("`vertices` must be an array".into()))?;
        for v in arr {
            let l = label_of(v)?;
            if index.insert(l.clone(), labels.len()).is_some() {
                return Err(Error::Parse(format!("duplicate vertex {l:?}")));
            }
            labels.push(l);
        }
    }
    let declared = obj.contains_key("vertices");
    let mut edges = Vec::new();
    if let Some(es) = obj.get("edges") {
        let arr = es.as_array().ok_or_else(|| Error::Parse("`edges` must be an array".into()))?;
        for e in arr {
            let pair = e
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::Parse(format!("edge must be a pair, got {e}")))?;
            let mut ends = [0; 2];
            for (slot, v) in ends.iter_mut().zip(pair) {
                let l = label_of(v)?;
                *slot = match index.get(&l) {
                    Some(&i) => i,
                    None if !declared => {
                        index.insert(l.clone(), labels.len());
                        labels.push(l);
                        labels.len() - 1
                    }
                    None => return Err(Error::Parse(format!("edge endpoint {l:?} is not a listed vertex"))),
                };
            }
            edges.push((ends[0], ends[1]));
        }
    }
    Graph::from_labelled_edges(labels, edges)
}

fn label_value(label: &str) -> Value {
    match label.parse::<u64>() {
        Ok(n) if n.to_string() == label => json!(n),
        _ => json!(label),
    }
}

/// JSON document in the ingestion format; integer-like labels are emitted as numbers.
pub fn to_json(g: &Graph) -> Value {
    let vertices: Vec<Value> = g.labels().iter().map(|l| label_value(l)).collect();
    let edges: Vec<Value> =
        g.edges().map(|(u, v)| json!([label_value(g.label(u)), label_value(g.label(v))])).collect();
    json!({ "vertices": vertices, "edges": edges })
}

pub fn to_json_string(g: &Graph) -> String {
    serde_json::to_string_pretty(&to_json(g)).expect("JSON values serialize")
}

pub(crate) fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Plain undirected DOT rendering.
pub fn to_dot(g: &Graph, name: &str) -> String {
    let mut out = format!("graph \"{}\" {{\n", dot_escape(name));
    for v in g.vertices() {
        let _ = writeln!(out, "  {v} [label=\"{}\"];", dot_escape(g.label(v)));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_with_comments_and_isolated_vertices() {
        let g = parse_edge_list("# square\na b\nb c # tail\n\nc d\nd a\ne\n").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.degree(g.vertex_by_label("e").unwrap()), 0);
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(parse_edge_list("a b c"), Err(Error::Parse(_))));
        assert!(matches!(parse_edge_list("a a"), Err(Error::Parse(_))));
    }

    #[test]
    fn json_round_trip() {
        let g = parse_json(r#"{"vertices":[0,1,2,"x"],"edges":[[0,1],[1,2]]}"#).unwrap();
        assert_eq!(g.n(), 4);
        let text = to_json_string(&g);
        let h = parse_json(&text).unwrap();
        assert_eq!(g, h);
        assert_eq!(to_json_string(&h), text);
    }

    #[test]
    fn json_rejects_unknown_endpoint() {
        assert!(parse_json(r#"{"vertices":[0],"edges":[[0,1]]}"#).is_err());
        assert!(parse_json(r#"{"edges":[[0,1]]}"#).is_ok());
        assert!(parse_json("[1,2]").is_err());
    }

    #[test]
    fn dot_of_single_edge_and_empty_graph() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let dot = to_dot(&g, "g");
        assert_eq!(dot.matches("--").count(), 1);
        assert_eq!(dot.matches("label=").count(), 2);
        assert_eq!(to_dot(&Graph::empty(0), "g"), "graph \"g\" {\n}\n");
    }
}
