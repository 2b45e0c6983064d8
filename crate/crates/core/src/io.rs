//! Graph file formats.
//!
//! JSON: `{"num_vertices": N, "edges": [[u, v], ...]}` with 0-based ids; a
//! repeated pair is a parallel edge. Unknown top-level keys (such as the
//! `metadata` block written by the generators) are ignored on read.
//!
//! Text edge list: a header line `p <N> <M>` followed by `M` lines `u v`.
//! Blank lines and lines starting with `c` or `#` are comments.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;

use crate::error::{FormatError, GraphError};
use crate::graph::MultiGraph;

#[derive(Deserialize)]
struct UncheckedGraph {
    num_vertices: usize,
    edges: Vec<[usize; 2]>,
}

pub fn parse_json(text: &str) -> Result<MultiGraph, FormatError> {
    let raw: UncheckedGraph = serde_json::from_str(text)?;
    MultiGraph::new(raw.num_vertices, raw.edges.iter().map(|e| (e[0], e[1]))).map_err(|source| {
        let edge = match source {
            GraphError::Loop { edge, .. } | GraphError::VertexOutOfRange { edge, .. } => edge,
            _ => 0,
        };
        FormatError::Graph {
            line: json_edge_line(text, edge),
            source,
        }
    })
}

/// 1-based line holding the opening bracket of edge `k` in the `edges` array.
fn json_edge_line(text: &str, k: usize) -> usize {
    let line_of = |at: usize| text[..at].matches('\n').count() + 1;
    let Some(key) = text.find("\"edges\"") else {
        return 1;
    };
    let Some(open) = text[key..].find('[').map(|i| key + i) else {
        return line_of(key);
    };
    text[open + 1..]
        .match_indices('[')
        .nth(k)
        .map(|(i, _)| line_of(open + 1 + i))
        .unwrap_or_else(|| line_of(open))
}

pub fn to_json(g: &MultiGraph) -> String {
    serde_json::to_string(g).expect("graph serialization cannot fail")
}

pub fn parse_edge_list(text: &str) -> Result<MultiGraph, FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut edge_lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match header {
            None => {
                if fields.len() != 3 || fields[0] != "p" {
                    return Err(FormatError::Syntax {
                        line: line_no,
                        message: format!("expected header `p <N> <M>`, found `{line}`"),
                    });
                }
                let n = parse_num(fields[1], line_no)?;
                let m = parse_num(fields[2], line_no)?;
                header = Some((n, m));
            }
            Some((n, _)) => {
                if fields.len() != 2 {
                    return Err(FormatError::Syntax {
                        line: line_no,
                        message: format!("expected `u v`, found `{line}`"),
                    });
                }
                let u = parse_num(fields[0], line_no)?;
                let v = parse_num(fields[1], line_no)?;
                let edge = edges.len();
                if u >= n || v >= n {
                    return Err(FormatError::Graph {
                        line: line_no,
                        source: GraphError::VertexOutOfRange {
                            edge,
                            vertex: u.max(v),
                            num_vertices: n,
                        },
                    });
                }
                if u == v {
                    return Err(FormatError::Graph {
                        line: line_no,
                        source: GraphError::Loop { edge, vertex: u },
                    });
                }
                edges.push((u, v));
                edge_lines.push(line_no);
            }
        }
    }
    let Some((n, m)) = header else {
        return Err(FormatError::Syntax {
            line: 1,
            message: "missing `p <N> <M>` header".into(),
        });
    };
    if edges.len() != m {
        return Err(FormatError::Syntax {
            line: edge_lines.last().copied().unwrap_or(1),
            message: format!("header promises {m} edges, found {}", edges.len()),
        });
    }
    Ok(MultiGraph::new(n, edges).expect("edges validated while parsing"))
}

pub fn to_edge_list(g: &MultiGraph) -> String {
    let mut out = format!("p {} {}\n", g.num_vertices(), g.num_edges());
    for &(u, v) in g.edges() {
        writeln!(out, "{} {}", u.0, v.0).unwrap();
    }
    out
}

fn parse_num(s: &str, line: usize) -> Result<usize, FormatError> {
    s.parse().map_err(|_| FormatError::Syntax {
        line,
        message: format!("`{s}` is not a non-negative integer"),
    })
}

/// Reads a graph, choosing the format from the first non-blank character.
pub fn parse_auto(text: &str) -> Result<MultiGraph, FormatError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_edge_list(text)
    }
}

pub fn read_graph(path: &Path) -> Result<MultiGraph, FormatError> {
    let text = std::fs::read_to_string(path)?;
    parse_auto(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_round_trip() {
        let g = MultiGraph::new(3, [(0, 1), (1, 2), (1, 2)]).unwrap();
        let text = to_edge_list(&g);
        assert_eq!(text, "p 3 3\n0 1\n1 2\n1 2\n");
        assert_eq!(parse_edge_list(&text).unwrap(), g);
        assert_eq!(parse_auto(&to_json(&g)).unwrap(), g);
    }

    #[test]
    fn edge_list_diagnostics_name_the_line() {
        let err = parse_edge_list("p 3 2\n0 1\n2 2\n").unwrap_err();
        assert!(matches!(
            err,
            FormatError::Graph {
                line: 3,
                source: GraphError::Loop { .. }
            }
        ));
        assert!(err.to_string().starts_with("line 3:"));

        let err = parse_edge_list("c comment\np 3 1\n0 7\n").unwrap_err();
        assert!(matches!(err, FormatError::Graph { line: 3, .. }));

        let err = parse_edge_list("p 3 2\n0 1\n").unwrap_err();
        assert!(matches!(err, FormatError::Syntax { .. }));

        let err = parse_edge_list("0 1\n").unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 1, .. }));
    }

    #[test]
    fn json_rejects_loops_and_range() {
        assert!(parse_json(r#"{"num_vertices": 2, "edges": [[0, 0]]}"#).is_err());
        let err = parse_json("{\"num_vertices\": 3,\n \"edges\": [\n  [0, 1],\n  [2, 5]\n]}")
            .unwrap_err();
        assert!(matches!(
            err,
            FormatError::Graph {
                line: 4,
                source: GraphError::VertexOutOfRange { edge: 1, .. }
            }
        ));
    }

    #[test]
    fn json_ignores_metadata() {
        let g =
            parse_json(r#"{"metadata": {"family": "x"}, "num_vertices": 2, "edges": [[0, 1]]}"#)
                .unwrap();
        assert_eq!(g.num_edges(), 1);
    }
}
