use serde::{Deserialize, Serialize};

use super::{Edge, FiniteGraph, GraphOptions};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
	Text,
	Json,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
	vertices: usize,
	edges: Vec<(i64, usize, usize)>,
}

/// Parses `V n` followed by `E id a b` lines; `#` starts a comment.
pub fn parse_graph_text(src: &str, options: GraphOptions) -> Result<FiniteGraph> {
	let mut vertices: Option<usize> = None;
	let mut edges = Vec::new();
	for (lineno, raw) in src.lines().enumerate() {
		let line = raw.split('#').next().unwrap_or("").trim();
		if line.is_empty() {
			continue;
		}
		let err = |msg: &str| Error::Parse(format!("line {}: {msg}: {raw:?}", lineno + 1));
		let toks: Vec<&str> = line.split_whitespace().collect();
		match toks.as_slice() {
			["V", n] => {
				if vertices.is_some() {
					return Err(err("repeated vertex count"));
				}
				vertices = Some(n.parse().map_err(|_| err("bad vertex count"))?);
			}
			["E", id, a, b] => {
				if vertices.is_none() {
					return Err(err("edge before vertex count"));
				}
				edges.push(Edge {
					id: id.parse().map_err(|_| err("bad edge id"))?,
					origin: a.parse().map_err(|_| err("bad endpoint"))?,
					terminus: b.parse().map_err(|_| err("bad endpoint"))?,
				});
			}
			_ => return Err(err("expected `V n` or `E id a b`")),
		}
	}
	let n = vertices.ok_or_else(|| Error::Parse("missing `V n` line".into()))?;
	FiniteGraph::new(n, edges, options)
}

pub fn parse_graph_json(src: &str, options: GraphOptions) -> Result<FiniteGraph> {
	let raw: GraphJson = serde_json::from_str(src)?;
	let edges = raw
		.edges
		.into_iter()
		.map(|(id, origin, terminus)| Edge { id, origin, terminus })
		.collect();
	FiniteGraph::new(raw.vertices, edges, options)
}

/// Picks the format from the first non-blank character.
pub fn parse_graph(src: &str, options: GraphOptions) -> Result<FiniteGraph> {
	if src.trim_start().starts_with('{') {
		parse_graph_json(src, options)
	} else {
		parse_graph_text(src, options)
	}
}

impl FiniteGraph {
	pub fn to_text(&self) -> String {
		let mut s = format!("V {}\n", self.vertex_count);
		for e in &self.edges {
			s.push_str(&format!("E {} {} {}\n", e.id, e.origin, e.terminus));
		}
		s
	}

	pub fn to_json(&self) -> String {
		let raw = GraphJson {
			vertices: self.vertex_count,
			edges: self.edges.iter().map(|e| (e.id, e.origin, e.terminus)).collect(),
		};
		serde_json::to_string(&raw).expect("graph serializes")
	}
}

#[cfg(test)]
mod tests {
	use super::*;
	use crate::graph::corpus;

	#[test]
	fn text_round_trip() {
		let g = corpus::kagome_base();
		let back = parse_graph_text(&g.to_text(), GraphOptions::default()).unwrap();
		assert_eq!(back, g);
	}

	#[test]
	fn json_round_trip_and_unknown_fields() {
		let g = corpus::k4();
		assert_eq!(parse_graph(&g.to_json(), GraphOptions::default()).unwrap(), g);
		let bad = r#"{"vertices": 1, "edges": [[1,0,0],[2,0,0]], "color": "red"}"#;
		assert!(matches!(parse_graph_json(bad, GraphOptions::default()), Err(Error::Parse(_))));
	}

	#[test]
	fn text_errors_name_the_line() {
		let e = parse_graph_text("V 2\nE 1 0 1\nX\n", GraphOptions::relaxed()).unwrap_err();
		assert!(matches!(e, Error::Parse(ref m) if m.contains("line 3")));
		let e = parse_graph_text("E 1 0 1\n", GraphOptions::relaxed()).unwrap_err();
		assert!(matches!(e, Error::Parse(_)));
		let g = parse_graph_text("# theta\nV 2\nE 7 0 1\nE 8 0 1 # middle\nE 9 0 1\n", GraphOptions::default()).unwrap();
		assert_eq!(g.edges()[1].id, 8);
	}
}
