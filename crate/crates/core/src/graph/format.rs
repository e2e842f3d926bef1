//! Line-oriented graph text format.
//!
//! ```text
//! # comment
//! graph <vertex_count>
//! edge <u> <v>            # edge ids are assigned in file order
//! rot <v> <e1> <e2> ...   # optional cyclic order of the edge ends at v
//! root <v>                # optional root hint
//! ```

use std::fmt::Write as _;

use super::{EdgeId, Graph, VertexId};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    pub root: Option<VertexId>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut vertex_count = None;
    let mut edges = Vec::new();
    let mut rotations: Vec<(usize, VertexId, Vec<EdgeId>)> = Vec::new();
    let mut root = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        let keyword = toks.next().unwrap_or_default();
        match keyword {
            "graph" => {
                if vertex_count.is_some() {
                    return Err(parse_err(line, "duplicate `graph` header"));
                }
                vertex_count = Some(parse_num(toks.next(), line, "vertex count")?);
            }
            "edge" => {
                let n = vertex_count.ok_or_else(|| parse_err(line, "`edge` before `graph` header"))?;
                let u = parse_num(toks.next(), line, "endpoint")?;
                let v = parse_num(toks.next(), line, "endpoint")?;
                if u >= n || v >= n {
                    return Err(parse_err(line, format!("endpoint out of range 0..{n}")));
                }
                edges.push([u, v]);
            }
            "rot" => {
                vertex_count.ok_or_else(|| parse_err(line, "`rot` before `graph` header"))?;
                let v = parse_num(toks.next(), line, "vertex")?;
                let order = toks
                    .by_ref()
                    .map(|t| parse_num(Some(t), line, "edge id"))
                    .collect::<Result<Vec<_>>>()?;
                rotations.push((line, v, order));
                continue;
            }
            "root" => {
                let n = vertex_count.ok_or_else(|| parse_err(line, "`root` before `graph` header"))?;
                let v = parse_num(toks.next(), line, "root vertex")?;
                if v >= n {
                    return Err(parse_err(line, format!("root out of range 0..{n}")));
                }
                root = Some(v);
            }
            other => return Err(parse_err(line, format!("unknown keyword `{other}`"))),
        }
        if let Some(extra) = toks.next() {
            return Err(parse_err(line, format!("unexpected token `{extra}`")));
        }
    }

    let vertex_count = vertex_count.ok_or_else(|| parse_err(0, "missing `graph` header"))?;
    let mut graph = Graph::new(vertex_count, edges)?;
    for (line, v, order) in rotations {
        graph = graph
            .with_rotations([(v, order)])
            .map_err(|e| parse_err(line, e.to_string()))?;
    }
    Ok(GraphFile { graph, root })
}

pub fn write_graph(g: &Graph, root: Option<VertexId>) -> String {
    let default = Graph::new(g.vertex_count(), g.edges().to_vec()).expect("valid graph");
    let mut out = String::new();
    writeln!(out, "graph {}", g.vertex_count()).unwrap();
    for &[u, v] in g.edges() {
        writeln!(out, "edge {u} {v}").unwrap();
    }
    for v in 0..g.vertex_count() {
        if g.rotation(v) != default.rotation(v) {
            let ends: Vec<String> = g.rotation(v).iter().map(|e| e.to_string()).collect();
            writeln!(out, "rot {v} {}", ends.join(" ")).unwrap();
        }
    }
    if let Some(r) = root {
        writeln!(out, "root {r}").unwrap();
    }
    out
}
