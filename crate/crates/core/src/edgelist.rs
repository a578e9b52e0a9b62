//! Plain-text edge lists.
//!
//! The first line is `<order> <edge count>`, followed by one `u v` line per
//! edge (0-indexed, `u < v`, ascending). Lines `# label <v> <text>` carry
//! vertex labels; other `#` lines are comments.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.edge_count());
    if let Some(labels) = g.labels() {
        for (v, label) in labels.iter().enumerate() {
            let _ = writeln!(out, "# label {v} {label}");
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let parse_err = |line: usize, message: String| Error::Parse { line, message };
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut labels: Vec<(usize, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(rest) = comment.trim_start().strip_prefix("label ") {
                let (v, label) = rest.trim_start().split_once(' ').unwrap_or((rest.trim(), ""));
                let v = v
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("bad label vertex `{v}`")))?;
                labels.push((v, label.to_string()));
            }
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_err(line_no, format!("expected two integers, got `{line}`")));
        }
        let a: usize = fields[0]
            .parse()
            .map_err(|_| parse_err(line_no, format!("`{}` is not a vertex", fields[0])))?;
        let b: usize = fields[1]
            .parse()
            .map_err(|_| parse_err(line_no, format!("`{}` is not a vertex", fields[1])))?;
        match header {
            None => header = Some((a, b)),
            Some((order, _)) => {
                if a >= order || b >= order {
                    return Err(parse_err(line_no, format!("edge {a}-{b} outside 0..{order}")));
                }
                if a == b {
                    return Err(parse_err(line_no, format!("self-loop at {a}")));
                }
                edges.push((a, b));
            }
        }
    }
    let (order, count) = header.ok_or_else(|| parse_err(0, "missing header line".into()))?;
    if edges.len() != count {
        return Err(parse_err(0, format!("header announces {count} edges, found {}", edges.len())));
    }
    let g = Graph::from_edges(order, edges)?;
    if g.edge_count() != count {
        return Err(parse_err(0, "duplicate edges".into()));
    }
    if labels.is_empty() {
        return Ok(g);
    }
    let mut table = vec![String::new(); order];
    for (v, label) in labels {
        if v >= order {
            return Err(parse_err(0, format!("label for missing vertex {v}")));
        }
        table[v] = label;
    }
    g.with_labels(table)
}
