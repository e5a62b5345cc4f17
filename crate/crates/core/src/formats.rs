//! Text formats for point sets and graphs.
//!
//! Point set: one `label x y` per line, scalars in the `p/q` or
//! `p/q+r/s*sqrt(d)` encoding, `#` starts a comment. Graph: a header line
//! `n m`, then one `label_u label_v` per edge. Writers sort by label so the
//! output is byte-deterministic.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::projgeom::ProjPoint;
use crate::visibility::{PointSet, VisibilityGraph};

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub fn parse_points(text: &str) -> Result<PointSet> {
    let mut labels = Vec::new();
    let mut points = Vec::new();
    for (n, line) in content_lines(text) {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let err = |msg: String| Error::ParseLine { line: n, msg };
        if fields.len() != 3 {
            return Err(err(format!("expected `label x y`, got {line:?}")));
        }
        let x: Scalar = fields[1].parse().map_err(|e: Error| err(e.to_string()))?;
        let y: Scalar = fields[2].parse().map_err(|e: Error| err(e.to_string()))?;
        labels.push(fields[0].to_string());
        points.push(ProjPoint::affine(x, y));
    }
    PointSet::new(labels, points)
}

pub fn write_points(ps: &PointSet) -> String {
    let mut order: Vec<usize> = (0..ps.len()).collect();
    order.sort_by(|&a, &b| ps.label(a).cmp(ps.label(b)));
    let mut out = String::new();
    for i in order {
        let p = ps.point(i);
        out.push_str(&format!("{} {} {}\n", ps.label(i), p.x(), p.y()));
    }
    out
}

pub fn write_graph(g: &VisibilityGraph) -> String {
    let edges = g.labeled_edges();
    let mut out = format!("{} {}\n", g.len(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parses a graph file. With `labels` given, the vertex set is exactly those
/// labels; otherwise it is the labels mentioned by edges, padded with
/// isolated vertices `_iso0, _iso1, ...` up to the header's `n`.
pub fn parse_graph(text: &str, labels: Option<&[String]>) -> Result<VisibilityGraph> {
    let mut lines = content_lines(text);
    let (hn, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty graph file".into()))?;
    let head: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::ParseLine { line: hn, msg: "header must be `n m`".into() })?;
    let [n, m] = head[..] else {
        return Err(Error::ParseLine { line: hn, msg: "header must be `n m`".into() });
    };
    let mut edges = Vec::with_capacity(m);
    for (ln, line) in lines {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 2 || f[0] == f[1] {
            return Err(Error::ParseLine { line: ln, msg: format!("bad edge {line:?}") });
        }
        edges.push((f[0].to_string(), f[1].to_string()));
    }
    if edges.len() != m {
        return Err(Error::Parse(format!("header declares {m} edges, found {}", edges.len())));
    }
    let vertex_labels: Vec<String> = match labels {
        Some(ls) => ls.to_vec(),
        None => {
            let mut seen: BTreeSet<String> = BTreeSet::new();
            for (u, v) in &edges {
                seen.insert(u.clone());
                seen.insert(v.clone());
            }
            let mut out: Vec<String> = seen.into_iter().collect();
            let mut k = 0;
            while out.len() < n {
                out.push(format!("_iso{k}"));
                k += 1;
            }
            out
        }
    };
    if vertex_labels.len() != n {
        return Err(Error::SizeMismatch(format!(
            "header declares {n} vertices, have {}",
            vertex_labels.len()
        )));
    }
    let index: std::collections::HashMap<&str, usize> =
        vertex_labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let mut g = VisibilityGraph::empty(vertex_labels.clone());
    for (u, v) in &edges {
        let iu = *index.get(u.as_str()).ok_or_else(|| Error::UnknownLabel(u.clone()))?;
        let iv = *index.get(v.as_str()).ok_or_else(|| Error::UnknownLabel(v.clone()))?;
        g.add_edge(iu, iv);
    }
    Ok(g)
}
