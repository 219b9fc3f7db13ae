//! Plain-text trinet files and DOT / GraphML export.
//!
//! The text format is line oriented:
//!
//! ```text
//! trinet v1
//! vertices 8
//! edge 0 1 r
//! ...
//! writer 0
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use thiserror::Error;

use crate::color::Color;
use crate::graph::{Trinet, Vertex};
use crate::sim::{BadWriter, SystemState};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected header `trinet v1`")]
    BadHeader { line: usize },
    #[error("line {line}: expected `vertices N`")]
    BadVertexCount { line: usize },
    #[error("line {line}: malformed line `{text}`")]
    Malformed { line: usize, text: String },
    #[error("line {line}: vertex {vertex} out of range (graph has {n} vertices)")]
    OutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: vertex {vertex} already has a {color} edge (first given on line {first})")]
    DuplicateColor { line: usize, vertex: usize, color: Color, first: usize },
    #[error("line {line}: vertex {vertex} has no {color} edge")]
    MissingColor { line: usize, vertex: usize, color: Color },
    #[error("line {line}: content after the writer line")]
    TrailingContent { line: usize },
    #[error("line {line}: unexpected end of file")]
    UnexpectedEof { line: usize },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match *self {
            ParseError::BadHeader { line }
            | ParseError::BadVertexCount { line }
            | ParseError::Malformed { line, .. }
            | ParseError::OutOfRange { line, .. }
            | ParseError::SelfLoop { line, .. }
            | ParseError::DuplicateColor { line, .. }
            | ParseError::MissingColor { line, .. }
            | ParseError::TrailingContent { line }
            | ParseError::UnexpectedEof { line } => line,
        }
    }
}

/// A parsed trinet file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrinetFile {
    pub graph: Trinet,
    pub writer: Option<Vertex>,
}

impl TrinetFile {
    /// The state this file describes; the writer defaults to vertex 0.
    pub fn into_state(self) -> Result<SystemState, BadWriter> {
        SystemState::new(self.graph, self.writer.unwrap_or(0))
    }
}

pub fn write_trinet(g: &Trinet, writer: Option<Vertex>) -> String {
    let mut out = String::new();
    out.push_str("trinet v1\n");
    let _ = writeln!(out, "vertices {}", g.vertex_count());
    for (u, v, c) in g.edges() {
        let _ = writeln!(out, "edge {u} {v} {}", c.letter());
    }
    if let Some(w) = writer {
        let _ = writeln!(out, "writer {w}");
    }
    out
}

pub fn write_state(s: &SystemState) -> String {
    write_trinet(&s.graph, Some(s.writer))
}

pub fn parse_trinet(text: &str) -> Result<TrinetFile, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let last_line = text.lines().count().max(1);

    let (line, header) = lines.next().ok_or(ParseError::UnexpectedEof { line: last_line })?;
    if header.split_whitespace().collect::<Vec<_>>() != ["trinet", "v1"] {
        return Err(ParseError::BadHeader { line });
    }
    let (line, count) = lines.next().ok_or(ParseError::UnexpectedEof { line: last_line })?;
    let n = match count.split_whitespace().collect::<Vec<_>>()[..] {
        ["vertices", k] => k.parse::<usize>().map_err(|_| ParseError::BadVertexCount { line })?,
        _ => return Err(ParseError::BadVertexCount { line }),
    };

    let mut slots: Vec<[Option<(Vertex, usize)>; 3]> = vec![[None; 3]; n];
    let mut writer = None;
    let mut writer_line = 0;
    for (line, l) in lines {
        if writer.is_some() {
            return Err(ParseError::TrailingContent { line });
        }
        let malformed = || ParseError::Malformed { line, text: l.to_string() };
        let check = |v: usize| {
            if v < n {
                Ok(v)
            } else {
                Err(ParseError::OutOfRange { line, vertex: v, n })
            }
        };
        match l.split_whitespace().collect::<Vec<_>>()[..] {
            ["edge", u, v, c] => {
                let u = check(u.parse().map_err(|_| malformed())?)?;
                let v = check(v.parse().map_err(|_| malformed())?)?;
                let mut cs = c.chars();
                let color = match (cs.next().and_then(Color::from_letter), cs.next()) {
                    (Some(color), None) => color,
                    _ => return Err(malformed()),
                };
                if u == v {
                    return Err(ParseError::SelfLoop { line, vertex: u });
                }
                for (a, b) in [(u, v), (v, u)] {
                    let slot = &mut slots[a][color.index()];
                    if let Some((_, first)) = *slot {
                        return Err(ParseError::DuplicateColor { line, vertex: a, color, first });
                    }
                    *slot = Some((b, line));
                }
            }
            ["writer", w] => {
                writer = Some(check(w.parse().map_err(|_| malformed())?)?);
                writer_line = line;
            }
            _ => return Err(malformed()),
        }
    }

    let mut adj = Vec::with_capacity(n);
    for (v, row) in slots.iter().enumerate() {
        let mut out = [0; 3];
        for color in Color::ALL {
            match row[color.index()] {
                Some((u, _)) => out[color.index()] = u,
                None => {
                    return Err(ParseError::MissingColor {
                        line: if writer.is_some() { writer_line } else { last_line },
                        vertex: v,
                        color,
                    })
                }
            }
        }
        adj.push(out);
    }
    let graph = Trinet::from_adjacency(adj).expect("edge slots are symmetric and loop-free");
    Ok(TrinetFile { graph, writer })
}

/// Graphviz output, one `u -- v [color=...]` line per edge.
pub fn to_dot(g: &Trinet, writer: Option<Vertex>) -> String {
    let mut out = String::from("graph trinet {\n");
    for v in 0..g.vertex_count() {
        if Some(v) == writer {
            let _ = writeln!(out, "  {v} [shape=doublecircle];");
        } else {
            let _ = writeln!(out, "  {v};");
        }
    }
    for (u, v, c) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v} [color=\"{}\"];", c.name());
    }
    out.push_str("}\n");
    out
}

pub fn to_graphml(g: &Trinet, writer: Option<Vertex>) -> String {
    let mut out = String::from(concat!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n",
        "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n",
        "  <key id=\"color\" for=\"edge\" attr.name=\"color\" attr.type=\"string\"/>\n",
        "  <key id=\"writer\" for=\"node\" attr.name=\"writer\" attr.type=\"boolean\">\n",
        "    <default>false</default>\n",
        "  </key>\n",
        "  <graph id=\"trinet\" edgedefault=\"undirected\">\n",
    ));
    for v in 0..g.vertex_count() {
        if Some(v) == writer {
            let _ = writeln!(out, "    <node id=\"n{v}\"><data key=\"writer\">true</data></node>");
        } else {
            let _ = writeln!(out, "    <node id=\"n{v}\"/>");
        }
    }
    for (i, (u, v, c)) in g.edges().enumerate() {
        let _ = writeln!(
            out,
            "    <edge id=\"e{i}\" source=\"n{u}\" target=\"n{v}\"><data key=\"color\">{}</data></edge>",
            c.name()
        );
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}
