//! Line-based text format and DOT export.
//!
//! ```text
//! # comment
//! vertices 1 2 3
//! edge 1 2 0.5
//! edge 2 3 1
//! ```

use std::fmt::Write as _;

use super::{ColoredGraph, WeightedGraph};
use crate::error::{Error, Result};

/// Formats a real with 12 significant digits, `inf` for infinity.
pub fn fmt_decimal(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x.is_nan() {
        return "nan".into();
    }
    let rounded: f64 = format!("{x:.11e}")
        .parse()
        .expect("scientific notation reparses");
    format!("{rounded}")
}

/// A non-blank line split into `(column, token)` pairs, comments removed.
pub(crate) struct Line<'a> {
    pub number: usize,
    pub tokens: Vec<(usize, &'a str)>,
}

impl<'a> Line<'a> {
    pub fn keyword(&self) -> &'a str {
        self.tokens[0].1
    }

    pub fn end_column(&self) -> usize {
        self.tokens
            .last()
            .map_or(1, |&(c, t)| c + t.chars().count())
    }

    pub fn error(&self, column: usize, message: impl Into<String>) -> Error {
        Error::parse(self.number, column, message)
    }

    /// Parses token `i`, reporting its position on failure.
    pub fn parse_at<T: std::str::FromStr>(&self, i: usize, what: &str) -> Result<T> {
        let &(col, tok) = self
            .tokens
            .get(i)
            .ok_or_else(|| self.error(self.end_column(), format!("expected {what}")))?;
        tok.parse()
            .map_err(|_| self.error(col, format!("expected {what}, found `{tok}`")))
    }

    pub fn expect_arity(&self, n: usize) -> Result<()> {
        match self.tokens.get(n) {
            Some(&(col, tok)) => Err(self.error(col, format!("unexpected token `{tok}`"))),
            None if self.tokens.len() < n => Err(self.error(self.end_column(), "missing argument")),
            None => Ok(()),
        }
    }
}

pub(crate) fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start: Option<(usize, usize)> = None;
        for (col, (byte, ch)) in body.char_indices().enumerate() {
            if ch.is_whitespace() {
                if let Some((c, s)) = start.take() {
                    tokens.push((c + 1, &body[s..byte]));
                }
            } else if start.is_none() {
                start = Some((col, byte));
            }
        }
        if let Some((c, s)) = start {
            tokens.push((c + 1, &body[s..]));
        }
        (!tokens.is_empty()).then_some(Line {
            number: i + 1,
            tokens,
        })
    })
}

/// Parses the graph format. `first` is the `vertices` line; remaining
/// lines must all be `edge` lines.
pub(crate) fn parse_graph_lines<'a>(
    first: Option<Line<'a>>,
    rest: impl Iterator<Item = Line<'a>>,
) -> Result<WeightedGraph> {
    let header = first.ok_or_else(|| Error::parse(1, 1, "expected `vertices` line"))?;
    if header.keyword() != "vertices" {
        return Err(header.error(header.tokens[0].0, "expected `vertices` line"));
    }
    let vertices = (1..header.tokens.len())
        .map(|i| header.parse_at::<u64>(i, "vertex id"))
        .collect::<Result<Vec<_>>>()?;
    let mut g = WeightedGraph::on(vertices);
    for line in rest {
        if line.keyword() != "edge" {
            return Err(line.error(
                line.tokens[0].0,
                format!("expected `edge`, found `{}`", line.keyword()),
            ));
        }
        line.expect_arity(4)?;
        let src = line.parse_at::<u64>(1, "source vertex")?;
        let dst = line.parse_at::<u64>(2, "target vertex")?;
        let weight = line.parse_at::<f64>(3, "weight")?;
        g.add_edge(src, dst, weight).map_err(|e| {
            let col = match e {
                Error::UnknownVertex(v) if v == src => line.tokens[1].0,
                Error::UnknownVertex(_) => line.tokens[2].0,
                _ => line.tokens[3].0,
            };
            line.error(col, e.to_string())
        })?;
    }
    Ok(g)
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    let mut it = lines(text);
    let first = it.next();
    parse_graph_lines(first, it)
}

/// Writes the graph format with edges sorted by `(src, dst, weight)`.
pub fn write_graph(g: &WeightedGraph) -> String {
    let mut out = String::from("vertices");
    for v in g.vertices() {
        write!(out, " {v}").unwrap();
    }
    out.push('\n');
    let mut edges = g.edges().to_vec();
    edges.sort_by(|a, b| {
        (a.src, a.dst)
            .cmp(&(b.src, b.dst))
            .then(a.weight.total_cmp(&b.weight))
    });
    for e in edges {
        writeln!(out, "edge {} {} {}", e.src, e.dst, fmt_decimal(e.weight)).unwrap();
    }
    out
}

/// DOT rendering: one node per vertex, one labeled arc per edge.
pub fn to_dot(g: &WeightedGraph) -> String {
    dot_with(g, |_| String::new())
}

impl ColoredGraph {
    /// DOT rendering with a `plug=0|1` attribute and a visual color per edge.
    pub fn to_dot(&self) -> String {
        let colors: Vec<_> = self.edge_ids().map(|id| self.color(id)).collect();
        let mut i = 0;
        dot_with(self.underlying(), move |_| {
            let c = colors[i];
            i += 1;
            format!(
                ", plug={}, color={}",
                c.bit(),
                if c.bit() == 0 { "blue" } else { "red" }
            )
        })
    }
}

fn dot_with(g: &WeightedGraph, mut extra: impl FnMut(usize) -> String) -> String {
    let mut out = String::from("digraph G {\n");
    for v in g.vertices() {
        writeln!(out, "  {v};").unwrap();
    }
    for (i, e) in g.edges().iter().enumerate() {
        writeln!(
            out,
            "  {} -> {} [label=\"{}\"{}];",
            e.src,
            e.dst,
            fmt_decimal(e.weight),
            extra(i)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
