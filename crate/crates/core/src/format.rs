//! Text formats for graphs and exception lists.
//!
//! Graph file: a header line `n m`, then `m` lines `u v w` (vertex names and a
//! positive decimal weight). Exceptions file: one exception per line as a
//! whitespace-separated list of vertex names. In both, blank lines and lines
//! starting with `#` are ignored.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::ParseError;
use crate::graph::{Graph, VertexId};
use crate::oracle::{Exception, ExceptionStore};

/// Vertex names, mapped to dense ids in order of first appearance.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Symbols {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
}

impl Symbols {
    pub fn id(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    fn intern(&mut self, name: &str) -> VertexId {
        if let Some(v) = self.id(name) {
            return v;
        }
        let v = VertexId::new(self.names.len());
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), v);
        v
    }

    /// Names a walk, space separated.
    pub fn render(&self, path: &[VertexId]) -> String {
        path.iter()
            .map(|&v| self.name(v))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Clone, Debug)]
pub struct NamedGraph {
    pub graph: Graph,
    pub symbols: Symbols,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses a graph file. With `undirected`, each line yields arcs in both
/// directions. Repeated arcs collapse to the lightest one.
pub fn parse_graph(text: &str, undirected: bool) -> Result<NamedGraph, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "missing `n m` header"))?;
    let nums: Vec<&str> = header.split_whitespace().collect();
    if nums.len() != 2 {
        return Err(ParseError::new(hline, "header must be `n m`"));
    }
    let parse_count = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| ParseError::new(hline, format!("`{s}` is not a count")))
    };
    let n = parse_count(nums[0])?;
    let m = parse_count(nums[1])?;

    let mut symbols = Symbols::default();
    let mut arcs: Vec<(VertexId, VertexId, f64)> = Vec::new();
    let mut slot: HashMap<(VertexId, VertexId), usize> = HashMap::new();
    let mut seen = 0;
    for (line, text) in lines {
        seen += 1;
        if seen > m {
            return Err(ParseError::new(
                line,
                format!("more than the declared {m} edge lines"),
            ));
        }
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(ParseError::new(
                line,
                format!("expected `u v w`, found {} tokens", toks.len()),
            ));
        }
        let w: f64 = toks[2]
            .parse()
            .map_err(|_| ParseError::new(line, format!("`{}` is not a number", toks[2])))?;
        if !(w.is_finite() && w > 0.0) {
            return Err(ParseError::new(
                line,
                format!("weight {w} must be positive"),
            ));
        }
        if toks[0] == toks[1] {
            return Err(ParseError::new(line, format!("self-loop at `{}`", toks[0])));
        }
        let u = symbols.intern(toks[0]);
        let v = symbols.intern(toks[1]);
        if symbols.len() > n {
            return Err(ParseError::new(
                line,
                format!("more than the declared {n} vertices"),
            ));
        }
        let mut add = |a: VertexId, b: VertexId| match slot.get(&(a, b)) {
            Some(&i) => arcs[i].2 = arcs[i].2.min(w),
            None => {
                slot.insert((a, b), arcs.len());
                arcs.push((a, b, w));
            }
        };
        add(u, v);
        if undirected {
            add(v, u);
        }
    }
    if seen < m {
        return Err(ParseError::new(
            text.lines().count().max(1),
            format!("expected {m} edge lines, found {seen}"),
        ));
    }

    // Vertices never named by an edge get their index as a name.
    while symbols.len() < n {
        let mut name = symbols.len().to_string();
        while symbols.id(&name).is_some() {
            name.insert(0, '_');
        }
        symbols.intern(&name);
    }

    let mut graph = Graph::new(n);
    for (u, v, w) in arcs {
        graph
            .add_edge(u, v, w)
            .expect("arcs were validated while parsing");
    }
    Ok(NamedGraph { graph, symbols })
}

/// Parses an exceptions file against a parsed graph.
pub fn parse_exceptions(text: &str, named: &NamedGraph) -> Result<ExceptionStore, ParseError> {
    let mut items = Vec::new();
    let mut lines_of = Vec::new();
    for (line, text) in content_lines(text) {
        let mut vertices = Vec::new();
        for tok in text.split_whitespace() {
            let v = named
                .symbols
                .id(tok)
                .ok_or_else(|| ParseError::new(line, format!("unknown vertex `{tok}`")))?;
            vertices.push(v);
        }
        let x = Exception::new(&named.graph, vertices)
            .map_err(|e| ParseError::new(line, render_err(e, named)))?;
        items.push(x);
        lines_of.push(line);
    }
    ExceptionStore::new(items).map_err(|e| match e {
        crate::error::ExceptionError::Duplicate(first) => {
            let dup_line = dup_line(&lines_of, text, named, first.index());
            ParseError::new(
                dup_line,
                format!(
                    "duplicate of the exception on line {}",
                    lines_of[first.index()]
                ),
            )
        }
        other => ParseError::new(1, render_err(other, named)),
    })
}

fn dup_line(lines_of: &[usize], text: &str, named: &NamedGraph, first: usize) -> usize {
    let key = |line: usize| {
        text.lines().nth(line - 1).map(|l| {
            l.split_whitespace()
                .map(|t| named.symbols.id(t))
                .collect::<Vec<_>>()
        })
    };
    let target = key(lines_of[first]);
    lines_of[first + 1..]
        .iter()
        .copied()
        .find(|&l| key(l) == target)
        .unwrap_or(lines_of[first])
}

fn render_err(e: crate::error::ExceptionError, named: &NamedGraph) -> String {
    use crate::error::ExceptionError::*;
    let n = |v: VertexId| named.symbols.name(v).to_string();
    match e {
        TooShort(k) => format!("an exception needs at least two vertices, got {k}"),
        NotSimple(v) => format!("vertex `{}` repeats; exceptions must be simple paths", n(v)),
        NotAnEdge { from, to } => format!("`{} {}` is not an edge", n(from), n(to)),
        other => other.to_string(),
    }
}

/// Canonical graph text: header, then arcs sorted by tail name, head name, weight.
pub fn write_graph(named: &NamedGraph) -> String {
    let g = &named.graph;
    let mut arcs: Vec<(&str, &str, f64)> = g
        .edges()
        .map(|(u, v, w)| (named.symbols.name(u), named.symbols.name(v), w))
        .collect();
    arcs.sort_by(|a, b| a.0.cmp(b.0).then(a.1.cmp(b.1)).then(a.2.total_cmp(&b.2)));
    let mut out = format!("{} {}\n", g.vertex_count(), arcs.len());
    for (u, v, w) in arcs {
        let _ = writeln!(out, "{u} {v} {w}");
    }
    out
}

/// One exception per line, in store order.
pub fn write_exceptions(store: &ExceptionStore, symbols: &Symbols) -> String {
    let mut out = String::new();
    for (_, x) in store.iter() {
        out.push_str(&symbols.render(x.vertices()));
        out.push('\n');
    }
    out
}
