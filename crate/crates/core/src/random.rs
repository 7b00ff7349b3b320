//! Seeded random instances for tests, benchmarks and the bundled corpus.
//!
//! Purely random exceptions rarely touch the shortest walks, so part of each
//! exception set is planted: take the current optimal avoiding walk to some
//! destination and forbid a window of it, then repeat with the grown set.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Graph, VertexId};
use crate::oracle::{Exception, ExceptionStore};
use crate::reference::ProductSearch;

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct InstanceParams {
    pub vertices: usize,
    pub edges: usize,
    pub max_weight: u32,
    pub exceptions: usize,
    pub max_exception_edges: usize,
    /// Chance that an exception is planted on an optimal walk.
    pub planted: f64,
}

impl InstanceParams {
    /// Small instances for exhaustive cross-checks.
    pub fn small() -> Self {
        InstanceParams {
            vertices: 10,
            edges: 30,
            max_weight: 10,
            exceptions: 4,
            max_exception_edges: 3,
            planted: 0.75,
        }
    }
}

#[derive(Debug)]
pub struct RandomInstance {
    pub graph: Graph,
    pub source: VertexId,
    pub store: ExceptionStore,
}

impl RandomInstance {
    /// Graph and exceptions files, naming vertex `i` as `v{i}`.
    pub fn to_text(&self) -> (String, String) {
        let name = |v: VertexId| format!("v{}", v.index());
        let mut g = format!(
            "{} {}\n",
            self.graph.vertex_count(),
            self.graph.edge_count()
        );
        for (u, v, w) in self.graph.edges() {
            g.push_str(&format!("{} {} {}\n", name(u), name(v), w));
        }
        let mut x = String::new();
        for (_, e) in self.store.iter() {
            let names: Vec<String> = e.vertices().iter().map(|&v| name(v)).collect();
            x.push_str(&names.join(" "));
            x.push('\n');
        }
        (g, x)
    }
}

/// Directed graph with `edges` distinct arcs (capped at `n(n-1)`), no
/// self-loops, integer weights in `1..=max_weight`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, edges: usize, max_weight: u32) -> Graph {
    let mut g = Graph::new(n);
    let m = edges.min(n * n.saturating_sub(1));
    let mut seen = HashSet::with_capacity(m);
    while seen.len() < m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && seen.insert((u, v)) {
            let w = rng.gen_range(1..=max_weight) as f64;
            g.add_edge(VertexId::new(u), VertexId::new(v), w).unwrap();
        }
    }
    g
}

/// A random simple path with `edges` edges, found by a randomized walk.
pub fn random_simple_path<R: Rng>(rng: &mut R, g: &Graph, edges: usize) -> Option<Vec<VertexId>> {
    for _ in 0..16 {
        let mut path = vec![VertexId::new(rng.gen_range(0..g.vertex_count()))];
        while path.len() <= edges {
            let last = *path.last().unwrap();
            let next: Vec<VertexId> = g
                .out_links(last)
                .iter()
                .map(|l| l.vertex)
                .filter(|v| !path.contains(v))
                .collect();
            match next.choose(rng) {
                Some(&v) => path.push(v),
                None => break,
            }
        }
        if path.len() == edges + 1 {
            return Some(path);
        }
    }
    None
}

/// A window of an optimal avoiding walk from `source` to a random reachable
/// vertex, or `None` if no window of the wanted size is simple and new.
fn planted_path<R: Rng>(
    rng: &mut R,
    g: &Graph,
    source: VertexId,
    store: &ExceptionStore,
    edges: usize,
) -> Option<Vec<VertexId>> {
    let search = ProductSearch::run(g, source, store.automaton());
    let reachable: Vec<VertexId> = g
        .vertices()
        .filter(|&v| v != source && search.path_to(v).is_some())
        .collect();
    let target = *reachable.choose(rng)?;
    let walk = search.path_to(target)?.path;
    let mut starts: Vec<usize> = (0..walk.len().saturating_sub(edges)).collect();
    starts.shuffle(rng);
    starts
        .into_iter()
        .map(|i| walk[i..=i + edges].to_vec())
        .find(|w| {
            let distinct: HashSet<_> = w.iter().collect();
            distinct.len() == w.len() && !store.iter().any(|(_, x)| x.vertices() == &w[..])
        })
}

/// Builds an exception set of up to `count` exceptions for `g`.
pub fn random_exceptions<R: Rng>(
    rng: &mut R,
    g: &Graph,
    source: VertexId,
    count: usize,
    max_edges: usize,
    planted: f64,
) -> ExceptionStore {
    let mut store = ExceptionStore::empty();
    for _ in 0..count {
        let edges = rng.gen_range(1..=max_edges);
        let path = if rng.gen_bool(planted) {
            planted_path(rng, g, source, &store, edges)
                .or_else(|| random_simple_path(rng, g, edges))
        } else {
            random_simple_path(rng, g, edges)
        };
        let Some(path) = path else { continue };
        let mut items: Vec<Exception> = store.iter().map(|(_, x)| x.clone()).collect();
        if items.iter().any(|x| x.vertices() == &path[..]) {
            continue;
        }
        items.push(Exception::new(g, path).expect("generated paths are simple graph paths"));
        store = ExceptionStore::new(items).expect("duplicates were filtered");
    }
    store
}

pub fn random_instance<R: Rng>(rng: &mut R, p: &InstanceParams) -> RandomInstance {
    let graph = random_graph(rng, p.vertices, p.edges, p.max_weight);
    let source = VertexId::new(0);
    let store = random_exceptions(
        rng,
        &graph,
        source,
        p.exceptions,
        p.max_exception_edges,
        p.planted,
    );
    RandomInstance {
        graph,
        source,
        store,
    }
}
