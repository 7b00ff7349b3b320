//! Ground-truth solver with the whole forbidden set in hand: Dijkstra over the
//! product of the graph with the exceptions' pattern automaton.
//!
//! A product state pairs a vertex with the automaton state reached after
//! reading the walk so far. Moves into accepting states are dropped, so every
//! walk the search can produce avoids all exceptions, and every avoiding walk
//! is a path in the product.

use std::collections::{BinaryHeap, HashMap};

use crate::graph::{Graph, VertexId};
use crate::matcher::{PatternAutomaton, StateId};
use crate::oracle::ExceptionStore;
use crate::tree::QueueEntry;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProductState {
    pub vertex: VertexId,
    pub astate: StateId,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReferencePath {
    pub length: f64,
    pub path: Vec<VertexId>,
}

pub fn build_automaton(store: &ExceptionStore) -> PatternAutomaton {
    store.automaton().clone()
}

/// Settled product search from `source`.
pub struct ProductSearch<'a> {
    automaton: &'a PatternAutomaton,
    states: Vec<ProductState>,
    dist: Vec<f64>,
    parent: Vec<Option<usize>>,
}

impl<'a> ProductSearch<'a> {
    pub fn run(g: &Graph, source: VertexId, automaton: &'a PatternAutomaton) -> Self {
        let mut index: HashMap<ProductState, usize> = HashMap::new();
        let mut search = ProductSearch {
            automaton,
            states: Vec::new(),
            dist: Vec::new(),
            parent: Vec::new(),
        };
        let start = ProductState {
            vertex: source,
            astate: automaton.step(automaton.start(), source),
        };
        debug_assert!(!automaton.is_accepting(start.astate));
        let mut settled = Vec::new();
        let mut heap = BinaryHeap::new();
        search.intern(&mut index, &mut settled, start);
        search.dist[0] = 0.0;
        heap.push(QueueEntry {
            dist: 0.0,
            key: 0usize,
        });
        while let Some(QueueEntry { dist, key: i }) = heap.pop() {
            if settled[i] || dist != search.dist[i] {
                continue;
            }
            settled[i] = true;
            let ProductState { vertex: u, astate } = search.states[i];
            for l in g.out_links(u) {
                let next = automaton.step(astate, l.vertex);
                if automaton.is_accepting(next) {
                    continue;
                }
                let j = search.intern(
                    &mut index,
                    &mut settled,
                    ProductState {
                        vertex: l.vertex,
                        astate: next,
                    },
                );
                let d = dist + l.weight;
                if !settled[j] && d < search.dist[j] {
                    search.dist[j] = d;
                    search.parent[j] = Some(i);
                    heap.push(QueueEntry { dist: d, key: j });
                }
            }
        }
        search
    }

    fn intern(
        &mut self,
        index: &mut HashMap<ProductState, usize>,
        settled: &mut Vec<bool>,
        s: ProductState,
    ) -> usize {
        *index.entry(s).or_insert_with(|| {
            self.states.push(s);
            self.dist.push(f64::INFINITY);
            self.parent.push(None);
            settled.push(false);
            self.states.len() - 1
        })
    }

    /// Number of product states discovered.
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn automaton(&self) -> &PatternAutomaton {
        self.automaton
    }

    /// Shortest avoiding walk to `target`, if any.
    pub fn path_to(&self, target: VertexId) -> Option<ReferencePath> {
        let best = (0..self.states.len())
            .filter(|&i| self.states[i].vertex == target && self.dist[i].is_finite())
            .min_by(|&a, &b| self.dist[a].total_cmp(&self.dist[b]))?;
        let mut path = Vec::new();
        let mut cur = Some(best);
        while let Some(i) = cur {
            path.push(self.states[i].vertex);
            cur = self.parent[i];
        }
        path.reverse();
        Some(ReferencePath {
            length: self.dist[best],
            path,
        })
    }

    /// Avoiding distance to every vertex of the graph.
    pub fn distances(&self, vertex_count: usize) -> Vec<f64> {
        let mut out = vec![f64::INFINITY; vertex_count];
        for (s, &d) in self.states.iter().zip(&self.dist) {
            let slot = &mut out[s.vertex.index()];
            if d < *slot {
                *slot = d;
            }
        }
        out
    }
}

/// Shortest walk from `source` to `target` containing no exception of `store`.
pub fn shortest_avoiding(
    g0: &Graph,
    source: VertexId,
    target: VertexId,
    store: &ExceptionStore,
) -> Option<ReferencePath> {
    ProductSearch::run(g0, source, store.automaton()).path_to(target)
}

/// Avoiding distances from `source` to every vertex.
pub fn avoiding_distances(g0: &Graph, source: VertexId, store: &ExceptionStore) -> Vec<f64> {
    ProductSearch::run(g0, source, store.automaton()).distances(g0.vertex_count())
}
