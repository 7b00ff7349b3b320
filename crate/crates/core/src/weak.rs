//! Single-pass variant for an oracle that may report any exception on a path.
//!
//! Dijkstra's loop tries the tree path of every vertex right after dequeuing
//! it. Settled vertices have confirmed-clear tree paths, so any exception on
//! the tried path ends at the dequeued vertex. On failure the vertex is taken
//! out of the tree, the exception is cut out of the graph, and the dequeued
//! vertex plus the new replicas are re-seeded from settled in-neighbors.

use std::collections::{BinaryHeap, HashSet};

use crate::error::RouteError;
use crate::graph::{Graph, VertexId};
use crate::oracle::{Oracle, OracleReply};
use crate::router::{check_original, AllRoutes, Observer, RouteOutcome, RouterConfig, RunStats};
use crate::surgery::{locate_exception, modify_graph};
use crate::tree::{QueueEntry, SptState};

pub fn route_weak<O: Oracle>(
    g0: &Graph,
    source: VertexId,
    oracle: O,
    config: RouterConfig,
) -> Result<AllRoutes, RouteError> {
    route_weak_observed(g0, source, oracle, config, &mut ())
}

struct Labels {
    tentative: Vec<f64>,
    best: Vec<Option<(VertexId, f64)>>,
    settled: Vec<bool>,
}

impl Labels {
    fn grow(&mut self, n: usize) {
        self.tentative.resize(n, f64::INFINITY);
        self.best.resize(n, None);
        self.settled.resize(n, false);
    }

    /// Recomputes the label of `v` from its settled in-neighbors.
    fn reseed(&mut self, g: &Graph, tree: &SptState, v: VertexId) {
        self.tentative[v.index()] = f64::INFINITY;
        self.best[v.index()] = None;
        for l in g.in_links(v) {
            if !self.settled[l.vertex.index()] {
                continue;
            }
            let d = tree.dist(l.vertex) + l.weight;
            if d < self.tentative[v.index()] {
                self.tentative[v.index()] = d;
                self.best[v.index()] = Some((l.vertex, l.weight));
            }
        }
    }
}

pub fn route_weak_observed<O: Oracle>(
    g0: &Graph,
    source: VertexId,
    oracle: O,
    config: RouterConfig,
    obs: &mut dyn Observer,
) -> Result<AllRoutes, RouteError> {
    check_original(g0, source)?;
    let mut g = g0.clone();
    let n = g.vertex_count();
    let mut tree = SptState::new(n, source);
    let mut labels = Labels {
        tentative: vec![f64::INFINITY; n],
        best: vec![None; n],
        settled: vec![false; n],
    };
    let mut reported = HashSet::new();
    let mut stats = RunStats::default();
    let mut heap = BinaryHeap::new();

    labels.tentative[source.index()] = 0.0;
    heap.push(QueueEntry {
        dist: 0.0,
        key: source,
    });

    while let Some(QueueEntry { dist, key: v }) = heap.pop() {
        if labels.settled[v.index()] || dist != labels.tentative[v.index()] {
            continue;
        }
        if let Some((p, w)) = labels.best[v.index()] {
            tree.attach(v, p, w);
        }
        let path = tree
            .path_to(v)
            .expect("dequeued vertex is linked to the source");
        let projected = g.project(&path);
        stats.oracle_queries += 1;
        let hit = match oracle.try_path(&projected) {
            OracleReply::Clear => {
                labels.settled[v.index()] = true;
                for l in g.out_links(v) {
                    let w = l.vertex;
                    if labels.settled[w.index()] {
                        continue;
                    }
                    let d = dist + l.weight;
                    if d < labels.tentative[w.index()] {
                        labels.tentative[w.index()] = d;
                        labels.best[w.index()] = Some((v, l.weight));
                        heap.push(QueueEntry { dist: d, key: w });
                    }
                }
                continue;
            }
            OracleReply::Found(hit) => hit,
        };

        if hit.end + 1 != path.len() {
            return Err(RouteError::OracleContract(format!(
                "{} reported inside the settled prefix of the path to {v}",
                hit.exception
            )));
        }
        if !reported.insert(hit.exception) {
            return Err(RouteError::RepeatedException(hit.exception));
        }
        let occ = locate_exception(&g, &path, &hit)?;
        obs.before_modify(&g, &tree, &occ);
        tree.detach(v);
        let replicas = modify_graph(&mut g, &occ, config.prune)?;
        tree.grow(g.vertex_count());
        labels.grow(g.vertex_count());
        for &u in replicas.iter().chain(std::iter::once(&v)) {
            labels.reseed(&g, &tree, u);
            let d = labels.tentative[u.index()];
            if d.is_finite() {
                heap.push(QueueEntry { dist: d, key: u });
            }
        }
        stats.iterations += 1;
        stats.replicas_created += replicas.len();
        obs.after_repair(&g, &tree, &occ, &replicas);
    }

    let outcomes = (0..g.original_vertex_count())
        .map(VertexId::new)
        .map(|t| {
            let path = tree.path_to(t).map(|p| g.project(&p));
            RouteOutcome {
                target: t,
                length: tree.dist(t),
                path,
                stats: RunStats::default(),
            }
        })
        .collect();
    Ok(AllRoutes { outcomes, stats })
}
