//! The try / modify / repair loop.
//!
//! A [`Session`] owns a working copy of the graph and a shortest-path tree
//! rooted at the source. Routing to a target tries the tree path; when the
//! oracle reports an exception, the exception's copy is cut out of the graph
//! by vertex replication and only the affected part of the tree is rebuilt.
//! The session can be reused for further targets, which is how all
//! destinations are served with at most `k` modifications in total.

use std::collections::HashSet;

use crate::error::{GraphError, RouteError};
use crate::graph::{Graph, VertexId};
use crate::oracle::{ExceptionId, Oracle, OracleReply};
use crate::surgery::{locate_exception, modify_graph, Occurrence, PruneMode};
use crate::tree::{initial_tree, settle_frontier, SptState};

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct RouterConfig {
    pub prune: PruneMode,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct RunStats {
    /// Graph modifications, one per discovered exception.
    pub iterations: usize,
    pub oracle_queries: usize,
    pub replicas_created: usize,
}

impl std::ops::AddAssign for RunStats {
    fn add_assign(&mut self, rhs: Self) {
        self.iterations += rhs.iterations;
        self.oracle_queries += rhs.oracle_queries;
        self.replicas_created += rhs.replicas_created;
    }
}

/// Result for one destination. `path` is projected onto original vertices and
/// is `None` when the destination cannot be reached without an exception.
#[derive(Clone, Debug, PartialEq)]
pub struct RouteOutcome {
    pub target: VertexId,
    pub path: Option<Vec<VertexId>>,
    pub length: f64,
    pub stats: RunStats,
}

impl RouteOutcome {
    pub fn is_feasible(&self) -> bool {
        self.path.is_some()
    }
}

/// Outcomes for every original vertex, in ascending id order, plus totals.
#[derive(Clone, Debug, PartialEq)]
pub struct AllRoutes {
    pub outcomes: Vec<RouteOutcome>,
    pub stats: RunStats,
}

impl AllRoutes {
    pub fn distances(&self) -> Vec<f64> {
        self.outcomes.iter().map(|o| o.length).collect()
    }
}

/// Hooks around each graph modification, used for instrumentation.
pub trait Observer {
    fn before_modify(&mut self, _graph: &Graph, _tree: &SptState, _occ: &Occurrence) {}

    /// Called once the graph is modified and the tree repaired. In the
    /// weak-oracle variant the tree only covers settled vertices.
    fn after_repair(
        &mut self,
        _graph: &Graph,
        _tree: &SptState,
        _occ: &Occurrence,
        _replicas: &[VertexId],
    ) {
    }
}

impl Observer for () {}

/// Frontier of a rebuild: the new replicas plus the old subtree under the
/// occurrence's end vertex.
pub fn rebuild_frontier(tree: &SptState, occ: &Occurrence, replicas: &[VertexId]) -> Vec<VertexId> {
    let mut frontier = replicas.to_vec();
    if occ.end().index() < tree.len() {
        frontier.extend(tree.subtree(occ.end()));
    }
    frontier
}

/// Repairs `tree` after `modify_graph` was applied for `occ`. Labels outside
/// the frontier are kept verbatim; frontier vertices are re-seeded from
/// settled in-neighbors and settled by Dijkstra's main loop.
pub fn rebuild_tree(g: &Graph, tree: &mut SptState, occ: &Occurrence, replicas: &[VertexId]) {
    let frontier = rebuild_frontier(tree, occ, replicas);
    settle_frontier(g, tree, &frontier);
}

pub struct Session<O> {
    graph: Graph,
    tree: SptState,
    oracle: O,
    config: RouterConfig,
    reported: HashSet<ExceptionId>,
    stats: RunStats,
}

impl<O: Oracle> Session<O> {
    pub fn new(
        g0: &Graph,
        source: VertexId,
        oracle: O,
        config: RouterConfig,
    ) -> Result<Self, RouteError> {
        check_original(g0, source)?;
        let graph = g0.clone();
        let tree = initial_tree(&graph, source)?;
        Ok(Session {
            graph,
            tree,
            oracle,
            config,
            reported: HashSet::new(),
            stats: RunStats::default(),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn tree(&self) -> &SptState {
        &self.tree
    }

    /// Totals over every `route_to` call so far.
    pub fn stats(&self) -> RunStats {
        self.stats
    }

    pub fn route_to(&mut self, target: VertexId) -> Result<RouteOutcome, RouteError> {
        self.route_to_observed(target, &mut ())
    }

    pub fn route_to_observed(
        &mut self,
        target: VertexId,
        obs: &mut dyn Observer,
    ) -> Result<RouteOutcome, RouteError> {
        check_original(&self.graph, target)?;
        let before = self.stats;
        loop {
            let Some(path) = self.tree.path_to(target) else {
                return Ok(self.outcome(target, None, before));
            };
            let projected = self.graph.project(&path);
            self.stats.oracle_queries += 1;
            let hit = match self.oracle.try_path(&projected) {
                OracleReply::Clear => return Ok(self.outcome(target, Some(projected), before)),
                OracleReply::Found(hit) => hit,
            };
            if !self.reported.insert(hit.exception) {
                return Err(RouteError::RepeatedException(hit.exception));
            }
            let occ = locate_exception(&self.graph, &path, &hit)?;
            obs.before_modify(&self.graph, &self.tree, &occ);
            let replicas = modify_graph(&mut self.graph, &occ, self.config.prune)?;
            rebuild_tree(&self.graph, &mut self.tree, &occ, &replicas);
            self.stats.iterations += 1;
            self.stats.replicas_created += replicas.len();
            obs.after_repair(&self.graph, &self.tree, &occ, &replicas);
        }
    }

    fn outcome(
        &self,
        target: VertexId,
        path: Option<Vec<VertexId>>,
        before: RunStats,
    ) -> RouteOutcome {
        let stats = RunStats {
            iterations: self.stats.iterations - before.iterations,
            oracle_queries: self.stats.oracle_queries - before.oracle_queries,
            replicas_created: self.stats.replicas_created - before.replicas_created,
        };
        RouteOutcome {
            target,
            length: if path.is_some() {
                self.tree.dist(target)
            } else {
                f64::INFINITY
            },
            path,
            stats,
        }
    }

    /// Routes to every original vertex in ascending id order, carrying the
    /// modified graph and tree from one destination to the next.
    pub fn route_all_observed(&mut self, obs: &mut dyn Observer) -> Result<AllRoutes, RouteError> {
        let before = self.stats;
        let outcomes = (0..self.graph.original_vertex_count())
            .map(|i| self.route_to_observed(VertexId::new(i), obs))
            .collect::<Result<Vec<_>, _>>()?;
        let mut stats = RunStats::default();
        for o in &outcomes {
            stats += o.stats;
        }
        debug_assert_eq!(stats.iterations, self.stats.iterations - before.iterations);
        Ok(AllRoutes { outcomes, stats })
    }
}

pub(crate) fn check_original(g: &Graph, v: VertexId) -> Result<(), RouteError> {
    if !g.contains(v) {
        return Err(GraphError::UnknownVertex(v).into());
    }
    if !g.is_original(v) {
        return Err(RouteError::NotOriginal(v));
    }
    Ok(())
}

/// Shortest walk from `source` to `target` avoiding every exception behind
/// `oracle`, which must report the occurrence that ends earliest.
pub fn route_single<O: Oracle>(
    g0: &Graph,
    source: VertexId,
    target: VertexId,
    oracle: O,
    config: RouterConfig,
) -> Result<RouteOutcome, RouteError> {
    check_original(g0, target)?;
    Session::new(g0, source, oracle, config)?.route_to(target)
}

/// Shortest avoiding walks from `source` to every original vertex.
pub fn route_all<O: Oracle>(
    g0: &Graph,
    source: VertexId,
    oracle: O,
    config: RouterConfig,
) -> Result<AllRoutes, RouteError> {
    Session::new(g0, source, oracle, config)?.route_all_observed(&mut ())
}
