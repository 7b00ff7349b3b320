//! Brute-force checkers shared by the integration tests. None of them reuse
//! the library's Dijkstra, tree or automaton code.

#![allow(dead_code)]

use std::cell::Cell;
use std::collections::{HashSet, VecDeque};

use exroute::random::{random_instance, InstanceParams, RandomInstance};
use exroute::router::Observer;
use exroute::surgery::Occurrence;
use exroute::{ExceptionStore, Graph, Oracle, OracleReply, SptState, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn v(i: usize) -> VertexId {
    VertexId::new(i)
}

/// Instance `seed` of the small random suite: n in 3..=10, m <= 30, integer
/// weights 1..=10, at most 4 exceptions of 1 to 3 edges.
pub fn suite_instance(seed: u64) -> RandomInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(3..=10usize);
    let max_m = 30.min(n * (n - 1));
    let params = InstanceParams {
        vertices: n,
        edges: rng.gen_range(n.min(max_m)..=max_m),
        max_weight: 10,
        exceptions: rng.gen_range(0..=4),
        max_exception_edges: 3,
        planted: 0.75,
    };
    random_instance(&mut rng, &params)
}

/// Single-source distances by Bellman-Ford over every edge of `g`.
pub fn bellman_ford(g: &Graph, s: VertexId) -> Vec<f64> {
    let edges: Vec<_> = g.edges().collect();
    let mut d = vec![f64::INFINITY; g.vertex_count()];
    d[s.index()] = 0.0;
    for _ in 0..g.vertex_count() {
        let mut changed = false;
        for &(u, w, c) in &edges {
            if d[u.index()] + c < d[w.index()] {
                d[w.index()] = d[u.index()] + c;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    d
}

/// True if some exception of `store` occurs contiguously in `walk`.
pub fn contains_exception(walk: &[VertexId], store: &ExceptionStore) -> bool {
    store
        .iter()
        .any(|(_, x)| walk.windows(x.len()).any(|w| w == x.vertices()))
}

pub fn walk_length(g: &Graph, walk: &[VertexId]) -> Option<f64> {
    walk.windows(2)
        .map(|p| g.edge_weight(p[0], p[1]))
        .sum::<Option<f64>>()
}

/// Shortest simple path from `s` to `t` avoiding `store`, by exhaustive search.
pub fn best_simple_avoiding(g: &Graph, s: VertexId, t: VertexId, store: &ExceptionStore) -> f64 {
    fn go(
        g: &Graph,
        path: &mut Vec<VertexId>,
        len: f64,
        t: VertexId,
        store: &ExceptionStore,
        best: &mut f64,
    ) {
        if contains_exception(path, store) {
            return;
        }
        let u = *path.last().unwrap();
        if u == t {
            *best = best.min(len);
            return;
        }
        for l in g.out_links(u) {
            if !path.contains(&l.vertex) {
                path.push(l.vertex);
                go(g, path, len + l.weight, t, store, best);
                path.pop();
            }
        }
    }
    let mut best = f64::INFINITY;
    go(g, &mut vec![s], 0.0, t, store, &mut best);
    best
}

/// Shortest avoiding walk length by enumerating every walk of at most
/// `max_edges` edges from `s`.
pub fn best_walk_avoiding(
    g: &Graph,
    s: VertexId,
    store: &ExceptionStore,
    max_edges: usize,
) -> Vec<f64> {
    fn go(
        g: &Graph,
        walk: &mut Vec<VertexId>,
        len: f64,
        left: usize,
        store: &ExceptionStore,
        best: &mut [f64],
    ) {
        // only the suffix can introduce a new occurrence
        let u = *walk.last().unwrap();
        if store
            .iter()
            .any(|(_, x)| walk.len() >= x.len() && walk[walk.len() - x.len()..] == *x.vertices())
        {
            return;
        }
        if len < best[u.index()] {
            best[u.index()] = len;
        }
        if left == 0 {
            return;
        }
        for l in g.out_links(u) {
            walk.push(l.vertex);
            go(g, walk, len + l.weight, left - 1, store, best);
            walk.pop();
        }
    }
    let mut best = vec![f64::INFINITY; g.vertex_count()];
    go(g, &mut vec![s], 0.0, max_edges, store, &mut best);
    best
}

/// One graph modification as seen by an observer.
pub struct Step {
    pub before: Graph,
    pub after: Graph,
    pub occ: Occurrence,
    pub replicas: Vec<VertexId>,
    pub tree_dist: Vec<f64>,
}

#[derive(Default)]
pub struct Recorder {
    pub steps: Vec<Step>,
    pending: Option<Graph>,
}

impl Observer for Recorder {
    fn before_modify(&mut self, graph: &Graph, _tree: &SptState, _occ: &Occurrence) {
        self.pending = Some(graph.clone());
    }

    fn after_repair(
        &mut self,
        graph: &Graph,
        tree: &SptState,
        occ: &Occurrence,
        replicas: &[VertexId],
    ) {
        self.steps.push(Step {
            before: self.pending.take().expect("before_modify runs first"),
            after: graph.clone(),
            occ: occ.clone(),
            replicas: replicas.to_vec(),
            tree_dist: tree.distances().to_vec(),
        });
    }
}

/// Maps a vertex of the modified graph onto the graph it was built from:
/// a new replica maps to the vertex it copies, anything else to itself.
pub fn one_step(step: &Step, x: VertexId) -> VertexId {
    if x.index() >= step.before.vertex_count() {
        step.after
            .copied_from(x)
            .expect("new vertices are replicas")
    } else {
        x
    }
}

/// Looks for a walk in the modified graph whose image is the eliminated
/// occurrence. Returns it if found.
pub fn find_realization(step: &Step) -> Option<Vec<VertexId>> {
    let target = &step.occ.vertices;
    let g = &step.after;
    fn extend(step: &Step, target: &[VertexId], walk: &mut Vec<VertexId>) -> bool {
        if walk.len() == target.len() {
            return true;
        }
        let u = *walk.last().unwrap();
        for l in step.after.out_links(u) {
            if one_step(step, l.vertex) == target[walk.len()] {
                walk.push(l.vertex);
                if extend(step, target, walk) {
                    return true;
                }
                walk.pop();
            }
        }
        false
    }
    for x in g.vertices() {
        if one_step(step, x) == target[0] {
            let mut walk = vec![x];
            if extend(step, target, &mut walk) {
                return Some(walk);
            }
        }
    }
    None
}

/// Exception matcher over a walk's projection: the set of (exception,
/// matched prefix length) pairs still alive. Written independently of the
/// library's automaton.
fn advance(
    store: &ExceptionStore,
    alive: &[(usize, usize)],
    next: VertexId,
) -> Option<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let items: Vec<_> = store.iter().map(|(_, x)| x.vertices().to_vec()).collect();
    let starts = (0..items.len()).map(|i| (i, 0));
    for (i, k) in alive.iter().copied().chain(starts) {
        if items[i][k] == next {
            if k + 1 == items[i].len() {
                return None;
            }
            out.push((i, k + 1));
        }
    }
    out.sort_unstable();
    out.dedup();
    Some(out)
}

/// Checks that every walk from `source` in the graph before the step, with
/// at most `depth` edges and whose projection avoids `store`, has a
/// counterpart in the modified graph mapping onto it edge by edge with equal
/// weights. Returns a violating walk.
pub fn find_lost_walk(
    step: &Step,
    source: VertexId,
    store: &ExceptionStore,
    depth: usize,
) -> Option<Vec<VertexId>> {
    let (old, new) = (&step.before, &step.after);
    let proj = |g: &Graph, x: VertexId| g.origin(x);

    type State = (VertexId, Vec<VertexId>, Vec<(usize, usize)>);
    let start_alive = advance(store, &[], proj(old, source))?;
    let start: State = (source, vec![source], start_alive);
    let mut seen: HashSet<State> = HashSet::new();
    let mut queue: VecDeque<(State, Vec<VertexId>)> = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back((start, vec![source]));
    while let Some(((u, pre, alive), walk)) = queue.pop_front() {
        if walk.len() > depth {
            continue;
        }
        for l in old.out_links(u) {
            let w = l.vertex;
            let Some(alive2) = advance(store, &alive, proj(old, w)) else {
                continue;
            };
            let mut pre2: Vec<VertexId> = pre
                .iter()
                .flat_map(|&p| new.out_links(p).iter())
                .filter(|m| one_step(step, m.vertex) == w && m.weight == l.weight)
                .map(|m| m.vertex)
                .collect();
            pre2.sort_unstable();
            pre2.dedup();
            let mut walk2 = walk.clone();
            walk2.push(w);
            if pre2.is_empty() {
                return Some(walk2);
            }
            let s2 = (w, pre2, alive2);
            if seen.insert(s2.clone()) {
                queue.push_back((s2, walk2));
            }
        }
    }
    None
}

/// Wraps an oracle and counts its replies that report an exception.
pub struct CountFailures<O> {
    pub inner: O,
    pub failures: Cell<usize>,
    pub queries: Cell<usize>,
}

impl<O> CountFailures<O> {
    pub fn new(inner: O) -> Self {
        CountFailures {
            inner,
            failures: Cell::new(0),
            queries: Cell::new(0),
        }
    }
}

impl<O: Oracle> Oracle for CountFailures<O> {
    fn try_path(&self, path: &[VertexId]) -> OracleReply {
        let r = self.inner.try_path(path);
        self.queries.set(self.queries.get() + 1);
        if !r.is_clear() {
            self.failures.set(self.failures.get() + 1);
        }
        r
    }
}
