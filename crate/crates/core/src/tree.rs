//! Shortest-path trees rooted at the source, and the Dijkstra machinery that
//! grows and repairs them.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::RouteError;
use crate::graph::{Graph, VertexId};

/// Min-heap entry keyed by `(distance, key)`.
#[derive(Copy, Clone, Debug)]
pub(crate) struct QueueEntry<K = VertexId> {
    pub dist: f64,
    pub key: K,
}

impl<K: Ord> PartialEq for QueueEntry<K> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<K: Ord> Eq for QueueEntry<K> {}

impl<K: Ord> Ord for QueueEntry<K> {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.key.cmp(&self.key))
    }
}

impl<K: Ord> PartialOrd for QueueEntry<K> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Tree `T_i`: parent links, settled distances and child lists.
///
/// A parent link records the weight of the edge it was relaxed over. The
/// link stays valid even if that edge later stops being scanned.
#[derive(Clone, Debug)]
pub struct SptState {
    source: VertexId,
    parent: Vec<Option<VertexId>>,
    link_weight: Vec<f64>,
    dist: Vec<f64>,
    children: Vec<Vec<VertexId>>,
}

impl SptState {
    /// Tree containing only `source`, every other vertex unreached.
    pub fn new(vertex_count: usize, source: VertexId) -> Self {
        let mut t = SptState {
            source,
            parent: Vec::new(),
            link_weight: Vec::new(),
            dist: Vec::new(),
            children: Vec::new(),
        };
        t.grow(vertex_count);
        t.dist[source.index()] = 0.0;
        t
    }

    pub(crate) fn grow(&mut self, vertex_count: usize) {
        if vertex_count > self.dist.len() {
            self.parent.resize(vertex_count, None);
            self.link_weight.resize(vertex_count, 0.0);
            self.dist.resize(vertex_count, f64::INFINITY);
            self.children.resize(vertex_count, Vec::new());
        }
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn dist(&self, v: VertexId) -> f64 {
        self.dist.get(v.index()).copied().unwrap_or(f64::INFINITY)
    }

    pub fn distances(&self) -> &[f64] {
        &self.dist
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent.get(v.index()).copied().flatten()
    }

    /// Weight recorded when `v` was linked to its parent.
    pub fn link_weight(&self, v: VertexId) -> Option<f64> {
        self.parent(v).map(|_| self.link_weight[v.index()])
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[v.index()]
    }

    pub fn is_reached(&self, v: VertexId) -> bool {
        self.dist(v).is_finite()
    }

    /// Tree path from the source to `v`, or `None` if `v` is unreached.
    pub fn path_to(&self, v: VertexId) -> Option<Vec<VertexId>> {
        if !self.is_reached(v) {
            return None;
        }
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent(cur) {
            path.push(p);
            cur = p;
        }
        debug_assert_eq!(cur, self.source);
        path.reverse();
        Some(path)
    }

    /// `v` and all its tree descendants, in preorder.
    pub fn subtree(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            out.push(u);
            stack.extend(self.children[u.index()].iter().rev().copied());
        }
        out
    }

    pub(crate) fn attach(&mut self, v: VertexId, parent: VertexId, weight: f64) {
        self.detach(v);
        self.parent[v.index()] = Some(parent);
        self.link_weight[v.index()] = weight;
        self.dist[v.index()] = self.dist[parent.index()] + weight;
        self.children[parent.index()].push(v);
    }

    /// Cuts `v` from its parent and marks it unreached. Children are untouched.
    pub(crate) fn detach(&mut self, v: VertexId) {
        if let Some(p) = self.parent[v.index()].take() {
            let siblings = &mut self.children[p.index()];
            if let Some(pos) = siblings.iter().position(|&c| c == v) {
                siblings.remove(pos);
            }
        }
        if v != self.source {
            self.dist[v.index()] = f64::INFINITY;
        }
    }

    /// Checks the structural invariants: parent links form a tree rooted at
    /// the source and each link adds exactly its recorded weight.
    pub fn check(&self) -> Result<(), String> {
        if self.dist(self.source) != 0.0 || self.parent(self.source).is_some() {
            return Err("source must be the root at distance 0".into());
        }
        for i in 0..self.len() {
            let v = VertexId::new(i);
            match self.parent(v) {
                None if v != self.source && self.is_reached(v) => {
                    return Err(format!("{v} reached but has no parent"));
                }
                None => {}
                Some(p) => {
                    if self.dist(v) != self.dist(p) + self.link_weight[i] {
                        return Err(format!("{p} -> {v} breaks the distance sum"));
                    }
                    if !self.children(p).contains(&v) {
                        return Err(format!("{v} missing from children of {p}"));
                    }
                    if self.path_to(v).map(|p| p[0]) != Some(self.source) {
                        return Err(format!("{v} is not connected to the source"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Runs Dijkstra's main loop over `frontier`. Vertices outside the frontier
/// keep their labels. Each frontier vertex is first seeded from in-edges whose
/// tail lies outside the frontier, then the queue is drained, relaxing only
/// into unsettled frontier vertices. Frozen vertices must not be in the frontier.
pub(crate) fn settle_frontier(g: &Graph, tree: &mut SptState, frontier: &[VertexId]) {
    tree.grow(g.vertex_count());
    let mut in_frontier = vec![false; g.vertex_count()];
    for &v in frontier {
        debug_assert!(!g.is_frozen(v), "frozen vertex {v} in rebuild frontier");
        in_frontier[v.index()] = true;
    }
    for &v in frontier {
        tree.detach(v);
        tree.children[v.index()].clear();
    }

    let mut best: Vec<Option<(VertexId, f64)>> = vec![None; g.vertex_count()];
    let mut tentative = vec![f64::INFINITY; g.vertex_count()];
    let mut heap = BinaryHeap::new();
    for &v in frontier {
        if v == tree.source {
            tentative[v.index()] = 0.0;
        } else {
            for l in g.in_links(v) {
                let u = l.vertex;
                if in_frontier[u.index()] || !tree.is_reached(u) {
                    continue;
                }
                let d = tree.dist(u) + l.weight;
                if d < tentative[v.index()] {
                    tentative[v.index()] = d;
                    best[v.index()] = Some((u, l.weight));
                }
            }
        }
        if tentative[v.index()].is_finite() {
            heap.push(QueueEntry {
                dist: tentative[v.index()],
                key: v,
            });
        }
    }

    let mut settled = vec![false; g.vertex_count()];
    while let Some(QueueEntry { dist, key: v }) = heap.pop() {
        if settled[v.index()] || dist != tentative[v.index()] {
            continue;
        }
        settled[v.index()] = true;
        match best[v.index()] {
            Some((p, w)) => tree.attach(v, p, w),
            None => tree.dist[v.index()] = 0.0,
        }
        for l in g.out_links(v) {
            let w = l.vertex;
            if !in_frontier[w.index()] || settled[w.index()] {
                continue;
            }
            let d = dist + l.weight;
            if d < tentative[w.index()] {
                tentative[w.index()] = d;
                best[w.index()] = Some((v, l.weight));
                heap.push(QueueEntry { dist: d, key: w });
            }
        }
    }
}

/// Plain Dijkstra tree of `g` rooted at `source`.
pub fn initial_tree(g: &Graph, source: VertexId) -> Result<SptState, RouteError> {
    if !g.contains(source) {
        return Err(crate::error::GraphError::UnknownVertex(source).into());
    }
    let mut tree = SptState::new(g.vertex_count(), source);
    let all: Vec<VertexId> = g.vertices().collect();
    settle_frontier(g, &mut tree, &all);
    Ok(tree)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> VertexId {
        VertexId::new(i)
    }

    const S: usize = 0;
    const A: usize = 1;
    const B: usize = 2;
    const T: usize = 3;
    const C: usize = 4;

    fn detour() -> Graph {
        let mut g = Graph::new(5);
        for (x, y) in [(S, A), (A, B), (B, T), (S, C), (C, A)] {
            g.add_edge(v(x), v(y), 1.0).unwrap();
            g.add_edge(v(y), v(x), 1.0).unwrap();
        }
        g
    }

    /// Minimum walk length by enumerating all walks of at most `max_edges` edges.
    fn brute_force(g: &Graph, s: VertexId, t: VertexId, max_edges: usize) -> f64 {
        fn go(g: &Graph, u: VertexId, t: VertexId, len: f64, left: usize, best: &mut f64) {
            if u == t && len < *best {
                *best = len;
            }
            if left == 0 {
                return;
            }
            for l in g.out_links(u) {
                go(g, l.vertex, t, len + l.weight, left - 1, best);
            }
        }
        let mut best = f64::INFINITY;
        go(g, s, t, 0.0, max_edges, &mut best);
        best
    }

    #[test]
    fn single_vertex() {
        let g = Graph::new(1);
        let t = initial_tree(&g, v(0)).unwrap();
        assert_eq!(t.dist(v(0)), 0.0);
        assert_eq!(t.path_to(v(0)), Some(vec![v(0)]));
        t.check().unwrap();
    }

    #[test]
    fn detour_tree_matches_enumeration() {
        let g = detour();
        let t = initial_tree(&g, v(S)).unwrap();
        t.check().unwrap();
        for x in 0..5 {
            assert_eq!(t.dist(v(x)), brute_force(&g, v(S), v(x), 6), "vertex {x}");
        }
        assert_eq!(t.dist(v(T)), 3.0);
        assert_eq!(t.path_to(v(T)), Some(vec![v(S), v(A), v(B), v(T)]));
    }

    #[test]
    fn unreachable_is_infinite() {
        let mut g = Graph::new(3);
        g.add_edge(v(0), v(1), 1.0).unwrap();
        let t = initial_tree(&g, v(0)).unwrap();
        assert_eq!(t.dist(v(2)), f64::INFINITY);
        assert_eq!(t.path_to(v(2)), None);
        assert!(initial_tree(&g, v(9)).is_err());
    }

    #[test]
    fn subtree_and_detach() {
        let g = detour();
        let mut t = initial_tree(&g, v(S)).unwrap();
        let mut sub = t.subtree(v(A));
        sub.sort();
        assert_eq!(sub, vec![v(A), v(B), v(T)]);
        t.detach(v(B));
        assert!(!t.is_reached(v(B)));
        assert_eq!(t.subtree(v(A)), vec![v(A)]);
    }

    #[test]
    fn ties_break_on_vertex_id() {
        // two equal routes 0->1->3 and 0->2->3; 1 settles first and wins
        let mut g = Graph::new(4);
        for (x, y) in [(0, 2), (0, 1), (2, 3), (1, 3)] {
            g.add_edge(v(x), v(y), 1.0).unwrap();
        }
        let t = initial_tree(&g, v(0)).unwrap();
        assert_eq!(t.parent(v(3)), Some(v(1)));
    }
}
