//! Directed weighted multigraph with replica-aware vertex identity.
//!
//! Vertices are dense ids that are never reused. Every vertex remembers the
//! original vertex it (transitively) copies, so walks through replicas can be
//! projected back onto the input graph.
//!
//! A vertex can be *frozen*: its distance label is final, so its incoming
//! edges are never scanned again by the shortest-path code. Frozen in-edges are
//! still part of the graph's walk structure and are still copied when the
//! vertex is replicated; they are only left out of [`Graph::edge_count`].

use std::fmt;

use crate::error::GraphError;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(u32);

impl VertexId {
    pub fn new(index: usize) -> Self {
        VertexId(u32::try_from(index).expect("vertex index overflows u32"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// One end of an adjacency entry: the neighbor and the edge weight.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Link {
    pub vertex: VertexId,
    pub weight: f64,
}

#[derive(Clone, Debug, Default)]
pub struct Graph {
    out_links: Vec<Vec<Link>>,
    in_links: Vec<Vec<Link>>,
    origin: Vec<VertexId>,
    copied_from: Vec<Option<VertexId>>,
    frozen: Vec<bool>,
    original_count: usize,
    initial_edges: usize,
    max_degree: usize,
    total_edges: usize,
    active_edges: usize,
}

impl Graph {
    /// Graph with `n` original vertices and no edges.
    pub fn new(n: usize) -> Self {
        let mut g = Graph::default();
        for _ in 0..n {
            g.add_vertex();
        }
        g
    }

    /// Adds an original vertex. Only valid before any replica exists.
    pub fn add_vertex(&mut self) -> VertexId {
        assert_eq!(
            self.original_count,
            self.vertex_count(),
            "original vertices must be added before replicas"
        );
        let v = self.push_vertex(None);
        self.original_count += 1;
        v
    }

    fn push_vertex(&mut self, copied_from: Option<VertexId>) -> VertexId {
        let v = VertexId::new(self.out_links.len());
        self.out_links.push(Vec::new());
        self.in_links.push(Vec::new());
        self.origin
            .push(copied_from.map_or(v, |p| self.origin[p.index()]));
        self.copied_from.push(copied_from);
        self.frozen.push(false);
        v
    }

    /// Adds an input edge between original vertices.
    pub fn add_edge(
        &mut self,
        from: VertexId,
        to: VertexId,
        weight: f64,
    ) -> Result<(), GraphError> {
        self.check(from)?;
        self.check(to)?;
        if from == to {
            return Err(GraphError::SelfLoop(from));
        }
        if !(weight.is_finite() && weight > 0.0) {
            return Err(GraphError::InvalidWeight(weight));
        }
        self.link(from, to, weight);
        self.initial_edges += 1;
        for v in [from, to] {
            let deg = self.out_links[v.index()].len() + self.in_links[v.index()].len();
            self.max_degree = self.max_degree.max(deg);
        }
        Ok(())
    }

    fn link(&mut self, from: VertexId, to: VertexId, weight: f64) {
        self.out_links[from.index()].push(Link { vertex: to, weight });
        self.in_links[to.index()].push(Link {
            vertex: from,
            weight,
        });
        self.total_edges += 1;
        if !self.frozen[to.index()] {
            self.active_edges += 1;
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.index() < self.out_links.len()
    }

    fn check(&self, v: VertexId) -> Result<(), GraphError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.out_links.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count()).map(VertexId::new)
    }

    /// Number of edges whose head is not frozen.
    pub fn edge_count(&self) -> usize {
        self.active_edges
    }

    /// Number of edges including those into frozen vertices.
    pub fn total_edge_count(&self) -> usize {
        self.total_edges
    }

    /// `n`: vertices of the input graph.
    pub fn original_vertex_count(&self) -> usize {
        self.original_count
    }

    /// `m`: edges of the input graph.
    pub fn initial_edge_count(&self) -> usize {
        self.initial_edges
    }

    /// `d`: largest in+out degree of the input graph.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn out_links(&self, v: VertexId) -> &[Link] {
        &self.out_links[v.index()]
    }

    pub fn in_links(&self, v: VertexId) -> &[Link] {
        &self.in_links[v.index()]
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_links[v.index()].len()
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_links[v.index()].len()
    }

    pub fn origin(&self, v: VertexId) -> VertexId {
        self.origin[v.index()]
    }

    /// The vertex `v` was copied from, `None` for original vertices.
    pub fn copied_from(&self, v: VertexId) -> Option<VertexId> {
        self.copied_from[v.index()]
    }

    pub fn is_original(&self, v: VertexId) -> bool {
        v.index() < self.original_count
    }

    pub fn is_frozen(&self, v: VertexId) -> bool {
        self.frozen[v.index()]
    }

    /// Weight of an edge `from -> to`, the smallest one if there are parallel copies.
    pub fn edge_weight(&self, from: VertexId, to: VertexId) -> Option<f64> {
        self.out_links
            .get(from.index())?
            .iter()
            .filter(|l| l.vertex == to)
            .map(|l| l.weight)
            .min_by(f64::total_cmp)
    }

    pub fn has_edge(&self, from: VertexId, to: VertexId) -> bool {
        self.edge_weight(from, to).is_some()
    }

    /// Iterates over all edges as `(from, to, weight)`, frozen ones included.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, f64)> + '_ {
        self.vertices().flat_map(move |u| {
            self.out_links(u)
                .iter()
                .map(move |l| (u, l.vertex, l.weight))
        })
    }

    /// Creates a copy `v'` of `v` with the same origin and a copy of every
    /// incoming and outgoing edge of `v`.
    pub fn add_replica(&mut self, v: VertexId) -> Result<VertexId, GraphError> {
        self.check(v)?;
        let ins = self.in_links[v.index()].clone();
        let outs = self.out_links[v.index()].clone();
        let replica = self.push_vertex(Some(v));
        for l in ins {
            self.link(l.vertex, replica, l.weight);
        }
        for l in outs {
            self.link(replica, l.vertex, l.weight);
        }
        Ok(replica)
    }

    /// Removes one `from -> to` edge and returns its weight.
    pub fn delete_edge(&mut self, from: VertexId, to: VertexId) -> Result<f64, GraphError> {
        self.check(from)?;
        self.check(to)?;
        let missing = GraphError::MissingEdge { from, to };
        let pos = self.out_links[from.index()]
            .iter()
            .position(|l| l.vertex == to)
            .ok_or_else(|| missing.clone())?;
        let weight = self.out_links[from.index()].remove(pos).weight;
        let back = self.in_links[to.index()]
            .iter()
            .position(|l| l.vertex == from && l.weight == weight)
            .ok_or(missing)?;
        self.in_links[to.index()].remove(back);
        self.total_edges -= 1;
        if !self.frozen[to.index()] {
            self.active_edges -= 1;
        }
        Ok(weight)
    }

    /// Marks the distance label of `v` as final. Its in-edges stop counting
    /// as active edges but stay in place.
    pub fn freeze(&mut self, v: VertexId) -> Result<(), GraphError> {
        self.check(v)?;
        if !self.frozen[v.index()] {
            self.frozen[v.index()] = true;
            self.active_edges -= self.in_links[v.index()].len();
        }
        Ok(())
    }

    /// Maps every vertex of a walk to its original vertex.
    pub fn project(&self, path: &[VertexId]) -> Vec<VertexId> {
        path.iter().map(|&v| self.origin(v)).collect()
    }
}

/// A walk in a particular graph. Vertices and edges may repeat.
#[derive(Clone, Debug, PartialEq)]
pub struct PathSeq {
    vertices: Vec<VertexId>,
    length: f64,
}

impl PathSeq {
    /// Checks that consecutive vertices are joined by an edge of `g`.
    pub fn new(g: &Graph, vertices: Vec<VertexId>) -> Result<Self, GraphError> {
        let first = *vertices.first().ok_or(GraphError::EmptyPath)?;
        g.check(first)?;
        let mut length = 0.0;
        for w in vertices.windows(2) {
            g.check(w[1])?;
            length += g.edge_weight(w[0], w[1]).ok_or(GraphError::MissingEdge {
                from: w[0],
                to: w[1],
            })?;
        }
        Ok(PathSeq { vertices, length })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn into_vertices(self) -> Vec<VertexId> {
        self.vertices
    }
}
