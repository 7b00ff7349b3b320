//! Locating a reported exception on a tried path, and the replicate-and-delete
//! surgery that removes that copy of it from the graph.

use crate::error::{GraphError, RouteError};
use crate::graph::{Graph, VertexId};
use crate::oracle::{ExceptionId, Hit};

/// What happens to the incoming edges of the old intermediate vertices once
/// their replicas exist.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum PruneMode {
    /// Freeze the vertices: the edges stay in the graph and are copied into
    /// later replicas, but no longer count as active edges and are never
    /// relaxed.
    #[default]
    Freeze,
    /// Delete the edges outright. This can lose avoiding walks once a pruned
    /// vertex is replicated again; kept for comparison only.
    Delete,
}

/// An exception located on a concrete tree path.
#[derive(Clone, Debug, PartialEq)]
pub struct Occurrence {
    pub exception: ExceptionId,
    /// Concrete vertices `v_{r-l}, ..., v_{r+1}` (replicas possible).
    pub vertices: Vec<VertexId>,
    /// Index of `vertices[0]` in the tried path.
    pub start: usize,
}

impl Occurrence {
    pub fn first(&self) -> VertexId {
        self.vertices[0]
    }

    /// `v_{r+1}`
    pub fn end(&self) -> VertexId {
        *self.vertices.last().unwrap()
    }

    /// `v_{r-l+1}, ..., v_r`
    pub fn intermediates(&self) -> &[VertexId] {
        &self.vertices[1..self.vertices.len() - 1]
    }

    /// Index of the end vertex in the tried path.
    pub fn end_index(&self) -> usize {
        self.start + self.vertices.len() - 1
    }
}

/// Maps an oracle hit on `project(path)` back to the concrete vertices of
/// `path`.
pub fn locate_exception(g: &Graph, path: &[VertexId], hit: &Hit) -> Result<Occurrence, RouteError> {
    if hit.vertices.len() < 2 || hit.end >= path.len() || hit.end + 1 < hit.vertices.len() {
        return Err(RouteError::OracleContract(format!(
            "occurrence of {} ending at {} does not fit a path of {} vertices",
            hit.exception,
            hit.end,
            path.len()
        )));
    }
    let start = hit.start();
    let vertices = path[start..=hit.end].to_vec();
    if g.project(&vertices) != hit.vertices {
        return Err(RouteError::OracleContract(format!(
            "{} does not occur at {}..={}",
            hit.exception, start, hit.end
        )));
    }
    Ok(Occurrence {
        exception: hit.exception,
        vertices,
        start,
    })
}

/// Replicates the intermediate vertices of `occ` and deletes edges so that no
/// copy of this occurrence survives while every walk avoiding it keeps a copy.
///
/// Final shape around the occurrence: each replica `v'_j` has the in-edges of
/// `v_j` except the one from `v_{j-1}`, plus `v'_{j-1} -> v'_j` past the first
/// replica, and exactly one out-edge (`v'_{j+1}`, or `v_{r+1}` for the last).
/// The edge `v_r -> v_{r+1}` is gone and the old intermediates are pruned per
/// `mode`. With no intermediates only `v_r -> v_{r+1}` is deleted.
///
/// Returns the replicas in chain order.
pub fn modify_graph(
    g: &mut Graph,
    occ: &Occurrence,
    mode: PruneMode,
) -> Result<Vec<VertexId>, RouteError> {
    let vs = &occ.vertices;
    let last = vs.len() - 1;
    for &v in vs {
        if !g.contains(v) {
            return Err(GraphError::UnknownVertex(v).into());
        }
    }
    let check_upto = if mode == PruneMode::Freeze {
        0
    } else {
        last - 1
    };
    for i in check_upto..last {
        if !g.has_edge(vs[i], vs[i + 1]) {
            return Err(GraphError::MissingEdge {
                from: vs[i],
                to: vs[i + 1],
            }
            .into());
        }
    }

    let inner = occ.intermediates().to_vec();
    let mut replicas = Vec::with_capacity(inner.len());
    for &v in &inner {
        replicas.push(g.add_replica(v)?);
    }

    for (i, &rep) in replicas.iter().enumerate() {
        // vs[i] is the predecessor of inner[i] on the occurrence
        while g.has_edge(vs[i], rep) {
            g.delete_edge(vs[i], rep)?;
        }
        let keep = replicas.get(i + 1).copied().unwrap_or(vs[last]);
        let mut kept = false;
        let outs: Vec<VertexId> = g.out_links(rep).iter().map(|l| l.vertex).collect();
        for head in outs {
            if head == keep && !kept {
                kept = true;
            } else {
                g.delete_edge(rep, head)?;
            }
        }
        if !kept && mode == PruneMode::Freeze {
            return Err(GraphError::MissingEdge {
                from: rep,
                to: keep,
            }
            .into());
        }
    }

    g.delete_edge(vs[last - 1], vs[last])?;

    for &v in &inner {
        match mode {
            PruneMode::Freeze => g.freeze(v)?,
            PruneMode::Delete => {
                let tails: Vec<VertexId> = g.in_links(v).iter().map(|l| l.vertex).collect();
                for u in tails {
                    g.delete_edge(u, v)?;
                }
            }
        }
    }
    Ok(replicas)
}
