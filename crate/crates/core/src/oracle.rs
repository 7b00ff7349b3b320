//! The hidden forbidden set and the oracles that answer path queries.
//!
//! Queries are made on projected paths, i.e. sequences of original vertices.
//! The router never looks inside the store; it only sees [`OracleReply`]s.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::ExceptionError;
use crate::graph::{Graph, VertexId};
use crate::matcher::PatternAutomaton;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExceptionId(u32);

impl ExceptionId {
    pub fn new(index: usize) -> Self {
        ExceptionId(u32::try_from(index).expect("exception index overflows u32"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ExceptionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A forbidden path: a simple path of at least one edge in the input graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exception {
    vertices: Vec<VertexId>,
}

impl Exception {
    pub fn new(g: &Graph, vertices: Vec<VertexId>) -> Result<Self, ExceptionError> {
        if vertices.len() < 2 {
            return Err(ExceptionError::TooShort(vertices.len()));
        }
        for (i, &v) in vertices.iter().enumerate() {
            if !g.is_original(v) {
                return Err(ExceptionError::NotOriginal(v));
            }
            if vertices[..i].contains(&v) {
                return Err(ExceptionError::NotSimple(v));
            }
        }
        for w in vertices.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(ExceptionError::NotAnEdge {
                    from: w[0],
                    to: w[1],
                });
            }
        }
        Ok(Exception { vertices })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Number of vertices strictly between the endpoints.
    pub fn intermediate_count(&self) -> usize {
        self.vertices.len() - 2
    }
}

impl AsRef<[VertexId]> for Exception {
    fn as_ref(&self) -> &[VertexId] {
        &self.vertices
    }
}

/// A located exception in a queried path.
#[derive(Clone, Debug, PartialEq)]
pub struct Hit {
    pub exception: ExceptionId,
    pub vertices: Vec<VertexId>,
    /// Index of the exception's last vertex in the queried path.
    pub end: usize,
}

impl Hit {
    /// Index of the exception's first vertex in the queried path.
    pub fn start(&self) -> usize {
        self.end + 1 - self.vertices.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum OracleReply {
    Clear,
    Found(Hit),
}

impl OracleReply {
    pub fn is_clear(&self) -> bool {
        matches!(self, OracleReply::Clear)
    }
}

/// The forbidden set `X`, immutable after construction apart from a query counter.
#[derive(Debug)]
pub struct ExceptionStore {
    items: Vec<Exception>,
    automaton: PatternAutomaton,
    queries: AtomicU64,
}

impl ExceptionStore {
    pub fn new(items: Vec<Exception>) -> Result<Self, ExceptionError> {
        let mut seen = HashMap::with_capacity(items.len());
        for (i, x) in items.iter().enumerate() {
            if let Some(&first) = seen.get(x.vertices()) {
                return Err(ExceptionError::Duplicate(ExceptionId::new(first)));
            }
            seen.insert(x.vertices(), i);
        }
        let automaton = PatternAutomaton::new(&items);
        Ok(ExceptionStore {
            items,
            automaton,
            queries: AtomicU64::new(0),
        })
    }

    /// Validates raw vertex lists against `g` and builds the store.
    pub fn from_paths<I>(g: &Graph, paths: I) -> Result<Self, ExceptionError>
    where
        I: IntoIterator<Item = Vec<VertexId>>,
    {
        let items = paths
            .into_iter()
            .map(|p| Exception::new(g, p))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(items)
    }

    pub fn empty() -> Self {
        Self::new(Vec::new()).expect("empty store is valid")
    }

    /// `k`
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// `L`: total number of vertices over all exceptions.
    pub fn total_size(&self) -> usize {
        self.items.iter().map(Exception::len).sum()
    }

    pub fn get(&self, id: ExceptionId) -> &Exception {
        &self.items[id.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (ExceptionId, &Exception)> {
        self.items
            .iter()
            .enumerate()
            .map(|(i, x)| (ExceptionId::new(i), x))
    }

    pub fn automaton(&self) -> &PatternAutomaton {
        &self.automaton
    }

    /// Strong oracle: the occurrence whose last vertex is earliest in the
    /// path, ties broken by lowest exception id.
    pub fn query_earliest(&self, path: &[VertexId]) -> OracleReply {
        self.queries.fetch_add(1, Ordering::Relaxed);
        self.reply(self.automaton.find_earliest(path))
    }

    /// Weak oracle: some occurrence in the path.
    pub fn query_any(&self, path: &[VertexId]) -> OracleReply {
        self.queries.fetch_add(1, Ordering::Relaxed);
        self.reply(self.automaton.find_first(path))
    }

    /// Same as [`query_earliest`](Self::query_earliest) without touching the counter.
    pub fn scan(&self, path: &[VertexId]) -> OracleReply {
        self.reply(self.automaton.find_earliest(path))
    }

    fn reply(&self, m: Option<crate::matcher::Match>) -> OracleReply {
        match m {
            None => OracleReply::Clear,
            Some(m) => OracleReply::Found(Hit {
                exception: m.pattern,
                vertices: self.get(m.pattern).vertices().to_vec(),
                end: m.end,
            }),
        }
    }

    pub fn query_count(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    pub fn reset_query_count(&self) {
        self.queries.store(0, Ordering::Relaxed);
    }
}

/// Anything the router can try a projected path against.
pub trait Oracle {
    fn try_path(&self, path: &[VertexId]) -> OracleReply;
}

impl<O: Oracle + ?Sized> Oracle for &O {
    fn try_path(&self, path: &[VertexId]) -> OracleReply {
        (**self).try_path(path)
    }
}

impl<O: Oracle + ?Sized> Oracle for Box<O> {
    fn try_path(&self, path: &[VertexId]) -> OracleReply {
        (**self).try_path(path)
    }
}

/// Strong oracle backed by a store.
#[derive(Copy, Clone, Debug)]
pub struct Earliest<'a>(pub &'a ExceptionStore);

impl Oracle for Earliest<'_> {
    fn try_path(&self, path: &[VertexId]) -> OracleReply {
        self.0.query_earliest(path)
    }
}

/// Weak oracle backed by a store.
#[derive(Copy, Clone, Debug)]
pub struct AnyHit<'a>(pub &'a ExceptionStore);

impl Oracle for AnyHit<'_> {
    fn try_path(&self, path: &[VertexId]) -> OracleReply {
        self.0.query_any(path)
    }
}

/// Turns a weak oracle into a strong one by binary search over prefixes.
///
/// Containing an exception is monotone in the prefix length, so the shortest
/// failing prefix ends exactly at the earliest occurrence end, and any
/// exception reported for that prefix must end there. Costs
/// `O(log |path|)` queries per failing try.
#[derive(Copy, Clone, Debug)]
pub struct PrefixSearch<O>(pub O);

impl<O: Oracle> Oracle for PrefixSearch<O> {
    fn try_path(&self, path: &[VertexId]) -> OracleReply {
        let mut reply = self.0.try_path(path);
        if reply.is_clear() {
            return reply;
        }
        // path[..hi] fails, path[..lo] is clear
        let (mut lo, mut hi) = (1, path.len());
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            match self.0.try_path(&path[..mid]) {
                OracleReply::Clear => lo = mid,
                found => {
                    hi = mid;
                    reply = found;
                }
            }
        }
        reply
    }
}
