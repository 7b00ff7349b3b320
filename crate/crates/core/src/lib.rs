//! Shortest walks in a weighted directed graph that avoid a set of forbidden
//! subpaths ("exceptions"), when the exceptions are only revealed by an
//! oracle that checks a proposed path.
//!
//! The router keeps a shortest-path tree over a working copy of the graph.
//! Each time the oracle rejects a tree path, the reported exception is cut out
//! of the working graph by replicating its inner vertices, and the affected
//! part of the tree is rebuilt. [`reference`] solves the same problem with the
//! whole exception set known up front and serves as ground truth.

pub mod cli;
pub mod error;
pub mod format;
pub mod graph;
pub mod matcher;
pub mod oracle;
pub mod random;
pub mod reference;
pub mod router;
pub mod surgery;
pub mod tree;
pub mod weak;

pub use error::{ExceptionError, GraphError, ParseError, RouteError};
pub use graph::{Graph, Link, PathSeq, VertexId};
pub use oracle::{
    AnyHit, Earliest, Exception, ExceptionId, ExceptionStore, Hit, Oracle, OracleReply,
    PrefixSearch,
};
pub use reference::{avoiding_distances, shortest_avoiding};
pub use router::{
    route_all, route_single, AllRoutes, RouteOutcome, RouterConfig, RunStats, Session,
};
pub use surgery::PruneMode;
pub use tree::SptState;
pub use weak::route_weak;
