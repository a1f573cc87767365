use crate::graph::{EdgeId, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),
    #[error("graph is not connected")]
    Disconnected,
    #[error("bad rotation system: {0}")]
    Rotation(String),
    #[error("not a sphere embedding: V - E + F = {0}")]
    NotSphere(i64),
    #[error("minor pattern must be K4 or the doubled triangle")]
    UnsupportedPattern,
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("edge {0} has positive twist")]
    PositiveTwist(EdgeId),
    #[error("invalid dividing configuration: {0}")]
    InvalidConfig(String),
    #[error("no dividing configuration found within {0} search steps")]
    NoConfiguration(usize),
    #[error("bypass would disconnect the dividing set")]
    IllegalBypass,
    #[error("malformed bypass arc: {0}")]
    MalformedArc(String),
    #[error("edge {0} carries no trivial bigon of the requested sign")]
    NoBigon(EdgeId),
    #[error("destabilizing edge {0} would isolate part of the graph")]
    Isolating(EdgeId),
    #[error("cycle not in the enumeration")]
    UnknownCycle,
    #[error("no pair of equal-sign vertices joined by three independent paths")]
    NotApplicable,
    #[error("size {n} exceeds the bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("graph is not 3-connected")]
    NotThreeConnected,
    #[error("tb vector is inconsistent at edge {0}")]
    InconsistentTb(EdgeId),
    #[error("framing is not realizable: {0}")]
    Unrealizable(String),
    #[error("ledger does not match the cycle enumeration")]
    LedgerMismatch,
    #[error("gadget winding must be at least 1")]
    InvalidWinding,
    #[error("presentations live on different labeled graphs")]
    GraphMismatch,
    #[error("matching failed: {0}")]
    NoMatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
