use thiserror::Error;

use crate::graph::{Edge, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("edge {{{i},{j}}} has a vertex outside 1..={d}")]
    VertexOutOfRange { i: Vertex, j: Vertex, d: usize },
    #[error("duplicate edge {{{i},{j}}}")]
    DuplicateEdge { i: Vertex, j: Vertex },
    #[error("isolated vertex {vertex}")]
    IsolatedVertex { vertex: Vertex },
    #[error("loop condition violated: loops at {i} and {j} but edge {{{i},{j}}} missing")]
    MissingLoopEdge { i: Vertex, j: Vertex },
    #[error("malformed graph document: {0}")]
    Syntax(String),
}

/// Contract violations of the combinatorial predicates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("{0} is not an edge of the graph")]
    NotAnEdge(Edge),
    #[error("rho({0}) is not a vertex of the edge polytope")]
    NotAVertex(Edge),
    #[error("an edge of the polytope needs two distinct vertices, got {0} twice")]
    SameEdge(Edge),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("input too large for the oracle: {what} = {value} exceeds {limit}")]
    TooLarge {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("point list is empty")]
    NoPoints,
    #[error("points have inconsistent dimensions")]
    RaggedPoints,
    #[error("point index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("point {0} is not a vertex of the polytope")]
    NotAVertex(usize),
    #[error("an edge needs two distinct point indices, got {0} twice")]
    SameIndex(usize),
    #[error("smoothness is only defined for simple polytopes")]
    NotSimple,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("walk has odd length {0}")]
    OddWalk(usize),
    #[error("the toric ideal is (0); there is no Gröbner basis to emit")]
    ZeroIdeal,
    #[error("edge polytope is not simple; no quadratic Gröbner basis is known for it")]
    NotSimple,
    #[error("basis element {index} is not oriented initial-first under the monomial order")]
    Misoriented { index: usize },
    #[error("variable {0} does not belong to the graph")]
    UnknownVariable(Edge),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EhrhartError {
    #[error("no closed form: the edge polytope is not simple-but-not-a-simplex")]
    NoClosedForm,
    #[error("need {needed} samples to interpolate a degree-{degree} polynomial, got {got}")]
    InsufficientSamples {
        needed: usize,
        got: usize,
        degree: usize,
    },
    #[error("sample at m = {m} was given twice")]
    RepeatedSample { m: u64 },
    #[error("sample at m = {m} disagrees with the interpolant")]
    InconsistentSample { m: u64 },
}

/// Umbrella error for callers that drive several modules at once.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error(transparent)]
    Ehrhart(#[from] EhrhartError),
}
