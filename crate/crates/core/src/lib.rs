//! Edge polytopes of finite graphs with loops.
//!
//! A graph `G` on `1..=d` gives the lattice polytope `P_G`, the convex hull of
//! `e_i + e_j` over its edges `{i, j}`. This crate decides when `P_G` is a
//! simplex, simple or smooth by looking at `G` alone, writes down a quadratic
//! Gröbner basis of the toric ideal of `G` for the simple cases, and gives
//! their Ehrhart polynomials in closed form. Each of these answers can be
//! checked against an exact geometric or algebraic oracle.
//!
//! ```
//! use edge_polytope::{classify, Graph};
//!
//! let k22 = Graph::new(4, [(1, 3), (1, 4), (2, 3), (2, 4)]).unwrap();
//! assert_eq!(classify(&k22).tag(), "SimpleAlpha");
//! ```

pub mod ehrhart;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod polytope;
pub mod toric;
pub mod verify;

pub use ehrhart::{
    count_sorted_monomials, ehrhart_closed_form, ehrhart_interpolate, normalized_volume,
    FamilyParams, UniPoly,
};
pub use error::{EhrhartError, Error, GraphError, OracleError, PolytopeError, ToricError};
pub use graph::{parse_graph, Edge, Graph, GraphFormat, Vertex, Walk};
pub use oracle::{
    count_lattice_points, oracle_dim, oracle_is_edge, oracle_is_simple, oracle_is_smooth,
    oracle_is_vertex,
};
pub use polytope::{
    classify, is_polytope_edge, is_simplex, is_vertex, polytope_dim, rho, Classification,
    ClassificationReport, EdgePolytope, LatticePoint,
};
pub use toric::{
    generators, groebner_basis, kernel_check, Binomial, GroebnerBasis, Monomial, MonomialOrder,
};
pub use verify::{
    fuzz, verify_graph, FuzzConfig, FuzzMode, FuzzSummary, VerifyOptions, VerifyReport,
};
