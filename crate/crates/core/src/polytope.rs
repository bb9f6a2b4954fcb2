//! Combinatorial description of the edge polytope `P_G`, the convex hull of
//! `rho(e) = e_i + e_j` over the edges `e = {i, j}` of `G` (a loop `{i, i}`
//! maps to `2 e_i`).
//!
//! Every predicate here reads the answer off the graph; the
//! [`oracle`](crate::oracle) module decides the same questions geometrically.

use std::fmt;

use serde::Serialize;
use serde_json::json;

use crate::error::PolytopeError;
use crate::graph::{
    connected_components, cycle_census, has_odd_cycle, is_complete_bipartite, loopless_part,
    reduced_graph, Edge, Graph, Vertex,
};

/// An integer point of `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// `rho(e)` in `Z^d`.
pub fn rho(e: Edge, d: usize) -> LatticePoint {
    let mut coords = vec![0; d];
    coords[e.lo() - 1] += 1;
    coords[e.hi() - 1] += 1;
    LatticePoint(coords)
}

/// The edge polytope as data: one generator point per edge, flagged by
/// whether it is a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePolytope {
    pub source: Graph,
    pub points: Vec<LatticePoint>,
    pub vertex_flags: Vec<bool>,
    pub dim: usize,
}

impl EdgePolytope {
    pub fn new(g: &Graph) -> EdgePolytope {
        EdgePolytope {
            source: g.clone(),
            points: g.edges().iter().map(|&e| rho(e, g.d())).collect(),
            vertex_flags: g.edges().iter().map(|&e| is_vertex(g, e)).collect(),
            dim: polytope_dim(g),
        }
    }

    /// Edges whose image is a vertex of the polytope.
    pub fn vertex_edges(&self) -> Vec<Edge> {
        self.source
            .edges()
            .iter()
            .zip(&self.vertex_flags)
            .filter(|(_, &v)| v)
            .map(|(&e, _)| e)
            .collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_flags.iter().filter(|&&v| v).count()
    }
}

/// Whether `rho(e)` is a vertex of `P_G`: it fails to be one exactly when `e`
/// joins two distinct looped vertices.
pub fn is_vertex(g: &Graph, e: Edge) -> bool {
    debug_assert!(g.contains(e));
    e.is_loop() || !(g.has_loop(e.lo()) && g.has_loop(e.hi()))
}

fn check_vertex(g: &Graph, e: Edge) -> Result<(), PolytopeError> {
    if !g.contains(e) {
        Err(PolytopeError::NotAnEdge(e))
    } else if !is_vertex(g, e) {
        Err(PolytopeError::NotAVertex(e))
    } else {
        Ok(())
    }
}

/// Whether the segment between the vertices `rho(e)` and `rho(f)` is an edge
/// of `P_G`.
///
/// Asking about a generator that is not a vertex is a contract error, not
/// `false`.
pub fn is_polytope_edge(g: &Graph, e: Edge, f: Edge) -> Result<bool, PolytopeError> {
    check_vertex(g, e)?;
    check_vertex(g, f)?;
    if e == f {
        return Err(PolytopeError::SameEdge(e));
    }
    Ok(match (e.is_loop(), f.is_loop()) {
        (true, true) => true,
        (false, true) => edge_and_loop(g, e, f.lo()),
        (true, false) => edge_and_loop(g, f, e.lo()),
        (false, false) => two_edges(g, e, f),
    })
}

fn edge_and_loop(g: &Graph, e: Edge, k: Vertex) -> bool {
    // Loop at an endpoint, or the rectangle {i,j},{k,k},{i,k},{j,k} is absent.
    e.contains(k) || !g.has_edge(e.lo(), k) || !g.has_edge(e.hi(), k)
}

fn two_edges(g: &Graph, e: Edge, f: Edge) -> bool {
    let shared = [e.lo(), e.hi()].into_iter().find(|&v| f.contains(v));
    match shared {
        Some(j) => {
            let i = e.other(j).unwrap();
            let k = f.other(j).unwrap();
            // rho(e) + rho(f) = rho({i,k}) + rho({j,j}) unless one is missing.
            !g.has_edge(i, k) || !g.has_loop(j)
        }
        None => {
            let w = [e.lo(), e.hi(), f.lo(), f.hi()];
            let within: Vec<Edge> = g.edges_within(&w).collect();
            w.iter().any(|&v| {
                within
                    .iter()
                    .filter(|x| x.contains(v))
                    .map(|x| if x.is_loop() { 2 } else { 1 })
                    .sum::<usize>()
                    == 1
            })
        }
    }
}

/// Number of polytope edges at the vertex `rho(e)`.
pub fn vertex_polytope_degree(g: &Graph, e: Edge) -> Result<usize, PolytopeError> {
    check_vertex(g, e)?;
    let mut count = 0;
    for &f in g.edges() {
        if f != e && is_vertex(g, f) && is_polytope_edge(g, e, f)? {
            count += 1;
        }
    }
    Ok(count)
}

/// Dimension contribution of one connected component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentDim {
    pub vertices: Vec<Vertex>,
    pub has_odd_cycle: bool,
    /// `|V| - 1` with an odd cycle, `|V| - 2` without.
    pub dim: usize,
}

/// Per-component dimensions of the components that carry an edge.
pub fn component_dims(g: &Graph) -> Vec<ComponentDim> {
    connected_components(g)
        .into_iter()
        .filter(|c| g.edges_within(c).next().is_some())
        .map(|vertices| {
            let odd = has_odd_cycle(g, &vertices);
            let dim = vertices.len() + usize::from(odd) - 2;
            ComponentDim {
                vertices,
                has_odd_cycle: odd,
                dim,
            }
        })
        .collect()
}

/// `dim P_G = |V| - r' - 1` with `r'` the number of components without an
/// odd cycle.
pub fn polytope_dim(g: &Graph) -> usize {
    let comps = component_dims(g);
    let vertices: usize = comps.iter().map(|c| c.vertices.len()).sum();
    let bipartite = comps.iter().filter(|c| !c.has_odd_cycle).count();
    (vertices + 1).saturating_sub(bipartite + 2)
}

/// `P_G` is a simplex iff every component of G̃ has at most one cycle and
/// every cycle of G̃ is odd.
pub fn is_simplex(g: &Graph) -> bool {
    let reduced = reduced_graph(g);
    connected_components(&reduced).iter().all(|c| {
        let census = cycle_census(&reduced, c);
        census.at_most_one_cycle && census.all_cycles_odd
    })
}

/// Smoothness of a simplex `P_G`: smooth iff `G` is the complete graph with
/// a loop at every vertex, or `G` has at most one loop and at most one
/// connected component containing an odd cycle.
///
/// The second clause is stricter than "at most one loop" alone. Two
/// components with odd cycles, such as a triangle next to a loop, give an
/// empty simplex that is not unimodular: `(1,1,1,1)` lies in twice the
/// simplex of `{1,2},{1,4},{2,4},{3,3}` without being a sum of two vertices.
/// [`smooth_simplex_as_stated`] keeps the weaker clause for comparison.
pub fn is_smooth_simplex(g: &Graph) -> bool {
    debug_assert!(is_simplex(g));
    let odd_components = connected_components(g)
        .iter()
        .filter(|c| has_odd_cycle(g, c))
        .count();
    is_complete_with_loops(g) || (g.num_loops() <= 1 && odd_components <= 1)
}

/// The smoothness test for simplices in its published form: complete with
/// all loops, or at most one loop. It wrongly accepts simplices whose graph
/// has two components with odd cycles; see [`is_smooth_simplex`].
pub fn smooth_simplex_as_stated(g: &Graph) -> bool {
    is_complete_with_loops(g) || g.num_loops() <= 1
}

fn is_complete_with_loops(g: &Graph) -> bool {
    let d = g.d();
    g.num_edges() == d * (d + 1) / 2
}

/// Where `P_G` sits among simplices and simple polytopes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    NotSimple,
    Simplex {
        smooth: bool,
    },
    /// Complete bipartite on `V1 ∪ V2`, both sides of size at least 2.
    SimpleAlpha {
        v1: Vec<Vertex>,
        v2: Vec<Vertex>,
    },
    /// One loop, adjacent to every loop-free vertex; the loop-free part is
    /// complete bipartite on `V1 ∪ V2`.
    SimpleBeta {
        loop_vertex: Vertex,
        v1: Vec<Vertex>,
        v2: Vec<Vertex>,
    },
    /// At least two loops, each adjacent to every vertex of `W`; `W` spans no
    /// edge.
    SimpleGamma {
        loop_set: Vec<Vertex>,
        w: Vec<Vertex>,
    },
}

impl Classification {
    pub fn tag(&self) -> &'static str {
        match self {
            Classification::NotSimple => "NotSimple",
            Classification::Simplex { .. } => "Simplex",
            Classification::SimpleAlpha { .. } => "SimpleAlpha",
            Classification::SimpleBeta { .. } => "SimpleBeta",
            Classification::SimpleGamma { .. } => "SimpleGamma",
        }
    }

    pub fn is_simplex(&self) -> bool {
        matches!(self, Classification::Simplex { .. })
    }

    /// Simple but not a simplex (equivalently, smooth but not a simplex).
    pub fn is_simple_non_simplex(&self) -> bool {
        matches!(
            self,
            Classification::SimpleAlpha { .. }
                | Classification::SimpleBeta { .. }
                | Classification::SimpleGamma { .. }
        )
    }

    pub fn is_simple(&self) -> bool {
        !matches!(self, Classification::NotSimple)
    }

    pub fn is_smooth(&self) -> bool {
        match self {
            Classification::NotSimple => false,
            Classification::Simplex { smooth } => *smooth,
            _ => true,
        }
    }

    pub fn witness(&self) -> serde_json::Value {
        match self {
            Classification::NotSimple => json!({}),
            Classification::Simplex { smooth } => json!({ "smooth": smooth }),
            Classification::SimpleAlpha { v1, v2 } => json!({ "V1": v1, "V2": v2 }),
            Classification::SimpleBeta {
                loop_vertex,
                v1,
                v2,
            } => json!({ "loop_vertex": loop_vertex, "V1": v1, "V2": v2 }),
            Classification::SimpleGamma { loop_set, w } => json!({ "loop_set": loop_set, "W": w }),
        }
    }

    /// The vertex arrangement under which the quadratic Gröbner basis and the
    /// sorted-monomial count are stated: looped vertices first, then `V1`,
    /// then `V2` (or `W`). Returned as the list of user labels in their new
    /// order; unclassified graphs keep the identity.
    pub fn labeling(&self, g: &Graph) -> Vec<Vertex> {
        let ordered: Vec<Vertex> = match self {
            Classification::SimpleAlpha { v1, v2 } => v1.iter().chain(v2).copied().collect(),
            Classification::SimpleBeta {
                loop_vertex,
                v1,
                v2,
            } => std::iter::once(*loop_vertex)
                .chain(v1.iter().copied())
                .chain(v2.iter().copied())
                .collect(),
            Classification::SimpleGamma { loop_set, w } => {
                loop_set.iter().chain(w).copied().collect()
            }
            Classification::Simplex { .. } => {
                let loops = g.loop_vertices();
                let rest = g.vertices().filter(|v| !loops.contains(v));
                loops.iter().copied().chain(rest).collect()
            }
            Classification::NotSimple => g.vertices().collect(),
        };
        debug_assert_eq!(ordered.len(), g.d());
        ordered
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Simplex { smooth } => write!(f, "Simplex(smooth={smooth})"),
            other => f.write_str(other.tag()),
        }
    }
}

/// Classifies `P_G`: simplex (with smoothness), one of the three families of
/// simple non-simplex edge polytopes, or not simple.
pub fn classify(g: &Graph) -> Classification {
    if is_simplex(g) {
        return Classification::Simplex {
            smooth: is_smooth_simplex(g),
        };
    }
    let (w, sub) = loopless_part(g);
    if w.is_empty() {
        return Classification::NotSimple;
    }
    let loops = g.loop_vertices();
    let dominating = |l: Vertex| w.iter().all(|&j| g.has_edge(l, j));
    match loops.len() {
        0 => match is_complete_bipartite(g) {
            Some((v1, v2)) if v1.len() >= 2 && v2.len() >= 2 => {
                Classification::SimpleAlpha { v1, v2 }
            }
            _ => Classification::NotSimple,
        },
        1 => {
            let loop_vertex = loops[0];
            match is_complete_bipartite(&sub.graph) {
                Some((v1, v2)) if dominating(loop_vertex) => Classification::SimpleBeta {
                    loop_vertex,
                    v1: v1.iter().map(|&v| sub.original(v)).collect(),
                    v2: v2.iter().map(|&v| sub.original(v)).collect(),
                },
                _ => Classification::NotSimple,
            }
        }
        _ => {
            if sub.graph.num_edges() == 0 && loops.iter().all(|&l| dominating(l)) {
                Classification::SimpleGamma { loop_set: loops, w }
            } else {
                Classification::NotSimple
            }
        }
    }
}

/// Machine-readable classification summary.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub tag: &'static str,
    pub witness: serde_json::Value,
    pub dim: usize,
    pub num_vertices: usize,
    /// Edges whose images are the polytope vertices.
    pub vertices: Vec<Edge>,
    pub component_dims: Vec<ComponentDim>,
}

impl ClassificationReport {
    pub fn new(g: &Graph) -> ClassificationReport {
        let c = classify(g);
        let poly = EdgePolytope::new(g);
        ClassificationReport {
            tag: c.tag(),
            witness: c.witness(),
            dim: poly.dim,
            num_vertices: poly.num_vertices(),
            vertices: poly.vertex_edges(),
            component_dims: component_dims(g),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(d: usize, pairs: &[(usize, usize)]) -> Graph {
        Graph::new(d, pairs.iter().copied()).unwrap()
    }

    fn k22() -> Graph {
        graph(4, &[(1, 3), (1, 4), (2, 3), (2, 4)])
    }

    fn k23() -> Graph {
        graph(5, &[(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)])
    }

    fn g1() -> Graph {
        graph(3, &[(1, 1), (1, 2), (2, 2), (1, 3)])
    }

    fn g2() -> Graph {
        graph(4, &[(1, 1), (1, 2), (2, 2), (3, 4)])
    }

    fn gamma() -> Graph {
        graph(3, &[(1, 1), (2, 2), (1, 2), (1, 3), (2, 3)])
    }

    fn triangle() -> Graph {
        graph(3, &[(1, 2), (2, 3), (1, 3)])
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(Edge::new(1, 2), 3), LatticePoint(vec![1, 1, 0]));
        assert_eq!(rho(Edge::loop_at(2), 3), LatticePoint(vec![0, 2, 0]));
        assert_eq!(rho(Edge::new(3, 1), 3), LatticePoint(vec![1, 0, 1]));
    }

    #[test]
    fn vertexhood() {
        let g = graph(2, &[(1, 1), (2, 2), (1, 2)]);
        assert!(!is_vertex(&g, Edge::new(1, 2)));
        assert!(is_vertex(&g, Edge::loop_at(1)));
        assert!(k22().edges().iter().all(|&e| is_vertex(&k22(), e)));
    }

    #[test]
    fn polytope_edges() {
        let g = graph(2, &[(1, 1), (2, 2), (1, 2)]);
        assert_eq!(
            is_polytope_edge(&g, Edge::loop_at(1), Edge::loop_at(2)),
            Ok(true)
        );

        let rect = graph(3, &[(1, 2), (3, 3), (1, 3), (2, 3)]);
        assert_eq!(
            is_polytope_edge(&rect, Edge::new(1, 2), Edge::loop_at(3)),
            Ok(false)
        );

        let k = k22();
        assert_eq!(
            is_polytope_edge(&k, Edge::new(1, 3), Edge::new(2, 4)),
            Ok(false)
        );
        assert_eq!(
            is_polytope_edge(&k, Edge::new(1, 3), Edge::new(2, 3)),
            Ok(true)
        );
    }

    #[test]
    fn polytope_edge_contract_errors() {
        let g = graph(2, &[(1, 1), (2, 2), (1, 2)]);
        assert_eq!(
            is_polytope_edge(&g, Edge::new(1, 2), Edge::loop_at(1)),
            Err(PolytopeError::NotAVertex(Edge::new(1, 2)))
        );
        assert_eq!(
            is_polytope_edge(&g, Edge::loop_at(1), Edge::loop_at(1)),
            Err(PolytopeError::SameEdge(Edge::loop_at(1)))
        );
        assert_eq!(
            is_polytope_edge(&k22(), Edge::new(1, 2), Edge::new(1, 3)),
            Err(PolytopeError::NotAnEdge(Edge::new(1, 2)))
        );
        assert_eq!(
            vertex_polytope_degree(&g, Edge::new(1, 2)),
            Err(PolytopeError::NotAVertex(Edge::new(1, 2)))
        );
    }

    #[test]
    fn dimensions() {
        assert_eq!(polytope_dim(&k22()), 2);
        assert_eq!(polytope_dim(&triangle()), 2);
        assert_eq!(polytope_dim(&graph(4, &[(1, 2), (3, 4)])), 1);
        assert_eq!(polytope_dim(&graph(2, &[(1, 2)])), 0);
        assert_eq!(polytope_dim(&graph(1, &[(1, 1)])), 0);
        let dims = component_dims(&g2());
        assert_eq!(dims.iter().map(|c| c.dim).collect::<Vec<_>>(), vec![1, 0]);
        assert_eq!(polytope_dim(&g2()), 2);
    }

    #[test]
    fn simplices() {
        assert!(is_simplex(&triangle()));
        assert!(!is_simplex(&k22()));
        assert!(is_simplex(&g1()));
        assert!(is_simplex(&g2()));
        assert!(!is_simplex(&gamma()));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify(&k22()),
            Classification::SimpleAlpha {
                v1: vec![1, 2],
                v2: vec![3, 4]
            }
        );
        assert_eq!(
            classify(&gamma()),
            Classification::SimpleGamma {
                loop_set: vec![1, 2],
                w: vec![3]
            }
        );
        assert_eq!(classify(&g1()), Classification::Simplex { smooth: false });
        assert_eq!(classify(&g2()), Classification::Simplex { smooth: false });
        assert_eq!(
            classify(&graph(3, &[(1, 1), (1, 2), (1, 3), (2, 3)])),
            Classification::SimpleBeta {
                loop_vertex: 1,
                v1: vec![2],
                v2: vec![3]
            }
        );
        assert_eq!(
            classify(&graph(2, &[(1, 2)])),
            Classification::Simplex { smooth: true }
        );
        assert_eq!(
            classify(&graph(1, &[(1, 1)])),
            Classification::Simplex { smooth: true }
        );
        // Triangle beside a loop: an empty simplex that is not unimodular.
        let split = graph(4, &[(1, 2), (1, 4), (2, 4), (3, 3)]);
        assert_eq!(classify(&split), Classification::Simplex { smooth: false });
        assert!(smooth_simplex_as_stated(&split));
        // Complete graph with all loops: a smooth simplex.
        assert_eq!(
            classify(&graph(3, &[(1, 1), (2, 2), (3, 3), (1, 2), (1, 3), (2, 3)])),
            Classification::Simplex { smooth: true }
        );
        // Stars are simplices even though they are complete bipartite.
        assert_eq!(
            classify(&graph(4, &[(1, 2), (1, 3), (1, 4)])),
            Classification::Simplex { smooth: true }
        );
        // Square pyramid style: K_{2,2} plus a pendant edge.
        assert_eq!(
            classify(&graph(5, &[(1, 3), (1, 4), (2, 3), (2, 4), (4, 5)])),
            Classification::NotSimple
        );
    }

    #[test]
    fn vertex_degrees() {
        assert_eq!(vertex_polytope_degree(&k22(), Edge::new(1, 3)), Ok(2));
        for &e in triangle().edges() {
            assert_eq!(vertex_polytope_degree(&triangle(), e), Ok(2));
        }
        assert_eq!(vertex_polytope_degree(&k23(), Edge::new(1, 3)), Ok(3));
    }

    #[test]
    fn labelings() {
        let beta = graph(4, &[(2, 2), (1, 2), (2, 3), (2, 4), (1, 3), (1, 4)]);
        let c = classify(&beta);
        assert_eq!(
            c,
            Classification::SimpleBeta {
                loop_vertex: 2,
                v1: vec![1],
                v2: vec![3, 4]
            }
        );
        assert_eq!(c.labeling(&beta), vec![2, 1, 3, 4]);
        assert_eq!(classify(&g1()).labeling(&g1()), vec![1, 2, 3]);
    }

    #[test]
    fn report_shape() {
        let r = ClassificationReport::new(&g1());
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["tag"], "Simplex");
        assert_eq!(v["witness"]["smooth"], false);
        assert_eq!(v["dim"], 2);
        assert_eq!(v["num_vertices"], 3);
    }
}
