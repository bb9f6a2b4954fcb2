//! Finite graphs allowing loops but no multiple edges.
//!
//! Vertices carry 1-based labels `1..=d`. An [`Edge`] is an unordered pair
//! `{i, j}` with `i <= j`; `i == j` is a loop. A [`Graph`] built through
//! [`Graph::new`] (or the parsers) satisfies every input invariant: no
//! duplicate edge, no isolated vertex, and the loop condition: whenever there are
//! loops at two distinct vertices `i` and `j`, the edge `{i, j}` is present.
//!
//! Graphs derived from a valid graph (the reduced graph, induced subgraphs)
//! may have isolated vertices and are built with [`Graph::relaxed`].

mod parse;
mod walk;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use parse::{parse_graph, parse_graph_json, parse_graph_text, GraphFormat};
pub use walk::{enumerate_even_closed_walks, Walk, WalkError, WalkSearch};

use crate::error::GraphError;

/// A 1-based vertex label.
pub type Vertex = usize;

/// An unordered pair `{lo, hi}` with `lo <= hi`.
///
/// The derived ordering (by `lo`, then `hi`) is the order in which a
/// [`Graph`] stores its edges, so edge indices and edge order agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    lo: Vertex,
    hi: Vertex,
}

impl Edge {
    pub fn new(i: Vertex, j: Vertex) -> Edge {
        Edge {
            lo: i.min(j),
            hi: i.max(j),
        }
    }

    pub fn loop_at(v: Vertex) -> Edge {
        Edge { lo: v, hi: v }
    }

    pub fn lo(self) -> Vertex {
        self.lo
    }

    pub fn hi(self) -> Vertex {
        self.hi
    }

    pub fn endpoints(self) -> (Vertex, Vertex) {
        (self.lo, self.hi)
    }

    pub fn is_loop(self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.lo == v || self.hi == v
    }

    /// The endpoint opposite to `v`, or `None` if `v` is not an endpoint.
    /// For a loop at `v` this is `v` itself.
    pub fn other(self, v: Vertex) -> Option<Vertex> {
        if v == self.lo {
            Some(self.hi)
        } else if v == self.hi {
            Some(self.lo)
        } else {
            None
        }
    }

    /// Variable-style label `"i,j"` used in JSON output.
    pub fn label(self) -> String {
        format!("{},{}", self.lo, self.hi)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.lo, self.hi)
    }
}

impl Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.lo, self.hi].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Edge, D::Error> {
        let [i, j] = <[Vertex; 2]>::deserialize(d)?;
        Ok(Edge::new(i, j))
    }
}

/// A finite graph on the vertex set `1..=d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Graph {
    d: usize,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a graph and checks every input invariant.
    ///
    /// Pairs may be given in either order. Errors name the offending
    /// vertices, checked in this order: vertex range, duplicates, isolated
    /// vertices, the loop condition.
    pub fn new<I>(d: usize, pairs: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if d == 0 {
            return Err(GraphError::NoVertices);
        }
        let g = Graph::relaxed(d, pairs)?;
        if let Some(v) = g.vertices().find(|&v| g.degree(v) == 0) {
            return Err(GraphError::IsolatedVertex { vertex: v });
        }
        let loops = g.loop_vertices();
        for (a, &i) in loops.iter().enumerate() {
            for &j in &loops[a + 1..] {
                if !g.has_edge(i, j) {
                    return Err(GraphError::MissingLoopEdge { i, j });
                }
            }
        }
        Ok(g)
    }

    /// Builds a graph checking only vertex range and duplicates. Isolated
    /// vertices and violations of the loop condition are allowed, and `d` may be
    /// zero.
    pub fn relaxed<I>(d: usize, pairs: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut edges = Vec::new();
        for (i, j) in pairs {
            if i == 0 || j == 0 || i > d || j > d {
                return Err(GraphError::VertexOutOfRange { i, j, d });
            }
            edges.push(Edge::new(i, j));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge {
                i: w[0].lo,
                j: w[0].hi,
            });
        }
        Ok(Graph { d, edges })
    }

    /// Assumes `edges` is already sorted, deduplicated and in range.
    pub(crate) fn from_sorted(d: usize, edges: Vec<Edge>) -> Graph {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|e| e.lo >= 1 && e.hi <= d));
        Graph { d, edges }
    }

    /// Number of vertices.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<Vertex> {
        1..=self.d
    }

    /// Edges in ascending order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edge_index(e).is_some()
    }

    pub fn has_edge(&self, i: Vertex, j: Vertex) -> bool {
        self.contains(Edge::new(i, j))
    }

    pub fn has_loop(&self, v: Vertex) -> bool {
        self.contains(Edge::loop_at(v))
    }

    /// Vertices carrying a loop, ascending.
    pub fn loop_vertices(&self) -> Vec<Vertex> {
        self.edges
            .iter()
            .filter(|e| e.is_loop())
            .map(|e| e.lo)
            .collect()
    }

    pub fn num_loops(&self) -> usize {
        self.edges.iter().filter(|e| e.is_loop()).count()
    }

    /// Edges (and the loop) incident to `v`.
    pub fn incident(&self, v: Vertex) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied().filter(move |e| e.contains(v))
    }

    /// Neighbours of `v` through non-loop edges, ascending.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.incident(v)
            .filter(|e| !e.is_loop())
            .filter_map(move |e| e.other(v))
    }

    /// Degree of `v`; a loop contributes 2.
    pub fn degree(&self, v: Vertex) -> usize {
        self.incident(v)
            .map(|e| if e.is_loop() { 2 } else { 1 })
            .sum()
    }

    /// Edges with both endpoints in `vertices`.
    pub fn edges_within<'a>(&'a self, vertices: &'a [Vertex]) -> impl Iterator<Item = Edge> + 'a {
        self.edges
            .iter()
            .copied()
            .filter(move |e| vertices.contains(&e.lo) && vertices.contains(&e.hi))
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={} E={{", self.d)?;
        for (k, e) in self.edges.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// The graph G̃: drops every non-loop edge `{i, j}` with loops at both `i`
/// and `j`. The vertex count is unchanged, so vertices may become isolated.
/// Both graphs have the same edge polytope.
pub fn reduced_graph(g: &Graph) -> Graph {
    let edges = g
        .edges()
        .iter()
        .copied()
        .filter(|e| e.is_loop() || !(g.has_loop(e.lo) && g.has_loop(e.hi)))
        .collect();
    Graph::from_sorted(g.d(), edges)
}

/// Vertex sets of the connected components, each ascending, ordered by
/// smallest vertex. Isolated vertices form singleton components.
pub fn connected_components(g: &Graph) -> Vec<Vec<Vertex>> {
    let mut seen = vec![false; g.d() + 1];
    let mut components = Vec::new();
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    components
}

/// Proper 2-colouring of the loop-free part of `component`, or `None` when
/// the component has an odd cycle of length at least 3. Colour `false` is
/// given to the smallest vertex.
fn two_coloring(g: &Graph, component: &[Vertex]) -> Option<Vec<(Vertex, bool)>> {
    let mut color: Vec<Option<bool>> = vec![None; g.d() + 1];
    let mut out = Vec::with_capacity(component.len());
    for &s in component {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let cv = color[v].unwrap();
            out.push((v, cv));
            for w in g.neighbors(v) {
                match color[w] {
                    None => {
                        color[w] = Some(!cv);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cv => return None,
                    Some(_) => {}
                }
            }
        }
    }
    out.sort_unstable();
    Some(out)
}

/// Whether `component` contains an odd cycle. A loop is a cycle of length 1.
pub fn has_odd_cycle(g: &Graph, component: &[Vertex]) -> bool {
    component.iter().any(|&v| g.has_loop(v)) || two_coloring(g, component).is_none()
}

/// Both clauses of the simplex criterion for one connected component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CycleCensus {
    pub at_most_one_cycle: bool,
    pub all_cycles_odd: bool,
}

/// Decides whether a connected component has at most one cycle, and whether
/// all its cycles are odd (vacuously true for a tree). Loops count as edges
/// and as cycles of length 1.
pub fn cycle_census(g: &Graph, component: &[Vertex]) -> CycleCensus {
    let edges: Vec<Edge> = g.edges_within(component).collect();
    let at_most_one_cycle = edges.len() <= component.len();
    let all_cycles_odd = if edges.len() < component.len() {
        true
    } else if at_most_one_cycle {
        // Unicyclic: a loop is the cycle; otherwise its parity is decided by
        // bipartiteness.
        edges.iter().any(|e| e.is_loop()) || two_coloring(g, component).is_none()
    } else {
        !has_even_cycle(g, component)
    };
    CycleCensus {
        at_most_one_cycle,
        all_cycles_odd,
    }
}

/// Depth-first search for a simple cycle of even length through vertices of
/// `component`. Each cycle is rooted at its smallest vertex.
fn has_even_cycle(g: &Graph, component: &[Vertex]) -> bool {
    fn extend(g: &Graph, root: Vertex, path: &mut Vec<Vertex>, on_path: &mut [bool]) -> bool {
        let v = *path.last().unwrap();
        for w in g.neighbors(v) {
            if w == root && path.len() >= 3 && path.len() % 2 == 0 {
                return true;
            }
            if w > root && !on_path[w] {
                on_path[w] = true;
                path.push(w);
                if extend(g, root, path, on_path) {
                    return true;
                }
                path.pop();
                on_path[w] = false;
            }
        }
        false
    }
    let mut on_path = vec![false; g.d() + 1];
    component.iter().any(|&root| {
        on_path[root] = true;
        let found = extend(g, root, &mut vec![root], &mut on_path);
        on_path[root] = false;
        found
    })
}

/// An induced subgraph relabelled onto `1..=|W|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `labels[k - 1]` is the original label of vertex `k` of `graph`.
    pub labels: Vec<Vertex>,
}

impl InducedSubgraph {
    pub fn original(&self, v: Vertex) -> Vertex {
        self.labels[v - 1]
    }

    /// Edges of the subgraph expressed in the original labels.
    pub fn original_edges(&self) -> Vec<Edge> {
        self.graph
            .edges()
            .iter()
            .map(|e| Edge::new(self.original(e.lo), self.original(e.hi)))
            .collect()
    }
}

/// The induced subgraph on `w`: exactly the edges with both endpoints in `w`.
pub fn induced_subgraph(g: &Graph, w: &[Vertex]) -> InducedSubgraph {
    let mut labels: Vec<Vertex> = w.to_vec();
    labels.sort_unstable();
    labels.dedup();
    let mut position = vec![0; g.d() + 1];
    for (k, &v) in labels.iter().enumerate() {
        position[v] = k + 1;
    }
    let mut edges: Vec<Edge> = g
        .edges()
        .iter()
        .filter(|e| position[e.lo] > 0 && position[e.hi] > 0)
        .map(|e| Edge::new(position[e.lo], position[e.hi]))
        .collect();
    edges.sort_unstable();
    InducedSubgraph {
        graph: Graph::from_sorted(labels.len(), edges),
        labels,
    }
}

/// The loop-free vertices `W` and the induced subgraph `G'` on them.
pub fn loopless_part(g: &Graph) -> (Vec<Vertex>, InducedSubgraph) {
    let w: Vec<Vertex> = g.vertices().filter(|&v| !g.has_loop(v)).collect();
    let sub = induced_subgraph(g, &w);
    (w, sub)
}

/// The bipartition `(V1, V2)` if `g` is a connected complete bipartite graph
/// on all of its vertices, with `V1` holding vertex 1. `K_{1,1}` qualifies;
/// graphs with loops never do.
pub fn is_complete_bipartite(g: &Graph) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
    if g.d() < 2 || g.num_loops() > 0 {
        return None;
    }
    let all: Vec<Vertex> = g.vertices().collect();
    let coloring = two_coloring(g, &all)?;
    let (v1, v2): (Vec<_>, Vec<_>) = coloring.iter().partition(|(_, c)| !c);
    let v1: Vec<Vertex> = v1.into_iter().map(|(v, _)| v).collect();
    let v2: Vec<Vertex> = v2.into_iter().map(|(v, _)| v).collect();
    // A proper 2-colouring with every cross pair present is connected as soon
    // as both sides are nonempty.
    if v2.is_empty() || g.num_edges() != v1.len() * v2.len() {
        return None;
    }
    Some((v1, v2))
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

    fn triangle() -> Graph {
        graph(3, &[(1, 2), (2, 3), (1, 3)])
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Graph::new(3, [(1, 1), (2, 2), (1, 3)]),
            Err(GraphError::MissingLoopEdge { i: 1, j: 2 })
        );
        assert_eq!(
            Graph::new(3, [(1, 2)]),
            Err(GraphError::IsolatedVertex { vertex: 3 })
        );
        assert_eq!(
            Graph::new(2, [(1, 2), (2, 1)]),
            Err(GraphError::DuplicateEdge { i: 1, j: 2 })
        );
        assert_eq!(
            Graph::new(2, [(1, 3)]),
            Err(GraphError::VertexOutOfRange { i: 1, j: 3, d: 2 })
        );
        assert_eq!(Graph::new(0, []), Err(GraphError::NoVertices));
        assert_eq!(graph(2, &[(1, 1), (2, 2), (2, 1)]).num_edges(), 3);
    }

    #[test]
    fn degree_counts_loops_twice() {
        let g = graph(2, &[(1, 1), (1, 2)]);
        assert_eq!(g.degree(1), 3);
        assert_eq!(g.degree(2), 1);
    }

    #[test]
    fn reduced_graph_examples() {
        let g = graph(2, &[(1, 1), (2, 2), (1, 2)]);
        assert_eq!(
            reduced_graph(&g).edges(),
            &[Edge::loop_at(1), Edge::loop_at(2)]
        );

        let path = graph(3, &[(1, 2), (2, 3)]);
        assert_eq!(reduced_graph(&path), path);

        let g1 = graph(3, &[(1, 1), (1, 2), (2, 2), (1, 3)]);
        assert_eq!(
            reduced_graph(&g1).edges(),
            &[Edge::loop_at(1), Edge::new(1, 3), Edge::loop_at(2)]
        );
    }

    #[test]
    fn components() {
        assert_eq!(
            connected_components(&graph(4, &[(1, 2), (3, 4)])),
            vec![vec![1, 2], vec![3, 4]]
        );
        assert_eq!(connected_components(&k22()), vec![vec![1, 2, 3, 4]]);
        let g2 = graph(4, &[(1, 1), (1, 2), (2, 2), (3, 4)]);
        assert_eq!(connected_components(&g2), vec![vec![1, 2], vec![3, 4]]);
    }

    #[test]
    fn odd_cycles() {
        assert!(has_odd_cycle(&triangle(), &[1, 2, 3]));
        assert!(!has_odd_cycle(&k22(), &[1, 2, 3, 4]));
        assert!(has_odd_cycle(&graph(1, &[(1, 1)]), &[1]));
    }

    #[test]
    fn census() {
        let tree = graph(3, &[(1, 2), (2, 3)]);
        let yes = CycleCensus {
            at_most_one_cycle: true,
            all_cycles_odd: true,
        };
        assert_eq!(cycle_census(&tree, &[1, 2, 3]), yes);
        assert_eq!(cycle_census(&triangle(), &[1, 2, 3]), yes);
        // K_{2,2} is a single 4-cycle.
        assert_eq!(
            cycle_census(&k22(), &[1, 2, 3, 4]),
            CycleCensus {
                at_most_one_cycle: true,
                all_cycles_odd: false
            }
        );
        // Two triangles sharing vertex 3: two cycles, both odd.
        let bowtie = graph(5, &[(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5)]);
        assert_eq!(
            cycle_census(&bowtie, &[1, 2, 3, 4, 5]),
            CycleCensus {
                at_most_one_cycle: false,
                all_cycles_odd: true
            }
        );
        // Loop plus an even 4-cycle.
        let g = graph(4, &[(1, 1), (1, 2), (2, 3), (3, 4), (1, 4)]);
        assert!(!cycle_census(&g, &[1, 2, 3, 4]).all_cycles_odd);
    }

    #[test]
    fn induced() {
        let sub = induced_subgraph(&k22(), &[1, 3]);
        assert_eq!(sub.graph.edges(), &[Edge::new(1, 2)]);
        assert_eq!(sub.original_edges(), vec![Edge::new(1, 3)]);

        let g1 = graph(3, &[(1, 1), (1, 2), (2, 2), (1, 3)]);
        assert_eq!(
            induced_subgraph(&g1, &[1, 2]).original_edges(),
            vec![Edge::loop_at(1), Edge::new(1, 2), Edge::loop_at(2)]
        );
        let empty = induced_subgraph(&g1, &[]);
        assert_eq!(empty.graph.d(), 0);
        assert_eq!(empty.graph.num_edges(), 0);
    }

    #[test]
    fn loopless_parts() {
        let (w, sub) = loopless_part(&k22());
        assert_eq!(w, vec![1, 2, 3, 4]);
        assert_eq!(sub.graph, k22());

        let gamma = graph(3, &[(1, 1), (2, 2), (1, 2), (1, 3), (2, 3)]);
        let (w, sub) = loopless_part(&gamma);
        assert_eq!(w, vec![3]);
        assert_eq!(sub.graph.num_edges(), 0);

        let beta = graph(3, &[(1, 1), (1, 2), (1, 3), (2, 3)]);
        let (w, sub) = loopless_part(&beta);
        assert_eq!(w, vec![2, 3]);
        assert_eq!(sub.original_edges(), vec![Edge::new(2, 3)]);
    }

    #[test]
    fn complete_bipartite() {
        let k23 = graph(5, &[(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]);
        assert_eq!(
            is_complete_bipartite(&k23),
            Some((vec![1, 2], vec![3, 4, 5]))
        );
        assert_eq!(
            is_complete_bipartite(&graph(4, &[(1, 2), (2, 3), (3, 4)])),
            None
        );
        assert_eq!(
            is_complete_bipartite(&graph(4, &[(1, 3), (1, 4), (2, 3)])),
            None
        );
        assert_eq!(
            is_complete_bipartite(&graph(2, &[(1, 2)])),
            Some((vec![1], vec![2]))
        );
        // Disconnected: two disjoint edges.
        assert_eq!(is_complete_bipartite(&graph(4, &[(1, 2), (3, 4)])), None);
        assert_eq!(
            is_complete_bipartite(&graph(2, &[(1, 1), (1, 2), (2, 2)])),
            None
        );
    }
}
