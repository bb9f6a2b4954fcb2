//! Closed walks and their enumeration.

use std::collections::BTreeSet;

use thiserror::Error;

use super::{Edge, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error("a walk needs at least one edge")]
    Empty,
    #[error("edge sequence is not a closed walk")]
    NotClosed,
}

/// A closed walk `(e_1, ..., e_q)` with `e_k = {u_k, v_k}`, `v_k = u_{k+1}`
/// and `v_q = u_1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk {
    edges: Vec<Edge>,
    starts: Vec<Vertex>,
}

impl Walk {
    /// Traces the edge sequence as a closed walk. When both endpoints of the
    /// first edge work as a starting point, the smaller one is used.
    pub fn from_edges(edges: Vec<Edge>) -> Result<Walk, WalkError> {
        let first = *edges.first().ok_or(WalkError::Empty)?;
        let starts = [first.lo(), first.hi()]
            .into_iter()
            .find_map(|s| trace(&edges, s))
            .ok_or(WalkError::NotClosed)?;
        Ok(Walk { edges, starts })
    }

    /// The closed walk visiting `vertices` in order and returning to the
    /// first. A repeated consecutive vertex traverses the loop there.
    pub fn from_vertices(vertices: &[Vertex]) -> Result<Walk, WalkError> {
        if vertices.is_empty() {
            return Err(WalkError::Empty);
        }
        let q = vertices.len();
        let edges = (0..q)
            .map(|k| Edge::new(vertices[k], vertices[(k + 1) % q]))
            .collect();
        Ok(Walk {
            edges,
            starts: vertices.to_vec(),
        })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_even(&self) -> bool {
        self.edges.len() % 2 == 0
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `u_1, ..., u_q`: the vertex each edge is entered from.
    pub fn starts(&self) -> &[Vertex] {
        &self.starts
    }

    /// Whether every edge of the walk belongs to `g`.
    pub fn lies_in(&self, g: &Graph) -> bool {
        self.edges.iter().all(|&e| g.contains(e))
    }

    /// The lexicographically smallest rotation or reflection of the edge
    /// sequence.
    pub fn canonical(&self) -> Walk {
        let edges = canonical_sequence(&self.edges);
        Walk::from_edges(edges).expect("rotations and reflections of a closed walk are closed")
    }
}

fn trace(edges: &[Edge], start: Vertex) -> Option<Vec<Vertex>> {
    let mut cur = start;
    let mut starts = Vec::with_capacity(edges.len());
    for e in edges {
        starts.push(cur);
        cur = e.other(cur)?;
    }
    (cur == start).then_some(starts)
}

fn canonical_sequence(edges: &[Edge]) -> Vec<Edge> {
    let q = edges.len();
    let reversed: Vec<Edge> = edges.iter().rev().copied().collect();
    let mut best: Option<Vec<Edge>> = None;
    for seq in [edges, &reversed[..]] {
        for r in 0..q {
            let cand: Vec<Edge> = seq[r..].iter().chain(&seq[..r]).copied().collect();
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// Whether the sequence is a shorter closed walk traversed several times.
fn is_periodic(edges: &[Edge]) -> bool {
    let q = edges.len();
    (1..q).any(|p| q % p == 0 && edges[p..] == edges[..q - p])
}

/// Bounds for a closed-walk search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkSearch {
    /// Longest walk length considered.
    pub max_len: usize,
    /// How often a vertex may occur among `u_1, ..., u_q`; `None` means no
    /// limit. A traversed loop at `v` uses two visits of `v`.
    pub max_visits: Option<usize>,
}

impl WalkSearch {
    pub fn new(max_len: usize) -> WalkSearch {
        WalkSearch {
            max_len,
            max_visits: None,
        }
    }

    /// The bound used for toric ideal generators: walks up to length
    /// `2|E(G)|` in which no vertex occurs more than twice. Every even cycle,
    /// pair of odd cycles sharing a vertex, and pair of odd cycles joined by
    /// a path is such a walk.
    pub fn generator_default(g: &Graph) -> WalkSearch {
        WalkSearch {
            max_len: 2 * g.num_edges(),
            max_visits: Some(2),
        }
    }

    /// All even closed walks within the bounds, one per rotation/reflection
    /// class, sorted by length then edge sequence. A walk that merely
    /// repeats a shorter closed walk is left out.
    pub fn even_closed_walks(&self, g: &Graph) -> Vec<Walk> {
        let mut found = BTreeSet::new();
        let mut visits = vec![0usize; g.d() + 1];
        let mut seq = Vec::new();
        for &first in g.edges() {
            let mut starts = vec![first.lo()];
            if !first.is_loop() {
                starts.push(first.hi());
            }
            for start in starts {
                let mut dfs = Dfs {
                    g,
                    bounds: self,
                    first,
                    start,
                    visits: &mut visits,
                    seq: &mut seq,
                    found: &mut found,
                };
                dfs.step(start);
            }
        }
        let mut walks: Vec<Walk> = found
            .into_iter()
            .map(|edges| Walk::from_edges(edges).expect("search yields closed walks"))
            .collect();
        walks.sort_by(|a, b| (a.len(), &a.edges).cmp(&(b.len(), &b.edges)));
        walks
    }
}

/// Depth-first extension of a walk whose first edge is its smallest.
struct Dfs<'a> {
    g: &'a Graph,
    bounds: &'a WalkSearch,
    first: Edge,
    start: Vertex,
    visits: &'a mut Vec<usize>,
    seq: &'a mut Vec<Edge>,
    found: &'a mut BTreeSet<Vec<Edge>>,
}

impl Dfs<'_> {
    fn step(&mut self, cur: Vertex) {
        if !self.seq.is_empty()
            && cur == self.start
            && self.seq.len() % 2 == 0
            && !is_periodic(self.seq)
        {
            self.found.insert(canonical_sequence(self.seq));
        }
        if self.seq.len() >= self.bounds.max_len {
            return;
        }
        if self
            .bounds
            .max_visits
            .is_some_and(|cap| self.visits[cur] >= cap)
        {
            return;
        }
        let candidates: Vec<Edge> = if self.seq.is_empty() {
            vec![self.first]
        } else {
            self.g.incident(cur).filter(|&e| e >= self.first).collect()
        };
        for e in candidates {
            let next = e.other(cur).expect("incident edge");
            self.visits[cur] += 1;
            self.seq.push(e);
            self.step(next);
            self.seq.pop();
            self.visits[cur] -= 1;
        }
    }
}

/// All even closed walks of length at most `max_len`, deduplicated up to
/// rotation and reflection. Walks may traverse loops and repeat edges.
pub fn enumerate_even_closed_walks(g: &Graph, max_len: usize) -> Vec<Walk> {
    WalkSearch::new(max_len).even_closed_walks(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(d: usize, pairs: &[(usize, usize)]) -> Graph {
        Graph::new(d, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn tracing() {
        let w = Walk::from_edges(vec![
            Edge::new(1, 3),
            Edge::new(2, 3),
            Edge::new(2, 4),
            Edge::new(1, 4),
        ])
        .unwrap();
        assert_eq!(w.starts(), &[1, 3, 2, 4]);
        assert!(w.is_even());
        assert_eq!(
            Walk::from_edges(vec![Edge::new(1, 2), Edge::new(3, 4)]),
            Err(WalkError::NotClosed)
        );
        assert_eq!(Walk::from_edges(vec![]), Err(WalkError::Empty));
        let looped = Walk::from_vertices(&[1, 1, 2, 2]).unwrap();
        assert_eq!(
            looped.edges(),
            &[
                Edge::loop_at(1),
                Edge::new(1, 2),
                Edge::loop_at(2),
                Edge::new(1, 2)
            ]
        );
    }

    #[test]
    fn canonical_form_is_rotation_and_reflection_invariant() {
        let w = Walk::from_vertices(&[3, 2, 4, 1]).unwrap();
        let c = w.canonical();
        assert_eq!(c.edges()[0], Edge::new(1, 3));
        for k in 0..4 {
            let mut vs = vec![3, 2, 4, 1];
            vs.rotate_left(k);
            assert_eq!(Walk::from_vertices(&vs).unwrap().canonical(), c);
            vs.reverse();
            assert_eq!(Walk::from_vertices(&vs).unwrap().canonical(), c);
        }
    }

    #[test]
    fn path_has_only_back_and_forth_walks() {
        let path = graph(3, &[(1, 2), (2, 3)]);
        for w in enumerate_even_closed_walks(&path, 6) {
            // Every edge appears equally often at odd and even positions.
            for &e in w.edges() {
                let odd = w.edges().iter().step_by(2).filter(|&&f| f == e).count();
                let even = w
                    .edges()
                    .iter()
                    .skip(1)
                    .step_by(2)
                    .filter(|&&f| f == e)
                    .count();
                assert_eq!(odd, even, "{:?}", w.edges());
            }
        }
    }

    #[test]
    fn k22_contains_its_four_cycle() {
        let k22 = graph(4, &[(1, 3), (1, 4), (2, 3), (2, 4)]);
        let walks = enumerate_even_closed_walks(&k22, 4);
        let cycle = Walk::from_vertices(&[1, 3, 2, 4]).unwrap().canonical();
        assert!(walks.contains(&cycle));
        let distinct: BTreeSet<_> = walks.iter().map(|w| w.canonical()).collect();
        assert_eq!(distinct.len(), walks.len());
    }

    #[test]
    fn bowtie_has_a_six_walk_through_both_triangles() {
        let bowtie = graph(5, &[(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5)]);
        let walks = enumerate_even_closed_walks(&bowtie, 6);
        let through = Walk::from_vertices(&[3, 1, 2, 3, 4, 5])
            .unwrap()
            .canonical();
        assert!(walks.contains(&through));
    }

    #[test]
    fn visit_cap_limits_walks() {
        let bowtie = graph(5, &[(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5)]);
        let capped = WalkSearch {
            max_len: 12,
            max_visits: Some(2),
        }
        .even_closed_walks(&bowtie);
        for w in &capped {
            for v in 1..=5 {
                assert!(w.starts().iter().filter(|&&u| u == v).count() <= 2);
            }
        }
        let through = Walk::from_vertices(&[3, 1, 2, 3, 4, 5])
            .unwrap()
            .canonical();
        assert!(capped.contains(&through));
    }
}
