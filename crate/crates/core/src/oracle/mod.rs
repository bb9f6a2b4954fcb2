//! Geometric ground truth for finite lattice point sets.
//!
//! Everything reduces to exact rational linear feasibility ([`RationalLp`])
//! and integer lattice normal forms. Nothing here looks at a graph, so it can
//! check the combinatorial predicates independently. Inputs are capped at
//! ambient dimension [`MAX_DIM`] and dilation [`MAX_DILATION`].

pub mod lattice;
pub mod lp;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

pub use lp::{Rational, RationalLp};

use crate::error::OracleError;
use crate::polytope::LatticePoint;
use lattice::IntMatrix;

pub const MAX_DIM: usize = 12;
pub const MAX_DILATION: u64 = 8;

fn q(v: i64) -> Rational {
    BigRational::from_integer(BigInt::from(v))
}

fn check_points(points: &[LatticePoint]) -> Result<usize, OracleError> {
    let d = points.first().ok_or(OracleError::NoPoints)?.dim();
    if points.iter().any(|p| p.dim() != d) {
        return Err(OracleError::RaggedPoints);
    }
    if d > MAX_DIM {
        return Err(OracleError::TooLarge {
            what: "ambient dimension",
            value: d,
            limit: MAX_DIM,
        });
    }
    Ok(d)
}

fn check_index(points: &[LatticePoint], idx: usize) -> Result<(), OracleError> {
    if idx < points.len() {
        Ok(())
    } else {
        Err(OracleError::IndexOutOfRange(idx))
    }
}

/// Whether `target` is a convex combination of `others`.
fn in_convex_hull(target: &LatticePoint, others: &[&LatticePoint]) -> bool {
    let d = target.dim();
    // Rows: one per coordinate, then sum of weights = 1.
    let mut rows: Vec<Vec<Rational>> = (0..d)
        .map(|k| others.iter().map(|p| q(p.0[k])).collect())
        .collect();
    rows.push(vec![Rational::one(); others.len()]);
    let mut rhs: Vec<Rational> = target.0.iter().map(|&c| q(c)).collect();
    rhs.push(Rational::one());
    RationalLp::new(rows, rhs, others.len()).is_feasible()
}

/// Whether `points[idx]` is a vertex of `conv(points)`.
pub fn oracle_is_vertex(points: &[LatticePoint], idx: usize) -> Result<bool, OracleError> {
    check_points(points)?;
    check_index(points, idx)?;
    let others: Vec<&LatticePoint> = points
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != idx)
        .map(|(_, p)| p)
        .collect();
    Ok(others.is_empty() || !in_convex_hull(&points[idx], &others))
}

/// Whether `w` lies on the closed segment `[u, v]`.
fn on_segment(w: &LatticePoint, u: &LatticePoint, v: &LatticePoint) -> bool {
    let dir: Vec<i64> = v.0.iter().zip(&u.0).map(|(a, b)| a - b).collect();
    let off: Vec<i64> = w.0.iter().zip(&u.0).map(|(a, b)| a - b).collect();
    let Some(k) = dir.iter().position(|&x| x != 0) else {
        return off.iter().all(|&x| x == 0);
    };
    let parallel = (0..dir.len()).all(|l| off[l] * dir[k] == off[k] * dir[l]);
    // t = off[k] / dir[k] must lie in [0, 1].
    let (num, den) = if dir[k] < 0 {
        (-off[k], -dir[k])
    } else {
        (off[k], dir[k])
    };
    parallel && num >= 0 && num <= den
}

/// Whether some linear functional attains its maximum over `points` exactly on
/// the segment `[u, v]`: `c.u = c.v` and `c.u >= c.w + 1` for every point `w`
/// off the segment. Scaling `c` makes the unit gap equivalent to a strict one.
fn supports_segment(points: &[LatticePoint], i: usize, j: usize) -> bool {
    let (u, v) = (&points[i], &points[j]);
    let d = u.dim();
    let others: Vec<&LatticePoint> = points
        .iter()
        .enumerate()
        .filter(|&(k, w)| k != i && k != j && !on_segment(w, u, v))
        .map(|(_, w)| w)
        .collect();
    // Variables: c+ (d), c- (d), one surplus per other point.
    let n = 2 * d + others.len();
    let functional = |a: &LatticePoint, b: &LatticePoint, row: &mut Vec<Rational>| {
        for k in 0..d {
            let diff = a.0[k] - b.0[k];
            row[k] = q(diff);
            row[d + k] = q(-diff);
        }
    };
    let mut rows = Vec::with_capacity(others.len() + 1);
    let mut rhs = Vec::with_capacity(others.len() + 1);
    let mut row = vec![Rational::zero(); n];
    functional(u, v, &mut row);
    rows.push(row);
    rhs.push(Rational::zero());
    for (s, w) in others.iter().enumerate() {
        let mut row = vec![Rational::zero(); n];
        functional(u, w, &mut row);
        row[2 * d + s] = q(-1);
        rows.push(row);
        rhs.push(Rational::one());
    }
    RationalLp::new(rows, rhs, n).is_feasible()
}

/// Whether `conv{points[i], points[j]}` is an edge of `conv(points)`. Both
/// points must be vertices.
pub fn oracle_is_edge(points: &[LatticePoint], i: usize, j: usize) -> Result<bool, OracleError> {
    check_points(points)?;
    check_index(points, i)?;
    check_index(points, j)?;
    if i == j {
        return Err(OracleError::SameIndex(i));
    }
    for k in [i, j] {
        if !oracle_is_vertex(points, k)? {
            return Err(OracleError::NotAVertex(k));
        }
    }
    Ok(supports_segment(points, i, j))
}

fn differences(points: &[LatticePoint], base: &LatticePoint) -> Vec<Vec<i64>> {
    points
        .iter()
        .map(|p| p.0.iter().zip(&base.0).map(|(a, b)| a - b).collect())
        .collect()
}

/// Affine dimension of `conv(points)`.
pub fn oracle_dim(points: &[LatticePoint]) -> Result<usize, OracleError> {
    check_points(points)?;
    Ok(lattice::rank(&lattice::to_big(&differences(
        points, &points[0],
    ))))
}

/// Vertices, edge graph and dimension of `conv(points)`, computed once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleAnalysis {
    pub dim: usize,
    /// `vertex[k]` tells whether `points[k]` is a vertex.
    pub vertex: Vec<bool>,
    /// Point indices adjacent to each vertex along polytope edges; empty for
    /// non-vertices.
    pub neighbors: Vec<Vec<usize>>,
    points: Vec<LatticePoint>,
}

impl OracleAnalysis {
    pub fn new(points: &[LatticePoint]) -> Result<OracleAnalysis, OracleError> {
        check_points(points)?;
        let n = points.len();
        let vertex = (0..n)
            .map(|k| oracle_is_vertex(points, k))
            .collect::<Result<Vec<_>, _>>()?;
        let mut neighbors = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                if vertex[i] && vertex[j] && supports_segment(points, i, j) {
                    neighbors[i].push(j);
                    neighbors[j].push(i);
                }
            }
        }
        Ok(OracleAnalysis {
            dim: oracle_dim(points)?,
            vertex,
            neighbors,
            points: points.to_vec(),
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex.iter().filter(|&&v| v).count()
    }

    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        self.neighbors[i].contains(&j)
    }

    pub fn is_simplex(&self) -> bool {
        self.num_vertices() == self.dim + 1
    }

    pub fn is_simple(&self) -> bool {
        (0..self.points.len())
            .filter(|&k| self.vertex[k])
            .all(|k| self.neighbors[k].len() == self.dim)
    }

    /// First vertex at which the primitive edge directions fail to generate
    /// `Z^d ∩ span(P - v)`, or `None` when the polytope is smooth.
    pub fn non_smooth_vertex(&self) -> Result<Option<usize>, OracleError> {
        if !self.is_simple() {
            return Err(OracleError::NotSimple);
        }
        let d = self.points[0].dim();
        for v in (0..self.points.len()).filter(|&k| self.vertex[k]) {
            let base = &self.points[v];
            let directions: IntMatrix = self.neighbors[v]
                .iter()
                .map(|&w| {
                    let diff = lattice::to_big(&differences(&self.points[w..=w], base));
                    lattice::primitive(&diff[0])
                })
                .collect();
            let span = lattice::saturation(&lattice::to_big(&differences(&self.points, base)), d);
            if !lattice::same_lattice(&directions, &span) {
                return Ok(Some(v));
            }
        }
        Ok(None)
    }

    pub fn is_smooth(&self) -> Result<bool, OracleError> {
        Ok(self.non_smooth_vertex()?.is_none())
    }
}

/// Whether every vertex of `conv(points)` lies on exactly `dim` edges.
pub fn oracle_is_simple(points: &[LatticePoint]) -> Result<bool, OracleError> {
    Ok(OracleAnalysis::new(points)?.is_simple())
}

/// Whether `conv(points)` is smooth: simple, and at every vertex the
/// primitive edge directions form a basis of `Z^d ∩ span(P - v)`.
pub fn oracle_is_smooth(points: &[LatticePoint]) -> Result<bool, OracleError> {
    OracleAnalysis::new(points)?.is_smooth()
}

/// All `x` in `Z^d_{>=0}` with coordinate sum `total`, coordinates restricted
/// to `allowed`, in lexicographic order.
fn compositions(d: usize, total: i64, allowed: &[bool]) -> Vec<Vec<i64>> {
    fn go(k: usize, left: i64, allowed: &[bool], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k + 1 == cur.len() {
            if left == 0 || allowed[k] {
                cur[k] = left;
                out.push(cur.clone());
            }
            return;
        }
        let top = if allowed[k] { left } else { 0 };
        for c in 0..=top {
            cur[k] = c;
            go(k + 1, left - c, allowed, cur, out);
        }
        cur[k] = 0;
    }
    let mut out = Vec::new();
    if d > 0 {
        go(0, total, allowed, &mut vec![0; d], &mut out);
    }
    out
}

/// `|m P ∩ Z^d|` for a polytope whose generators all have coordinate sum 2,
/// such as an edge polytope. Each candidate with coordinate sum `2m` is
/// tested for membership in `m P` by an exact feasibility problem.
pub fn count_lattice_points(points: &[LatticePoint], m: u64) -> Result<u64, OracleError> {
    let d = check_points(points)?;
    if m > MAX_DILATION {
        return Err(OracleError::TooLarge {
            what: "dilation m",
            value: m as usize,
            limit: MAX_DILATION as usize,
        });
    }
    let allowed: Vec<bool> = (0..d).map(|k| points.iter().any(|p| p.0[k] > 0)).collect();
    let n = points.len();
    let mut rows: Vec<Vec<Rational>> = (0..d)
        .map(|k| points.iter().map(|p| q(p.0[k])).collect())
        .collect();
    rows.push(vec![Rational::one(); n]);
    let count = compositions(d, 2 * m as i64, &allowed)
        .par_iter()
        .filter(|x| {
            let mut rhs: Vec<Rational> = x.iter().map(|&c| q(c)).collect();
            rhs.push(q(m as i64));
            RationalLp::new(rows.clone(), rhs, n).is_feasible()
        })
        .count();
    Ok(count as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::polytope::rho;

    fn pts(rows: &[&[i64]]) -> Vec<LatticePoint> {
        rows.iter().map(|r| LatticePoint(r.to_vec())).collect()
    }

    fn edge_points(d: usize, pairs: &[(usize, usize)]) -> Vec<LatticePoint> {
        let g = Graph::new(d, pairs.iter().copied()).unwrap();
        g.edges().iter().map(|&e| rho(e, d)).collect()
    }

    fn k22() -> Vec<LatticePoint> {
        edge_points(4, &[(1, 3), (1, 4), (2, 3), (2, 4)])
    }

    #[test]
    fn vertices() {
        let p = pts(&[&[2, 0], &[0, 2], &[1, 1]]);
        assert_eq!(oracle_is_vertex(&p, 2), Ok(false));
        assert_eq!(oracle_is_vertex(&p, 0), Ok(true));
        for k in 0..4 {
            assert_eq!(oracle_is_vertex(&k22(), k), Ok(true));
        }
        assert_eq!(oracle_is_vertex(&pts(&[&[1, 1]]), 0), Ok(true));
    }

    #[test]
    fn edges_of_a_square() {
        // K_{2,2} edges in order {1,3},{1,4},{2,3},{2,4}: a square whose
        // diagonals pair {1,3} with {2,4} and {1,4} with {2,3}.
        let p = k22();
        assert_eq!(oracle_is_edge(&p, 0, 1), Ok(true));
        assert_eq!(oracle_is_edge(&p, 0, 3), Ok(false));
        assert_eq!(oracle_is_edge(&p, 1, 2), Ok(false));
        // Rectangle {1,2},{3,3},{1,3},{2,3}: the pair {1,2},{3,3} is a diagonal.
        let rect = edge_points(3, &[(1, 2), (3, 3), (1, 3), (2, 3)]);
        // Edge order: {1,2},{1,3},{2,3},{3,3}.
        assert_eq!(oracle_is_edge(&rect, 0, 3), Ok(false));
        assert_eq!(oracle_is_edge(&rect, 0, 1), Ok(true));
    }

    #[test]
    fn edge_through_a_non_vertex_point() {
        // Loops at 1 and 2 with {1,2}: the midpoint lies on the only edge.
        let p = pts(&[&[2, 0], &[1, 1], &[0, 2]]);
        assert_eq!(oracle_is_edge(&p, 0, 2), Ok(true));
        assert_eq!(oracle_is_edge(&p, 0, 1), Err(OracleError::NotAVertex(1)));
        assert_eq!(oracle_is_edge(&p, 0, 0), Err(OracleError::SameIndex(0)));
    }

    #[test]
    fn dimensions() {
        assert_eq!(oracle_dim(&k22()), Ok(2));
        assert_eq!(oracle_dim(&pts(&[&[1, 1, 0]])), Ok(0));
        assert_eq!(
            oracle_dim(&edge_points(3, &[(1, 2), (2, 3), (1, 3)])),
            Ok(2)
        );
        assert_eq!(oracle_dim(&[]), Err(OracleError::NoPoints));
    }

    #[test]
    fn simplicity() {
        let square = pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(oracle_is_simple(&square), Ok(true));
        let gamma = edge_points(3, &[(1, 1), (2, 2), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(oracle_is_simple(&gamma), Ok(true));
        let pyramid = pts(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[2, 2, 0], &[1, 1, 1]]);
        assert_eq!(oracle_is_simple(&pyramid), Ok(false));
    }

    #[test]
    fn smoothness() {
        let g1 = pts(&[&[2, 0, 0], &[0, 2, 0], &[1, 0, 1]]);
        assert_eq!(oracle_is_smooth(&g1), Ok(false));
        assert_eq!(oracle_is_smooth(&k22()), Ok(true));
        assert_eq!(oracle_is_smooth(&pts(&[&[0], &[1]])), Ok(true));
        let pyramid = pts(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[2, 2, 0], &[1, 1, 1]]);
        assert_eq!(oracle_is_smooth(&pyramid), Err(OracleError::NotSimple));
    }

    #[test]
    fn lattice_counts() {
        assert_eq!(count_lattice_points(&k22(), 0), Ok(1));
        assert_eq!(count_lattice_points(&k22(), 1), Ok(4));
        let gamma = edge_points(3, &[(1, 1), (2, 2), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(count_lattice_points(&gamma, 1), Ok(5));
        assert!(matches!(
            count_lattice_points(&k22(), 9),
            Err(OracleError::TooLarge { .. })
        ));
        let big = pts(&[&[0; 13]]);
        assert!(matches!(
            oracle_dim(&big),
            Err(OracleError::TooLarge { .. })
        ));
    }

    #[test]
    fn composition_enumeration() {
        let all = compositions(3, 2, &[true; 3]);
        assert_eq!(all.len(), 6);
        let some = compositions(3, 2, &[true, false, true]);
        assert_eq!(some, vec![vec![0, 0, 2], vec![1, 0, 1], vec![2, 0, 0]]);
    }
}
