//! Toric ideals of graphs: walk binomials, the lexicographic order, the
//! explicit quadratic Gröbner basis and the reduction machinery that checks it.
//!
//! Coefficients are always `+1` and `-1`, so a polynomial is stored as the
//! pair of its monomials and no coefficient field appears anywhere.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::ToricError;
use crate::graph::{Edge, Graph, Vertex, Walk, WalkSearch};
use crate::polytope::{classify, Classification};

/// A monomial in the edge variables `x_{ij}`, keyed by user-labelled edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(BTreeMap<Edge, u32>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(e: Edge) -> Monomial {
        Monomial::from_edges([e])
    }

    /// The product of the given variables, with repetition.
    pub fn from_edges<I: IntoIterator<Item = Edge>>(edges: I) -> Monomial {
        let mut m = BTreeMap::new();
        for e in edges {
            *m.entry(e).or_insert(0) += 1;
        }
        Monomial(m)
    }

    pub fn from_powers<I: IntoIterator<Item = (Edge, u32)>>(powers: I) -> Monomial {
        let mut m = BTreeMap::new();
        for (e, k) in powers {
            if k > 0 {
                *m.entry(e).or_insert(0) += k;
            }
        }
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn exponent(&self, e: Edge) -> u32 {
        self.0.get(&e).copied().unwrap_or(0)
    }

    pub fn powers(&self) -> impl Iterator<Item = (Edge, u32)> + '_ {
        self.0.iter().map(|(&e, &k)| (e, k))
    }

    pub fn variables(&self) -> impl Iterator<Item = Edge> + '_ {
        self.0.keys().copied()
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.values().all(|&k| k <= 1)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|(&e, &k)| other.exponent(e) >= k)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_powers(self.powers().chain(other.powers()))
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial::from_powers(
            self.powers().map(|(e, k)| (e, k - other.exponent(e))),
        ))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::from_powers(self.powers().map(|(e, k)| (e, k.min(other.exponent(e)))))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (e, k) in other.powers() {
            let slot = m.entry(e).or_insert(0);
            *slot = (*slot).max(k);
        }
        Monomial(m)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.variables().all(|e| other.exponent(e) == 0)
    }

    /// The image under `x_{ij} -> t_i t_j` as a vertex-exponent map; a loop
    /// contributes `t_i^2`.
    pub fn incidence(&self) -> BTreeMap<Vertex, u32> {
        let mut t = BTreeMap::new();
        for (e, k) in self.powers() {
            *t.entry(e.lo()).or_insert(0) += k;
            *t.entry(e.hi()).or_insert(0) += k;
        }
        t
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (n, (e, k)) in self.powers().enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            write!(f, "x[{}]", e.label())?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (e, k) in self.powers() {
            seq.serialize_element(&(e.label(), k))?;
        }
        seq.end()
    }
}

/// `plus - minus`. Bases and generators keep the larger monomial in `plus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Binomial {
    pub plus: Monomial,
    pub minus: Monomial,
}

impl Binomial {
    pub fn new(plus: Monomial, minus: Monomial) -> Binomial {
        Binomial { plus, minus }
    }

    pub fn negated(&self) -> Binomial {
        Binomial::new(self.minus.clone(), self.plus.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.plus == self.minus
    }

    /// Removes the common factor of the two monomials.
    pub fn cancelled(&self) -> Binomial {
        let g = self.plus.gcd(&self.minus);
        Binomial::new(
            self.plus.div(&g).expect("gcd divides"),
            self.minus.div(&g).expect("gcd divides"),
        )
    }

    /// Up to sign, with the larger monomial first.
    pub fn oriented(&self, order: &MonomialOrder) -> Binomial {
        if order.lex_cmp(&self.plus, &self.minus) == Ordering::Less {
            self.negated()
        } else {
            self.clone()
        }
    }

    pub fn is_oriented(&self, order: &MonomialOrder) -> bool {
        order.lex_cmp(&self.plus, &self.minus) == Ordering::Greater
    }

    pub fn is_homogeneous(&self) -> bool {
        self.plus.degree() == self.minus.degree()
    }

    pub fn is_quadratic(&self) -> bool {
        self.plus.degree() == 2 && self.minus.degree() == 2
    }

    pub fn variables(&self) -> impl Iterator<Item = Edge> + '_ {
        self.plus.variables().chain(self.minus.variables())
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.plus, self.minus)
    }
}

/// Whether `b` lies in the toric ideal of `g`: all its variables are edges of
/// `g` and both sides have the same image under `x_{ij} -> t_i t_j`.
pub fn kernel_check(b: &Binomial, g: &Graph) -> bool {
    b.variables().all(|e| g.contains(e)) && b.plus.incidence() == b.minus.incidence()
}

/// The lexicographic order on edge variables. Vertices are first relabelled
/// by their position in `vertex_order`; after that every loop variable is
/// larger than every non-loop variable, non-loops satisfy `x_{ij} < x_{kl}`
/// iff `i < k`, or `i = k` and `j > l`, and loops satisfy `x_{ii} < x_{kk}`
/// iff `i < k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    vertex_order: Vec<Vertex>,
    rank: Vec<usize>,
}

impl MonomialOrder {
    /// `vertex_order[r - 1]` is the user label that takes position `r`.
    /// Panics unless `vertex_order` is a permutation of `1..=d`.
    pub fn new(vertex_order: Vec<Vertex>) -> MonomialOrder {
        let d = vertex_order.len();
        let mut rank = vec![0; d + 1];
        for (pos, &v) in vertex_order.iter().enumerate() {
            assert!(
                (1..=d).contains(&v) && rank[v] == 0,
                "vertex order must be a permutation"
            );
            rank[v] = pos + 1;
        }
        MonomialOrder { vertex_order, rank }
    }

    pub fn identity(d: usize) -> MonomialOrder {
        MonomialOrder::new((1..=d).collect())
    }

    /// The order under which the quadratic basis of `g` is stated: looped
    /// vertices first, then the blocks of the bipartition.
    pub fn for_graph(g: &Graph) -> MonomialOrder {
        MonomialOrder::for_classification(&classify(g), g)
    }

    pub fn for_classification(c: &Classification, g: &Graph) -> MonomialOrder {
        MonomialOrder::new(c.labeling(g))
    }

    pub fn vertex_order(&self) -> &[Vertex] {
        &self.vertex_order
    }

    /// Position of a user label.
    pub fn rank(&self, v: Vertex) -> usize {
        self.rank[v]
    }

    /// User label at a position.
    pub fn unrank(&self, r: usize) -> Vertex {
        self.vertex_order[r - 1]
    }

    /// The edge whose endpoints sit at positions `a` and `b`.
    pub fn edge_at(&self, a: usize, b: usize) -> Edge {
        Edge::new(self.unrank(a), self.unrank(b))
    }

    fn key(&self, e: Edge) -> (bool, usize, Reverse<usize>) {
        let (a, b) = (self.rank[e.lo()], self.rank[e.hi()]);
        let (lo, hi) = (a.min(b), a.max(b));
        if e.is_loop() {
            (true, lo, Reverse(0))
        } else {
            (false, lo, Reverse(hi))
        }
    }

    pub fn cmp_vars(&self, a: Edge, b: Edge) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }

    /// Sorts variables from largest to smallest.
    pub fn descending<I: IntoIterator<Item = Edge>>(&self, vars: I) -> Vec<Edge> {
        let mut v: Vec<Edge> = vars.into_iter().collect();
        v.sort_by(|&a, &b| self.cmp_vars(b, a));
        v.dedup();
        v
    }

    /// Lexicographic comparison: the monomial with the higher exponent on
    /// the largest variable where they differ is larger.
    pub fn lex_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for e in self.descending(a.variables().chain(b.variables())) {
            match a.exponent(e).cmp(&b.exponent(e)) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }
}

impl Serialize for MonomialOrder {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("MonomialOrder", 3)?;
        st.serialize_field("kind", "lex")?;
        st.serialize_field("vertex_order", &self.vertex_order)?;
        st.serialize_field(
            "rule",
            "loops above non-loops; x[i,j] < x[k,l] iff i < k, or i = k and j > l; \
             x[i,i] < x[k,k] iff i < k; positions taken from vertex_order",
        )?;
        st.end()
    }
}

pub fn lex_cmp(order: &MonomialOrder, a: &Monomial, b: &Monomial) -> Ordering {
    order.lex_cmp(a, b)
}

/// The alternating product binomial of an even closed walk with common
/// factors cancelled, or `None` when the walk is trivial.
pub fn walk_binomial(w: &Walk) -> Result<Option<Binomial>, ToricError> {
    if !w.is_even() {
        return Err(ToricError::OddWalk(w.len()));
    }
    let plus = Monomial::from_edges(w.edges().iter().step_by(2).copied());
    let minus = Monomial::from_edges(w.edges().iter().skip(1).step_by(2).copied());
    let b = Binomial::new(plus, minus).cancelled();
    Ok((!b.is_zero()).then_some(b))
}

/// Distinct nonzero walk binomials of the even closed walks found by the
/// default search, oriented under [`MonomialOrder::for_graph`] and sorted by
/// degree.
pub fn generators(g: &Graph) -> Vec<Binomial> {
    generators_with(
        g,
        &WalkSearch::generator_default(g),
        &MonomialOrder::for_graph(g),
    )
}

pub fn generators_with(g: &Graph, search: &WalkSearch, order: &MonomialOrder) -> Vec<Binomial> {
    let set: BTreeSet<Binomial> = search
        .even_closed_walks(g)
        .iter()
        .filter_map(|w| walk_binomial(w).expect("search yields even walks"))
        .map(|b| b.oriented(order))
        .collect();
    let mut out: Vec<Binomial> = set.into_iter().collect();
    out.sort_by_key(|b| b.plus.degree());
    out
}

/// Normal form of `b` modulo `basis`. The largest reducible monomial is
/// rewritten first, each time by the first basis element whose initial
/// monomial divides it. Returns `None` when the remainder is zero.
pub fn reduce(
    b: &Binomial,
    basis: &[Binomial],
    order: &MonomialOrder,
) -> Result<Option<Binomial>, ToricError> {
    if let Some(index) = basis.iter().position(|g| !g.is_oriented(order)) {
        return Err(ToricError::Misoriented { index });
    }
    let mut terms = [b.plus.clone(), b.minus.clone()];
    loop {
        if terms[0] == terms[1] {
            return Ok(None);
        }
        let mut best: Option<(usize, usize)> = None;
        for t in 0..2 {
            let Some(k) = basis.iter().position(|g| g.plus.divides(&terms[t])) else {
                continue;
            };
            let larger = match best {
                None => true,
                Some((bt, _)) => order.lex_cmp(&terms[t], &terms[bt]) == Ordering::Greater,
            };
            if larger {
                best = Some((t, k));
            }
        }
        let Some((t, k)) = best else { break };
        let quotient = terms[t].div(&basis[k].plus).expect("initial divides");
        terms[t] = quotient.mul(&basis[k].minus);
    }
    let [plus, minus] = terms;
    Ok(Some(Binomial::new(plus, minus).oriented(order)))
}

/// `(L / in(f)) tail(f) - (L / in(g)) tail(g)` with `L = lcm(in(f), in(g))`.
pub fn s_pair(f: &Binomial, g: &Binomial) -> Binomial {
    let l = f.plus.lcm(&g.plus);
    Binomial::new(
        l.div(&f.plus).expect("lcm").mul(&f.minus),
        l.div(&g.plus).expect("lcm").mul(&g.minus),
    )
}

/// First S-pair `(i, j)`, `i < j`, that does not reduce to zero.
pub fn buchberger_counterexample(
    basis: &[Binomial],
    order: &MonomialOrder,
) -> Result<Option<(usize, usize)>, ToricError> {
    if let Some(index) = basis.iter().position(|g| !g.is_oriented(order)) {
        return Err(ToricError::Misoriented { index });
    }
    let pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|i| (i + 1..basis.len()).map(move |j| (i, j)))
        .collect();
    Ok(pairs.into_par_iter().find_first(|&(i, j)| {
        let s = s_pair(&basis[i], &basis[j]);
        reduce(&s, basis, order)
            .expect("orientation checked")
            .is_some()
    }))
}

/// Buchberger's criterion: every element is oriented initial-first and every
/// S-pair reduces to zero.
pub fn buchberger_verify(basis: &[Binomial], order: &MonomialOrder) -> bool {
    matches!(buchberger_counterexample(basis, order), Ok(None))
}

/// Which statement the basis comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisKind {
    /// Sorting binomials restricted to the edges of a simple, non-simplex
    /// polytope's graph.
    Sorting,
    /// Sorting binomials over the looped vertices of a simplex.
    LoopedSimplex,
}

/// A quadratic Gröbner basis together with the order it is a basis for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub kind: BasisKind,
    pub order: MonomialOrder,
    pub elements: Vec<Binomial>,
}

impl GroebnerBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn reduce(&self, b: &Binomial) -> Option<Binomial> {
        reduce(b, &self.elements, &self.order).expect("bases are built oriented")
    }

    pub fn verify(&self) -> bool {
        buchberger_verify(&self.elements, &self.order)
    }

    pub fn all_quadratic(&self) -> bool {
        self.elements.iter().all(Binomial::is_quadratic)
    }

    pub fn initials_squarefree(&self) -> bool {
        self.elements.iter().all(|b| b.plus.is_squarefree())
    }
}

impl Serialize for GroebnerBasis {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GroebnerBasis", 4)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("size", &self.elements.len())?;
        st.serialize_field("basis", &self.elements)?;
        st.end()
    }
}

/// The sorting binomials on positions `1..=n`, initial monomial first:
/// `x_{ij} x_{kl} - x_{ik} x_{jl}` for `i <= j < k <= l` and
/// `x_{il} x_{jk} - x_{ik} x_{jl}` for `i < j <= k < l`.
fn sorting_binomials(n: usize) -> Vec<[(usize, usize); 4]> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            for k in j + 1..=n {
                for l in k..=n {
                    out.push([(i, j), (k, l), (i, k), (j, l)]);
                }
            }
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j..=n {
                for l in k + 1..=n {
                    out.push([(i, l), (j, k), (i, k), (j, l)]);
                }
            }
        }
    }
    out
}

/// The quadratic Gröbner basis of the toric ideal of `g`, stated under
/// [`MonomialOrder::for_graph`].
///
/// For simple polytopes that are not simplices it is the set of sorting
/// binomials on all `d` positions whose variables are edges of `g`. For a
/// simplex with at least two loops it is the set of sorting binomials on the
/// loop positions. Simplices with at most one loop have `I_G = (0)`.
pub fn groebner_basis(g: &Graph) -> Result<GroebnerBasis, ToricError> {
    let c = classify(g);
    let order = MonomialOrder::for_classification(&c, g);
    let (kind, n) = match &c {
        Classification::NotSimple => return Err(ToricError::NotSimple),
        Classification::Simplex { .. } if g.num_loops() < 2 => return Err(ToricError::ZeroIdeal),
        Classification::Simplex { .. } => (BasisKind::LoopedSimplex, g.num_loops()),
        _ => (BasisKind::Sorting, g.d()),
    };
    let elements: Vec<Binomial> = sorting_binomials(n)
        .into_iter()
        .map(|pairs| pairs.map(|(a, b)| order.edge_at(a, b)))
        .filter(|edges| edges.iter().all(|&e| g.contains(e)))
        .map(|[a, b, c, d]| {
            Binomial::new(Monomial::from_edges([a, b]), Monomial::from_edges([c, d]))
        })
        .collect();
    if elements.is_empty() {
        return Err(ToricError::ZeroIdeal);
    }
    Ok(GroebnerBasis {
        kind,
        order,
        elements,
    })
}
