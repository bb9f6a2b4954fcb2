//! Ehrhart polynomials and normalized volumes of simple edge polytopes.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::EhrhartError;
use crate::graph::Graph;
use crate::polytope::Classification;
use crate::toric::MonomialOrder;

/// A polynomial in `m` with exact rational coefficients; `coeffs[k]` is the
/// coefficient of `m^k`. Trailing zeros are trimmed, so the zero polynomial
/// has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> UniPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> UniPoly {
        UniPoly::new(Vec::new())
    }

    pub fn constant(c: BigRational) -> UniPoly {
        UniPoly::new(vec![c])
    }

    /// `m + a`.
    pub fn linear(a: i64) -> UniPoly {
        UniPoly::new(vec![rat(a), rat(1)])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, m: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * m + c)
    }

    pub fn eval_int(&self, m: i64) -> BigRational {
        self.eval(&rat(m))
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get =
            |p: &UniPoly, k: usize| p.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero);
        UniPoly::new((0..n).map(|k| get(self, k) + get(other, k)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `C(m + a, k)` as a polynomial in `m`, i.e. `(m + a)(m + a - 1)...(m + a - k + 1) / k!`.
    pub fn binomial(a: i64, k: u32) -> UniPoly {
        let mut p = UniPoly::constant(rat(1));
        for t in 0..k as i64 {
            p = p
                .mul(&UniPoly::linear(a - t))
                .scale(&BigRational::new(1.into(), (t + 1).into()));
        }
        p
    }

    /// `dim! * leading coefficient`, the normalized volume of a polytope
    /// whose Ehrhart polynomial this is.
    pub fn normalized_leading(&self) -> BigRational {
        let fact: BigInt = (1..=self.degree() as u64).map(BigInt::from).product();
        self.leading() * BigRational::from_integer(fact)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                _ => write!(f, "{a}*")?,
            }
            match k {
                0 => {}
                1 => f.write_str("m")?,
                _ => write!(f, "m^{k}")?,
            }
        }
        Ok(())
    }
}

fn rat_string(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("UniPoly", 2)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(rat_string).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.serialize_field("degree", &self.degree())?;
        st.end()
    }
}

/// Parameters of the closed forms, read off a classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilyParams {
    /// `K_{p,q}`.
    Alpha { p: usize, q: usize },
    /// A loop joined to every vertex of `K_{p,q}`.
    Beta { p: usize, q: usize },
    /// `p` loops on `d` vertices, the loop-free ones spanning no edge.
    Gamma { p: usize, d: usize },
}

impl FamilyParams {
    pub fn from_classification(c: &Classification) -> Result<FamilyParams, EhrhartError> {
        match c {
            Classification::SimpleAlpha { v1, v2 } => Ok(FamilyParams::Alpha {
                p: v1.len(),
                q: v2.len(),
            }),
            Classification::SimpleBeta { v1, v2, .. } => Ok(FamilyParams::Beta {
                p: v1.len(),
                q: v2.len(),
            }),
            Classification::SimpleGamma { loop_set, w } => Ok(FamilyParams::Gamma {
                p: loop_set.len(),
                d: loop_set.len() + w.len(),
            }),
            _ => Err(EhrhartError::NoClosedForm),
        }
    }
}

fn choose(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for t in 0..k {
        acc = acc * BigUint::from(n - t) / BigUint::from(t + 1);
    }
    acc
}

/// The Ehrhart polynomial of a simple, non-simplex edge polytope.
pub fn ehrhart_closed_form(c: &Classification) -> Result<UniPoly, EhrhartError> {
    Ok(closed_form_for(FamilyParams::from_classification(c)?))
}

pub fn closed_form_for(params: FamilyParams) -> UniPoly {
    let b = |a: usize, shift: i64, k: usize| UniPoly::binomial(a as i64 + shift, k as u32);
    match params {
        FamilyParams::Alpha { p, q } => b(p, -1, p - 1).mul(&b(q, -1, q - 1)),
        FamilyParams::Beta { p, q } => b(p, 0, p).mul(&b(q, 0, q)),
        FamilyParams::Gamma { p, d } => (1..=p).fold(UniPoly::zero(), |acc, j| {
            acc.add(&b(j, -2, j - 1).mul(&b(d - j, 0, d - j)))
        }),
    }
}

/// The normalized volume of a simple, non-simplex edge polytope.
pub fn normalized_volume(c: &Classification) -> Result<BigUint, EhrhartError> {
    Ok(volume_for(FamilyParams::from_classification(c)?))
}

pub fn volume_for(params: FamilyParams) -> BigUint {
    match params {
        FamilyParams::Alpha { p, q } => choose((p + q - 2) as u64, (p - 1) as u64),
        FamilyParams::Beta { p, q } => choose((p + q) as u64, p as u64),
        FamilyParams::Gamma { p, d } => (1..=p)
            .map(|j| choose((d - 1) as u64, (j - 1) as u64))
            .sum(),
    }
}

/// The polynomial of degree at most `degree` through the samples `(m, i(m))`.
/// The first `degree + 1` samples determine it; any further samples must
/// agree with it.
pub fn ehrhart_interpolate(counts: &[(u64, u64)], degree: usize) -> Result<UniPoly, EhrhartError> {
    let mut seen = BTreeSet::new();
    for &(m, _) in counts {
        if !seen.insert(m) {
            return Err(EhrhartError::RepeatedSample { m });
        }
    }
    if counts.len() < degree + 1 {
        return Err(EhrhartError::InsufficientSamples {
            needed: degree + 1,
            got: counts.len(),
            degree,
        });
    }
    let (basis, rest) = counts.split_at(degree + 1);
    let mut poly = UniPoly::zero();
    for (k, &(mk, yk)) in basis.iter().enumerate() {
        let mut term = UniPoly::constant(rat(yk as i64));
        for (l, &(ml, _)) in basis.iter().enumerate() {
            if l != k {
                let denom = BigRational::from_integer(BigInt::from(mk as i64 - ml as i64));
                term = term
                    .mul(&UniPoly::linear(-(ml as i64)))
                    .scale(&denom.recip());
            }
        }
        poly = poly.add(&term);
    }
    for &(m, y) in rest {
        if poly.eval_int(m as i64) != rat(y as i64) {
            return Err(EhrhartError::InconsistentSample { m });
        }
    }
    Ok(poly)
}

/// Whether `p` takes integer values at `0..=m_max`.
pub fn integral_on(p: &UniPoly, m_max: u64) -> bool {
    (0..=m_max).all(|m| p.eval_int(m as i64).is_integer())
}

/// Value at `m` as an integer, when it is one.
pub fn eval_u64(p: &UniPoly, m: u64) -> Option<u64> {
    let v = p.eval_int(m as i64);
    v.is_integer().then(|| v.to_integer().to_u64()).flatten()
}

/// Number of sorted products `x_{i_1 j_1} ... x_{i_m j_m}` of edge variables
/// with `i_1 <= ... <= i_m <= j_1 <= ... <= j_m`, vertices read in the
/// positions of [`MonomialOrder::for_graph`].
pub fn count_sorted_monomials(g: &Graph, m: u64) -> u64 {
    let order = MonomialOrder::for_graph(g);
    let d = g.d();
    let mut adj = vec![vec![false; d + 1]; d + 1];
    for &e in g.edges() {
        let (a, b) = (order.rank(e.lo()), order.rank(e.hi()));
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let m = m as usize;
    let mut is = vec![0; m];
    count_i(&adj, d, &mut is, 0, 1)
}

fn count_i(adj: &[Vec<bool>], d: usize, is: &mut Vec<usize>, pos: usize, from: usize) -> u64 {
    if pos == is.len() {
        let floor = is.last().copied().unwrap_or(1);
        return count_j(adj, d, is, 0, floor);
    }
    let mut total = 0;
    for i in from..=d {
        is[pos] = i;
        total += count_i(adj, d, is, pos + 1, i);
    }
    total
}

fn count_j(adj: &[Vec<bool>], d: usize, is: &[usize], pos: usize, from: usize) -> u64 {
    if pos == is.len() {
        return 1;
    }
    (from..=d)
        .filter(|&j| adj[is[pos]][j])
        .map(|j| count_j(adj, d, is, pos + 1, j))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::classify;

    fn graph(d: usize, pairs: &[(usize, usize)]) -> Graph {
        Graph::new(d, pairs.iter().copied()).unwrap()
    }

    fn poly(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&v| rat(v)).collect())
    }

    fn half(p: UniPoly) -> UniPoly {
        p.scale(&BigRational::new(1.into(), 2.into()))
    }

    #[test]
    fn closed_forms() {
        let square = poly(&[1, 2, 1]);
        assert_eq!(closed_form_for(FamilyParams::Alpha { p: 2, q: 2 }), square);
        assert_eq!(closed_form_for(FamilyParams::Beta { p: 1, q: 1 }), square);
        assert_eq!(
            closed_form_for(FamilyParams::Gamma { p: 2, d: 3 }),
            half(poly(&[2, 5, 3]))
        );
    }

    #[test]
    fn volumes() {
        assert_eq!(
            volume_for(FamilyParams::Alpha { p: 2, q: 3 }),
            BigUint::from(3u32)
        );
        assert_eq!(
            volume_for(FamilyParams::Beta { p: 1, q: 1 }),
            BigUint::from(2u32)
        );
        assert_eq!(
            volume_for(FamilyParams::Gamma { p: 2, d: 3 }),
            BigUint::from(3u32)
        );
        for params in [
            FamilyParams::Alpha { p: 3, q: 3 },
            FamilyParams::Beta { p: 2, q: 3 },
            FamilyParams::Gamma { p: 3, d: 5 },
        ] {
            let p = closed_form_for(params);
            assert_eq!(
                p.normalized_leading(),
                BigRational::from_integer(volume_for(params).into())
            );
            assert_eq!(p.eval_int(0), rat(1));
        }
    }

    #[test]
    fn interpolation() {
        assert_eq!(
            ehrhart_interpolate(&[(0, 1), (1, 4), (2, 9)], 2),
            Ok(poly(&[1, 2, 1]))
        );
        assert_eq!(
            ehrhart_interpolate(&[(0, 1), (1, 5), (2, 12)], 2),
            Ok(half(poly(&[2, 5, 3])))
        );
        assert_eq!(ehrhart_interpolate(&[(0, 1), (1, 1)], 0), Ok(poly(&[1])));
        assert_eq!(
            ehrhart_interpolate(&[(0, 1), (1, 1)], 0)
                .unwrap()
                .to_string(),
            "1"
        );
        assert!(matches!(
            ehrhart_interpolate(&[(0, 1)], 2),
            Err(EhrhartError::InsufficientSamples { .. })
        ));
        assert_eq!(
            ehrhart_interpolate(&[(0, 1), (1, 4), (2, 9), (3, 15)], 2),
            Err(EhrhartError::InconsistentSample { m: 3 })
        );
        assert_eq!(
            ehrhart_interpolate(&[(0, 1), (0, 1)], 1),
            Err(EhrhartError::RepeatedSample { m: 0 })
        );
    }

    #[test]
    fn sorted_monomials() {
        let k22 = graph(4, &[(1, 3), (1, 4), (2, 3), (2, 4)]);
        assert_eq!(count_sorted_monomials(&k22, 1), 4);
        assert_eq!(count_sorted_monomials(&k22, 2), 9);
        let gamma = graph(3, &[(1, 1), (2, 2), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(count_sorted_monomials(&gamma, 1), 5);
        assert_eq!(count_sorted_monomials(&gamma, 2), 12);
        assert_eq!(count_sorted_monomials(&gamma, 0), 1);
    }

    #[test]
    fn classification_drives_the_closed_form() {
        let beta = graph(3, &[(1, 1), (1, 2), (1, 3), (2, 3)]);
        let c = classify(&beta);
        assert_eq!(ehrhart_closed_form(&c), Ok(poly(&[1, 2, 1])));
        assert_eq!(normalized_volume(&c), Ok(BigUint::from(2u32)));
        let path = graph(3, &[(1, 2), (2, 3)]);
        assert_eq!(
            ehrhart_closed_form(&classify(&path)),
            Err(EhrhartError::NoClosedForm)
        );
    }

    #[test]
    fn display_and_json() {
        let p = half(poly(&[2, 5, 3]));
        assert_eq!(p.to_string(), "3/2*m^2 + 5/2*m + 1");
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"coeffs": ["1/1", "5/2", "3/2"], "degree": 2})
        );
    }
}
