//! Exact linear feasibility over the rationals.
//!
//! Phase I of the tableau simplex method with Bland's rule, so it terminates
//! on degenerate problems. No floating point is involved anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// The polyhedron `{ x >= 0 : A x = b }` with rational data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalLp {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    num_vars: usize,
}

impl RationalLp {
    /// `rows[i]` has one entry per variable. Panics on ragged input.
    pub fn new(rows: Vec<Vec<Rational>>, rhs: Vec<Rational>, num_vars: usize) -> RationalLp {
        assert_eq!(rows.len(), rhs.len(), "one right-hand side per row");
        assert!(
            rows.iter().all(|r| r.len() == num_vars),
            "ragged constraint matrix"
        );
        RationalLp {
            rows,
            rhs,
            num_vars,
        }
    }

    /// Convenience constructor for integer data.
    pub fn from_integers(rows: &[Vec<i64>], rhs: &[i64], num_vars: usize) -> RationalLp {
        let q = |v: i64| Rational::from_integer(BigInt::from(v));
        RationalLp::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| q(v)).collect())
                .collect(),
            rhs.iter().map(|&v| q(v)).collect(),
            num_vars,
        )
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_feasible(&self) -> bool {
        self.feasible_point().is_some()
    }

    /// A point of the polyhedron, or `None` when it is empty.
    pub fn feasible_point(&self) -> Option<Vec<Rational>> {
        let m = self.rows.len();
        let n = self.num_vars;
        if m == 0 {
            return Some(vec![Rational::zero(); n]);
        }
        let width = n + m + 1;

        // Tableau rows [A | I | b] with b >= 0; artificial i is column n + i.
        let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
        for (i, (row, b)) in self.rows.iter().zip(&self.rhs).enumerate() {
            let flip = b.is_negative();
            let mut t = Vec::with_capacity(width);
            t.extend(row.iter().map(|a| if flip { -a } else { a.clone() }));
            t.extend((0..m).map(|k| {
                if k == i {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            t.push(if flip { -b } else { b.clone() });
            tab.push(t);
        }
        let mut basis: Vec<usize> = (n..n + m).collect();

        // Reduced costs for minimizing the sum of artificials; the last entry
        // holds minus the objective value.
        let mut cost = vec![Rational::zero(); width];
        for t in &tab {
            for j in (0..n).chain(std::iter::once(width - 1)) {
                cost[j] -= &t[j];
            }
        }

        while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
            let mut leave: Option<(usize, Rational)> = None;
            for (i, t) in tab.iter().enumerate() {
                if t[enter].is_positive() {
                    let ratio = &t[width - 1] / &t[enter];
                    let better = match &leave {
                        None => true,
                        Some((li, best)) => {
                            ratio < *best || (ratio == *best && basis[i] < basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            // Phase I is bounded below by zero, so some row always qualifies.
            let (row, _) = leave.expect("phase I objective is bounded");
            pivot(&mut tab, &mut cost, row, enter);
            basis[row] = enter;
        }

        if !cost[width - 1].is_zero() {
            return None;
        }
        let mut x = vec![Rational::zero(); n];
        for (i, &b) in basis.iter().enumerate() {
            if b < n {
                x[b] = tab[i][width - 1].clone();
            }
        }
        Some(x)
    }

    /// Whether `x` satisfies every constraint exactly.
    pub fn satisfies(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars
            && x.iter().all(|v| !v.is_negative())
            && self.rows.iter().zip(&self.rhs).all(|(row, b)| {
                let lhs: Rational = row.iter().zip(x).map(|(a, v)| a * v).sum();
                lhs == *b
            })
    }
}

fn pivot(tab: &mut [Vec<Rational>], cost: &mut [Rational], row: usize, col: usize) {
    let p = tab[row][col].clone();
    for v in tab[row].iter_mut() {
        *v /= &p;
    }
    let pivot_row = tab[row].clone();
    for (i, t) in tab.iter_mut().enumerate() {
        if i != row {
            eliminate(t, &pivot_row, col);
        }
    }
    eliminate(cost, &pivot_row, col);
}

fn eliminate(target: &mut [Rational], pivot_row: &[Rational], col: usize) {
    let factor = target[col].clone();
    if factor.is_zero() {
        return;
    }
    for (t, pv) in target.iter_mut().zip(pivot_row) {
        if !pv.is_zero() {
            *t -= &factor * pv;
        }
    }
}
