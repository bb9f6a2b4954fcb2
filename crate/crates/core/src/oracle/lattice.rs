//! Integer lattices given by generating rows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn to_big(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}

/// Unimodular row reduction of the first `cols` columns to echelon form.
/// Returns the number of pivot rows; the rows below them are zero in those
/// columns.
fn echelon(rows: &mut IntMatrix, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        loop {
            // Smallest nonzero entry in column c at or below r becomes the pivot.
            let best = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
            let Some(best) = best else { break };
            rows.swap(r, best);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let pivot_row = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < rows.len() && !rows[r][c].is_zero() {
            r += 1;
        }
    }
    r
}

/// The row-style Hermite normal form of the lattice spanned by `rows`:
/// nonzero rows only, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`. Two generating sets span the same lattice iff their normal
/// forms are equal.
pub fn hermite_normal_form(rows: &IntMatrix) -> IntMatrix {
    let width = rows.first().map_or(0, Vec::len);
    let mut m = rows.clone();
    let rank = echelon(&mut m, width);
    m.truncate(rank);
    let mut pivot_col = 0;
    for r in 0..rank {
        while m[r][pivot_col].is_zero() {
            pivot_col += 1;
        }
        if m[r][pivot_col].is_negative() {
            for x in m[r].iter_mut() {
                *x = -&*x;
            }
        }
        for above in 0..r {
            let q = m[above][pivot_col].div_floor(&m[r][pivot_col]);
            if !q.is_zero() {
                let pivot_row = m[r].clone();
                for (x, p) in m[above].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
            }
        }
        pivot_col += 1;
    }
    m
}

/// Rank over the rationals.
pub fn rank(rows: &IntMatrix) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    echelon(&mut rows.clone(), width)
}

/// A basis of `{ x in Z^width : rows . x = 0 }`.
pub fn integer_kernel(rows: &IntMatrix, width: usize) -> IntMatrix {
    let k = rows.len();
    // Augment the transpose with the identity; unimodular row operations keep
    // track of the integer combinations.
    let mut aug: IntMatrix = (0..width)
        .map(|j| {
            let mut row: Vec<BigInt> = rows.iter().map(|r| r[j].clone()).collect();
            row.extend((0..width).map(|i| {
                if i == j {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }));
            row
        })
        .collect();
    let pivots = echelon(&mut aug, k);
    aug.drain(..pivots);
    aug.into_iter().map(|row| row[k..].to_vec()).collect()
}

/// `Z^width ∩ span_Q(rows)`.
pub fn saturation(rows: &IntMatrix, width: usize) -> IntMatrix {
    let normals = integer_kernel(rows, width);
    integer_kernel(&normals, width)
}

/// Divides out the gcd of the entries. The zero vector is returned as is.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        v.to_vec()
    } else {
        v.iter().map(|x| x / &g).collect()
    }
}

pub fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    hermite_normal_form(a) == hermite_normal_form(b)
}
