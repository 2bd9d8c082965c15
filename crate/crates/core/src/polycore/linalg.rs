//! Exact linear algebra helpers: fraction-free rank, determinant, inverse.

use crate::{BigInt, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Rank of a rational matrix, computed by clearing denominators row-wise and
/// running fraction-free (Bareiss-style) elimination over the integers.
pub fn rank(matrix: &[Vec<Rat>]) -> usize {
    let rows: Vec<Vec<BigInt>> = matrix.iter().map(|r| clear_row(r)).collect();
    rank_int(rows)
}

fn clear_row(row: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in row {
        lcm = lcm.lcm(c.denom());
    }
    row.iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect()
}

pub fn rank_int(mut rows: Vec<Vec<BigInt>>) -> usize {
    let m = rows.len();
    if m == 0 {
        return 0;
    }
    let n = rows[0].len();
    let mut rank = 0;
    let mut col = 0;
    while rank < m && col < n {
        let pivot = (rank..m).find(|&r| !rows[r][col].is_zero());
        let Some(p) = pivot else {
            col += 1;
            continue;
        };
        rows.swap(rank, p);
        for r in rank + 1..m {
            if rows[r][col].is_zero() {
                continue;
            }
            let a = rows[rank][col].clone();
            let b = rows[r][col].clone();
            let g = a.gcd(&b);
            let (fa, fb) = (&a / &g, &b / &g);
            for c in col..n {
                let v = &rows[r][c] * &fa - &rows[rank][c] * &fb;
                rows[r][c] = v;
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// Exact determinant of a square rational matrix by Gaussian elimination.
pub fn det(matrix: &[Vec<Rat>]) -> Rat {
    let n = matrix.len();
    let mut m: Vec<Vec<Rat>> = matrix.to_vec();
    let mut result = Rat::one();
    for k in 0..n {
        let pivot = (k..n).find(|&r| !m[r][k].is_zero());
        let Some(p) = pivot else {
            return Rat::zero();
        };
        if p != k {
            m.swap(k, p);
            result = -result;
        }
        let pv = m[k][k].clone();
        result *= &pv;
        for r in k + 1..n {
            if m[r][k].is_zero() {
                continue;
            }
            let factor = &m[r][k] / &pv;
            for c in k..n {
                let v = &m[r][c] - &(&factor * &m[k][c]);
                m[r][c] = v;
            }
        }
    }
    result
}

/// Exact inverse; `None` when singular.
pub fn inverse(matrix: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = matrix.len();
    let mut a: Vec<Vec<Rat>> = matrix.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    for k in 0..n {
        let pivot = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(k, pivot);
        inv.swap(k, pivot);
        let pv = a[k][k].clone();
        for c in 0..n {
            a[k][c] /= &pv;
            inv[k][c] /= &pv;
        }
        for r in 0..n {
            if r == k || a[r][k].is_zero() {
                continue;
            }
            let factor = a[r][k].clone();
            for c in 0..n {
                let va = &a[r][c] - &(&factor * &a[k][c]);
                a[r][c] = va;
                let vi = &inv[r][c] - &(&factor * &inv[k][c]);
                inv[r][c] = vi;
            }
        }
    }
    Some(inv)
}

/// Scale a rational vector to coprime integers, preserving direction.
pub fn to_coprime_integers(v: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in v {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if g.is_zero() || g.is_one() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

/// Kernel-free sanity check that a vector of integers has no common factor.
pub fn is_coprime(v: &[BigInt]) -> bool {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
    }
    g.is_one() || (g.is_zero() && v.iter().all(|c| c.is_zero()))
}

pub fn abs_sum(v: &[Rat]) -> Rat {
    v.iter().fold(Rat::zero(), |acc, c| acc + c.abs())
}
