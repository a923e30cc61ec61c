//! Exact linear algebra over the integers and rationals.
//!
//! The elimination workhorse is fraction-free (Bareiss): pivoting and row
//! updates stay in `BigInt` with exact divisions, and rationals appear only at
//! the interface (kernel vectors, reduced echelon forms). Matrices are dense
//! `Vec<Vec<_>>`; every block this crate produces is small.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type QVec = Vec<BigRational>;

/// Clears denominators of each row; the result has the same kernel and row
/// space as the input.
fn to_integer_rows(mat: &[QVec]) -> Vec<Vec<BigInt>> {
    mat.iter()
        .map(|row| {
            let mut lcm = BigInt::one();
            for x in row {
                lcm = num_integer::lcm(lcm, x.denom().clone());
            }
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect()
}

/// Fraction-free forward elimination in place. Returns the pivot positions
/// `(row, col)` in order. On return the matrix is upper echelon with integer
/// entries; the sign flips from row swaps are folded into the rows themselves.
fn bareiss(m: &mut [Vec<BigInt>]) -> Vec<(usize, usize)> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &m[i][j] * &m[r][c] - &m[i][c] * &m[r][j];
                let (q, rem) = num_integer::Integer::div_rem(&num, &prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push((r, c));
        r += 1;
    }
    pivots
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn det(mat: &[Vec<BigInt>]) -> BigInt {
    let n = mat.len();
    assert!(mat.iter().all(|r| r.len() == n), "determinant needs a square matrix");
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = mat.to_vec();
    // Track swap parity separately; bareiss() itself does not.
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..n).find(|&i| !m[i][c].is_zero()) else {
            return BigInt::zero();
        };
        if pr != r {
            m.swap(r, pr);
            sign = -sign;
        }
        for i in r + 1..n {
            for j in c + 1..n {
                let num = &m[i][j] * &m[r][c] - &m[i][c] * &m[r][j];
                let (q, rem) = num_integer::Integer::div_rem(&num, &prev);
                debug_assert!(rem.is_zero());
                m[i][j] = q;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    sign * m[n - 1][n - 1].clone()
}

/// Rank of a rational matrix.
pub fn rank(mat: &[QVec]) -> usize {
    if mat.is_empty() {
        return 0;
    }
    let mut m = to_integer_rows(mat);
    bareiss(&mut m).len()
}

/// Basis of the right kernel `{x : mat * x = 0}`.
///
/// Forward elimination is fraction-free; only the back-substitution per free
/// column uses rational division. The basis is not canonical; callers that
/// need echelon kernel vectors re-reduce with [`rref`].
pub fn nullspace(mat: &[QVec], cols: usize) -> Vec<QVec> {
    if mat.is_empty() {
        // Zero map: the whole source is the kernel.
        return (0..cols)
            .map(|f| {
                let mut v = vec![BigRational::zero(); cols];
                v[f] = BigRational::one();
                v
            })
            .collect();
    }
    assert!(mat.iter().all(|r| r.len() == cols));
    let mut m = to_integer_rows(mat);
    let pivots = bareiss(&mut m);
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for f in 0..cols {
        if pivot_cols.contains(&f) {
            continue;
        }
        let mut x = vec![BigRational::zero(); cols];
        x[f] = BigRational::one();
        for &(r, c) in pivots.iter().rev() {
            if c > f {
                continue;
            }
            let mut acc = BigRational::zero();
            for j in c + 1..cols {
                if !m[r][j].is_zero() && !x[j].is_zero() {
                    acc += BigRational::from(m[r][j].clone()) * &x[j];
                }
            }
            x[c] = -acc / BigRational::from(m[r][c].clone());
        }
        basis.push(x);
    }
    basis
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
/// The output is the canonical basis of the input row space, so two spanning
/// sets of the same space reduce to identical results.
pub fn rref(mat: Vec<QVec>) -> (Vec<QVec>, Vec<usize>) {
    let mut m: Vec<QVec> = mat.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    if m.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x /= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in 0..cols {
                    let delta = &factor * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Matrix-vector product over the integers.
pub fn mat_vec(mat: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    mat.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// `det(m) * m^{-1}` for a square integer matrix, so that
/// `m * adjugate = det * identity`. Computed by rational inversion and
/// rescaling; the integrality of the result is asserted.
pub fn adjugate(mat: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = mat.len();
    let d = det(mat);
    assert!(!d.is_zero(), "adjugate of a singular matrix");
    // Gauss-Jordan over the rationals on [mat | I].
    let aug: Vec<QVec> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: QVec = row.iter().map(|x| BigRational::from(x.clone())).collect();
            for j in 0..n {
                r.push(if i == j { BigRational::one() } else { BigRational::zero() });
            }
            r
        })
        .collect();
    let (reduced, pivots) = rref(aug);
    assert_eq!(pivots, (0..n).collect::<Vec<_>>(), "matrix is singular");
    let dq = BigRational::from(d);
    let mut adj = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in reduced.iter().enumerate() {
        for j in 0..n {
            let scaled = &row[n + j] * &dq;
            assert!(scaled.is_integer(), "adjugate entries must be integral");
            adj[i][j] = scaled.to_integer();
        }
    }
    adj
}
