//! Dense exact linear algebra over [`Rational`]: reduced row echelon form,
//! rank, null spaces and a generalized inverse.

use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Reduced row echelon form of a matrix with `cols` columns.
#[derive(Debug, Clone)]
pub struct Rref {
    /// Nonzero rows only, each with a leading one in `pivots[k]`.
    pub rows: Matrix,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of `{x : M x = 0}`, one vector per free column, ascending.
    pub fn null_space(&self) -> Matrix {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if !row[free].is_zero() {
                    v[p] = -&row[free];
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Gauss-Jordan elimination with the first nonzero entry as pivot.
pub fn rref(matrix: &[Vec<Rational>], cols: usize) -> Rref {
    let mut rows: Matrix = matrix.to_vec();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][col].recip();
        if !inv.is_one() {
            for v in rows[next].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
        }
        let pivot_row = rows[next].clone();
        let support: Vec<usize> = (0..cols).filter(|&c| !pivot_row[c].is_zero()).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for &c in &support {
                let delta = &factor * &pivot_row[c];
                row[c] -= delta;
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    Rref { rows, pivots, cols }
}

pub fn rank(matrix: &[Vec<Rational>], cols: usize) -> usize {
    rref(matrix, cols).rank()
}

pub fn transpose(matrix: &[Vec<Rational>], cols: usize) -> Matrix {
    (0..cols)
        .map(|c| matrix.iter().map(|row| row[c].clone()).collect())
        .collect()
}

pub fn mat_vec(matrix: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    matrix.iter().map(|row| crate::rational::dot(row, v)).collect()
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>], b_cols: usize) -> Matrix {
    a.iter()
        .map(|row| {
            (0..b_cols)
                .map(|c| {
                    let mut acc = Rational::zero();
                    for (k, x) in row.iter().enumerate() {
                        if !x.is_zero() && !b[k][c].is_zero() {
                            acc += x * &b[k][c];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Inverse of a square nonsingular matrix, `None` when singular.
pub fn inverse(matrix: &[Vec<Rational>]) -> Option<Matrix> {
    let n = matrix.len();
    let augmented: Matrix = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let reduced = rref(&augmented, 2 * n);
    if reduced.pivots.len() < n || reduced.pivots[n - 1] >= n {
        return None;
    }
    Some(reduced.rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// A matrix `G` (cols × rows) with `M G M = M`.
///
/// Built from a nonsingular `r × r` submatrix on independent rows and columns
/// of `M`; all other entries of `G` are zero.
pub fn generalized_inverse(matrix: &[Vec<Rational>], cols: usize) -> Matrix {
    let rows = matrix.len();
    let mut g = vec![vec![Rational::zero(); rows]; cols];
    let col_pivots = rref(matrix, cols).pivots;
    if col_pivots.is_empty() {
        return g;
    }
    let row_pivots = rref(&transpose(matrix, cols), rows).pivots;
    let sub: Matrix = row_pivots
        .iter()
        .map(|&r| col_pivots.iter().map(|&c| matrix[r][c].clone()).collect())
        .collect();
    let inv = inverse(&sub).expect("rank-sized submatrix on independent rows/cols is nonsingular");
    for (a, &c) in col_pivots.iter().enumerate() {
        for (b, &r) in row_pivots.iter().enumerate() {
            g[c][r] = inv[a][b].clone();
        }
    }
    g
}
