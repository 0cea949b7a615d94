//! Exact Gaussian elimination over the rationals: reduced row echelon form,
//! linear solves, nullspaces. Everything here is dense and desk-scale.

use num_traits::{One, Zero};

use crate::rational::Rat;

/// Row-major rational matrix.
pub type Matrix = Vec<Vec<Rat>>;

/// Reduced row echelon form. Returns the reduced rows (zero rows dropped) and
/// the pivot column of each row, in order.
pub fn rref(rows: &[Vec<Rat>]) -> (Matrix, Vec<usize>) {
    let mut m: Matrix = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(pivot_row) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pivot_row);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in 0..ncols {
                    let delta = &factor * &m[row][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    rref(rows).1.len()
}

/// Solves the square-ish system `A x = b` when it has a unique solution.
pub fn solve_unique(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let ncols = a.first().map_or(0, Vec::len);
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (m, pivots) = rref(&aug);
    // Inconsistent if some pivot lands in the rhs column.
    if pivots.contains(&ncols) {
        return None;
    }
    if pivots.len() != ncols {
        return None; // underdetermined
    }
    let mut x = vec![Rat::zero(); ncols];
    for (row, &col) in m.iter().zip(&pivots) {
        x[col] = row[ncols].clone();
    }
    Some(x)
}

/// A basis of `{x : A x = 0}`, one vector per free column.
pub fn nullspace(a: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let ncols = a.first().map_or(0, Vec::len);
    let (m, pivots) = rref(a);
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Any particular solution of `A x = b`, or `None` if inconsistent.
pub fn solve_any(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let ncols = a.first().map_or(0, Vec::len);
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (m, pivots) = rref(&aug);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![Rat::zero(); ncols];
    for (row, &col) in m.iter().zip(&pivots) {
        x[col] = row[ncols].clone();
    }
    Some(x)
}
