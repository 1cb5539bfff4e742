//! Exact linear-system solving and rank computation.

use crate::error::{Error, Result};
use crate::rational::{Rat, RatMat, RatVec};

/// Outcome of solving `A x = b` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    /// The system has no solution.
    Inconsistent,
    /// One particular solution together with a basis of the null space of
    /// `A`; the full solution set is `particular + span(null_basis)`.
    Solution {
        particular: RatVec,
        null_basis: Vec<RatVec>,
    },
}

/// Reduced row echelon form of `rows`, returning (reduced rows, pivot columns).
///
/// Zero rows are dropped from the output.
pub(crate) fn rref(rows: &[RatVec], n_cols: usize) -> (Vec<RatVec>, Vec<usize>) {
    let mut m: Vec<Vec<Rat>> = rows.iter().map(|r| r.entries().to_vec()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n_cols {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                let pivot_row = m[row].clone();
                for (dst, src) in m[i].iter_mut().zip(&pivot_row) {
                    let delta = &factor * src;
                    *dst = &*dst - &delta;
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
    (m.into_iter().map(RatVec::new).collect(), pivots)
}

/// Rank of the row set, computed by exact elimination.
pub fn rank(rows: &[RatVec], n_cols: usize) -> usize {
    rref(rows, n_cols).1.len()
}

/// Solves `A x = b` exactly by Gauss-Jordan elimination.
///
/// On success the particular solution satisfies `A x = b` exactly and every
/// null-basis vector `v` satisfies `A v = 0` exactly.
pub fn solve_linear(a: &RatMat, b: &RatVec) -> Result<LinearSolution> {
    if a.n_rows() != b.dim() {
        return Err(Error::dim(a.n_rows(), b.dim(), "solve_linear rhs length"));
    }
    let n = a.n_cols();
    let augmented: Vec<RatVec> = a
        .rows()
        .iter()
        .zip(b.iter())
        .map(|(row, rhs)| row.push(rhs.clone()))
        .collect();
    let (reduced, pivots) = rref(&augmented, n + 1);

    // A pivot in the rhs column means a row 0 = 1.
    if pivots.contains(&n) {
        return Ok(LinearSolution::Inconsistent);
    }

    let mut particular = vec![Rat::zero(); n];
    for (row, &col) in reduced.iter().zip(&pivots) {
        particular[col] = row[n].clone();
    }

    let pivot_set: Vec<bool> = {
        let mut set = vec![false; n];
        for &c in &pivots {
            set[c] = true;
        }
        set
    };
    let mut null_basis = Vec::new();
    for free in 0..n {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![Rat::zero(); n];
        v[free] = Rat::one();
        for (row, &col) in reduced.iter().zip(&pivots) {
            v[col] = -&row[free];
        }
        null_basis.push(RatVec::new(v));
    }

    Ok(LinearSolution::Solution {
        particular: RatVec::new(particular),
        null_basis,
    })
}
