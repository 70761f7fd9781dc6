//! Small dense linear algebra over a [`Scalar`]: row reduction, rank,
//! kernel and row-space bases, and inversion of square matrices.
//!
//! Everything here is Gaussian elimination on `Vec<Vec<T>>`; matrices in this
//! crate have at most a few hundred rows, so no effort is spent on sparsity.

use crate::scalar::Scalar;
use crate::vector::RVector;

/// Row-echelon reduction of `rows` (in place on a copy). Returns the reduced
/// rows together with the pivot column of each nonzero row.
fn echelon<T: Scalar>(rows: &[RVector<T>], dim: usize) -> (Vec<Vec<T>>, Vec<usize>) {
    let mut m: Vec<Vec<T>> = rows.iter().map(|r| r.coords().to_vec()).collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..dim {
        // Exact scalars take the first nonzero pivot; floats take the largest.
        let mut pivot = None;
        for (i, r) in m.iter().enumerate().skip(row) {
            if !r[col].is_zero() {
                match (&pivot, T::EXACT) {
                    (None, _) => pivot = Some(i),
                    (Some(_), true) => break,
                    (Some(p), false) => {
                        if r[col].abs().cmp_total(&m[*p][col].abs())
                            == std::cmp::Ordering::Greater
                        {
                            pivot = Some(i);
                        }
                    }
                }
            }
        }
        let Some(p) = pivot else { continue };
        m.swap(row, p);
        let inv = T::one() / m[row][col].clone();
        for c in col..dim {
            m[row][c] = m[row][c].clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for c in col..dim {
                    let delta = factor.clone() * m[row][c].clone();
                    m[i][c] = m[i][c].clone() - delta;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    (m, pivot_cols)
}

/// Rank of the row set.
pub fn rank<T: Scalar>(rows: &[RVector<T>], dim: usize) -> usize {
    echelon(rows, dim).1.len()
}

/// A basis of the row space, in reduced echelon form.
pub fn row_space_basis<T: Scalar>(rows: &[RVector<T>], dim: usize) -> Vec<RVector<T>> {
    let (m, pivots) = echelon(rows, dim);
    m.into_iter()
        .take(pivots.len())
        .map(RVector::new)
        .collect()
}

/// A basis of the kernel `{x : rows · x = 0}`.
pub fn kernel_basis<T: Scalar>(rows: &[RVector<T>], dim: usize) -> Vec<RVector<T>> {
    let (m, pivots) = echelon(rows, dim);
    let mut basis = Vec::new();
    let mut pivot_iter = pivots.iter().peekable();
    let free_cols: Vec<usize> = (0..dim)
        .filter(|c| {
            if pivot_iter.peek() == Some(&c) {
                pivot_iter.next();
                false
            } else {
                true
            }
        })
        .collect();
    for &free in &free_cols {
        let mut v = vec![T::zero(); dim];
        v[free] = T::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        basis.push(RVector::new(v));
    }
    basis
}

/// Inverse of a square matrix given as rows, or `None` if singular.
pub fn invert<T: Scalar>(rows: &[RVector<T>]) -> Option<Vec<RVector<T>>> {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.dim() == n), "inverting a non-square matrix");
    // Augment with the identity and reduce.
    let augmented: Vec<RVector<T>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut coords = r.coords().to_vec();
            coords.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            RVector::new(coords)
        })
        .collect();
    let (m, pivots) = echelon(&augmented, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(
        m.into_iter()
            .take(n)
            .map(|row| RVector::new(row[n..].to_vec()))
            .collect(),
    )
}
