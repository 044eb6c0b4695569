//! Exact sparse/dense linear algebra over the rationals.
//!
//! Rank goes through fraction-free (Bareiss) elimination on an integer
//! scaling of the matrix, with the pivot chosen of smallest magnitude to
//! keep the intermediate minors small. Kernels, column spaces, and linear
//! solves use a plain rational reduced row echelon form.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::{Signed, Zero};

use crate::error::KrizError;
use crate::qnum::{q_one, Q};

/// Sparse exact matrix; absent entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseRationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Q>,
}

impl SparseRationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseRationalMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseRationalMatrix::zero(n, n);
        for i in 0..n {
            m.add(i, i, q_one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&mut self, row: usize, col: usize, value: Q) {
        assert!(row < self.rows && col < self.cols, "entry out of range");
        if value.is_zero() {
            return;
        }
        match self.entries.entry((row, col)) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += value;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(value);
            }
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Q {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Q)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &SparseRationalMatrix) -> SparseRationalMatrix {
        assert_eq!(self.cols, other.rows);
        // group rhs entries by row
        let mut by_row: Vec<Vec<(usize, &Q)>> = vec![Vec::new(); other.rows];
        for (r, c, v) in other.entries() {
            by_row[r].push((c, v));
        }
        let mut out = SparseRationalMatrix::zero(self.rows, other.cols);
        for (r, k, v) in self.entries() {
            for (c, w) in &by_row[k] {
                out.add(r, *c, v.clone() * (*w).clone());
            }
        }
        out
    }

    /// Apply to a dense column vector.
    pub fn apply(&self, vec: &[Q]) -> Vec<Q> {
        assert_eq!(vec.len(), self.cols);
        let mut out = vec![Q::zero(); self.rows];
        for (r, c, v) in self.entries() {
            if !vec[c].is_zero() {
                out[r] += v.clone() * vec[c].clone();
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut dense = vec![vec![Q::zero(); self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            dense[r][c] = v.clone();
        }
        dense
    }

    pub fn from_dense(dense: &[Vec<Q>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, |r| r.len());
        let mut m = SparseRationalMatrix::zero(rows, cols);
        for (r, row) in dense.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.add(r, c, v.clone());
                }
            }
        }
        m
    }

    /// Exact rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        rank_exact(self)
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Q {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }
}

/// Exact rank over the rationals: scale rows to integers, then run
/// fraction-free Gaussian elimination with smallest-magnitude pivoting.
pub fn rank_exact(matrix: &SparseRationalMatrix) -> usize {
    if matrix.is_zero() {
        return 0;
    }
    // integer row scaling
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(matrix.rows);
    let dense = matrix.to_dense();
    for row in &dense {
        let mut lcm = BigInt::from(1);
        for v in row {
            if !v.is_zero() {
                lcm = num::integer::lcm(lcm, v.denom().clone());
            }
        }
        rows.push(
            row.iter()
                .map(|v| v.numer() * (&lcm / v.denom()))
                .collect(),
        );
    }
    bareiss_rank(rows)
}

fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    let mut col = 0;
    while rank < rows && col < cols {
        // smallest nonzero pivot in this column at or below `rank`
        let pivot = (rank..rows)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].abs());
        let pivot = match pivot {
            None => {
                col += 1;
                continue;
            }
            Some(p) => p,
        };
        a.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let num = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                debug_assert!((&num % &prev).is_zero(), "fraction-free step not exact");
                a[r][c] = num / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        col += 1;
    }
    rank
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(a: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let pivot = match (row..rows).find(|&r| !a[r][col].is_zero()) {
            None => continue,
            Some(p) => p,
        };
        a.swap(row, pivot);
        let p = a[row][col].clone();
        for c in col..cols {
            a[row][c] /= p.clone();
        }
        for r in 0..rows {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..cols {
                    let v = a[row][c].clone();
                    a[r][c] -= f.clone() * v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of the right kernel, as dense column vectors in column order.
pub fn nullspace(matrix: &SparseRationalMatrix) -> Vec<Vec<Q>> {
    let mut dense = matrix.to_dense();
    if dense.is_empty() {
        dense.push(vec![Q::zero(); matrix.cols()]);
    }
    let pivots = rref(&mut dense);
    let cols = matrix.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Q::zero(); cols];
        v[f] = q_one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -dense[r][f].clone();
        }
        basis.push(v);
    }
    basis
}

/// Basis of the column space: the original columns at the pivot positions.
pub fn column_space_basis(matrix: &SparseRationalMatrix) -> Vec<Vec<Q>> {
    let mut dense = matrix.to_dense();
    if dense.is_empty() {
        return Vec::new();
    }
    let pivots = rref(&mut dense);
    pivots
        .iter()
        .map(|&c| (0..matrix.rows()).map(|r| matrix.get(r, c)).collect())
        .collect()
}

/// Trace of the map induced on an invariant subspace.
///
/// `subspace` holds independent column vectors spanning `S`; `action` is a
/// matrix on the ambient space with `action(S) <= S`. Solving
/// `subspace * T = action * subspace` exactly gives the induced matrix `T`
/// whose trace is returned. Errors if the image leaves the subspace.
pub fn subspace_trace(
    subspace: &[Vec<Q>],
    action: &SparseRationalMatrix,
) -> Result<Q, KrizError> {
    let s = subspace.len();
    if s == 0 {
        return Ok(Q::zero());
    }
    let dim = subspace[0].len();
    assert_eq!(action.cols(), dim);
    // augmented [S | A*S]
    let mut aug = vec![vec![Q::zero(); 2 * s]; dim];
    for (j, v) in subspace.iter().enumerate() {
        assert_eq!(v.len(), dim);
        let image = action.apply(v);
        for r in 0..dim {
            aug[r][j] = v[r].clone();
            aug[r][s + j] = image[r].clone();
        }
    }
    let pivots = rref(&mut aug);
    // the basis columns must be exactly the pivots of the left block
    let left_pivots: Vec<usize> = pivots.iter().copied().filter(|&c| c < s).collect();
    if left_pivots.len() != s {
        return Err(KrizError::SubspaceNotInvariant);
    }
    // rows past the left pivots must vanish entirely, otherwise the image
    // needs directions outside the subspace
    for (r, row) in aug.iter().enumerate() {
        if r >= s && row.iter().any(|v| !v.is_zero()) {
            return Err(KrizError::SubspaceNotInvariant);
        }
    }
    let mut trace = Q::zero();
    for (r, &p) in left_pivots.iter().enumerate() {
        debug_assert_eq!(p, r);
        trace += aug[r][s + r].clone();
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qnum::{qi, qr};

    fn mat(rows: &[&[i64]]) -> SparseRationalMatrix {
        let dense: Vec<Vec<Q>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| qi(v)).collect())
            .collect();
        SparseRationalMatrix::from_dense(&dense)
    }

    #[test]
    fn rank_basics() {
        assert_eq!(SparseRationalMatrix::zero(3, 4).rank(), 0);
        assert_eq!(SparseRationalMatrix::identity(5).rank(), 5);
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rank_with_fractions() {
        let mut m = SparseRationalMatrix::zero(2, 2);
        m.add(0, 0, qr(1, 2));
        m.add(0, 1, qr(1, 3));
        m.add(1, 0, qr(3, 2));
        m.add(1, 1, qi(1));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rank_agrees_with_rref() {
        // cross-check the fraction-free path against plain elimination
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let rows = rng.gen_range(1..6);
            let cols = rng.gen_range(1..6);
            let mut m = SparseRationalMatrix::zero(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    m.add(r, c, qi(rng.gen_range(-3..=3)));
                }
            }
            let mut dense = m.to_dense();
            let pivots = rref(&mut dense);
            assert_eq!(m.rank(), pivots.len());
        }
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = mat(&[&[1, 2, 3]]);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn column_space_dimension() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        assert_eq!(column_space_basis(&m).len(), 2);
    }

    #[test]
    fn subspace_trace_full_and_zero() {
        let a = mat(&[&[1, 2], &[3, 4]]);
        let full = vec![vec![qi(1), qi(0)], vec![qi(0), qi(1)]];
        assert_eq!(subspace_trace(&full, &a).unwrap(), qi(5));
        let none: Vec<Vec<Q>> = Vec::new();
        assert_eq!(subspace_trace(&none, &a).unwrap(), qi(0));
    }

    #[test]
    fn subspace_trace_invariant_line() {
        // eigenvector [1, 1] of [[2, 1], [1, 2]] with eigenvalue 3
        let a = mat(&[&[2, 1], &[1, 2]]);
        let line = vec![vec![qi(1), qi(1)]];
        assert_eq!(subspace_trace(&line, &a).unwrap(), qi(3));
        // non-invariant line errors
        let bad = vec![vec![qi(1), qi(0)]];
        assert!(subspace_trace(&bad, &a).is_err());
    }

    #[test]
    fn matrix_product() {
        let a = mat(&[&[1, 2], &[0, 1]]);
        let b = mat(&[&[1, 0], &[-1, 1]]);
        assert_eq!(a.mul(&b), mat(&[&[-1, 2], &[-1, 1]]));
    }
}
