//! F_p vector spaces in reduced echelon form, and the socle-level common
//! complement construction: split off the intersection, pair the remaining
//! bases into a diagonal, and complete outside the span.

use crate::arith::mod_inverse;
use crate::error::{Error, Result};

/// Dense matrix over F_p, entries reduced into [0, p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMat {
    p: i64,
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl FpMat {
    pub fn from_rows(p: i64, rows: Vec<Vec<i64>>, cols: usize) -> FpMat {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in &rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().map(|&x| x.rem_euclid(p)));
        }
        FpMat { p, rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(src) = (r..self.rows).find(|&i| self.at(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, src);
            let inv = mod_inverse(self.at(r, c), p).expect("pivot invertible");
            for j in c..self.cols {
                let v = (self.at(r, j) as i128 * inv as i128).rem_euclid(p as i128) as i64;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && self.at(i, c) != 0 {
                    let f = self.at(i, c);
                    for j in c..self.cols {
                        let v = (self.at(i, j) as i128 - f as i128 * self.at(r, j) as i128)
                            .rem_euclid(p as i128) as i64;
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

/// Subspace of F_p^m held as a reduced-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpSubspace {
    p: i64,
    ambient: usize,
    basis: FpMat,
    pivots: Vec<usize>,
}

impl FpSubspace {
    pub fn from_generators(p: i64, ambient: usize, rows: Vec<Vec<i64>>) -> FpSubspace {
        assert!(crate::arith::is_prime(p));
        let mut m = FpMat::from_rows(p, rows, ambient);
        let pivots = m.rref();
        let rank = pivots.len();
        let basis = FpMat::from_rows(p, m.row_vecs().into_iter().take(rank).collect(), ambient);
        FpSubspace { p, ambient, basis, pivots }
    }

    pub fn zero(p: i64, ambient: usize) -> FpSubspace {
        FpSubspace::from_generators(p, ambient, vec![])
    }

    pub fn full(p: i64, ambient: usize) -> FpSubspace {
        let rows = (0..ambient)
            .map(|i| {
                let mut r = vec![0; ambient];
                r[i] = 1;
                r
            })
            .collect();
        FpSubspace::from_generators(p, ambient, rows)
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis_rows(&self) -> Vec<Vec<i64>> {
        self.basis.row_vecs()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let mut res: Vec<i64> = v.iter().map(|&x| x.rem_euclid(self.p)).collect();
        for (i, &c) in self.pivots.iter().enumerate() {
            let f = res[c];
            if f != 0 {
                for j in 0..self.ambient {
                    res[j] = (res[j] as i128 - f as i128 * self.basis.at(i, j) as i128)
                        .rem_euclid(self.p as i128) as i64;
                }
            }
        }
        res.iter().all(|&x| x == 0)
    }

    pub fn sum(&self, other: &FpSubspace) -> FpSubspace {
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        FpSubspace::from_generators(self.p, self.ambient, rows)
    }

    /// Intersection via the left kernel of the stacked bases.
    pub fn intersect(&self, other: &FpSubspace) -> FpSubspace {
        let a = self.dim();
        let c = other.dim();
        if a == 0 || c == 0 {
            return FpSubspace::zero(self.p, self.ambient);
        }
        // nullspace of the (a+c) x m stacked matrix, read off rows (u, v)
        // with u*A + v*C = 0; then u*A spans the intersection.
        let mut stacked = self.basis_rows();
        stacked.extend(other.basis_rows());
        let kernel = nullspace_left(self.p, &stacked, self.ambient);
        let mut rows = Vec::new();
        for k in kernel {
            let mut row = vec![0i64; self.ambient];
            for (i, &coef) in k.iter().take(a).enumerate() {
                for j in 0..self.ambient {
                    row[j] = (row[j] as i128 + coef as i128 * self.basis.at(i, j) as i128)
                        .rem_euclid(self.p as i128) as i64;
                }
            }
            rows.push(row);
        }
        FpSubspace::from_generators(self.p, self.ambient, rows)
    }

    /// Echelon-canonical complement in the ambient space: the standard basis
    /// vectors at the non-pivot columns.
    pub fn ambient_complement(&self) -> FpSubspace {
        let mut rows = Vec::new();
        for j in 0..self.ambient {
            if !self.pivots.contains(&j) {
                let mut r = vec![0i64; self.ambient];
                r[j] = 1;
                rows.push(r);
            }
        }
        FpSubspace::from_generators(self.p, self.ambient, rows)
    }

    /// Basis rows of a complement of `inner` within self (inner <= self
    /// required). Works in self-coordinates: a vector of self is recovered
    /// from its entries at self's pivot columns.
    pub fn complement_within(&self, inner: &FpSubspace) -> Vec<Vec<i64>> {
        debug_assert!(inner.basis_rows().iter().all(|r| self.contains(r)));
        let k = self.dim();
        let coords: Vec<Vec<i64>> = inner
            .basis_rows()
            .iter()
            .map(|r| self.pivots.iter().map(|&c| r[c]).collect())
            .collect();
        let inner_in_coords = FpSubspace::from_generators(self.p, k, coords);
        let comp = inner_in_coords.ambient_complement();
        comp.basis_rows()
            .iter()
            .map(|cr| {
                let mut row = vec![0i64; self.ambient];
                for (i, &coef) in cr.iter().enumerate() {
                    for j in 0..self.ambient {
                        row[j] = (row[j] as i128 + coef as i128 * self.basis.at(i, j) as i128)
                            .rem_euclid(self.p as i128) as i64;
                    }
                }
                row
            })
            .collect()
    }
}

/// Left nullspace basis of the given rows: vectors y with y * M = 0.
pub(crate) fn nullspace_left(p: i64, rows: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    let n = rows.len();
    // transpose, then the kernel of the cols x n matrix
    let mut t = FpMat::from_rows(
        p,
        (0..cols).map(|j| (0..n).map(|i| rows[i][j]).collect()).collect(),
        n,
    );
    let pivots = t.rref();
    let mut out = Vec::new();
    for free in 0..n {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![0i64; n];
        v[free] = 1;
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = (-t.at(i, free)).rem_euclid(p);
        }
        out.push(v);
    }
    out
}

/// Which structural moves the construction used; feeds the recursion traces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FpCaseReport {
    /// A + C was a proper subspace and the answer was extended outside it.
    pub restricted: bool,
    /// Dimension of A /\ C that was split off before the diagonal pairing.
    pub split_dim: usize,
}

/// Common complement of two equal-dimensional subspaces A, C of F_p^m:
/// returns W with F_p^m = A (+) W = C (+) W.
///
/// Construction (one pass of the recursion the socle argument uses): split
/// off K = A /\ C, pair complements A2, C2 of K inside A and C into the
/// diagonal span{a_i + c_i} (inside S = A + C this is a common complement),
/// then extend by an echelon complement of S when S is proper.
pub fn fp_common_complement(a: &FpSubspace, c: &FpSubspace) -> Result<(FpSubspace, FpCaseReport)> {
    if a.p != c.p || a.ambient != c.ambient {
        return Err(Error::DimensionMismatch("subspaces live in different ambient spaces".into()));
    }
    if a.dim() != c.dim() {
        return Err(Error::DimensionMismatch(format!(
            "dim A = {} vs dim C = {}",
            a.dim(),
            c.dim()
        )));
    }
    let p = a.p;
    let m = a.ambient;
    let k = a.intersect(c);
    let a2 = a.complement_within(&k);
    let c2 = c.complement_within(&k);
    debug_assert_eq!(a2.len(), c2.len());
    let mut rows: Vec<Vec<i64>> = a2
        .iter()
        .zip(&c2)
        .map(|(x, y)| x.iter().zip(y).map(|(&u, &v)| (u + v).rem_euclid(p)).collect())
        .collect();
    let s = a.sum(c);
    let restricted = s.dim() < m;
    if restricted {
        rows.extend(s.ambient_complement().basis_rows());
    }
    let w = FpSubspace::from_generators(p, m, rows);
    debug_assert_eq!(w.dim(), m - a.dim());
    debug_assert_eq!(a.sum(&w).dim(), m);
    debug_assert_eq!(c.sum(&w).dim(), m);
    Ok((w, FpCaseReport { restricted, split_dim: k.dim() }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_canonical() {
        let s1 = FpSubspace::from_generators(2, 3, vec![vec![1, 1, 0], vec![0, 1, 1]]);
        let s2 = FpSubspace::from_generators(2, 3, vec![vec![1, 0, 1], vec![1, 1, 0], vec![0, 1, 1]]);
        assert_eq!(s1, s2);
        assert_eq!(s1.dim(), 2);
    }

    #[test]
    fn fp_cc_diagonal_case() {
        // p=2, m=2, A=span{(1,0)}, C=span{(0,1)} -> W=span{(1,1)}
        let a = FpSubspace::from_generators(2, 2, vec![vec![1, 0]]);
        let c = FpSubspace::from_generators(2, 2, vec![vec![0, 1]]);
        let (w, report) = fp_common_complement(&a, &c).unwrap();
        assert_eq!(w.basis_rows(), vec![vec![1, 1]]);
        assert!(!report.restricted);
        assert_eq!(report.split_dim, 0);
    }

    #[test]
    fn fp_cc_equal_inputs() {
        // A=C=span{(1,0)} -> W=span{(0,1)}
        let a = FpSubspace::from_generators(2, 2, vec![vec![1, 0]]);
        let (w, report) = fp_common_complement(&a, &a).unwrap();
        assert_eq!(w.basis_rows(), vec![vec![0, 1]]);
        assert!(report.restricted);
        assert_eq!(report.split_dim, 1);
    }

    #[test]
    fn fp_cc_dimension_mismatch() {
        let a = FpSubspace::from_generators(3, 4, vec![vec![1, 0, 0, 0]]);
        let c = FpSubspace::from_generators(3, 4, vec![vec![0, 1, 0, 0], vec![0, 0, 1, 0]]);
        assert!(fp_common_complement(&a, &c).is_err());
    }

    /// Exhaustive check over F_2^m, m <= 4: every equal-dimension pair gets a
    /// verified complement with the right dimension.
    #[test]
    fn fp_cc_exhaustive_f2() {
        for m in 0..=4usize {
            let subspaces = enumerate_subspaces(2, m);
            for a in &subspaces {
                for c in &subspaces {
                    if a.dim() != c.dim() {
                        continue;
                    }
                    let (w, _) = fp_common_complement(a, c).unwrap();
                    assert_eq!(w.dim(), m - a.dim());
                    assert_eq!(a.sum(&w).dim(), m);
                    assert_eq!(c.sum(&w).dim(), m);
                }
            }
        }
    }

    /// Random spot-check at p=3, m=4 mirroring the spec's example shape.
    #[test]
    fn fp_cc_p3_random_pairs() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..200 {
            let rows_a: Vec<Vec<i64>> = (0..2).map(|_| (0..4).map(|_| (next() % 3) as i64).collect()).collect();
            let rows_c: Vec<Vec<i64>> = (0..2).map(|_| (0..4).map(|_| (next() % 3) as i64).collect()).collect();
            let a = FpSubspace::from_generators(3, 4, rows_a);
            let c = FpSubspace::from_generators(3, 4, rows_c);
            if a.dim() != c.dim() {
                continue;
            }
            let (w, _) = fp_common_complement(&a, &c).unwrap();
            assert_eq!(a.sum(&w).dim(), 4);
            assert_eq!(c.sum(&w).dim(), 4);
            assert_eq!(w.dim(), 4 - a.dim());
        }
    }

    /// All subspaces of F_p^m by closing under joins (test-only oracle).
    pub(crate) fn enumerate_subspaces(p: i64, m: usize) -> Vec<FpSubspace> {
        let mut vectors = Vec::new();
        let total = (p as u64).pow(m as u32);
        for mut ix in 0..total {
            let mut v = vec![0i64; m];
            for slot in v.iter_mut() {
                *slot = (ix % p as u64) as i64;
                ix /= p as u64;
            }
            vectors.push(v);
        }
        let mut seen = std::collections::HashSet::new();
        let zero = FpSubspace::zero(p, m);
        seen.insert(format!("{:?}", zero.basis_rows()));
        let mut queue = vec![zero.clone()];
        let mut out = vec![zero];
        while let Some(s) = queue.pop() {
            for v in &vectors {
                if v.iter().all(|&x| x == 0) || s.contains(v) {
                    continue;
                }
                let mut rows = s.basis_rows();
                rows.push(v.clone());
                let t = FpSubspace::from_generators(p, m, rows);
                if seen.insert(format!("{:?}", t.basis_rows())) {
                    queue.push(t.clone());
                    out.push(t);
                }
            }
        }
        out
    }

    #[test]
    fn subspace_counts() {
        // Gaussian binomial totals: F_2^3 has 16 subspaces, F_3^2 has 6
        assert_eq!(enumerate_subspaces(2, 3).len(), 16);
        assert_eq!(enumerate_subspaces(3, 2).len(), 6);
    }
}
