//! Bit-vector F_2 linear algebra for elementary abelian 2-groups of rank up
//! to 32. One u64 word per basis vector; bit j is coordinate j. Row sets live
//! in fixed stack buffers, so the hot loops never touch the heap.
//!
//! This backs the hot paths of the homocyclic construction and the
//! direct-sum checks when the ambient group is Z(2)^r; results agree with the
//! generic F_p route by construction (cross-checked in the tests).

pub(crate) const MAX_DIM: usize = 32;

/// Row set in a fixed buffer (enough room for two stacked bases).
#[derive(Clone, Copy)]
pub(crate) struct Rows {
    buf: [u64; 2 * MAX_DIM],
    len: usize,
}

impl Rows {
    pub fn new() -> Rows {
        Rows { buf: [0; 2 * MAX_DIM], len: 0 }
    }

    pub fn from_slice(rows: &[u64]) -> Rows {
        let mut r = Rows::new();
        for &x in rows {
            r.push(x);
        }
        r
    }

    pub fn push(&mut self, row: u64) {
        self.buf[self.len] = row;
        self.len += 1;
    }

    pub fn extend(&mut self, rows: &[u64]) {
        for &x in rows {
            self.push(x);
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.buf[..self.len]
    }

    /// Reduced echelon form in place: rows sorted by pivot (lowest set bit),
    /// pivots cleared from all other rows. Truncates to the rank.
    pub fn rref(&mut self) -> usize {
        let mut rank = 0;
        let mut col_mask = 1u64;
        while col_mask != 0 && rank < self.len {
            if let Some(src) = (rank..self.len).find(|&i| self.buf[i] & col_mask != 0) {
                self.buf.swap(rank, src);
                let pivot_row = self.buf[rank];
                for i in 0..self.len {
                    if i != rank && self.buf[i] & col_mask != 0 {
                        self.buf[i] ^= pivot_row;
                    }
                }
                rank += 1;
            }
            col_mask <<= 1;
        }
        self.len = rank;
        rank
    }
}

#[allow(dead_code)]
pub(crate) fn rank_of(rows: &[u64]) -> usize {
    Rows::from_slice(rows).rref()
}

pub(crate) fn rank_union(a: &[u64], b: &[u64]) -> usize {
    let mut rows = Rows::from_slice(a);
    rows.extend(b);
    rows.rref()
}

/// Intersection basis by Zassenhaus: rows (a | a<<32) and (c | 0); after
/// eliminating the low half, rows with zero low half carry the intersection
/// in the high half. Requires dim <= 32.
pub(crate) fn intersect(a: &[u64], c: &[u64], dim: u32) -> Rows {
    debug_assert!(dim as usize <= MAX_DIM);
    let mut rows = Rows::new();
    for &r in a {
        rows.push(r | (r << 32));
    }
    for &r in c {
        rows.push(r);
    }
    let mut rank = 0;
    for col in 0..dim {
        let mask = 1u64 << col;
        if let Some(src) = (rank..rows.len).find(|&i| rows.buf[i] & mask != 0) {
            rows.buf.swap(rank, src);
            let pr = rows.buf[rank];
            for i in 0..rows.len {
                if i != rank && rows.buf[i] & mask != 0 {
                    rows.buf[i] ^= pr;
                }
            }
            rank += 1;
        }
    }
    let mut out = Rows::new();
    for i in rank..rows.len {
        let high = rows.buf[i] >> 32;
        if high != 0 {
            out.push(high);
        }
    }
    out.rref();
    out
}

/// Complement of `inner` inside `outer` (both rref, inner contained in
/// outer): express inner in outer-coordinates through the pivot trick, take
/// the outer rows at the unused coordinates.
pub(crate) fn complement_within(outer: &[u64], inner: &[u64]) -> Rows {
    let mut coords = Rows::new();
    for &r in inner {
        let mut c = 0u64;
        for (k, &orow) in outer.iter().enumerate() {
            if r & (orow & orow.wrapping_neg()) != 0 {
                // bit test at outer row k's pivot
                c |= 1 << k;
            }
        }
        coords.push(c);
    }
    coords.rref();
    let mut pivot_mask = 0u64;
    for &c in coords.as_slice() {
        pivot_mask |= c & c.wrapping_neg();
    }
    let mut out = Rows::new();
    for (k, &orow) in outer.iter().enumerate() {
        if pivot_mask & (1 << k) == 0 {
            out.push(orow);
        }
    }
    out.rref();
    out
}

/// Standard-vector complement of an rref row set inside the full space.
pub(crate) fn ambient_complement(rows: &[u64], dim: u32) -> Rows {
    let mut pivot_mask = 0u64;
    for &r in rows {
        pivot_mask |= r & r.wrapping_neg();
    }
    let mut out = Rows::new();
    for c in 0..dim {
        if pivot_mask & (1 << c) == 0 {
            out.push(1 << c);
        }
    }
    out
}

/// The socle-level common complement over F_2 in mask form: split off the
/// intersection, pair the remaining bases into a diagonal, extend outside
/// the span. Mirrors `fpspace::fp_common_complement` exactly.
pub(crate) fn common_complement(a: &[u64], c: &[u64], dim: u32) -> Rows {
    debug_assert_eq!(a.len(), c.len());
    let k = intersect(a, c, dim);
    let a2 = complement_within(a, k.as_slice());
    let c2 = complement_within(c, k.as_slice());
    debug_assert_eq!(a2.len(), c2.len());
    let mut w = Rows::new();
    for (&x, &y) in a2.as_slice().iter().zip(c2.as_slice()) {
        w.push(x ^ y);
    }
    let mut span = Rows::from_slice(a);
    span.extend(c);
    let srank = span.rref();
    if (srank as u32) < dim {
        w.extend(ambient_complement(span.as_slice(), dim).as_slice());
    }
    let rank = w.rref();
    debug_assert_eq!(rank, dim as usize - a.len());
    debug_assert_eq!(rank_union(a, w.as_slice()), dim as usize);
    debug_assert_eq!(rank_union(c, w.as_slice()), dim as usize);
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_rank() {
        let mut rows = Rows::from_slice(&[0b110, 0b011, 0b101]);
        assert_eq!(rows.rref(), 2);
    }

    #[test]
    fn intersect_lines_in_plane() {
        let a = [0b01u64];
        let c = [0b11u64];
        assert_eq!(intersect(&a, &c, 2).len(), 0);
        let i = intersect(&a, &a, 2);
        assert_eq!(i.as_slice(), &[0b01]);
    }

    #[test]
    fn common_complement_matches_diagonal() {
        let a = [0b01u64];
        let c = [0b10u64];
        let w = common_complement(&a, &c, 2);
        assert_eq!(w.as_slice(), &[0b11]);
    }

    #[test]
    fn agrees_with_generic_fp_route() {
        use crate::fpspace::{fp_common_complement, FpSubspace};
        // every pair of equal-dim subspaces of F_2^4
        let dim = 4u32;
        let all: Vec<Vec<u64>> = {
            let mut seen = std::collections::HashSet::new();
            let mut out: Vec<Vec<u64>> = vec![vec![]];
            seen.insert(vec![]);
            let mut queue = vec![vec![]];
            while let Some(s) = queue.pop() {
                for v in 1..(1u64 << dim) {
                    let mut rows = Rows::from_slice(&s);
                    rows.push(v);
                    rows.rref();
                    let key: Vec<u64> = rows.as_slice().to_vec();
                    if seen.insert(key.clone()) {
                        queue.push(key.clone());
                        out.push(key);
                    }
                }
            }
            out
        };
        assert_eq!(all.len(), 67); // subspaces of F_2^4
        let to_rows = |masks: &[u64]| -> Vec<Vec<i64>> {
            masks.iter().map(|&m| (0..dim).map(|j| ((m >> j) & 1) as i64).collect()).collect()
        };
        for a in &all {
            for c in &all {
                if a.len() != c.len() {
                    continue;
                }
                let w = common_complement(a, c, dim);
                let fa = FpSubspace::from_generators(2, dim as usize, to_rows(a));
                let fc = FpSubspace::from_generators(2, dim as usize, to_rows(c));
                let (fw, _) = fp_common_complement(&fa, &fc).unwrap();
                let gw = FpSubspace::from_generators(2, dim as usize, to_rows(w.as_slice()));
                assert_eq!(fw, gw, "bit route disagrees with generic route");
            }
        }
    }
}
