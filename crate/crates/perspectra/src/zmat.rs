//! Dense integer matrices with the normal forms the subgroup machinery needs:
//! row-style Hermite form (optionally reducing entries against per-column
//! moduli), Hermite with a recorded left transform, left kernels, and Smith
//! normal form with transforms.
//!
//! All row/column operations go through i128 intermediates and fail loudly on
//! overflow instead of wrapping.

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl std::fmt::Debug for IntMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow)
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in &rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend_from_slice(r);
        }
        IntMat { rows: n, cols, data }
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

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: &[i64]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn truncate_rows(&mut self, n: usize) {
        assert!(n <= self.rows);
        self.data.truncate(n * self.cols);
        self.rows = n;
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> Result<IntMat> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    acc += self.at(i, k) as i128 * other.at(k, j) as i128;
                }
                out.set(i, j, narrow(acc)?);
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self.data[i * self.cols + j] = -self.data[i * self.cols + j];
        }
    }

    /// row_dst -= q * row_src, reducing against `moduli` when provided.
    fn row_axpy(&mut self, dst: usize, src: usize, q: i64, moduli: Option<&[i64]>) -> Result<()> {
        for j in 0..self.cols {
            let v = self.at(dst, j) as i128 - q as i128 * self.at(src, j) as i128;
            let mut v = narrow(v)?;
            if let Some(m) = moduli {
                if m[j] > 0 {
                    v = v.rem_euclid(m[j]);
                }
            }
            self.set(dst, j, v);
        }
        Ok(())
    }

    fn reduce_row_mod(&mut self, i: usize, moduli: &[i64]) {
        for j in 0..self.cols {
            if moduli[j] > 0 {
                let v = self.at(i, j).rem_euclid(moduli[j]);
                self.set(i, j, v);
            }
        }
    }

    /// In-place row Hermite normal form of the plain row lattice. Returns the
    /// rank; rows beyond it are zero (not truncated).
    pub fn hermite_in_place_plain(&mut self) -> Result<usize> {
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // Euclidean reduction in column c among rows r..
            loop {
                let mut piv: Option<usize> = None;
                for i in r..self.rows {
                    let v = self.at(i, c);
                    if v != 0 && piv.map_or(true, |p| self.at(p, c).abs() > v.abs()) {
                        piv = Some(i);
                    }
                }
                let Some(p) = piv else { break };
                self.swap_rows(r, p);
                let pv = self.at(r, c);
                let mut again = false;
                for i in r + 1..self.rows {
                    let v = self.at(i, c);
                    if v != 0 {
                        let q = v.div_euclid(pv);
                        self.row_axpy(i, r, q, None)?;
                        if self.at(i, c) != 0 {
                            again = true;
                        }
                    }
                }
                if !again {
                    break;
                }
            }
            if self.at(r, c) == 0 {
                continue;
            }
            if self.at(r, c) < 0 {
                self.negate_row(r);
            }
            // reduce entries above the pivot into [0, pivot)
            let pv = self.at(r, c);
            for i in 0..r {
                let v = self.at(i, c);
                let q = v.div_euclid(pv);
                if q != 0 {
                    self.row_axpy(i, r, q, None)?;
                }
            }
            r += 1;
        }
        Ok(r)
    }

    /// Row Hermite normal form of the lattice spanned by the rows TOGETHER
    /// with the relation lattice diag(moduli): a relation row m_c * e_c is
    /// injected while column c is processed, and every entry stays reduced
    /// modulo its column modulus. The result is square upper triangular with
    /// positive pivots dividing the moduli; returns the rank (= cols).
    pub fn hermite_in_place(&mut self, moduli: Option<&[i64]>) -> Result<usize> {
        let Some(m) = moduli else {
            return self.hermite_in_place_plain();
        };
        assert_eq!(m.len(), self.cols);
        debug_assert!(m.iter().all(|&x| x > 0));
        for i in 0..self.rows {
            self.reduce_row_mod(i, m);
        }
        let mut r = 0;
        for c in 0..self.cols {
            let mut rel = vec![0i64; self.cols];
            rel[c] = m[c];
            self.push_row(&rel);
            loop {
                let mut piv: Option<usize> = None;
                for i in r..self.rows {
                    let v = self.at(i, c);
                    if v != 0 && piv.map_or(true, |p| self.at(p, c).abs() > v.abs()) {
                        piv = Some(i);
                    }
                }
                // the injected relation row guarantees a pivot exists the
                // first time around; later passes may find column c clean
                let Some(p) = piv else { break };
                self.swap_rows(r, p);
                let pv = self.at(r, c);
                let mut again = false;
                for i in r + 1..self.rows {
                    let v = self.at(i, c);
                    if v != 0 {
                        let q = v.div_euclid(pv);
                        self.row_axpy(i, r, q, moduli)?;
                        if self.at(i, c) != 0 {
                            again = true;
                        }
                    }
                }
                if !again {
                    break;
                }
            }
            debug_assert!(self.at(r, c) > 0, "injected relation row forces a positive pivot");
            let pv = self.at(r, c);
            for i in 0..r {
                let v = self.at(i, c);
                let q = v.div_euclid(pv);
                if q != 0 {
                    self.row_axpy(i, r, q, moduli)?;
                }
            }
            r += 1;
        }
        debug_assert!(
            (r..self.rows).all(|i| self.row(i).iter().all(|&x| x == 0)),
            "rows beyond the rank must be zero"
        );
        Ok(r)
    }

    /// Hermite form together with a unimodular left transform: returns
    /// (h, u, rank) with u * self = h (h keeps its zero rows).
    pub fn hermite_with_transform(&self) -> Result<(IntMat, IntMat, usize)> {
        let mut h = self.clone();
        let mut u = IntMat::identity(self.rows);
        let mut r = 0;
        for c in 0..h.cols {
            if r == h.rows {
                break;
            }
            loop {
                let mut piv: Option<usize> = None;
                for i in r..h.rows {
                    let v = h.at(i, c);
                    if v != 0 && piv.map_or(true, |p| h.at(p, c).abs() > v.abs()) {
                        piv = Some(i);
                    }
                }
                let Some(p) = piv else { break };
                h.swap_rows(r, p);
                u.swap_rows(r, p);
                let pv = h.at(r, c);
                let mut again = false;
                for i in r + 1..h.rows {
                    let v = h.at(i, c);
                    if v != 0 {
                        let q = v.div_euclid(pv);
                        h.row_axpy(i, r, q, None)?;
                        u.row_axpy(i, r, q, None)?;
                        if h.at(i, c) != 0 {
                            again = true;
                        }
                    }
                }
                if !again {
                    break;
                }
            }
            if h.at(r, c) == 0 {
                continue;
            }
            if h.at(r, c) < 0 {
                h.negate_row(r);
                u.negate_row(r);
            }
            let pv = h.at(r, c);
            for i in 0..r {
                let q = h.at(i, c).div_euclid(pv);
                if q != 0 {
                    h.row_axpy(i, r, q, None)?;
                    u.row_axpy(i, r, q, None)?;
                }
            }
            r += 1;
        }
        Ok((h, u, r))
    }

    /// Basis of the left kernel { y : y * self = 0 }, one row per basis vector.
    pub fn left_kernel(&self) -> Result<IntMat> {
        let (_, u, rank) = self.hermite_with_transform()?;
        let mut out = IntMat::zero(0, self.rows);
        out.rows = 0;
        for i in rank..self.rows {
            out.push_row(u.row(i));
        }
        Ok(out)
    }

    /// A particular solution y of y * self = rhs, if one exists.
    pub fn solve_left(&self, rhs: &[i64]) -> Result<Option<Vec<i64>>> {
        assert_eq!(rhs.len(), self.cols);
        let (h, u, rank) = self.hermite_with_transform()?;
        let mut residual: Vec<i128> = rhs.iter().map(|&x| x as i128).collect();
        let mut z = vec![0i128; rank];
        let mut row = 0;
        for c in 0..self.cols {
            if row < rank && h.at(row, c) != 0 {
                let pv = h.at(row, c) as i128;
                if residual[c] % pv != 0 {
                    return Ok(None);
                }
                let q = residual[c] / pv;
                z[row] = q;
                for j in 0..self.cols {
                    residual[j] -= q * h.at(row, j) as i128;
                }
                row += 1;
            } else if residual[c] != 0 {
                return Ok(None);
            }
        }
        if residual.iter().any(|&x| x != 0) {
            return Ok(None);
        }
        let mut y = vec![0i64; self.rows];
        for i in 0..rank {
            for j in 0..self.rows {
                let v = y[j] as i128 + z[i] * u.at(i, j) as i128;
                y[j] = narrow(v)?;
            }
        }
        Ok(Some(y))
    }
}

/// Smith normal form data: p * a * q = diag(elements), with q_inv = q^{-1}.
pub struct Smith {
    pub p: IntMat,
    pub q: IntMat,
    pub q_inv: IntMat,
    /// Diagonal entries (non-negative, each dividing the next), length min(rows, cols).
    pub diag: Vec<i64>,
}

pub fn smith(a: &IntMat) -> Result<Smith> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut p = IntMat::identity(rows);
    let mut q = IntMat::identity(cols);
    let mut q_inv = IntMat::identity(cols);

    // column op helpers keep q and q_inv synchronized with d
    fn col_axpy(d: &mut IntMat, q: &mut IntMat, q_inv: &mut IntMat, dst: usize, src: usize, f: i64) -> Result<()> {
        // C_dst += f * C_src on d and q; row_src -= f * row_dst on q_inv
        for i in 0..d.rows() {
            let v = d.at(i, dst) as i128 + f as i128 * d.at(i, src) as i128;
            d.set(i, dst, narrow(v)?);
        }
        for i in 0..q.rows() {
            let v = q.at(i, dst) as i128 + f as i128 * q.at(i, src) as i128;
            q.set(i, dst, narrow(v)?);
        }
        for j in 0..q_inv.cols() {
            let v = q_inv.at(src, j) as i128 - f as i128 * q_inv.at(dst, j) as i128;
            q_inv.set(src, j, narrow(v)?);
        }
        Ok(())
    }
    fn col_swap(d: &mut IntMat, q: &mut IntMat, q_inv: &mut IntMat, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..d.rows() {
            let (x, y) = (d.at(i, a), d.at(i, b));
            d.set(i, a, y);
            d.set(i, b, x);
        }
        for i in 0..q.rows() {
            let (x, y) = (q.at(i, a), q.at(i, b));
            q.set(i, a, y);
            q.set(i, b, x);
        }
        q_inv.swap_rows(a, b);
    }

    let n = rows.min(cols);
    for k in 0..n {
        'pivot: loop {
            // locate the minimal nonzero entry in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    let v = d.at(i, j);
                    if v != 0 && best.map_or(true, |(bi, bj)| d.at(bi, bj).abs() > v.abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break 'pivot };
            d.swap_rows(k, bi);
            p.swap_rows(k, bi);
            col_swap(&mut d, &mut q, &mut q_inv, k, bj);

            let pv = d.at(k, k);
            let mut dirty = false;
            for i in k + 1..rows {
                let v = d.at(i, k);
                if v != 0 {
                    let f = v.div_euclid(pv);
                    d.row_axpy(i, k, f, None)?;
                    p.row_axpy(i, k, f, None)?;
                    if d.at(i, k) != 0 {
                        dirty = true;
                    }
                }
            }
            for j in k + 1..cols {
                let v = d.at(k, j);
                if v != 0 {
                    let f = v.div_euclid(pv);
                    col_axpy(&mut d, &mut q, &mut q_inv, j, k, -f)?;
                    if d.at(k, j) != 0 {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue 'pivot;
            }
            // divisibility pass: pivot must divide the rest of the block
            let pv = d.at(k, k);
            for i in k + 1..rows {
                for j in k + 1..cols {
                    if d.at(i, j) % pv != 0 {
                        d.row_axpy(k, i, -1, None)?;
                        p.row_axpy(k, i, -1, None)?;
                        continue 'pivot;
                    }
                }
            }
            if d.at(k, k) < 0 {
                d.negate_row(k);
                p.negate_row(k);
            }
            break 'pivot;
        }
    }

    let diag = (0..n).map(|k| d.at(k, k)).collect();
    Ok(Smith { p, q, q_inv, diag })
}
