//! Exact rational vector spaces: reduced-echelon subspaces of Q^n and the
//! common-complement construction (split off the intersection, pair the
//! leftover bases into a diagonal, complete outside the span).
//!
//! Scalars are Ratio<i128>: exact at every scale this workbench touches.

use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rat = Ratio<i128>;

pub fn rat(n: i128, d: i128) -> Rat {
    Ratio::new(n, d)
}

/// Parse "3", "-4/7".
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i128 = n.parse().map_err(|_| Error::parse(0, format!("bad rational {s:?}")))?;
    let d: i128 = d.parse().map_err(|_| Error::parse(0, format!("bad rational {s:?}")))?;
    if d == 0 {
        return Err(Error::parse(0, "zero denominator".to_string()));
    }
    Ok(Ratio::new(n, d))
}

pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMat {
    pub fn from_rows(rows: Vec<Vec<Rat>>, cols: usize) -> QMat {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r);
        }
        QMat { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
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
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(src) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, src);
            let inv = self.at(r, c).recip();
            for j in c..self.cols {
                let v = self.at(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let f = self.at(i, c).clone();
                    for j in c..self.cols {
                        let v = self.at(i, j) - &f * self.at(r, j);
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

/// Subspace of Q^n held as a reduced-echelon basis (unique per subspace).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSubspace {
    ambient: usize,
    basis: QMat,
    pivots: Vec<usize>,
}

impl RationalSubspace {
    pub fn from_generators(ambient: usize, rows: Vec<Vec<Rat>>) -> RationalSubspace {
        let mut m = QMat::from_rows(rows, ambient);
        let pivots = m.rref();
        let rank = pivots.len();
        let basis = QMat::from_rows(m.row_vecs().into_iter().take(rank).collect(), ambient);
        RationalSubspace { ambient, basis, pivots }
    }

    pub fn from_int_rows(ambient: usize, rows: Vec<Vec<i64>>) -> RationalSubspace {
        RationalSubspace::from_generators(
            ambient,
            rows.into_iter()
                .map(|r| r.into_iter().map(|x| Rat::from_integer(x as i128)).collect())
                .collect(),
        )
    }

    pub fn zero(ambient: usize) -> RationalSubspace {
        RationalSubspace::from_generators(ambient, vec![])
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis_rows(&self) -> Vec<Vec<Rat>> {
        self.basis.row_vecs()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        let mut res = v.to_vec();
        for (i, &c) in self.pivots.iter().enumerate() {
            if !res[c].is_zero() {
                let f = res[c].clone();
                for j in 0..self.ambient {
                    let v = &res[j] - &f * self.basis.at(i, j);
                    res[j] = v;
                }
            }
        }
        res.iter().all(|x| x.is_zero())
    }

    pub fn sum(&self, other: &RationalSubspace) -> RationalSubspace {
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        RationalSubspace::from_generators(self.ambient, rows)
    }

    pub fn intersect(&self, other: &RationalSubspace) -> RationalSubspace {
        let a = self.dim();
        let c = other.dim();
        if a == 0 || c == 0 {
            return RationalSubspace::zero(self.ambient);
        }
        let mut stacked = self.basis_rows();
        stacked.extend(other.basis_rows());
        let kernel = nullspace_left(&stacked, self.ambient);
        let mut rows = Vec::new();
        for k in kernel {
            let mut row = vec![Rat::zero(); self.ambient];
            for (i, coef) in k.iter().take(a).enumerate() {
                if !coef.is_zero() {
                    for j in 0..self.ambient {
                        let v = &row[j] + coef * self.basis.at(i, j);
                        row[j] = v;
                    }
                }
            }
            rows.push(row);
        }
        RationalSubspace::from_generators(self.ambient, rows)
    }

    pub fn ambient_complement(&self) -> RationalSubspace {
        let mut rows = Vec::new();
        for j in 0..self.ambient {
            if !self.pivots.contains(&j) {
                let mut r = vec![Rat::zero(); self.ambient];
                r[j] = Rat::one();
                rows.push(r);
            }
        }
        RationalSubspace::from_generators(self.ambient, rows)
    }

    /// Basis rows of a complement of `inner` within self.
    pub fn complement_within(&self, inner: &RationalSubspace) -> Vec<Vec<Rat>> {
        debug_assert!(inner.basis_rows().iter().all(|r| self.contains(r)));
        let k = self.dim();
        let coords: Vec<Vec<Rat>> = inner
            .basis_rows()
            .iter()
            .map(|r| self.pivots.iter().map(|&c| r[c].clone()).collect())
            .collect();
        let inner_in_coords = RationalSubspace::from_generators(k, coords);
        let comp = inner_in_coords.ambient_complement();
        comp.basis_rows()
            .iter()
            .map(|cr| {
                let mut row = vec![Rat::zero(); self.ambient];
                for (i, coef) in cr.iter().enumerate() {
                    if !coef.is_zero() {
                        for j in 0..self.ambient {
                            let v = &row[j] + coef * self.basis.at(i, j);
                            row[j] = v;
                        }
                    }
                }
                row
            })
            .collect()
    }
}

fn nullspace_left(rows: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let n = rows.len();
    let mut t = QMat::from_rows(
        (0..cols).map(|j| (0..n).map(|i| rows[i][j].clone()).collect()).collect(),
        n,
    );
    let pivots = t.rref();
    let mut out = Vec::new();
    for free in 0..n {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); n];
        v[free] = Rat::one();
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = -t.at(i, free).clone();
        }
        out.push(v);
    }
    out
}

/// Common complement of two equal-dimensional subspaces of Q^dim: returns H
/// with Q^dim = A (+) H = C (+) H. Splits off A /\ C, pairs the remaining
/// bases into the diagonal span{a_i + c_i}, and completes outside A + C when
/// that span is proper.
pub fn q_common_complement(
    dim: usize,
    a: &RationalSubspace,
    c: &RationalSubspace,
) -> Result<RationalSubspace> {
    if a.ambient != dim || c.ambient != dim {
        return Err(Error::DimensionMismatch("subspace ambient dimension mismatch".into()));
    }
    if a.dim() != c.dim() {
        return Err(Error::DimensionMismatch(format!("dim A = {} vs dim C = {}", a.dim(), c.dim())));
    }
    let k = a.intersect(c);
    let a2 = a.complement_within(&k);
    let c2 = c.complement_within(&k);
    debug_assert_eq!(a2.len(), c2.len());
    let mut rows: Vec<Vec<Rat>> = a2
        .iter()
        .zip(&c2)
        .map(|(x, y)| x.iter().zip(y).map(|(u, v)| u + v).collect())
        .collect();
    let s = a.sum(c);
    if s.dim() < dim {
        rows.extend(s.ambient_complement().basis_rows());
    }
    let h = RationalSubspace::from_generators(dim, rows);
    debug_assert_eq!(h.dim(), dim - a.dim());
    if a.sum(&h).dim() != dim || c.sum(&h).dim() != dim {
        return Err(Error::precondition("rational complement construction failed rank checks"));
    }
    Ok(h)
}

/// Submodule/subspace literal: rows of rationals, "[(1,0);(1/2,3)]".
pub fn parse_rat_rows(ambient: usize, s: &str) -> Result<Vec<Vec<Rat>>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::parse(0, format!("expected [(..);(..)], got {s:?}")))?;
    let mut rows = Vec::new();
    if !inner.trim().is_empty() {
        for part in inner.split(';') {
            let part = part.trim();
            let coords = part
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| Error::parse(0, format!("expected (..), got {part:?}")))?;
            let row: Vec<Rat> = if coords.trim().is_empty() {
                vec![]
            } else {
                coords.split(',').map(parse_rat).collect::<Result<_>>()?
            };
            if row.len() != ambient {
                return Err(Error::DimensionMismatch(format!(
                    "row has {} coordinates, ambient dimension is {ambient}",
                    row.len()
                )));
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

pub fn format_rat_rows(rows: &[Vec<Rat>]) -> String {
    let parts: Vec<String> = rows
        .iter()
        .map(|r| format!("({})", r.iter().map(format_rat).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", parts.join(";"))
}

impl fmt::Display for RationalSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rat_rows(&self.basis_rows()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_cc_diagonal_case() {
        let a = RationalSubspace::from_int_rows(2, vec![vec![1, 0]]);
        let c = RationalSubspace::from_int_rows(2, vec![vec![0, 1]]);
        let h = q_common_complement(2, &a, &c).unwrap();
        assert_eq!(h, RationalSubspace::from_int_rows(2, vec![vec![1, 1]]));
    }

    #[test]
    fn q_cc_equal_inputs() {
        let a = RationalSubspace::from_int_rows(2, vec![vec![1, 0]]);
        let h = q_common_complement(2, &a, &a).unwrap();
        assert_eq!(h, RationalSubspace::from_int_rows(2, vec![vec![0, 1]]));
    }

    #[test]
    fn q_cc_random_dim5() {
        let mut state = 0xdeadbeefdeadbeefu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..100 {
            let mk = |next: &mut dyn FnMut() -> u64| -> RationalSubspace {
                let rows: Vec<Vec<Rat>> = (0..2)
                    .map(|_| (0..5).map(|_| Rat::from_integer((next() % 7) as i128 - 3)).collect())
                    .collect();
                RationalSubspace::from_generators(5, rows)
            };
            let a = mk(&mut next);
            let c = mk(&mut next);
            if a.dim() != c.dim() {
                continue;
            }
            let h = q_common_complement(5, &a, &c).unwrap();
            assert_eq!(h.dim(), 5 - a.dim());
            assert_eq!(a.sum(&h).dim(), 5);
            assert_eq!(c.sum(&h).dim(), 5);
        }
    }

    #[test]
    fn rat_rows_round_trip() {
        let rows = vec![vec![rat(1, 2), rat(-3, 1)], vec![rat(0, 1), rat(5, 7)]];
        let s = format_rat_rows(&rows);
        let back = parse_rat_rows(2, &s).unwrap();
        assert_eq!(rows, back);
    }
}
