//! Homomorphisms between finite abelian groups as integer matrices.
//!
//! The matrix entry M[i][j] describes the image of source generator j in
//! target coordinate i. Well-definedness demands M[i][j] * d_j^src = 0 modulo
//! d_i^tgt for every entry; construction enforces it.

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::group::{Element, Group};
use crate::subgroup::Subgroup;
use crate::zmat::IntMat;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Homomorphism {
    source: Group,
    target: Group,
    matrix: IntMat,
}

impl Homomorphism {
    /// Validates dimensions and the per-entry divisibility invariant; entries
    /// are reduced modulo the target orders.
    pub fn new(source: &Group, target: &Group, entries: Vec<Vec<i64>>) -> Result<Homomorphism> {
        if entries.len() != target.rank() || entries.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::DimensionMismatch(format!(
                "hom matrix must be {}x{}",
                target.rank(),
                source.rank()
            )));
        }
        let reduced: Vec<Vec<i64>> = entries
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().map(|&v| v.rem_euclid(target.factors()[i])).collect())
            .collect();
        let m = IntMat::from_rows(reduced, source.rank());
        let hom = Homomorphism { source: source.clone(), target: target.clone(), matrix: m };
        match hom.first_invalid_entry() {
            None => Ok(hom),
            Some((i, j)) => Err(Error::InvalidHom { row: i, col: j }),
        }
    }

    /// First entry violating the divisibility invariant, if any.
    pub fn first_invalid_entry(&self) -> Option<(usize, usize)> {
        for i in 0..self.target.rank() {
            let dt = self.target.factors()[i];
            for j in 0..self.source.rank() {
                let ds = self.source.factors()[j];
                let need = dt / gcd(dt, ds);
                if self.matrix.at(i, j) % need != 0 {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn identity(group: &Group) -> Homomorphism {
        let n = group.rank();
        let mut entries = vec![vec![0i64; n]; n];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = 1;
        }
        Homomorphism::new(group, group, entries).unwrap()
    }

    pub fn zero(source: &Group, target: &Group) -> Homomorphism {
        Homomorphism::new(source, target, vec![vec![0; source.rank()]; target.rank()]).unwrap()
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn matrix(&self) -> &IntMat {
        &self.matrix
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if x.group() != &self.source {
            return Err(Error::AmbientMismatch);
        }
        let mut coords = vec![0i64; self.target.rank()];
        for i in 0..self.target.rank() {
            let mut acc: i128 = 0;
            for j in 0..self.source.rank() {
                acc += self.matrix.at(i, j) as i128 * x.coords()[j] as i128;
            }
            coords[i] = acc.rem_euclid(self.target.factors()[i] as i128) as i64;
        }
        self.target.element(&coords)
    }

    /// self after other: (self . other)(x) = self(other(x)).
    pub fn compose(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if other.target != self.source {
            return Err(Error::precondition("compose requires target(other) = source(self)"));
        }
        let prod = self.matrix.mul(&other.matrix)?;
        Homomorphism::new(&other.source, &self.target, prod.row_vecs())
    }

    pub fn is_idempotent(&self) -> Result<bool> {
        if !self.is_endomorphism() {
            return Ok(false);
        }
        Ok(&self.compose(self)? == self)
    }

    /// Kernel as a canonical subgroup: solutions of M x = 0 modulo the target
    /// orders, through the left kernel of [M^T; diag(d_tgt)].
    pub fn kernel(&self) -> Result<Subgroup> {
        let n_src = self.source.rank();
        let n_tgt = self.target.rank();
        let mut stacked = self.matrix.transpose();
        for i in 0..n_tgt {
            let mut row = vec![0i64; n_tgt];
            row[i] = self.target.factors()[i];
            stacked.push_row(&row);
        }
        let kernel = stacked.left_kernel()?;
        let mut rows = Vec::with_capacity(kernel.rows());
        for k in 0..kernel.rows() {
            rows.push(kernel.row(k)[..n_src].to_vec());
        }
        Subgroup::from_rows(&self.source, rows)
    }

    pub fn image(&self) -> Result<Subgroup> {
        let cols = self.matrix.transpose();
        Subgroup::from_rows(&self.target, cols.row_vecs())
    }

    /// Image of a subgroup of the source.
    pub fn image_of(&self, s: &Subgroup) -> Result<Subgroup> {
        if s.group() != &self.source {
            return Err(Error::AmbientMismatch);
        }
        let mut rows = Vec::new();
        for i in 0..s.basis().rows() {
            let x = self.source.element(s.basis().row(i))?;
            rows.push(self.apply(&x)?.coords().to_vec());
        }
        Subgroup::from_rows(&self.target, rows)
    }
}
