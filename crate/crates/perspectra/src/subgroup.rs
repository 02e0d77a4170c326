//! Subgroups of finite abelian groups as canonical integer lattices.
//!
//! A subgroup of G = Z(d_1) + ... + Z(d_r) corresponds to the integer lattice
//! L with diag(d) <= L <= Z^r spanned by its generators together with the
//! relation rows d_i * e_i. The stored basis is the row Hermite normal form of
//! that lattice: square, upper triangular, pivots positive and dividing d_i,
//! entries above each pivot reduced. This form is unique per subgroup, so
//! equality is matrix equality and subgroup ordering is basis-lex.

use std::fmt;
use std::sync::Arc;

use crate::arith::{factorize, gcd};
use crate::error::{Error, Result};
use crate::group::{Element, FiniteAbelianGroup, Group};
use crate::zmat::{smith, IntMat};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    group: Arc<FiniteAbelianGroup>,
    basis: IntMat,
    order: i64,
}

/// Cyclic decomposition type: multiset of prime powers (p, e), sorted by
/// (prime ascending, exponent descending). Two subgroups are isomorphic iff
/// their invariants are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsoInvariants(pub Vec<(i64, u32)>);

impl IsoInvariants {
    pub fn order(&self) -> i64 {
        self.0.iter().fold(1i64, |acc, &(p, e)| acc * p.pow(e))
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    /// Prime-power cyclic orders in canonical order.
    pub fn factors(&self) -> Vec<i64> {
        self.0.iter().map(|&(p, e)| p.pow(e)).collect()
    }
}

impl fmt::Display for IsoInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(p, e)| format!("({p},{e})")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Subgroup {
    pub fn from_generators(group: &Group, gens: &[Element]) -> Result<Subgroup> {
        for g in gens {
            if g.group() != group {
                return Err(Error::AmbientMismatch);
            }
        }
        let rows: Vec<Vec<i64>> = gens.iter().map(|g| g.coords().to_vec()).collect();
        Subgroup::from_rows(group, rows)
    }

    /// Internal constructor from raw coordinate rows (already reduced or not).
    /// The relation lattice diag(d) is adjoined by the Hermite routine.
    pub(crate) fn from_rows(group: &Group, rows: Vec<Vec<i64>>) -> Result<Subgroup> {
        let r = group.rank();
        let mut m = IntMat::from_rows(rows, r);
        let rank = m.hermite_in_place(Some(group.factors()))?;
        debug_assert_eq!(rank, r, "relation injection forces full rank");
        m.truncate_rows(rank);
        let mut order: i128 = group.order() as i128;
        for i in 0..r {
            order /= m.at(i, i) as i128;
        }
        Ok(Subgroup { group: group.clone(), basis: m, order: order as i64 })
    }

    pub fn trivial(group: &Group) -> Subgroup {
        Subgroup::from_rows(group, vec![]).unwrap()
    }

    pub fn whole(group: &Group) -> Subgroup {
        let rows = (0..group.rank())
            .map(|i| {
                let mut r = vec![0i64; group.rank()];
                r[i] = 1;
                r
            })
            .collect();
        Subgroup::from_rows(group, rows).unwrap()
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn basis(&self) -> &IntMat {
        &self.basis
    }

    /// Mask rows (bit j = coordinate j) of the mod-2 basis when the ambient
    /// group is elementary abelian 2 of rank <= 32.
    pub(crate) fn elementary2_masks(&self) -> Option<crate::bitspace::Rows> {
        if self.group.rank() > 32 || self.group.factors().iter().any(|&d| d != 2) {
            return None;
        }
        let r = self.group.rank();
        let mut masks = crate::bitspace::Rows::new();
        for i in 0..r {
            if self.basis.at(i, i) == 1 {
                let mut m = 0u64;
                for j in i..r {
                    if self.basis.at(i, j) != 0 {
                        m |= 1 << j;
                    }
                }
                masks.push(m);
            }
        }
        Some(masks)
    }

    /// Rebuild the canonical subgroup of an elementary abelian 2-group from
    /// rref mask rows: pivot columns take the mask row, the rest the
    /// relation row 2 e_j. This is exactly the Hermite form, constructed
    /// directly.
    pub(crate) fn from_elementary2_masks(group: &Group, masks: &[u64]) -> Subgroup {
        let r = group.rank();
        debug_assert!(group.factors().iter().all(|&d| d == 2));
        let mut basis = IntMat::zero(r, r);
        let mut order = 1i64;
        let mut mask_ix = 0;
        for i in 0..r {
            if mask_ix < masks.len() && masks[mask_ix].trailing_zeros() as usize == i {
                for j in i..r {
                    if masks[mask_ix] & (1 << j) != 0 {
                        basis.set(i, j, 1);
                    }
                }
                order <<= 1;
                mask_ix += 1;
            } else {
                basis.set(i, i, 2);
            }
        }
        debug_assert_eq!(mask_ix, masks.len());
        Subgroup { group: group.clone(), basis, order }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order == self.group.order()
    }

    pub fn contains(&self, x: &Element) -> Result<bool> {
        if x.group() != &self.group {
            return Err(Error::AmbientMismatch);
        }
        let r = self.group.rank();
        let d = self.group.factors();
        let mut res: Vec<i64> = x.coords().to_vec();
        for i in 0..r {
            let piv = self.basis.at(i, i);
            if res[i] % piv != 0 {
                return Ok(false);
            }
            let q = res[i] / piv;
            if q != 0 {
                for j in i..r {
                    let v = (res[j] as i128 - q as i128 * self.basis.at(i, j) as i128).rem_euclid(d[j] as i128);
                    res[j] = v as i64;
                }
            }
        }
        Ok(res.iter().all(|&c| c == 0))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> Result<bool> {
        if self.group != other.group {
            return Err(Error::AmbientMismatch);
        }
        if self.order % gcd(self.order, other.order) != 0 && other.order < self.order {
            return Ok(false);
        }
        for i in 0..self.group.rank() {
            let e = self.group.element(self.basis.row(i))?;
            if !other.contains(&e)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup> {
        if self.group != other.group {
            return Err(Error::AmbientMismatch);
        }
        let mut rows = self.basis.row_vecs();
        rows.extend(other.basis.row_vecs());
        Subgroup::from_rows(&self.group, rows)
    }

    /// Intersection by solving the congruence system through integer normal
    /// forms: kernel rows (u, v) of [B_S; B_T] give u * B_S spanning the
    /// intersection lattice.
    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        if self.group != other.group {
            return Err(Error::AmbientMismatch);
        }
        let r = self.group.rank();
        if r == 0 {
            return Ok(Subgroup::trivial(&self.group));
        }
        let mut stacked = self.basis.clone();
        for i in 0..r {
            stacked.push_row(other.basis.row(i));
        }
        let kernel = stacked.left_kernel()?;
        let mut rows = Vec::with_capacity(kernel.rows());
        for k in 0..kernel.rows() {
            let mut row = vec![0i64; r];
            for j in 0..r {
                let mut acc: i128 = 0;
                for i in 0..r {
                    acc += kernel.at(k, i) as i128 * self.basis.at(i, j) as i128;
                }
                row[j] = acc.rem_euclid(self.group.factors()[j] as i128) as i64;
            }
            rows.push(row);
        }
        Subgroup::from_rows(&self.group, rows)
    }

    /// The subgroup n * S.
    pub fn multiply(&self, n: i64) -> Result<Subgroup> {
        assert!(n >= 1, "multiply expects n >= 1");
        let rows = self
            .basis
            .row_vecs()
            .into_iter()
            .map(|row| {
                row.iter()
                    .zip(self.group.factors())
                    .map(|(&c, &d)| (c as i128 * n as i128).rem_euclid(d as i128) as i64)
                    .collect()
            })
            .collect();
        Subgroup::from_rows(&self.group, rows)
    }

    /// Socle at p: { x in S | p x = 0 }, computed as S intersect G[p].
    pub fn socle(&self, p: i64) -> Result<Subgroup> {
        assert!(crate::arith::is_prime(p), "socle expects a prime");
        let g = &self.group;
        let mut rows = Vec::new();
        for (i, &d) in g.factors().iter().enumerate() {
            if d % p == 0 {
                let mut row = vec![0i64; g.rank()];
                row[i] = d / p;
                rows.push(row);
            }
        }
        let socle_g = Subgroup::from_rows(g, rows)?;
        self.intersect(&socle_g)
    }

    /// Primary component at p: the image of multiplication by the co-p part
    /// of the group exponent.
    pub fn primary_component(&self, p: i64) -> Result<Subgroup> {
        let mut m: i64 = 1;
        for &d in self.group.factors() {
            if d % p != 0 {
                m = crate::arith::lcm(m, d);
            }
        }
        self.multiply(m)
    }

    /// Every element, by walking coset representatives of the coefficient box.
    pub fn elements(&self) -> Vec<Element> {
        let r = self.group.rank();
        if r == 0 {
            return vec![self.group.zero()];
        }
        let radii: Vec<i64> = (0..r).map(|i| self.group.factors()[i] / self.basis.at(i, i)).collect();
        let mut out = Vec::with_capacity(self.order as usize);
        let mut counter = vec![0i64; r];
        loop {
            let mut coords = vec![0i64; r];
            for i in 0..r {
                if counter[i] != 0 {
                    for j in 0..r {
                        let v = (coords[j] as i128 + counter[i] as i128 * self.basis.at(i, j) as i128)
                            .rem_euclid(self.group.factors()[j] as i128);
                        coords[j] = v as i64;
                    }
                }
            }
            out.push(self.group.element(&coords).unwrap());
            let mut i = 0;
            loop {
                if i == r {
                    debug_assert_eq!(out.len() as i64, self.order);
                    return out;
                }
                counter[i] += 1;
                if counter[i] < radii[i] {
                    break;
                }
                counter[i] = 0;
                i += 1;
            }
        }
    }

    /// Minimal generators with their orders, ascending by divisibility
    /// (sigma_1 | sigma_2 | ...), via the Smith form of the relation matrix
    /// expressed in the basis coordinates.
    pub fn minimal_generators(&self) -> Result<Vec<(Element, i64)>> {
        let r = self.group.rank();
        if r == 0 || self.is_trivial() {
            return Ok(vec![]);
        }
        // fast path: elementary-p ambient, pivot-1 rows are the generators
        let d0 = self.group.factors()[0];
        if crate::arith::is_prime(d0) && self.group.factors().iter().all(|&d| d == d0) {
            let mut out = Vec::new();
            for i in 0..r {
                if self.basis.at(i, i) == 1 {
                    out.push((self.group.element(self.basis.row(i))?, d0));
                }
            }
            return Ok(out);
        }
        // relation rows in basis coordinates (exact triangular solve)
        let mut rel = IntMat::zero(r, r);
        for i in 0..r {
            let mut target = vec![0i128; r];
            target[i] = self.group.factors()[i] as i128;
            let mut y = vec![0i128; r];
            for j in 0..r {
                let piv = self.basis.at(j, j) as i128;
                debug_assert_eq!(target[j] % piv, 0);
                let q = target[j] / piv;
                y[j] = q;
                if q != 0 {
                    for k in j..r {
                        target[k] -= q * self.basis.at(j, k) as i128;
                    }
                }
            }
            for j in 0..r {
                rel.set(i, j, i64::try_from(y[j]).map_err(|_| Error::Overflow)?);
            }
        }
        let s = smith(&rel)?;
        let gen_rows = s.q_inv.mul(&self.basis)?;
        let mut out = Vec::new();
        for i in 0..r {
            let sigma = s.diag[i];
            debug_assert!(sigma > 0);
            if sigma > 1 {
                let e = self.group.element(gen_rows.row(i))?;
                debug_assert_eq!(e.order(), sigma);
                out.push((e, sigma));
            }
        }
        out.sort_by_key(|&(_, o)| o);
        Ok(out)
    }

    /// Cyclic decomposition type via the Smith normal form of the
    /// presentation.
    pub fn invariants(&self) -> Result<IsoInvariants> {
        let gens = self.minimal_generators()?;
        let mut parts: Vec<(i64, u32)> = Vec::new();
        for (_, sigma) in &gens {
            for (p, e) in factorize(*sigma) {
                parts.push((p, e));
            }
        }
        parts.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        let inv = IsoInvariants(parts);
        debug_assert_eq!(inv.order(), self.order);
        Ok(inv)
    }

    /// Abstract copy of this subgroup as a standalone group, together with the
    /// generator list realizing abstract coordinate i as gens[i] in the
    /// ambient group. Only defined when the canonical factor order of the
    /// abstract group matches the descending generator orders (always true for
    /// p-groups, which is where this is used).
    pub fn abstract_pgroup(&self) -> Result<(Group, Vec<Element>)> {
        let mut gens = self.minimal_generators()?;
        gens.reverse(); // descending orders = canonical factor order for p-groups
        let orders: Vec<i64> = gens.iter().map(|&(_, o)| o).collect();
        let abs = FiniteAbelianGroup::new(&orders)?;
        if abs.factors() != orders.as_slice() {
            return Err(Error::precondition("abstract coordinates require a p-group"));
        }
        Ok((abs, gens.into_iter().map(|(g, _)| g).collect()))
    }

    /// Express an element of this subgroup in the coordinates of
    /// `abstract_pgroup`.
    pub fn to_abstract_coords(&self, gens: &[Element], abs: &Group, x: &Element) -> Result<Element> {
        let r = self.group.rank();
        let mut rows: Vec<Vec<i64>> = gens.iter().map(|g| g.coords().to_vec()).collect();
        for (i, &d) in self.group.factors().iter().enumerate() {
            let mut rel = vec![0i64; r];
            rel[i] = d;
            rows.push(rel);
        }
        let m = IntMat::from_rows(rows, r);
        let y = m
            .solve_left(x.coords())?
            .ok_or_else(|| Error::precondition("element not in subgroup"))?;
        abs.element(&y[..gens.len()])
    }

    /// Map a subgroup of the abstract group back into the ambient group.
    pub fn from_abstract(&self, gens: &[Element], sub: &Subgroup) -> Result<Subgroup> {
        let mut rows = Vec::new();
        for i in 0..sub.basis().rows() {
            let mut acc = self.group.zero();
            for (j, g) in gens.iter().enumerate() {
                acc = acc.add(&g.scale(sub.basis().at(i, j)))?;
            }
            rows.push(acc.coords().to_vec());
        }
        Subgroup::from_rows(&self.group, rows)
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.minimal_generators().map_err(|_| fmt::Error)?;
        let parts: Vec<String> = gens.iter().map(|(g, _)| g.to_string()).collect();
        write!(f, "gens[{}]", parts.join(";"))
    }
}

/// Subgroup literal "gens[(1,0,0);(0,1,0)]" relative to a group.
pub fn parse_subgroup(group: &Group, s: &str) -> Result<Subgroup> {
    let s = s.trim();
    let inner = s
        .strip_prefix("gens[")
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::parse(0, format!("expected gens[...], got {s:?}")))?;
    let mut gens = Vec::new();
    if !inner.trim().is_empty() {
        for part in inner.split(';') {
            gens.push(crate::group::parse_element(group, part)?);
        }
    }
    Subgroup::from_generators(group, &gens)
}

/// True iff the given parts decompose G as an internal direct sum: the order
/// product matches |G| and the iterated sum is the whole group.
pub fn is_direct_sum(group: &Group, parts: &[&Subgroup]) -> Result<bool> {
    let mut prod: i128 = 1;
    for part in parts {
        if part.group() != group {
            return Err(Error::AmbientMismatch);
        }
        prod *= part.order() as i128;
        if prod > group.order() as i128 {
            return Ok(false);
        }
    }
    if prod != group.order() as i128 {
        return Ok(false);
    }
    // elementary 2-groups: the sum has order 2^rank of the stacked mod-2 basis
    if group.rank() <= 32 && group.factors().iter().all(|&d| d == 2) {
        let mut masks = crate::bitspace::Rows::new();
        for part in parts {
            masks.extend(part.elementary2_masks().expect("elementary ambient").as_slice());
        }
        return Ok(masks.rref() == group.rank());
    }
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for part in parts {
        rows.extend(part.basis().row_vecs());
    }
    let total = Subgroup::from_rows(group, rows)?;
    Ok(total.is_whole())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group;
    use std::collections::BTreeSet;

    /// Independent oracle: the set of all Z-combinations of the generators,
    /// by closure under addition.
    fn span_by_closure(group: &Group, gens: &[Element]) -> BTreeSet<Vec<i64>> {
        let mut set: BTreeSet<Vec<i64>> = BTreeSet::new();
        set.insert(group.zero().coords().to_vec());
        let mut frontier = vec![group.zero()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.add(g).unwrap();
                if set.insert(y.coords().to_vec()) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    #[test]
    fn from_generators_examples() {
        // G = Z(4)+Z(2), gens {(2,0),(0,1)}: order 4, invariants {(2,1),(2,1)}
        let g = parse_group("Z4+Z2").unwrap();
        let gens = vec![g.element(&[2, 0]).unwrap(), g.element(&[0, 1]).unwrap()];
        let closure = span_by_closure(&g, &gens);
        assert_eq!(closure.len(), 4);
        let s = Subgroup::from_generators(&g, &gens).unwrap();
        assert_eq!(s.order(), 4);
        assert_eq!(s.invariants().unwrap(), IsoInvariants(vec![(2, 1), (2, 1)]));

        assert_eq!(Subgroup::trivial(&g).order(), 1);
        assert!(Subgroup::whole(&g).is_whole());
    }

    #[test]
    fn canonical_form_is_stable_under_generator_presentation() {
        let g = parse_group("Z8+Z4+Z3").unwrap();
        let a = g.element(&[2, 1, 1]).unwrap();
        let b = g.element(&[4, 2, 0]).unwrap();
        let s1 = Subgroup::from_generators(&g, &[a.clone(), b.clone()]).unwrap();
        let s2 = Subgroup::from_generators(&g, &[b.clone(), a.clone(), a.add(&b).unwrap(), a.clone()]).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn membership_matches_enumeration() {
        let g = parse_group("Z4+Z2").unwrap();
        let s = Subgroup::from_generators(&g, &[g.element(&[1, 1]).unwrap()]).unwrap();
        let members: BTreeSet<Vec<i64>> =
            s.elements().iter().map(|e| e.coords().to_vec()).collect();
        for x in g.elements() {
            assert_eq!(s.contains(&x).unwrap(), members.contains(x.coords()));
        }
        assert_eq!(members.len() as i64, s.order());
    }

    #[test]
    fn sum_and_intersection_examples() {
        // in Z(2)^2: <(1,0)> + <(0,1)> = whole; <(1,0)> /\ <(1,1)> trivial
        let g = parse_group("Z2+Z2").unwrap();
        let a = Subgroup::from_generators(&g, &[g.element(&[1, 0]).unwrap()]).unwrap();
        let b = Subgroup::from_generators(&g, &[g.element(&[0, 1]).unwrap()]).unwrap();
        let c = Subgroup::from_generators(&g, &[g.element(&[1, 1]).unwrap()]).unwrap();
        assert!(a.sum(&b).unwrap().is_whole());
        assert!(a.intersect(&c).unwrap().is_trivial());
        assert_eq!(a.intersect(&a).unwrap(), a);
    }

    #[test]
    fn intersection_matches_element_enumeration() {
        let g = parse_group("Z8+Z4+Z2").unwrap();
        let subs: Vec<Subgroup> = vec![
            Subgroup::from_generators(&g, &[g.element(&[1, 1, 0]).unwrap()]).unwrap(),
            Subgroup::from_generators(&g, &[g.element(&[2, 1, 1]).unwrap(), g.element(&[0, 2, 0]).unwrap()]).unwrap(),
            Subgroup::from_generators(&g, &[g.element(&[4, 0, 1]).unwrap(), g.element(&[0, 1, 1]).unwrap()]).unwrap(),
            Subgroup::whole(&g),
        ];
        for s in &subs {
            for t in &subs {
                let meet = s.intersect(t).unwrap();
                let expected: BTreeSet<Vec<i64>> = s
                    .elements()
                    .iter()
                    .filter(|e| t.contains(e).unwrap())
                    .map(|e| e.coords().to_vec())
                    .collect();
                let got: BTreeSet<Vec<i64>> = meet.elements().iter().map(|e| e.coords().to_vec()).collect();
                assert_eq!(expected, got);
            }
        }
    }

    #[test]
    fn invariants_examples() {
        let g = parse_group("Z4+Z2").unwrap();
        assert_eq!(Subgroup::whole(&g).invariants().unwrap(), IsoInvariants(vec![(2, 2), (2, 1)]));
        // <(1,1)> has order 4, cyclic
        let s = Subgroup::from_generators(&g, &[g.element(&[1, 1]).unwrap()]).unwrap();
        assert_eq!(s.invariants().unwrap(), IsoInvariants(vec![(2, 2)]));
        // <(2,1)> has order 2, cyclic
        let t = Subgroup::from_generators(&g, &[g.element(&[2, 1]).unwrap()]).unwrap();
        assert_eq!(t.invariants().unwrap(), IsoInvariants(vec![(2, 1)]));
    }

    #[test]
    fn socle_and_multiply_examples() {
        let g = parse_group("Z4+Z2").unwrap();
        let whole = Subgroup::whole(&g);
        let socle = whole.socle(2).unwrap();
        assert_eq!(socle.order(), 4);
        assert_eq!(
            socle,
            Subgroup::from_generators(&g, &[g.element(&[2, 0]).unwrap(), g.element(&[0, 1]).unwrap()]).unwrap()
        );
        let doubled = whole.multiply(2).unwrap();
        assert_eq!(doubled.order(), 2);
        assert_eq!(doubled, Subgroup::from_generators(&g, &[g.element(&[2, 0]).unwrap()]).unwrap());

        let t = parse_group("Z1").unwrap();
        assert!(Subgroup::whole(&t).socle(3).unwrap().is_trivial());
    }

    #[test]
    fn direct_sum_examples() {
        let g = parse_group("Z2+Z2").unwrap();
        let a = Subgroup::from_generators(&g, &[g.element(&[1, 0]).unwrap()]).unwrap();
        let b = Subgroup::from_generators(&g, &[g.element(&[0, 1]).unwrap()]).unwrap();
        assert!(is_direct_sum(&g, &[&a, &b]).unwrap());
        assert!(!is_direct_sum(&g, &[&a, &a]).unwrap());

        // Z(2)+Z(4) = <(1,2)> + <(0,1)> in spec order: canonical [4,2] makes
        // these (2,1) and (1,0).
        let h = parse_group("Z2+Z4").unwrap();
        assert_eq!(h.factors(), &[4, 2]);
        let s = Subgroup::from_generators(&h, &[h.element(&[2, 1]).unwrap()]).unwrap();
        let t = Subgroup::from_generators(&h, &[h.element(&[1, 0]).unwrap()]).unwrap();
        assert_eq!(s.order() * t.order(), 8);
        assert!(is_direct_sum(&h, &[&s, &t]).unwrap());
    }

    #[test]
    fn minimal_generators_regenerate() {
        let g = parse_group("Z8+Z4+Z2+Z9").unwrap();
        let s = Subgroup::from_generators(
            &g,
            &[g.element(&[2, 1, 1, 3]).unwrap(), g.element(&[4, 0, 0, 0]).unwrap(), g.element(&[0, 2, 0, 6]).unwrap()],
        )
        .unwrap();
        let gens = s.minimal_generators().unwrap();
        let regenerated =
            Subgroup::from_generators(&g, &gens.iter().map(|(e, _)| e.clone()).collect::<Vec<_>>()).unwrap();
        assert_eq!(regenerated, s);
        let prod: i64 = gens.iter().map(|&(_, o)| o).product();
        assert_eq!(prod, s.order());
        for w in gens.windows(2) {
            assert_eq!(w[1].1 % w[0].1, 0);
        }
    }

    #[test]
    fn subgroup_literal_round_trip() {
        let g = parse_group("Z4+Z2").unwrap();
        for lit in ["gens[(1,1)]", "gens[]", "gens[(2,0);(0,1)]"] {
            let s = parse_subgroup(&g, lit).unwrap();
            let printed = s.to_string();
            let back = parse_subgroup(&g, &printed).unwrap();
            assert_eq!(s, back);
        }
    }
}
