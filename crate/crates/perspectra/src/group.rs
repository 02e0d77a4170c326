//! Finite abelian groups in canonical primary-decomposed form, and their
//! elements.
//!
//! A group is an ordered list of prime-power cyclic orders. Construction
//! splits arbitrary orders into prime-power parts (CRT) and sorts them by
//! (prime ascending, exponent descending), so e.g. `Z12 = Z4 + Z3` is always
//! stored as `[4, 3]`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::arith::{factorize, gcd, lcm, rem_euclid, valuation};
use crate::error::{Error, Result};

pub const MAX_GROUP_ORDER: i64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteAbelianGroup {
    factors: Vec<i64>,
    order: i64,
    /// Prime of each factor, parallel to `factors`.
    factor_primes: Vec<i64>,
    /// Distinct primes, ascending.
    primes: Vec<i64>,
}

pub type Group = Arc<FiniteAbelianGroup>;

impl FiniteAbelianGroup {
    /// Splits each order into prime-power parts and canonicalizes. Orders
    /// below 2 are rejected; the empty list yields the trivial group.
    pub fn new(orders: &[i64]) -> Result<Group> {
        let mut factors = Vec::new();
        for &d in orders {
            if d < 2 {
                return Err(Error::precondition(format!("cyclic order {d} is not >= 2")));
            }
            for (p, e) in factorize(d) {
                factors.push((p, e));
            }
        }
        factors.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        let mut order: i64 = 1;
        let factor_primes: Vec<i64> = factors.iter().map(|&(p, _)| p).collect();
        let mut primes = factor_primes.clone();
        primes.dedup();
        let factors: Vec<i64> = factors
            .into_iter()
            .map(|(p, e)| p.checked_pow(e).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        for &d in &factors {
            order = order.checked_mul(d).ok_or(Error::Overflow)?;
            if order > MAX_GROUP_ORDER {
                return Err(Error::CapExceeded { what: "group order", cap: MAX_GROUP_ORDER, actual: order });
            }
        }
        Ok(Arc::new(FiniteAbelianGroup { factors, order, factor_primes, primes }))
    }

    pub fn trivial() -> Group {
        FiniteAbelianGroup::new(&[]).unwrap()
    }

    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Exponent of the group: lcm of the cyclic orders.
    pub fn exponent(&self) -> i64 {
        self.factors.iter().fold(1, |acc, &d| lcm(acc, d))
    }

    /// Distinct primes dividing the order, ascending.
    pub fn primes(&self) -> &[i64] {
        &self.primes
    }

    /// Prime of the i-th cyclic factor.
    pub fn factor_prime(&self, i: usize) -> i64 {
        self.factor_primes[i]
    }

    /// Indices of the coordinates belonging to prime p.
    pub fn prime_coordinates(&self, p: i64) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.factors[i] % p == 0).collect()
    }

    pub fn zero(self: &Group) -> Element {
        Element { group: self.clone(), coords: vec![0; self.rank()] }
    }

    pub fn element(self: &Group, coords: &[i64]) -> Result<Element> {
        if coords.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coordinates, group rank is {}",
                coords.len(),
                self.rank()
            )));
        }
        let coords = coords.iter().zip(&self.factors).map(|(&c, &d)| rem_euclid(c, d)).collect();
        Ok(Element { group: self.clone(), coords })
    }

    /// Standard generator e_i.
    pub fn generator(self: &Group, i: usize) -> Element {
        let mut coords = vec![0; self.rank()];
        coords[i] = 1;
        Element { group: self.clone(), coords }
    }

    /// Iterates every element (mixed-radix counter). Intended for small groups.
    pub fn elements(self: &Group) -> impl Iterator<Item = Element> {
        let g = self.clone();
        let order = self.order() as u64;
        (0..order).map(move |mut ix| {
            let mut coords = vec![0i64; g.rank()];
            for (i, &d) in g.factors.iter().enumerate() {
                coords[i] = (ix % d as u64) as i64;
                ix /= d as u64;
            }
            Element { group: g.clone(), coords }
        })
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "Z1");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z{d}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    /// Group literal syntax: "Z4+Z2+Z9". "Z1" denotes the trivial group.
    fn from_str(s: &str) -> Result<FiniteAbelianGroup> {
        let s = s.trim();
        if s == "Z1" {
            return Ok(FiniteAbelianGroup { factors: vec![], order: 1, factor_primes: vec![], primes: vec![] });
        }
        let mut orders = Vec::new();
        let mut pos = 0;
        for part in s.split('+') {
            let trimmed = part.trim();
            let inner = trimmed
                .strip_prefix('Z')
                .ok_or_else(|| Error::parse(pos, format!("expected Zn, got {trimmed:?}")))?;
            let d: i64 = inner.parse().map_err(|_| Error::parse(pos, format!("bad order {inner:?}")))?;
            orders.push(d);
            pos += part.len() + 1;
        }
        FiniteAbelianGroup::new(&orders).map(|g| (*g).clone())
    }
}

/// Parse a group literal directly to the shared handle.
pub fn parse_group(s: &str) -> Result<Group> {
    FiniteAbelianGroup::from_str(s).map(Arc::new)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    group: Group,
    coords: Vec<i64>,
}

impl Element {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        if self.group != other.group {
            return Err(Error::AmbientMismatch);
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .zip(self.group.factors())
            .map(|((&a, &b), &d)| rem_euclid(a + b, d))
            .collect();
        Ok(Element { group: self.group.clone(), coords })
    }

    pub fn neg(&self) -> Element {
        let coords = self
            .coords
            .iter()
            .zip(self.group.factors())
            .map(|(&a, &d)| rem_euclid(-a, d))
            .collect();
        Element { group: self.group.clone(), coords }
    }

    pub fn scale(&self, n: i64) -> Element {
        let coords = self
            .coords
            .iter()
            .zip(self.group.factors())
            .map(|(&a, &d)| {
                let v = (a as i128 * n as i128).rem_euclid(d as i128);
                v as i64
            })
            .collect();
        Element { group: self.group.clone(), coords }
    }

    /// Least n >= 1 with n*x = 0: lcm over coordinates of d_i / gcd(d_i, x_i).
    pub fn order(&self) -> i64 {
        self.coords
            .iter()
            .zip(self.group.factors())
            .fold(1, |acc, (&c, &d)| lcm(acc, d / gcd(d, c)))
    }

    /// Largest k with x in p^k G, or None for infinite height (the p-part of
    /// x is zero, in particular x = 0).
    pub fn p_height(&self, p: i64) -> Option<u32> {
        assert!(crate::arith::is_prime(p), "p_height expects a prime");
        let mut height: Option<u32> = None;
        for (&c, &d) in self.coords.iter().zip(self.group.factors()) {
            if d % p != 0 {
                continue;
            }
            if c == 0 {
                continue;
            }
            let e = valuation(d, p);
            let v = valuation(c, p).min(e);
            // x_i in p^k (Z/p^e) iff v_p(x_i) >= min(k, e); since v < e here,
            // the coordinate caps the height at v.
            if v < e {
                height = Some(height.map_or(v, |h| h.min(v)));
            }
        }
        height
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Element literal "(1,0,3)" relative to a given group.
pub fn parse_element(group: &Group, s: &str) -> Result<Element> {
    let s = s.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::parse(0, format!("expected (c1,...,cn), got {s:?}")))?;
    let coords: Vec<i64> = if inner.trim().is_empty() {
        vec![]
    } else {
        inner
            .split(',')
            .map(|t| t.trim().parse().map_err(|_| Error::parse(0, format!("bad coordinate {t:?}"))))
            .collect::<Result<_>>()?
    };
    group.element(&coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_group_crt_splits() {
        // 12 = 4 * 3
        let g = FiniteAbelianGroup::new(&[12]).unwrap();
        assert_eq!(g.factors(), &[4, 3]);
        assert_eq!(g.order(), 12);
    }

    #[test]
    fn make_group_trivial() {
        let g = FiniteAbelianGroup::new(&[]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.rank(), 0);
    }

    #[test]
    fn make_group_sort_rule() {
        let g = FiniteAbelianGroup::new(&[2, 4, 9]).unwrap();
        assert_eq!(g.factors(), &[4, 2, 9]);
        assert_eq!(g.order(), 72);
    }

    #[test]
    fn make_group_rejects_bad_orders() {
        assert!(FiniteAbelianGroup::new(&[1]).is_err());
        assert!(FiniteAbelianGroup::new(&[0]).is_err());
        assert!(FiniteAbelianGroup::new(&[-3]).is_err());
    }

    /// Independent oracle: order of x by enumerating multiples.
    fn order_by_enumeration(x: &Element) -> i64 {
        let mut acc = x.clone();
        let mut n = 1;
        while !acc.is_zero() {
            acc = acc.add(x).unwrap();
            n += 1;
        }
        n
    }

    #[test]
    fn element_order_examples() {
        // Z(4)+Z(2) is canonical [4, 2]; (1,1) there has order 4.
        let g = FiniteAbelianGroup::new(&[4, 2]).unwrap();
        let x = g.element(&[1, 1]).unwrap();
        assert_eq!(order_by_enumeration(&x), 4);
        assert_eq!(x.order(), 4);

        assert_eq!(g.zero().order(), 1);

        let y = g.element(&[2, 1]).unwrap();
        assert_eq!(order_by_enumeration(&y), 2);
        assert_eq!(y.order(), 2);
    }

    /// Independent oracle: height by solving p^k y = x over all y.
    fn height_by_enumeration(g: &Group, x: &Element, p: i64) -> Option<u32> {
        if x.is_zero() {
            return None;
        }
        let mut k = 0u32;
        loop {
            let pk = p.pow(k + 1);
            let hit = g.elements().any(|y| &y.scale(pk) == x);
            if !hit {
                return Some(k);
            }
            k += 1;
            if pk > g.order() {
                return None;
            }
        }
    }

    #[test]
    fn p_height_examples() {
        // Z(2)+Z(4) canonicalizes to [4, 2]; (0,2) in the spec's order is
        // coordinate (2, 0) here.
        let g = FiniteAbelianGroup::new(&[2, 4]).unwrap();
        assert_eq!(g.factors(), &[4, 2]);
        let x = g.element(&[2, 0]).unwrap();
        assert_eq!(height_by_enumeration(&g, &x, 2), Some(1));
        assert_eq!(x.p_height(2), Some(1));

        let y = g.element(&[2, 1]).unwrap();
        assert_eq!(height_by_enumeration(&g, &y, 2), Some(0));
        assert_eq!(y.p_height(2), Some(0));

        assert_eq!(g.zero().p_height(2), None);
    }

    #[test]
    fn group_literal_round_trip() {
        for s in ["Z4+Z2+Z9", "Z1", "Z8"] {
            let g: FiniteAbelianGroup = s.parse().unwrap();
            let printed = g.to_string();
            let g2: FiniteAbelianGroup = printed.parse().unwrap();
            assert_eq!(g, g2);
        }
    }
}
