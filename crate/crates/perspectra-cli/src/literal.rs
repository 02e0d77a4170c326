//! User-facing group literals. The library canonicalizes groups (CRT split,
//! primes ascending, exponents descending), so "Z2+Z4" becomes [4, 2]
//! internally; this layer keeps elements and subgroups in the coordinate
//! order the user wrote, mapping in and out of canonical coordinates.

use perspectra::{Error, Group, Result, Subgroup};

pub struct GroupLiteral {
    pub user_orders: Vec<i64>,
    pub group: Group,
    /// canonical coordinate -> (user slot, prime power part)
    parts: Vec<(usize, i64)>,
}

impl GroupLiteral {
    pub fn parse(s: &str) -> Result<GroupLiteral> {
        let s = s.trim();
        let mut user_orders = Vec::new();
        if s != "Z1" {
            for part in s.split('+') {
                let trimmed = part.trim();
                let inner = trimmed
                    .strip_prefix('Z')
                    .ok_or_else(|| Error::parse(0, format!("expected Zn, got {trimmed:?}")))?;
                let d: i64 =
                    inner.parse().map_err(|_| Error::parse(0, format!("bad order {inner:?}")))?;
                user_orders.push(d);
            }
        }
        let group = perspectra::group::FiniteAbelianGroup::new(&user_orders)?;
        // replicate the canonical sort (prime ascending, exponent descending,
        // stable) over (slot, part) pairs to learn where each part landed
        let mut tagged: Vec<(i64, u32, usize, i64)> = Vec::new();
        for (slot, &d) in user_orders.iter().enumerate() {
            for (p, e) in perspectra::arith::factorize(d) {
                tagged.push((p, e, slot, p.pow(e)));
            }
        }
        tagged.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        let parts: Vec<(usize, i64)> = tagged.iter().map(|&(_, _, slot, q)| (slot, q)).collect();
        debug_assert_eq!(
            parts.iter().map(|&(_, q)| q).collect::<Vec<_>>(),
            group.factors().to_vec()
        );
        Ok(GroupLiteral { user_orders, group, parts })
    }

    pub fn user_rank(&self) -> usize {
        self.user_orders.len()
    }

    /// "(1,0,3)" in the user's coordinate order.
    pub fn parse_element(&self, s: &str) -> Result<perspectra::Element> {
        let s = s.trim();
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::parse(0, format!("expected (c1,...,cn), got {s:?}")))?;
        let user: Vec<i64> = if inner.trim().is_empty() {
            vec![]
        } else {
            inner
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| Error::parse(0, format!("bad coordinate {t:?}"))))
                .collect::<Result<_>>()?
        };
        if user.len() != self.user_rank() {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coordinates, group has {} slots",
                user.len(),
                self.user_rank()
            )));
        }
        let coords: Vec<i64> = self.parts.iter().map(|&(slot, q)| user[slot].rem_euclid(q)).collect();
        self.group.element(&coords)
    }

    /// Map a canonical element back to user coordinates (CRT per slot).
    pub fn format_element(&self, e: &perspectra::Element) -> String {
        let mut user = vec![0i64; self.user_rank()];
        for (slot_order, slot_ix) in self.user_orders.iter().zip(0..) {
            // combine the residues of this slot's parts
            let mut value: i64 = 0;
            let mut modulus: i64 = 1;
            for (canon_ix, &(slot, q)) in self.parts.iter().enumerate() {
                if slot != slot_ix {
                    continue;
                }
                let r = e.coords()[canon_ix];
                // CRT: value mod modulus, r mod q
                let inv = perspectra::arith::mod_inverse(modulus.rem_euclid(q), q)
                    .expect("prime power parts are coprime");
                let delta = ((r - value).rem_euclid(q) * inv).rem_euclid(q);
                value += modulus * delta;
                modulus *= q;
            }
            user[slot_ix] = value.rem_euclid(*slot_order);
        }
        let coords: Vec<String> = user.iter().map(|c| c.to_string()).collect();
        format!("({})", coords.join(","))
    }

    /// "gens[(1,0);(0,1)]" in user coordinates.
    pub fn parse_subgroup(&self, s: &str) -> Result<Subgroup> {
        let s = s.trim();
        let inner = s
            .strip_prefix("gens[")
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::parse(0, format!("expected gens[...], got {s:?}")))?;
        let mut gens = Vec::new();
        if !inner.trim().is_empty() {
            for part in inner.split(';') {
                gens.push(self.parse_element(part)?);
            }
        }
        Subgroup::from_generators(&self.group, &gens)
    }

    pub fn format_subgroup(&self, s: &Subgroup) -> Result<String> {
        let gens = s.minimal_generators()?;
        let parts: Vec<String> = gens.iter().map(|(g, _)| self.format_element(g)).collect();
        Ok(format!("gens[{}]", parts.join(";")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn user_order_round_trip() {
        let lit = GroupLiteral::parse("Z2+Z4").unwrap();
        assert_eq!(lit.group.factors(), &[4, 2]);
        let e = lit.parse_element("(1,2)").unwrap();
        assert_eq!(e.coords(), &[2, 1]);
        assert_eq!(lit.format_element(&e), "(1,2)");
    }

    #[test]
    fn crt_slots() {
        let lit = GroupLiteral::parse("Z12").unwrap();
        assert_eq!(lit.group.factors(), &[4, 3]);
        let e = lit.parse_element("(5)").unwrap();
        assert_eq!(e.coords(), &[1, 2]);
        assert_eq!(lit.format_element(&e), "(5)");
    }

    #[test]
    fn subgroup_round_trip() {
        let lit = GroupLiteral::parse("Z2+Z4").unwrap();
        let s = lit.parse_subgroup("gens[(1,2)]").unwrap();
        let printed = lit.format_subgroup(&s).unwrap();
        let back = lit.parse_subgroup(&printed).unwrap();
        assert_eq!(s, back);
    }
}
