//! Summand detection and enumeration, diagonals, the brute-force
//! common-complement oracle, and the modular-restriction step. This layer is
//! the ground truth the constructive algorithms are tested against.

use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashSet;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::group::{Element, Group};
use crate::hom::Homomorphism;
use crate::subgroup::{is_direct_sum, Subgroup};
use crate::zmat::IntMat;
use crate::Caps;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummandWitness {
    pub subgroup: Subgroup,
    pub complement: Subgroup,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessStats {
    pub candidates_scanned: u64,
    pub max_scanned_per_pair: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PerspectivityReport {
    pub group: String,
    pub status: PerspectivityStatus,
    pub pairs_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<(String, String)>,
    pub witness_stats: WitnessStats,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PerspectivityStatus {
    Perspective,
    Counterexample,
}

/// Retraction-based summand test: S is a direct summand of G iff the
/// inclusion splits, i.e. there is a hom r: G -> S restricting to the
/// identity on S. The retraction is found by solving one linear congruence
/// system per minimal generator; its kernel is the returned complement.
/// This is the idempotent fast path; a lazy search over canonical subgroups
/// backs it up should the verification of the constructed complement fail.
pub fn find_complement(s: &Subgroup) -> Result<Option<Subgroup>> {
    let g = s.group();
    if s.is_whole() {
        return Ok(Some(Subgroup::trivial(g)));
    }
    if s.is_trivial() {
        return Ok(Some(Subgroup::whole(g)));
    }
    match retraction_idempotent(s)? {
        Some(e) => {
            let k = e.kernel()?;
            if is_direct_sum(g, &[s, &k])? {
                Ok(Some(k))
            } else {
                // should be unreachable; fall back to exhaustive search
                find_complement_by_search(s, Caps::default().subgroup_enumeration)
            }
        }
        None => Ok(None),
    }
}

/// The idempotent endomorphism with image S induced by a retraction, when S
/// is a summand.
pub fn retraction_idempotent(s: &Subgroup) -> Result<Option<Homomorphism>> {
    let g = s.group();
    let r = g.rank();
    let gens = s.minimal_generators()?;
    let m = gens.len();
    let mut coeffs: Vec<Vec<i64>> = Vec::with_capacity(m);
    for i in 0..m {
        let sigma = gens[i].1;
        // unknowns: b_0..b_{r-1} (entry a_l = t_l * b_l), then one slack per
        // equation; equations indexed by generators j.
        let mut rows: Vec<Vec<i64>> = Vec::with_capacity(r + m);
        for l in 0..r {
            let t = sigma / crate::arith::gcd(sigma, g.factors()[l]);
            let mut row = vec![0i64; m];
            for (j, (gj, _)) in gens.iter().enumerate() {
                row[j] = ((t as i128 * gj.coords()[l] as i128).rem_euclid(sigma as i128)) as i64;
            }
            rows.push(row);
        }
        for j in 0..m {
            let mut row = vec![0i64; m];
            row[j] = sigma;
            rows.push(row);
        }
        let mat = IntMat::from_rows(rows, m);
        let mut rhs = vec![0i64; m];
        rhs[i] = 1;
        let Some(sol) = mat.solve_left(&rhs)? else {
            return Ok(None);
        };
        let mut a = vec![0i64; r];
        for l in 0..r {
            let t = sigma / crate::arith::gcd(sigma, g.factors()[l]);
            a[l] = ((t as i128 * sol[l] as i128).rem_euclid(sigma as i128)) as i64;
        }
        coeffs.push(a);
    }
    // endomorphism x |-> sum_i phi_i(x) g_i
    let mut matrix = vec![vec![0i64; r]; r];
    for (row, m_row) in matrix.iter_mut().enumerate() {
        let d = g.factors()[row];
        for (l, entry) in m_row.iter_mut().enumerate() {
            let mut acc: i128 = 0;
            for i in 0..m {
                acc += coeffs[i][l] as i128 * gens[i].0.coords()[row] as i128;
            }
            *entry = acc.rem_euclid(d as i128) as i64;
        }
    }
    let e = Homomorphism::new(g, g, matrix)?;
    debug_assert!(e.is_idempotent()?);
    Ok(Some(e))
}

/// Exhaustive complement search in canonical subgroup order (the slow path;
/// also the independent oracle for `find_complement`).
pub fn find_complement_by_search(s: &Subgroup, cap: i64) -> Result<Option<Subgroup>> {
    let g = s.group();
    let lattice = SubgroupLattice::enumerate(g, cap)?;
    let want = g.order() / s.order();
    for t in lattice.of_order(want) {
        if is_direct_sum(g, &[s, t])? {
            return Ok(Some(t.clone()));
        }
    }
    Ok(None)
}

/// All subgroups of G in canonical (basis-lexicographic) order, found by
/// closing the trivial subgroup under joins with cyclic subgroups.
#[derive(Debug)]
pub struct SubgroupLattice {
    group: Group,
    subgroups: Vec<Subgroup>,
}

impl SubgroupLattice {
    pub fn enumerate(group: &Group, cap: i64) -> Result<SubgroupLattice> {
        if group.order() > cap {
            return Err(Error::CapExceeded { what: "subgroup enumeration |G|", cap, actual: group.order() });
        }
        let elements: Vec<Element> = group.elements().collect();
        let trivial = Subgroup::trivial(group);
        let mut seen: HashSet<IntMat> = HashSet::new();
        seen.insert(trivial.basis().clone());
        let mut queue = vec![trivial];
        let mut out = Vec::new();
        while let Some(s) = queue.pop() {
            for x in &elements {
                if x.is_zero() || s.contains(x)? {
                    continue;
                }
                let mut rows = s.basis().row_vecs();
                rows.push(x.coords().to_vec());
                let joined = Subgroup::from_rows(group, rows)?;
                if seen.insert(joined.basis().clone()) {
                    queue.push(joined);
                }
            }
            out.push(s);
        }
        out.sort();
        Ok(SubgroupLattice { group: group.clone(), subgroups: out })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn all(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn of_order(&self, n: i64) -> impl Iterator<Item = &Subgroup> {
        self.subgroups.iter().filter(move |s| s.order() == n)
    }
}

/// Every direct summand of G exactly once, each paired with one complement.
pub fn enumerate_summands(group: &Group, caps: &Caps) -> Result<Vec<SummandWitness>> {
    let lattice = SubgroupLattice::enumerate(group, caps.subgroup_enumeration)?;
    let mut out = Vec::new();
    for s in lattice.all() {
        if let Some(complement) = find_complement(s)? {
            out.push(SummandWitness { subgroup: s.clone(), complement });
        }
    }
    Ok(out)
}

/// D(delta) = { x + delta(x) | x in H } for an isomorphism delta: H -> K
/// presented as an endomorphism of G. Verifies G = H + K (direct), that delta
/// is injective on H with image exactly K, and both postcondition splittings.
pub fn diagonal(group: &Group, h: &Subgroup, k: &Subgroup, delta: &Homomorphism) -> Result<Subgroup> {
    if !is_direct_sum(group, &[h, k])? {
        return Err(Error::precondition("G = H + K must be a direct sum"));
    }
    if !delta.is_endomorphism() || delta.source() != group {
        return Err(Error::precondition("delta must be an endomorphism of G"));
    }
    let image = delta.image_of(h)?;
    if image != *k {
        return Err(Error::precondition("delta(H) must equal K (image proper)"));
    }
    if image.order() != h.order() {
        return Err(Error::precondition("delta must be injective on H (kernel nonzero)"));
    }
    let gens = h.minimal_generators()?;
    let mut rows = Vec::with_capacity(gens.len());
    for (x, _) in &gens {
        let d = x.add(&delta.apply(x)?)?;
        rows.push(d.coords().to_vec());
    }
    let diag = Subgroup::from_rows(group, rows)?;
    debug_assert!(is_direct_sum(group, &[h, &diag])?);
    debug_assert!(is_direct_sum(group, &[k, &diag])?);
    Ok(diag)
}

/// Projection onto `onto` along `along` (G = onto + along direct), as an
/// endomorphism of G.
fn projection(group: &Group, onto: &Subgroup, along: &Subgroup) -> Result<Homomorphism> {
    let r = group.rank();
    let onto_gens = onto.minimal_generators()?;
    let along_gens = along.minimal_generators()?;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for (e, _) in onto_gens.iter().chain(along_gens.iter()) {
        rows.push(e.coords().to_vec());
    }
    for (i, &d) in group.factors().iter().enumerate() {
        let mut rel = vec![0i64; r];
        rel[i] = d;
        rows.push(rel);
    }
    let mat = IntMat::from_rows(rows, r);
    let mut matrix = vec![vec![0i64; r]; r];
    for col in 0..r {
        let mut rhs = vec![0i64; r];
        rhs[col] = 1;
        let sol = mat
            .solve_left(&rhs)?
            .ok_or_else(|| Error::precondition("projection solve failed; parts do not span"))?;
        let mut image = group.zero();
        for (i, (e, _)) in onto_gens.iter().enumerate() {
            image = image.add(&e.scale(sol[i]))?;
        }
        for (row, m_row) in matrix.iter_mut().enumerate() {
            m_row[col] = image.coords()[row];
        }
    }
    Homomorphism::new(group, group, matrix)
}

/// The unique isomorphism delta: H -> K with D = D(delta), returned as an
/// endomorphism of G (zero on K). Errors when D is not a diagonal with
/// respect to H and K.
pub fn diagonal_inverse(group: &Group, h: &Subgroup, k: &Subgroup, d: &Subgroup) -> Result<Homomorphism> {
    if !is_direct_sum(group, &[h, k])? {
        return Err(Error::precondition("G = H + K must be a direct sum"));
    }
    for (name, other) in [("H", h), ("K", k)] {
        if !d.intersect(other)?.is_trivial() {
            return Err(Error::precondition(format!("D is not a diagonal: D /\\ {name} != 0")));
        }
        if d.sum(other)?.order() != group.order() {
            return Err(Error::precondition(format!("D is not a diagonal: D + {name} != G")));
        }
    }
    // delta(x) = -pi_K^(D)(x) for x in H; extend to G by precomposing with
    // the projection onto H along K.
    let pi_h = projection(group, h, k)?;
    let pi_k_along_d = projection(group, k, d)?;
    let r = group.rank();
    let mut matrix = vec![vec![0i64; r]; r];
    for col in 0..r {
        let e = group.generator(col);
        let v = pi_k_along_d.apply(&pi_h.apply(&e)?)?.neg();
        for (row, m_row) in matrix.iter_mut().enumerate() {
            m_row[col] = v.coords()[row];
        }
    }
    let delta = Homomorphism::new(group, group, matrix)?;
    debug_assert_eq!(&diagonal(group, h, k, &delta)?, d);
    Ok(delta)
}

/// Exhaustive common-complement search: scans canonical subgroups of order
/// |G|/|A| and returns the first U with G = A + U = C + U (both direct), or
/// None (a proven non-existence at this scale). Rejects non-isomorphic
/// inputs up front, since a common complement forces isomorphism.
pub fn common_complement_bruteforce(
    group: &Group,
    a: &Subgroup,
    c: &Subgroup,
    caps: &Caps,
) -> Result<Option<Subgroup>> {
    let lattice = SubgroupLattice::enumerate(group, caps.subgroup_enumeration)?;
    common_complement_in_lattice(&lattice, a, c).map(|r| r.map(|(u, _)| u))
}

/// Same search against a pre-enumerated lattice; also returns the number of
/// candidates scanned.
pub fn common_complement_in_lattice(
    lattice: &SubgroupLattice,
    a: &Subgroup,
    c: &Subgroup,
) -> Result<Option<(Subgroup, u64)>> {
    let group = lattice.group();
    if a.invariants()? != c.invariants()? {
        return Err(Error::precondition(
            "common complements exist only for isomorphic summands",
        ));
    }
    let want = group.order() / a.order();
    let mut scanned = 0;
    for u in lattice.of_order(want) {
        scanned += 1;
        if is_direct_sum(group, &[a, u])? && is_direct_sum(group, &[c, u])? {
            return Ok(Some((u.clone(), scanned)));
        }
    }
    Ok(None)
}

/// Restriction of a common complement to a summand H: returns M /\ H and
/// asserts H = S + (M /\ H) = L + (M /\ H), by modularity of the subgroup
/// lattice.
pub fn restrict_complement(
    group: &Group,
    h: &Subgroup,
    s: &Subgroup,
    l: &Subgroup,
    m: &Subgroup,
) -> Result<Subgroup> {
    if find_complement(h)?.is_none() {
        return Err(Error::precondition("H is not a summand of G"));
    }
    if !s.is_subgroup_of(h)? {
        return Err(Error::precondition("S <= H fails"));
    }
    if !l.is_subgroup_of(h)? {
        return Err(Error::precondition("L <= H fails"));
    }
    if !is_direct_sum(group, &[s, m])? {
        return Err(Error::precondition("G = S + M fails"));
    }
    if !is_direct_sum(group, &[l, m])? {
        return Err(Error::precondition("G = L + M fails"));
    }
    let mh = m.intersect(h)?;
    let split_s = s.order() * mh.order() == h.order() && s.sum(&mh)? == *h;
    let split_l = l.order() * mh.order() == h.order() && l.sum(&mh)? == *h;
    if !split_s {
        return Err(Error::precondition("H = S + (M /\\ H) fails"));
    }
    if !split_l {
        return Err(Error::precondition("H = L + (M /\\ H) fails"));
    }
    Ok(mh)
}

/// Exhaustive perspectivity oracle: every unordered pair of isomorphic
/// summands must admit a common complement. Pure search, no shortcuts.
pub fn is_perspective_bruteforce(group: &Group, caps: &Caps) -> Result<PerspectivityReport> {
    if group.order() > caps.perspectivity_sweep {
        return Err(Error::CapExceeded {
            what: "perspectivity sweep |G|",
            cap: caps.perspectivity_sweep,
            actual: group.order(),
        });
    }
    let start = Instant::now();
    let lattice = SubgroupLattice::enumerate(group, caps.subgroup_enumeration)?;
    let summands: Vec<&Subgroup> = lattice
        .all()
        .iter()
        .filter(|s| find_complement(s).map(|c| c.is_some()).unwrap_or(false))
        .collect();
    // group by isomorphism type
    let mut classes: std::collections::BTreeMap<Vec<(i64, u32)>, Vec<usize>> = Default::default();
    for (ix, s) in summands.iter().enumerate() {
        classes.entry(s.invariants()?.0).or_default().push(ix);
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for class in classes.values() {
        for (pos, &i) in class.iter().enumerate() {
            for &j in &class[pos..] {
                pairs.push((i, j));
            }
        }
    }
    let results: Vec<(usize, usize, Option<u64>)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let found = common_complement_in_lattice(&lattice, summands[i], summands[j])
                .map(|r| r.map(|(_, scanned)| scanned))
                .unwrap_or(None);
            (i, j, found)
        })
        .collect();
    let mut stats = WitnessStats { candidates_scanned: 0, max_scanned_per_pair: 0 };
    let mut counterexample = None;
    for (i, j, found) in &results {
        match found {
            Some(scanned) => {
                stats.candidates_scanned += scanned;
                stats.max_scanned_per_pair = stats.max_scanned_per_pair.max(*scanned);
            }
            None => {
                if counterexample.is_none() {
                    counterexample = Some((summands[*i].to_string(), summands[*j].to_string()));
                }
            }
        }
    }
    Ok(PerspectivityReport {
        group: group.to_string(),
        status: if counterexample.is_none() {
            PerspectivityStatus::Perspective
        } else {
            PerspectivityStatus::Counterexample
        },
        pairs_checked: pairs.len() as u64,
        counterexample,
        witness_stats: stats,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group;
    use crate::parse_subgroup;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn is_summand_examples() {
        // <(0,2)> in Z(2)+Z(4) (canonical [4,2]: element (2,0)) is not a summand
        let g = parse_group("Z2+Z4").unwrap();
        let s = parse_subgroup(&g, "gens[(2,0)]").unwrap();
        assert_eq!(find_complement(&s).unwrap(), None);
        assert_eq!(find_complement_by_search(&s, 1024).unwrap(), None);

        // <(1,2)> in spec order = (2,1) canonically; complement <(0,1)> = (1,0)
        let t = parse_subgroup(&g, "gens[(2,1)]").unwrap();
        let u = find_complement(&t).unwrap().unwrap();
        assert!(is_direct_sum(&g, &[&t, &u]).unwrap());
        assert_eq!(u, parse_subgroup(&g, "gens[(1,0)]").unwrap());

        let whole = Subgroup::whole(&g);
        assert_eq!(find_complement(&whole).unwrap(), Some(Subgroup::trivial(&g)));
    }

    #[test]
    fn retraction_matches_search_oracle() {
        for lit in ["Z4+Z2", "Z8", "Z2+Z2+Z2", "Z9+Z3", "Z4+Z4"] {
            let g = parse_group(lit).unwrap();
            let lattice = SubgroupLattice::enumerate(&g, 1024).unwrap();
            for s in lattice.all() {
                let fast = find_complement(s).unwrap();
                let slow = find_complement_by_search(s, 1024).unwrap();
                assert_eq!(fast.is_some(), slow.is_some(), "disagreement on {s} in {g}");
                if let Some(u) = fast {
                    assert!(is_direct_sum(&g, &[s, &u]).unwrap());
                }
            }
        }
    }

    #[test]
    fn enumerate_summands_examples() {
        let g = parse_group("Z2+Z2").unwrap();
        let w = enumerate_summands(&g, &caps()).unwrap();
        assert_eq!(w.len(), 5);

        let z4 = parse_group("Z4").unwrap();
        let w = enumerate_summands(&z4, &caps()).unwrap();
        assert_eq!(w.len(), 2);

        let t = parse_group("Z1").unwrap();
        assert_eq!(enumerate_summands(&t, &caps()).unwrap().len(), 1);
    }

    #[test]
    fn enumeration_refuses_beyond_cap() {
        let g = parse_group("Z64+Z64").unwrap();
        let err = SubgroupLattice::enumerate(&g, 1024).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { cap: 1024, actual: 4096, .. }));
        let tight = Caps { perspectivity_sweep: 16, ..Caps::default() };
        assert!(matches!(
            is_perspective_bruteforce(&parse_group("Z32").unwrap(), &tight),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn subgroup_counts_small() {
        // the subgroup lattice of Z(p)^2 has p + 3 members
        for (lit, expect) in [("Z2+Z2", 5), ("Z3+Z3", 6), ("Z4+Z2", 8)] {
            let g = parse_group(lit).unwrap();
            let lattice = SubgroupLattice::enumerate(&g, 1024).unwrap();
            assert_eq!(lattice.all().len(), expect, "{lit}");
        }
    }

    #[test]
    fn diagonal_examples() {
        let g = parse_group("Z3+Z3").unwrap();
        let h = parse_subgroup(&g, "gens[(1,0)]").unwrap();
        let k = parse_subgroup(&g, "gens[(0,1)]").unwrap();
        let delta = Homomorphism::new(&g, &g, vec![vec![0, 0], vec![1, 0]]).unwrap();
        let d = diagonal(&g, &h, &k, &delta).unwrap();
        assert_eq!(d, parse_subgroup(&g, "gens[(1,1)]").unwrap());
        assert!(is_direct_sum(&g, &[&h, &d]).unwrap());
        assert!(is_direct_sum(&g, &[&k, &d]).unwrap());

        let delta2 = Homomorphism::new(&g, &g, vec![vec![0, 0], vec![2, 0]]).unwrap();
        let d2 = diagonal(&g, &h, &k, &delta2).unwrap();
        assert_eq!(d2, parse_subgroup(&g, "gens[(1,2)]").unwrap());

        let zero = Homomorphism::zero(&g, &g);
        assert!(diagonal(&g, &h, &k, &zero).is_err());
    }

    #[test]
    fn diagonal_inverse_examples() {
        let g = parse_group("Z3+Z3").unwrap();
        let h = parse_subgroup(&g, "gens[(1,0)]").unwrap();
        let k = parse_subgroup(&g, "gens[(0,1)]").unwrap();

        let d = parse_subgroup(&g, "gens[(1,1)]").unwrap();
        let delta = diagonal_inverse(&g, &h, &k, &d).unwrap();
        assert_eq!(delta.apply(&g.element(&[1, 0]).unwrap()).unwrap(), g.element(&[0, 1]).unwrap());
        assert_eq!(diagonal(&g, &h, &k, &delta).unwrap(), d);

        let d2 = parse_subgroup(&g, "gens[(1,2)]").unwrap();
        let delta2 = diagonal_inverse(&g, &h, &k, &d2).unwrap();
        assert_eq!(delta2.apply(&g.element(&[1, 0]).unwrap()).unwrap(), g.element(&[0, 2]).unwrap());

        // D = H is rejected: D /\ H != 0
        assert!(diagonal_inverse(&g, &h, &k, &h).is_err());
    }

    #[test]
    fn common_complement_bruteforce_examples() {
        // G = Z(2)+Z(4) canonical [4,2]; A = <(1,0)>spec = (0,1), C = <(1,2)>spec = (2,1)
        let g = parse_group("Z2+Z4").unwrap();
        let a = parse_subgroup(&g, "gens[(0,1)]").unwrap();
        let c = parse_subgroup(&g, "gens[(2,1)]").unwrap();
        let u = common_complement_bruteforce(&g, &a, &c, &caps()).unwrap().unwrap();
        assert_eq!(u, parse_subgroup(&g, "gens[(1,0)]").unwrap());

        // A = C: any complement of A
        let u2 = common_complement_bruteforce(&g, &a, &a, &caps()).unwrap().unwrap();
        assert!(is_direct_sum(&g, &[&a, &u2]).unwrap());

        // non-isomorphic inputs rejected before search
        let z4part = parse_subgroup(&g, "gens[(1,0)]").unwrap();
        assert!(common_complement_bruteforce(&g, &a, &z4part, &caps()).is_err());
    }

    #[test]
    fn restrict_complement_examples() {
        // G = Z(2)^3, H = first two coordinates, S = <e1>, L = <e1+e2>, M = <e2,e3>
        let g = parse_group("Z2+Z2+Z2").unwrap();
        let h = parse_subgroup(&g, "gens[(1,0,0);(0,1,0)]").unwrap();
        let s = parse_subgroup(&g, "gens[(1,0,0)]").unwrap();
        let l = parse_subgroup(&g, "gens[(1,1,0)]").unwrap();
        let m = parse_subgroup(&g, "gens[(0,1,0);(0,0,1)]").unwrap();
        let mh = restrict_complement(&g, &h, &s, &l, &m).unwrap();
        assert_eq!(mh, parse_subgroup(&g, "gens[(0,1,0)]").unwrap());

        // H = G returns M itself
        let whole = Subgroup::whole(&g);
        assert_eq!(restrict_complement(&g, &whole, &s, &l, &m).unwrap(), m);

        // S = L degenerate
        let mh2 = restrict_complement(&g, &h, &s, &s, &m).unwrap();
        assert!(is_direct_sum(&g, &[&s, &mh2]).unwrap() || s.sum(&mh2).unwrap() == h);
    }

    #[test]
    fn perspectivity_oracle_examples() {
        let g = parse_group("Z2+Z2").unwrap();
        let report = is_perspective_bruteforce(&g, &caps()).unwrap();
        assert_eq!(report.status, PerspectivityStatus::Perspective);

        let g2 = parse_group("Z8+Z2").unwrap();
        let report2 = is_perspective_bruteforce(&g2, &caps()).unwrap();
        assert_eq!(report2.status, PerspectivityStatus::Perspective);

        let g3 = parse_group("Z27").unwrap();
        let report3 = is_perspective_bruteforce(&g3, &caps()).unwrap();
        assert_eq!(report3.status, PerspectivityStatus::Perspective);
        assert_eq!(report3.pairs_checked, 2); // only the trivial pairs (0,0), (G,G)
    }
}
