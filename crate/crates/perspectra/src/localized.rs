//! Free modules over the localization of the integers at a prime p (rationals
//! with denominator coprime to p, a local PID whose only primes are the
//! powers of p). Pure submodules are exactly the direct summands here, and
//! the common-complement construction follows a four-case ladder:
//! (1) split off A /\ C; (2) strip B /\ K off the complements; (3) reduce
//! A /\ K through the pure hull of a projection and a diagonal; (4) align
//! bases so that c_i = r_i a_i + s_i b_i and assemble the mixed diagonal
//! according to which of r_i, s_i are units.

use serde::Serialize;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fpspace::FpSubspace;
use crate::qspace::{format_rat_rows, Rat, RationalSubspace};

/// Ambient descriptor: the free module R^rank with R the localization at p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalizedModule {
    pub p: i64,
    pub rank: usize,
}

impl LocalizedModule {
    pub fn new(p: i64, rank: usize) -> LocalizedModule {
        assert!(crate::arith::is_prime(p));
        LocalizedModule { p, rank }
    }

    /// Vectors must have p-free denominators in every coordinate.
    pub fn validate_vector(&self, v: &[Rat]) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::DimensionMismatch(format!(
                "vector has {} coordinates, module rank is {}",
                v.len(),
                self.rank
            )));
        }
        for x in v {
            if x.denom() % (self.p as i128) == 0 {
                return Err(Error::precondition(format!(
                    "coordinate {} has a denominator divisible by p = {}",
                    crate::qspace::format_rat(x),
                    self.p
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for LocalizedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Qp({})^{}", self.p, self.rank)
    }
}

/// p-adic valuation of a nonzero rational (None for zero). The denominator
/// contributes negatively; inside R it is always p-free.
pub fn val_p(x: &Rat, p: i64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p = p as i128;
    let mut v: i64 = 0;
    let mut n = x.numer().abs();
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    let mut d = x.denom().abs();
    while d % p == 0 {
        d /= p;
        v -= 1;
    }
    Some(v)
}

fn pow_p(p: i64, v: i64) -> Rat {
    let base = Rat::from_integer(p as i128);
    if v >= 0 {
        let mut acc = Rat::one();
        for _ in 0..v {
            acc *= &base;
        }
        acc
    } else {
        let mut acc = Rat::one();
        for _ in 0..(-v) {
            acc /= &base;
        }
        acc
    }
}

/// Canonical residue of x in R/(p^v): the unique integer in [0, p^v).
fn residue_mod_pv(x: &Rat, p: i64, v: u32) -> i128 {
    let m = (p as i128).pow(v);
    let d_inv = crate::arith::mod_inverse((*x.denom() % m) as i64, m as i64).expect("p-free denominator") as i128;
    ((x.numer() % m) * d_inv).rem_euclid(m)
}

/// Finitely generated submodule of R^ambient in canonical form: rows sorted
/// by pivot column, pivot entries exact powers of p (unit part normalized
/// away), entries above each pivot reduced to integers in [0, p^v), entries
/// below pivots zero. Unique per submodule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSubmodule {
    p: i64,
    ambient: usize,
    basis: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
    pivot_vals: Vec<u32>,
}

impl LocalSubmodule {
    pub fn from_generators(module: &LocalizedModule, rows: Vec<Vec<Rat>>) -> Result<LocalSubmodule> {
        for r in &rows {
            module.validate_vector(r)?;
        }
        Ok(Self::canonicalize(module.p, module.rank, rows))
    }

    pub fn from_int_rows(module: &LocalizedModule, rows: Vec<Vec<i64>>) -> Result<LocalSubmodule> {
        Self::from_generators(
            module,
            rows.into_iter()
                .map(|r| r.into_iter().map(|x| Rat::from_integer(x as i128)).collect())
                .collect(),
        )
    }

    fn canonicalize(p: i64, ambient: usize, mut rows: Vec<Vec<Rat>>) -> LocalSubmodule {
        let mut pivots = Vec::new();
        let mut pivot_vals = Vec::new();
        let mut r = 0;
        for c in 0..ambient {
            let mut best: Option<(usize, i64)> = None;
            for (i, row) in rows.iter().enumerate().skip(r) {
                if let Some(v) = val_p(&row[c], p) {
                    if best.map_or(true, |(_, bv)| v < bv) {
                        best = Some((i, v));
                    }
                }
            }
            let Some((src, v)) = best else { continue };
            debug_assert!(v >= 0, "entries must lie in R");
            rows.swap(r, src);
            // normalize: pivot becomes exactly p^v
            let unit = &rows[r][c] / pow_p(p, v);
            let inv = unit.recip();
            for j in 0..ambient {
                let nv = &rows[r][j] * &inv;
                rows[r][j] = nv;
            }
            let pivot = pow_p(p, v);
            // eliminate below (valuations are >= v there)
            for i in r + 1..rows.len() {
                if !rows[i][c].is_zero() {
                    let q = &rows[i][c] / &pivot;
                    for j in 0..ambient {
                        let nv = &rows[i][j] - &q * &rows[r][j];
                        rows[i][j] = nv;
                    }
                }
            }
            // reduce above to canonical residues mod p^v
            for i in 0..r {
                if !rows[i][c].is_zero() {
                    let rep = Rat::from_integer(residue_mod_pv(&rows[i][c], p, v as u32));
                    let q = (&rows[i][c] - &rep) / &pivot;
                    for j in 0..ambient {
                        let nv = &rows[i][j] - &q * &rows[r][j];
                        rows[i][j] = nv;
                    }
                }
            }
            pivots.push(c);
            pivot_vals.push(v as u32);
            r += 1;
        }
        rows.truncate(r);
        LocalSubmodule { p, ambient, basis: rows, pivots, pivot_vals }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_rows(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Basis rows reduced mod p, as an F_p subspace.
    pub fn mod_p(&self) -> FpSubspace {
        let rows: Vec<Vec<i64>> = self
            .basis
            .iter()
            .map(|row| row.iter().map(|x| residue_mod_pv(x, self.p, 1) as i64).collect())
            .collect();
        FpSubspace::from_generators(self.p, self.ambient, rows)
    }

    /// Pure (= summand) iff the basis rows stay independent mod p.
    pub fn is_pure(&self) -> bool {
        self.mod_p().dim() == self.rank()
    }

    pub fn member_coords(&self, x: &[Rat]) -> Option<Vec<Rat>> {
        let mut res = x.to_vec();
        let mut coords = vec![Rat::zero(); self.rank()];
        for (i, &c) in self.pivots.iter().enumerate() {
            if res[c].is_zero() {
                continue;
            }
            let v = val_p(&res[c], self.p)?;
            if v < self.pivot_vals[i] as i64 {
                return None;
            }
            let q = &res[c] / pow_p(self.p, self.pivot_vals[i] as i64);
            for j in 0..self.ambient {
                let nv = &res[j] - &q * &self.basis[i][j];
                res[j] = nv;
            }
            coords[i] = q;
        }
        if res.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.member_coords(x).is_some()
    }

    fn stack(&self, other: &LocalSubmodule) -> LocalSubmodule {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        LocalSubmodule::canonicalize(self.p, self.ambient, rows)
    }

    /// Echelon-canonical ambient complement of a pure submodule: standard
    /// vectors at the non-pivot columns of the mod-p reduction.
    pub fn ambient_complement(&self) -> LocalSubmodule {
        let fp = self.mod_p();
        debug_assert_eq!(fp.dim(), self.rank(), "complement needs a pure submodule");
        let rows: Vec<Vec<Rat>> = fp
            .ambient_complement()
            .basis_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| Rat::from_integer(x as i128)).collect())
            .collect();
        LocalSubmodule::canonicalize(self.p, self.ambient, rows)
    }
}

impl fmt::Display for LocalSubmodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rat_rows(&self.basis))
    }
}

/// Smallest pure submodule (summand) containing the generators: normalize to
/// the canonical echelon form, then repeatedly divide mod-p dependent
/// combinations by p until the rows are independent mod p.
pub fn pure_hull(module: &LocalizedModule, gens: Vec<Vec<Rat>>) -> Result<LocalSubmodule> {
    let mut sub = LocalSubmodule::from_generators(module, gens)?;
    let mut guard = 0;
    loop {
        let k = sub.rank();
        if k == 0 {
            return Ok(sub);
        }
        let int_rows: Vec<Vec<i64>> = sub
            .basis
            .iter()
            .map(|row| row.iter().map(|x| residue_mod_pv(x, module.p, 1) as i64).collect())
            .collect();
        let deps = crate::fpspace::nullspace_left(module.p, &int_rows, module.rank);
        if deps.is_empty() {
            return Ok(sub);
        }
        let mut rows = sub.basis.clone();
        for dep in deps {
            let mut combo = vec![Rat::zero(); module.rank];
            for (i, &coef) in dep.iter().enumerate() {
                if coef != 0 {
                    let f = Rat::from_integer(coef as i128);
                    for j in 0..module.rank {
                        let nv = &combo[j] + &f * &sub.basis[i][j];
                        combo[j] = nv;
                    }
                }
            }
            let p_rat = Rat::from_integer(module.p as i128);
            for x in combo.iter_mut() {
                *x /= &p_rat;
            }
            debug_assert!(combo.iter().all(|x| x.denom() % module.p as i128 != 0));
            rows.push(combo);
        }
        sub = LocalSubmodule::canonicalize(module.p, module.rank, rows);
        guard += 1;
        if guard > 64 * module.rank {
            return Err(Error::precondition("pure hull did not stabilize"));
        }
    }
}

/// R-module intersection of two pure submodules: the saturation of the
/// Q-span intersection.
pub fn intersect(module: &LocalizedModule, a: &LocalSubmodule, c: &LocalSubmodule) -> Result<LocalSubmodule> {
    let qa = RationalSubspace::from_generators(module.rank, a.basis.to_vec());
    let qc = RationalSubspace::from_generators(module.rank, c.basis.to_vec());
    let qi = qa.intersect(&qc);
    // scale rows into R^m (clear p from denominators), then saturate
    let rows: Vec<Vec<Rat>> = qi
        .basis_rows()
        .into_iter()
        .map(|row| {
            let scale = row
                .iter()
                .filter_map(|x| val_p(x, module.p))
                .min()
                .map_or(0, |v| (-v).max(0));
            let f = pow_p(module.p, scale);
            row.into_iter().map(|x| x * &f).collect()
        })
        .collect();
    pure_hull(module, rows)
}

/// Coordinates of targets with respect to independent basis rows, via one
/// reduced echelon pass over the transposed augmented system. Fails when a
/// target leaves the span or a coefficient leaves R.
fn solve_in_basis(
    p: i64,
    ambient: usize,
    basis_rows: &[Vec<Rat>],
    targets: &[Vec<Rat>],
) -> Result<Vec<Vec<Rat>>> {
    let k = basis_rows.len();
    let t = targets.len();
    let mut aug = crate::qspace::QMat::from_rows(
        (0..ambient)
            .map(|j| {
                let mut row: Vec<Rat> = basis_rows.iter().map(|b| b[j].clone()).collect();
                row.extend(targets.iter().map(|x| x[j].clone()));
                row
            })
            .collect(),
        k + t,
    );
    let pivots = aug.rref();
    if pivots.len() != k || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return Err(Error::precondition("targets are not inside the span"));
    }
    let mut out = Vec::with_capacity(t);
    for ti in 0..t {
        let mut coords = Vec::with_capacity(k);
        for j in 0..k {
            let coef = aug.at(j, k + ti).clone();
            if coef.denom() % p as i128 == 0 {
                return Err(Error::precondition("coordinates leave the localization"));
            }
            coords.push(coef);
        }
        out.push(coords);
    }
    Ok(out)
}

/// Exact determinant of a square matrix of rationals.
fn det(rows: &[Vec<Rat>]) -> Rat {
    let n = rows.len();
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut acc = Rat::one();
    for c in 0..n {
        let Some(src) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rat::zero();
        };
        if src != c {
            m.swap(c, src);
            acc = -acc;
        }
        let pv = m[c][c].clone();
        acc *= &pv;
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &pv;
                for j in c..n {
                    let nv = &m[i][j] - &f * &m[c][j];
                    m[i][j] = nv;
                }
            }
        }
    }
    acc
}

/// Both-sums verification: stacking the bases of each part must give a
/// matrix whose determinant has p-valuation zero (a unit of R).
pub fn verify_splitting(module: &LocalizedModule, parts: &[&LocalSubmodule]) -> bool {
    let total: usize = parts.iter().map(|s| s.rank()).sum();
    if total != module.rank {
        return false;
    }
    let mut rows = Vec::with_capacity(total);
    for part in parts {
        rows.extend(part.basis.iter().cloned());
    }
    let d = det(&rows);
    val_p(&d, module.p) == Some(0)
}

/// Which rungs of the case ladder fired, plus the smallest ambient rank the
/// recursion reached.
#[derive(Debug, Clone, Default, Serialize)]
pub struct LccStats {
    pub case_split_intersection: u32,
    pub case_strip_complements: u32,
    pub case_meet_complement: u32,
    pub case_coordinates: u32,
    pub base_equal: u32,
    pub min_rank_reached: usize,
}

/// Common complement of two pure submodules of equal rank in R^m.
pub fn localized_common_complement(
    module: &LocalizedModule,
    a: &LocalSubmodule,
    c: &LocalSubmodule,
) -> Result<LocalSubmodule> {
    let mut stats = LccStats { min_rank_reached: module.rank, ..Default::default() };
    localized_common_complement_with_stats(module, a, c, &mut stats)
}

pub fn localized_common_complement_with_stats(
    module: &LocalizedModule,
    a: &LocalSubmodule,
    c: &LocalSubmodule,
    stats: &mut LccStats,
) -> Result<LocalSubmodule> {
    if a.ambient_dim() != module.rank || c.ambient_dim() != module.rank || a.p() != module.p {
        return Err(Error::DimensionMismatch("submodules do not live in the given module".into()));
    }
    if a.rank() != c.rank() {
        return Err(Error::precondition("summands must have equal rank"));
    }
    if !a.is_pure() || !c.is_pure() {
        return Err(Error::precondition("inputs must be pure submodules"));
    }
    let u = lcc_rec(module, a, c, stats)?;
    if !verify_splitting(module, &[a, &u]) || !verify_splitting(module, &[c, &u]) {
        return Err(Error::precondition("constructed complement failed the unit-determinant checks"));
    }
    Ok(u)
}

fn lcc_rec(
    module: &LocalizedModule,
    a: &LocalSubmodule,
    c: &LocalSubmodule,
    stats: &mut LccStats,
) -> Result<LocalSubmodule> {
    let m = module.rank;
    stats.min_rank_reached = stats.min_rank_reached.min(m);
    if a == c {
        stats.base_equal += 1;
        return Ok(a.ambient_complement());
    }
    let k1 = intersect(module, a, c)?;
    if !k1.is_zero() {
        // case 1: split off the intersection and recurse in a complement of it
        stats.case_split_intersection += 1;
        let a2 = complement_within(module, a, &k1)?;
        let b = a.ambient_complement();
        let n_rows: Vec<Vec<Rat>> = a2.basis.iter().chain(b.basis.iter()).cloned().collect();
        let n_module = LocalizedModule::new(module.p, n_rows.len());
        let c2 = intersect_with_span(module, c, &n_rows)?;
        let a2_in = to_coords(module, &n_rows, &a2)?;
        let c2_in = to_coords(module, &n_rows, &c2)?;
        let u_in = lcc_rec(&n_module, &a2_in, &c2_in, stats)?;
        let u_rows = from_coords(module, &n_rows, &u_in);
        return Ok(LocalSubmodule::canonicalize(module.p, m, u_rows));
    }
    let b = a.ambient_complement();
    let k = c.ambient_complement();
    let f = intersect(module, &b, &k)?;
    if !f.is_zero() {
        // case 2: enlarge both summands by B /\ K; the next level splits it off
        stats.case_strip_complements += 1;
        let a_star = a.stack(&f);
        let c_star = c.stack(&f);
        debug_assert!(a_star.is_pure() && c_star.is_pure());
        let u_star = lcc_rec(module, &a_star, &c_star, stats)?;
        return Ok(u_star.stack(&f));
    }
    let ak = intersect(module, a, &k)?;
    if !ak.is_zero() {
        stats.case_meet_complement += 1;
        return case_meet_complement(module, a, c, &k, &ak, stats);
    }
    let cb = intersect(module, c, &b)?;
    if !cb.is_zero() {
        stats.case_meet_complement += 1;
        // symmetric in (A, C): a common complement of (C, A) is one of (A, C)
        return case_meet_complement(module, c, a, &b, &cb, stats);
    }
    stats.case_coordinates += 1;
    case_coordinates(module, a, c, &b)
}

/// Complement of `inner` inside `outer` (both pure, inner <= outer), by
/// mod-p basis completion in outer-coordinates.
fn complement_within(
    module: &LocalizedModule,
    outer: &LocalSubmodule,
    inner: &LocalSubmodule,
) -> Result<LocalSubmodule> {
    let coords = solve_in_basis(module.p, module.rank, &outer.basis, &inner.basis)?;
    let k = outer.rank();
    let inner_module = LocalizedModule::new(module.p, k);
    let inner_in = LocalSubmodule::from_generators(&inner_module, coords)?;
    let comp_in = inner_in.ambient_complement();
    let rows = from_coords(module, &outer.basis, &comp_in);
    Ok(LocalSubmodule::canonicalize(module.p, module.rank, rows))
}

/// C /\ span(rows) where the rows are an R-basis of a pure submodule.
fn intersect_with_span(
    module: &LocalizedModule,
    c: &LocalSubmodule,
    rows: &[Vec<Rat>],
) -> Result<LocalSubmodule> {
    let n = LocalSubmodule::canonicalize(module.p, module.rank, rows.to_vec());
    intersect(module, c, &n)
}

/// Map a submodule given in basis coordinates back to the ambient module.
fn from_coords(module: &LocalizedModule, basis_rows: &[Vec<Rat>], sub: &LocalSubmodule) -> Vec<Vec<Rat>> {
    sub.basis
        .iter()
        .map(|crow| {
            let mut row = vec![Rat::zero(); module.rank];
            for (i, coef) in crow.iter().enumerate() {
                if !coef.is_zero() {
                    for j in 0..module.rank {
                        let nv = &row[j] + coef * &basis_rows[i][j];
                        row[j] = nv;
                    }
                }
            }
            row
        })
        .collect()
}

/// Express a submodule in the coordinates of the given R-basis rows.
fn to_coords(module: &LocalizedModule, basis_rows: &[Vec<Rat>], sub: &LocalSubmodule) -> Result<LocalSubmodule> {
    let coords = solve_in_basis(module.p, module.rank, basis_rows, &sub.basis)?;
    let inner = LocalizedModule::new(module.p, basis_rows.len());
    LocalSubmodule::from_generators(&inner, coords)
}

/// Case 3: A /\ K nonzero. Split A = AK (+) A2 with A2 inside C (+) K2,
/// project A2 into C, take the pure hull, recurse in C2 (+) K2, and join a
/// diagonal of AK against the leftover part of C.
fn case_meet_complement(
    module: &LocalizedModule,
    a: &LocalSubmodule,
    c: &LocalSubmodule,
    k: &LocalSubmodule,
    ak: &LocalSubmodule,
    stats: &mut LccStats,
) -> Result<LocalSubmodule> {
    let k2 = complement_within(module, k, ak)?;
    // A2 = A /\ (C + K2), the canonical complement of AK inside A
    let ck2_rows: Vec<Vec<Rat>> = c.basis.iter().chain(k2.basis.iter()).cloned().collect();
    let a2 = intersect_with_span(module, a, &ck2_rows)?;
    debug_assert_eq!(a2.rank() + ak.rank(), a.rank());
    // project A2 into C along K2 and take the pure hull
    let coords = solve_in_basis(module.p, module.rank, &ck2_rows, &a2.basis)?;
    let proj_rows: Vec<Vec<Rat>> = coords
        .iter()
        .map(|crow| {
            let mut row = vec![Rat::zero(); module.rank];
            for (i, coef) in crow.iter().take(c.rank()).enumerate() {
                if !coef.is_zero() {
                    for j in 0..module.rank {
                        let nv = &row[j] + coef * &c.basis[i][j];
                        row[j] = nv;
                    }
                }
            }
            row
        })
        .collect();
    let c2 = pure_hull(module, proj_rows)?;
    debug_assert_eq!(c2.rank(), a2.rank());
    // recurse inside N = C2 (+) K2
    let n_rows: Vec<Vec<Rat>> = c2.basis.iter().chain(k2.basis.iter()).cloned().collect();
    let n_module = LocalizedModule::new(module.p, n_rows.len());
    let a2_in = to_coords(module, &n_rows, &a2)?;
    let c2_in = to_coords(module, &n_rows, &c2)?;
    let u_in = lcc_rec(&n_module, &a2_in, &c2_in, stats)?;
    let u_rows = from_coords(module, &n_rows, &u_in);
    // C = C2 (+) C1; pair AK with C1 into a diagonal
    let c1 = complement_within(module, c, &c2)?;
    debug_assert_eq!(c1.rank(), ak.rank());
    let mut rows = u_rows;
    for (x, y) in ak.basis.iter().zip(c1.basis.iter()) {
        rows.push(x.iter().zip(y).map(|(u, v)| u + v).collect());
    }
    Ok(LocalSubmodule::canonicalize(module.p, module.rank, rows))
}

/// Local Smith form of a square matrix over R extended by negative powers of
/// p: X = U diag(p^gamma) V with U, V in GL(R). Returns (u_inv, gammas, v).
fn snf_local(p: i64, x: &[Vec<Rat>]) -> (Vec<Vec<Rat>>, Vec<i64>, Vec<Vec<Rat>>) {
    let k = x.len();
    let mut d: Vec<Vec<Rat>> = x.to_vec();
    let mut u_inv: Vec<Vec<Rat>> = identity(k);
    let mut v: Vec<Vec<Rat>> = identity(k);
    for t in 0..k {
        // minimal-valuation pivot in the trailing block
        let mut best: Option<(usize, usize, i64)> = None;
        for (i, row) in d.iter().enumerate().skip(t) {
            for (j, entry) in row.iter().enumerate().skip(t) {
                if let Some(val) = val_p(entry, p) {
                    if best.map_or(true, |(_, _, bv)| val < bv) {
                        best = Some((i, j, val));
                    }
                }
            }
        }
        let Some((bi, bj, _)) = best else { break };
        d.swap(t, bi);
        u_inv.swap(t, bi);
        if bj != t {
            for row in d.iter_mut() {
                row.swap(t, bj);
            }
            v.swap(t, bj);
        }
        // normalize pivot to an exact power of p
        let pv = val_p(&d[t][t], p).unwrap();
        let unit = &d[t][t] / pow_p(p, pv);
        let inv = unit.recip();
        for j in 0..k {
            let nv = &d[t][j] * &inv;
            d[t][j] = nv;
            let nu = &u_inv[t][j] * &inv;
            u_inv[t][j] = nu;
        }
        let pivot = pow_p(p, pv);
        for i in t + 1..k {
            if !d[i][t].is_zero() {
                let f = &d[i][t] / &pivot;
                for j in 0..k {
                    let nv = &d[i][j] - &f * &d[t][j];
                    d[i][j] = nv;
                    let nu = &u_inv[i][j] - &f * &u_inv[t][j];
                    u_inv[i][j] = nu;
                }
            }
        }
        for j in t + 1..k {
            if !d[t][j].is_zero() {
                let f = &d[t][j] / &pivot;
                // column op on d; V row op: row_t of V -= ... maintained as
                // V' = E^{-1} V for D' = D E with E = I + f e_{t,j}
                for i in 0..k {
                    let nv = &d[i][j] - &f * &d[i][t];
                    d[i][j] = nv;
                }
                for col in 0..k {
                    let nv = &v[t][col] - &f * &v[j][col];
                    v[t][col] = nv;
                }
            }
        }
    }
    let gammas: Vec<i64> = (0..k).map(|i| val_p(&d[i][i], p).expect("nonsingular")).collect();
    (u_inv, gammas, v)
}

fn identity(k: usize) -> Vec<Vec<Rat>> {
    (0..k)
        .map(|i| (0..k).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect()
}

fn mat_mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    let m = b[0].len();
    let inner = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = Rat::zero();
                    for (l, brow) in b.iter().enumerate().take(inner) {
                        if !a[i][l].is_zero() {
                            acc += &a[i][l] * &brow[j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Case 4: all four intersections vanish, so the rank is 2k and the bases
/// can be aligned so that c_i = r_i a_i + s_i b_i with r_i or s_i a unit.
/// The complement takes a_i + b_i where one of them is a non-unit, and
/// a_i + c_i where both are units.
fn case_coordinates(
    module: &LocalizedModule,
    a: &LocalSubmodule,
    c: &LocalSubmodule,
    b: &LocalSubmodule,
) -> Result<LocalSubmodule> {
    let k = a.rank();
    if 2 * k != module.rank {
        return Err(Error::precondition("coordinate case requires rank 2k"));
    }
    // C's coordinates in the A (+) B basis: blocks P (a-part), Q (b-part)
    let ab_rows: Vec<Vec<Rat>> = a.basis.iter().chain(b.basis.iter()).cloned().collect();
    let coords = solve_in_basis(module.p, module.rank, &ab_rows, &c.basis)?;
    let p_block: Vec<Vec<Rat>> = coords.iter().map(|r| r[..k].to_vec()).collect();
    let q_block: Vec<Vec<Rat>> = coords.iter().map(|r| r[k..].to_vec()).collect();
    // X = P^{-1} Q, nonsingular because A /\ C = C /\ B = 0
    let p_inv = invert(&p_block).ok_or_else(|| Error::precondition("C /\\ B must vanish in the coordinate case"))?;
    let x = mat_mul(&p_inv, &q_block);
    let (u_inv, gammas, v) = snf_local(module.p, &x);
    // new bases: a' = U^{-1} a, b' = V b; then c'_i = r_i a'_i + s_i b'_i
    let a_hat = mat_mul(&u_inv, &a.basis);
    let b_hat = mat_mul(&v, &b.basis);
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(k);
    for i in 0..k {
        let (r_i, s_i) = if gammas[i] >= 0 {
            (Rat::one(), pow_p(module.p, gammas[i]))
        } else {
            (pow_p(module.p, -gammas[i]), Rat::one())
        };
        let r_unit = val_p(&r_i, module.p) == Some(0);
        let s_unit = val_p(&s_i, module.p) == Some(0);
        if !(r_unit && s_unit) {
            // one of them is divisible by p: U takes a_i + b_i
            rows.push(a_hat[i].iter().zip(&b_hat[i]).map(|(x, y)| x + y).collect());
        } else {
            // both units: U takes a_i + c_i = (1 + r_i) a_i + s_i b_i
            let c_bar: Vec<Rat> = a_hat[i]
                .iter()
                .zip(&b_hat[i])
                .map(|(x, y)| &r_i * x + &s_i * y)
                .collect();
            debug_assert!(c.contains(&c_bar));
            rows.push(a_hat[i].iter().zip(&c_bar).map(|(x, y)| x + y).collect());
        }
    }
    Ok(LocalSubmodule::canonicalize(module.p, module.rank, rows))
}

fn invert(rows: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = rows.len();
    let mut m: Vec<Vec<Rat>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let src = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, src);
        let inv = m[c][c].recip();
        for j in 0..2 * n {
            let nv = &m[c][j] * &inv;
            m[c][j] = nv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..2 * n {
                    let nv = &m[i][j] - &f * &m[c][j];
                    m[i][j] = nv;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Empirical check of the rank-2 reduction: random rank-1 pure summand pairs
/// in rank-m modules must be solved with the recursion bottoming out at
/// ambient rank <= 2.
#[derive(Debug, Clone, Serialize)]
pub struct Rank2Report {
    pub module: String,
    pub samples: u32,
    pub successes: u32,
    pub reached_rank2: u32,
    pub stats: LccStats,
}

pub fn rank2_reduction_check(module: &LocalizedModule, samples: u32, seed: u64) -> Result<Rank2Report> {
    let mut state = seed.max(1);
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut agg = LccStats { min_rank_reached: module.rank, ..Default::default() };
    let mut successes = 0;
    let mut reached = 0;
    let mut done = 0;
    while done < samples {
        let mk = |next: &mut dyn FnMut() -> u64| -> Vec<Rat> {
            (0..module.rank).map(|_| Rat::from_integer((next() % 19) as i128 - 9)).collect()
        };
        let va = mk(&mut next);
        let vc = mk(&mut next);
        if va.iter().all(|x| x.is_zero()) || vc.iter().all(|x| x.is_zero()) {
            continue;
        }
        let a = pure_hull(module, vec![va])?;
        let c = pure_hull(module, vec![vc])?;
        if a.rank() != 1 || c.rank() != 1 {
            continue;
        }
        done += 1;
        let mut stats = LccStats { min_rank_reached: module.rank, ..Default::default() };
        match localized_common_complement_with_stats(module, &a, &c, &mut stats) {
            Ok(_) => {
                successes += 1;
                if stats.min_rank_reached <= 2 {
                    reached += 1;
                }
            }
            Err(_) => {}
        }
        agg.case_split_intersection += stats.case_split_intersection;
        agg.case_strip_complements += stats.case_strip_complements;
        agg.case_meet_complement += stats.case_meet_complement;
        agg.case_coordinates += stats.case_coordinates;
        agg.base_equal += stats.base_equal;
        agg.min_rank_reached = agg.min_rank_reached.min(stats.min_rank_reached);
    }
    Ok(Rank2Report {
        module: module.to_string(),
        samples,
        successes,
        reached_rank2: reached,
        stats: agg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qspace::rat;

    fn r(x: i64) -> Rat {
        Rat::from_integer(x as i128)
    }

    #[test]
    fn pure_hull_examples() {
        // p=5, gens {(5,5)} -> span{(1,1)}
        let m = LocalizedModule::new(5, 2);
        let h = pure_hull(&m, vec![vec![r(5), r(5)]]).unwrap();
        assert_eq!(h.basis_rows(), &[vec![r(1), r(1)]]);

        // gens {(1,0)} -> itself
        let h2 = pure_hull(&m, vec![vec![r(1), r(0)]]).unwrap();
        assert_eq!(h2.basis_rows(), &[vec![r(1), r(0)]]);

        // p=3, gens {(3,6),(0,9)} -> the full rank-2 module
        let m3 = LocalizedModule::new(3, 2);
        let h3 = pure_hull(&m3, vec![vec![r(3), r(6)], vec![r(0), r(9)]]).unwrap();
        assert_eq!(h3.rank(), 2);
        assert!(h3.is_pure());
        assert_eq!(h3, LocalSubmodule::from_int_rows(&m3, vec![vec![1, 0], vec![0, 1]]).unwrap());
    }

    #[test]
    fn canonical_form_units_normalized() {
        let m = LocalizedModule::new(5, 2);
        // (2, 3) and (1, 3/2) span the same submodule
        let s1 = LocalSubmodule::from_generators(&m, vec![vec![r(2), r(3)]]).unwrap();
        let s2 = LocalSubmodule::from_generators(&m, vec![vec![r(1), rat(3, 2)]]).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn lcc_rank1_example() {
        // p=5, M=R^2, A=R(1,5), C=R(1,0) -> a verified common complement
        let m = LocalizedModule::new(5, 2);
        let a = LocalSubmodule::from_int_rows(&m, vec![vec![1, 5]]).unwrap();
        let c = LocalSubmodule::from_int_rows(&m, vec![vec![1, 0]]).unwrap();
        let u = localized_common_complement(&m, &a, &c).unwrap();
        assert!(verify_splitting(&m, &[&a, &u]));
        assert!(verify_splitting(&m, &[&c, &u]));
    }

    #[test]
    fn lcc_equal_inputs() {
        let m = LocalizedModule::new(5, 2);
        let a = LocalSubmodule::from_int_rows(&m, vec![vec![1, 0]]).unwrap();
        let u = localized_common_complement(&m, &a, &a).unwrap();
        assert_eq!(u, LocalSubmodule::from_int_rows(&m, vec![vec![0, 1]]).unwrap());
    }

    #[test]
    fn lcc_rejects_impure() {
        let m = LocalizedModule::new(3, 2);
        let impure = LocalSubmodule::from_int_rows(&m, vec![vec![3, 0]]).unwrap();
        assert!(!impure.is_pure());
        assert!(localized_common_complement(&m, &impure, &impure).is_err());
    }

    #[test]
    fn lcc_random_rank2_pairs_p3() {
        let m = LocalizedModule::new(3, 4);
        let mut state = 0xabcdef12345u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut done = 0;
        while done < 60 {
            let rows_a: Vec<Vec<Rat>> =
                (0..2).map(|_| (0..4).map(|_| r((next() % 13) as i64 - 6)).collect()).collect();
            let rows_c: Vec<Vec<Rat>> =
                (0..2).map(|_| (0..4).map(|_| r((next() % 13) as i64 - 6)).collect()).collect();
            let a = pure_hull(&m, rows_a).unwrap();
            let c = pure_hull(&m, rows_c).unwrap();
            if a.rank() != 2 || c.rank() != 2 {
                continue;
            }
            done += 1;
            let u = localized_common_complement(&m, &a, &c).unwrap();
            assert!(verify_splitting(&m, &[&a, &u]));
            assert!(verify_splitting(&m, &[&c, &u]));
        }
    }

    /// Degenerate coordinate-case splits: all indices unit/unit (l = r = 0),
    /// all s_i divisible (l = m), and all r_i divisible (r = m).
    #[test]
    fn coordinate_case_degenerate_branches() {
        let m = LocalizedModule::new(5, 2);
        let a = LocalSubmodule::from_int_rows(&m, vec![vec![1, 0]]).unwrap();
        let b = LocalSubmodule::from_int_rows(&m, vec![vec![0, 1]]).unwrap();

        // l + r = 0: C = R(1,1), both coefficients units
        let c = LocalSubmodule::from_int_rows(&m, vec![vec![1, 1]]).unwrap();
        let u = case_coordinates(&m, &a, &c, &b).unwrap();
        assert!(verify_splitting(&m, &[&a, &u]));
        assert!(verify_splitting(&m, &[&c, &u]));

        // l = m: C = R(1,5), s divisible by p
        let c2 = LocalSubmodule::from_int_rows(&m, vec![vec![1, 5]]).unwrap();
        let u2 = case_coordinates(&m, &a, &c2, &b).unwrap();
        assert!(verify_splitting(&m, &[&a, &u2]));
        assert!(verify_splitting(&m, &[&c2, &u2]));

        // r = m: C = R(5,1), r divisible by p
        let c3 = LocalSubmodule::from_int_rows(&m, vec![vec![5, 1]]).unwrap();
        let u3 = case_coordinates(&m, &a, &c3, &b).unwrap();
        assert!(verify_splitting(&m, &[&a, &u3]));
        assert!(verify_splitting(&m, &[&c3, &u3]));
    }

    #[test]
    fn rank2_reduction_report() {
        let m = LocalizedModule::new(2, 4);
        let report = rank2_reduction_check(&m, 50, 42).unwrap();
        assert_eq!(report.successes, 50);
        assert!(report.stats.min_rank_reached <= 2);
    }
}
