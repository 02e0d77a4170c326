//! Finite unital rings and the idempotent-lifting condition that
//! characterizes perspectivity on the endomorphism-ring side: whenever
//! e r s e = e for an idempotent e, some t has e r t e = e with e t e a unit
//! of the corner ring eRe. Rings are presented structurally (modular
//! integers, matrix rings, finite products, corners, endomorphism rings of
//! finite abelian groups) or by explicit tables; elements are dense ids so
//! the exhaustive checks run over precomputed multiplication tables.

use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::sync::Arc;

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::summand::is_perspective_bruteforce;
use crate::Caps;

#[derive(Debug, Clone)]
pub enum RingKind {
    /// Z_n, the integers modulo n.
    Modular(i64),
    /// dim x dim matrices over Z_modulus.
    Matrix { dim: usize, modulus: i64 },
    /// Finite direct product.
    Product(Vec<Arc<FiniteRing>>),
    /// Corner e R e at an idempotent e of the base ring.
    Corner { base: Arc<FiniteRing>, e: u64, elements: Vec<u64> },
    /// Endomorphism ring of a finite abelian group; entry (i, j) of a matrix
    /// ranges over the gcd(d_i, d_j) multiples of d_i / gcd(d_i, d_j).
    Endomorphism { group: Group },
    /// Explicit element tables (addition unused by the checks, but carried
    /// for completeness of the presentation).
    Table { add: Vec<u16>, mul: Vec<u16>, one: u64 },
}

#[derive(Debug, Clone)]
pub struct FiniteRing {
    kind: RingKind,
    size: u64,
}

impl FiniteRing {
    pub fn modular(n: i64) -> Result<FiniteRing> {
        if n < 1 {
            return Err(Error::precondition("modulus must be >= 1"));
        }
        Ok(FiniteRing { kind: RingKind::Modular(n), size: n as u64 })
    }

    pub fn matrix(dim: usize, modulus: i64) -> Result<FiniteRing> {
        if modulus < 1 || dim < 1 {
            return Err(Error::precondition("matrix ring needs dim >= 1 and modulus >= 1"));
        }
        let size = (modulus as u64)
            .checked_pow((dim * dim) as u32)
            .ok_or(Error::Overflow)?;
        Ok(FiniteRing { kind: RingKind::Matrix { dim, modulus }, size })
    }

    pub fn product(rings: Vec<FiniteRing>) -> Result<FiniteRing> {
        let mut size: u64 = 1;
        let rings: Vec<Arc<FiniteRing>> = rings.into_iter().map(Arc::new).collect();
        for r in &rings {
            size = size.checked_mul(r.size).ok_or(Error::Overflow)?;
        }
        Ok(FiniteRing { kind: RingKind::Product(rings), size })
    }

    /// The corner ring e R e. The identity is e itself.
    pub fn corner(base: &Arc<FiniteRing>, e: u64) -> Result<FiniteRing> {
        if base.mul(e, e) != e {
            return Err(Error::precondition("corner requires an idempotent"));
        }
        let mut elements: Vec<u64> = (0..base.size).map(|x| base.mul(base.mul(e, x), e)).collect();
        elements.sort_unstable();
        elements.dedup();
        let size = elements.len() as u64;
        Ok(FiniteRing { kind: RingKind::Corner { base: base.clone(), e, elements }, size })
    }

    /// End(G) for a finite abelian group, with the cardinality checked
    /// against the gcd formula before any enumeration.
    pub fn endomorphism(group: &Group, caps: &Caps) -> Result<FiniteRing> {
        let size = end_ring_cardinality(group)?;
        if size > caps.ring_enumeration as i128 {
            return Err(Error::CapExceeded {
                what: "endomorphism ring cardinality",
                cap: caps.ring_enumeration,
                actual: size.min(i64::MAX as i128) as i64,
            });
        }
        // the primary decomposition of G induces a product decomposition of
        // End(G): cross-prime entries are forced to zero by the gcd digits
        let mut per_prime: i128 = 1;
        for &p in group.primes() {
            let coords = group.prime_coordinates(p);
            for &i in &coords {
                for &j in &coords {
                    per_prime *= gcd(group.factors()[i], group.factors()[j]) as i128;
                }
            }
        }
        debug_assert_eq!(per_prime, size);
        Ok(FiniteRing { kind: RingKind::Endomorphism { group: group.clone() }, size: size as u64 })
    }

    pub fn from_tables(add: Vec<u16>, mul: Vec<u16>, one: u64) -> Result<FiniteRing> {
        let size = (add.len() as f64).sqrt() as u64;
        if (size * size) as usize != add.len() || add.len() != mul.len() {
            return Err(Error::precondition("tables must be square and equal-sized"));
        }
        Ok(FiniteRing { kind: RingKind::Table { add, mul, one }, size })
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn zero(&self) -> u64 {
        match &self.kind {
            RingKind::Corner { elements, base, e } => {
                let z = base.mul(base.mul(*e, base.zero()), *e);
                elements.binary_search(&z).expect("zero in corner") as u64
            }
            _ => 0,
        }
    }

    pub fn one(&self) -> u64 {
        match &self.kind {
            RingKind::Modular(_) => 1 % self.size,
            RingKind::Matrix { dim, modulus } => {
                let mut digits = vec![0i64; dim * dim];
                for i in 0..*dim {
                    digits[i * dim + i] = 1 % modulus;
                }
                encode_digits(&digits, &vec![*modulus; dim * dim])
            }
            RingKind::Product(rings) => {
                let parts: Vec<u64> = rings.iter().map(|r| r.one()).collect();
                encode_mixed(&parts, &rings.iter().map(|r| r.size).collect::<Vec<_>>())
            }
            RingKind::Corner { elements, e, .. } => {
                elements.binary_search(e).expect("e in corner") as u64
            }
            RingKind::Endomorphism { group } => {
                let radii = end_digit_radii(group);
                let mut digits = vec![0i64; radii.len()];
                let r = group.rank();
                for i in 0..r {
                    // identity matrix: entry (i, i) = 1 = digit 1 (multiplier d_i/gcd = 1)
                    digits[i * r + i] = 1 % radii[i * r + i];
                }
                encode_digits(&digits, &radii)
            }
            RingKind::Table { one, .. } => *one,
        }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        match &self.kind {
            RingKind::Modular(n) => ((a as i64 + b as i64) % n) as u64,
            RingKind::Matrix { dim, modulus } => {
                let radii = vec![*modulus; dim * dim];
                let da = decode_digits(a, &radii);
                let db = decode_digits(b, &radii);
                let sum: Vec<i64> = da.iter().zip(&db).map(|(x, y)| (x + y) % modulus).collect();
                encode_digits(&sum, &radii)
            }
            RingKind::Product(rings) => {
                let sizes: Vec<u64> = rings.iter().map(|r| r.size).collect();
                let pa = decode_mixed(a, &sizes);
                let pb = decode_mixed(b, &sizes);
                let sum: Vec<u64> = rings.iter().zip(pa.iter().zip(&pb)).map(|(r, (x, y))| r.add(*x, *y)).collect();
                encode_mixed(&sum, &sizes)
            }
            RingKind::Corner { base, elements, .. } => {
                let s = base.add(elements[a as usize], elements[b as usize]);
                elements.binary_search(&s).expect("corner closed under addition") as u64
            }
            RingKind::Endomorphism { group } => {
                let radii = end_digit_radii(group);
                let da = decode_digits(a, &radii);
                let db = decode_digits(b, &radii);
                let sum: Vec<i64> = da
                    .iter()
                    .zip(&db)
                    .zip(&radii)
                    .map(|((x, y), m)| (x + y) % m)
                    .collect();
                encode_digits(&sum, &radii)
            }
            RingKind::Table { add, .. } => add[(a * self.size + b) as usize] as u64,
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match &self.kind {
            RingKind::Modular(n) => ((a as i128 * b as i128) % *n as i128) as u64,
            RingKind::Matrix { dim, modulus } => {
                let k = *dim;
                let radii = vec![*modulus; k * k];
                let da = decode_digits(a, &radii);
                let db = decode_digits(b, &radii);
                let mut prod = vec![0i64; k * k];
                for i in 0..k {
                    for j in 0..k {
                        let mut acc: i128 = 0;
                        for l in 0..k {
                            acc += da[i * k + l] as i128 * db[l * k + j] as i128;
                        }
                        prod[i * k + j] = (acc % *modulus as i128) as i64;
                    }
                }
                encode_digits(&prod, &radii)
            }
            RingKind::Product(rings) => {
                let sizes: Vec<u64> = rings.iter().map(|r| r.size).collect();
                let pa = decode_mixed(a, &sizes);
                let pb = decode_mixed(b, &sizes);
                let prod: Vec<u64> = rings.iter().zip(pa.iter().zip(&pb)).map(|(r, (x, y))| r.mul(*x, *y)).collect();
                encode_mixed(&prod, &sizes)
            }
            RingKind::Corner { base, elements, .. } => {
                let m = base.mul(elements[a as usize], elements[b as usize]);
                elements.binary_search(&m).expect("corner closed under multiplication") as u64
            }
            RingKind::Endomorphism { group } => {
                let r = group.rank();
                let radii = end_digit_radii(group);
                let ma = end_matrix(group, &decode_digits(a, &radii));
                let mb = end_matrix(group, &decode_digits(b, &radii));
                let mut prod = vec![0i64; r * r];
                for i in 0..r {
                    for j in 0..r {
                        let mut acc: i128 = 0;
                        for l in 0..r {
                            acc += ma[i * r + l] as i128 * mb[l * r + j] as i128;
                        }
                        prod[i * r + j] = (acc % group.factors()[i] as i128) as i64;
                    }
                }
                let digits = end_digits(group, &prod);
                encode_digits(&digits, &radii)
            }
            RingKind::Table { mul, .. } => mul[(a * self.size + b) as usize] as u64,
        }
    }

    /// Precomputed multiplication table (id-indexed, row-major).
    pub fn mult_table(&self, caps: &Caps) -> Result<Vec<u16>> {
        if self.size > caps.ring_enumeration as u64 {
            return Err(Error::CapExceeded {
                what: "ring enumeration |R|",
                cap: caps.ring_enumeration,
                actual: self.size as i64,
            });
        }
        if self.size > u16::MAX as u64 + 1 {
            return Err(Error::Overflow);
        }
        let n = self.size;
        let table: Vec<u16> = (0..n)
            .into_par_iter()
            .flat_map_iter(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| self.mul(a, b) as u16)
            .collect();
        Ok(table)
    }

    /// Sampled ring-axiom check: associativity, distributivity, identity,
    /// and commutativity of addition on pseudorandom triples.
    pub fn verify_axioms(&self, samples: u32, seed: u64) -> bool {
        let mut state = seed | 1;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let one = self.one();
        let zero = self.zero();
        if self.size > 1 && one == zero {
            return false;
        }
        for _ in 0..samples {
            let a = next() % self.size;
            let b = next() % self.size;
            let c = next() % self.size;
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return false;
            }
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                return false;
            }
            if self.add(a, b) != self.add(b, a) {
                return false;
            }
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                return false;
            }
            if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                return false;
            }
            if self.mul(one, a) != a || self.mul(a, one) != a {
                return false;
            }
            if self.add(zero, a) != a {
                return false;
            }
        }
        true
    }
}

fn decode_digits(mut ix: u64, radii: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; radii.len()];
    for (slot, &m) in out.iter_mut().zip(radii) {
        *slot = (ix % m as u64) as i64;
        ix /= m as u64;
    }
    out
}

fn encode_digits(digits: &[i64], radii: &[i64]) -> u64 {
    let mut acc: u64 = 0;
    for (&d, &m) in digits.iter().zip(radii).rev() {
        acc = acc * m as u64 + d.rem_euclid(m) as u64;
    }
    acc
}

fn decode_mixed(mut ix: u64, sizes: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; sizes.len()];
    for (slot, &m) in out.iter_mut().zip(sizes) {
        *slot = ix % m;
        ix /= m;
    }
    out
}

fn encode_mixed(parts: &[u64], sizes: &[u64]) -> u64 {
    let mut acc: u64 = 0;
    for (&x, &m) in parts.iter().zip(sizes).rev() {
        acc = acc * m + x;
    }
    acc
}

/// |End(G)| = prod over coordinate pairs of gcd(d_i, d_j).
pub fn end_ring_cardinality(group: &Group) -> Result<i128> {
    let mut size: i128 = 1;
    for &di in group.factors() {
        for &dj in group.factors() {
            size = size.checked_mul(gcd(di, dj) as i128).ok_or(Error::Overflow)?;
        }
    }
    Ok(size)
}

/// Digit radii of End(G): entry (i, j) has gcd(d_i, d_j) admissible values.
fn end_digit_radii(group: &Group) -> Vec<i64> {
    let r = group.rank();
    let mut out = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            out.push(gcd(group.factors()[i], group.factors()[j]));
        }
    }
    out
}

/// Matrix entries from digits: entry (i, j) = digit * d_i / gcd(d_i, d_j).
fn end_matrix(group: &Group, digits: &[i64]) -> Vec<i64> {
    let r = group.rank();
    let mut out = vec![0i64; r * r];
    for i in 0..r {
        for j in 0..r {
            let g = gcd(group.factors()[i], group.factors()[j]);
            out[i * r + j] = digits[i * r + j] * (group.factors()[i] / g);
        }
    }
    out
}

fn end_digits(group: &Group, entries: &[i64]) -> Vec<i64> {
    let r = group.rank();
    let mut out = vec![0i64; r * r];
    for i in 0..r {
        for j in 0..r {
            let g = gcd(group.factors()[i], group.factors()[j]);
            let step = group.factors()[i] / g;
            let e = entries[i * r + j].rem_euclid(group.factors()[i]);
            debug_assert_eq!(e % step, 0, "composition left the valid-entry lattice");
            out[i * r + j] = e / step;
        }
    }
    out
}

/// All idempotents of the ring.
pub fn idempotents(ring: &FiniteRing, caps: &Caps) -> Result<Vec<u64>> {
    if ring.size() > caps.ring_enumeration as u64 {
        return Err(Error::CapExceeded {
            what: "ring enumeration |R|",
            cap: caps.ring_enumeration,
            actual: ring.size() as i64,
        });
    }
    Ok((0..ring.size()).filter(|&x| ring.mul(x, x) == x).collect())
}

/// Unit predicate data for the corner ring e R e.
pub struct CornerUnits {
    pub corner: Vec<u64>,
    unit: Vec<bool>,
    e: u64,
}

impl CornerUnits {
    /// x (an element of the base ring lying in eRe) is a unit of the corner
    /// iff some y in eRe has xy = yx = e.
    pub fn is_unit(&self, x: u64) -> bool {
        match self.corner.binary_search(&x) {
            Ok(pos) => self.unit[pos],
            Err(_) => false,
        }
    }

    pub fn identity(&self) -> u64 {
        self.e
    }
}

/// Compute the corner elements and their unit flags by exhaustive inverse
/// search inside the corner.
pub fn units_of_corner(ring: &FiniteRing, table: &[u16], e: u64) -> CornerUnits {
    let n = ring.size();
    let mul = |a: u64, b: u64| table[(a * n + b) as usize] as u64;
    let mut corner: Vec<u64> = (0..n).map(|x| mul(mul(e, x), e)).collect();
    corner.sort_unstable();
    corner.dedup();
    let unit: Vec<bool> = corner
        .iter()
        .map(|&x| corner.iter().any(|&y| mul(x, y) == e && mul(y, x) == e))
        .collect();
    CornerUnits { corner, unit, e }
}

#[derive(Debug, Clone, Serialize)]
pub struct Condition4Report {
    pub ring: String,
    pub size: u64,
    pub holds: bool,
    /// (e, r, s) with erse = e admitting no valid t, when the condition fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<(u64, u64, u64)>,
    pub idempotents: u64,
    pub elapsed_ms: u64,
}

/// Exhaustive check of the idempotent condition: for every idempotent e and
/// every r admitting some s with erse = e, a t must exist with erte = e and
/// ete a unit of eRe.
pub fn check_condition4(ring: &FiniteRing, caps: &Caps) -> Result<Condition4Report> {
    check_condition4_restricted(ring, caps, None)
}

/// Test-only variant: `t_allowed` restricts the t-search, exercising the
/// failure branch synthetically (no finite ring failing the condition is
/// known; none is claimed).
pub fn check_condition4_restricted(
    ring: &FiniteRing,
    caps: &Caps,
    t_allowed: Option<&(dyn Fn(u64) -> bool + Sync)>,
) -> Result<Condition4Report> {
    let start = std::time::Instant::now();
    let table = ring.mult_table(caps)?;
    let n = ring.size();
    let mul = |a: u64, b: u64| table[(a * n + b) as usize] as u64;
    let idems = idempotents(ring, caps)?;

    // one independent task per idempotent; memoization keys on x = e*r since
    // both searches depend on r only through that product
    let failures: Vec<(u64, u64, u64)> = idems
        .par_iter()
        .filter_map(|&e| {
            let units = units_of_corner(ring, &table, e);
            let mut s_memo: Vec<u8> = vec![0; n as usize];
            let mut t_memo: Vec<u8> = vec![0; n as usize];
            for r in 0..n {
                let x = mul(e, r);
                let s_ok = match s_memo[x as usize] {
                    1 => true,
                    2 => false,
                    _ => {
                        let found = (0..n).any(|s| mul(mul(x, s), e) == e);
                        s_memo[x as usize] = if found { 1 } else { 2 };
                        found
                    }
                };
                if !s_ok {
                    continue;
                }
                let t_ok = match t_memo[x as usize] {
                    1 => true,
                    2 => false,
                    _ => {
                        let ok = (0..n).any(|t| {
                            if let Some(filter) = t_allowed {
                                if !filter(t) {
                                    return false;
                                }
                            }
                            mul(mul(x, t), e) == e && units.is_unit(mul(mul(e, t), e))
                        });
                        t_memo[x as usize] = if ok { 1 } else { 2 };
                        ok
                    }
                };
                if !t_ok {
                    let s = (0..n).find(|&s| mul(mul(x, s), e) == e).unwrap_or(0);
                    return Some((e, r, s));
                }
            }
            None
        })
        .collect();
    let counterexample = failures.into_iter().min();
    let holds = counterexample.is_none();
    Ok(Condition4Report {
        ring: ring.to_string(),
        size: n,
        holds,
        counterexample,
        idempotents: idems.len() as u64,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ErCrosscheck {
    pub group: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ring_perspective: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_perspective: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
    /// Set when a cap refusal turned the check into a skip.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

/// Cross-check that the group-level perspectivity oracle agrees with the
/// idempotent condition on End(G). Cap refusals surface as skips.
pub fn er_crosscheck(group: &Group, caps: &Caps) -> Result<ErCrosscheck> {
    let ring = match FiniteRing::endomorphism(group, caps) {
        Ok(r) => r,
        Err(e @ Error::CapExceeded { .. }) => {
            return Ok(ErCrosscheck {
                group: group.to_string(),
                ring_perspective: None,
                group_perspective: None,
                agree: None,
                skipped: Some(e.to_string()),
            });
        }
        Err(e) => return Err(e),
    };
    let cond4 = match check_condition4(&ring, caps) {
        Ok(rep) => rep,
        Err(e @ Error::CapExceeded { .. }) => {
            return Ok(ErCrosscheck {
                group: group.to_string(),
                ring_perspective: None,
                group_perspective: None,
                agree: None,
                skipped: Some(e.to_string()),
            });
        }
        Err(e) => return Err(e),
    };
    let oracle = match is_perspective_bruteforce(group, caps) {
        Ok(rep) => rep,
        Err(e @ Error::CapExceeded { .. }) => {
            return Ok(ErCrosscheck {
                group: group.to_string(),
                ring_perspective: Some(cond4.holds),
                group_perspective: None,
                agree: None,
                skipped: Some(e.to_string()),
            });
        }
        Err(e) => return Err(e),
    };
    let group_persp = oracle.status == crate::summand::PerspectivityStatus::Perspective;
    Ok(ErCrosscheck {
        group: group.to_string(),
        ring_perspective: Some(cond4.holds),
        group_perspective: Some(group_persp),
        agree: Some(cond4.holds == group_persp),
        skipped: None,
    })
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RingKind::Modular(n) => write!(f, "Zn({n})"),
            RingKind::Matrix { dim, modulus } => write!(f, "Mat({dim},Zn({modulus}))"),
            RingKind::Product(rings) => {
                let parts: Vec<String> = rings.iter().map(|r| r.to_string()).collect();
                write!(f, "prod[{}]", parts.join(";"))
            }
            RingKind::Corner { base, e, .. } => write!(f, "corner({base},{e})"),
            RingKind::Endomorphism { group } => write!(f, "End({group})"),
            RingKind::Table { .. } => write!(f, "table({})", self.size),
        }
    }
}

/// Ring literal: "Zn(6)", "Mat(2,Zn(2))", "prod[Zn(2);Mat(2,Zn(2))]",
/// "End(Z4+Z2)".
pub fn parse_ring(s: &str, caps: &Caps) -> Result<FiniteRing> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("Zn(") {
        let inner = rest.strip_suffix(')').ok_or_else(|| Error::parse(0, "unclosed Zn("))?;
        let n: i64 = inner.trim().parse().map_err(|_| Error::parse(0, format!("bad modulus {inner:?}")))?;
        return FiniteRing::modular(n);
    }
    if let Some(rest) = s.strip_prefix("Mat(") {
        let inner = rest.strip_suffix(')').ok_or_else(|| Error::parse(0, "unclosed Mat("))?;
        let (dim_s, ring_s) = inner
            .split_once(',')
            .ok_or_else(|| Error::parse(0, "Mat needs a dimension and a base ring"))?;
        let dim: usize = dim_s.trim().parse().map_err(|_| Error::parse(0, format!("bad dimension {dim_s:?}")))?;
        let base = parse_ring(ring_s, caps)?;
        let RingKind::Modular(n) = base.kind else {
            return Err(Error::parse(0, "matrix rings are over Zn(..) only".to_string()));
        };
        return FiniteRing::matrix(dim, n);
    }
    if let Some(rest) = s.strip_prefix("prod[") {
        let inner = rest.strip_suffix(']').ok_or_else(|| Error::parse(0, "unclosed prod["))?;
        let mut parts = Vec::new();
        let mut depth = 0usize;
        let mut start = 0usize;
        for (i, ch) in inner.char_indices() {
            match ch {
                '[' | '(' => depth += 1,
                ']' | ')' => depth -= 1,
                ';' if depth == 0 => {
                    parts.push(&inner[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        if !inner[start..].trim().is_empty() {
            parts.push(&inner[start..]);
        }
        let rings: Vec<FiniteRing> = parts.into_iter().map(|p| parse_ring(p, caps)).collect::<Result<_>>()?;
        return FiniteRing::product(rings);
    }
    if let Some(rest) = s.strip_prefix("End(") {
        let inner = rest.strip_suffix(')').ok_or_else(|| Error::parse(0, "unclosed End("))?;
        let group = crate::group::parse_group(inner)?;
        return FiniteRing::endomorphism(&group, caps);
    }
    Err(Error::parse(0, format!("unknown ring literal {s:?}")))
}
