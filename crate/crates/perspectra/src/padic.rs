//! Truncated p-adic modules: free Z/p^N-modules at fixed precision N with
//! tracked valuations. A free Z/p^N-module is a homocyclic group, so common
//! complements delegate to the homocyclic construction; results are stable
//! under precision refinement because the construction only consumes the
//! mod-p reductions.

use serde::Serialize;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, Group};
use crate::pgroup::homocyclic_common_complement;
use crate::subgroup::Subgroup;

/// Vector over the integers mod p^N with the valuation floor tracked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicApprox {
    p: i64,
    precision: u32,
    entries: Vec<i64>,
}

impl PadicApprox {
    pub fn new(p: i64, precision: u32, entries: Vec<i64>) -> Result<PadicApprox> {
        assert!(crate::arith::is_prime(p));
        if precision == 0 {
            return Err(Error::precondition("precision N = 0 cannot detect units"));
        }
        let modulus = p.checked_pow(precision).ok_or(Error::Overflow)?;
        let entries = entries.into_iter().map(|x| x.rem_euclid(modulus)).collect();
        Ok(PadicApprox { p, precision, entries })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Minimal valuation over the entries: the floor below which all digits
    /// vanish. None when every entry is 0 mod p^N (valuation >= N, i.e.
    /// indistinguishable from zero at this precision).
    pub fn valuation_floor(&self) -> Option<u32> {
        self.entries
            .iter()
            .filter(|&&x| x != 0)
            .map(|&x| crate::arith::valuation(x, self.p))
            .min()
    }

    /// Unit detection: some coordinate has valuation 0.
    pub fn has_unit_coordinate(&self) -> bool {
        self.valuation_floor() == Some(0)
    }

    /// Truncate to a lower precision.
    pub fn truncate(&self, precision: u32) -> Result<PadicApprox> {
        if precision > self.precision {
            return Err(Error::precondition("cannot refine by truncation"));
        }
        PadicApprox::new(self.p, precision, self.entries.clone())
    }
}

impl fmt::Display for PadicApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The ambient module (Z/p^N)^rank, realized as a homocyclic group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicModule {
    pub p: i64,
    pub precision: u32,
    pub rank: usize,
}

impl PadicModule {
    pub fn new(p: i64, precision: u32, rank: usize) -> Result<PadicModule> {
        assert!(crate::arith::is_prime(p));
        if precision == 0 {
            return Err(Error::precondition("precision N = 0 cannot detect units"));
        }
        p.checked_pow(precision).ok_or(Error::Overflow)?;
        Ok(PadicModule { p, precision, rank })
    }

    pub fn as_group(&self) -> Result<Group> {
        FiniteAbelianGroup::new(&vec![self.p.pow(self.precision); self.rank])
    }
}

impl fmt::Display for PadicModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Zp({},N={})^{}", self.p, self.precision, self.rank)
    }
}

/// Common complement of two summand bases at precision N, exact mod p^N.
/// Returns the canonical basis rows of U.
pub fn padic_common_complement(
    module: &PadicModule,
    a_rows: &[Vec<i64>],
    c_rows: &[Vec<i64>],
) -> Result<Vec<Vec<i64>>> {
    let g = module.as_group()?;
    let a = Subgroup::from_rows(&g, a_rows.to_vec())?;
    let c = Subgroup::from_rows(&g, c_rows.to_vec())?;
    let u = homocyclic_common_complement(&g, &a, &c)?;
    let gens = u.minimal_generators()?;
    Ok(gens.into_iter().map(|(e, _)| e.coords().to_vec()).collect())
}

/// Re-run at precision N+1 (same integer inputs) and truncate: the result
/// must generate the same submodule at precision N. Returns both answers'
/// canonical subgroups at precision N for comparison.
pub fn precision_stability_check(
    module: &PadicModule,
    a_rows: &[Vec<i64>],
    c_rows: &[Vec<i64>],
) -> Result<bool> {
    let u_n = padic_common_complement(module, a_rows, c_rows)?;
    let refined = PadicModule::new(module.p, module.precision + 1, module.rank)?;
    let u_n1 = padic_common_complement(&refined, a_rows, c_rows)?;
    let g = module.as_group()?;
    let at_n = Subgroup::from_rows(&g, u_n)?;
    let truncated = Subgroup::from_rows(&g, u_n1)?;
    Ok(at_n == truncated)
}

/// One per-prime component of a finite product of modules.
#[derive(Debug, Clone)]
pub enum ModuleComponent {
    Localized {
        module: crate::localized::LocalizedModule,
        a: crate::localized::LocalSubmodule,
        c: crate::localized::LocalSubmodule,
    },
    Padic {
        module: PadicModule,
        a_rows: Vec<Vec<i64>>,
        c_rows: Vec<Vec<i64>>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub enum ComponentSolution {
    Localized { module: String, complement: String },
    Padic { module: String, complement: Vec<Vec<i64>> },
}

/// Solve each component independently and aggregate; any failure aborts with
/// its component index.
pub fn product_dispatch(components: &[ModuleComponent]) -> Result<Vec<ComponentSolution>> {
    let mut out = Vec::with_capacity(components.len());
    for (ix, comp) in components.iter().enumerate() {
        let solved = match comp {
            ModuleComponent::Localized { module, a, c } => {
                crate::localized::localized_common_complement(module, a, c)
                    .map(|u| ComponentSolution::Localized {
                        module: module.to_string(),
                        complement: u.to_string(),
                    })
            }
            ModuleComponent::Padic { module, a_rows, c_rows } => {
                padic_common_complement(module, a_rows, c_rows).map(|u| ComponentSolution::Padic {
                    module: module.to_string(),
                    complement: u,
                })
            }
        };
        match solved {
            Ok(s) => out.push(s),
            Err(e) => {
                return Err(Error::precondition(format!("component {ix} failed: {e}")));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn padic_example_p2_n3() {
        // p=2, N=3, rank 2, A=<(1,0)>, C=<(1,2)> -> U=<(0,1)> (Z(8)^2 check)
        let m = PadicModule::new(2, 3, 2).unwrap();
        let u = padic_common_complement(&m, &[vec![1, 0]], &[vec![1, 2]]).unwrap();
        assert_eq!(u, vec![vec![0, 1]]);
    }

    #[test]
    fn padic_equal_inputs() {
        let m = PadicModule::new(3, 2, 2).unwrap();
        let u = padic_common_complement(&m, &[vec![1, 0]], &[vec![1, 0]]).unwrap();
        assert_eq!(u, vec![vec![0, 1]]);
    }

    #[test]
    fn precision_zero_rejected() {
        assert!(PadicModule::new(2, 0, 2).is_err());
        assert!(PadicApprox::new(2, 0, vec![1]).is_err());
    }

    #[test]
    fn valuation_floor_tracking() {
        let v = PadicApprox::new(2, 3, vec![4, 6]).unwrap();
        assert_eq!(v.valuation_floor(), Some(1));
        assert!(!v.has_unit_coordinate());
        let u = PadicApprox::new(2, 3, vec![4, 3]).unwrap();
        assert!(u.has_unit_coordinate());
        let z = PadicApprox::new(2, 3, vec![8, 16]).unwrap();
        assert_eq!(z.valuation_floor(), None);
        assert_eq!(v.truncate(1).unwrap().entries(), &[0, 0]);
    }

    #[test]
    fn precision_stability_random() {
        let mut state = 0x12345u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for &(p, n) in &[(2i64, 3u32), (3, 2)] {
            let m = PadicModule::new(p, n, 3).unwrap();
            let g = m.as_group().unwrap();
            let mut done = 0;
            while done < 40 {
                let rows_a = vec![(0..3).map(|_| (next() % 64) as i64).collect::<Vec<_>>()];
                let rows_c = vec![(0..3).map(|_| (next() % 64) as i64).collect::<Vec<_>>()];
                let a = Subgroup::from_rows(&g, rows_a.clone()).unwrap();
                let c = Subgroup::from_rows(&g, rows_c.clone()).unwrap();
                // keep only full-order rank-1 summand pairs
                let full = p.pow(n);
                let ok = |s: &Subgroup| {
                    s.minimal_generators().map(|gens| gens.len() == 1 && gens[0].1 == full).unwrap_or(false)
                };
                if !ok(&a) || !ok(&c) {
                    continue;
                }
                done += 1;
                assert!(precision_stability_check(&m, &rows_a, &rows_c).unwrap());
            }
        }
    }

    #[test]
    fn product_dispatch_two_primes() {
        let m2 = PadicModule::new(2, 3, 2).unwrap();
        let loc3 = crate::localized::LocalizedModule::new(3, 2);
        let a3 = crate::localized::LocalSubmodule::from_int_rows(&loc3, vec![vec![1, 3]]).unwrap();
        let c3 = crate::localized::LocalSubmodule::from_int_rows(&loc3, vec![vec![1, 0]]).unwrap();
        let comps = vec![
            ModuleComponent::Padic { module: m2, a_rows: vec![vec![1, 0]], c_rows: vec![vec![1, 2]] },
            ModuleComponent::Localized { module: loc3, a: a3, c: c3 },
        ];
        let solutions = product_dispatch(&comps).unwrap();
        assert_eq!(solutions.len(), 2);

        // empty product: trivial answer
        assert!(product_dispatch(&[]).unwrap().is_empty());

        // failing component reports its index
        let locbad = crate::localized::LocalizedModule::new(3, 2);
        let impure = crate::localized::LocalSubmodule::from_int_rows(&locbad, vec![vec![3, 0]]).unwrap();
        let bad = vec![ModuleComponent::Localized { module: locbad, a: impure.clone(), c: impure }];
        let err = product_dispatch(&bad).unwrap_err();
        assert!(err.to_string().contains("component 0"));
    }
}
