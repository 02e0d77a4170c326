//! perspectra: exact-arithmetic workbench for deciding and constructing
//! common complements of isomorphic direct summands: in finite abelian
//! groups, rational vector spaces, localized and truncated p-adic modules,
//! for rank-1 type sums G+G, and for finite rings via idempotent conditions.

pub mod arith;
pub(crate) mod bitspace;
pub mod error;
pub mod group;
pub mod fpspace;
pub mod hom;
pub mod localized;
pub mod pgroup;
pub mod padic;
pub mod qspace;
pub mod rank1;
pub mod ring;
pub mod subgroup;
pub mod summand;
pub mod sweep;
pub mod zmat;

pub use error::{Error, Result};
pub use group::{parse_element, parse_group, Element, FiniteAbelianGroup, Group};
pub use hom::Homomorphism;
pub use subgroup::{is_direct_sum, parse_subgroup, IsoInvariants, Subgroup};

/// Enumeration caps. Operations that would enumerate past a cap refuse with
/// `Error::CapExceeded` instead of running away.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest |G| for subgroup/summand enumeration.
    pub subgroup_enumeration: i64,
    /// Largest |G| for full perspectivity sweeps.
    pub perspectivity_sweep: i64,
    /// Largest |R| for finite-ring element enumeration (condition-4 checks).
    pub ring_enumeration: i64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { subgroup_enumeration: 1024, perspectivity_sweep: 256, ring_enumeration: 4096 }
    }
}

impl Caps {
    /// Parse overrides of the form "subgroup=2048,sweep=128,ring=4096".
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for part in spec.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::parse(0, format!("bad caps entry {part:?}, expected key=value")))?;
            let v: i64 = value
                .trim()
                .parse()
                .map_err(|_| Error::parse(0, format!("bad caps value {value:?}")))?;
            match key.trim() {
                "subgroup" => self.subgroup_enumeration = v,
                "sweep" => self.perspectivity_sweep = v,
                "ring" => self.ring_enumeration = v,
                other => return Err(Error::parse(0, format!("unknown caps key {other:?}"))),
            }
        }
        Ok(self)
    }
}
