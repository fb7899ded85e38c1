use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Environment variable that overrides every work cap in [`Limits`].
pub const RESOURCE_CAP_ENV: &str = "PARKGAME_RESOURCE_CAP";

/// Work caps for the exponential paths, each counted in items visited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Profiles yielded by an enumeration.
    pub enumeration: u128,
    /// Arrival orders (`n!`) visited by the permutation oracle.
    pub permutations: u128,
    /// Coalitions (`2^n`) visited by the subset oracle.
    pub subsets: u128,
    /// Coalitions (`2^n`) visited by the supermodularity check.
    pub supermodular: u128,
    /// Coalition constraints (`2^n`) materialized for the least-core program.
    pub least_core: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: 50_000_000,
            permutations: 362_880,
            subsets: 1 << 20,
            supermodular: 1 << 12,
            least_core: 1 << 16,
        }
    }
}

impl Limits {
    /// Every cap set to the same work budget.
    pub fn uniform(cap: u128) -> Self {
        Limits {
            enumeration: cap,
            permutations: cap,
            subsets: cap,
            supermodular: cap,
            least_core: cap,
        }
    }

    /// Defaults, unless [`RESOURCE_CAP_ENV`] holds a nonnegative integer.
    pub fn from_env() -> Self {
        std::env::var(RESOURCE_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u128>().ok())
            .map(Limits::uniform)
            .unwrap_or_default()
    }

    pub(crate) fn check(&self, what: &'static str, required: u128, cap: u128) -> Result<()> {
        if required > cap {
            return Err(Error::ResourceLimit {
                what,
                required,
                cap,
            });
        }
        Ok(())
    }

    pub(crate) fn check_big(
        &self,
        what: &'static str,
        required: &BigUint,
        cap: u128,
    ) -> Result<()> {
        self.check(what, required.to_u128().unwrap_or(u128::MAX), cap)
    }

    pub(crate) fn check_factorial(&self, what: &'static str, n: usize, cap: u128) -> Result<()> {
        let mut work: u128 = 1;
        for k in 2..=n as u128 {
            work = work.saturating_mul(k);
        }
        self.check(what, work, cap)
    }

    pub(crate) fn check_power_of_two(&self, what: &'static str, n: usize, cap: u128) -> Result<()> {
        let work = if n >= 127 { u128::MAX } else { 1u128 << n };
        self.check(what, work, cap)
    }
}
