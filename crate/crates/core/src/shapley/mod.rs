//! Shapley values of parking games.
//!
//! [`shapley`] is the polynomial-time route: a car's share is its expected
//! displacement over uniformly random arrival orders, and that expectation
//! is counted by the size of the occupied block `s..=t` the car runs into,
//! how many cars sit left and right of that block, and the number of orders
//! consistent with each configuration. [`shapley_bruteforce_perm`] and
//! [`shapley_bruteforce_subset`] are exponential oracles.

mod brute;
pub mod segment;

use std::fmt;
use std::ops::Deref;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

pub use brute::{shapley_bruteforce_perm, shapley_bruteforce_subset};
pub use segment::{
    count_q, count_q_bruteforce, count_q_unmemoized, gamma_count, lambda_count, raise_min,
    segment_weight_r, QMemo, SegmentQuery,
};

use crate::error::{Error, Result};
use crate::numeric::{factorial, Rational};
use crate::parking::{sorted_rearrangement, total_displacement, PreferenceProfile};

/// One cost share per car.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Allocation(Vec<Rational>);

impl Allocation {
    pub fn new(shares: Vec<Rational>) -> Self {
        Allocation(shares)
    }

    pub fn total(&self) -> Rational {
        self.0.iter().sum()
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }

    /// Sum of the shares of the cars in `mask`.
    pub fn coalition_total(&self, mask: u64) -> Rational {
        self.0
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, v)| v)
            .sum()
    }
}

impl Deref for Allocation {
    type Target = [Rational];

    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl fmt::Display for Allocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Allocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Validates that `profile` is a parking function on `n` spots.
pub(crate) fn require_square_parking_function(profile: &PreferenceProfile) -> Result<()> {
    if profile.spots() != profile.cars() {
        return Err(Error::SpotCountMismatch {
            n: profile.cars(),
            m: profile.spots(),
        });
    }
    total_displacement(profile).map(|_| ())
}

/// Contribution of the block `s..=t` to the numerator of the car at sorted
/// position `rank`: `(t - a' + 1) Q(β', s, t, t-s+1) R(β', s, t)`, with `β'`
/// the sorted profile minus that car.
pub fn block_contribution(
    sorted: &[u32],
    rank: usize,
    start: i64,
    end: i64,
    memo: &mut QMemo,
) -> BigUint {
    let n = sorted.len();
    let pref = i64::from(sorted[rank]);
    let rest = without(sorted, rank);
    memo_for(memo, &rest);
    let filled = memo.count(start, end, (end - start + 1) as usize);
    if filled.is_zero() {
        return filled;
    }
    let weight = segment_weight_r(&rest, start, end, n, memo);
    BigUint::from((end - pref + 1) as u64) * filled * weight
}

fn without(sorted: &[u32], rank: usize) -> Vec<u32> {
    let mut rest = Vec::with_capacity(sorted.len() - 1);
    rest.extend_from_slice(&sorted[..rank]);
    rest.extend_from_slice(&sorted[rank + 1..]);
    rest
}

fn memo_for(memo: &mut QMemo, base: &[u32]) {
    if memo.base() != base {
        *memo = QMemo::new(base.to_vec());
    }
}

/// `n!` times the share of the car at sorted position `rank` of a sorted
/// parking function.
fn numerator_sorted(sorted: &[u32], rank: usize) -> BigUint {
    let n = sorted.len();
    // Preferences of a parking function never exceed n.
    assert!(sorted.iter().all(|&a| a as usize <= n));
    let pref = i64::from(sorted[rank]);
    let mut memo = QMemo::new(without(sorted, rank));
    let mut total = BigUint::zero();
    for start in 1..=pref {
        for end in pref..=n as i64 - 1 {
            total += block_contribution(sorted, rank, start, end, &mut memo);
        }
    }
    total
}

/// `n!` times each car's share, in original car order. Cars with equal
/// preferences share one evaluation.
pub fn shapley_numerators(profile: &PreferenceProfile) -> Result<Vec<BigUint>> {
    require_square_parking_function(profile)?;
    let (sorted, rank) = sorted_rearrangement(profile);
    let sorted = sorted.prefs();
    let mut by_rank: Vec<Option<BigUint>> = vec![None; sorted.len()];
    for r in 0..sorted.len() {
        if r > 0 && sorted[r] == sorted[r - 1] {
            by_rank[r] = by_rank[r - 1].clone();
        } else {
            by_rank[r] = Some(numerator_sorted(sorted, r));
        }
    }
    Ok((0..profile.cars())
        .map(|car| {
            by_rank[rank.rank(car)]
                .clone()
                .expect("every rank evaluated")
        })
        .collect())
}

fn over_factorial(numerator: BigUint, n: usize) -> Rational {
    Rational::new(BigInt::from(numerator), BigInt::from(factorial(n)))
        .expect("factorial is positive")
}

/// Shapley value of a single car (0-based index).
pub fn shapley_car(profile: &PreferenceProfile, car: usize) -> Result<Rational> {
    require_square_parking_function(profile)?;
    let n = profile.cars();
    if car >= n {
        return Err(Error::CarOutOfRange { car, n });
    }
    let (sorted, rank) = sorted_rearrangement(profile);
    Ok(over_factorial(
        numerator_sorted(sorted.prefs(), rank.rank(car)),
        n,
    ))
}

/// Shapley value of every car, in polynomial time.
pub fn shapley(profile: &PreferenceProfile) -> Result<Allocation> {
    let n = profile.cars();
    Ok(Allocation(
        shapley_numerators(profile)?
            .into_iter()
            .map(|num| over_factorial(num, n))
            .collect(),
    ))
}
