//! Counting selections of cars that fill a segment of the street.
//!
//! `Q(β', s, t, k)` is the number of size-`k` index selections from the
//! weakly increasing tuple `β'` whose cars, parked alone, all land within
//! spots `s..=t`. Equivalently: shift the selected preferences down by
//! `s - 1` and park them on a street of `t - s + 1` spots; count the
//! selections that fully park (a car preferring a spot before `s` never
//! qualifies).

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::numeric::{binomial, factorial};
use crate::parking::Street;

/// Number of entries `>= t + 2`: cars that can sit right of an empty spot `t + 1`.
pub fn lambda_count(prefs: &[u32], t: i64) -> usize {
    prefs.iter().filter(|&&b| i64::from(b) >= t + 2).count()
}

/// Number of entries `<= s - 2`: cars that can sit left of an empty spot `s - 1`.
pub fn gamma_count(prefs: &[u32], s: i64) -> usize {
    prefs.iter().filter(|&&b| i64::from(b) <= s - 2).count()
}

/// Raises every entry equal to the minimum by one.
pub fn raise_min(prefs: &[u32]) -> Result<Vec<u32>> {
    let min = *prefs.iter().min().ok_or(Error::EmptyTuple)?;
    Ok(prefs.iter().map(|&b| b.max(min + 1)).collect())
}

/// Arguments of one segment count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SegmentQuery {
    /// Weakly increasing preferences to select from.
    pub prefs: Vec<u32>,
    /// First spot of the segment.
    pub start: i64,
    /// Last spot of the segment; `end < start` is an empty segment.
    pub end: i64,
    /// Number of cars to select.
    pub select: usize,
}

impl SegmentQuery {
    pub fn new(prefs: Vec<u32>, start: i64, end: i64, select: usize) -> Self {
        debug_assert!(
            prefs.windows(2).all(|w| w[0] <= w[1]),
            "prefs must be sorted"
        );
        SegmentQuery {
            prefs,
            start,
            end,
            select,
        }
    }
}

/// A recursion state. The tuple it stands for is `base[index..]` with every
/// entry raised to at least `floor`; repeated minimum raises only ever
/// produce tuples of that shape. `floor` is zeroed when it changes nothing,
/// so equal tuples share one key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct StateKey {
    index: u32,
    floor: u32,
    start: i64,
    end: i64,
    select: u32,
}

/// Memo for segment counts over one base tuple.
#[derive(Debug, Default, Clone)]
pub struct QMemo {
    base: Vec<u32>,
    table: FxHashMap<StateKey, BigUint>,
}

impl QMemo {
    pub fn new(base: Vec<u32>) -> Self {
        debug_assert!(base.windows(2).all(|w| w[0] <= w[1]), "base must be sorted");
        QMemo {
            base,
            table: FxHashMap::default(),
        }
    }

    pub fn base(&self) -> &[u32] {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    fn rebind(&mut self, base: &[u32]) {
        if self.base != base {
            self.base = base.to_vec();
            self.table.clear();
        }
    }

    fn key(&self, index: usize, floor: u32, start: i64, end: i64, select: usize) -> StateKey {
        let floor = match self.base.get(index) {
            Some(&b) if floor > b => floor,
            _ => 0,
        };
        StateKey {
            index: index as u32,
            floor,
            start,
            end,
            select: select as u32,
        }
    }

    /// The segment count for `base` itself.
    pub fn count(&mut self, start: i64, end: i64, select: usize) -> BigUint {
        self.eval(0, 0, start, end, select)
    }

    fn eval(&mut self, index: usize, floor: u32, start: i64, end: i64, select: usize) -> BigUint {
        if select == 0 {
            return BigUint::one();
        }
        let remaining = self.base.len() - index;
        if select as i64 > end - start + 1 || select > remaining {
            return BigUint::zero();
        }
        let key = self.key(index, floor, start, end, select);
        if let Some(v) = self.table.get(&key) {
            return v.clone();
        }
        let first = i64::from(self.base[index].max(key.floor));
        let value = if first < start {
            self.eval(index + 1, key.floor, start, end, select)
        } else if first > start {
            self.eval(index, key.floor, start + 1, end, select)
        } else {
            // The first car takes spot `start`; every other car preferring it
            // moves up by one.
            let raised = (first + 1) as u32;
            self.eval(index + 1, raised, start + 1, end, select - 1)
                + self.eval(index + 1, key.floor, start, end, select)
        };
        self.table.insert(key, value.clone());
        value
    }
}

/// Segment count via the memoized recursion. `memo` is rebound (and
/// cleared) when it was built for a different tuple.
pub fn count_q(query: &SegmentQuery, memo: &mut QMemo) -> BigUint {
    memo.rebind(&query.prefs);
    memo.count(query.start, query.end, query.select)
}

/// The same recursion on explicit tuples, without a memo.
pub fn count_q_unmemoized(prefs: &[u32], start: i64, end: i64, select: usize) -> BigUint {
    if select == 0 {
        return BigUint::one();
    }
    if select as i64 > end - start + 1 || select > prefs.len() {
        return BigUint::zero();
    }
    let first = i64::from(prefs[0]);
    if first < start {
        count_q_unmemoized(&prefs[1..], start, end, select)
    } else if first > start {
        count_q_unmemoized(prefs, start + 1, end, select)
    } else {
        let raised = raise_min(prefs).expect("nonempty");
        count_q_unmemoized(&raised[1..], start + 1, end, select - 1)
            + count_q_unmemoized(&prefs[1..], start, end, select)
    }
}

/// Largest tuple accepted by [`count_q_bruteforce`].
pub const BRUTE_FORCE_MAX_TUPLE: usize = 20;

/// Segment count by trying every index selection on a simulated street.
pub fn count_q_bruteforce(query: &SegmentQuery) -> Result<BigUint> {
    let len = query.prefs.len();
    if len > BRUTE_FORCE_MAX_TUPLE {
        return Err(Error::ResourceLimit {
            what: "brute-force segment count",
            required: len as u128,
            cap: BRUTE_FORCE_MAX_TUPLE as u128,
        });
    }
    let width = (query.end - query.start + 1).max(0) as usize;
    let shift = query.start - 1;
    let count = (0..len)
        .combinations(query.select)
        .filter(|chosen| {
            let mut street = Street::new(width);
            chosen.iter().all(|&i| {
                let pref = i64::from(query.prefs[i]) - shift;
                pref >= 1 && street.park(pref as u32).is_some()
            })
        })
        .count();
    Ok(BigUint::from(count))
}

/// Weight of all arrivals in which car `i` finds the block `s..=t` occupied,
/// summed over how many cars sit left of spot `s - 1` and right of `t + 1`:
///
/// `Σ_λ Σ_γ C(Λ_t, λ) Q(β', 1, s-2, γ) (t-s+1+λ+γ)! (n-t+s-λ-γ-2)!`
///
/// `prefs` is the sorted profile with car `i` removed. Terms whose segment
/// count vanishes are skipped.
pub fn segment_weight_r(
    prefs: &[u32],
    start: i64,
    end: i64,
    n: usize,
    memo: &mut QMemo,
) -> BigUint {
    memo.rebind(prefs);
    let right = lambda_count(prefs, end);
    let left = gamma_count(prefs, start);
    let block = (end - start + 1) as usize;
    let mut total = BigUint::zero();
    for gamma in 0..=left {
        let q = memo.count(1, start - 2, gamma);
        if q.is_zero() {
            continue;
        }
        for lambda in 0..=right {
            let before = block + lambda + gamma;
            let after = (n as i64 - 1)
                .checked_sub(before as i64)
                .filter(|a| *a >= 0)
                .unwrap_or_else(|| {
                    panic!(
                        "negative factorial argument: n={n} s={start} t={end} λ={lambda} γ={gamma}"
                    )
                }) as usize;
            total += binomial(right, lambda) * &q * factorial(before) * factorial(after);
        }
    }
    total
}
