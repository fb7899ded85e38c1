//! The parking process on a one-way street.
//!
//! Spots and preferences are 1-based, as in the usual presentation of
//! parking functions. Car indices are 0-based Rust indices.

use std::fmt;

use num_bigint::BigUint;
use rand::Rng;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::numeric::binomial;

/// Preferences of `n` cars on a street of `m >= n` spots.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PreferenceProfile {
    spots: usize,
    prefs: Vec<u32>,
}

impl PreferenceProfile {
    /// Builds a profile on `spots` spots, rejecting empty tuples, `spots < n`
    /// and preferences outside `1..=spots`.
    pub fn new(prefs: Vec<u32>, spots: usize) -> Result<Self> {
        if prefs.is_empty() {
            return Err(Error::InvalidProfile("at least one car is required".into()));
        }
        if spots < prefs.len() {
            return Err(Error::InvalidProfile(format!(
                "{} cars need at least as many spots, got m = {spots}",
                prefs.len()
            )));
        }
        if let Some((i, &a)) = prefs
            .iter()
            .enumerate()
            .find(|(_, &a)| a == 0 || a as usize > spots)
        {
            return Err(Error::InvalidProfile(format!(
                "preference {a} of car {} is outside [1, {spots}]",
                i + 1
            )));
        }
        Ok(PreferenceProfile { spots, prefs })
    }

    /// A profile with as many spots as cars.
    pub fn square(prefs: Vec<u32>) -> Result<Self> {
        let n = prefs.len();
        Self::new(prefs, n)
    }

    pub fn cars(&self) -> usize {
        self.prefs.len()
    }

    pub fn spots(&self) -> usize {
        self.spots
    }

    pub fn prefs(&self) -> &[u32] {
        &self.prefs
    }

    pub fn pref(&self, car: usize) -> u32 {
        self.prefs[car]
    }

    /// True when the preferences are a permutation of `1..=n`.
    pub fn is_permutation(&self) -> bool {
        let n = self.cars();
        let mut seen = vec![false; n];
        for &a in &self.prefs {
            let a = a as usize;
            if a > n || seen[a - 1] {
                return false;
            }
            seen[a - 1] = true;
        }
        true
    }
}

impl fmt::Debug for PreferenceProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} on {} spots", self.prefs, self.spots)
    }
}

impl fmt::Display for PreferenceProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for a in &self.prefs {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
            first = false;
        }
        if self.spots != self.prefs.len() {
            write!(f, " m={}", self.spots)?;
        }
        Ok(())
    }
}

/// An arrival order: `position(car)` is the 0-based turn at which `car` arrives.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArrivalOrder {
    position: Vec<usize>,
    sequence: Vec<usize>,
}

impl ArrivalOrder {
    pub fn identity(n: usize) -> Self {
        ArrivalOrder {
            position: (0..n).collect(),
            sequence: (0..n).collect(),
        }
    }

    /// From the position of each car.
    pub fn from_positions(position: Vec<usize>) -> Result<Self> {
        let sequence = invert(&position)
            .ok_or_else(|| Error::InvalidProfile(format!("{position:?} is not a permutation")))?;
        Ok(ArrivalOrder { position, sequence })
    }

    /// From the cars listed in order of arrival.
    pub fn from_sequence(sequence: Vec<usize>) -> Result<Self> {
        let position = invert(&sequence)
            .ok_or_else(|| Error::InvalidProfile(format!("{sequence:?} is not a permutation")))?;
        Ok(ArrivalOrder { position, sequence })
    }

    pub fn len(&self) -> usize {
        self.position.len()
    }

    pub fn is_empty(&self) -> bool {
        self.position.is_empty()
    }

    pub fn position(&self, car: usize) -> usize {
        self.position[car]
    }

    /// Cars in the order they arrive.
    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    pub fn inverse(&self) -> ArrivalOrder {
        ArrivalOrder {
            position: self.sequence.clone(),
            sequence: self.position.clone(),
        }
    }
}

fn invert(perm: &[usize]) -> Option<Vec<usize>> {
    let mut inv = vec![usize::MAX; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        if p >= perm.len() || inv[p] != usize::MAX {
            return None;
        }
        inv[p] = i;
    }
    Some(inv)
}

/// Where each car ended up, or which car failed first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParkingOutcome {
    /// `spots[i]` is the 1-based spot taken by car `i`.
    Parked {
        spots: Vec<u32>,
        displacement: Vec<u64>,
    },
    /// 0-based index of the first car (in arrival order) that found no spot.
    Failed { car: usize },
}

impl ParkingOutcome {
    pub fn is_parked(&self) -> bool {
        matches!(self, ParkingOutcome::Parked { .. })
    }

    pub fn spots(&self) -> Option<&[u32]> {
        match self {
            ParkingOutcome::Parked { spots, .. } => Some(spots),
            ParkingOutcome::Failed { .. } => None,
        }
    }

    pub fn total_displacement(&self) -> Option<u64> {
        match self {
            ParkingOutcome::Parked { displacement, .. } => Some(displacement.iter().sum()),
            ParkingOutcome::Failed { .. } => None,
        }
    }

    /// Occupied spots in increasing order.
    pub fn occupied(&self) -> Option<Vec<u32>> {
        self.spots().map(|s| {
            let mut s = s.to_vec();
            s.sort_unstable();
            s
        })
    }
}

/// A street of `len` spots that cars park on one at a time.
#[derive(Debug, Clone)]
pub struct Street {
    taken: Vec<bool>,
}

impl Street {
    pub fn new(len: usize) -> Self {
        Street {
            taken: vec![false; len],
        }
    }

    /// Parks a car preferring `pref` (1-based) and returns its spot, or
    /// `None` when every spot from `pref` on is taken.
    pub fn park(&mut self, pref: u32) -> Option<u32> {
        let start = pref.checked_sub(1)? as usize;
        let offset = self.taken.get(start..)?.iter().position(|t| !t)?;
        self.taken[start + offset] = true;
        Some((start + offset + 1) as u32)
    }
}

/// Runs the parking process with cars arriving in `order`.
pub fn simulate_park(profile: &PreferenceProfile, order: &ArrivalOrder) -> ParkingOutcome {
    assert_eq!(order.len(), profile.cars(), "arrival order length mismatch");
    let mut street = Street::new(profile.spots());
    let mut spots = vec![0u32; profile.cars()];
    for &car in order.sequence() {
        match street.park(profile.pref(car)) {
            Some(spot) => spots[car] = spot,
            None => return ParkingOutcome::Failed { car },
        }
    }
    let displacement = spots
        .iter()
        .zip(profile.prefs())
        .map(|(&p, &a)| u64::from(p - a))
        .collect();
    ParkingOutcome::Parked {
        spots,
        displacement,
    }
}

/// Total displacement under the identity order.
pub fn total_displacement(profile: &PreferenceProfile) -> Result<u64> {
    match simulate_park(profile, &ArrivalOrder::identity(profile.cars())) {
        ParkingOutcome::Parked { displacement, .. } => Ok(displacement.iter().sum()),
        ParkingOutcome::Failed { car } => Err(Error::NotAParkingFunction { car }),
    }
}

/// Whether every car parks under the identity order.
pub fn is_parking_function(profile: &PreferenceProfile) -> bool {
    simulate_park(profile, &ArrivalOrder::identity(profile.cars())).is_parked()
}

/// Rank map of a sorted rearrangement: `rank(i)` is the 0-based position of
/// car `i` in the weakly increasing rearrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankMap {
    rank: Vec<usize>,
}

impl RankMap {
    pub fn rank(&self, car: usize) -> usize {
        self.rank[car]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.rank
    }

    pub fn is_identity(&self) -> bool {
        self.rank.iter().enumerate().all(|(i, &r)| i == r)
    }

    /// Maps a coalition bitmask through the rank function.
    pub fn map_mask(&self, mask: u64) -> u64 {
        self.rank
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(0, |acc, (_, &r)| acc | 1 << r)
    }
}

/// Weakly increasing rearrangement; ties keep their original relative order.
pub fn sorted_rearrangement(profile: &PreferenceProfile) -> (PreferenceProfile, RankMap) {
    let mut order: Vec<usize> = (0..profile.cars()).collect();
    order.sort_by_key(|&i| profile.pref(i));
    let mut rank = vec![0; profile.cars()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let prefs = order.iter().map(|&i| profile.pref(i)).collect();
    (
        PreferenceProfile {
            spots: profile.spots(),
            prefs,
        },
        RankMap { rank },
    )
}

/// The profile listed in arrival order: entry `k` is the preference of the
/// car arriving `k`-th.
pub fn apply_permutation(profile: &PreferenceProfile, order: &ArrivalOrder) -> PreferenceProfile {
    PreferenceProfile {
        spots: profile.spots(),
        prefs: order
            .sequence()
            .iter()
            .map(|&car| profile.pref(car))
            .collect(),
    }
}

/// `|PF_{n,m}| = (m+1)^(n-1) (m+1-n)`.
pub fn count_parking_functions(n: usize, m: usize) -> Result<BigUint> {
    check_dims(n, m)?;
    Ok(BigUint::from(m + 1).pow((n - 1) as u32) * BigUint::from(m + 1 - n))
}

/// Number of weakly increasing members of `PF_{n,m}`: `(m+1-n)/(m+1) C(m+n, n)`.
/// For `m = n` this is the Catalan number.
pub fn count_weakly_increasing(n: usize, m: usize) -> Result<BigUint> {
    check_dims(n, m)?;
    Ok(binomial(m + n, n) * BigUint::from(m + 1 - n) / BigUint::from(m + 1))
}

fn check_dims(n: usize, m: usize) -> Result<()> {
    if n == 0 || m < n {
        return Err(Error::InvalidProfile(format!(
            "need 1 <= n <= m, got n = {n}, m = {m}"
        )));
    }
    Ok(())
}

/// Lexicographic enumeration of `PF_{n,m}` (or its weakly increasing part).
///
/// Fails with [`Error::ResourceLimit`] when the number of profiles exceeds
/// `limits.enumeration`.
pub fn enumerate_parking_functions(
    n: usize,
    m: usize,
    weakly_increasing_only: bool,
    limits: &Limits,
) -> Result<ParkingFunctions> {
    let count = if weakly_increasing_only {
        count_weakly_increasing(n, m)?
    } else {
        count_parking_functions(n, m)?
    };
    limits.check_big("parking function enumeration", &count, limits.enumeration)?;
    Ok(ParkingFunctions {
        n,
        m,
        increasing: weakly_increasing_only,
        current: Vec::with_capacity(n),
        at_least: vec![0; m + 2],
        started: false,
        finished: false,
    })
}

/// Iterator returned by [`enumerate_parking_functions`].
///
/// A prefix is kept only while it extends to a member: with the remaining
/// cars preferring the smallest allowed value, every `v` must satisfy
/// `#{a >= v} <= m - v + 1`.
#[derive(Debug, Clone)]
pub struct ParkingFunctions {
    n: usize,
    m: usize,
    increasing: bool,
    current: Vec<u32>,
    /// `at_least[v]` counts prefix entries `>= v`.
    at_least: Vec<usize>,
    started: bool,
    finished: bool,
}

impl ParkingFunctions {
    fn floor(&self) -> u32 {
        if self.increasing {
            self.current.last().copied().unwrap_or(1)
        } else {
            1
        }
    }

    fn extendable_with(&self, x: u32) -> bool {
        let remaining = self.n - self.current.len() - 1;
        let fill = if self.increasing { x } else { 1 };
        (1..=self.m).all(|v| {
            let mut c = self.at_least[v] + usize::from(x as usize >= v);
            if fill as usize >= v {
                c += remaining;
            }
            c <= self.m - v + 1
        })
    }

    fn push(&mut self, x: u32) {
        for v in 1..=x as usize {
            self.at_least[v] += 1;
        }
        self.current.push(x);
    }

    fn pop(&mut self) -> Option<u32> {
        let x = self.current.pop()?;
        for v in 1..=x as usize {
            self.at_least[v] -= 1;
        }
        Some(x)
    }

    fn next_valid(&self, from: u32) -> Option<u32> {
        (from..=self.m as u32).find(|&x| self.extendable_with(x))
    }

    fn fill(&mut self) -> bool {
        while self.current.len() < self.n {
            match self.next_valid(self.floor()) {
                Some(x) => self.push(x),
                None => {
                    if !self.bump() {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn bump(&mut self) -> bool {
        while let Some(x) = self.pop() {
            if let Some(y) = self.next_valid(x + 1) {
                self.push(y);
                return true;
            }
        }
        false
    }
}

impl Iterator for ParkingFunctions {
    type Item = PreferenceProfile;

    fn next(&mut self) -> Option<PreferenceProfile> {
        if self.finished {
            return None;
        }
        if self.started && !self.bump() {
            self.finished = true;
            return None;
        }
        self.started = true;
        if !self.fill() {
            self.finished = true;
            return None;
        }
        Some(PreferenceProfile {
            spots: self.m,
            prefs: self.current.clone(),
        })
    }
}

/// Uniform sample from `PF_n` by rejection over `[n]^n`, accepting when the
/// sorted tuple satisfies `a'_i <= i`.
pub fn sample_parking_function<R: Rng + ?Sized>(rng: &mut R, n: usize) -> PreferenceProfile {
    assert!(n >= 1, "need at least one car");
    let mut prefs = vec![0u32; n];
    let mut sorted = vec![0u32; n];
    loop {
        for a in prefs.iter_mut() {
            *a = rng.random_range(1..=n as u32);
        }
        sorted.copy_from_slice(&prefs);
        sorted.sort_unstable();
        if sorted.iter().enumerate().all(|(i, &a)| a as usize <= i + 1) {
            return PreferenceProfile { spots: n, prefs };
        }
    }
}

/// Uniform random arrival order of `n` cars.
pub fn random_order<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ArrivalOrder {
    use rand::seq::SliceRandom;
    let mut seq: Vec<usize> = (0..n).collect();
    seq.shuffle(rng);
    ArrivalOrder::from_sequence(seq).expect("shuffle yields a permutation")
}
