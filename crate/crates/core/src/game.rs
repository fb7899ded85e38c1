//! The parking game: each car is a player, and a coalition pays the total
//! displacement its members incur when they alone park on the street.

use std::fmt;
use std::sync::RwLock;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::parking::{total_displacement, PreferenceProfile, Street};

/// Largest player count representable by a [`Coalition`].
pub const MAX_PLAYERS: usize = 64;

/// A set of cars, stored as a bitmask over 0-based car indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coalition(u64);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub fn from_bits(bits: u64) -> Self {
        Coalition(bits)
    }

    pub fn grand(n: usize) -> Self {
        assert!(n <= MAX_PLAYERS);
        if n == MAX_PLAYERS {
            Coalition(u64::MAX)
        } else {
            Coalition((1u64 << n) - 1)
        }
    }

    pub fn from_cars<I: IntoIterator<Item = usize>>(cars: I) -> Self {
        Coalition(cars.into_iter().fold(0, |acc, c| acc | 1 << c))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, car: usize) -> bool {
        self.0 >> car & 1 == 1
    }

    pub fn with(self, car: usize) -> Self {
        Coalition(self.0 | 1 << car)
    }

    pub fn without(self, car: usize) -> Self {
        Coalition(self.0 & !(1 << car))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in increasing order.
    pub fn members(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    /// Every coalition of `n` players, in ascending bitmask order.
    pub fn all(n: usize) -> impl Iterator<Item = Coalition> {
        assert!(n < MAX_PLAYERS);
        (0..1u64 << n).map(Coalition)
    }
}

/// 1-based member list, e.g. `{1,3}`.
impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.members().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The parking game of a parking function, with a memo of evaluated
/// coalitions.
#[derive(Debug)]
pub struct GameView<'a> {
    profile: &'a PreferenceProfile,
    cache: RwLock<FxHashMap<u64, u64>>,
}

impl<'a> GameView<'a> {
    /// Requires `profile` to be a parking function on `n` spots with at most
    /// [`MAX_PLAYERS`] cars.
    pub fn new(profile: &'a PreferenceProfile) -> Result<Self> {
        let n = profile.cars();
        if profile.spots() != n {
            return Err(Error::SpotCountMismatch {
                n,
                m: profile.spots(),
            });
        }
        if n > MAX_PLAYERS {
            return Err(Error::InvalidProfile(format!(
                "coalitions support at most {MAX_PLAYERS} cars, got {n}"
            )));
        }
        total_displacement(profile)?;
        Ok(GameView {
            profile,
            cache: RwLock::new(FxHashMap::default()),
        })
    }

    pub fn profile(&self) -> &PreferenceProfile {
        self.profile
    }

    pub fn players(&self) -> usize {
        self.profile.cars()
    }

    pub fn grand(&self) -> Coalition {
        Coalition::grand(self.players())
    }

    /// `c(S)`: total displacement of the members of `S` parked on the full
    /// street. Memoized.
    pub fn characteristic(&self, coalition: Coalition) -> u64 {
        if coalition.is_empty() {
            return 0;
        }
        if let Some(&v) = self
            .cache
            .read()
            .expect("game cache poisoned")
            .get(&coalition.bits())
        {
            return v;
        }
        let v = self.characteristic_uncached(coalition);
        self.cache
            .write()
            .expect("game cache poisoned")
            .insert(coalition.bits(), v);
        v
    }

    /// `c(S)` without touching the memo.
    pub fn characteristic_uncached(&self, coalition: Coalition) -> u64 {
        let mut street = Street::new(self.profile.spots());
        coalition
            .members()
            .map(|car| {
                let a = self.profile.pref(car);
                let spot = street
                    .park(a)
                    .expect("sub-profile of a parking function always parks");
                u64::from(spot - a)
            })
            .sum()
    }

    /// `c(S ∪ {i}) - c(S)`, the displacement of car `i` arriving right after
    /// the members of `S`.
    pub fn marginal_cost(&self, coalition: Coalition, car: usize) -> Result<u64> {
        if car >= self.players() {
            return Err(Error::CarOutOfRange {
                car,
                n: self.players(),
            });
        }
        if coalition.contains(car) {
            return Err(Error::CarInCoalition { car });
        }
        Ok(self.characteristic(coalition.with(car)) - self.characteristic(coalition))
    }

    /// `c(S)` for every coalition, indexed by bitmask.
    pub fn all_values(&self) -> Vec<u64> {
        Coalition::all(self.players())
            .map(|s| self.characteristic(s))
            .collect()
    }

    /// True when every car prefers a distinct spot, so nobody is ever
    /// displaced.
    pub fn is_modular(&self) -> bool {
        self.profile.is_permutation()
    }

    /// Checks `c(S+i) - c(S) <= c(T+i) - c(T)` for all `i` and `S ⊆ T ⊆ [n]-i`.
    ///
    /// [`SupermodularCheck::Covers`] only compares `T = S + j`: any pair
    /// `S ⊆ T` is joined by a chain of single-element additions, and the
    /// inequality composes along the chain. [`SupermodularCheck::AllPairs`]
    /// walks every pair for auditing.
    pub fn check_supermodular(
        &self,
        mode: SupermodularCheck,
        limits: &Limits,
    ) -> Result<SupermodularReport> {
        let n = self.players();
        limits.check_power_of_two("supermodularity check", n, limits.supermodular)?;
        let values = self.all_values();
        let marginal = |s: u64, i: usize| values[(s | 1 << i) as usize] - values[s as usize];
        let full = Coalition::grand(n).bits();
        let mut witness = None;
        'outer: for i in 0..n {
            let rest = full & !(1 << i);
            match mode {
                SupermodularCheck::Covers => {
                    for s in submasks(rest) {
                        let base = marginal(s, i);
                        for j in Coalition::from_bits(rest & !s).members() {
                            let t = s | 1 << j;
                            if base > marginal(t, i) {
                                witness = Some((i, Coalition(s), Coalition(t)));
                                break 'outer;
                            }
                        }
                    }
                }
                SupermodularCheck::AllPairs => {
                    for t in submasks(rest) {
                        let top = marginal(t, i);
                        for s in submasks(t) {
                            if marginal(s, i) > top {
                                witness = Some((i, Coalition(s), Coalition(t)));
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        Ok(SupermodularReport {
            holds: witness.is_none(),
            witness: witness.map(|(car, smaller, larger)| SupermodularityViolation {
                car,
                smaller,
                larger,
            }),
        })
    }
}

/// All submasks of `mask`, including `0` and `mask` itself.
fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & mask)
        };
        Some(cur)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SupermodularCheck {
    #[default]
    Covers,
    AllPairs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupermodularityViolation {
    pub car: usize,
    pub smaller: Coalition,
    pub larger: Coalition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupermodularReport {
    pub holds: bool,
    pub witness: Option<SupermodularityViolation>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parking::sorted_rearrangement;

    fn game_of(prefs: &[u32]) -> PreferenceProfile {
        PreferenceProfile::square(prefs.to_vec()).unwrap()
    }

    fn set(cars: &[usize]) -> Coalition {
        Coalition::from_cars(cars.iter().map(|c| c - 1))
    }

    #[test]
    fn counterexample_values() {
        let p = game_of(&[1, 1, 2]);
        let g = GameView::new(&p).unwrap();
        let expected = [
            (&[][..], 0),
            (&[1][..], 0),
            (&[2][..], 0),
            (&[3][..], 0),
            (&[1, 3][..], 0),
            (&[2, 3][..], 0),
            (&[1, 2][..], 1),
            (&[1, 2, 3][..], 2),
        ];
        for (cars, v) in expected {
            assert_eq!(g.characteristic(set(cars)), v, "{:?}", cars);
        }
    }

    #[test]
    fn marginal_examples() {
        let p = game_of(&[1, 1, 2]);
        let g = GameView::new(&p).unwrap();
        assert_eq!(g.marginal_cost(set(&[1, 2]), 2).unwrap(), 1);
        assert_eq!(g.marginal_cost(set(&[2]), 0).unwrap(), 1);
        for i in 0..3 {
            assert_eq!(g.marginal_cost(Coalition::EMPTY, i).unwrap(), 0);
        }
        assert_eq!(
            g.marginal_cost(set(&[1]), 0),
            Err(Error::CarInCoalition { car: 0 })
        );
        assert!(g.marginal_cost(Coalition::EMPTY, 3).is_err());
    }

    #[test]
    fn rejects_non_parking_functions() {
        let p = game_of(&[2, 2]);
        assert!(matches!(
            GameView::new(&p),
            Err(Error::NotAParkingFunction { .. })
        ));
        let q = PreferenceProfile::new(vec![1, 2], 3).unwrap();
        assert!(matches!(
            GameView::new(&q),
            Err(Error::SpotCountMismatch { .. })
        ));
    }

    #[test]
    fn supermodular_examples() {
        for prefs in [&[1, 1, 2][..], &[1, 2, 3], &[1, 4, 3, 3, 1, 2, 7]] {
            let p = game_of(prefs);
            let g = GameView::new(&p).unwrap();
            for mode in [SupermodularCheck::Covers, SupermodularCheck::AllPairs] {
                let r = g.check_supermodular(mode, &Limits::default()).unwrap();
                assert!(r.holds && r.witness.is_none());
            }
        }
        let p = game_of(&[1; 13]);
        let g = GameView::new(&p).unwrap();
        assert!(matches!(
            g.check_supermodular(SupermodularCheck::Covers, &Limits::default()),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn modular_games_are_zero() {
        for prefs in [&[2, 1, 3][..], &[1], &[4, 2, 5, 1, 3]] {
            let p = game_of(prefs);
            let g = GameView::new(&p).unwrap();
            assert!(g.is_modular());
            assert!(g.all_values().iter().all(|&v| v == 0));
        }
        let p = game_of(&[1, 1, 2]);
        assert!(!GameView::new(&p).unwrap().is_modular());
    }

    #[test]
    fn rearrangement_preserves_game_exhaustive() {
        for n in 1..=5 {
            for p in crate::parking::enumerate_parking_functions(n, n, false, &Limits::default())
                .unwrap()
            {
                let (sorted, rank) = sorted_rearrangement(&p);
                let g = GameView::new(&p).unwrap();
                let gs = GameView::new(&sorted).unwrap();
                for s in Coalition::all(n) {
                    let v = g.characteristic(s);
                    assert_eq!(
                        v,
                        gs.characteristic(Coalition::from_bits(rank.map_mask(s.bits())))
                    );
                    assert_eq!(v, g.characteristic_uncached(s));
                }
                assert_eq!(g.characteristic(g.grand()), total_displacement(&p).unwrap());
            }
        }
    }

    #[test]
    fn monotone_marginals_exhaustive() {
        for n in 1..=5 {
            for p in crate::parking::enumerate_parking_functions(n, n, false, &Limits::default())
                .unwrap()
            {
                let g = GameView::new(&p).unwrap();
                let full = g.grand().bits();
                for i in 0..n {
                    for t in submasks(full & !(1 << i)) {
                        let top = g.marginal_cost(Coalition(t), i).unwrap();
                        for s in submasks(t) {
                            assert!(g.marginal_cost(Coalition(s), i).unwrap() <= top);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn concurrent_cache_is_consistent() {
        let p = game_of(&[1, 1, 2, 3, 1, 4, 2, 5]);
        let g = GameView::new(&p).unwrap();
        let expected: Vec<u64> = Coalition::all(8)
            .map(|s| g.characteristic_uncached(s))
            .collect();
        std::thread::scope(|scope| {
            for k in 0..4u64 {
                let g = &g;
                let expected = &expected;
                scope.spawn(move || {
                    for s in (0..256u64).map(|x| (x * 37 + k * 11) % 256) {
                        assert_eq!(g.characteristic(Coalition(s)), expected[s as usize]);
                    }
                });
            }
        });
    }

    #[test]
    fn coalition_display() {
        assert_eq!(set(&[1, 3]).to_string(), "{1,3}");
        assert_eq!(Coalition::EMPTY.to_string(), "{}");
        assert_eq!(set(&[1, 3]).members().collect::<Vec<_>>(), vec![0, 2]);
    }
}
