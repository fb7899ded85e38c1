use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::Zero;
use parkgame_core::parking::Street;
use parkgame_core::shapley::{block_contribution, segment_weight_r, QMemo};
use parkgame_core::{
    enumerate_parking_functions, sample_parking_function, shapley, shapley_bruteforce_perm,
    shapley_bruteforce_subset, sorted_rearrangement, total_displacement, Coalition, GameView,
    Limits, PreferenceProfile, Rational,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn check_axioms(p: &PreferenceProfile, phi: &[Rational]) {
    let d = total_displacement(p).unwrap();
    assert_eq!(
        phi.iter().sum::<Rational>(),
        Rational::from(d as i64),
        "{p:?}"
    );
    assert!(phi.iter().all(|v| !v.is_negative()));
    for i in 0..p.cars() {
        for j in 0..p.cars() {
            if p.pref(i) == p.pref(j) {
                assert_eq!(phi[i], phi[j], "{p:?}");
            }
        }
    }
}

#[test]
fn oracle_equivalence_exhaustive() {
    let limits = Limits::default();
    for n in 1..=5 {
        for p in enumerate_parking_functions(n, n, false, &limits).unwrap() {
            let poly = shapley(&p).unwrap();
            assert_eq!(
                poly,
                shapley_bruteforce_subset(&p, &limits).unwrap(),
                "{p:?}"
            );
            assert_eq!(poly, shapley_bruteforce_perm(&p, &limits).unwrap(), "{p:?}");
            check_axioms(&p, &poly);
        }
    }
}

#[test]
fn oracle_equivalence_sampled_larger() {
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in [8, 9, 10, 12] {
        for _ in 0..5 {
            let p = sample_parking_function(&mut rng, n);
            let poly = shapley(&p).unwrap();
            assert_eq!(
                poly,
                shapley_bruteforce_subset(&p, &limits).unwrap(),
                "{p:?}"
            );
            check_axioms(&p, &poly);
        }
    }
}

#[test]
fn nullity_for_never_displaced_cars() {
    for n in 1..=5 {
        for p in enumerate_parking_functions(n, n, false, &Limits::default()).unwrap() {
            let game = GameView::new(&p).unwrap();
            let phi = shapley(&p).unwrap();
            for i in 0..n {
                let null = Coalition::all(n)
                    .filter(|s| !s.contains(i))
                    .all(|s| game.marginal_cost(s, i).unwrap() == 0);
                if null {
                    assert!(phi[i].is_zero(), "{p:?} car {i}");
                }
            }
        }
    }
}

/// Splits the permutation oracle by the occupied block `s..=t` each car
/// runs into, and compares every block against its closed-form contribution.
#[test]
fn block_decomposition_matches_permutations() {
    for n in 2..=6usize {
        let profiles: Vec<_> = enumerate_parking_functions(n, n, true, &Limits::default())
            .unwrap()
            .collect();
        for sorted in profiles {
            let prefs = sorted.prefs();
            for rank in 0..n {
                let mut by_block: HashMap<(i64, i64), BigUint> = HashMap::new();
                for order in (0..n).permutations(n) {
                    let mut street = Street::new(n);
                    let mut occupied = vec![false; n + 2];
                    for &car in &order {
                        if car == rank {
                            break;
                        }
                        let spot = street.park(prefs[car]).unwrap() as usize;
                        occupied[spot] = true;
                    }
                    let a = prefs[rank] as usize;
                    if !occupied[a] {
                        continue;
                    }
                    let mut s = a;
                    while s > 1 && occupied[s - 1] {
                        s -= 1;
                    }
                    let mut t = a;
                    while occupied[t + 1] {
                        t += 1;
                    }
                    *by_block.entry((s as i64, t as i64)).or_default() += BigUint::from(t + 1 - a);
                }
                let mut memo = QMemo::default();
                let a = i64::from(prefs[rank]);
                for s in 1..=a {
                    for t in a..=n as i64 - 1 {
                        let expected = by_block.remove(&(s, t)).unwrap_or_default();
                        let got = block_contribution(prefs, rank, s, t, &mut memo);
                        assert_eq!(got, expected, "{prefs:?} rank {rank} block {s}..={t}");
                    }
                }
                assert!(by_block.is_empty(), "unexpected blocks {by_block:?}");
            }
        }
    }
}

#[test]
fn weight_positive_whenever_block_is_fillable() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..60 {
        let n = 3 + (rand::Rng::random_range(&mut rng, 0..8usize));
        let p = sample_parking_function(&mut rng, n);
        let (sorted, _) = sorted_rearrangement(&p);
        let prefs = sorted.prefs();
        for rank in 0..n {
            let mut rest = prefs.to_vec();
            rest.remove(rank);
            let mut memo = QMemo::new(rest.clone());
            let a = i64::from(prefs[rank]);
            for s in 1..=a {
                for t in a..=n as i64 - 1 {
                    if !memo.count(s, t, (t - s + 1) as usize).is_zero() {
                        let r = segment_weight_r(&rest, s, t, n, &mut memo);
                        assert!(r >= BigUint::from(1u32), "{prefs:?} rank {rank} {s}..={t}");
                    }
                }
            }
        }
    }
}

#[test]
fn car_order_does_not_matter() {
    let p = PreferenceProfile::square(vec![1, 4, 3, 3, 1, 2, 7]).unwrap();
    let (sorted, rank) = sorted_rearrangement(&p);
    let phi = shapley(&p).unwrap();
    let phi_sorted = shapley(&sorted).unwrap();
    for car in 0..7 {
        assert_eq!(phi[car], phi_sorted[rank.rank(car)]);
    }
}
