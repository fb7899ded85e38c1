use itertools::Itertools;
use parkgame_core::parking::random_order;
use parkgame_core::{
    apply_permutation, count_parking_functions, enumerate_parking_functions, is_parking_function,
    simulate_park, total_displacement, ArrivalOrder, Coalition, Limits, PreferenceProfile,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn all_orders(n: usize) -> impl Iterator<Item = ArrivalOrder> {
    (0..n)
        .permutations(n)
        .map(|seq| ArrivalOrder::from_sequence(seq).unwrap())
}

fn sorted_criterion(prefs: &[u32]) -> bool {
    let mut sorted = prefs.to_vec();
    sorted.sort_unstable();
    sorted.iter().enumerate().all(|(i, &a)| a as usize <= i + 1)
}

#[test]
fn order_invariance_exhaustive_small() {
    for n in 1..=5 {
        for m in [n, n + 2] {
            for p in enumerate_parking_functions(n, m, false, &Limits::default()).unwrap() {
                let base = simulate_park(&p, &ArrivalOrder::identity(n));
                for order in all_orders(n) {
                    let out = simulate_park(&p, &order);
                    assert_eq!(out.total_displacement(), base.total_displacement(), "{p:?}");
                    assert_eq!(out.occupied(), base.occupied(), "{p:?}");
                }
            }
        }
    }
}

#[test]
fn order_invariance_sampled() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 6..=7 {
        let profiles: Vec<_> = enumerate_parking_functions(n, n, false, &Limits::default())
            .unwrap()
            .step_by(97)
            .collect();
        for p in profiles {
            let base = simulate_park(&p, &ArrivalOrder::identity(n));
            for _ in 0..5 {
                let out = simulate_park(&p, &random_order(&mut rng, n));
                assert_eq!(out.total_displacement(), base.total_displacement());
                assert_eq!(out.occupied(), base.occupied());
            }
        }
    }
}

#[test]
fn displacement_closed_form() {
    for n in 1..=6u64 {
        for p in
            enumerate_parking_functions(n as usize, n as usize, false, &Limits::default()).unwrap()
        {
            let sum: u64 = p.prefs().iter().map(|&a| u64::from(a)).sum();
            assert_eq!(total_displacement(&p).unwrap(), n * (n + 1) / 2 - sum);
        }
    }
}

#[test]
fn simulation_agrees_with_sorted_criterion() {
    for n in 1..=6usize {
        for prefs in (0..n).map(|_| 1..=n as u32).multi_cartesian_product() {
            let p = PreferenceProfile::square(prefs.clone()).unwrap();
            assert_eq!(
                is_parking_function(&p),
                sorted_criterion(&prefs),
                "{prefs:?}"
            );
        }
    }
}

#[test]
fn enumeration_matches_closed_form() {
    for m in 1..=7 {
        for n in 1..=m {
            let count = enumerate_parking_functions(n, m, false, &Limits::default())
                .unwrap()
                .count();
            assert_eq!(
                count_parking_functions(n, m).unwrap(),
                num_bigint::BigUint::from(count),
                "n={n} m={m}"
            );
        }
    }
}

#[test]
fn sub_profiles_always_park() {
    for n in 1..=5 {
        for p in enumerate_parking_functions(n, n, false, &Limits::default()).unwrap() {
            for s in Coalition::all(n) {
                let sub: Vec<u32> = s.members().map(|i| p.pref(i)).collect();
                if sub.is_empty() {
                    continue;
                }
                let sub = PreferenceProfile::new(sub, n).unwrap();
                assert!(is_parking_function(&sub), "{p:?} restricted to {s}");
            }
        }
    }
}

proptest! {
    #[test]
    fn permutation_action_preserves_multiset(
        prefs in proptest::collection::vec(1u32..=8, 1..=8),
        seed in any::<u64>(),
    ) {
        let p = PreferenceProfile::new(prefs.clone(), 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let order = random_order(&mut rng, prefs.len());
        let moved = apply_permutation(&p, &order);
        let mut a = prefs.clone();
        let mut b = moved.prefs().to_vec();
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a, b);
        for car in 0..prefs.len() {
            prop_assert_eq!(moved.pref(order.position(car)), p.pref(car));
        }
        prop_assert_eq!(apply_permutation(&moved, &order.inverse()).prefs().len(), prefs.len());
    }

    #[test]
    fn outcome_invariants(prefs in proptest::collection::vec(1u32..=6, 1..=6)) {
        let p = PreferenceProfile::new(prefs.clone(), 6).unwrap();
        if let parkgame_core::ParkingOutcome::Parked { spots, displacement } =
            simulate_park(&p, &ArrivalOrder::identity(prefs.len()))
        {
            prop_assert!(spots.iter().all_unique());
            for i in 0..prefs.len() {
                prop_assert!(spots[i] >= prefs[i]);
                prop_assert_eq!(u64::from(spots[i] - prefs[i]), displacement[i]);
            }
        }
    }
}
