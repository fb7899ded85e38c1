use num_bigint::BigInt;

use crate::error::Result;
use crate::game::{Coalition, GameView};
use crate::limits::Limits;
use crate::numeric::{factorial, Rational};
use crate::parking::{PreferenceProfile, Street};

use super::{require_square_parking_function, Allocation};

/// Average displacement of each car over all `n!` arrival orders.
pub fn shapley_bruteforce_perm(profile: &PreferenceProfile, limits: &Limits) -> Result<Allocation> {
    require_square_parking_function(profile)?;
    let n = profile.cars();
    limits.check_factorial("permutation brute force", n, limits.permutations)?;

    let mut totals = vec![0u128; n];
    let mut order: Vec<usize> = (0..n).collect();
    let mut run = |order: &[usize]| {
        let mut street = Street::new(n);
        for &car in order {
            let a = profile.pref(car);
            let spot = street
                .park(a)
                .expect("parking function parks in every order");
            totals[car] += u128::from(spot - a);
        }
    };

    // Heap's algorithm, iterative form.
    run(&order);
    let mut counters = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(counters[i], i);
            }
            run(&order);
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }

    Ok(to_allocation(totals, n))
}

/// `φ_i = Σ_{S ∌ i} |S|! (n-|S|-1)! (c(S+i) - c(S)) / n!`.
pub fn shapley_bruteforce_subset(
    profile: &PreferenceProfile,
    limits: &Limits,
) -> Result<Allocation> {
    let game = GameView::new(profile)?;
    let n = game.players();
    limits.check_power_of_two("subset brute force", n, limits.subsets)?;

    let values = game.all_values();
    let weights: Vec<u128> = (0..n)
        .map(|k| {
            let w = factorial(k) * factorial(n - k - 1);
            u128::try_from(w).expect("weights fit for n <= 30")
        })
        .collect();
    let mut totals = vec![0u128; n];
    for s in Coalition::all(n) {
        let base = values[s.bits() as usize];
        let w = weights.get(s.len()).copied().unwrap_or(0);
        for (i, total) in totals.iter_mut().enumerate() {
            if !s.contains(i) {
                let marginal = values[s.with(i).bits() as usize] - base;
                *total += w * u128::from(marginal);
            }
        }
    }
    Ok(to_allocation(totals, n))
}

fn to_allocation(totals: Vec<u128>, n: usize) -> Allocation {
    let denom = BigInt::from(factorial(n));
    Allocation::new(
        totals
            .into_iter()
            .map(|t| Rational::new(BigInt::from(t), denom.clone()).expect("positive denominator"))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn pf(prefs: &[u32]) -> PreferenceProfile {
        PreferenceProfile::square(prefs.to_vec()).unwrap()
    }

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    #[test]
    fn two_cars_split_one_displacement() {
        let p = pf(&[1, 1]);
        let limits = Limits::default();
        let half = vec![r(1, 2), r(1, 2)];
        assert_eq!(
            shapley_bruteforce_perm(&p, &limits).unwrap().into_inner(),
            half
        );
        assert_eq!(
            shapley_bruteforce_subset(&p, &limits).unwrap().into_inner(),
            half
        );
    }

    #[test]
    fn oracles_on_worked_example() {
        let p = pf(&[1, 4, 3, 3, 1, 2, 7]);
        let limits = Limits::default();
        let expected = super::super::shapley(&p).unwrap();
        assert_eq!(shapley_bruteforce_perm(&p, &limits).unwrap(), expected);
        assert_eq!(shapley_bruteforce_subset(&p, &limits).unwrap(), expected);
    }

    #[test]
    fn counterexample_and_permutations() {
        let limits = Limits::default();
        assert_eq!(
            shapley_bruteforce_subset(&pf(&[1, 1, 2]), &limits)
                .unwrap()
                .into_inner(),
            vec![r(5, 6), r(5, 6), r(1, 3)]
        );
        assert!(shapley_bruteforce_subset(&pf(&[2, 3, 1]), &limits)
            .unwrap()
            .iter()
            .all(Rational::is_zero));
    }

    #[test]
    fn caps_are_enforced() {
        let limits = Limits::default();
        assert!(matches!(
            shapley_bruteforce_perm(&pf(&[1; 10]), &limits),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(matches!(
            shapley_bruteforce_subset(&pf(&[1; 21]), &limits),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn heap_visits_every_order_once() {
        // With preferences (1,1,...,1) every order displaces cars 0..n-1 by
        // their arrival position, so each car's total is (n-1)! * n(n-1)/2.
        for n in 1..=6usize {
            let p = PreferenceProfile::square(vec![1; n]).unwrap();
            let phi = shapley_bruteforce_perm(&p, &Limits::default()).unwrap();
            for v in phi.iter() {
                assert_eq!(v, &r(n as i64 - 1, 2));
            }
        }
    }
}
