//! Parking games: cooperative cost sharing on the total displacement of
//! parking functions.
//!
//! Cars arrive one at a time on a one-way street and each takes the first
//! free spot at or after its preference. A coalition of cars is charged the
//! total displacement its members incur when they park alone. This crate
//! computes exact Shapley values of that game in polynomial time, checks
//! supermodularity by brute force, and solves the least-core program
//! exactly.
//!
//! ```
//! use parkgame_core::{shapley, PreferenceProfile};
//!
//! let profile = PreferenceProfile::square(vec![1, 1, 2]).unwrap();
//! let phi = shapley(&profile).unwrap();
//! assert_eq!(phi.to_string(), "(5/6, 5/6, 1/3)");
//! ```

pub mod error;
pub mod game;
pub mod least_core;
pub mod limits;
pub mod numeric;
pub mod parking;
pub mod shapley;
pub mod simplex;

pub use error::{Error, Result};
pub use game::{Coalition, GameView, SupermodularCheck, SupermodularReport};
pub use least_core::{
    build_least_core_lp, core_is_empty, least_core, shapley_least_core_gap, solve_lp_exact,
    LeastCoreGap, LeastCoreResult, LinearProgramExact,
};
pub use limits::Limits;
pub use numeric::{factorial, BigInteger, Rational};
pub use parking::{
    apply_permutation, count_parking_functions, count_weakly_increasing,
    enumerate_parking_functions, is_parking_function, sample_parking_function, simulate_park,
    sorted_rearrangement, total_displacement, ArrivalOrder, ParkingOutcome, PreferenceProfile,
    RankMap,
};
pub use shapley::{
    shapley, shapley_bruteforce_perm, shapley_bruteforce_subset, shapley_car, Allocation,
};
