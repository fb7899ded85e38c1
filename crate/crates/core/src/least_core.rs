//! Least core of parking games.
//!
//! The least core value is the smallest `z` for which some efficient
//! allocation `φ` keeps every coalition within `z` of its stand-alone cost:
//!
//! ```text
//! minimize z  subject to  Σ_i φ_i = c([n]),  Σ_{i∈S} φ_i - z <= c(S)  for all S ⊆ [n]
//! ```
//!
//! All `2^n` coalitions are included, the empty one too, which forces
//! `z >= 0`. The program is solved exactly with [`crate::simplex`].

use crate::error::{Error, Result};
use crate::game::{Coalition, GameView};
use crate::limits::Limits;
use crate::numeric::Rational;
use crate::parking::PreferenceProfile;
use crate::shapley::{shapley, Allocation};
use crate::simplex::{maximize, StandardForm};

/// `coeffs · (φ_1, …, φ_n, z)` compared against `rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

/// The least-core program over variables `(φ_1, …, φ_n, z)`, all free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgramExact {
    pub players: usize,
    /// Minimized.
    pub objective: Vec<Rational>,
    pub equalities: Vec<LinearConstraint>,
    pub inequalities: Vec<LinearConstraint>,
    /// Coalition of each of the leading inequalities, ascending bitmask.
    pub coalitions: Vec<Coalition>,
}

impl LinearProgramExact {
    pub fn variables(&self) -> usize {
        self.players + 1
    }

    /// Adds `z <= bound`.
    pub fn cap_excess(&mut self, bound: Rational) {
        let mut coeffs = vec![Rational::zero(); self.variables()];
        coeffs[self.players] = Rational::one();
        self.inequalities
            .push(LinearConstraint { coeffs, rhs: bound });
    }
}

/// Builds the least-core program of `game`, one inequality per coalition.
pub fn build_least_core_lp(game: &GameView<'_>, limits: &Limits) -> Result<LinearProgramExact> {
    let n = game.players();
    limits.check_power_of_two("least-core program", n, limits.least_core)?;
    let values = game.all_values();
    let vars = n + 1;

    let mut objective = vec![Rational::zero(); vars];
    objective[n] = Rational::one();

    let mut efficiency = vec![Rational::one(); vars];
    efficiency[n] = Rational::zero();
    let equalities = vec![LinearConstraint {
        coeffs: efficiency,
        rhs: Rational::from(values[values.len() - 1] as i64),
    }];

    let coalitions: Vec<Coalition> = Coalition::all(n).collect();
    let inequalities = coalitions
        .iter()
        .map(|s| {
            let mut coeffs: Vec<Rational> = (0..n)
                .map(|i| {
                    if s.contains(i) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            coeffs.push(-Rational::one());
            LinearConstraint {
                coeffs,
                rhs: Rational::from(values[s.bits() as usize] as i64),
            }
        })
        .collect();

    Ok(LinearProgramExact {
        players: n,
        objective,
        equalities,
        inequalities,
        coalitions,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub objective: Rational,
    pub point: Vec<Rational>,
}

/// Minimizes the program exactly. Free variables are split into positive
/// and negative parts; each equality becomes a pair of inequalities.
pub fn solve_lp_exact(lp: &LinearProgramExact) -> Result<LpSolution> {
    let vars = lp.variables();
    let well_formed = lp.objective.len() == vars
        && lp
            .equalities
            .iter()
            .chain(&lp.inequalities)
            .all(|c| c.coeffs.len() == vars);
    if !well_formed {
        return Err(Error::MalformedProgram("coefficient count mismatch".into()));
    }
    let split = |coeffs: &[Rational]| -> Vec<Rational> {
        coeffs
            .iter()
            .cloned()
            .chain(coeffs.iter().map(|c| -c))
            .collect()
    };
    let mut rows = Vec::with_capacity(lp.inequalities.len() + 2 * lp.equalities.len());
    let mut rhs = Vec::with_capacity(rows.capacity());
    for c in &lp.inequalities {
        rows.push(split(&c.coeffs));
        rhs.push(c.rhs.clone());
    }
    for c in &lp.equalities {
        let row = split(&c.coeffs);
        rows.push(row.iter().map(|v| -v).collect());
        rhs.push(-&c.rhs);
        rows.push(row);
        rhs.push(c.rhs.clone());
    }
    let negated: Vec<Rational> = lp.objective.iter().map(|c| -c).collect();
    let program = StandardForm {
        objective: split(&negated),
        rows,
        rhs,
    };
    let opt = maximize(&program)?;
    let point = (0..vars)
        .map(|i| &opt.point[i] - &opt.point[vars + i])
        .collect();
    Ok(LpSolution {
        objective: -opt.value,
        point,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeastCoreResult {
    pub z_star: Rational,
    pub allocation: Allocation,
    /// Coalitions with `φ(S) = c(S) + z*`, ascending bitmask.
    pub tight_coalitions: Vec<Coalition>,
}

/// Coalitions whose constraint holds with equality at `(allocation, z)`.
pub fn tight_coalitions(
    game: &GameView<'_>,
    allocation: &Allocation,
    z: &Rational,
) -> Vec<Coalition> {
    Coalition::all(game.players())
        .filter(|&s| {
            allocation.coalition_total(s.bits())
                == &Rational::from(game.characteristic(s) as i64) + z
        })
        .collect()
}

pub fn least_core(profile: &PreferenceProfile, limits: &Limits) -> Result<LeastCoreResult> {
    let game = GameView::new(profile)?;
    let lp = build_least_core_lp(&game, limits)?;
    let solution = solve_lp_exact(&lp).map_err(|e| match e {
        Error::Infeasible | Error::Unbounded => {
            Error::MalformedProgram(format!("least-core program reported {e}"))
        }
        other => other,
    })?;
    let n = game.players();
    let allocation = Allocation::new(solution.point[..n].to_vec());
    let z_star = solution.objective;
    debug_assert_eq!(z_star, solution.point[n]);
    let tight = tight_coalitions(&game, &allocation, &z_star);
    Ok(LeastCoreResult {
        z_star,
        allocation,
        tight_coalitions: tight,
    })
}

/// True when no efficient allocation is coalition-proof, i.e. `z* > 0`.
pub fn core_is_empty(profile: &PreferenceProfile, limits: &Limits) -> Result<bool> {
    Ok(least_core(profile, limits)?.z_star.is_positive())
}

/// How far the Shapley allocation is from the least core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeastCoreGap {
    pub shapley: Allocation,
    pub z_star: Rational,
    /// `max_S (φ(S) - c(S) - z*)`; positive means the Shapley value lies
    /// outside the least core.
    pub max_violation: Rational,
    /// First coalition (ascending bitmask) attaining the maximum.
    pub argmax: Coalition,
}

impl LeastCoreGap {
    pub fn shapley_in_least_core(&self) -> bool {
        !self.max_violation.is_positive()
    }
}

pub fn shapley_least_core_gap(
    profile: &PreferenceProfile,
    limits: &Limits,
) -> Result<LeastCoreGap> {
    let result = least_core(profile, limits)?;
    let phi = shapley(profile)?;
    let game = GameView::new(profile)?;
    let mut best: Option<(Rational, Coalition)> = None;
    for s in Coalition::all(game.players()) {
        let excess = phi.coalition_total(s.bits())
            - Rational::from(game.characteristic(s) as i64)
            - &result.z_star;
        if best.as_ref().is_none_or(|(b, _)| excess > *b) {
            best = Some((excess, s));
        }
    }
    let (max_violation, argmax) = best.expect("at least the empty coalition");
    Ok(LeastCoreGap {
        shapley: phi,
        z_star: result.z_star,
        max_violation,
        argmax,
    })
}
