//! Exact dictionary simplex with Bland's rule.
//!
//! Solves `maximize c·x` subject to `A x <= b`, `x >= 0` over the rationals.
//! Negative right-hand sides go through an auxiliary phase with a single
//! artificial variable. Only the nonbasic columns are stored, so the
//! dictionary is `rows × (variables + 1)` regardless of slack count.

use crate::error::{Error, Result};
use crate::numeric::Rational;

/// `maximize objective·x` subject to `rows[i]·x <= rhs[i]`, `x >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardForm {
    pub objective: Vec<Rational>,
    pub rows: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optimum {
    pub value: Rational,
    pub point: Vec<Rational>,
}

/// Dictionary: `basic[r] = table[r][0] + Σ_j table[r][j+1] · nonbasic[j]`,
/// objective `= objective[0] + Σ_j objective[j+1] · nonbasic[j]`.
/// Variable ids: originals `0..k`, slacks `k..k+m`, artificial `k+m`.
struct Dictionary {
    table: Vec<Vec<Rational>>,
    objective: Vec<Rational>,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
}

enum Step {
    Optimal,
    Unbounded,
    Pivoted,
}

impl Dictionary {
    /// Bland's rule: smallest-id improving variable enters; among minimum
    /// ratios the smallest-id basic variable leaves.
    fn step(&mut self) -> Step {
        let entering = self
            .nonbasic
            .iter()
            .enumerate()
            .filter(|(j, _)| self.objective[j + 1].is_positive())
            .min_by_key(|(_, &id)| id)
            .map(|(j, _)| j);
        let Some(col) = entering else {
            return Step::Optimal;
        };
        let mut best: Option<(usize, Rational)> = None;
        for (r, row) in self.table.iter().enumerate() {
            let coef = &row[col + 1];
            if !coef.is_negative() {
                continue;
            }
            let ratio = row[0].checked_div(&-coef).expect("nonzero");
            let better = match &best {
                None => true,
                Some((br, bratio)) => {
                    ratio < *bratio || (ratio == *bratio && self.basic[r] < self.basic[*br])
                }
            };
            if better {
                best = Some((r, ratio));
            }
        }
        match best {
            None => Step::Unbounded,
            Some((row, _)) => {
                self.pivot(row, col);
                Step::Pivoted
            }
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let c = self.table[row][col + 1].clone();
        let inv = c.recip().expect("pivot element is nonzero");
        // Solve the pivot row for the entering variable.
        let mut solved: Vec<Rational> = self.table[row].iter().map(|v| -(v * &inv)).collect();
        solved[col + 1] = inv;
        let substitute = |target: &mut Vec<Rational>, solved: &[Rational]| {
            let d = std::mem::take(&mut target[col + 1]);
            if d.is_zero() {
                return;
            }
            for (j, s) in solved.iter().enumerate() {
                if j == col + 1 {
                    target[j] = &d * s;
                } else if !s.is_zero() {
                    target[j] = &target[j] + &(&d * s);
                }
            }
        };
        for (r, target) in self.table.iter_mut().enumerate() {
            if r != row {
                substitute(target, &solved);
            }
        }
        substitute(&mut self.objective, &solved);
        self.table[row] = solved;
        std::mem::swap(&mut self.basic[row], &mut self.nonbasic[col]);
    }

    fn run(&mut self) -> Result<()> {
        loop {
            match self.step() {
                Step::Optimal => return Ok(()),
                Step::Unbounded => return Err(Error::Unbounded),
                Step::Pivoted => {}
            }
        }
    }

    fn value_of(&self, id: usize) -> Rational {
        self.basic
            .iter()
            .position(|&b| b == id)
            .map(|r| self.table[r][0].clone())
            .unwrap_or_else(Rational::zero)
    }
}

/// Solves the program exactly. Fails with [`Error::Infeasible`] or
/// [`Error::Unbounded`].
pub fn maximize(lp: &StandardForm) -> Result<Optimum> {
    let k = lp.objective.len();
    let m = lp.rows.len();
    if lp.rhs.len() != m || lp.rows.iter().any(|r| r.len() != k) {
        return Err(Error::MalformedProgram("row lengths do not match".into()));
    }
    let artificial = k + m;
    let needs_phase_one = lp.rhs.iter().any(Rational::is_negative);

    // Slack_i = b_i - a_i·x (+ x0 during phase one).
    let width = k + usize::from(needs_phase_one);
    let table: Vec<Vec<Rational>> = lp
        .rows
        .iter()
        .zip(&lp.rhs)
        .map(|(row, b)| {
            let mut t = Vec::with_capacity(width + 1);
            t.push(b.clone());
            t.extend(row.iter().map(|a| -a));
            if needs_phase_one {
                t.push(Rational::one());
            }
            t
        })
        .collect();
    let mut nonbasic: Vec<usize> = (0..k).collect();
    if needs_phase_one {
        nonbasic.push(artificial);
    }
    let mut dict = Dictionary {
        table,
        objective: vec![Rational::zero(); width + 1],
        basic: (k..k + m).collect(),
        nonbasic,
    };

    if needs_phase_one {
        // maximize -x0
        dict.objective[k + 1] = -Rational::one();
        let worst = (0..m)
            .min_by(|&a, &b| dict.table[a][0].cmp(&dict.table[b][0]).then(a.cmp(&b)))
            .expect("some row is negative");
        dict.pivot(worst, k);
        dict.run()?;
        if dict.objective[0].is_negative() {
            return Err(Error::Infeasible);
        }
        if let Some(row) = dict.basic.iter().position(|&b| b == artificial) {
            // Degenerate: x0 = 0 but basic. Swap it out for any nonbasic
            // variable it depends on.
            let col = (0..dict.nonbasic.len())
                .find(|&j| !dict.table[row][j + 1].is_zero())
                .ok_or_else(|| Error::MalformedProgram("artificial row is empty".into()))?;
            dict.pivot(row, col);
        }
        let col = dict
            .nonbasic
            .iter()
            .position(|&id| id == artificial)
            .expect("artificial is nonbasic");
        for row in dict.table.iter_mut() {
            row.remove(col + 1);
        }
        dict.nonbasic.remove(col);

        // Restate the real objective over the current nonbasic variables.
        let mut objective = vec![Rational::zero(); dict.nonbasic.len() + 1];
        for (id, c) in lp.objective.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match dict.basic.iter().position(|&b| b == id) {
                Some(r) => {
                    for (o, t) in objective.iter_mut().zip(&dict.table[r]) {
                        *o = &*o + &(c * t);
                    }
                }
                None => {
                    let j = dict
                        .nonbasic
                        .iter()
                        .position(|&b| b == id)
                        .expect("variable present");
                    objective[j + 1] = &objective[j + 1] + c;
                }
            }
        }
        dict.objective = objective;
    } else {
        dict.objective = std::iter::once(Rational::zero())
            .chain(lp.objective.iter().cloned())
            .collect();
    }

    dict.run()?;
    let point = (0..k).map(|id| dict.value_of(id)).collect();
    Ok(Optimum {
        value: dict.objective[0].clone(),
        point,
    })
}
