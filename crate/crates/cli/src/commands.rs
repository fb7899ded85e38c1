//! Per-profile commands. Each returns the JSON document and its table form.

use std::time::Instant;

use parkgame_core::{
    least_core, shapley, shapley_bruteforce_perm, shapley_bruteforce_subset, total_displacement,
    Coalition, Error, GameView, Limits, PreferenceProfile, Result, SupermodularCheck,
};

use crate::args::Method;
use crate::output::{ResultDocument, Table};

/// What a profile command needs beyond the profile itself.
#[derive(Debug, Clone)]
pub enum ProfileCommand {
    Check,
    Displacement,
    Characteristic(Option<Vec<usize>>),
    Shapley(Method),
    Supermodular(SupermodularCheck),
    LeastCore,
}

impl ProfileCommand {
    pub fn name(&self) -> &'static str {
        match self {
            ProfileCommand::Check => "check",
            ProfileCommand::Displacement => "displacement",
            ProfileCommand::Characteristic(_) => "characteristic",
            ProfileCommand::Shapley(_) => "shapley",
            ProfileCommand::Supermodular(_) => "supermodular",
            ProfileCommand::LeastCore => "leastcore",
        }
    }

    fn method(&self) -> Option<&'static str> {
        match self {
            ProfileCommand::Shapley(m) => Some(m.name()),
            ProfileCommand::Supermodular(SupermodularCheck::Covers) => Some("covers"),
            ProfileCommand::Supermodular(SupermodularCheck::AllPairs) => Some("all-pairs"),
            ProfileCommand::LeastCore => Some("simplex"),
            _ => None,
        }
    }
}

pub struct Report {
    pub doc: ResultDocument,
    pub text: String,
}

pub fn run_profile(
    cmd: &ProfileCommand,
    profile: &PreferenceProfile,
    limits: &Limits,
) -> Result<Report> {
    let start = Instant::now();
    let (values, status, table) = match cmd {
        ProfileCommand::Check => {
            total_displacement(profile)?;
            (vec![], "ok".to_string(), "parking function\n".to_string())
        }
        ProfileCommand::Displacement => {
            let d = total_displacement(profile)?;
            (vec![d.to_string()], "ok".into(), format!("{d}\n"))
        }
        ProfileCommand::Characteristic(coalition) => {
            characteristic(profile, coalition.as_deref(), limits)?
        }
        ProfileCommand::Shapley(method) => {
            let phi = match method {
                Method::Poly => shapley(profile)?,
                Method::BruteSubset => shapley_bruteforce_subset(profile, limits)?,
                Method::BrutePerm => shapley_bruteforce_perm(profile, limits)?,
            };
            let mut t = Table::new(["car", "pref", "value"]);
            for (i, v) in phi.iter().enumerate() {
                t.row(vec![
                    (i + 1).to_string(),
                    profile.pref(i).to_string(),
                    v.to_string(),
                ]);
            }
            t.row(vec!["total".into(), String::new(), phi.total().to_string()]);
            let values = phi.iter().map(|v| v.to_string()).collect();
            (values, "ok".into(), render(&t))
        }
        ProfileCommand::Supermodular(mode) => {
            let game = GameView::new(profile)?;
            let report = game.check_supermodular(*mode, limits)?;
            let status = match report.witness {
                None => "ok".to_string(),
                Some(w) => format!(
                    "violation: car {} with S = {} and T = {}",
                    w.car + 1,
                    w.smaller,
                    w.larger
                ),
            };
            let text = if report.holds {
                "supermodular\n".to_string()
            } else {
                format!("{status}\n")
            };
            (vec![], status, text)
        }
        ProfileCommand::LeastCore => {
            let res = least_core(profile, limits)?;
            let mut text = format!("z* = {}\n", res.z_star);
            let mut t = Table::new(["car", "pref", "allocation"]);
            for (i, v) in res.allocation.iter().enumerate() {
                t.row(vec![
                    (i + 1).to_string(),
                    profile.pref(i).to_string(),
                    v.to_string(),
                ]);
            }
            text.push_str(&render(&t));
            let tight: Vec<String> = res.tight_coalitions.iter().map(|s| s.to_string()).collect();
            text.push_str(&format!("tight coalitions: {}\n", tight.join(" ")));
            let values = std::iter::once(&res.z_star)
                .chain(res.allocation.iter())
                .map(|v| v.to_string())
                .collect();
            (values, "ok".into(), text)
        }
    };
    let mut doc = ResultDocument::new(cmd.name(), profile.cars(), profile.spots(), profile.prefs())
        .timed(start.elapsed());
    doc.method = cmd.method().map(str::to_string);
    doc.values = values;
    doc.status = status;
    Ok(Report { doc, text: table })
}

fn characteristic(
    profile: &PreferenceProfile,
    cars: Option<&[usize]>,
    limits: &Limits,
) -> Result<(Vec<String>, String, String)> {
    let game = GameView::new(profile)?;
    let n = game.players();
    let coalitions: Vec<Coalition> = match cars {
        Some(cars) => {
            if let Some(&car) = cars.iter().find(|&&c| c >= n) {
                return Err(Error::CarOutOfRange { car: car + 1, n });
            }
            vec![Coalition::from_cars(cars.iter().copied())]
        }
        None => {
            let required = 1u128 << n;
            if required > limits.subsets {
                return Err(Error::ResourceLimit {
                    what: "coalition listing",
                    required,
                    cap: limits.subsets,
                });
            }
            Coalition::all(n).collect()
        }
    };
    let mut t = Table::new(["coalition", "cost"]);
    let mut values = Vec::with_capacity(coalitions.len());
    for s in coalitions {
        let c = game.characteristic(s);
        t.row(vec![s.to_string(), c.to_string()]);
        values.push(c.to_string());
    }
    Ok((values, "ok".into(), render(&t)))
}

fn render(t: &Table) -> String {
    let mut buf = Vec::new();
    t.write(&mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("table is UTF-8")
}

/// Parses `"1,3"` (1-based, commas or spaces) into 0-based cars.
pub fn parse_coalition(text: &str) -> std::result::Result<Vec<usize>, String> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<usize>() {
            Ok(0) | Err(_) => Err(format!(
                "invalid car '{t}' in --coalition (cars are numbered from 1)"
            )),
            Ok(c) => Ok(c - 1),
        })
        .collect()
}
