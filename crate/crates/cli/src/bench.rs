//! Timing of polynomial vs brute-force Shapley on seeded samples of PF_n.

use std::io::Write;
use std::time::Instant;

use parkgame_core::{
    sample_parking_function, shapley, shapley_bruteforce_perm, shapley_bruteforce_subset,
    Allocation, Error, Limits, PreferenceProfile, Result,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::args::{BenchArgs, Method};

pub const HEADER: [&str; 6] = ["n", "method", "samples", "median_ms", "min_ms", "agreement"];

/// Samples for size `n`; the stream depends only on `(seed, n)`.
pub fn samples(seed: u64, n: usize, count: usize) -> Vec<PreferenceProfile> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n as u64);
    (0..count)
        .map(|_| sample_parking_function(&mut rng, n))
        .collect()
}

fn solve(method: Method, p: &PreferenceProfile, limits: &Limits) -> Result<Allocation> {
    match method {
        Method::Poly => shapley(p),
        Method::BruteSubset => shapley_bruteforce_subset(p, limits),
        Method::BrutePerm => shapley_bruteforce_perm(p, limits),
    }
}

fn median(sorted: &[f64]) -> f64 {
    let k = sorted.len();
    if k % 2 == 1 {
        sorted[k / 2]
    } else {
        (sorted[k / 2 - 1] + sorted[k / 2]) / 2.0
    }
}

/// Writes the CSV report. A method whose work cap is exceeded gets a
/// `skipped` row with empty timings.
pub fn run(
    args: &BenchArgs,
    limits: &Limits,
    out: &mut dyn Write,
) -> Result<(), Box<dyn std::error::Error>> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for n in args.min_n.max(1)..=args.max_n {
        let profiles = samples(args.seed, n, args.samples);
        let mut reference: Vec<Allocation> = Vec::new();
        for method in [Method::Poly, Method::BruteSubset, Method::BrutePerm] {
            let mut times = Vec::with_capacity(profiles.len());
            let mut agree = true;
            let mut skipped = false;
            for (i, p) in profiles.iter().enumerate() {
                let start = Instant::now();
                let phi = match solve(method, p, limits) {
                    Ok(phi) => phi,
                    Err(Error::ResourceLimit { .. }) => {
                        skipped = true;
                        break;
                    }
                    Err(e) => return Err(e.into()),
                };
                times.push(start.elapsed().as_secs_f64() * 1e3);
                if method == Method::Poly {
                    reference.push(phi);
                } else {
                    agree &= reference.get(i) == Some(&phi);
                }
            }
            let row: [String; 6] = if skipped {
                [
                    n.to_string(),
                    method.name().into(),
                    "0".into(),
                    String::new(),
                    String::new(),
                    "skipped".into(),
                ]
            } else {
                times.sort_by(f64::total_cmp);
                let (med, min) = match times.first() {
                    Some(&min) => (format!("{:.3}", median(&times)), format!("{min:.3}")),
                    None => (String::new(), String::new()),
                };
                let flag = match method {
                    Method::Poly => String::new(),
                    _ => agree.to_string(),
                };
                [
                    n.to_string(),
                    method.name().into(),
                    times.len().to_string(),
                    med,
                    min,
                    flag,
                ]
            };
            w.write_record(&row)?;
        }
        w.flush()?;
    }
    Ok(())
}
