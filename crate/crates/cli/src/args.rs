use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "parkgame",
    version,
    about = "Exact cost sharing for parking-function games"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report whether each profile is a parking function.
    Check(ProfileArgs),
    /// Total displacement of each profile.
    Displacement(ProfileArgs),
    /// Coalition costs c(S).
    Characteristic {
        #[command(flatten)]
        input: ProfileArgs,
        /// 1-based cars, e.g. "1,3"; an empty string is the empty coalition.
        /// Lists every coalition when omitted.
        #[arg(long)]
        coalition: Option<String>,
    },
    /// Shapley cost shares.
    Shapley {
        #[command(flatten)]
        input: ProfileArgs,
        #[arg(long, value_enum, default_value_t)]
        method: Method,
    },
    /// Check c(S + i) - c(S) <= c(T + i) - c(T) for S ⊆ T.
    Supermodular {
        #[command(flatten)]
        input: ProfileArgs,
        /// Compare every nested pair instead of covers only.
        #[arg(long)]
        all_pairs: bool,
    },
    /// Least-core value z* and an optimal allocation.
    Leastcore(ProfileArgs),
    /// List the (n, m)-parking functions in lexicographic order.
    Enumerate {
        #[command(flatten)]
        family: FamilyArgs,
        /// Print only the number of profiles listed.
        #[arg(long)]
        count_only: bool,
    },
    /// Number of (n, m)-parking functions, by closed form.
    Count {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// CSV timing of polynomial vs brute-force Shapley on sampled profiles.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    /// Preference tuple, e.g. "1,4,3,3,1,2,7" or "1 1 2 m=3".
    #[arg(long, conflicts_with = "file")]
    pub prefs: Option<String>,
    /// File with one tuple per line; "-" reads standard input, which is
    /// also the default when neither --prefs nor --file is given.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Spots for tuples without an m= suffix (default: n).
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub n: usize,
    /// Spots (default: n).
    #[arg(long)]
    pub m: Option<usize>,
    /// Weakly increasing tuples only.
    #[arg(long)]
    pub weakly_increasing: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 1)]
    pub min_n: usize,
    #[arg(long, default_value_t = 10)]
    pub max_n: usize,
    /// Profiles sampled per n.
    #[arg(long, default_value_t = 5)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Method {
    #[default]
    Poly,
    BruteSubset,
    BrutePerm,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Poly => "poly",
            Method::BruteSubset => "brute-subset",
            Method::BrutePerm => "brute-perm",
        }
    }
}
