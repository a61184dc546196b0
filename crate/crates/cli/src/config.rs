use std::path::PathBuf;

use carlitz::annih::SearchCaps;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

/// Exact verification runs for the Carlitz cyclotomic function fields over F_q(T).
///
/// Polynomials are little-endian coefficient strings over the prime field of F_q:
/// "1,1,1" is T² + T + 1.
#[derive(Parser, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[command(name = "carlitz", version)]
pub struct RunConfig {
    /// Size of the constant field.
    #[arg(long, default_value_t = 2, global = true)]
    pub q: u32,
    /// Series precision in coefficients; used by `normrel`.
    #[arg(long, env = "CARLITZ_PRECISION", global = true)]
    pub precision: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads; 0 uses every core. The report does not depend on it.
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,
    /// Attach per-check runtimes, which makes reports differ between runs.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "name")]
pub enum Command {
    /// L(χ, 0) for every nontrivial character of H_m, h·R, and the zeta numerator two ways.
    Lfun {
        #[arg(long = "modulus", required = true)]
        moduli: Vec<String>,
    },
    /// The Kronecker limit formula on H_n for every monic divisor n ≠ 1 of m.
    Klf {
        #[arg(long = "modulus", required = true)]
        moduli: Vec<String>,
    },
    /// Series-level norm relations for every (n, p) with deg(np) at most the cap.
    Normrel {
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Sinnott indices [Z[G]:U′] and [R_0:U′_0] of H_m.
    Sinnott {
        #[arg(long = "modulus", required_unless_present = "hm_three_quadratics")]
        moduli: Vec<String>,
        /// Use m = product of the monic irreducible quadratics.
        #[arg(long)]
        hm_three_quadratics: bool,
    },
    /// Lattice index against the L-value product, and the index formula.
    Index {
        #[arg(long = "modulus", required_unless_present = "antidiagonal")]
        moduli: Vec<String>,
        /// The anti-diagonal field ramified at the two given primes.
        #[arg(long, num_args = 2, value_names = ["P1", "P2"])]
        antidiagonal: Option<Vec<String>>,
    },
    /// Ramification invariants, y and the root of y·x = l(η) for a cyclic p^k field.
    Cyclic(FieldArgs),
    /// The modulus m, Q_m primes and auxiliary primes, each re-verified.
    Qsearch {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        caps: CapsArgs,
    },
    /// The η̂/η congruence at a Q_m prime, searched for or given.
    Congruence {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        caps: CapsArgs,
        /// Skip the search and use this prime.
        #[arg(long)]
        qm_prime: Option<String>,
    },
}

/// A cyclic field of degree p^k. Without `--ramified` the primes are the first monic
/// irreducibles of degree d with p^k | q^d − 1.
#[derive(Args, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Ramified primes, repeated; the first one is totally ramified.
    #[arg(long)]
    pub ramified: Vec<String>,
    /// Number of default ramified primes.
    #[arg(long, default_value_t = 2)]
    pub s: usize,
    /// Character weights per ramified prime, comma separated; all 1 by default.
    #[arg(long, value_delimiter = ',')]
    pub weights: Vec<u64>,
    /// Use the anti-diagonal field of two primes instead.
    #[arg(long)]
    pub antidiagonal: bool,
}

#[derive(Args, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapsArgs {
    #[arg(long, default_value_t = 30)]
    pub degree_cap: usize,
    /// Q_m primes to collect.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Candidates examined per degree.
    #[arg(long, default_value_t = 1 << 22)]
    pub scan_limit: u64,
}

impl From<CapsArgs> for SearchCaps {
    fn from(c: CapsArgs) -> SearchCaps {
        SearchCaps { degree_cap: c.degree_cap, count: c.count, scan_limit: c.scan_limit }
    }
}
