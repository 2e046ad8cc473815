use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use domcount_core::Family;

#[derive(Debug, Parser)]
#[command(name = "domcount", version, about = "Exact domination polynomials and dominating-set counts of lattice graphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Worker threads (defaults to available parallelism).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Abort when the estimated working set exceeds this size (e.g. 512M, 4G).
    /// DOMCOUNT_MAX_MEM takes precedence.
    #[arg(long, global = true, value_parser = parse_bytes)]
    pub max_mem: Option<u64>,
    /// Abort when a frontier holds more configurations than this.
    #[arg(long, global = true)]
    pub max_signatures: Option<usize>,
    /// Save a frontier snapshot after every row and resume from the latest.
    #[arg(long, global = true)]
    pub checkpoint_dir: Option<PathBuf>,
    /// Merge mirror-image and rotated row states during the sweep.
    #[arg(long, global = true)]
    pub symmetry: bool,
    /// Per-row progress on stderr.
    #[arg(long, global = true)]
    pub progress: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Bfile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Stat {
    Gamma,
    Ngamma,
    Total,
}

#[derive(Debug, Args)]
pub struct Graph {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    /// Row width (cycle length for cylinder and torus).
    #[arg(short)]
    pub m: usize,
    /// Number of rows.
    #[arg(short)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct Ring {
    /// Compute modulo this prime.
    #[arg(long = "mod", value_name = "P", conflicts_with = "crt")]
    pub modulus: Option<u32>,
    /// Reconstruct exact values from runs modulo several primes.
    #[arg(long)]
    pub crt: bool,
    /// Bit width of the CRT primes (8..=31).
    #[arg(long, default_value_t = 31, requires = "crt", value_parser = clap::value_parser!(u32).range(8..=31))]
    pub bits: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Domination polynomial of one graph.
    Poly {
        #[command(flatten)]
        graph: Graph,
        #[command(flatten)]
        ring: Ring,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Number of dominating sets of one graph.
    Count {
        #[command(flatten)]
        graph: Graph,
        #[command(flatten)]
        ring: Ring,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// γ, N_γ or total counts over a block of sizes, one row per n.
    Table {
        #[arg(long, value_enum)]
        stat: Stat,
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, value_parser = parse_range, required_unless_present = "diagonal")]
        m_range: Option<RangeInclusive<usize>>,
        #[arg(long, value_parser = parse_range)]
        n_range: RangeInclusive<usize>,
        /// Only the square sizes m = n, one line per n; `--m-range` is ignored.
        #[arg(long)]
        diagonal: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Growth constants μ_m and their extrapolation in 1/m.
    Growth {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        /// Widths to sample (defaults depend on the family).
        #[arg(long, value_parser = parse_range)]
        m_range: Option<RangeInclusive<usize>>,
        /// Decimal digits at which successive ratio estimates must agree.
        #[arg(long, default_value_t = 25)]
        digits: usize,
        /// Largest number of rows tried per width.
        #[arg(long, default_value_t = 1024)]
        n_cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// b-file of a supported integer sequence.
    Oeis {
        /// Sequence id, e.g. A133515.
        id: String,
        /// Number of terms.
        #[arg(long, default_value_t = 10)]
        terms: usize,
        /// Index of the first term, overriding the sequence default.
        #[arg(long)]
        offset: Option<usize>,
    },
    /// Check the engine against brute force and the reference tables.
    Verify {
        /// Largest vertex count enumerated by brute force (at most 24).
        #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..=24))]
        max_cells: u64,
        /// Largest square size checked against the reference polynomials.
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..=8))]
        golden_n: u64,
    },
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse::<Family>().map_err(|e| e.to_string())
}

/// `a`, `a..b`, `a..=b` or `a-b`, all inclusive.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad range bound {t:?}"));
    let (lo, hi) = if let Some((a, b)) = s.split_once("..=") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = s.split_once("..") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = s.split_once('-') {
        (num(a)?, num(b)?)
    } else {
        let v = num(s)?;
        (v, v)
    };
    if lo == 0 || lo > hi {
        return Err(format!("range {s:?} is empty or starts at 0"));
    }
    Ok(lo..=hi)
}

/// Byte counts with an optional K, M, G or T suffix (powers of 1024).
pub fn parse_bytes(s: &str) -> Result<u64, String> {
    let t = s.trim();
    let (digits, shift) = match t.chars().last().map(|c| c.to_ascii_uppercase()) {
        Some('K') => (&t[..t.len() - 1], 10),
        Some('M') => (&t[..t.len() - 1], 20),
        Some('G') => (&t[..t.len() - 1], 30),
        Some('T') => (&t[..t.len() - 1], 40),
        _ => (t, 0),
    };
    let v: u64 = digits.trim().parse().map_err(|_| format!("bad memory size {s:?}"))?;
    v.checked_mul(1u64 << shift).ok_or_else(|| format!("memory size {s:?} overflows"))
}
