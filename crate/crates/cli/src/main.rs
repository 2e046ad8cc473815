mod args;
mod format;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use domcount_core::analysis::{default_m_range, growth_estimate};
use domcount_core::oeis;
use domcount_core::ring::is_prime_u32;
use domcount_core::{EngineOptions, Error, Family, GraphSpec, Polynomial, RingTag};

use args::{parse_bytes, Cli, Command, Format, Global, Graph, Ring, Stat};

const EXIT_FAILURE: u8 = 1;
const EXIT_GUARD: u8 = 2;
pub const EXIT_MISMATCH: u8 = 3;
const EXIT_USAGE: u8 = 4;

/// A failed command: exit status and diagnostic.
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    pub fn mismatch(message: impl Into<String>) -> Self {
        Failure { code: EXIT_MISMATCH, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::GuardExceeded(_) => EXIT_GUARD,
            Error::WidthOutOfRange { .. }
            | Error::WidthMismatch { .. }
            | Error::ParseSignature(..)
            | Error::KinkOutOfRange { .. }
            | Error::InfeasibleModuli { .. }
            | Error::PrimeWidth(_)
            | Error::Unsupported(_) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(EXIT_FAILURE);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("domcount: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn options(global: &Global) -> Result<EngineOptions, Failure> {
    let max_memory = match std::env::var("DOMCOUNT_MAX_MEM") {
        Ok(v) if !v.trim().is_empty() => Some(parse_bytes(&v).map_err(Failure::usage)?),
        _ => global.max_mem,
    };
    if let Some(workers) = global.workers {
        if workers == 0 {
            return Err(Failure::usage("--workers must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .map_err(|e| Failure::usage(format!("cannot configure workers: {e}")))?;
    }
    Ok(EngineOptions {
        max_signatures: global.max_signatures,
        max_memory,
        symmetry: global.symmetry,
        checkpoint_dir: global.checkpoint_dir.clone(),
        progress: global.progress,
    })
}

fn unsupported(format: Format, command: &str) -> Failure {
    Failure::usage(format!("{command} does not support the {format:?} format"))
}

fn spec_of(graph: &Graph) -> Result<GraphSpec, Failure> {
    Ok(GraphSpec::new(graph.family, graph.m, graph.n)?)
}

fn checked_prime(p: u32) -> Result<u32, Failure> {
    if is_prime_u32(p) {
        Ok(p)
    } else {
        Err(Failure::usage(format!("--mod {p} is not a prime")))
    }
}

fn run(cli: Cli) -> Outcome {
    let opts = options(&cli.global)?;
    match cli.command {
        Command::Poly { graph, ring, format } => poly(&opts, &graph, &ring, format),
        Command::Count { graph, ring, format } => count(&opts, &graph, &ring, format),
        Command::Table { stat, family, m_range, n_range, diagonal, format } => {
            table(&opts, stat, family, m_range, n_range, diagonal, format)
        }
        Command::Growth { family, m_range, digits, n_cap, format } => {
            let range = m_range.unwrap_or_else(|| default_m_range(family));
            let est = growth_estimate(&opts, family, range, digits, n_cap)?;
            format::growth(&est, format).ok_or_else(|| unsupported(format, "growth"))
        }
        Command::Oeis { id, terms, offset } => {
            let mut seq = *oeis::lookup(&id)?;
            if let Some(o) = offset {
                seq.offset = o;
            }
            Ok(oeis::bfile(&opts, &seq, terms)?)
        }
        Command::Verify { max_cells, golden_n } => verify::run(&opts, max_cells as usize, golden_n as usize),
    }
}

fn poly(opts: &EngineOptions, graph: &Graph, ring: &Ring, format: Format) -> Outcome {
    let spec = spec_of(graph)?;
    let p: Polynomial = match (ring.modulus, ring.crt) {
        (Some(p), _) => opts.polynomial(&spec, RingTag::Mod(checked_prime(p)?))?,
        (None, true) => opts.polynomial_crt(&spec, ring.bits)?,
        (None, false) => opts.polynomial(&spec, RingTag::Exact)?,
    };
    format::polynomial(&spec, &p, format).ok_or_else(|| unsupported(format, "poly"))
}

fn count(opts: &EngineOptions, graph: &Graph, ring: &Ring, format: Format) -> Outcome {
    let spec = spec_of(graph)?;
    let (tag, value) = match (ring.modulus, ring.crt) {
        (Some(p), _) => (RingTag::Mod(checked_prime(p)?), opts.count_mod(&spec, p)?),
        (None, true) => (RingTag::Exact, opts.count_crt(&spec, ring.bits)?),
        (None, false) => (RingTag::Exact, opts.count(&spec)?),
    };
    format::count(&spec, &tag.to_string(), &value.to_string(), format).ok_or_else(|| unsupported(format, "count"))
}

fn table(
    opts: &EngineOptions,
    stat: Stat,
    family: Family,
    m_range: Option<std::ops::RangeInclusive<usize>>,
    n_range: std::ops::RangeInclusive<usize>,
    diagonal: bool,
    format: Format,
) -> Outcome {
    let ns: Vec<usize> = n_range.clone().collect();
    let n_max = *n_range.end();
    let column = |m: usize, n_max: usize| -> Result<Vec<String>, Failure> {
        Ok(match stat {
            Stat::Total => opts.counts_by_rows(family, m, n_max)?.iter().map(ToString::to_string).collect(),
            Stat::Gamma => opts.lowest_terms_by_rows(family, m, n_max)?.iter().map(|(g, _)| g.to_string()).collect(),
            Stat::Ngamma => opts.lowest_terms_by_rows(family, m, n_max)?.iter().map(|(_, c)| c.to_string()).collect(),
        })
    };
    if diagonal {
        let rows = ns
            .iter()
            .map(|&n| Ok(vec![column(n, n)?.pop().expect("n >= 1")]))
            .collect::<Result<Vec<_>, Failure>>()?;
        let t = format::Table { family: family.to_string(), stat, ms: ns.clone(), ns, rows };
        return format::diagonal(&t, format).ok_or_else(|| unsupported(format, "table"));
    }
    let ms: Vec<usize> = m_range.expect("required without --diagonal").collect();
    let columns = ms.iter().map(|&m| column(m, n_max)).collect::<Result<Vec<_>, Failure>>()?;
    let rows = ns.iter().map(|&n| columns.iter().map(|c| c[n - 1].clone()).collect()).collect();
    let t = format::Table { family: family.to_string(), stat, ms, ns, rows };
    format::table(&t, format).ok_or_else(|| unsupported(format, "table"))
}
