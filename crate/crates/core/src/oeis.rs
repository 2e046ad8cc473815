//! Local b-file generation for the integer sequences this engine reproduces.
//!
//! Two-dimensional tables are linearized by antidiagonals `d = m + n`,
//! `m = 1..d-1` ascending within each antidiagonal; square sequences run
//! along the diagonal.

use std::collections::BTreeMap;

use dashu_int::UBig;

use crate::engine::{canonical_row, EngineOptions};
use crate::error::{Error, Result};
use crate::graph::{Family, GraphSpec};
use crate::signature::{count_signatures, enumerate_codes, SignatureVariant};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistic {
    Gamma,
    MinimumCount,
    Total,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// `n × n`, one term per `n`.
    Square,
    /// `m × n` read by antidiagonals.
    Antidiagonals,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Signatures(SignatureVariant),
    /// Cycle rows up to rotation and reflection.
    DihedralSignatures,
    Graph { family: Family, statistic: Statistic, layout: Layout },
}

#[derive(Debug, Clone, Copy)]
pub struct Sequence {
    pub id: &'static str,
    pub description: &'static str,
    /// b-file index of the first local term.
    pub offset: usize,
    /// First width for signature sequences.
    pub first_m: usize,
    pub source: Source,
}

const fn graph(family: Family, statistic: Statistic, layout: Layout) -> Source {
    Source::Graph { family, statistic, layout }
}

use Family::{Cylinder, Grid, King, Torus};
use Layout::{Antidiagonals, Square};
use Statistic::{Gamma, MinimumCount, Total};

pub const SEQUENCES: &[Sequence] = &[
    Sequence { id: "A001333", description: "row signatures a(m)", offset: 2, first_m: 1, source: Source::Signatures(SignatureVariant::Plain) },
    Sequence { id: "A078057", description: "row signatures a(m)", offset: 1, first_m: 1, source: Source::Signatures(SignatureVariant::Plain) },
    Sequence { id: "A124696", description: "cyclic row signatures", offset: 1, first_m: 1, source: Source::Signatures(SignatureVariant::Cyclic) },
    Sequence { id: "A030270", description: "row signatures up to reflection", offset: 1, first_m: 1, source: Source::Signatures(SignatureVariant::ReflectionReduced) },
    Sequence { id: "A208716", description: "cyclic row signatures up to rotation and reflection", offset: 1, first_m: 1, source: Source::DihedralSignatures },
    Sequence { id: "A104519", description: "domination number of the n x n grid", offset: 1, first_m: 1, source: graph(Grid, Gamma, Square) },
    Sequence { id: "A094087", description: "domination number of the n x n torus", offset: 1, first_m: 1, source: graph(Torus, Gamma, Square) },
    Sequence { id: "A075561", description: "domination number of the m x n king graph", offset: 1, first_m: 1, source: graph(King, Gamma, Antidiagonals) },
    Sequence { id: "A350820", description: "minimum dominating sets of the m x n grid", offset: 1, first_m: 1, source: graph(Grid, MinimumCount, Antidiagonals) },
    Sequence { id: "A347632", description: "minimum dominating sets of the n x n grid", offset: 1, first_m: 1, source: graph(Grid, MinimumCount, Square) },
    Sequence { id: "A347557", description: "minimum dominating sets of the n x n torus", offset: 1, first_m: 1, source: graph(Torus, MinimumCount, Square) },
    Sequence { id: "A350815", description: "minimum dominating sets of the m x n king graph", offset: 1, first_m: 1, source: graph(King, MinimumCount, Antidiagonals) },
    Sequence { id: "A347554", description: "minimum dominating sets of the n x n king graph", offset: 1, first_m: 1, source: graph(King, MinimumCount, Square) },
    Sequence { id: "A218354", description: "dominating sets of the m x n grid", offset: 1, first_m: 1, source: graph(Grid, Total, Antidiagonals) },
    Sequence { id: "A133515", description: "dominating sets of the n x n grid", offset: 1, first_m: 1, source: graph(Grid, Total, Square) },
    Sequence { id: "A286514", description: "dominating sets of the m-cycle by n-path cylinder", offset: 1, first_m: 1, source: graph(Cylinder, Total, Antidiagonals) },
    Sequence { id: "A286914", description: "dominating sets of the n x n cylinder", offset: 1, first_m: 1, source: graph(Cylinder, Total, Square) },
    Sequence { id: "A303334", description: "dominating sets of the n x n torus", offset: 1, first_m: 1, source: graph(Torus, Total, Square) },
    Sequence { id: "A218663", description: "dominating sets of the m x n king graph", offset: 1, first_m: 1, source: graph(King, Total, Antidiagonals) },
    Sequence { id: "A133791", description: "dominating sets of the n x n king graph", offset: 1, first_m: 1, source: graph(King, Total, Square) },
];

pub fn lookup(id: &str) -> Result<&'static Sequence> {
    SEQUENCES
        .iter()
        .find(|s| s.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::Unsupported(format!("unknown sequence {id}")))
}

/// `(m, n)` of the first `count` antidiagonal positions.
pub fn antidiagonal_positions(count: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(count);
    let mut d = 2;
    while out.len() < count {
        for m in 1..d {
            if out.len() == count {
                break;
            }
            out.push((m, d - m));
        }
        d += 1;
    }
    out
}

fn dihedral_count(m: usize) -> Result<UBig> {
    let codes = enumerate_codes(m, true, None)?;
    Ok(UBig::from(codes.iter().filter(|&&c| canonical_row(c, m, true) == c).count()))
}

/// Statistic for every `n = 1..=n_max` at width `m`.
fn column(options: &EngineOptions, family: Family, statistic: Statistic, m: usize, n_max: usize) -> Result<Vec<UBig>> {
    Ok(match statistic {
        Statistic::Total => options.counts_by_rows(family, m, n_max)?,
        Statistic::Gamma => {
            options.lowest_terms_by_rows(family, m, n_max)?.into_iter().map(|(g, _)| UBig::from(g)).collect()
        }
        Statistic::MinimumCount => options.lowest_terms_by_rows(family, m, n_max)?.into_iter().map(|(_, c)| c).collect(),
    })
}

fn single(options: &EngineOptions, spec: &GraphSpec, statistic: Statistic) -> Result<UBig> {
    Ok(match statistic {
        Statistic::Total => options.count(spec)?,
        Statistic::Gamma => UBig::from(options.lowest_term(spec)?.0),
        Statistic::MinimumCount => options.lowest_term(spec)?.1,
    })
}

/// The first `count` local terms.
pub fn terms(options: &EngineOptions, seq: &Sequence, count: usize) -> Result<Vec<UBig>> {
    match seq.source {
        Source::Signatures(variant) => (seq.first_m..seq.first_m + count).map(|m| count_signatures(m, variant)).collect(),
        Source::DihedralSignatures => (seq.first_m..seq.first_m + count).map(dihedral_count).collect(),
        Source::Graph { family, statistic, layout: Layout::Square } => (1..=count)
            .map(|n| {
                if family == Family::King && statistic == Statistic::Gamma {
                    return Ok(UBig::from(n.div_ceil(3).pow(2)));
                }
                single(options, &GraphSpec::new(family, n, n)?, statistic)
            })
            .collect(),
        Source::Graph { family, statistic, layout: Layout::Antidiagonals } => {
            let positions = antidiagonal_positions(count);
            if family == Family::King && statistic == Statistic::Gamma {
                return Ok(positions.iter().map(|&(m, n)| UBig::from(m.div_ceil(3) * n.div_ceil(3))).collect());
            }
            let mut need: BTreeMap<usize, usize> = BTreeMap::new();
            for &(m, n) in &positions {
                let e = need.entry(m).or_default();
                *e = (*e).max(n);
            }
            let mut columns = BTreeMap::new();
            for (&m, &n_max) in &need {
                columns.insert(m, column(options, family, statistic, m, n_max)?);
            }
            Ok(positions.iter().map(|&(m, n)| columns[&m][n - 1].clone()).collect())
        }
    }
}

/// b-file text: one `index value` line per term.
pub fn bfile(options: &EngineOptions, seq: &Sequence, count: usize) -> Result<String> {
    let mut out = String::new();
    for (i, v) in terms(options, seq, count)?.iter().enumerate() {
        out.push_str(&format!("{} {}\n", seq.offset + i, v));
    }
    Ok(out)
}
