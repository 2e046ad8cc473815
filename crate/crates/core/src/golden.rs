//! Published reference values shipped as a fixture file, with the known
//! misprints corrected through an explicit erratum list.

use std::collections::BTreeMap;

use dashu_int::UBig;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::graph::Family;
use crate::ring::{Polynomial, PolynomialJson, RingTag};
use crate::signature::Signature;

const GOLDEN_JSON: &str = include_str!("../data/golden.json");
const MATRICES_TXT: &str = include_str!("../data/transfer_matrices.txt");

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Erratum {
    pub table: String,
    pub family: Family,
    pub n: usize,
    #[serde(default)]
    pub degree: Option<usize>,
    pub printed: String,
    pub corrected: String,
    pub evidence: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase")]
struct CylinderGamma {
    rows_are_n: bool,
    values: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase")]
struct Raw {
    version: u32,
    polynomials: BTreeMap<Family, BTreeMap<String, PolynomialJson>>,
    minimum_counts: BTreeMap<Family, BTreeMap<String, String>>,
    grid_totals: BTreeMap<String, String>,
    cylinder_gamma: CylinderGamma,
    errata: Vec<Erratum>,
}

/// Reference tables with errata applied.
#[derive(Debug, Clone)]
pub struct Golden {
    pub version: u32,
    /// Square `n × n` polynomials per family.
    pub polynomials: BTreeMap<(Family, usize), Polynomial>,
    /// `N_γ` of square `n × n` graphs per family.
    pub minimum_counts: BTreeMap<(Family, usize), UBig>,
    /// Total dominating sets of the square grid.
    pub grid_totals: BTreeMap<usize, UBig>,
    /// `cylinder_gamma[n-1][m-1]` = γ of the cylinder with cycle length `m` and `n` rows.
    pub cylinder_gamma: Vec<Vec<usize>>,
    pub errata: Vec<Erratum>,
}

fn bad(what: impl Into<String>) -> Error {
    Error::Inconsistent(what.into())
}

fn key(n: &str) -> Result<usize> {
    n.parse().map_err(|_| bad(format!("bad size key {n:?}")))
}

fn big(s: &str) -> Result<UBig> {
    s.parse().map_err(|_| bad(format!("bad integer {s:?}")))
}

impl Golden {
    pub fn load() -> Result<Golden> {
        Golden::parse(GOLDEN_JSON)
    }

    pub fn parse(text: &str) -> Result<Golden> {
        let raw: Raw = serde_json::from_str(text).map_err(|e| bad(format!("golden data: {e}")))?;
        let mut polynomials = BTreeMap::new();
        for (family, table) in &raw.polynomials {
            for (n, json) in table {
                polynomials.insert((*family, key(n)?), Polynomial::from_json(RingTag::Exact, json)?);
            }
        }
        let mut minimum_counts = BTreeMap::new();
        for (family, table) in &raw.minimum_counts {
            for (n, v) in table {
                minimum_counts.insert((*family, key(n)?), big(v)?);
            }
        }
        let grid_totals = raw.grid_totals.iter().map(|(n, v)| Ok((key(n)?, big(v)?))).collect::<Result<_>>()?;
        if !raw.cylinder_gamma.rows_are_n {
            return Err(bad("cylinder table must be stored with one row per n"));
        }
        let mut golden = Golden {
            version: raw.version,
            polynomials,
            minimum_counts,
            grid_totals,
            cylinder_gamma: raw.cylinder_gamma.values,
            errata: raw.errata.clone(),
        };
        for e in &raw.errata {
            golden.apply(e)?;
        }
        Ok(golden)
    }

    fn apply(&mut self, e: &Erratum) -> Result<()> {
        let printed = big(&e.printed)?;
        let corrected = big(&e.corrected)?;
        match e.table.as_str() {
            "polynomials" => {
                let degree = e.degree.ok_or_else(|| bad("polynomial erratum without degree"))?;
                let poly = self
                    .polynomials
                    .get_mut(&(e.family, e.n))
                    .ok_or_else(|| bad(format!("erratum for missing {} {}", e.family, e.n)))?;
                if poly.coefficient(degree) != printed {
                    return Err(bad(format!("erratum does not match printed {} {}", e.family, e.n)));
                }
                let mut coeffs = poly.coeffs().to_vec();
                coeffs[degree] = corrected;
                *poly = Polynomial::from_coeffs(RingTag::Exact, coeffs);
            }
            "minimumCounts" => {
                let slot = self
                    .minimum_counts
                    .get_mut(&(e.family, e.n))
                    .ok_or_else(|| bad(format!("erratum for missing {} {}", e.family, e.n)))?;
                if *slot != printed {
                    return Err(bad(format!("erratum does not match printed {} {}", e.family, e.n)));
                }
                *slot = corrected;
            }
            other => return Err(bad(format!("erratum for unknown table {other}"))),
        }
        Ok(())
    }

    pub fn polynomial(&self, family: Family, n: usize) -> Option<&Polynomial> {
        self.polynomials.get(&(family, n))
    }

    pub fn minimum_count(&self, family: Family, n: usize) -> Option<&UBig> {
        self.minimum_counts.get(&(family, n))
    }

    /// γ of the cylinder with cycle length `m` and `n` rows.
    pub fn cylinder_gamma(&self, m: usize, n: usize) -> Option<usize> {
        self.cylinder_gamma.get(n.checked_sub(1)?)?.get(m.checked_sub(1)?).copied()
    }

    pub fn erratum_for(&self, table: &str, family: Family, n: usize) -> Option<&Erratum> {
        self.errata.iter().find(|e| e.table == table && e.family == family && e.n == n)
    }
}

/// A printed transfer matrix: `entries[t][s]` is the exponent at
/// `(rows[t], columns[s])`, `None` where the entry is absent.
#[derive(Debug, Clone)]
pub struct ReferenceMatrix {
    pub m: usize,
    pub cyclic: bool,
    pub columns: Vec<Signature>,
    pub rows: Vec<Signature>,
    pub entries: Vec<Vec<Option<usize>>>,
}

pub fn reference_matrices() -> Result<Vec<ReferenceMatrix>> {
    let sig = |s: &str| s.parse::<Signature>().map_err(|_| bad(format!("bad signature {s:?}")));
    let mut out = Vec::new();
    let mut current: Option<ReferenceMatrix> = None;
    for line in MATRICES_TXT.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let mut parts = line.split_whitespace();
        match (parts.next(), current.as_mut()) {
            (Some("matrix"), None) => {
                let m = key(parts.next().unwrap_or(""))?;
                let cyclic = match parts.next() {
                    Some("cycle") => true,
                    Some("path") => false,
                    other => return Err(bad(format!("bad row topology {other:?}"))),
                };
                current = Some(ReferenceMatrix { m, cyclic, columns: Vec::new(), rows: Vec::new(), entries: Vec::new() });
            }
            (Some("cols"), Some(cur)) => cur.columns = parts.map(sig).collect::<Result<_>>()?,
            (Some("end"), Some(_)) => out.extend(current.take()),
            (Some(tau), Some(cur)) => {
                cur.rows.push(sig(tau)?);
                let row = parts
                    .map(|c| if c == "." { Ok(None) } else { key(c).map(Some) })
                    .collect::<Result<Vec<_>>>()?;
                if row.len() != cur.columns.len() {
                    return Err(bad(format!("matrix row {tau} has {} entries", row.len())));
                }
                cur.entries.push(row);
            }
            _ => return Err(bad(format!("unexpected matrix line {line:?}"))),
        }
    }
    Ok(out)
}
