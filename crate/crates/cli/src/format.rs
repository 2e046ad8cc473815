//! Rendering of results for the data stream.

use domcount_core::analysis::GrowthEstimate;
use domcount_core::{GraphSpec, Polynomial};
use serde_json::{json, Value};

use crate::args::{Format, Stat};

pub fn polynomial(spec: &GraphSpec, poly: &Polynomial, format: Format) -> Option<String> {
    match format {
        Format::Text => Some(format!("{poly}\n")),
        Format::Csv => Some(poly.to_csv()),
        Format::Json => {
            let body = poly.to_json();
            let value = json!({
                "family": spec.family,
                "m": spec.m,
                "n": spec.n,
                "ring": poly.ring().to_string(),
                "minDegree": body.min_degree,
                "coefficients": body.coefficients,
            });
            Some(pretty(&value))
        }
        Format::Bfile => None,
    }
}

pub fn count(spec: &GraphSpec, ring: &str, value: &str, format: Format) -> Option<String> {
    match format {
        Format::Text => Some(format!("{value}\n")),
        Format::Csv => Some(format!("family,m,n,ring,count\n{},{},{},{ring},{value}\n", spec.family, spec.m, spec.n)),
        Format::Json => Some(pretty(&json!({
            "family": spec.family,
            "m": spec.m,
            "n": spec.n,
            "ring": ring,
            "count": value,
        }))),
        Format::Bfile => None,
    }
}

/// A block of values, `rows[i][j]` for `n = ns[i]`, `m = ms[j]`.
pub struct Table {
    pub family: String,
    pub stat: Stat,
    pub ms: Vec<usize>,
    pub ns: Vec<usize>,
    pub rows: Vec<Vec<String>>,
}

fn stat_name(stat: Stat) -> &'static str {
    match stat {
        Stat::Gamma => "gamma",
        Stat::Ngamma => "ngamma",
        Stat::Total => "total",
    }
}

pub fn table(t: &Table, format: Format) -> Option<String> {
    match format {
        Format::Csv => {
            let mut out = String::from("n\\m");
            for m in &t.ms {
                out.push_str(&format!(",{m}"));
            }
            out.push('\n');
            for (n, row) in t.ns.iter().zip(&t.rows) {
                out.push_str(&n.to_string());
                for v in row {
                    out.push(',');
                    out.push_str(v);
                }
                out.push('\n');
            }
            Some(out)
        }
        Format::Text => {
            let width = t.rows.iter().flatten().map(String::len).chain(t.ms.iter().map(|m| m.to_string().len())).max().unwrap_or(1);
            let label = t.ns.iter().map(|n| n.to_string().len()).max().unwrap_or(1).max(3);
            let mut out = format!("{:>label$}", "n\\m");
            for m in &t.ms {
                out.push_str(&format!(" {m:>width$}"));
            }
            out.push('\n');
            for (n, row) in t.ns.iter().zip(&t.rows) {
                out.push_str(&format!("{n:>label$}"));
                for v in row {
                    out.push_str(&format!(" {v:>width$}"));
                }
                out.push('\n');
            }
            Some(out)
        }
        Format::Json => {
            let values: Vec<Vec<Value>> = t
                .rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| match t.stat {
                            Stat::Gamma => json!(v.parse::<u64>().expect("gamma fits")),
                            _ => json!(v),
                        })
                        .collect()
                })
                .collect();
            Some(pretty(&json!({
                "family": t.family,
                "statistic": stat_name(t.stat),
                "m": t.ms,
                "n": t.ns,
                "values": values,
            })))
        }
        Format::Bfile => None,
    }
}

/// Diagonal `n × n` values; b-file indices are `n`.
pub fn diagonal(t: &Table, format: Format) -> Option<String> {
    let pairs: Vec<(usize, &String)> = t.ns.iter().zip(&t.rows).map(|(n, row)| (*n, &row[0])).collect();
    match format {
        Format::Bfile | Format::Text => Some(pairs.iter().map(|(n, v)| format!("{n} {v}\n")).collect()),
        Format::Csv => {
            let mut out = format!("n,{}\n", stat_name(t.stat));
            for (n, v) in pairs {
                out.push_str(&format!("{n},{v}\n"));
            }
            Some(out)
        }
        Format::Json => Some(pretty(&json!({
            "family": t.family,
            "statistic": stat_name(t.stat),
            "n": t.ns,
            "values": t.rows.iter().map(|r| match t.stat {
                Stat::Gamma => json!(r[0].parse::<u64>().expect("gamma fits")),
                _ => json!(r[0]),
            }).collect::<Vec<_>>(),
        }))),
    }
}

pub fn growth(est: &GrowthEstimate, format: Format) -> Option<String> {
    match format {
        Format::Json => Some(pretty(&est.to_json())),
        Format::Text => {
            let j = est.to_json();
            let mut out = String::new();
            for s in j["samples"].as_array().expect("samples") {
                out.push_str(&format!("m={} n_used={} mu_m={}\n", s["m"], s["n_used"], s["mu_m"].as_str().unwrap_or("")));
            }
            out.push_str(&format!("mu={} error={}\n", j["mu"].as_str().unwrap_or(""), j["error"].as_str().unwrap_or("")));
            if !est.rational {
                out.push_str("note: rational tableau broke down; polynomial extrapolation used\n");
            }
            Some(out)
        }
        Format::Csv => {
            let j = est.to_json();
            let mut out = String::from("m,n_used,mu_m\n");
            for s in j["samples"].as_array().expect("samples") {
                out.push_str(&format!("{},{},{}\n", s["m"], s["n_used"], s["mu_m"].as_str().unwrap_or("")));
            }
            Some(out)
        }
        Format::Bfile => None,
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data");
    s.push('\n');
    s
}
