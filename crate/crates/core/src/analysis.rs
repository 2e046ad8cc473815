//! Statistics read off polynomials, closed-form γ, and growth constants.

use dashu_float::DBig;
use dashu_int::UBig;
use rayon::prelude::*;
use serde::Serialize;

use crate::engine::EngineOptions;
use crate::error::{Error, Result};
use crate::graph::Family;
use crate::payload::ExactCount;
use crate::ring::Polynomial;

/// Extra working digits on top of the requested precision.
const GUARD_DIGITS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DominationStats {
    pub gamma: usize,
    #[serde(serialize_with = "as_string")]
    pub n_gamma: UBig,
    #[serde(serialize_with = "as_string")]
    pub total: UBig,
}

fn as_string<S: serde::Serializer, T: std::fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn stats_from_polynomial(poly: &Polynomial) -> Result<DominationStats> {
    let gamma = poly.min_degree().ok_or(Error::ZeroPolynomial)?;
    Ok(DominationStats { gamma, n_gamma: poly.coefficient(gamma), total: poly.eval_at_one() })
}

/// γ from known formulas: king always, grid only once both sides reach 16.
pub fn gamma_closed_form(family: Family, m: usize, n: usize) -> Result<Option<usize>> {
    match family {
        Family::King => Ok(Some(m.div_ceil(3) * n.div_ceil(3))),
        Family::Grid if m >= 16 && n >= 16 => Ok(Some((m + 2) * (n + 2) / 5 - 4)),
        Family::Grid => Ok(None),
        other => Err(Error::Unsupported(format!("no closed form for the domination number of the {other}"))),
    }
}

fn working(digits: usize) -> usize {
    digits + GUARD_DIGITS
}

fn dec(v: impl Into<DBig>, precision: usize) -> DBig {
    v.into().with_precision(precision).value()
}

fn abs(x: &DBig) -> DBig {
    if *x < DBig::ZERO {
        -x.clone()
    } else {
        x.clone()
    }
}

fn is_zero(x: &DBig) -> bool {
    x.repr().significand().is_zero()
}

/// `(ratio)^(1/m)` at the given working precision.
fn mth_root(ratio: DBig, m: usize, precision: usize) -> DBig {
    if m == 1 {
        return ratio;
    }
    (ratio.ln() / dec(m as u64, precision)).exp()
}

fn ratio_estimate(num: &UBig, den: &UBig, m: usize, precision: usize) -> DBig {
    mth_root(dec(num.clone(), precision) / dec(den.clone(), precision), m, precision)
}

#[derive(Debug, Clone)]
pub struct GrowthSample {
    pub m: usize,
    /// Rows of the last count that entered the estimate.
    pub n_used: usize,
    pub mu_m: DBig,
}

/// `μ_m` as the limit of `(G(m,n) / G(m,n-1))^(1/m)`, iterated in `n` until
/// successive estimates differ by less than `10^-digits`. The torus shares
/// the cylinder's value.
pub fn growth_rate_m(
    options: &EngineOptions,
    family: Family,
    m: usize,
    digits: usize,
    n_cap: usize,
) -> Result<GrowthSample> {
    let family = if family == Family::Torus { Family::Cylinder } else { family };
    // weights are sized for the row limit, so grow it by doubling
    let mut rows = n_cap.min(64);
    loop {
        if let Some(sample) = converge(options, family, m, digits, rows)? {
            return Ok(sample);
        }
        if rows == n_cap {
            return Err(Error::NonConvergence { digits, n_cap });
        }
        rows = (rows * 2).min(n_cap);
    }
}

fn converge(options: &EngineOptions, family: Family, m: usize, digits: usize, rows: usize) -> Result<Option<GrowthSample>> {
    let precision = working(digits);
    let tolerance = dec(1u8, precision) / dec(UBig::from(10u8).pow(digits), precision);
    let payload = ExactCount::for_vertices(m * rows);
    let mut prev_count: Option<UBig> = None;
    let mut prev_mu: Option<DBig> = None;
    let mut result = None;
    options.sweep_rows_until(family, m, rows, &payload, |row, count| {
        let Some(prev) = prev_count.replace(count.clone()) else { return false };
        let mu = ratio_estimate(count, &prev, m, precision);
        let done = prev_mu.as_ref().is_some_and(|p| abs(&(&mu - p)) < tolerance);
        if done {
            result = Some(GrowthSample { m, n_used: row, mu_m: mu.clone() });
        }
        prev_mu = Some(mu);
        done
    })?;
    Ok(result)
}

/// Output of the rational (or, on breakdown, polynomial) extrapolation
/// tableau evaluated at `x = 0`.
#[derive(Debug, Clone)]
pub struct Extrapolation {
    pub limit: DBig,
    pub error: DBig,
    /// False when a vanishing denominator forced the polynomial tableau.
    pub rational: bool,
}

/// Rational extrapolation to `x = 0`; points sorted by descending `x`.
pub fn bulirsch_stoer_extrapolate(points: &[(DBig, DBig)]) -> Result<Extrapolation> {
    if points.len() < 3 {
        return Err(Error::Inconsistent(format!("extrapolation needs at least 3 points, got {}", points.len())));
    }
    if points.windows(2).any(|w| w[0].0 <= w[1].0) {
        return Err(Error::Inconsistent("extrapolation abscissae must be distinct and descending".into()));
    }
    match rational_tableau(points) {
        Some(t) => Ok(finish(&t, true)),
        None => Ok(finish(&neville_tableau(points), false)),
    }
}

/// `t[i][k]` for `k <= i`; `None` when a denominator vanishes.
fn rational_tableau(points: &[(DBig, DBig)]) -> Option<Vec<Vec<DBig>>> {
    let zero = DBig::ZERO;
    let mut t: Vec<Vec<DBig>> = points.iter().map(|(_, y)| vec![y.clone()]).collect();
    for i in 1..points.len() {
        for k in 1..=i {
            let here = &t[i][k - 1];
            let d = here - &t[i - 1][k - 1];
            let next = if is_zero(&d) {
                here.clone()
            } else {
                let below = if k >= 2 { &t[i - 1][k - 2] } else { &zero };
                let e = here - below;
                if is_zero(&e) {
                    return None;
                }
                let ratio = &points[i - k].0 / &points[i].0;
                let denom = ratio * (DBig::ONE - &d / e) - DBig::ONE;
                if is_zero(&denom) {
                    return None;
                }
                here + d / denom
            };
            t[i].push(next);
        }
    }
    Some(t)
}

fn neville_tableau(points: &[(DBig, DBig)]) -> Vec<Vec<DBig>> {
    let mut t: Vec<Vec<DBig>> = points.iter().map(|(_, y)| vec![y.clone()]).collect();
    for i in 1..points.len() {
        for k in 1..=i {
            let here = &t[i][k - 1];
            let d = here - &t[i - 1][k - 1];
            let ratio = &points[i - k].0 / &points[i].0;
            let next = here + d / (ratio - DBig::ONE);
            t[i].push(next);
        }
    }
    t
}

fn finish(t: &[Vec<DBig>], rational: bool) -> Extrapolation {
    let n = t.len() - 1;
    let limit = t[n][n].clone();
    let a = abs(&(&limit - &t[n][n - 1]));
    let b = abs(&(&limit - &t[n - 1][n - 1]));
    Extrapolation { limit, error: if a > b { a } else { b }, rational }
}

#[derive(Debug, Clone)]
pub struct GrowthEstimate {
    pub family: Family,
    pub samples: Vec<GrowthSample>,
    pub mu: DBig,
    pub error: DBig,
    pub rational: bool,
    pub digits: usize,
}

#[derive(Serialize)]
#[serde(rename_all = "snake_case")]
struct SampleJson {
    m: usize,
    n_used: usize,
    mu_m: String,
}

#[derive(Serialize)]
struct EstimateJson {
    family: Family,
    samples: Vec<SampleJson>,
    mu: String,
    error: String,
}

impl GrowthEstimate {
    pub fn to_json(&self) -> serde_json::Value {
        let digits = self.digits;
        let json = EstimateJson {
            family: self.family,
            samples: self
                .samples
                .iter()
                .map(|s| SampleJson { m: s.m, n_used: s.n_used, mu_m: format!("{:.digits$}", s.mu_m) })
                .collect(),
            mu: format!("{:.digits$}", self.mu),
            error: format!("{:.3e}", self.error.to_f64().value()),
        };
        serde_json::to_value(json).expect("plain data")
    }
}

/// Widths fed to the extrapolation when none are given. Cylinder values
/// approach the limit exponentially and alternate for small `m`, so their
/// range runs further to damp the small-cycle terms.
pub fn default_m_range(family: Family) -> std::ops::RangeInclusive<usize> {
    match family {
        Family::Grid => 3..=12,
        Family::Cylinder | Family::Torus => 3..=14,
        Family::King => 3..=13,
    }
}

/// `μ_m` for every `m` in the range (in parallel) and their extrapolation in `1/m`.
pub fn growth_estimate(
    options: &EngineOptions,
    family: Family,
    ms: std::ops::RangeInclusive<usize>,
    digits: usize,
    n_cap: usize,
) -> Result<GrowthEstimate> {
    let ms: Vec<usize> = ms.collect();
    let samples: Vec<GrowthSample> =
        ms.par_iter().map(|&m| growth_rate_m(options, family, m, digits, n_cap)).collect::<Result<_>>()?;
    let fit = extrapolate_samples(&samples, working(digits))?;
    Ok(GrowthEstimate { family, samples, mu: fit.limit, error: fit.error, rational: fit.rational, digits })
}

/// Extrapolates samples at abscissae `1/m`.
pub fn extrapolate_samples(samples: &[GrowthSample], precision: usize) -> Result<Extrapolation> {
    let mut sorted: Vec<&GrowthSample> = samples.iter().collect();
    sorted.sort_by_key(|s| s.m);
    let points: Vec<(DBig, DBig)> = sorted
        .iter()
        .map(|s| (dec(1u8, precision) / dec(s.m as u64, precision), s.mu_m.clone().with_precision(precision).value()))
        .collect();
    bulirsch_stoer_extrapolate(&points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphSpec;
    use proptest::prelude::*;

    fn f(x: &DBig) -> f64 {
        x.to_f64().value()
    }

    fn points(xs: &[f64], g: impl Fn(f64) -> f64) -> Vec<(DBig, DBig)> {
        // inputs go through decimal strings so the tableau sees exact decimals
        xs.iter()
            .map(|&x| {
                let p = |v: f64| format!("{v:.17e}").parse::<DBig>().unwrap().with_precision(40).value();
                (p(x), p(g(x)))
            })
            .collect()
    }

    #[test]
    fn stats_examples() {
        let opts = EngineOptions::default();
        let s = stats_from_polynomial(&opts.polynomial(&GraphSpec::new(Family::Grid, 6, 6).unwrap(), crate::RingTag::Exact).unwrap()).unwrap();
        assert_eq!((s.gamma, s.n_gamma), (10, UBig::from(288u16)));
        let k = stats_from_polynomial(&opts.polynomial(&GraphSpec::new(Family::King, 7, 7).unwrap(), crate::RingTag::Exact).unwrap()).unwrap();
        assert_eq!((k.gamma, k.n_gamma), (9, UBig::from(243856u32)));
        assert!(matches!(stats_from_polynomial(&Polynomial::zero(crate::RingTag::Exact)), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(gamma_closed_form(Family::King, 4, 4).unwrap(), Some(4));
        assert_eq!(gamma_closed_form(Family::King, 8, 8).unwrap(), Some(9));
        assert_eq!(gamma_closed_form(Family::Grid, 16, 16).unwrap(), Some(60));
        assert_eq!(gamma_closed_form(Family::Grid, 15, 20).unwrap(), None);
        assert!(gamma_closed_form(Family::Torus, 5, 5).is_err());
    }

    #[test]
    fn constant_samples() {
        let pts = points(&[0.25, 0.2, 1.0 / 6.0, 1.0 / 7.0], |_| 1.5);
        let e = bulirsch_stoer_extrapolate(&pts).unwrap();
        assert_eq!(f(&e.limit), 1.5);
        assert!(is_zero(&e.error));
    }

    #[test]
    fn rational_function() {
        let xs: Vec<f64> = (4..=10).map(|m| 1.0 / m as f64).collect();
        let e = bulirsch_stoer_extrapolate(&points(&xs, |x| 1.0 / (1.0 + x))).unwrap();
        assert!(e.rational);
        assert!((f(&e.limit) - 1.0).abs() < 1e-8, "{}", e.limit);
    }

    #[test]
    fn rejects_bad_abscissae() {
        assert!(bulirsch_stoer_extrapolate(&points(&[0.5, 0.25], |x| x)).is_err());
        assert!(bulirsch_stoer_extrapolate(&points(&[0.2, 0.25, 0.1], |x| x)).is_err());
    }

    #[test]
    fn polynomial_fallback() {
        // a straight line makes the rational denominators vanish
        let e = bulirsch_stoer_extrapolate(&points(&[0.5, 0.25, 0.125, 0.0625], |x| 2.0 + 3.0 * x)).unwrap();
        assert!((f(&e.limit) - 2.0).abs() < 1e-12, "{} {}", e.limit, e.rational);
    }

    #[test]
    fn path_growth() {
        let opts = EngineOptions::default();
        let s = growth_rate_m(&opts, Family::Grid, 1, 30, 400).unwrap();
        // counts of dominating sets of paths satisfy a(n) = a(n-1) + a(n-2) + a(n-3)
        let tribonacci = 1.839286755214161;
        assert!((f(&s.mu_m) - tribonacci).abs() < 1e-14, "{}", s.mu_m);
        assert!(matches!(growth_rate_m(&opts, Family::Grid, 3, 40, 5), Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn king_six() {
        let s = growth_rate_m(&EngineOptions::default(), Family::King, 6, 20, 400).unwrap();
        let v = f(&s.mu_m);
        assert!(v > 1.99 && v < 2.0, "{v}");
    }

    #[test]
    fn torus_reports_cylinder() {
        let opts = EngineOptions::default();
        let t = growth_rate_m(&opts, Family::Torus, 4, 20, 400).unwrap();
        let c = growth_rate_m(&opts, Family::Cylinder, 4, 20, 400).unwrap();
        assert_eq!((t.mu_m, t.n_used), (c.mu_m, c.n_used));
    }

    #[test]
    fn estimate_json_shape() {
        let est = growth_estimate(&EngineOptions::default(), Family::Grid, 3..=6, 15, 400).unwrap();
        let j = est.to_json();
        assert_eq!(j["family"], "grid");
        assert_eq!(j["samples"].as_array().unwrap().len(), 4);
        assert!(j["samples"][0]["mu_m"].as_str().unwrap().starts_with("1."));
        assert!(j["mu"].is_string() && j["error"].is_string());
        for s in &est.samples {
            assert!(f(&s.mu_m) > 1.0 && f(&s.mu_m) < 2.0);
        }
    }

    proptest! {
        #[test]
        fn exact_on_low_degree_rationals(a in 0.5f64..3.0, b in -2.0f64..2.0, c in 0.1f64..2.0) {
            let xs: Vec<f64> = (3..=9).map(|m| 1.0 / m as f64).collect();
            let e = bulirsch_stoer_extrapolate(&points(&xs, |x| (a + b * x) / (1.0 + c * x))).unwrap();
            prop_assert!((f(&e.limit) - a).abs() < 1e-8 * a.max(1.0), "{} vs {a}", e.limit);
        }
    }
}
