//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Runs without the libtest harness so the report is always printed.

use std::collections::BTreeMap;
use std::time::Instant;

use dashu_float::DBig;
use dashu_int::UBig;
use domcount_core::analysis::{default_m_range, gamma_closed_form, growth_estimate, stats_from_polynomial};
use domcount_core::golden::{reference_matrices, Golden};
use domcount_core::kernel::{build_transfer_matrix, row_step_equivalence_check};
use domcount_core::oracle::brute_force_polynomial_with_limit;
use domcount_core::signature::{
    count_signatures, enumerate_codes, enumerate_signatures, CountingFormulas, Kink, SignatureVariant,
};
use domcount_core::{EngineOptions, Family, GraphSpec, Polynomial, RingTag};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T>(r: domcount_core::Result<T>) -> Result<T, String> {
    r.map_err(|err| err.to_string())
}

fn spec(family: Family, m: usize, n: usize) -> GraphSpec {
    GraphSpec::new(family, m, n).expect("valid size")
}

fn first_difference(got: &Polynomial, want: &Polynomial) -> String {
    let len = got.coeffs().len().max(want.coeffs().len());
    match (0..len).find(|&d| got.coefficient(d) != want.coefficient(d)) {
        Some(d) => format!("[z^{d}] {} vs {}", got.coefficient(d), want.coefficient(d)),
        None => "equal".into(),
    }
}

fn opts() -> EngineOptions {
    EngineOptions::default()
}

fn symmetric() -> EngineOptions {
    EngineOptions { symmetry: true, ..Default::default() }
}

fn golden_squares(golden: &Golden, sizes: std::ops::RangeInclusive<usize>) -> Result<usize, String> {
    let mut checked = 0;
    for family in Family::ALL {
        for n in sizes.clone() {
            let want = golden.polynomial(family, n).ok_or(format!("no reference for {family} {n}"))?;
            let engine = if family == Family::Torus { symmetric() } else { opts() };
            let got = e(engine.polynomial(&spec(family, n, n), RingTag::Exact))?;
            ensure(&got == want, || format!("{family} {n}x{n}: {}", first_difference(&got, want)))?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn criterion_1(golden: &Golden) -> Check {
    let checked = golden_squares(golden, 1..=6)?;
    let oracle = e(brute_force_polynomial_with_limit(&spec(Family::Grid, 4, 4), 16))?;
    let engine = e(opts().polynomial(&spec(Family::Grid, 4, 4), RingTag::Exact))?;
    ensure(oracle == engine && oracle.coefficient(4) == UBig::from(2u8), || "grid 4x4 disagrees with brute force".into())?;
    let erratum = golden.erratum_for("polynomials", Family::Grid, 4).ok_or("grid 4x4 erratum missing")?;
    Ok(format!(
        "{checked} polynomials match; grid 4x4 [z^4] = 2 by brute force over 2^16 subsets (printed {} corrected)",
        erratum.printed
    ))
}

fn criterion_2(golden: &Golden) -> Check {
    let checked = golden_squares(golden, 7..=8)?;
    let grid = golden.polynomial(Family::Grid, 8).ok_or("grid 8")?;
    let torus = golden.polynomial(Family::Torus, 8).ok_or("torus 8")?;
    let king = golden.polynomial(Family::King, 8).ok_or("king 8")?;
    ensure(grid.min_degree() == Some(16) && grid.coefficient(16) == UBig::from(52u8), || "grid 8x8 lowest term".into())?;
    ensure(torus.coefficient(16) == UBig::from(129224u32), || "torus 8x8 lowest term".into())?;
    ensure(king.degree() == Some(64) && king.coefficient(63) == UBig::from(64u8), || "king 8x8 top terms".into())?;
    Ok(format!("{checked} polynomials match (grid 52z^16, torus 129224z^16, king 64z^63 + z^64)"))
}

fn criterion_3(golden: &Golden) -> Check {
    let counts = e(opts().counts_by_rows(Family::Grid, 14, 14))?;
    for n in 1..=14 {
        let got = if n == 14 { counts[13].clone() } else { e(opts().count(&spec(Family::Grid, n, n)))? };
        let want = golden.grid_totals.get(&n).ok_or(format!("no total for {n}"))?;
        ensure(&got == want, || format!("grid {n}x{n}: {got} vs {want}"))?;
    }
    Ok(format!("G(n x n) for n <= 14 match; n = 14 gives {} ({} digits)", counts[13], counts[13].to_string().len()))
}

fn criterion_4(golden: &Golden) -> Check {
    let mut checked = 0;
    for m in 1..=12 {
        let terms = e(opts().lowest_terms_by_rows(Family::Cylinder, m, 12))?;
        for (i, (gamma, _)) in terms.iter().enumerate() {
            let n = i + 1;
            let want = golden.cylinder_gamma(m, n).ok_or(format!("no table entry {m} {n}"))?;
            ensure(*gamma == want, || format!("cylinder m={m} n={n}: gamma {gamma} vs {want}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} cylinder domination numbers match"))
}

fn criterion_5(golden: &Golden) -> Check {
    let mut checked = 0;
    let mut arbitrated = Vec::new();
    for family in Family::ALL {
        // the table starts at n = 2
        for n in 2..=10 {
            let engine = if family == Family::Torus { symmetric() } else { opts() };
            let (_, count) = e(engine.lowest_term(&spec(family, n, n)))?;
            let want = golden.minimum_count(family, n).ok_or(format!("no table entry {family} {n}"))?;
            ensure(&count == want, || format!("{family} {n}x{n}: N_gamma {count} vs {want}"))?;
            if let Some(err) = golden.erratum_for("minimumCounts", family, n) {
                arbitrated.push(format!("{family} {n}x{n} printed {} -> {}", err.printed, err.corrected));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} minimum-set counts match; arbitrated erratum: {} (agrees with the reference polynomial and explicit matrix powers)",
        arbitrated.join(", ")
    ))
}

fn criterion_6() -> Check {
    let mut checked = 0;
    for family in Family::ALL {
        for m in 1..=18 {
            for n in 1..=18 / m {
                let s = spec(family, m, n);
                let got = e(opts().polynomial(&s, RingTag::Exact))?;
                let want = e(brute_force_polynomial_with_limit(&s, 18))?;
                ensure(got == want, || format!("{s}: {}", first_difference(&got, &want)))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} graphs with mn <= 18 equal brute force"))
}

fn criterion_7() -> Check {
    for m in 1..=16 {
        let plain = enumerate_codes(m, false, None).map_err(|x| x.to_string())?.len();
        let cyclic = enumerate_codes(m, true, None).map_err(|x| x.to_string())?.len();
        ensure(UBig::from(plain) == e(count_signatures(m, SignatureVariant::Plain))?, || format!("plain m={m}"))?;
        ensure(UBig::from(cyclic) == e(count_signatures(m, SignatureVariant::Cyclic))?, || format!("cyclic m={m}"))?;
        for c in 1..=m {
            let kinked = e(enumerate_codes(m, false, Some(e(Kink::new(c, m))?)))?.len();
            ensure(UBig::from(kinked) == e(count_signatures(m, SignatureVariant::Kinked(c)))?, || format!("kinked m={m} c={c}"))?;
        }
        if m <= 12 {
            let mut reduced: Vec<u64> = e(enumerate_signatures(m, false))?
                .iter()
                .map(|s| s.code().min(s.reflect().code()))
                .collect();
            reduced.sort_unstable();
            reduced.dedup();
            ensure(UBig::from(reduced.len()) == e(count_signatures(m, SignatureVariant::ReflectionReduced))?, || {
                format!("reflection m={m}")
            })?;
        }
    }
    let formulas = CountingFormulas::new(60);
    for m in 1..=25 {
        ensure(formulas.plain(m) == e(count_signatures(m, SignatureVariant::Plain))?, || format!("closed form m={m}"))?;
        ensure(formulas.cyclic(m) == e(count_signatures(m, SignatureVariant::Cyclic))?, || format!("cyclic closed form m={m}"))?;
    }
    let refs = e(reference_matrices())?;
    let mut entries = 0;
    for r in &refs {
        let matrix = e(build_transfer_matrix(r.m, r.cyclic))?;
        let mut printed: Vec<u64> = r.columns.iter().map(|s| s.code()).collect();
        printed.sort_unstable();
        let built: Vec<u64> = matrix.signatures().iter().map(|s| s.code()).collect();
        ensure(printed == built && r.rows.len() == built.len(), || format!("signature set m={}", r.m))?;
        for (tau, row) in r.rows.iter().zip(&r.entries) {
            for (sigma, want) in r.columns.iter().zip(row) {
                ensure(matrix.entry(tau, sigma) == *want, || format!("matrix m={} ({tau}, {sigma})", r.m))?;
                entries += 1;
            }
        }
    }
    let mut vectors = 0;
    for m in 1..=5 {
        for cyclic in [false, true] {
            let sigs = e(enumerate_signatures(m, cyclic))?;
            let mut mixed = BTreeMap::new();
            for (i, s) in sigs.iter().enumerate() {
                let basis = BTreeMap::from([(s.code(), Polynomial::one(RingTag::Exact))]);
                ensure(e(row_step_equivalence_check(m, cyclic, &basis))?, || format!("sweep vs matrix m={m} {s}"))?;
                mixed.insert(s.code(), Polynomial::monomial(RingTag::Exact, i % 3, UBig::from(i as u64 + 1)));
                vectors += 1;
            }
            ensure(e(row_step_equivalence_check(m, cyclic, &mixed))?, || format!("sweep vs matrix m={m} mixed"))?;
            vectors += 1;
        }
    }
    Ok(format!(
        "counts = recurrences (m <= 16), recurrences = closed forms (m <= 25), {entries} reference matrix entries, {vectors} sweep = matrix vectors"
    ))
}

fn criterion_8() -> Check {
    // fixed seed: the same 20 instances on every run
    let mut runner = TestRunner::new_with_rng(Config::default(), TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let strategy = (0usize..4, 1usize..=10, 1usize..=100).prop_map(|(f, m, n)| {
        let family = Family::ALL[f];
        let m = if family == Family::Torus { m.min(6) } else { m.min(8) };
        (family, m, n.min(100 / m))
    });
    let mut seen = Vec::new();
    for _ in 0..20 {
        let (family, m, n) = strategy.new_tree(&mut runner).map_err(|x| x.to_string())?.current();
        let s = spec(family, m, n);
        let exact = e(opts().polynomial(&s, RingTag::Exact))?;
        let crt = e(opts().polynomial_crt(&s, 16))?;
        ensure(exact == crt, || format!("{s}: {}", first_difference(&crt, &exact)))?;
        seen.push(format!("{}{}x{}", &family.name()[..1], m, n));
    }
    Ok(format!("20 instances reconstruct exactly with 16-bit primes: {}", seen.join(" ")))
}

fn within(x: &DBig, target: &str, tol: f64) -> (bool, f64) {
    let t: DBig = target.parse().expect("decimal");
    let diff = (x.clone() - t).to_f64().value().abs();
    (diff < tol, diff)
}

fn criterion_9() -> Check {
    let mut parts = Vec::new();
    for family in [Family::Grid, Family::Cylinder] {
        let range = default_m_range(family);
        ensure(*range.end() >= 12, || "m range too short".into())?;
        let est = e(growth_estimate(&opts(), family, range.clone(), 25, 1024))?;
        let (ok, diff) = within(&est.mu, "1.9547511954", 1e-6);
        ensure(ok, || format!("{family} mu = {:.13} off by {diff:.2e}", est.mu))?;
        parts.push(format!("{family} m={}..{} mu={:.12} (|d|={diff:.1e})", range.start(), range.end(), est.mu));
    }
    let range = default_m_range(Family::King);
    let king = e(growth_estimate(&opts(), Family::King, range.clone(), 25, 1024))?;
    let (ok, diff) = within(&king.mu, "1.9970643866", 1e-5);
    let v = king.mu.to_f64().value();
    ensure(ok && (1.9969..=1.9972).contains(&v), || format!("king eta = {:.13} off by {diff:.2e}", king.mu))?;
    parts.push(format!("king m={}..{} eta={:.12} (|d|={diff:.1e})", range.start(), range.end(), king.mu));
    Ok(parts.join("; "))
}

fn criterion_10() -> Check {
    let mut checked = 0;
    for m in 1..=10 {
        for (i, (gamma, _)) in e(opts().lowest_terms_by_rows(Family::King, m, 10))?.iter().enumerate() {
            let want = e(gamma_closed_form(Family::King, m, i + 1))?.ok_or("closed form")?;
            ensure(*gamma == want, || format!("king {m}x{}: {gamma} vs {want}", i + 1))?;
            checked += 1;
        }
    }
    let stats = stats_from_polynomial(&e(opts().polynomial(&spec(Family::King, 7, 7), RingTag::Exact))?).map_err(|x| x.to_string())?;
    ensure(stats.gamma == 9, || "king 7x7 stats".into())?;
    // not gating: the 16 x 16 grid
    let stretch = match symmetric().lowest_term(&spec(Family::Grid, 16, 16)) {
        Ok((g, c)) => {
            let formula = e(gamma_closed_form(Family::Grid, 16, 16))?;
            format!("stretch grid 16x16: gamma {g} (formula {formula:?}), N_gamma {c} (reference 100406)")
        }
        Err(err) => format!("stretch grid 16x16 not completed: {err}"),
    };
    Ok(format!("{checked} king domination numbers equal ceil(m/3)ceil(n/3); {stretch}"))
}

fn main() {
    let golden = match Golden::load() {
        Ok(g) => g,
        Err(err) => {
            println!("FAIL reference data: {err}");
            std::process::exit(1);
        }
    };
    let criteria: Vec<(&str, Box<dyn Fn() -> Check + '_>)> = vec![
        ("golden polynomials n <= 6", Box::new(|| criterion_1(&golden))),
        ("golden polynomials n = 7, 8", Box::new(|| criterion_2(&golden))),
        ("totals n <= 14", Box::new(|| criterion_3(&golden))),
        ("cylinder domination numbers m, n <= 12", Box::new(|| criterion_4(&golden))),
        ("minimum-set counts n <= 10", Box::new(|| criterion_5(&golden))),
        ("oracle equivalence mn <= 18", Box::new(criterion_6)),
        ("signature math", Box::new(criterion_7)),
        ("CRT reconstruction", Box::new(criterion_8)),
        ("growth rates", Box::new(criterion_9)),
        ("king closed-form domination numbers", Box::new(criterion_10)),
    ];
    // numeric arguments select criteria; anything else (libtest flags) is ignored
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    let mut ran = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i + 1)) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name} [{secs:.1}s]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{secs:.1}s]: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {ran} criteria passed", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
