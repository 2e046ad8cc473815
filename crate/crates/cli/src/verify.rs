//! Self-check: engine against brute force and against the reference tables.

use domcount_core::golden::Golden;
use domcount_core::oracle::brute_force_polynomial_with_limit;
use domcount_core::{EngineOptions, Family, GraphSpec, Polynomial, RingTag};

use crate::{Failure, Outcome};

fn first_difference(got: &Polynomial, want: &Polynomial) -> String {
    let len = got.coeffs().len().max(want.coeffs().len());
    match (0..len).find(|&d| got.coefficient(d) != want.coefficient(d)) {
        Some(d) => format!("[z^{d}] engine {} expected {}", got.coefficient(d), want.coefficient(d)),
        None => "no coefficient differs".into(),
    }
}

pub fn run(opts: &EngineOptions, max_cells: usize, golden_n: usize) -> Outcome {
    let mut checks = 0;
    for family in Family::ALL {
        for m in 1..=max_cells {
            for n in 1..=max_cells / m {
                let spec = GraphSpec::new(family, m, n)?;
                let engine = opts.polynomial(&spec, RingTag::Exact)?;
                let oracle = brute_force_polynomial_with_limit(&spec, max_cells)?;
                if engine != oracle {
                    return Err(Failure::mismatch(format!("oracle {spec}: {}", first_difference(&engine, &oracle))));
                }
                println!("ok oracle {spec}");
                checks += 1;
            }
        }
    }
    let golden = Golden::load()?;
    for family in Family::ALL {
        for n in 1..=golden_n {
            let spec = GraphSpec::new(family, n, n)?;
            let engine = opts.polynomial(&spec, RingTag::Exact)?;
            let Some(reference) = golden.polynomial(family, n) else { continue };
            if engine != *reference {
                return Err(Failure::mismatch(format!("golden {spec}: {}", first_difference(&engine, reference))));
            }
            match golden.erratum_for("polynomials", family, n) {
                Some(e) => println!(
                    "ok golden {spec} (printed {}z^{} is a known erratum; engine gives {}z^{})",
                    e.printed,
                    e.degree.unwrap_or(0),
                    e.corrected,
                    e.degree.unwrap_or(0)
                ),
                None => println!("ok golden {spec}"),
            }
            checks += 1;
        }
    }
    Ok(format!("all {checks} checks passed\n"))
}
