use dashu_int::UBig;
use domcount_core::oracle::brute_force_polynomial_with_limit;
use domcount_core::{EngineOptions, Family, GraphSpec, RingTag};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(Family::ALL.to_vec())
}

fn small() -> impl Strategy<Value = (Family, usize, usize)> {
    (family(), 1usize..=6, 1usize..=6).prop_filter("oracle size", |(_, m, n)| m * n <= 16)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn engine_matches_oracle((family, m, n) in small()) {
        let spec = GraphSpec::new(family, m, n).unwrap();
        let engine = EngineOptions::default().polynomial(&spec, RingTag::Exact).unwrap();
        prop_assert_eq!(engine, brute_force_polynomial_with_limit(&spec, 16).unwrap());
    }

    #[test]
    fn top_coefficients_and_totals(family in family(), m in 1usize..=7, n in 1usize..=7) {
        let opts = EngineOptions::default();
        let spec = GraphSpec::new(family, m, n).unwrap();
        let p = opts.polynomial(&spec, RingTag::Exact).unwrap();
        let v = m * n;
        // with two or more vertices every set missing one vertex dominates
        prop_assert_eq!(p.degree(), Some(v));
        prop_assert_eq!(p.coefficient(v), UBig::ONE);
        let near_full = if v >= 2 { UBig::from(v) } else { UBig::ZERO };
        prop_assert_eq!(p.coefficient(v - 1), near_full);
        prop_assert_eq!(p.eval_at_one(), opts.count(&spec).unwrap());
    }

    #[test]
    fn transposition_invariance(family in prop::sample::select(vec![Family::Grid, Family::King, Family::Torus]), m in 1usize..=6, n in 1usize..=6) {
        // by_rows sweeps at the given width, so both orientations are really computed
        let opts = EngineOptions::default();
        let wide = opts.polynomials_by_rows(family, m, n, RingTag::Exact).unwrap().pop().unwrap();
        let tall = opts.polynomials_by_rows(family, n, m, RingTag::Exact).unwrap().pop().unwrap();
        prop_assert_eq!(wide, tall);
    }

    #[test]
    fn rings_agree(family in family(), m in 1usize..=6, n in 1usize..=8, p in prop::sample::select(vec![3u32, 65521, 2147483647])) {
        let opts = EngineOptions::default();
        let spec = GraphSpec::new(family, m, n).unwrap();
        let exact = opts.polynomial(&spec, RingTag::Exact).unwrap();
        prop_assert_eq!(opts.polynomial(&spec, RingTag::Mod(p)).unwrap(), exact.reduce_mod(p));
        prop_assert_eq!(opts.polynomial_crt(&spec, 12).unwrap(), exact.clone());
        prop_assert_eq!(opts.count_crt(&spec, 9).unwrap(), exact.eval_at_one());
        let (gamma, n_gamma) = opts.lowest_term(&spec).unwrap();
        prop_assert_eq!(Some(gamma), exact.min_degree());
        prop_assert_eq!(n_gamma, exact.coefficient(gamma));
    }

    #[test]
    fn symmetry_is_transparent(family in family(), m in 1usize..=7, n in 1usize..=5) {
        let plain = EngineOptions::default();
        let sym = EngineOptions { symmetry: true, ..Default::default() };
        let spec = GraphSpec::new(family, m, n).unwrap();
        prop_assert_eq!(sym.polynomial(&spec, RingTag::Exact).unwrap(), plain.polynomial(&spec, RingTag::Exact).unwrap());
        prop_assert_eq!(sym.count(&spec).unwrap(), plain.count(&spec).unwrap());
    }
}

#[test]
fn rows_readout_is_monotone_in_totals() {
    let counts = EngineOptions::default().counts_by_rows(Family::Cylinder, 5, 12).unwrap();
    assert!(counts.windows(2).all(|w| w[1] > w[0]));
}
