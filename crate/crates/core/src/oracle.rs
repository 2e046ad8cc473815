//! Ground truth by definition: build the graph explicitly and test every
//! vertex subset.

use std::collections::BTreeSet;

use dashu_int::UBig;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Family, GraphSpec};
use crate::ring::{Polynomial, RingTag};

/// Largest vertex count the oracle ever enumerates.
pub const HARD_LIMIT: usize = 24;
pub const DEFAULT_LIMIT: usize = 20;

/// Simple undirected graph; vertex `row * m + col`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyGraph {
    pub neighbors: Vec<BTreeSet<usize>>,
}

impl AdjacencyGraph {
    pub fn vertex_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Closed neighbourhood of each vertex as a bitmask.
    pub fn closed_masks(&self) -> Vec<u64> {
        self.neighbors
            .iter()
            .enumerate()
            .map(|(v, ns)| ns.iter().fold(1u64 << v, |acc, &u| acc | 1u64 << u))
            .collect()
    }
}

pub fn build_graph(spec: &GraphSpec) -> AdjacencyGraph {
    let (m, n) = (spec.m as isize, spec.n as isize);
    let wrap_cols = spec.family.cyclic_rows();
    let wrap_rows = spec.family == Family::Torus;
    let steps: &[(isize, isize)] = if spec.family == Family::King {
        &[(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)]
    } else {
        &[(-1, 0), (1, 0), (0, -1), (0, 1)]
    };
    let mut neighbors = vec![BTreeSet::new(); (m * n) as usize];
    for r in 0..n {
        for c in 0..m {
            let v = (r * m + c) as usize;
            for &(dr, dc) in steps {
                let (mut rr, mut cc) = (r + dr, c + dc);
                if wrap_rows {
                    rr = rr.rem_euclid(n);
                }
                if wrap_cols {
                    cc = cc.rem_euclid(m);
                }
                if rr < 0 || rr >= n || cc < 0 || cc >= m {
                    continue;
                }
                let u = (rr * m + cc) as usize;
                if u != v {
                    neighbors[v].insert(u);
                }
            }
        }
    }
    AdjacencyGraph { neighbors }
}

pub fn is_dominating(graph: &AdjacencyGraph, subset: u64) -> bool {
    let all = if graph.vertex_count() == 64 { u64::MAX } else { (1u64 << graph.vertex_count()) - 1 };
    let covered = graph
        .closed_masks()
        .iter()
        .enumerate()
        .filter(|(v, _)| subset >> v & 1 == 1)
        .fold(0u64, |acc, (_, mask)| acc | mask);
    covered & all == all
}

/// Union of closed neighbourhoods for every subset of `masks`.
fn cover_table(masks: &[u64]) -> Vec<u64> {
    let mut table = vec![0u64; 1 << masks.len()];
    for s in 1..table.len() {
        let low = s.trailing_zeros() as usize;
        table[s] = table[s & (s - 1)] | masks[low];
    }
    table
}

pub fn brute_force_polynomial(spec: &GraphSpec) -> Result<Polynomial> {
    brute_force_polynomial_with_limit(spec, DEFAULT_LIMIT)
}

/// Counts dominating sets of each size over all `2^(mn)` subsets.
pub fn brute_force_polynomial_with_limit(spec: &GraphSpec, limit: usize) -> Result<Polynomial> {
    let v = spec.vertex_count();
    let limit = limit.min(HARD_LIMIT);
    if v > limit {
        return Err(Error::GuardExceeded(format!("{v} vertices exceed the enumeration limit {limit}")));
    }
    let masks = build_graph(spec).closed_masks();
    let all = (1u64 << v) - 1;
    let low_bits = v / 2;
    let low = cover_table(&masks[..low_bits]);
    let high = cover_table(&masks[low_bits..]);
    let counts = (0..high.len())
        .into_par_iter()
        .fold(
            || vec![0u64; v + 1],
            |mut acc, h| {
                let hc = high[h];
                let hw = (h as u64).count_ones() as usize;
                for (l, &lc) in low.iter().enumerate() {
                    if (hc | lc) == all {
                        acc[hw + (l as u64).count_ones() as usize] += 1;
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; v + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(Polynomial::from_coeffs(RingTag::Exact, counts.into_iter().map(UBig::from).collect()).trimmed())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(family: Family, m: usize, n: usize) -> GraphSpec {
        GraphSpec::new(family, m, n).unwrap()
    }

    #[test]
    fn graph_shapes() {
        let g = build_graph(&spec(Family::Grid, 2, 2));
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 4));
        let k = build_graph(&spec(Family::King, 2, 2));
        assert_eq!(k.edge_count(), 6);
        let t = build_graph(&spec(Family::Torus, 3, 3));
        assert_eq!(t.edge_count(), 18);
        assert!(t.neighbors.iter().all(|ns| ns.len() == 4));
        // wraps of length one or two add nothing new
        assert_eq!(build_graph(&spec(Family::Torus, 2, 2)), g);
        assert_eq!(build_graph(&spec(Family::Cylinder, 1, 3)), build_graph(&spec(Family::Grid, 1, 3)));
        for fam in Family::ALL {
            let g = build_graph(&spec(fam, 4, 3));
            for (v, ns) in g.neighbors.iter().enumerate() {
                assert!(!ns.contains(&v));
                assert!(ns.iter().all(|&u| g.neighbors[u].contains(&v)));
                assert!(ns.len() <= if fam == Family::King { 8 } else { 4 });
            }
        }
    }

    #[test]
    fn domination_examples() {
        let g = build_graph(&spec(Family::Grid, 3, 3));
        assert!(!is_dominating(&g, 0));
        assert!(is_dominating(&g, (1 << 9) - 1));
        let k = build_graph(&spec(Family::King, 3, 3));
        assert!(is_dominating(&k, 1 << 4));
        assert!(!is_dominating(&g, 1 << 4));
    }

    #[test]
    fn polynomials() {
        let exact = |c: &[u64]| Polynomial::from_u64s(RingTag::Exact, c);
        assert_eq!(brute_force_polynomial(&spec(Family::Grid, 2, 2)).unwrap(), exact(&[0, 0, 6, 4, 1]));
        let p = brute_force_polynomial(&spec(Family::Grid, 4, 4)).unwrap();
        assert_eq!((p.min_degree(), p.coefficient(4)), (Some(4), UBig::from(2u8)));
        assert_eq!(p.eval_at_one(), UBig::from(28661u32));
        let c = brute_force_polynomial(&spec(Family::Cylinder, 4, 4)).unwrap();
        assert_eq!((c.min_degree(), c.coefficient(4), c.coefficient(5)), (Some(4), UBig::from(16u8), UBig::from(248u8)));
        assert!(matches!(brute_force_polynomial(&spec(Family::Grid, 5, 5)), Err(Error::GuardExceeded(_))));
    }

    #[test]
    fn path_domination_numbers() {
        for n in 1..=12 {
            let p = brute_force_polynomial(&spec(Family::Grid, 1, n)).unwrap();
            assert_eq!(p.min_degree(), Some(n.div_ceil(3)), "n={n}");
        }
    }

    #[test]
    fn coefficient_sum_matches_direct_filter() {
        let s = spec(Family::King, 3, 4);
        let g = build_graph(&s);
        let direct = (0u64..1 << 12).filter(|&x| is_dominating(&g, x)).count();
        assert_eq!(brute_force_polynomial(&s).unwrap().eval_at_one(), UBig::from(direct));
    }

    proptest::proptest! {
        #[test]
        fn supersets_stay_dominating(subset in 0u64..1 << 12, extra in 0usize..12) {
            let g = build_graph(&spec(Family::Torus, 3, 4));
            if is_dominating(&g, subset) {
                proptest::prop_assert!(is_dominating(&g, subset | 1 << extra));
            }
        }
    }
}
