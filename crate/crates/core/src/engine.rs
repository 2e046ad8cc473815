//! The row-by-row, vertex-by-vertex sweep.
//!
//! A frontier is a configuration list stored as ascending signature codes plus
//! a flat arena of fixed-stride weights. Each column step consumes the old
//! frontier and builds a new one: successors are collected as
//! `(code, source)` records, sorted, and merged group by group, so iteration
//! order and the arithmetic performed are independent of scheduling.

use std::collections::BTreeMap;
use std::path::PathBuf;

use dashu_int::UBig;
use rayon::prelude::*;

use crate::checkpoint;
use crate::error::{Error, Result};
use crate::graph::{Family, GraphSpec};
use crate::kernel::{RowKernel, RowKind};
use crate::payload::{ExactCount, ExactPoly, LowestTerm, ModCount, ModPoly, Payload};
use crate::ring::{crt_reconstruct, select_moduli, Polynomial, RingTag};
use crate::signature::{enumerate_codes, Signature, POW3};

/// Row signature code mapped to its generating function.
pub type ConfigurationList = BTreeMap<u64, Polynomial>;

#[derive(Debug, Clone, Default)]
pub struct EngineOptions {
    /// Abort once a frontier holds more configurations than this.
    pub max_signatures: Option<usize>,
    /// Abort once the estimated working set exceeds this many bytes.
    pub max_memory: Option<u64>,
    /// Merge mirror-image (and, for cycles, rotated) row signatures at row
    /// boundaries, and sweep one torus start per symmetry orbit.
    pub symmetry: bool,
    /// Write a checkpoint after each completed row and resume from the latest.
    pub checkpoint_dir: Option<PathBuf>,
    /// Per-row progress lines on stderr.
    pub progress: bool,
}

#[derive(Debug, Clone, Default)]
pub(crate) struct Frontier {
    pub(crate) codes: Vec<u64>,
    pub(crate) words: Vec<u64>,
}

impl Frontier {
    pub(crate) fn len(&self) -> usize {
        self.codes.len()
    }

    fn single<P: Payload>(payload: &P, code: u64) -> Frontier {
        let mut words = vec![0; payload.stride()];
        payload.set_unit(&mut words);
        Frontier { codes: vec![code], words }
    }

    fn weight(&self, i: usize, stride: usize) -> &[u64] {
        &self.words[i * stride..(i + 1) * stride]
    }

    fn find(&self, code: u64) -> Option<usize> {
        self.codes.binary_search(&code).ok()
    }
}

/// Records are `(successor code, source index << 1 | occupy)`.
fn merge<P: Payload>(payload: &P, old: &Frontier, records: &mut [(u64, u64)]) -> Frontier {
    records.sort_unstable();
    let stride = payload.stride();
    let mut codes = Vec::with_capacity(records.len());
    let mut words: Vec<u64> = Vec::with_capacity(records.len() * stride);
    let mut i = 0;
    while i < records.len() {
        let code = records[i].0;
        let base = words.len();
        words.resize(base + stride, 0);
        let dst = &mut words[base..];
        payload.set_zero(dst);
        while i < records.len() && records[i].0 == code {
            let tag = records[i].1;
            payload.accumulate(dst, old.weight((tag >> 1) as usize, stride), tag & 1 == 1);
            i += 1;
        }
        if payload.is_zero(dst) {
            words.truncate(base);
        } else {
            codes.push(code);
        }
    }
    Frontier { codes, words }
}

fn digits_of(code: u64, m: usize) -> [u8; 41] {
    let mut d = [0u8; 41];
    let mut rest = code;
    for slot in d.iter_mut().take(m) {
        *slot = (rest % 3) as u8;
        rest /= 3;
    }
    d
}

fn code_of(digits: impl Iterator<Item = u8>) -> u64 {
    digits.zip(POW3.iter()).map(|(d, p)| d as u64 * p).sum()
}

/// Smallest code among the images of a row signature under the symmetries
/// of its row topology.
pub(crate) fn canonical_row(code: u64, m: usize, cyclic: bool) -> u64 {
    let d = digits_of(code, m);
    let reflected = code_of((0..m).map(|i| d[m - 1 - i]));
    let mut best = code.min(reflected);
    if cyclic {
        for k in 1..m {
            best = best.min(code_of((0..m).map(|i| d[(i + k) % m])));
            best = best.min(code_of((0..m).map(|i| d[(2 * m - 1 - i + k) % m])));
        }
    }
    best
}

/// Number of distinct images of a row signature under its symmetry group.
pub(crate) fn orbit_size(code: u64, m: usize, cyclic: bool) -> u64 {
    let d = digits_of(code, m);
    let mut images = vec![code, code_of((0..m).map(|i| d[m - 1 - i]))];
    if cyclic {
        for k in 1..m {
            images.push(code_of((0..m).map(|i| d[(i + k) % m])));
            images.push(code_of((0..m).map(|i| d[(2 * m - 1 - i + k) % m])));
        }
    }
    images.sort_unstable();
    images.dedup();
    images.len() as u64
}

fn row_has_uncovered(code: u64, m: usize) -> bool {
    let mut rest = code;
    for _ in 0..m {
        if rest % 3 == 0 {
            return true;
        }
        rest /= 3;
    }
    false
}

/// What to read off the frontier after each completed row.
#[derive(Debug, Clone, Copy)]
enum Readout {
    /// Sum over row signatures without uncovered cells.
    CoveredRows,
    /// The single entry at this row code.
    Entry(u64),
}

struct SweepJob<'a, P: Payload> {
    kernel: RowKernel,
    payload: &'a P,
    options: &'a EngineOptions,
    family: Family,
    start_row_code: u64,
    rows: usize,
    symmetric: bool,
    readout: Readout,
}

impl<P: Payload> SweepJob<'_, P> {
    fn checkpoint_key(&self) -> String {
        format!(
            "{}-m{}-start{}-{}{}",
            self.family,
            self.kernel.width(),
            self.start_row_code,
            self.payload.tag().replace(':', "_"),
            if self.symmetric { "-sym" } else { "" }
        )
    }

    fn guard(&self, live: usize, estimate: u64) -> Result<()> {
        if let Some(max) = self.options.max_signatures {
            if live > max {
                return Err(Error::GuardExceeded(format!("{live} live signatures exceed the cap of {max}")));
            }
        }
        if let Some(max) = self.options.max_memory {
            if estimate > max {
                return Err(Error::GuardExceeded(format!(
                    "estimated working set {estimate} bytes exceeds the cap of {max}"
                )));
            }
        }
        Ok(())
    }

    fn read(&self, frontier: &Frontier) -> P::Output {
        let stride = self.payload.stride();
        let m = self.kernel.width();
        match self.readout {
            Readout::Entry(row) => match frontier.find(self.kernel.start_code(row)) {
                Some(i) => self.payload.output(frontier.weight(i, stride)),
                None => self.payload.zero_output(),
            },
            Readout::CoveredRows => {
                let mut acc = vec![0u64; stride];
                self.payload.set_zero(&mut acc);
                for (i, &code) in frontier.codes.iter().enumerate() {
                    if !row_has_uncovered(self.kernel.row_code(code), m) {
                        self.payload.accumulate(&mut acc, frontier.weight(i, stride), false);
                    }
                }
                self.payload.output(&acc)
            }
        }
    }

    fn symmetrize(&self, frontier: Frontier) -> Frontier {
        let m = self.kernel.width();
        let cyclic = self.kernel.kind().cyclic();
        let mut records: Vec<(u64, u64)> = frontier
            .codes
            .iter()
            .enumerate()
            .map(|(i, &code)| {
                let row = canonical_row(self.kernel.row_code(code), m, cyclic);
                (self.kernel.start_code(row), (i as u64) << 1)
            })
            .collect();
        merge(self.payload, &frontier, &mut records)
    }

    fn run(&self) -> Result<Vec<Option<P::Output>>> {
        self.run_until(&mut |_, _| false)
    }

    /// Runs rows until `stop` returns true or all rows are done;
    /// `outputs[r - 1]` is the readout after row `r`, or `None` for rows
    /// skipped by resuming from a checkpoint. Rows never reached are dropped.
    fn run_until(&self, stop: &mut dyn FnMut(usize, &P::Output) -> bool) -> Result<Vec<Option<P::Output>>> {
        let stride = self.payload.stride() as u64;
        let m = self.kernel.width();
        let key = self.checkpoint_key();
        let mut first_row = 1;
        let mut frontier = Frontier::single(self.payload, self.kernel.start_code(self.start_row_code));
        let mut outputs: Vec<Option<P::Output>> = vec![None; self.rows];
        if let Some(dir) = &self.options.checkpoint_dir {
            if let Some((row, loaded)) = checkpoint::load_latest(dir, &key, self.rows, self.payload.stride())? {
                frontier = loaded;
                first_row = row + 1;
                outputs[row - 1] = Some(self.read(&frontier));
            }
        }
        let mut records: Vec<(u64, u64)> = Vec::new();
        for row in first_row..=self.rows {
            for c in 1..=m {
                records.clear();
                for (i, &code) in frontier.codes.iter().enumerate() {
                    let tag = (i as u64) << 1;
                    if let Some(s) = self.kernel.extend(code, c, false) {
                        records.push((s, tag));
                    }
                    if let Some(s) = self.kernel.extend(code, c, true) {
                        records.push((s, tag | 1));
                    }
                }
                let old_bytes = frontier.len() as u64 * (8 + 8 * stride);
                self.guard(records.len(), old_bytes * 2 + records.len() as u64 * 16)?;
                frontier = merge(self.payload, &frontier, &mut records);
            }
            if self.symmetric {
                frontier = self.symmetrize(frontier);
            }
            let out = self.read(&frontier);
            let done = stop(row, &out);
            outputs[row - 1] = Some(out);
            if self.options.progress {
                eprintln!("{} m={} row {}/{}: {} signatures", self.family, m, row, self.rows, frontier.len());
            }
            if let Some(dir) = &self.options.checkpoint_dir {
                let header = checkpoint::Header {
                    version: checkpoint::VERSION,
                    family: self.family,
                    m,
                    n: self.rows,
                    row,
                    ring: self.payload.tag(),
                    stride: self.payload.stride(),
                };
                checkpoint::save(dir, &key, &header, &frontier)?;
            }
            if done {
                outputs.truncate(row);
                break;
            }
        }
        Ok(outputs)
    }
}

impl EngineOptions {
    fn job<'a, P: Payload>(
        &'a self,
        family: Family,
        m: usize,
        payload: &'a P,
        start_row_code: u64,
        rows: usize,
        readout: Readout,
        symmetric: bool,
    ) -> Result<SweepJob<'a, P>> {
        Ok(SweepJob {
            kernel: RowKernel::new(RowKind::of(family), m)?,
            payload,
            options: self,
            family,
            start_row_code,
            rows,
            symmetric,
            readout,
        })
    }

    /// Readouts for `n = 1..=n_max` of the family at width `m`, in any payload.
    pub fn sweep_rows<P: Payload>(&self, family: Family, m: usize, n_max: usize, payload: &P) -> Result<Vec<P::Output>> {
        if n_max == 0 {
            return Ok(Vec::new());
        }
        let covered = start_code_all_covered(m);
        let outputs = match family {
            Family::Torus => self.torus_rows(m, n_max, payload)?,
            _ => {
                let job = self.job(family, m, payload, covered, n_max, Readout::CoveredRows, self.symmetry)?;
                job.run()?
            }
        };
        Ok(outputs.into_iter().map(|o| o.unwrap_or_else(|| payload.zero_output())).collect())
    }

    /// Like `sweep_rows`, but stops after the first row for which `stop`
    /// returns true. Torus runs always complete every row.
    pub fn sweep_rows_until<P: Payload>(
        &self,
        family: Family,
        m: usize,
        n_max: usize,
        payload: &P,
        mut stop: impl FnMut(usize, &P::Output) -> bool,
    ) -> Result<Vec<P::Output>> {
        if family == Family::Torus || n_max == 0 {
            return self.sweep_rows(family, m, n_max, payload);
        }
        let covered = start_code_all_covered(m);
        let job = self.job(family, m, payload, covered, n_max, Readout::CoveredRows, self.symmetry)?;
        let outputs = job.run_until(&mut stop)?;
        Ok(outputs.into_iter().map(|o| o.unwrap_or_else(|| payload.zero_output())).collect())
    }

    fn torus_rows<P: Payload>(&self, m: usize, n_max: usize, payload: &P) -> Result<Vec<Option<P::Output>>> {
        let codes = enumerate_codes(m, true, None)?;
        let starts: Vec<(u64, u64)> = if self.symmetry {
            codes
                .iter()
                .filter(|&&c| canonical_row(c, m, true) == c)
                .map(|&c| (c, orbit_size(c, m, true)))
                .collect()
        } else {
            codes.iter().map(|&c| (c, 1)).collect()
        };
        let partial: Vec<Vec<Option<P::Output>>> = starts
            .par_iter()
            .map(|&(code, _)| self.job(Family::Torus, m, payload, code, n_max, Readout::Entry(code), false)?.run())
            .collect::<Result<_>>()?;
        let mut totals: Vec<Option<P::Output>> = vec![Some(payload.zero_output()); n_max];
        for ((_, mult), outs) in starts.iter().zip(&partial) {
            for (total, out) in totals.iter_mut().zip(outs) {
                match (total.as_mut(), out) {
                    (Some(t), Some(o)) => payload.combine(t, o, *mult),
                    _ => *total = None,
                }
            }
        }
        Ok(totals)
    }

    /// Single graph; grid, king and torus are swept across their narrower
    /// side, since the cost grows exponentially with the width only.
    pub fn sweep<P: Payload>(&self, spec: &GraphSpec, payload: &P) -> Result<P::Output> {
        let transposable = spec.family != Family::Cylinder;
        let (m, n) = if transposable && spec.n < spec.m { (spec.n, spec.m) } else { (spec.m, spec.n) };
        let mut rows = self.sweep_rows(spec.family, m, n, payload)?;
        Ok(rows.pop().expect("n >= 1"))
    }

    pub fn polynomial(&self, spec: &GraphSpec, ring: RingTag) -> Result<Polynomial> {
        let v = spec.vertex_count();
        match ring {
            RingTag::Exact => self.sweep(spec, &ExactPoly::for_vertices(v)),
            RingTag::Mod(p) => self.sweep(spec, &ModPoly { max_degree: v, p }),
        }
    }

    /// Polynomials for `n = 1..=n_max` from a single sweep.
    pub fn polynomials_by_rows(&self, family: Family, m: usize, n_max: usize, ring: RingTag) -> Result<Vec<Polynomial>> {
        let v = m * n_max;
        match ring {
            RingTag::Exact => self.sweep_rows(family, m, n_max, &ExactPoly::for_vertices(v)),
            RingTag::Mod(p) => self.sweep_rows(family, m, n_max, &ModPoly { max_degree: v, p }),
        }
    }

    pub fn count(&self, spec: &GraphSpec) -> Result<UBig> {
        self.sweep(spec, &ExactCount::for_vertices(spec.vertex_count()))
    }

    pub fn count_mod(&self, spec: &GraphSpec, p: u32) -> Result<UBig> {
        self.sweep(spec, &ModCount { p })
    }

    pub fn counts_by_rows(&self, family: Family, m: usize, n_max: usize) -> Result<Vec<UBig>> {
        self.sweep_rows(family, m, n_max, &ExactCount::for_vertices(m * n_max))
    }

    /// `(γ, N_γ)` for `n = 1..=n_max`.
    pub fn lowest_terms_by_rows(&self, family: Family, m: usize, n_max: usize) -> Result<Vec<(usize, UBig)>> {
        self.sweep_rows(family, m, n_max, &LowestTerm::for_vertices(m * n_max))?
            .into_iter()
            .map(|t| t.ok_or(Error::ZeroPolynomial))
            .collect()
    }

    pub fn lowest_term(&self, spec: &GraphSpec) -> Result<(usize, UBig)> {
        self.sweep(spec, &LowestTerm::for_vertices(spec.vertex_count()))?
            .ok_or(Error::ZeroPolynomial)
    }

    /// Exact polynomial assembled from independent runs modulo primes below
    /// `2^width` whose product exceeds `2^(mn + 1)`.
    pub fn polynomial_crt(&self, spec: &GraphSpec, width: u32) -> Result<Polynomial> {
        let v = spec.vertex_count();
        let moduli = select_moduli(v as u64 + 1, width)?;
        let residues: Vec<(u32, Vec<u32>)> = moduli
            .primes
            .par_iter()
            .map(|&p| {
                let poly = self.sweep(spec, &ModPoly { max_degree: v, p })?;
                let mut res: Vec<u32> = poly.coeffs().iter().map(|c| u32::try_from(c).expect("residue")).collect();
                res.resize(v + 1, 0);
                Ok((p, res))
            })
            .collect::<Result<_>>()?;
        Ok(crt_reconstruct(&residues)?.trimmed())
    }

    /// Exact count from modular runs, sized like `polynomial_crt`.
    pub fn count_crt(&self, spec: &GraphSpec, width: u32) -> Result<UBig> {
        let moduli = select_moduli(spec.vertex_count() as u64 + 1, width)?;
        let residues: Vec<(u32, Vec<u32>)> = moduli
            .primes
            .par_iter()
            .map(|&p| Ok((p, vec![u32::try_from(&self.count_mod(spec, p)?).expect("residue")])))
            .collect::<Result<_>>()?;
        Ok(crt_reconstruct(&residues)?.coefficient(0))
    }

    /// The configuration list `{τ ↦ (A^rows)_{τ,start}}` for the family's row
    /// operator; torus uses the cylinder operator.
    pub fn run_sweep(&self, spec: &GraphSpec, start: &Signature, rows: usize, ring: RingTag) -> Result<ConfigurationList> {
        if start.width() != spec.m {
            return Err(Error::WidthMismatch { left: start.width(), right: spec.m });
        }
        if !start.is_valid(spec.family.cyclic_rows(), None) {
            return Err(Error::Inconsistent(format!("start signature {start} is not valid for {}", spec.family)));
        }
        let v = spec.m * rows;
        match ring {
            RingTag::Exact => self.configurations(spec, start, rows, &ExactPoly::for_vertices(v)),
            RingTag::Mod(p) => self.configurations(spec, start, rows, &ModPoly { max_degree: v, p }),
        }
    }

    fn configurations<P: Payload<Output = Polynomial>>(
        &self,
        spec: &GraphSpec,
        start: &Signature,
        rows: usize,
        payload: &P,
    ) -> Result<ConfigurationList> {
        let kernel = RowKernel::new(RowKind::of(spec.family), spec.m)?;
        let mut frontier = Frontier::single(payload, kernel.start_code(start.code()));
        let mut records = Vec::new();
        for _ in 0..rows {
            for c in 1..=spec.m {
                records.clear();
                for (i, &code) in frontier.codes.iter().enumerate() {
                    for occupy in [false, true] {
                        if let Some(s) = kernel.extend(code, c, occupy) {
                            records.push((s, (i as u64) << 1 | occupy as u64));
                        }
                    }
                }
                frontier = merge(payload, &frontier, &mut records);
            }
        }
        let stride = payload.stride();
        Ok(frontier
            .codes
            .iter()
            .enumerate()
            .map(|(i, &code)| (kernel.row_code(code), payload.output(frontier.weight(i, stride))))
            .collect())
    }
}

fn start_code_all_covered(m: usize) -> u64 {
    // all digits 1
    (POW3[m] - 1) / 2
}

/// Domination polynomial of a grid, cylinder, torus, or king graph.
pub fn domination_polynomial(spec: &GraphSpec) -> Result<Polynomial> {
    EngineOptions::default().polynomial(spec, RingTag::Exact)
}

pub fn torus_polynomial(m: usize, n: usize, ring: RingTag) -> Result<Polynomial> {
    EngineOptions::default().polynomial(&GraphSpec::new(Family::Torus, m, n)?, ring)
}

pub fn count_dominating(spec: &GraphSpec) -> Result<UBig> {
    EngineOptions::default().count(spec)
}

pub fn run_sweep(spec: &GraphSpec, start: &Signature, rows: usize, ring: RingTag) -> Result<ConfigurationList> {
    EngineOptions::default().run_sweep(spec, start, rows, ring)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(family: Family, m: usize, n: usize) -> GraphSpec {
        GraphSpec::new(family, m, n).unwrap()
    }

    fn exact(c: &[u64]) -> Polynomial {
        Polynomial::from_u64s(RingTag::Exact, c)
    }

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    #[test]
    fn small_polynomials() {
        assert_eq!(domination_polynomial(&spec(Family::Grid, 2, 2)).unwrap(), exact(&[0, 0, 6, 4, 1]));
        assert_eq!(
            domination_polynomial(&spec(Family::Cylinder, 3, 3)).unwrap(),
            exact(&[0, 0, 0, 34, 99, 120, 84, 36, 9, 1])
        );
        assert_eq!(domination_polynomial(&spec(Family::King, 2, 2)).unwrap(), exact(&[0, 4, 6, 4, 1]));
        assert_eq!(domination_polynomial(&spec(Family::Grid, 1, 1)).unwrap(), exact(&[0, 1]));
        assert_eq!(
            torus_polynomial(3, 3, RingTag::Exact).unwrap(),
            exact(&[0, 0, 0, 48, 117, 126, 84, 36, 9, 1])
        );
        assert_eq!(torus_polynomial(2, 2, RingTag::Exact).unwrap(), exact(&[0, 0, 6, 4, 1]));
        assert_eq!(torus_polynomial(1, 1, RingTag::Exact).unwrap(), exact(&[0, 1]));
    }

    #[test]
    fn grid_four_by_four() {
        let p = domination_polynomial(&spec(Family::Grid, 4, 4)).unwrap();
        assert_eq!(p.min_degree(), Some(4));
        assert_eq!(p.coefficient(4), UBig::from(2u8));
        assert_eq!(p.eval_at_one(), UBig::from(28661u32));
        let (g, n) = EngineOptions::default().lowest_term(&spec(Family::Torus, 4, 4)).unwrap();
        assert_eq!((g, n), (4, UBig::from(40u8)));
    }

    #[test]
    fn counts() {
        assert_eq!(count_dominating(&spec(Family::Grid, 3, 3)).unwrap(), UBig::from(291u16));
        assert_eq!(count_dominating(&spec(Family::Grid, 1, 1)).unwrap(), UBig::ONE);
        assert_eq!(count_dominating(&spec(Family::Grid, 6, 6)).unwrap(), UBig::from(16031828359u64));
    }

    #[test]
    fn sweep_configuration_examples() {
        let out = run_sweep(&spec(Family::Grid, 2, 1), &sig("cc"), 1, RingTag::Exact).unwrap();
        let expect: ConfigurationList = [("oo", exact(&[1])), ("xc", exact(&[0, 1])), ("cx", exact(&[0, 1])), ("xx", exact(&[0, 0, 1]))]
            .into_iter()
            .map(|(s, p)| (sig(s).code(), p))
            .collect();
        assert_eq!(out, expect);
        let out = run_sweep(&spec(Family::Grid, 1, 2), &sig("c"), 2, RingTag::Exact).unwrap();
        let dominated: Polynomial = out
            .iter()
            .filter(|(&code, _)| code != 0)
            .fold(Polynomial::zero(RingTag::Exact), |acc, (_, p)| acc.add(p).unwrap())
            .trimmed();
        assert_eq!(dominated, exact(&[0, 2, 1]));
    }

    #[test]
    fn rows_readout_matches_single_runs() {
        let opts = EngineOptions::default();
        for family in Family::ALL {
            let by_rows = opts.polynomials_by_rows(family, 3, 4, RingTag::Exact).unwrap();
            for (n, p) in by_rows.iter().enumerate() {
                assert_eq!(p, &opts.polynomial(&spec(family, 3, n + 1), RingTag::Exact).unwrap(), "{family} n={}", n + 1);
            }
        }
    }

    #[test]
    fn symmetry_is_transparent() {
        let plain = EngineOptions::default();
        let sym = EngineOptions { symmetry: true, ..Default::default() };
        for family in Family::ALL {
            for m in 1..=5 {
                let a = plain.polynomials_by_rows(family, m, 4, RingTag::Exact).unwrap();
                let b = sym.polynomials_by_rows(family, m, 4, RingTag::Exact).unwrap();
                assert_eq!(a, b, "{family} m={m}");
            }
        }
    }

    #[test]
    fn modular_and_crt_agree_with_exact() {
        let opts = EngineOptions::default();
        for family in Family::ALL {
            let s = spec(family, 4, 5);
            let exact = opts.polynomial(&s, RingTag::Exact).unwrap();
            assert_eq!(opts.polynomial(&s, RingTag::Mod(65521)).unwrap(), exact.reduce_mod(65521).trimmed());
            assert_eq!(opts.polynomial_crt(&s, 16).unwrap(), exact);
            assert_eq!(opts.count_crt(&s, 16).unwrap(), exact.eval_at_one());
            assert_eq!(opts.count(&s).unwrap(), exact.eval_at_one());
        }
    }

    #[test]
    fn guards_trip() {
        let opts = EngineOptions { max_signatures: Some(10), ..Default::default() };
        assert!(matches!(opts.count(&spec(Family::Grid, 6, 6)), Err(Error::GuardExceeded(_))));
        let opts = EngineOptions { max_memory: Some(1000), ..Default::default() };
        assert!(matches!(opts.count(&spec(Family::Grid, 6, 6)), Err(Error::GuardExceeded(_))));
    }

    #[test]
    fn canonical_forms() {
        let c = sig("oxc").code();
        assert_eq!(canonical_row(c, 3, false), c.min(sig("cxo").code()));
        assert_eq!(orbit_size(sig("cc").code(), 2, false), 1);
        assert_eq!(orbit_size(sig("xcc").code(), 3, true), 3);
        assert_eq!(orbit_size(sig("xxcc").code(), 4, true), 4);
    }
}
