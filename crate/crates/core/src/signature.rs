//! Row signatures: ternary strings over {uncovered, covered, occupied}.
//!
//! A signature records the state of every vertex in the frontier row. Cell `i`
//! (zero-based, left to right) contributes `digit * 3^i` to the integer code,
//! so codes are little-endian base-3 numbers below `3^width`.

use std::fmt;
use std::str::FromStr;

use dashu_float::DBig;
use dashu_int::{IBig, UBig};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Widest supported row. `3^40 < 2^64`, so every code fits a `u64`.
pub const MAX_WIDTH: usize = 40;

/// `POW3[i] = 3^i` for `i <= 40`.
pub const POW3: [u64; MAX_WIDTH + 1] = {
    let mut table = [1u64; MAX_WIDTH + 1];
    let mut i = 1;
    while i <= MAX_WIDTH {
        table[i] = table[i - 1] * 3;
        i += 1;
    }
    table
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(u8)]
pub enum CellState {
    Uncovered = 0,
    Covered = 1,
    Occupied = 2,
}

impl CellState {
    pub const ALL: [CellState; 3] = [CellState::Uncovered, CellState::Covered, CellState::Occupied];

    #[inline]
    pub const fn digit(self) -> u64 {
        self as u64
    }

    #[inline]
    pub const fn from_digit(d: u64) -> CellState {
        match d {
            0 => CellState::Uncovered,
            1 => CellState::Covered,
            _ => CellState::Occupied,
        }
    }

    /// Text symbol used by the CLI and JSON: `o`, `c`, `x`.
    pub const fn symbol(self) -> char {
        match self {
            CellState::Uncovered => 'o',
            CellState::Covered => 'c',
            CellState::Occupied => 'x',
        }
    }

    pub const fn from_symbol(ch: char) -> Option<CellState> {
        match ch {
            'o' => Some(CellState::Uncovered),
            'c' => Some(CellState::Covered),
            'x' => Some(CellState::Occupied),
            _ => None,
        }
    }
}

/// True when `a` and `b` may not sit next to each other in one row.
#[inline]
pub(crate) fn forbidden_pair(a: CellState, b: CellState) -> bool {
    matches!(
        (a, b),
        (CellState::Uncovered, CellState::Occupied) | (CellState::Occupied, CellState::Uncovered)
    )
}

/// Position of the kink in a partially filled row: `column` is the 1-indexed
/// first cell that still belongs to the previous row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Kink {
    pub column: usize,
}

impl Kink {
    pub fn new(column: usize, width: usize) -> Result<Self> {
        if column == 0 || column > width {
            return Err(Error::KinkOutOfRange { column, width });
        }
        Ok(Kink { column })
    }
}

fn check_width(width: usize) -> Result<()> {
    if width == 0 || width > MAX_WIDTH {
        return Err(Error::WidthOutOfRange { width, max: MAX_WIDTH });
    }
    Ok(())
}

pub fn encode(cells: &[CellState]) -> Result<u64> {
    check_width(cells.len())?;
    Ok(cells.iter().zip(POW3.iter()).map(|(c, p)| c.digit() * p).sum())
}

pub fn decode(code: u64, width: usize) -> Result<Vec<CellState>> {
    check_width(width)?;
    if width < MAX_WIDTH && code >= POW3[width] {
        return Err(Error::Inconsistent(format!("code {code} does not fit width {width}")));
    }
    let mut rest = code;
    Ok((0..width)
        .map(|_| {
            let d = rest % 3;
            rest /= 3;
            CellState::from_digit(d)
        })
        .collect())
}

/// Validity of a cell string under the adjacency rule, honoring cyclic wrap
/// and kink suspension.
pub fn cells_valid(cells: &[CellState], cyclic: bool, kink: Option<Kink>) -> bool {
    let m = cells.len();
    let suspended = kink.map(|k| k.column).unwrap_or(0);
    for i in 1..m {
        // pair of 1-indexed positions (i, i+1)
        if i + 1 == suspended {
            continue;
        }
        if forbidden_pair(cells[i - 1], cells[i]) {
            return false;
        }
    }
    // The wrap pair joins column m to column 1; inside a kinked row they belong
    // to different rows unless the kink sits at column 1.
    let wrap_active = cyclic && m >= 2 && suspended <= 1;
    if wrap_active && forbidden_pair(cells[m - 1], cells[0]) {
        return false;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    cells: Vec<CellState>,
}

impl Signature {
    pub fn new(cells: Vec<CellState>) -> Result<Self> {
        check_width(cells.len())?;
        Ok(Signature { cells })
    }

    pub fn from_code(code: u64, width: usize) -> Result<Self> {
        Ok(Signature { cells: decode(code, width)? })
    }

    /// The all-covered signature of the given width.
    pub fn all_covered(width: usize) -> Result<Self> {
        Signature::new(vec![CellState::Covered; width])
    }

    pub fn width(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[CellState] {
        &self.cells
    }

    pub fn code(&self) -> u64 {
        self.cells.iter().zip(POW3.iter()).map(|(c, p)| c.digit() * p).sum()
    }

    pub fn is_valid(&self, cyclic: bool, kink: Option<Kink>) -> bool {
        cells_valid(&self.cells, cyclic, kink)
    }

    pub fn reflect(&self) -> Signature {
        let mut cells = self.cells.clone();
        cells.reverse();
        Signature { cells }
    }

    /// Cyclic shift to the right by `k` positions: cell `i` moves to `i + k mod m`.
    pub fn rotate(&self, k: usize) -> Result<Signature> {
        if !self.is_valid(true, None) {
            return Err(Error::NotCyclicValid(self.to_string()));
        }
        let mut cells = self.cells.clone();
        let m = cells.len();
        cells.rotate_right(k % m);
        Ok(Signature { cells })
    }

    pub fn uncovered_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c == CellState::Uncovered).count()
    }

    pub fn occupied_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c == CellState::Occupied).count()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cells {
            write!(f, "{}", c.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for Signature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cells = s
            .chars()
            .map(|ch| CellState::from_symbol(ch).ok_or_else(|| Error::ParseSignature(s.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Signature::new(cells)
    }
}

impl Serialize for Signature {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Signature {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Codes of all valid signatures of width `m` (optionally kinked), ascending.
pub fn enumerate_codes(m: usize, cyclic: bool, kink: Option<Kink>) -> Result<Vec<u64>> {
    check_width(m)?;
    if let Some(k) = kink {
        Kink::new(k.column, m)?;
    }
    let suspended = kink.map(|k| k.column).unwrap_or(0);
    let mut out = Vec::new();
    let mut cells = Vec::with_capacity(m);
    fn walk(
        m: usize,
        cyclic: bool,
        kink: Option<Kink>,
        suspended: usize,
        cells: &mut Vec<CellState>,
        out: &mut Vec<u64>,
    ) {
        let pos = cells.len();
        if pos == m {
            if cells_valid(cells, cyclic, kink) {
                out.push(cells.iter().zip(POW3.iter()).map(|(c, p)| c.digit() * p).sum());
            }
            return;
        }
        for state in CellState::ALL {
            // prune on the pair (pos, pos+1) in 1-indexed terms
            if pos > 0 && pos + 1 != suspended && forbidden_pair(cells[pos - 1], state) {
                continue;
            }
            cells.push(state);
            walk(m, cyclic, kink, suspended, cells, out);
            cells.pop();
        }
    }
    walk(m, cyclic, kink, suspended, &mut cells, &mut out);
    out.sort_unstable();
    Ok(out)
}

pub fn enumerate_signatures(m: usize, cyclic: bool) -> Result<Vec<Signature>> {
    enumerate_codes(m, cyclic, None)?
        .into_iter()
        .map(|code| Signature::from_code(code, m))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignatureVariant {
    Plain,
    Cyclic,
    Kinked(usize),
    ReflectionReduced,
}

fn plain_count(m: usize) -> UBig {
    // a(0) = 1, a(1) = 3, a(m) = 2 a(m-1) + a(m-2)
    let (mut prev, mut cur) = (UBig::ONE, UBig::from(3u8));
    if m == 0 {
        return prev;
    }
    for _ in 1..m {
        let next = &cur * 2u8 + &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

fn cyclic_count(m: usize) -> UBig {
    // ā(0) = 3, ā(1) = 3, ā(2) = 7, ā(m) = 3 ā(m-1) - ā(m-2) - ā(m-3)
    let mut seq = vec![UBig::from(3u8), UBig::from(3u8), UBig::from(7u8)];
    while seq.len() <= m {
        let k = seq.len();
        let next = &seq[k - 1] * 3u8 - &seq[k - 2] - &seq[k - 3];
        seq.push(next);
    }
    seq.swap_remove(m)
}

fn kinked_count(m: usize, c: usize) -> UBig {
    let mut seq = vec![UBig::ONE, UBig::from(3u8)];
    if c == 1 {
        seq[1] = &seq[0] * 3u8;
    }
    for k in 2..=m {
        let next = if k == c { &seq[k - 1] * 3u8 } else { &seq[k - 1] * 2u8 + &seq[k - 2] };
        seq.push(next);
    }
    seq.swap_remove(m)
}

/// Number of signatures of width `m` in the requested family, from the
/// integer recurrences.
pub fn count_signatures(m: usize, variant: SignatureVariant) -> Result<UBig> {
    if m == 0 {
        return Err(Error::WidthOutOfRange { width: 0, max: usize::MAX });
    }
    Ok(match variant {
        SignatureVariant::Plain => plain_count(m),
        SignatureVariant::Cyclic => cyclic_count(m),
        SignatureVariant::Kinked(c) => {
            Kink::new(c, m)?;
            kinked_count(m, c)
        }
        SignatureVariant::ReflectionReduced => (plain_count(m) + plain_count((m + 1) / 2)) / 2u8,
    })
}

/// Closed-form solutions of the signature recurrences, evaluated in
/// high-precision floating point. Cross-checks only; the recurrences are
/// authoritative.
#[derive(Debug, Clone)]
pub struct CountingFormulas {
    precision_digits: usize,
    pub a_minus: DBig,
    pub a_plus: DBig,
    pub c_one: DBig,
    pub c_minus: DBig,
    pub c_plus: DBig,
    pub lambda: DBig,
    mu: DBig,
}

impl CountingFormulas {
    pub fn new(precision_digits: usize) -> Self {
        let p = precision_digits;
        let n = |v: i64| DBig::from(v).with_precision(p).value();
        let sqrt2 = n(2).sqrt();
        let lambda = n(1) + &sqrt2;
        let mu = n(1) - &sqrt2;
        let two_sqrt2 = n(2) * &sqrt2;
        let (a0, a1) = (n(1), n(3));
        let a_minus = (&lambda * &a0 - &a1) / &two_sqrt2;
        let a_plus = (&a1 - &mu * &a0) / &two_sqrt2;
        let (b0, b1, b2) = (n(3), n(3), n(7));
        let four_sqrt2 = n(4) * &sqrt2;
        let c_one = &b0 / n(2) + &b1 - &b2 / n(2);
        let c_minus = (n(2) + &sqrt2) / &four_sqrt2 * &b0 - (n(2) + n(2) * &sqrt2) / &four_sqrt2 * &b1
            + &b2 / n(4);
        let c_plus = -((n(2) - &sqrt2) / &four_sqrt2) * &b0 + (n(2) - n(2) * &sqrt2) / &four_sqrt2 * &b1
            + &b2 / n(4);
        CountingFormulas { precision_digits, a_minus, a_plus, c_one, c_minus, c_plus, lambda, mu }
    }

    fn round(x: DBig) -> UBig {
        let i: IBig = x.round().to_int().value();
        UBig::try_from(i).unwrap_or(UBig::ZERO)
    }

    /// `A- (1-√2)^m + A+ (1+√2)^m`, rounded.
    pub fn plain(&self, m: usize) -> UBig {
        let v = &self.a_minus * self.mu.powi(IBig::from(m)) + &self.a_plus * self.lambda.powi(IBig::from(m));
        Self::round(v)
    }

    /// `C1 + C- (1-√2)^m + C+ (1+√2)^m`, rounded.
    pub fn cyclic(&self, m: usize) -> UBig {
        let v = &self.c_one
            + &self.c_minus * self.mu.powi(IBig::from(m))
            + &self.c_plus * self.lambda.powi(IBig::from(m));
        Self::round(v)
    }

    pub fn precision_digits(&self) -> usize {
        self.precision_digits
    }
}

impl Default for CountingFormulas {
    fn default() -> Self {
        CountingFormulas::new(60)
    }
}
