//! Row compatibility, explicit transfer matrices, and the single-vertex
//! `extend` step that the sweep engine is built on.
//!
//! A kinked state is stored as a base-3 code over a window of cells. For grid
//! and cylinder rows the window has `m` cells: positions `1..c-1` hold the
//! current row and `c..m` the previous row. King rows need one more cell, the
//! previous-row cell diagonally above-left of the next vertex, so their window
//! has `m + 1` cells laid out as
//!
//! ```text
//! idx 0..c-2   current row, columns 1..c-1
//! idx c-1      previous row, column c-1 (a virtual Covered cell when c = 1)
//! idx c..m     previous row, columns c..m
//! ```
//!
//! At the start of a row (`c = 1`) a king window is `1 + 3 * row_code`.

use std::collections::BTreeMap;

use dashu_int::UBig;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Family;
use crate::ring::{Polynomial, RingTag};
use crate::signature::{
    cells_valid, count_signatures, decode, encode, enumerate_signatures, CellState, Kink, Signature,
    SignatureVariant, MAX_WIDTH, POW3,
};

const UNCOVERED: u64 = 0;
const COVERED: u64 = 1;
const OCCUPIED: u64 = 2;

/// Row topology swept by the kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowKind {
    /// Path rows stacked with vertical edges (grid).
    Path,
    /// Cycle rows stacked with vertical edges (cylinder, torus).
    Cycle,
    /// Path rows with vertical and diagonal edges (king).
    King,
}

impl RowKind {
    pub fn of(family: Family) -> RowKind {
        match family {
            Family::Grid => RowKind::Path,
            Family::Cylinder | Family::Torus => RowKind::Cycle,
            Family::King => RowKind::King,
        }
    }

    pub fn cyclic(self) -> bool {
        self == RowKind::Cycle
    }
}

/// Largest king width whose `m + 1` cell window still fits a 64-bit code.
pub const KING_MAX_WIDTH: usize = MAX_WIDTH - 1;

#[inline]
fn digit(code: u64, i: usize) -> u64 {
    (code / POW3[i]) % 3
}

#[inline]
fn with_digit(code: u64, i: usize, old: u64, new: u64) -> u64 {
    code + new * POW3[i] - old * POW3[i]
}

/// Code-level extend for a fixed row kind and width.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowKernel {
    kind: RowKind,
    m: usize,
}

impl RowKernel {
    pub fn new(kind: RowKind, m: usize) -> Result<Self> {
        let max = if kind == RowKind::King { KING_MAX_WIDTH } else { MAX_WIDTH };
        if m == 0 || m > max {
            return Err(Error::WidthOutOfRange { width: m, max });
        }
        Ok(RowKernel { kind, m })
    }

    pub fn kind(&self) -> RowKind {
        self.kind
    }

    pub fn width(&self) -> usize {
        self.m
    }

    pub fn window_len(&self) -> usize {
        match self.kind {
            RowKind::King => self.m + 1,
            _ => self.m,
        }
    }

    /// Window code at `c = 1` for a full-row signature code.
    #[inline]
    pub fn start_code(&self, row_code: u64) -> u64 {
        match self.kind {
            RowKind::King => COVERED + 3 * row_code,
            _ => row_code,
        }
    }

    /// Full-row signature code of a window at `c = 1`.
    #[inline]
    pub fn row_code(&self, window: u64) -> u64 {
        match self.kind {
            RowKind::King => window / 3,
            _ => window,
        }
    }

    /// Places the vertex in column `c` (1-indexed). Returns the successor
    /// window, or `None` when an unoccupied placement would leave a departing
    /// previous-row cell uncovered forever. After `c = m` the successor is the
    /// `c = 1` window of the next row.
    #[inline]
    pub fn extend(&self, code: u64, c: usize, occupy: bool) -> Option<u64> {
        debug_assert!(c >= 1 && c <= self.m);
        match self.kind {
            RowKind::Path => Some(self.extend_line(code, c, occupy, false)?),
            RowKind::Cycle => Some(self.extend_line(code, c, occupy, true)?),
            RowKind::King => self.extend_king(code, c, occupy),
        }
    }

    #[inline]
    fn extend_line(&self, code: u64, c: usize, occupy: bool, cyclic: bool) -> Option<u64> {
        let m = self.m;
        let j = c - 1;
        let above = digit(code, j);
        // current-row column 1 is the right-hand neighbour of column m
        let wraps = cyclic && c == m && m >= 2;
        if occupy {
            let mut out = with_digit(code, j, above, OCCUPIED);
            if c >= 2 && digit(out, j - 1) == UNCOVERED {
                out += POW3[j - 1];
            }
            if wraps && digit(out, 0) == UNCOVERED {
                out += POW3[0];
            }
            Some(out)
        } else {
            if above == UNCOVERED {
                return None;
            }
            let covered = above == OCCUPIED
                || (c >= 2 && digit(code, j - 1) == OCCUPIED)
                || (wraps && digit(code, 0) == OCCUPIED);
            Some(with_digit(code, j, above, if covered { COVERED } else { UNCOVERED }))
        }
    }

    #[inline]
    fn extend_king(&self, code: u64, c: usize, occupy: bool) -> Option<u64> {
        let m = self.m;
        let nw = digit(code, c - 1);
        let north = digit(code, c);
        let ne = if c < m { Some(digit(code, c + 1)) } else { None };
        let west = if c >= 2 { Some(digit(code, c - 2)) } else { None };
        let out = if occupy {
            let mut out = with_digit(code, c - 1, nw, OCCUPIED);
            if west == Some(UNCOVERED) {
                out += POW3[c - 2];
            }
            if north == UNCOVERED {
                out += POW3[c];
            }
            if ne == Some(UNCOVERED) {
                out += POW3[c + 1];
            }
            out
        } else {
            // the north-west cell leaves the window now; at the row end so does
            // the north cell
            if nw == UNCOVERED || (c == m && north == UNCOVERED) {
                return None;
            }
            let covered = nw == OCCUPIED
                || north == OCCUPIED
                || ne == Some(OCCUPIED)
                || west == Some(OCCUPIED);
            with_digit(code, c - 1, nw, if covered { COVERED } else { UNCOVERED })
        };
        if c == m {
            // drop the leftover north cell and prepend the virtual boundary
            Some(COVERED + 3 * (out % POW3[m]))
        } else {
            Some(out)
        }
    }
}

/// A partially filled row as an explicit cell window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KinkedState {
    kernel: RowKernel,
    column: usize,
    window: Vec<CellState>,
}

impl KinkedState {
    /// The `c = 1` state whose previous row is `row`.
    pub fn from_row(family: Family, row: &Signature) -> Result<Self> {
        let kernel = RowKernel::new(RowKind::of(family), row.width())?;
        let window = decode(kernel.start_code(row.code()), kernel.window_len())?;
        Ok(KinkedState { kernel, column: 1, window })
    }

    /// A state with an explicit window and next column `c`.
    pub fn new(family: Family, m: usize, column: usize, window: Vec<CellState>) -> Result<Self> {
        let kernel = RowKernel::new(RowKind::of(family), m)?;
        Kink::new(column, m)?;
        if window.len() != kernel.window_len() {
            return Err(Error::WidthMismatch { left: window.len(), right: kernel.window_len() });
        }
        Ok(KinkedState { kernel, column, window })
    }

    pub fn column(&self) -> usize {
        self.column
    }

    pub fn window(&self) -> &[CellState] {
        &self.window
    }

    pub fn code(&self) -> u64 {
        encode(&self.window).expect("window width checked at construction")
    }

    /// Kink validity of the window. King windows are plain-valid strings of
    /// length `m + 1`.
    pub fn is_valid(&self) -> bool {
        match self.kernel.kind {
            RowKind::King => cells_valid(&self.window, false, None),
            kind => cells_valid(&self.window, kind.cyclic(), Some(Kink { column: self.column })),
        }
    }

    /// The previous-row signature once a row is complete (`c = 1`).
    pub fn row_signature(&self) -> Option<Signature> {
        if self.column != 1 {
            return None;
        }
        Signature::from_code(self.kernel.row_code(self.code()), self.kernel.m).ok()
    }

    pub fn extend(&self, occupy: bool) -> Option<KinkedState> {
        let next = self.kernel.extend(self.code(), self.column, occupy)?;
        let column = if self.column == self.kernel.m { 1 } else { self.column + 1 };
        Some(KinkedState {
            kernel: self.kernel,
            column,
            window: decode(next, self.kernel.window_len()).expect("extend stays in range"),
        })
    }
}

impl std::fmt::Display for KinkedState {
    /// Cells with a `|` in front of the first previous-row cell.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let split = self.column - 1;
        for (i, cell) in self.window.iter().enumerate() {
            if i == split && split > 0 {
                write!(f, "|")?;
            }
            write!(f, "{}", cell.symbol())?;
        }
        Ok(())
    }
}

/// Whether `tau` may follow `sigma` as the next row.
pub fn compatible(sigma: &Signature, tau: &Signature, cyclic: bool) -> Result<bool> {
    let m = sigma.width();
    if tau.width() != m {
        return Err(Error::WidthMismatch { left: m, right: tau.width() });
    }
    let s = sigma.cells();
    let t = tau.cells();
    let occupied = |i: Option<usize>| i.is_some_and(|i| t[i] == CellState::Occupied);
    for i in 0..m {
        match s[i] {
            CellState::Uncovered if t[i] != CellState::Occupied => return Ok(false),
            CellState::Occupied if t[i] == CellState::Uncovered => return Ok(false),
            _ => {}
        }
        if t[i] == CellState::Covered && s[i] != CellState::Occupied {
            let (left, right) = if cyclic {
                (Some((i + m - 1) % m), Some((i + 1) % m))
            } else {
                (i.checked_sub(1), (i + 1 < m).then_some(i + 1))
            };
            if !occupied(left) && !occupied(right) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Explicit transfer matrix; row `τ` carries the exponent `occupied(τ)` on
/// every present entry.
#[derive(Debug, Clone)]
pub struct TransferMatrix {
    pub m: usize,
    pub cyclic: bool,
    signatures: Vec<Signature>,
    exponents: Vec<usize>,
    /// Per row τ, the ascending indices of compatible σ.
    rows: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixEntry {
    pub tau: Signature,
    pub sigma: Signature,
    pub exponent: usize,
}

const MATRIX_GUARD: u64 = 100_000;
const ROW_CHECK_GUARD: u64 = 10_000;

fn guard_signatures(m: usize, cyclic: bool, limit: u64) -> Result<()> {
    let variant = if cyclic { SignatureVariant::Cyclic } else { SignatureVariant::Plain };
    let count = count_signatures(m, variant)?;
    if count > UBig::from(limit) {
        return Err(Error::GuardExceeded(format!("{count} signatures of width {m} exceed {limit}")));
    }
    Ok(())
}

pub fn build_transfer_matrix(m: usize, cyclic: bool) -> Result<TransferMatrix> {
    guard_signatures(m, cyclic, MATRIX_GUARD)?;
    let signatures = enumerate_signatures(m, cyclic)?;
    let mut rows = Vec::with_capacity(signatures.len());
    for tau in &signatures {
        let mut row = Vec::new();
        for (k, sigma) in signatures.iter().enumerate() {
            if compatible(sigma, tau, cyclic)? {
                row.push(k);
            }
        }
        rows.push(row);
    }
    let exponents = signatures.iter().map(Signature::occupied_count).collect();
    Ok(TransferMatrix { m, cyclic, signatures, exponents, rows })
}

impl TransferMatrix {
    pub fn signatures(&self) -> &[Signature] {
        &self.signatures
    }

    fn index(&self, sig: &Signature) -> Option<usize> {
        self.signatures.binary_search_by_key(&sig.code(), Signature::code).ok()
    }

    /// Exponent of the entry at `(τ, σ)`, or `None` when absent.
    pub fn entry(&self, tau: &Signature, sigma: &Signature) -> Option<usize> {
        let t = self.index(tau)?;
        let s = self.index(sigma)?;
        self.rows[t].binary_search(&s).ok().map(|_| self.exponents[t])
    }

    pub fn entries(&self) -> Vec<MatrixEntry> {
        let mut out = Vec::new();
        for (t, row) in self.rows.iter().enumerate() {
            for &s in row {
                out.push(MatrixEntry {
                    tau: self.signatures[t].clone(),
                    sigma: self.signatures[s].clone(),
                    exponent: self.exponents[t],
                });
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "m": self.m,
            "cyclic": self.cyclic,
            "entries": self.entries(),
        })
    }

    /// `A · v` for a vector keyed by signature code; zero results are omitted.
    pub fn apply(&self, v: &BTreeMap<u64, Polynomial>, ring: RingTag) -> Result<BTreeMap<u64, Polynomial>> {
        let mut out = BTreeMap::new();
        for (t, row) in self.rows.iter().enumerate() {
            let mut acc = Polynomial::zero(ring);
            for &s in row {
                if let Some(g) = v.get(&self.signatures[s].code()) {
                    acc = acc.add(g)?;
                }
            }
            if !acc.is_zero() {
                let mut shifted = acc;
                for _ in 0..self.exponents[t] {
                    shifted = shifted.shift();
                }
                out.insert(self.signatures[t].code(), shifted.trimmed());
            }
        }
        Ok(out)
    }
}

/// One full row of `extend` steps applied to a vector of row signatures.
pub fn sweep_row(
    kernel: &RowKernel,
    v: &BTreeMap<u64, Polynomial>,
    ring: RingTag,
) -> Result<BTreeMap<u64, Polynomial>> {
    let mut cur: BTreeMap<u64, Polynomial> =
        v.iter().map(|(&code, g)| (kernel.start_code(code), g.clone())).collect();
    for c in 1..=kernel.width() {
        let mut next: BTreeMap<u64, Polynomial> = BTreeMap::new();
        for (&code, g) in &cur {
            for occupy in [false, true] {
                if let Some(succ) = kernel.extend(code, c, occupy) {
                    next.entry(succ)
                        .or_insert_with(|| Polynomial::zero(ring))
                        .scale_shift_add(g, occupy)?;
                }
            }
        }
        cur = next;
    }
    Ok(cur
        .into_iter()
        .map(|(code, g)| (kernel.row_code(code), g.trimmed()))
        .filter(|(_, g)| !g.is_zero())
        .collect())
}

/// True iff one extend sweep equals multiplication by the explicit matrix.
pub fn row_step_equivalence_check(m: usize, cyclic: bool, vector: &BTreeMap<u64, Polynomial>) -> Result<bool> {
    guard_signatures(m, cyclic, ROW_CHECK_GUARD)?;
    let ring = vector.values().next().map(Polynomial::ring).unwrap_or(RingTag::Exact);
    let matrix = build_transfer_matrix(m, cyclic)?;
    let kernel = RowKernel::new(if cyclic { RowKind::Cycle } else { RowKind::Path }, m)?;
    let trimmed: BTreeMap<u64, Polynomial> =
        vector.iter().map(|(&k, g)| (k, g.clone().trimmed())).filter(|(_, g)| !g.is_zero()).collect();
    Ok(sweep_row(&kernel, &trimmed, ring)? == matrix.apply(&trimmed, ring)?)
}
