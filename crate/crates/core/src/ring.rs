//! Dense univariate polynomials over exact integers or residues modulo a
//! small prime, plus modulus selection and Chinese-remainder reconstruction.

use std::fmt;

use dashu_int::UBig;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which coefficient ring a polynomial lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingTag {
    Exact,
    Mod(u32),
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::Exact => write!(f, "exact"),
            RingTag::Mod(p) => write!(f, "mod {p}"),
        }
    }
}

/// Dense coefficient vector indexed by degree. Coefficients of a `Mod(p)`
/// polynomial are always reduced into `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: RingTag,
    coeffs: Vec<UBig>,
}

impl Polynomial {
    pub fn zero(ring: RingTag) -> Self {
        Polynomial { ring, coeffs: Vec::new() }
    }

    pub fn one(ring: RingTag) -> Self {
        Polynomial::monomial(ring, 0, UBig::ONE)
    }

    pub fn monomial(ring: RingTag, degree: usize, coeff: UBig) -> Self {
        let mut coeffs = vec![UBig::ZERO; degree + 1];
        coeffs[degree] = coeff;
        Polynomial::from_coeffs(ring, coeffs)
    }

    pub fn from_coeffs(ring: RingTag, mut coeffs: Vec<UBig>) -> Self {
        if let RingTag::Mod(p) = ring {
            let p = UBig::from(p);
            for c in coeffs.iter_mut() {
                if *c >= p {
                    *c = &*c % &p;
                }
            }
        }
        Polynomial { ring, coeffs }
    }

    pub fn from_u64s(ring: RingTag, coeffs: &[u64]) -> Self {
        Polynomial::from_coeffs(ring, coeffs.iter().map(|&c| UBig::from(c)).collect())
    }

    pub fn ring(&self) -> RingTag {
        self.ring
    }

    /// Raw coefficient vector, possibly with trailing zeros.
    pub fn coeffs(&self) -> &[UBig] {
        &self.coeffs
    }

    pub fn coefficient(&self, degree: usize) -> UBig {
        self.coeffs.get(degree).cloned().unwrap_or(UBig::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == UBig::ZERO)
    }

    /// Drops trailing zero coefficients.
    pub fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| *c == UBig::ZERO) {
            self.coeffs.pop();
        }
        self
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn min_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| *c != UBig::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| *c != UBig::ZERO)
    }

    fn reduce(&self, value: UBig) -> UBig {
        match self.ring {
            RingTag::Exact => value,
            RingTag::Mod(p) => value % UBig::from(p),
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|k| self.reduce(self.coefficient(k) + other.coefficient(k)))
            .collect();
        Ok(Polynomial { ring: self.ring, coeffs })
    }

    /// Multiplication by `z`.
    pub fn shift(&self) -> Polynomial {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(UBig::ZERO);
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { ring: self.ring, coeffs }
    }

    /// `self += z^occupy * src`.
    pub fn scale_shift_add(&mut self, src: &Polynomial, occupy: bool) -> Result<()> {
        self.check_ring(src)?;
        let offset = usize::from(occupy);
        if self.coeffs.len() < src.coeffs.len() + offset {
            self.coeffs.resize(src.coeffs.len() + offset, UBig::ZERO);
        }
        for (k, c) in src.coeffs.iter().enumerate() {
            let sum = &self.coeffs[k + offset] + c;
            self.coeffs[k + offset] = self.reduce(sum);
        }
        Ok(())
    }

    /// Sum of coefficients (a residue for modular polynomials).
    pub fn eval_at_one(&self) -> UBig {
        let total: UBig = self.coeffs.iter().sum();
        self.reduce(total)
    }

    /// Coefficientwise reduction of an exact polynomial.
    pub fn reduce_mod(&self, p: u32) -> Polynomial {
        Polynomial::from_coeffs(RingTag::Mod(p), self.coeffs.clone())
    }

    pub fn to_json(&self) -> PolynomialJson {
        let trimmed = self.clone().trimmed();
        let min = trimmed.min_degree().unwrap_or(0);
        PolynomialJson {
            min_degree: min,
            coefficients: trimmed.coeffs.iter().skip(min).map(|c| c.to_string()).collect(),
        }
    }

    pub fn from_json(ring: RingTag, json: &PolynomialJson) -> Result<Polynomial> {
        let mut coeffs = vec![UBig::ZERO; json.min_degree];
        for c in &json.coefficients {
            coeffs.push(c.parse().map_err(|_| Error::Inconsistent(format!("bad coefficient {c:?}")))?);
        }
        Ok(Polynomial::from_coeffs(ring, coeffs))
    }

    /// `degree,coefficient` rows for the nonzero coefficients.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,coefficient\n");
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c != UBig::ZERO {
                out.push_str(&format!("{k},{c}\n"));
            }
        }
        out
    }
}

/// Human-readable form, lowest degree first: `6z^2 + 4z^3 + z^4`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == UBig::ZERO {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let one = *c == UBig::ONE;
            match (k, one) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{c}z")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{c}z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Wire form of a polynomial: coefficients from `minDegree` upward, as
/// decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PolynomialJson {
    pub min_degree: usize,
    pub coefficients: Vec<String>,
}

pub fn poly_add(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    a.add(b)
}

pub fn poly_shift(a: &Polynomial) -> Polynomial {
    a.shift()
}

pub fn poly_scale_shift_add(acc: &Polynomial, src: &Polynomial, occupy: bool) -> Result<Polynomial> {
    let mut out = acc.clone();
    out.scale_shift_add(src, occupy)?;
    Ok(out)
}

pub fn eval_at_one(a: &Polynomial) -> UBig {
    a.eval_at_one()
}

// ---------------------------------------------------------------------------
// primes and moduli

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 32-bit inputs (bases 2, 7, 61).
pub fn is_prime_u32(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 61] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let n64 = n as u64;
    let mut d = n64 - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 7, 61] {
        let mut x = pow_mod(a, d, n64);
        if x == 1 || x == n64 - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n64);
            if x == n64 - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Modular inverse of `a` modulo the prime `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Distinct primes below `2^width`, largest first, whose product exceeds
/// `2^bit_bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModulusSet {
    pub primes: Vec<u32>,
    pub bit_bound: u64,
    pub width: u32,
}

impl ModulusSet {
    pub fn product(&self) -> UBig {
        self.primes.iter().map(|&p| UBig::from(p)).product()
    }
}

/// More moduli than this is treated as infeasible rather than searched for.
const MAX_MODULI: usize = 1 << 16;

pub fn select_moduli(bit_bound: u64, width: u32) -> Result<ModulusSet> {
    if !(8..=31).contains(&width) {
        return Err(Error::PrimeWidth(width));
    }
    // Σ log2 p over p < x is below 1.5 x (Chebyshev bound), so larger targets
    // can never be met.
    let limit = 1u64 << width;
    if bit_bound as f64 >= 1.5 * limit as f64 {
        return Err(Error::InfeasibleModuli { bits: bit_bound, width });
    }
    let target = UBig::ONE << (bit_bound as usize);
    let mut product = UBig::ONE;
    let mut primes = Vec::new();
    let mut candidate = limit - 1;
    while candidate >= 2 {
        if is_prime_u32(candidate as u32) {
            primes.push(candidate as u32);
            product *= UBig::from(candidate);
            if product > target {
                return Ok(ModulusSet { primes, bit_bound, width });
            }
            if primes.len() >= MAX_MODULI {
                break;
            }
        }
        candidate -= 1;
    }
    Err(Error::InfeasibleModuli { bits: bit_bound, width })
}

/// Garner-style reconstruction: the unique coefficients in `[0, Πp)` that are
/// congruent to every residue vector.
pub fn crt_reconstruct(residues: &[(u32, Vec<u32>)]) -> Result<Polynomial> {
    let Some(first) = residues.first() else {
        return Err(Error::Inconsistent("no residue vectors".into()));
    };
    let len = first.1.len();
    if residues.iter().any(|(_, v)| v.len() != len) {
        return Err(Error::Inconsistent("residue vectors differ in length".into()));
    }
    let mut order: Vec<&(u32, Vec<u32>)> = residues.iter().collect();
    order.sort_by_key(|(p, _)| std::cmp::Reverse(*p));
    for w in order.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::Inconsistent(format!("modulus {} repeated", w[0].0)));
        }
    }
    let mut values: Vec<UBig> = vec![UBig::ZERO; len];
    let mut modulus = UBig::ONE;
    for (p, res) in order {
        let p64 = *p as u64;
        let m_mod_p: u64 = (&modulus % p64) as u64;
        let inv = inv_mod(m_mod_p, p64);
        for (x, &r) in values.iter_mut().zip(res.iter()) {
            let x_mod_p: u64 = (&*x % p64) as u64;
            let diff = (r as u64 % p64 + p64 - x_mod_p) % p64;
            let t = mul_mod(diff, inv, p64);
            if t != 0 {
                *x += &modulus * UBig::from(t);
            }
        }
        modulus *= UBig::from(*p);
    }
    Ok(Polynomial::from_coeffs(RingTag::Exact, values))
}
