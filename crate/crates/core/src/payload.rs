//! Fixed-stride word encodings of the per-signature weights carried by the
//! sweep. Every configuration owns `stride()` consecutive `u64` words in a flat
//! arena, so merging two configurations never allocates.
//!
//! Exact values use `limbs` little-endian 64-bit limbs sized so that `2^(mn)`
//! fits; no weight produced by a sweep can exceed the number of vertex subsets.

use dashu_int::UBig;

use crate::ring::{Polynomial, RingTag};

/// Limbs needed for integers below `2^bits`.
pub fn limbs_for_bits(bits: usize) -> usize {
    bits / 64 + 1
}

#[inline]
fn add_limbs(dst: &mut [u64], src: &[u64]) {
    let mut carry = false;
    for (d, &s) in dst.iter_mut().zip(src) {
        let (a, c1) = d.overflowing_add(s);
        let (b, c2) = a.overflowing_add(carry as u64);
        *d = b;
        carry = c1 | c2;
    }
    debug_assert!(!carry, "weight overflowed its limb budget");
}

fn limbs_to_ubig(limbs: &[u64]) -> UBig {
    let mut bytes = Vec::with_capacity(limbs.len() * 8);
    for l in limbs {
        bytes.extend_from_slice(&l.to_le_bytes());
    }
    UBig::from_le_bytes(&bytes)
}

/// Weight semantics for one sweep.
pub trait Payload: Send + Sync {
    type Output: Clone + Send + PartialEq + std::fmt::Debug;

    fn stride(&self) -> usize;

    /// Short tag for checkpoint headers.
    fn tag(&self) -> String;

    /// The weight of the empty placement (the polynomial `1`).
    fn set_unit(&self, dst: &mut [u64]);

    /// The zero weight.
    fn set_zero(&self, dst: &mut [u64]) {
        dst.fill(0);
    }

    /// `dst += z^occupy * src`.
    fn accumulate(&self, dst: &mut [u64], src: &[u64], occupy: bool);

    fn is_zero(&self, w: &[u64]) -> bool;

    fn output(&self, w: &[u64]) -> Self::Output;

    fn zero_output(&self) -> Self::Output;

    /// `acc += multiplicity * x`.
    fn combine(&self, acc: &mut Self::Output, x: &Self::Output, multiplicity: u64);
}

/// Full polynomial with exact coefficients.
#[derive(Debug, Clone, Copy)]
pub struct ExactPoly {
    pub max_degree: usize,
    pub limbs: usize,
}

impl ExactPoly {
    pub fn for_vertices(vertices: usize) -> Self {
        ExactPoly { max_degree: vertices, limbs: limbs_for_bits(vertices) }
    }
}

impl Payload for ExactPoly {
    type Output = Polynomial;

    fn stride(&self) -> usize {
        (self.max_degree + 1) * self.limbs
    }

    fn tag(&self) -> String {
        format!("exact-poly:{}:{}", self.max_degree, self.limbs)
    }

    fn set_unit(&self, dst: &mut [u64]) {
        dst.fill(0);
        dst[0] = 1;
    }

    #[inline]
    fn accumulate(&self, dst: &mut [u64], src: &[u64], occupy: bool) {
        let l = self.limbs;
        let off = usize::from(occupy) * l;
        let len = self.stride() - off;
        if l == 1 {
            for (d, &s) in dst[off..].iter_mut().zip(&src[..len]) {
                *d += s;
            }
        } else {
            for (d, s) in dst[off..].chunks_exact_mut(l).zip(src[..len].chunks_exact(l)) {
                add_limbs(d, s);
            }
        }
    }

    fn is_zero(&self, w: &[u64]) -> bool {
        w.iter().all(|&x| x == 0)
    }

    fn output(&self, w: &[u64]) -> Polynomial {
        let coeffs = w.chunks_exact(self.limbs).map(limbs_to_ubig).collect();
        Polynomial::from_coeffs(RingTag::Exact, coeffs).trimmed()
    }

    fn zero_output(&self) -> Polynomial {
        Polynomial::zero(RingTag::Exact)
    }

    fn combine(&self, acc: &mut Polynomial, x: &Polynomial, multiplicity: u64) {
        let scaled = Polynomial::from_coeffs(
            RingTag::Exact,
            x.coeffs().iter().map(|c| c * UBig::from(multiplicity)).collect(),
        );
        *acc = acc.add(&scaled).expect("same ring").trimmed();
    }
}

/// Full polynomial with coefficients modulo a prime below `2^31`.
#[derive(Debug, Clone, Copy)]
pub struct ModPoly {
    pub max_degree: usize,
    pub p: u32,
}

impl Payload for ModPoly {
    type Output = Polynomial;

    fn stride(&self) -> usize {
        self.max_degree + 1
    }

    fn tag(&self) -> String {
        format!("mod-poly:{}:{}", self.max_degree, self.p)
    }

    fn set_unit(&self, dst: &mut [u64]) {
        dst.fill(0);
        dst[0] = 1 % self.p as u64;
    }

    #[inline]
    fn accumulate(&self, dst: &mut [u64], src: &[u64], occupy: bool) {
        let p = self.p as u64;
        let off = usize::from(occupy);
        let len = dst.len() - off;
        for (d, &s) in dst[off..].iter_mut().zip(&src[..len]) {
            let t = *d + s;
            *d = if t >= p { t - p } else { t };
        }
    }

    fn is_zero(&self, w: &[u64]) -> bool {
        w.iter().all(|&x| x == 0)
    }

    fn output(&self, w: &[u64]) -> Polynomial {
        Polynomial::from_u64s(RingTag::Mod(self.p), w).trimmed()
    }

    fn zero_output(&self) -> Polynomial {
        Polynomial::zero(RingTag::Mod(self.p))
    }

    fn combine(&self, acc: &mut Polynomial, x: &Polynomial, multiplicity: u64) {
        let p = UBig::from(self.p);
        let k = UBig::from(multiplicity) % &p;
        let scaled = Polynomial::from_coeffs(RingTag::Mod(self.p), x.coeffs().iter().map(|c| c * &k).collect());
        *acc = acc.add(&scaled).expect("same ring").trimmed();
    }
}

/// Value at `z = 1` only, exact.
#[derive(Debug, Clone, Copy)]
pub struct ExactCount {
    pub limbs: usize,
}

impl ExactCount {
    pub fn for_vertices(vertices: usize) -> Self {
        ExactCount { limbs: limbs_for_bits(vertices) }
    }
}

impl Payload for ExactCount {
    type Output = UBig;

    fn stride(&self) -> usize {
        self.limbs
    }

    fn tag(&self) -> String {
        format!("exact-count:{}", self.limbs)
    }

    fn set_unit(&self, dst: &mut [u64]) {
        dst.fill(0);
        dst[0] = 1;
    }

    #[inline]
    fn accumulate(&self, dst: &mut [u64], src: &[u64], _occupy: bool) {
        if self.limbs == 1 {
            dst[0] += src[0];
        } else {
            add_limbs(dst, src);
        }
    }

    fn is_zero(&self, w: &[u64]) -> bool {
        w.iter().all(|&x| x == 0)
    }

    fn output(&self, w: &[u64]) -> UBig {
        limbs_to_ubig(w)
    }

    fn zero_output(&self) -> UBig {
        UBig::ZERO
    }

    fn combine(&self, acc: &mut UBig, x: &UBig, multiplicity: u64) {
        *acc += x * UBig::from(multiplicity);
    }
}

/// Value at `z = 1` modulo a prime.
#[derive(Debug, Clone, Copy)]
pub struct ModCount {
    pub p: u32,
}

impl Payload for ModCount {
    type Output = UBig;

    fn stride(&self) -> usize {
        1
    }

    fn tag(&self) -> String {
        format!("mod-count:{}", self.p)
    }

    fn set_unit(&self, dst: &mut [u64]) {
        dst[0] = 1 % self.p as u64;
    }

    #[inline]
    fn accumulate(&self, dst: &mut [u64], src: &[u64], _occupy: bool) {
        let t = dst[0] + src[0];
        let p = self.p as u64;
        dst[0] = if t >= p { t - p } else { t };
    }

    fn is_zero(&self, w: &[u64]) -> bool {
        w[0] == 0
    }

    fn output(&self, w: &[u64]) -> UBig {
        UBig::from(w[0])
    }

    fn zero_output(&self) -> UBig {
        UBig::ZERO
    }

    fn combine(&self, acc: &mut UBig, x: &UBig, multiplicity: u64) {
        *acc = (&*acc + x * UBig::from(multiplicity)) % UBig::from(self.p);
    }
}

/// Lowest-degree term only: `(degree, coefficient)`, enough for γ and N_γ.
/// Word 0 holds the degree (`u64::MAX` for the zero weight), the rest the
/// coefficient limbs.
#[derive(Debug, Clone, Copy)]
pub struct LowestTerm {
    pub limbs: usize,
}

impl LowestTerm {
    pub fn for_vertices(vertices: usize) -> Self {
        LowestTerm { limbs: limbs_for_bits(vertices) }
    }
}

const NO_TERM: u64 = u64::MAX;

impl Payload for LowestTerm {
    type Output = Option<(usize, UBig)>;

    fn stride(&self) -> usize {
        1 + self.limbs
    }

    fn tag(&self) -> String {
        format!("lowest-term:{}", self.limbs)
    }

    fn set_unit(&self, dst: &mut [u64]) {
        dst.fill(0);
        dst[1] = 1;
    }

    fn set_zero(&self, dst: &mut [u64]) {
        dst.fill(0);
        dst[0] = NO_TERM;
    }

    #[inline]
    fn accumulate(&self, dst: &mut [u64], src: &[u64], occupy: bool) {
        if src[0] == NO_TERM {
            return;
        }
        let degree = src[0] + u64::from(occupy);
        if dst[0] == NO_TERM || degree < dst[0] {
            dst[0] = degree;
            dst[1..].copy_from_slice(&src[1..]);
        } else if degree == dst[0] {
            add_limbs(&mut dst[1..], &src[1..]);
        }
    }

    fn is_zero(&self, w: &[u64]) -> bool {
        w[0] == NO_TERM
    }

    fn output(&self, w: &[u64]) -> Option<(usize, UBig)> {
        (w[0] != NO_TERM).then(|| (w[0] as usize, limbs_to_ubig(&w[1..])))
    }

    fn zero_output(&self) -> Option<(usize, UBig)> {
        None
    }

    fn combine(&self, acc: &mut Option<(usize, UBig)>, x: &Option<(usize, UBig)>, multiplicity: u64) {
        let Some((d, c)) = x else { return };
        let scaled = c * UBig::from(multiplicity);
        match acc {
            Some((ad, ac)) if *ad == *d => *ac += scaled,
            Some((ad, _)) if *ad < *d => {}
            _ => *acc = Some((*d, scaled)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_poly_shift_add_with_carry() {
        let p = ExactPoly { max_degree: 2, limbs: 2 };
        let mut dst = vec![0u64; p.stride()];
        let src = vec![u64::MAX, 0, 1, 0, 0, 0];
        p.accumulate(&mut dst, &src, false);
        p.accumulate(&mut dst, &src, false);
        assert_eq!(&dst[..2], &[u64::MAX - 1, 1]);
        p.accumulate(&mut dst, &src, true);
        let out = p.output(&dst);
        assert_eq!(out.coefficient(0), (UBig::ONE << 65) - UBig::from(2u8));
        assert_eq!(out.coefficient(1), UBig::from(2u8) + UBig::from(u64::MAX));
        assert_eq!(out.coefficient(2), UBig::ONE);
    }

    #[test]
    fn mod_poly_reduces() {
        let p = ModPoly { max_degree: 1, p: 7 };
        let mut dst = vec![6, 0];
        p.accumulate(&mut dst, &[5, 3], false);
        assert_eq!(dst, vec![4, 3]);
        p.accumulate(&mut dst, &[5, 3], true);
        assert_eq!(dst, vec![4, 1]);
    }

    #[test]
    fn lowest_term_keeps_minimum() {
        let p = LowestTerm { limbs: 1 };
        let mut dst = vec![0u64; 2];
        p.set_zero(&mut dst);
        assert!(p.is_zero(&dst));
        p.accumulate(&mut dst, &[3, 5], true);
        assert_eq!(p.output(&dst), Some((4, UBig::from(5u8))));
        p.accumulate(&mut dst, &[4, 2], false);
        p.accumulate(&mut dst, &[5, 9], false);
        assert_eq!(p.output(&dst), Some((4, UBig::from(7u8))));
        p.accumulate(&mut dst, &[2, 1], false);
        assert_eq!(p.output(&dst), Some((2, UBig::ONE)));
        let mut acc = p.zero_output();
        p.combine(&mut acc, &Some((3, UBig::from(2u8))), 4);
        p.combine(&mut acc, &Some((5, UBig::ONE)), 1);
        assert_eq!(acc, Some((3, UBig::from(8u8))));
    }

    #[test]
    fn counts() {
        let c = ExactCount { limbs: 2 };
        let mut dst = vec![u64::MAX, 0];
        c.accumulate(&mut dst, &[1, 0], true);
        assert_eq!(c.output(&dst), UBig::ONE << 64);
        let m = ModCount { p: 11 };
        let mut dst = vec![7];
        m.accumulate(&mut dst, &[9], false);
        assert_eq!(dst, vec![5]);
    }
}
