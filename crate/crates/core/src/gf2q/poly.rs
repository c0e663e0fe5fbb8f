//! Arbitrary-degree polynomials over GF(2), used to validate field moduli.

use std::fmt;

use crate::error::{Error, Result};

/// A polynomial over GF(2). Bit `i` of the little-endian word vector is the
/// coefficient of x^i. The representation is kept trimmed, so the zero
/// polynomial has no words.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinaryPoly {
    words: Vec<u64>,
}

impl BinaryPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_u128(1)
    }

    pub fn from_u128(bits: u128) -> Self {
        let mut p = Self {
            words: vec![bits as u64, (bits >> 64) as u64],
        };
        p.trim();
        p
    }

    /// Builds the sum of x^e over the given exponents (repeats cancel).
    pub fn from_exponents(exponents: &[u32]) -> Self {
        let mut p = Self::zero();
        for &e in exponents {
            p.flip(e);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        let top = *self.words.last()?;
        Some((self.words.len() as u32 - 1) * 64 + 63 - top.leading_zeros())
    }

    pub fn coeff(&self, i: u32) -> bool {
        self.words
            .get((i / 64) as usize)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    /// Low 128 coefficients.
    pub fn low_u128(&self) -> u128 {
        let w0 = self.words.first().copied().unwrap_or(0) as u128;
        let w1 = self.words.get(1).copied().unwrap_or(0) as u128;
        w0 | (w1 << 64)
    }

    fn flip(&mut self, i: u32) {
        let w = (i / 64) as usize;
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] ^= 1 << (i % 64);
        self.trim();
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    /// self ^= other * x^shift
    fn xor_shifted(&mut self, other: &Self, shift: u32) {
        if other.is_zero() {
            return;
        }
        let word_shift = (shift / 64) as usize;
        let bit_shift = shift % 64;
        let needed = other.words.len() + word_shift + 1;
        if self.words.len() < needed {
            self.words.resize(needed, 0);
        }
        for (i, &w) in other.words.iter().enumerate() {
            self.words[i + word_shift] ^= w << bit_shift;
            if bit_shift != 0 {
                self.words[i + word_shift + 1] ^= w >> (64 - bit_shift);
            }
        }
        self.trim();
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_shifted(other, 0);
        out
    }

    /// Schoolbook carry-less product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        if let Some(d) = other.degree() {
            for i in 0..=d {
                if other.coeff(i) {
                    out.xor_shifted(self, i);
                }
            }
        }
        out
    }

    /// Remainder of division by `modulus`. Panics on a zero modulus.
    pub fn rem(&self, modulus: &Self) -> Self {
        let dm = modulus.degree().expect("division by the zero polynomial");
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dm {
                break;
            }
            r.xor_shifted(modulus, dr - dm);
        }
        r
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus)
    }

    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }
}

impl fmt::Debug for BinaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryPoly({self})")
    }
}

impl fmt::Display for BinaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = self.degree() else {
            return f.write_str("0");
        };
        let mut first = true;
        for i in (0..=d).rev().filter(|&i| self.coeff(i)) {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Ben-Or irreducibility test: `poly` of degree d is irreducible iff
/// gcd(poly, x^(2^i) - x mod poly) = 1 for every 1 <= i <= d/2.
pub fn is_irreducible(poly: &BinaryPoly) -> Result<bool> {
    let d = match poly.degree() {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(Error::invalid(
                "irreducibility needs a polynomial of degree >= 1",
            ))
        }
    };
    if d == 1 {
        return Ok(true);
    }
    if !poly.coeff(0) {
        // divisible by x
        return Ok(false);
    }
    let x = BinaryPoly::from_exponents(&[1]);
    let mut power = x.clone();
    for _ in 1..=d / 2 {
        power = power.mul_mod(&power, poly);
        let g = BinaryPoly::gcd(poly, &power.add(&x));
        if g.degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}
