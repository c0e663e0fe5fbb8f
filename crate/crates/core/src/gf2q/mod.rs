//! Arithmetic in GF(2^q) for 1 <= q <= 128.
//!
//! Elements are q-bit strings stored in a `u128`; bit `i` is the coefficient
//! of x^i in the polynomial basis, so the "first bit" of an element is its
//! constant coefficient. Each context reduces modulo a fixed low-weight
//! irreducible polynomial from a static table (see [`default_modulus`]), or a
//! caller-supplied modulus that passes [`is_irreducible`].

mod moduli;
mod poly;

pub use poly::{is_irreducible, BinaryPoly};

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported field degree.
pub const MAX_DEGREE: u32 = 128;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FieldElement(u128);

impl FieldElement {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);

    pub const fn from_bits(bits: u128) -> Self {
        Self(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    pub const fn bit(self, i: u32) -> bool {
        i < 128 && (self.0 >> i) & 1 == 1
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({:#x})", self.0)
    }
}

/// The table modulus for degree `q`.
pub fn default_modulus(q: u32) -> Result<BinaryPoly> {
    check_degree(q)?;
    let mut exps = vec![q, 0];
    exps.extend_from_slice(moduli::MIDDLE_EXPONENTS[q as usize - 1]);
    Ok(BinaryPoly::from_exponents(&exps))
}

fn check_degree(q: u32) -> Result<()> {
    if q == 0 {
        Err(Error::invalid("field degree must be at least 1"))
    } else if q > MAX_DEGREE {
        Err(Error::Capacity {
            q: q as u64,
            max: MAX_DEGREE,
        })
    } else {
        Ok(())
    }
}

const fn low_mask(q: u32) -> u128 {
    if q >= 128 {
        u128::MAX
    } else {
        (1u128 << q) - 1
    }
}

/// An immutable description of GF(2^q). Cheap to copy and safe to share.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GfContext {
    q: u32,
    /// modulus minus its leading x^q term
    tail: u128,
    mask: u128,
}

impl fmt::Debug for GfContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GfContext")
            .field("q", &self.q)
            .field("modulus", &self.modulus().to_string())
            .finish()
    }
}

impl GfContext {
    /// Context for GF(2^q) using the shipped modulus table.
    pub fn new(q: u32) -> Result<Self> {
        check_degree(q)?;
        let tail = default_modulus(q)?.low_u128() & low_mask(q);
        Ok(Self {
            q,
            tail,
            mask: low_mask(q),
        })
    }

    /// Context for a caller-supplied modulus. The polynomial must have degree
    /// in 1..=128, a constant term, and be irreducible.
    pub fn with_modulus(modulus: &BinaryPoly) -> Result<Self> {
        let q = modulus
            .degree()
            .ok_or_else(|| Error::invalid("modulus must be nonzero"))?;
        check_degree(q)?;
        if !modulus.coeff(0) {
            return Err(Error::invalid("modulus must have constant term 1"));
        }
        if !is_irreducible(modulus)? {
            return Err(Error::invalid(format!("modulus {modulus} is reducible")));
        }
        let mask = low_mask(q);
        Ok(Self {
            q,
            tail: modulus.low_u128() & mask,
            mask,
        })
    }

    pub fn degree(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> BinaryPoly {
        BinaryPoly::from_u128(self.tail).add(&BinaryPoly::from_exponents(&[self.q]))
    }

    /// Number of field elements, when it fits in a `u128`.
    pub fn order(&self) -> Option<u128> {
        1u128.checked_shl(self.q)
    }

    /// Validates that `bits` has no set bit at or above position q.
    pub fn element(&self, bits: u128) -> Result<FieldElement> {
        if bits & !self.mask != 0 {
            return Err(Error::invalid(format!(
                "element {bits:#x} is wider than {} bits",
                self.q
            )));
        }
        Ok(FieldElement(bits))
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        x.0 & !self.mask == 0
    }

    fn check(&self, x: FieldElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "element {:#x} does not fit GF(2^{})",
                x.0, self.q
            )))
        }
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(FieldElement(x.0 ^ y.0))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    /// Multiplication without width checks. Inputs must belong to the field.
    #[inline]
    pub fn mul_unchecked(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        FieldElement(self.reduce(clmul128(x.0, y.0)))
    }

    /// Sum of products with a single final reduction; reduction is linear, so
    /// this equals folding `mul` results with `add`.
    pub(crate) fn dot_unchecked(&self, x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
        let mut acc = Wide::default();
        if self.q <= 64 {
            for (a, b) in x.iter().zip(y) {
                acc.lo ^= clmul64(a.0 as u64, b.0 as u64);
            }
        } else {
            for (a, b) in x.iter().zip(y) {
                let p = clmul128(a.0, b.0);
                acc.lo ^= p.lo;
                acc.hi ^= p.hi;
            }
        }
        FieldElement(self.reduce(acc))
    }

    /// Reduces a product of two field elements (degree <= 2q - 2) by
    /// repeatedly folding the part above x^q through x^q = tail.
    #[inline]
    fn reduce(&self, mut v: Wide) -> u128 {
        loop {
            let high = v.shr(self.q);
            if high == 0 {
                return v.lo;
            }
            let folded = clmul128(high, self.tail);
            v = Wide {
                lo: (v.lo & self.mask) ^ folded.lo,
                hi: folded.hi,
            };
        }
    }

    /// Multiplicative inverse via x^(2^q - 2); `None` for zero.
    pub fn inverse(&self, x: FieldElement) -> Result<Option<FieldElement>> {
        self.check(x)?;
        if x.is_zero() {
            return Ok(None);
        }
        // 2^q - 2 = binary 11...10 (q-1 ones then a zero)
        let mut result = FieldElement::ONE;
        let mut base = self.mul_unchecked(x, x);
        for _ in 1..self.q {
            result = self.mul_unchecked(result, base);
            base = self.mul_unchecked(base, base);
        }
        Ok(Some(result))
    }

    /// All elements in increasing bit order. Only for q <= 32.
    pub fn elements(&self) -> Result<impl Iterator<Item = FieldElement>> {
        if self.q > 32 {
            return Err(Error::Infeasible(format!(
                "enumerating GF(2^{}) is not supported",
                self.q
            )));
        }
        Ok((0..(1u128 << self.q)).map(FieldElement))
    }
}

/// 256-bit carry-less product.
#[derive(Clone, Copy, Default, Debug, PartialEq, Eq)]
struct Wide {
    lo: u128,
    hi: u128,
}

impl Wide {
    /// Bits at and above `shift`, assuming the result fits 128 bits.
    #[inline]
    fn shr(self, shift: u32) -> u128 {
        if shift >= 128 {
            self.hi >> (shift - 128)
        } else if shift == 0 {
            self.lo
        } else {
            (self.lo >> shift) | (self.hi << (128 - shift))
        }
    }
}

/// 64x64 -> 128 carry-less multiply with a 4-bit window.
#[inline]
fn clmul64(a: u64, b: u64) -> u128 {
    let a = a as u128;
    let mut table = [0u128; 16];
    for i in 1..16 {
        table[i] = if i & 1 == 1 {
            table[i - 1] ^ a
        } else {
            table[i >> 1] << 1
        };
    }
    let mut acc = 0u128;
    for shift in (0..16).rev() {
        acc = (acc << 4) ^ table[((b >> (shift * 4)) & 0xf) as usize];
    }
    acc
}

/// 128x128 -> 256 carry-less multiply (one Karatsuba level).
#[inline]
fn clmul128(a: u128, b: u128) -> Wide {
    let (a0, a1) = (a as u64, (a >> 64) as u64);
    let (b0, b1) = (b as u64, (b >> 64) as u64);
    let z0 = clmul64(a0, b0);
    if a1 == 0 && b1 == 0 {
        return Wide { lo: z0, hi: 0 };
    }
    let z2 = clmul64(a1, b1);
    let z1 = clmul64(a0 ^ a1, b0 ^ b1) ^ z0 ^ z2;
    Wide {
        lo: z0 ^ (z1 << 64),
        hi: z2 ^ (z1 >> 64),
    }
}
