//! Independent reference implementations shared by the integration tests.
//!
//! The reference extractor reads bits one at a time and multiplies with
//! schoolbook polynomial arithmetic, so it shares no code with the clmul
//! field or the buffered bit reader.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twosource::gf2q::{default_modulus, BinaryPoly, FieldElement, GfContext};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_bytes(rng: &mut impl Rng, len: usize) -> Vec<u8> {
    let mut v = vec![0u8; len];
    rng.fill(&mut v[..]);
    v
}

pub fn bit(bytes: &[u8], i: u64) -> bool {
    bytes[(i / 8) as usize] >> (i % 8) & 1 == 1
}

fn read_value(bytes: &[u8], start: u64, width: u32) -> u128 {
    (0..width as u64).fold(0u128, |acc, j| acc | (bit(bytes, start + j) as u128) << j)
}

/// Product in GF(2^q) through polynomial arithmetic modulo the default modulus.
pub fn reference_mul(q: u32, a: u128, b: u128) -> u128 {
    let m = default_modulus(q).unwrap();
    BinaryPoly::from_u128(a)
        .mul_mod(&BinaryPoly::from_u128(b), &m)
        .low_u128()
}

pub struct Reference {
    pub bytes: Vec<u8>,
    pub blocks: u64,
    pub output_bits: u64,
}

/// Extracts block after block with widths `q_of(1), q_of(2), ...` until an
/// input runs short, the width passes 128, or `max_blocks` is reached.
pub fn reference_extract(
    x: &[u8],
    y: &[u8],
    n: u64,
    q_of: impl Fn(u64) -> u64,
    max_blocks: Option<u64>,
) -> Reference {
    let available = x.len().min(y.len()) as u64 * 8;
    let mut out: Vec<bool> = Vec::new();
    let mut pos = 0u64;
    let mut blocks = 0u64;
    loop {
        if max_blocks.is_some_and(|k| blocks >= k) {
            break;
        }
        let q = q_of(blocks + 1);
        if q > 128 || pos + q * n > available {
            break;
        }
        let q = q as u32;
        let mut acc = 0u128;
        for i in 0..n {
            let start = pos + i * q as u64;
            acc ^= reference_mul(q, read_value(x, start, q), read_value(y, start, q));
        }
        out.extend((0..q).map(|j| acc >> j & 1 == 1));
        pos += q as u64 * n;
        blocks += 1;
    }
    let mut bytes = vec![0u8; out.len().div_ceil(8)];
    for (i, b) in out.iter().enumerate() {
        bytes[i / 8] |= (*b as u8) << (i % 8);
    }
    Reference {
        bytes,
        blocks,
        output_bits: out.len() as u64,
    }
}

/// Number of failed field-axiom checks over the given triples.
pub fn axiom_failures(ctx: &GfContext, triples: impl Iterator<Item = (u128, u128, u128)>) -> u64 {
    let q = ctx.degree();
    let zero = FieldElement::from_bits(0);
    let one = FieldElement::from_bits(1);
    let mut failures = 0;
    for (a, b, c) in triples {
        let (a, b, c) = (
            ctx.element(a).unwrap(),
            ctx.element(b).unwrap(),
            ctx.element(c).unwrap(),
        );
        let add = |u, v| ctx.add(u, v).unwrap();
        let mul = |u, v| ctx.mul(u, v).unwrap();
        let checks = [
            add(add(a, b), c) == add(a, add(b, c)),
            add(a, b) == add(b, a),
            add(a, zero) == a,
            add(a, a) == zero,
            mul(mul(a, b), c) == mul(a, mul(b, c)),
            mul(a, b) == mul(b, a),
            mul(a, one) == a,
            mul(a, zero) == zero,
            mul(a, add(b, c)) == add(mul(a, b), mul(a, c)),
            mul(a, b).bits() == reference_mul(q, a.bits(), b.bits()),
            ctx.contains(mul(a, b)),
        ];
        failures += checks.iter().filter(|ok| !**ok).count() as u64;
    }
    failures
}

pub fn mask(q: u32) -> u128 {
    if q == 128 {
        u128::MAX
    } else {
        (1u128 << q) - 1
    }
}
