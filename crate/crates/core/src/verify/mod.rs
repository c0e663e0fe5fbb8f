//! Brute-force oracles for the inner-product extractor on instances small
//! enough to enumerate.
//!
//! Inputs are blocks of t = q * n bits, read as n field elements with the
//! same LSB-first layout the streaming extractors use. The one-bit
//! functions are f_a(x, y) = [a * Ext_IP(x, y)]_1, where [.]_1 is the
//! constant-coefficient bit. Side information is always classical, so
//! trace distance reduces to total variation distance.

mod bias;
mod distance;
mod hadamard;
mod suite;
mod xor;

pub use bias::{check_one_bit_bias, one_bit_bias_bound, BiasChecker, BiasOptions, BiasReport};
pub use distance::{
    check_extractor_distance, min_entropy, output_distance, output_distribution,
    uniform_input_distance, DistanceReport,
};
pub use hadamard::{
    check_hadamard, literal_correlations, HadamardMethod, HadamardReport, LiteralOutcome,
};
pub use suite::{run_suite, CheckLine, Suite, SuiteOptions, SuiteReport};
pub use xor::{check_functional_bijection, check_xor_lemma_instance, XorLemmaReport};

use crate::error::{Error, Result};
use crate::gf2q::{FieldElement, GfContext};

/// The inner-product extractor on packed t-bit blocks.
#[derive(Clone, Copy, Debug)]
pub(crate) struct SmallBlocks {
    pub ctx: GfContext,
    pub n: u32,
    pub q: u32,
}

impl SmallBlocks {
    pub fn new(ctx: &GfContext, n: u32, max_bits: u32) -> Result<Self> {
        let q = ctx.degree();
        if n == 0 {
            return Err(Error::invalid("n must be at least 1"));
        }
        let t = q as u64 * n as u64;
        if t > max_bits as u64 {
            return Err(Error::Infeasible(format!(
                "q * n = {t} exceeds the exhaustive limit of {max_bits} bits"
            )));
        }
        Ok(Self { ctx: *ctx, n, q })
    }

    pub fn t(&self) -> u32 {
        self.q * self.n
    }

    pub fn elem(&self, block: u32, i: u32) -> FieldElement {
        let mask = (1u32 << self.q) - 1;
        FieldElement::from_bits(((block >> (i * self.q)) & mask) as u128)
    }

    pub fn ip(&self, x: u32, y: u32) -> FieldElement {
        let mut acc = 0u128;
        for i in 0..self.n {
            acc ^= self
                .ctx
                .mul_unchecked(self.elem(x, i), self.elem(y, i))
                .bits();
        }
        FieldElement::from_bits(acc)
    }

    pub fn f(&self, a: FieldElement, x: u32, y: u32) -> bool {
        self.ctx.mul_unchecked(a, self.ip(x, y)).bit(0)
    }

    /// z -> [a * z]_1 for every z in the field; q <= 16.
    pub fn functional(&self, a: FieldElement) -> Vec<bool> {
        (0..1u128 << self.q)
            .map(|z| self.ctx.mul_unchecked(a, FieldElement::from_bits(z)).bit(0))
            .collect()
    }

    /// Ext_IP(x, y) for every pair of blocks, row-major; t <= 12.
    pub fn ip_table(&self) -> Vec<u16> {
        let q = self.q;
        let side = 1usize << q;
        let products: Vec<u16> = (0..side * side)
            .map(|i| {
                let x = FieldElement::from_bits((i / side) as u128);
                let y = FieldElement::from_bits((i % side) as u128);
                self.ctx.mul_unchecked(x, y).bits() as u16
            })
            .collect();
        let size = 1usize << self.t();
        let mask = side - 1;
        let mut table = vec![0u16; size * size];
        for x in 0..size {
            for y in 0..size {
                let mut acc = 0u16;
                for i in 0..self.n as usize {
                    let xi = (x >> (i * q as usize)) & mask;
                    let yi = (y >> (i * q as usize)) & mask;
                    acc ^= products[xi * side + yi];
                }
                table[x * size + y] = acc;
            }
        }
        table
    }

    /// Bitset rows of f_a: bit y of row x is f_a(x, y).
    pub fn rows(&self, ip: &[u16], functional: &[bool]) -> Vec<Vec<u64>> {
        let size = 1usize << self.t();
        rows_of(self.t(), self.t(), |x, y| {
            functional[ip[x as usize * size + y as usize] as usize]
        })
    }
}

pub(crate) fn rows_of(tx: u32, ty: u32, f: impl Fn(u32, u32) -> bool) -> Vec<Vec<u64>> {
    let cols = 1usize << ty;
    let words = cols.div_ceil(64);
    (0..1u32 << tx)
        .map(|x| {
            let mut row = vec![0u64; words];
            for y in 0..cols {
                if f(x, y as u32) {
                    row[y / 64] |= 1 << (y % 64);
                }
            }
            row
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extractor::ext_ip;

    #[test]
    fn ip_table_matches_ext_ip() {
        for (q, n) in [(1, 3), (2, 2), (3, 2), (5, 1)] {
            let ctx = GfContext::new(q).unwrap();
            let blocks = SmallBlocks::new(&ctx, n, 12).unwrap();
            let table = blocks.ip_table();
            let size = 1u32 << blocks.t();
            let split = |v: u32| (0..n).map(|i| blocks.elem(v, i)).collect::<Vec<_>>();
            for x in 0..size {
                for y in 0..size {
                    let expected = ext_ip(&ctx, &split(x), &split(y)).unwrap();
                    assert_eq!(table[(x * size + y) as usize] as u128, expected.bits());
                    assert_eq!(blocks.ip(x, y), expected);
                }
            }
        }
    }
}
