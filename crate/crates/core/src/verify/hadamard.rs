//! Pairwise row correlations of f_a.
//!
//! Two methods are available. `Literal` builds the full 2^t x 2^t truth
//! table of each f_a and sums (-1)^(f(x,y) + f(x',y)) over y for every pair
//! of distinct rows. `Bilinear` uses f_a(x, y) = x^T B_a y over GF(2): the
//! sum for (x, x') vanishes iff (x + x')^T B_a is nonzero, so every sum
//! vanishes iff B_a has full rank. The bilinear form is read off the basis
//! vectors and then confirmed on random points, and a sample of (a, x, x')
//! sums is still evaluated literally.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::{rows_of, SmallBlocks};
use crate::error::{Error, Result};
use crate::gf2q::{FieldElement, GfContext};

/// Largest block size for exhaustive checks.
pub const MAX_HADAMARD_BITS: u32 = 16;
/// Largest block size for which full truth tables are built.
pub const MAX_LITERAL_BITS: u32 = 12;
/// Work estimate (field operations plus 64-bit row operations) under which
/// the automatic choice goes literal.
const LITERAL_BUDGET: f64 = (1u64 << 31) as f64;
const SPOT_CHECKS: u32 = 64;
const BILINEAR_PROBES: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HadamardMethod {
    Literal,
    Bilinear,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HadamardReport {
    pub q: u32,
    pub n: u32,
    pub method: HadamardMethod,
    pub nonzero_a: u64,
    /// distinct unordered row pairs per a
    pub pairs_per_a: u64,
    /// (a, x, x') triples with a nonzero correlation sum
    pub violations: u64,
    pub max_abs_correlation: u64,
    /// literal (a, x, x') sums evaluated on top of a bilinear run
    pub spot_checks: u64,
    /// random points where the bilinear form disagreed with f_a
    pub form_mismatches: u64,
}

impl HadamardReport {
    pub fn holds(&self) -> bool {
        self.violations == 0 && self.form_mismatches == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiteralOutcome {
    pub pairs: u64,
    pub violations: u64,
    pub max_abs_correlation: u64,
}

/// Literal correlation sums for an arbitrary f: {0,1}^tx x {0,1}^ty -> {0,1}.
pub fn literal_correlations(
    tx: u32,
    ty: u32,
    f: impl Fn(u32, u32) -> bool,
) -> Result<LiteralOutcome> {
    if tx > MAX_LITERAL_BITS || ty > MAX_LITERAL_BITS {
        return Err(Error::Infeasible(format!(
            "truth tables above {MAX_LITERAL_BITS} input bits are not built"
        )));
    }
    Ok(row_correlations(&rows_of(tx, ty, f), 1u64 << ty))
}

fn row_correlations(rows: &[Vec<u64>], cols: u64) -> LiteralOutcome {
    let mut out = LiteralOutcome {
        pairs: 0,
        violations: 0,
        max_abs_correlation: 0,
    };
    for (i, r) in rows.iter().enumerate() {
        for s in &rows[i + 1..] {
            let differ: u64 = r
                .iter()
                .zip(s)
                .map(|(a, b)| (a ^ b).count_ones() as u64)
                .sum();
            let sum = (cols as i64 - 2 * differ as i64).unsigned_abs();
            out.pairs += 1;
            if sum != 0 {
                out.violations += 1;
                out.max_abs_correlation = out.max_abs_correlation.max(sum);
            }
        }
    }
    out
}

fn literal_work(q: u32, t: u32) -> f64 {
    let a = (2f64).powi(q as i32) - 1.0;
    a * ((2f64).powi(2 * t as i32) + (2f64).powi(3 * t as i32 - 7))
}

/// Checks that every f_a with a != 0 is a hadamard function, choosing the
/// literal method when it is cheap enough.
pub fn check_hadamard(ctx: &GfContext, n: u32) -> Result<HadamardReport> {
    let t = SmallBlocks::new(ctx, n, MAX_HADAMARD_BITS)?.t();
    let method = if t <= MAX_LITERAL_BITS && literal_work(ctx.degree(), t) <= LITERAL_BUDGET {
        HadamardMethod::Literal
    } else {
        HadamardMethod::Bilinear
    };
    check_hadamard_using(ctx, n, method)
}

pub fn check_hadamard_using(
    ctx: &GfContext,
    n: u32,
    method: HadamardMethod,
) -> Result<HadamardReport> {
    let blocks = SmallBlocks::new(ctx, n, MAX_HADAMARD_BITS)?;
    let t = blocks.t();
    let q = blocks.q;
    let size = 1u64 << t;
    let mut report = HadamardReport {
        q,
        n,
        method,
        nonzero_a: (1u64 << q) - 1,
        pairs_per_a: size * (size - 1) / 2,
        violations: 0,
        max_abs_correlation: 0,
        spot_checks: 0,
        form_mismatches: 0,
    };
    match method {
        HadamardMethod::Literal => {
            if t > MAX_LITERAL_BITS {
                return Err(Error::Infeasible(format!(
                    "literal check needs q * n <= {MAX_LITERAL_BITS}"
                )));
            }
            let ip = blocks.ip_table();
            for a in 1..1u128 << q {
                let rows = blocks.rows(&ip, &blocks.functional(FieldElement::from_bits(a)));
                let out = row_correlations(&rows, size);
                report.violations += out.violations;
                report.max_abs_correlation =
                    report.max_abs_correlation.max(out.max_abs_correlation);
            }
        }
        HadamardMethod::Bilinear => {
            let mut rng = ChaCha20Rng::seed_from_u64(0x4861_6461 ^ ((q as u64) << 32) ^ n as u64);
            for a in 1..1u128 << q {
                let a = FieldElement::from_bits(a);
                let form: Vec<u32> = (0..t)
                    .map(|i| {
                        (0..t).fold(0u32, |row, j| {
                            row | (blocks.f(a, 1 << i, 1 << j) as u32) << j
                        })
                    })
                    .collect();
                for _ in 0..BILINEAR_PROBES {
                    let x = rng.gen_range(0..size) as u32;
                    let y = rng.gen_range(0..size) as u32;
                    if evaluate_form(&form, x, y) != blocks.f(a, x, y) {
                        report.form_mismatches += 1;
                    }
                }
                let rank = gf2_rank(form);
                if rank < t {
                    // each nonzero d in the left kernel spoils the 2^(t-1) pairs {x, x+d}
                    report.violations += ((1u64 << (t - rank)) - 1) * (size / 2);
                    report.max_abs_correlation = size;
                }
            }
            for _ in 0..SPOT_CHECKS {
                let a = FieldElement::from_bits(rng.gen_range(1..1u128 << q));
                let x = rng.gen_range(0..size) as u32;
                let mut x2 = rng.gen_range(0..size - 1) as u32;
                if x2 >= x {
                    x2 += 1;
                }
                let sum: i64 = (0..size as u32)
                    .map(|y| {
                        if blocks.f(a, x, y) ^ blocks.f(a, x2, y) {
                            -1
                        } else {
                            1
                        }
                    })
                    .sum();
                report.spot_checks += 1;
                if sum != 0 {
                    report.violations += 1;
                    report.max_abs_correlation = report.max_abs_correlation.max(sum.unsigned_abs());
                }
            }
        }
    }
    Ok(report)
}

fn evaluate_form(form: &[u32], x: u32, y: u32) -> bool {
    let xb = form
        .iter()
        .enumerate()
        .filter(|(i, _)| (x >> i) & 1 == 1)
        .fold(0u32, |acc, (_, row)| acc ^ row);
    (xb & y).count_ones() % 2 == 1
}

fn gf2_rank(mut rows: Vec<u32>) -> u32 {
    let mut rank = 0;
    for bit in 0..32 {
        let Some(p) = (rank as usize..rows.len()).find(|&i| (rows[i] >> bit) & 1 == 1) else {
            continue;
        };
        rows.swap(rank as usize, p);
        let pivot = rows[rank as usize];
        for (i, r) in rows.iter_mut().enumerate() {
            if i != rank as usize && (*r >> bit) & 1 == 1 {
                *r ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(q: u32) -> GfContext {
        GfContext::new(q).unwrap()
    }

    #[test]
    fn inner_product_mod_two() {
        let r = check_hadamard(&ctx(1), 2).unwrap();
        assert_eq!(r.method, HadamardMethod::Literal);
        assert!(r.holds());
        assert_eq!((r.nonzero_a, r.pairs_per_a), (1, 6));
        // the same table written out by hand
        let ip = |x: u32, y: u32| (x & y).count_ones() % 2 == 1;
        let out = literal_correlations(2, 2, ip).unwrap();
        assert_eq!((out.pairs, out.violations), (6, 0));
    }

    #[test]
    fn single_element_q2() {
        // a = 1: f(x, y) is the constant bit of x * y in GF(4)
        let c = ctx(2);
        let f = |x: u32, y: u32| {
            let p = c
                .mul(
                    FieldElement::from_bits(x as u128),
                    FieldElement::from_bits(y as u128),
                )
                .unwrap();
            p.bit(0)
        };
        let out = literal_correlations(2, 2, f).unwrap();
        assert_eq!((out.pairs, out.violations), (6, 0));
        assert!(check_hadamard(&c, 1).unwrap().holds());
        assert!(check_hadamard(&c, 2).unwrap().holds());
    }

    #[test]
    fn methods_agree_where_both_run() {
        for (q, n) in [
            (1, 1),
            (1, 5),
            (2, 3),
            (3, 2),
            (4, 2),
            (5, 1),
            (2, 4),
            (1, 8),
        ] {
            let lit = check_hadamard_using(&ctx(q), n, HadamardMethod::Literal).unwrap();
            let bil = check_hadamard_using(&ctx(q), n, HadamardMethod::Bilinear).unwrap();
            assert!(lit.holds() && bil.holds(), "q={q} n={n}");
            assert_eq!(bil.spot_checks, SPOT_CHECKS as u64);
        }
    }

    #[test]
    fn detects_a_non_hadamard_function() {
        // rows 0 and anything agree everywhere when f ignores x
        let out = literal_correlations(3, 3, |_, y| y & 1 == 1).unwrap();
        assert_eq!(out.violations, out.pairs);
        assert_eq!(out.max_abs_correlation, 8);
        // a rank-deficient bilinear form: only the first bit of x matters
        let out = literal_correlations(3, 3, |x, y| x & y & 1 == 1).unwrap();
        let form = vec![1, 0, 0];
        assert_eq!(gf2_rank(form), 1);
        // left kernel has 3 nonzero vectors, each spoiling 4 pairs
        assert_eq!(out.violations, 3 * 4);
    }

    #[test]
    fn form_evaluation() {
        let form = vec![0b01, 0b10];
        assert!(evaluate_form(&form, 0b01, 0b01));
        assert!(!evaluate_form(&form, 0b01, 0b10));
        assert!(!evaluate_form(&form, 0b11, 0b11));
        assert_eq!(gf2_rank(vec![0b011, 0b110, 0b101]), 2);
        assert_eq!(gf2_rank(vec![0b001, 0b010, 0b100]), 3);
    }

    #[test]
    fn rejects_large_blocks() {
        assert!(matches!(
            check_hadamard(&ctx(17), 1),
            Err(Error::Infeasible(_))
        ));
        assert!(matches!(
            check_hadamard_using(&ctx(1), 13, HadamardMethod::Literal),
            Err(Error::Infeasible(_))
        ));
    }
}
