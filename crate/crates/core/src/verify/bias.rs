//! Worst-case bias of f_a on flat sources.
//!
//! For a fixed support Sy of Y the bias is maximised over supports Sx of X
//! exactly: with g(x) = #{y in Sy : f(x, y) = 1}, Pr[f = 1] is the sum of g
//! over Sx divided by 2^(2k), so the extreme Sx are the 2^k rows with the
//! largest or the smallest g. Supports of Y are enumerated in full when
//! there are few enough of them and sampled otherwise.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::SmallBlocks;
use crate::error::{Error, Result};
use crate::gf2q::{FieldElement, GfContext};

pub const MAX_BIAS_BITS: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BiasOptions {
    /// enumerate every support of Y when there are at most this many
    pub exhaustive_limit: u64,
    /// supports of Y drawn otherwise
    pub sampled_sources: u32,
    /// nonzero multipliers a checked when the field has more than this
    /// many; a = 1 is always included
    pub max_multipliers: u32,
    pub seed: u64,
}

impl Default for BiasOptions {
    fn default() -> Self {
        Self {
            exhaustive_limit: 100_000,
            sampled_sources: 200,
            max_multipliers: 4,
            seed: 0x6269_6173,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BiasReport {
    pub q: u32,
    pub n: u32,
    pub t: u32,
    pub k: u32,
    pub multipliers: Vec<u128>,
    pub exhaustive: bool,
    /// supports of Y examined per multiplier
    pub sources_per_multiplier: u64,
    pub max_bias: f64,
    pub bound: f64,
    pub violations: u64,
}

impl BiasReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// 2^(1 - (2k - t)/2).
pub fn one_bit_bias_bound(t: u32, k: u32) -> f64 {
    (1.0 - (2.0 * k as f64 - t as f64) / 2.0).exp2()
}

fn binomial_at_most(n: u64, r: u64, limit: u64) -> Option<u64> {
    let r = r.min(n - r);
    let mut c: u128 = 1;
    for i in 0..r {
        c = c * (n - i) as u128 / (i + 1) as u128;
        if c > limit as u128 {
            return None;
        }
    }
    Some(c as u64)
}

/// Advances a sorted index combination; false after the last one.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let r = idx.len();
    let mut i = r;
    while i > 0 {
        i -= 1;
        if idx[i] < n - r + i {
            idx[i] += 1;
            for j in i + 1..r {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

struct Table {
    rows: Vec<Vec<u64>>,
    functional: Vec<bool>,
}

/// f_a tables for one block shape, reused across entropy levels.
pub struct BiasChecker {
    blocks: SmallBlocks,
    options: BiasOptions,
    ip: Vec<u16>,
    multipliers: Vec<u128>,
    tables: Vec<Table>,
}

impl BiasChecker {
    pub fn new(ctx: &GfContext, n: u32, options: &BiasOptions) -> Result<Self> {
        let blocks = SmallBlocks::new(ctx, n, MAX_BIAS_BITS)?;
        let q = blocks.q;
        let mut rng = ChaCha20Rng::seed_from_u64(options.seed ^ ((n as u64) << 20) ^ q as u64);
        let nonzero = (1u128 << q) - 1;
        let wanted = options.max_multipliers.max(1) as u128;
        let multipliers: Vec<u128> = if nonzero <= wanted {
            (1..=nonzero).collect()
        } else {
            let mut m = vec![1u128];
            while (m.len() as u128) < wanted {
                let a = rng.gen_range(2..=nonzero);
                if !m.contains(&a) {
                    m.push(a);
                }
            }
            m
        };
        let ip = blocks.ip_table();
        let tables = multipliers
            .iter()
            .map(|&a| {
                let functional = blocks.functional(FieldElement::from_bits(a));
                Table {
                    rows: blocks.rows(&ip, &functional),
                    functional,
                }
            })
            .collect();
        Ok(Self {
            blocks,
            options: *options,
            ip,
            multipliers,
            tables,
        })
    }

    /// Largest |2 Pr[f = 1] - 1| over supports Sx of size |sy|.
    fn worst_bias(&self, table: &Table, sy: &[usize], hist: &mut [u64]) -> f64 {
        let kk = sy.len();
        let size = table.rows.len();
        hist.iter_mut().for_each(|h| *h = 0);
        if kk >= 64 {
            let mut mask = vec![0u64; table.rows[0].len()];
            for &y in sy {
                mask[y / 64] |= 1 << (y % 64);
            }
            for row in &table.rows {
                let g: u32 = row
                    .iter()
                    .zip(&mask)
                    .map(|(r, m)| (r & m).count_ones())
                    .sum();
                hist[g as usize] += 1;
            }
        } else {
            for x in 0..size {
                let ip = &self.ip[x * size..(x + 1) * size];
                let g = sy
                    .iter()
                    .filter(|&&y| table.functional[ip[y] as usize])
                    .count();
                hist[g] += 1;
            }
        }
        let total = (kk * kk) as i64;
        let top = extreme_sum(hist.iter().enumerate().rev(), kk);
        let bottom = extreme_sum(hist.iter().enumerate(), kk);
        let worst = (2 * top - total).abs().max((2 * bottom - total).abs());
        worst as f64 / total as f64
    }

    pub fn check(&self, k: u32) -> Result<BiasReport> {
        let t = self.blocks.t();
        if k > t {
            return Err(Error::invalid(format!("k = {k} exceeds t = {t}")));
        }
        let options = &self.options;
        let mut rng =
            ChaCha20Rng::seed_from_u64(options.seed ^ ((t as u64) << 40) ^ ((k as u64) << 20));
        let size = 1usize << t;
        let kk = 1usize << k;
        let count = binomial_at_most(size as u64, kk as u64, options.exhaustive_limit);
        let bound = one_bit_bias_bound(t, k);
        let mut report = BiasReport {
            q: self.blocks.q,
            n: self.blocks.n,
            t,
            k,
            multipliers: self.multipliers.clone(),
            exhaustive: count.is_some(),
            sources_per_multiplier: count.unwrap_or(options.sampled_sources as u64),
            max_bias: 0.0,
            bound,
            violations: 0,
        };
        let mut hist = vec![0u64; kk + 1];
        let mut record = |bias: f64| {
            report.max_bias = report.max_bias.max(bias);
            if bias > bound {
                report.violations += 1;
            }
        };
        for table in &self.tables {
            if count.is_some() {
                let mut idx: Vec<usize> = (0..kk).collect();
                loop {
                    record(self.worst_bias(table, &idx, &mut hist));
                    if !next_combination(&mut idx, size) {
                        break;
                    }
                }
            } else {
                for _ in 0..options.sampled_sources {
                    let sy = sample(&mut rng, size, kk).into_vec();
                    record(self.worst_bias(table, &sy, &mut hist));
                }
            }
        }
        Ok(report)
    }
}

/// Sum of the first `take` values drawn from a histogram in the given order.
fn extreme_sum<'a>(hist: impl Iterator<Item = (usize, &'a u64)>, take: usize) -> i64 {
    let mut left = take as u64;
    let mut sum = 0i64;
    for (value, &count) in hist {
        let c = count.min(left);
        sum += value as i64 * c as i64;
        left -= c;
        if left == 0 {
            break;
        }
    }
    sum
}

/// Worst observed bias of f_a on flat sources with 2^k-element supports.
pub fn check_one_bit_bias(
    ctx: &GfContext,
    n: u32,
    k: u32,
    options: &BiasOptions,
) -> Result<BiasReport> {
    BiasChecker::new(ctx, n, options)?.check(k)
}
