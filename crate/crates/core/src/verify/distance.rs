//! Exact output distribution of Ext_IP over a product of explicit sources.

use super::SmallBlocks;
use crate::error::{Error, Result};
use crate::gf2q::GfContext;
use crate::params::error_bound_block;
use crate::sources::TABLE_TOLERANCE;

pub const MAX_DISTANCE_BITS: u32 = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct DistanceReport {
    pub description: String,
    pub q: u32,
    pub n: u32,
    pub min_entropy_x: f64,
    pub min_entropy_y: f64,
    /// rate the bound is evaluated at
    pub delta: f64,
    pub statistical_distance: f64,
    /// log2 of the unclamped bound
    pub log2_bound: f64,
    /// min(1, 2^log2_bound)
    pub bound: f64,
}

impl DistanceReport {
    pub fn holds(&self) -> bool {
        self.statistical_distance <= self.bound
    }
}

/// -log2 of the largest probability.
pub fn min_entropy(table: &[f64]) -> f64 {
    let p = table.iter().copied().fold(0.0, f64::max);
    -p.log2()
}

fn check_source(table: &[f64], t: u32, name: &str) -> Result<()> {
    if table.len() != 1 << t {
        return Err(Error::invalid(format!(
            "{name} has {} entries, expected 2^{t}",
            table.len()
        )));
    }
    if table.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
        return Err(Error::invalid(format!(
            "{name} has a negative or non-finite entry"
        )));
    }
    let sum: f64 = table.iter().sum();
    if (sum - 1.0).abs() > TABLE_TOLERANCE {
        return Err(Error::invalid(format!("{name} sums to {sum}")));
    }
    Ok(())
}

/// Distribution of Ext_IP(X, Y) on GF(2^q) for independent X ~ px, Y ~ py
/// over packed t-bit blocks.
pub fn output_distribution(ctx: &GfContext, n: u32, px: &[f64], py: &[f64]) -> Result<Vec<f64>> {
    let blocks = SmallBlocks::new(ctx, n, MAX_DISTANCE_BITS)?;
    let t = blocks.t();
    check_source(px, t, "x table")?;
    check_source(py, t, "y table")?;
    let ip = blocks.ip_table();
    let size = 1usize << t;
    let ys: Vec<(usize, f64)> = py
        .iter()
        .copied()
        .enumerate()
        .filter(|(_, p)| *p > 0.0)
        .collect();
    let mut out = vec![0.0; 1 << blocks.q];
    let mut row = vec![0.0; out.len()];
    for (x, &wx) in px.iter().enumerate() {
        if wx == 0.0 {
            continue;
        }
        // per-x partial sums keep the rounding error of each row local
        row.iter_mut().for_each(|r| *r = 0.0);
        let ips = &ip[x * size..(x + 1) * size];
        for &(y, wy) in &ys {
            row[ips[y] as usize] += wy;
        }
        for (o, r) in out.iter_mut().zip(&row) {
            *o += wx * r;
        }
    }
    Ok(out)
}

/// Total variation distance between Ext_IP(X, Y) and the uniform
/// distribution, with no entropy precondition.
pub fn output_distance(ctx: &GfContext, n: u32, px: &[f64], py: &[f64]) -> Result<f64> {
    let dist = output_distribution(ctx, n, px, py)?;
    let u = 1.0 / dist.len() as f64;
    Ok(0.5 * dist.iter().map(|p| (p - u).abs()).sum::<f64>())
}

/// Exact distance for two independent uniform blocks: the zero block of X
/// forces a zero output, so the distance is 2^-t (1 - 2^-q).
pub fn uniform_input_distance(q: u32, n: u32) -> f64 {
    let t = (q * n) as i32;
    (-t as f64).exp2() * (1.0 - (-(q as f64)).exp2())
}

/// Compares the exact distance with the block error bound evaluated at
/// `delta`, or at the smaller per-bit min-entropy of the two sources when
/// `delta` is `None`.
pub fn check_extractor_distance(
    ctx: &GfContext,
    n: u32,
    px: &[f64],
    py: &[f64],
    delta: Option<f64>,
) -> Result<DistanceReport> {
    let blocks = SmallBlocks::new(ctx, n, MAX_DISTANCE_BITS)?;
    let t = blocks.t();
    check_source(px, t, "x table")?;
    check_source(py, t, "y table")?;
    let hx = min_entropy(px);
    let hy = min_entropy(py);
    let certified = (hx.min(hy) / t as f64).clamp(0.0, 1.0);
    let delta = match delta {
        None => certified,
        Some(d) if !(0.0..=1.0).contains(&d) => {
            return Err(Error::invalid(format!("rate {d} outside [0, 1]")))
        }
        Some(d) if hx.min(hy) + 1e-9 < d * t as f64 => {
            return Err(Error::invalid(format!(
                "sources carry {:.4} and {:.4} bits, below delta * q * n = {:.4}",
                hx,
                hy,
                d * t as f64
            )))
        }
        Some(d) => d,
    };
    let log2_bound = error_bound_block(n as u64, blocks.q as u64, delta);
    Ok(DistanceReport {
        description: format!("q={} n={} H(X)={hx:.3} H(Y)={hy:.3}", blocks.q, n),
        q: blocks.q,
        n,
        min_entropy_x: hx,
        min_entropy_y: hy,
        delta,
        statistical_distance: output_distance(ctx, n, px, py)?,
        log2_bound,
        bound: log2_bound.exp2().min(1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform(t: u32) -> Vec<f64> {
        vec![1.0 / (1u64 << t) as f64; 1 << t]
    }

    fn flat(t: u32, support: &[usize]) -> Vec<f64> {
        let mut v = vec![0.0; 1 << t];
        for &s in support {
            v[s] = 1.0 / support.len() as f64;
        }
        v
    }

    #[test]
    fn uniform_pair_matches_closed_form() {
        for (q, n) in [(1, 1), (1, 4), (2, 2), (3, 3), (4, 2), (12, 1)] {
            let ctx = GfContext::new(q).unwrap();
            let t = q * n;
            let d = output_distance(&ctx, n, &uniform(t), &uniform(t)).unwrap();
            let exact = uniform_input_distance(q, n);
            assert!((d - exact).abs() < 1e-15, "q={q} n={n}: {d} vs {exact}");
        }
        // q = 1, n = 1: output is x AND y, which is 1 with probability 1/4
        assert_eq!(uniform_input_distance(1, 1), 0.25);
    }

    #[test]
    fn uniform_y_with_nonzero_x_is_exact() {
        let ctx = GfContext::new(2).unwrap();
        let support: Vec<usize> = (1..16).collect();
        let d = output_distance(&ctx, 2, &flat(4, &support), &uniform(4)).unwrap();
        assert!(d < 1e-15);
    }

    #[test]
    fn zero_block_gives_constant_output() {
        for q in 1..=4 {
            let ctx = GfContext::new(q).unwrap();
            let d = output_distance(&ctx, 2, &flat(2 * q, &[0]), &uniform(2 * q)).unwrap();
            assert!((d - (1.0 - (-(q as f64)).exp2())).abs() < 1e-15);
        }
    }

    #[test]
    fn flat_sources_within_bound() {
        let ctx = GfContext::new(2).unwrap();
        let x = flat(4, &[0, 3, 5, 6, 9, 10, 12, 15]);
        let y = flat(4, &[1, 2, 4, 7, 8, 11, 13, 14]);
        let r = check_extractor_distance(&ctx, 2, &x, &y, None).unwrap();
        assert_eq!(r.min_entropy_x, 3.0);
        assert_eq!(r.delta, 0.75);
        assert!(r.holds());
        assert!(r.statistical_distance <= 1.0);
        assert_eq!(r.bound, 1.0);
    }

    #[test]
    fn rejects_entropy_below_delta() {
        let ctx = GfContext::new(2).unwrap();
        let x = flat(4, &[0, 1]);
        assert!(matches!(
            check_extractor_distance(&ctx, 2, &x, &uniform(4), Some(0.75)),
            Err(Error::InvalidArgument(_))
        ));
        assert!(check_extractor_distance(&ctx, 2, &x, &uniform(3), None).is_err());
        assert!(matches!(
            check_extractor_distance(&ctx, 13, &uniform(13), &uniform(13), None),
            Err(Error::Infeasible(_))
        ));
    }
}
