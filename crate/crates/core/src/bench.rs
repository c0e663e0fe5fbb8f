//! Hardware cost model and software throughput measurement.
//!
//! The cost model counts bit operations of one inner-product block: n - 1
//! field additions of q XORs each plus n multiplications of `mul_ops` gates
//! each. An FPGA with `lut_count` lookup tables, each standing in for
//! `ops_per_lut` such operations, fits `parallel_blocks` copies of the block
//! circuit. Assuming every copy finishes one block per clock cycle, the
//! projected output rate is clock * copies * q bits per second.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::extractor::{Extraction, ParallelConfig, Schedule};
use crate::params::EqPlan;
use crate::report::Document;
use crate::sources::SourceModel;

/// Gates of the GF(2^80) multiplier the model is calibrated with.
pub const MUL_OPS_Q80: u64 = 4885;

/// q (n - 1) + mul_ops n.
pub fn gate_count(n: u64, q: u64, mul_ops: u64) -> Result<u64> {
    if n == 0 || q == 0 {
        return Err(Error::invalid("n and q must be at least 1"));
    }
    q.checked_mul(n - 1)
        .and_then(|adds| {
            mul_ops
                .checked_mul(n)
                .and_then(|muls| adds.checked_add(muls))
        })
        .ok_or_else(|| Error::invalid("gate count overflows"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GateCostModel {
    pub q: u64,
    pub n: u64,
    /// per field addition (= q)
    pub add_ops: u64,
    /// per field multiplication
    pub mul_ops: u64,
    pub block_ops: u64,
}

impl GateCostModel {
    pub fn new(n: u64, q: u64, mul_ops: u64) -> Result<Self> {
        Ok(Self {
            q,
            n,
            add_ops: q,
            mul_ops,
            block_ops: gate_count(n, q, mul_ops)?,
        })
    }

    /// Operations for a whole equal-block run.
    pub fn run_ops(&self, blocks: u64) -> u128 {
        self.block_ops as u128 * blocks as u128
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FpgaModel {
    pub clock_hz: u64,
    pub lut_count: u64,
    pub ops_per_lut: u64,
}

impl FpgaModel {
    /// 200 MHz, 3 * 10^5 LUTs, 5 operations per LUT.
    pub const REFERENCE: FpgaModel = FpgaModel {
        clock_hz: 200_000_000,
        lut_count: 300_000,
        ops_per_lut: 5,
    };

    pub fn parallel_blocks(&self, cost: &GateCostModel) -> u64 {
        (self.lut_count as u128 * self.ops_per_lut as u128 / cost.block_ops.max(1) as u128) as u64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpeedProjection {
    pub lanes: u64,
    pub bits_per_second: u128,
}

impl SpeedProjection {
    pub fn with_lanes(clock_hz: u64, lanes: u64, q: u64) -> Self {
        Self {
            lanes,
            bits_per_second: clock_hz as u128 * lanes as u128 * q as u128,
        }
    }
}

/// Output rate with one block per cycle per lane. A device too small for a
/// single block circuit is an error.
pub fn projected_speed(model: &FpgaModel, cost: &GateCostModel) -> Result<SpeedProjection> {
    let lanes = model.parallel_blocks(cost);
    if lanes == 0 {
        return Err(Error::Infeasible(format!(
            "{} LUTs x {} ops hold no copy of a {}-op block",
            model.lut_count, model.ops_per_lut, cost.block_ops
        )));
    }
    Ok(SpeedProjection::with_lanes(model.clock_hz, lanes, cost.q))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThroughputReport {
    pub workers: usize,
    pub n: u64,
    pub q: u32,
    pub requested: Duration,
    /// time measured after warm-up
    pub measured: Duration,
    pub passes: u64,
    /// input bytes per source processed after warm-up
    pub input_bytes: u64,
    pub output_bits: u64,
    pub output_bits_per_second: f64,
    pub input_bits_per_second: f64,
    /// output of one pass equals the single-worker output
    pub outputs_match: bool,
    pub warning: Option<String>,
    /// modelled gate operations for the whole plan
    pub model_total_ops: Option<u128>,
}

impl ThroughputReport {
    pub fn to_document(&self) -> Document {
        let mut d = Document::new("bench");
        d.push("workers", self.workers);
        d.push("n", self.n);
        d.push("q", self.q);
        d.push("requested_seconds", self.requested.as_secs_f64());
        d.push("measured_seconds", self.measured.as_secs_f64());
        d.push("passes", self.passes);
        d.push("input_bytes_per_source", self.input_bytes);
        d.push("output_bits", self.output_bits);
        d.push(
            "output_bits_per_second",
            format!("{:.4e}", self.output_bits_per_second),
        );
        d.push(
            "input_bits_per_second",
            format!("{:.4e}", self.input_bits_per_second),
        );
        d.push("outputs_match", self.outputs_match);
        d.push("warning", self.warning.as_deref().unwrap_or("none"));
        match self.model_total_ops {
            Some(ops) => d.push("model_total_ops", ops),
            None => d.push("model_total_ops", "none"),
        }
        d
    }
}

/// Machine descriptors for benchmark reports.
pub fn machine_document() -> Document {
    let mut d = Document::new("machine");
    d.push("arch", std::env::consts::ARCH);
    d.push("os", std::env::consts::OS);
    d.push(
        "available_parallelism",
        std::thread::available_parallelism().map_or(0, |n| n.get()),
    );
    d
}

struct Workload {
    x: Vec<u8>,
    y: Vec<u8>,
    schedule: Schedule,
    input_bytes: u64,
}

impl Workload {
    fn new(plan: &EqPlan, blocks: u64) -> Result<Self> {
        let bits_per_block = plan.q as u64 * plan.n;
        let samples = (blocks * bits_per_block).div_ceil(plan.b as u64);
        let x = SourceModel::uniform(plan.b, 0x78).generate_bytes(samples)?;
        let y = SourceModel::uniform(plan.b, 0x79).generate_bytes(samples)?;
        Ok(Self {
            input_bytes: x.len() as u64,
            x,
            y,
            schedule: Schedule::equal(plan.b, plan.n, plan.q, Some(blocks))?,
        })
    }

    fn pass(&self, workers: usize) -> Result<(Vec<u8>, u64)> {
        let run = Extraction::new(&self.x[..], &self.y[..], self.schedule);
        let (summary, _, out) = run.write_to(ParallelConfig::new(workers), Vec::new())?;
        Ok((out, summary.output_bits))
    }
}

/// Repeatedly extracts from an in-memory buffer for `duration` and reports
/// the rate after a warm-up of the first tenth.
pub fn measure_throughput(
    plan: &EqPlan,
    workers: usize,
    duration: Duration,
) -> Result<ThroughputReport> {
    let blocks = plan.num_blocks.clamp(1, 512);
    let work = Workload::new(plan, blocks)?;
    let (reference, _) = work.pass(1)?;
    let (first, _) = work.pass(workers)?;
    let outputs_match = first == reference;

    let start = Instant::now();
    let warmup = duration / 10;
    let mut measured_from = None;
    let mut passes = 0;
    let mut output_bits = 0;
    loop {
        let elapsed = start.elapsed();
        if elapsed >= duration && measured_from.is_some() {
            break;
        }
        let (_, bits) = work.pass(workers)?;
        match measured_from {
            None if start.elapsed() >= warmup => measured_from = Some(Instant::now()),
            None => {}
            Some(_) => {
                passes += 1;
                output_bits += bits;
            }
        }
    }
    let measured = measured_from.map_or(Duration::ZERO, |t| t.elapsed());
    let secs = measured.as_secs_f64();
    let rate = |bits: f64| if secs > 0.0 { bits / secs } else { 0.0 };
    let warning = if passes < 3 {
        Some(format!(
            "only {passes} passes after warm-up; duration too short for a steady state"
        ))
    } else {
        None
    };
    let model_total_ops = GateCostModel::new(plan.n, plan.q as u64, mul_ops_for(plan.q))
        .ok()
        .map(|c| c.run_ops(plan.num_blocks));
    Ok(ThroughputReport {
        workers,
        n: plan.n,
        q: plan.q,
        requested: duration,
        measured,
        passes,
        input_bytes: passes * work.input_bytes,
        output_bits,
        output_bits_per_second: rate(output_bits as f64),
        input_bits_per_second: rate((passes * work.input_bytes * 8) as f64),
        outputs_match,
        warning,
        model_total_ops,
    })
}

/// Calibrated multiplier size for q = 80; other widths scale with q^2.
pub fn mul_ops_for(q: u32) -> u64 {
    if q == 80 {
        MUL_OPS_Q80
    } else {
        (MUL_OPS_Q80 as f64 * (q as f64 / 80.0).powi(2)).ceil() as u64
    }
}

/// Runs [`measure_throughput`] for each worker count.
pub fn measure_scaling(
    plan: &EqPlan,
    workers: &[usize],
    duration: Duration,
) -> Result<Vec<ThroughputReport>> {
    workers
        .iter()
        .map(|&w| measure_throughput(plan, w, duration))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{plan_eq, EntropyRate, Epsilon};

    #[test]
    fn gate_counts() {
        assert_eq!(gate_count(71, 80, 4885).unwrap(), 352_435);
        assert_eq!(gate_count(1, 80, 4885).unwrap(), 4885);
        assert_eq!(gate_count(2, 1, 1).unwrap(), 3);
        assert!(gate_count(0, 1, 1).is_err());
    }

    #[test]
    fn reference_projection() {
        let cost = GateCostModel::new(71, 80, MUL_OPS_Q80).unwrap();
        assert_eq!(cost.block_ops, 352_435);
        let p = projected_speed(&FpgaModel::REFERENCE, &cost).unwrap();
        assert_eq!(p.lanes, 4);
        assert_eq!(p.bits_per_second, 64_000_000_000);
        assert_eq!(
            SpeedProjection::with_lanes(200_000_000, 1, 80).bits_per_second,
            16_000_000_000
        );
        let small = FpgaModel {
            ops_per_lut: 1,
            ..FpgaModel::REFERENCE
        };
        assert_eq!(small.parallel_blocks(&cost), 0);
        assert!(matches!(
            projected_speed(&small, &cost),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn tiny_plan_throughput() {
        let rate = EntropyRate::new(7, 8).unwrap();
        let mut plan = plan_eq(8, 1 << 16, rate, Epsilon::from_log2(-1.0).unwrap()).unwrap();
        plan.n = 2;
        plan.q = 8;
        plan.num_blocks = plan.samples * 8 / 16;
        let r = measure_throughput(&plan, 2, Duration::from_millis(50)).unwrap();
        assert!(r.outputs_match);
        assert!(r.passes > 0);
        assert!(r.output_bits_per_second > 0.0);
        assert_eq!(r.to_document().get("workers"), Some("2"));
    }
}
