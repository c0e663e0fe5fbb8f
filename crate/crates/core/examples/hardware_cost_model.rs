//! Gate-count cost model, projected FPGA throughput and a short software
//! throughput measurement.
//!
//!     cargo run --release --example hardware_cost_model

use std::time::Duration;

use twosource::bench::{
    gate_count, measure_throughput, projected_speed, FpgaModel, GateCostModel, MUL_OPS_Q80,
};
use twosource::params::{plan_eq, EntropyRate, Epsilon};

fn main() -> twosource::Result<()> {
    println!("gates per block: {}", gate_count(71, 80, MUL_OPS_Q80)?);
    let cost = GateCostModel::new(71, 80, MUL_OPS_Q80)?;
    let p = projected_speed(&FpgaModel::REFERENCE, &cost)?;
    println!(
        "{} lanes at 200 MHz: {} Gbit/s",
        p.lanes,
        p.bits_per_second / 1_000_000_000
    );

    let plan = plan_eq(
        16,
        1 << 47,
        EntropyRate::per_sample("10.74", 16)?,
        Epsilon::from_log2(-30.0)?,
    )?;
    println!(
        "modelled operations for the full run: {:.3e}",
        cost.run_ops(plan.num_blocks) as f64
    );

    let r = measure_throughput(&plan, 1, Duration::from_millis(500))?;
    println!(
        "software, 1 worker: {:.3e} output bits/s, {:.3e} input bits/s per source",
        r.output_bits_per_second, r.input_bits_per_second
    );
    Ok(())
}
