//! Equal-block extraction from two simulated sources held in memory.
//!
//!     cargo run --example extract_equal_blocks

use twosource::extract_eq;
use twosource::params::{plan_eq, EntropyRate, Epsilon};
use twosource::sources::SourceModel;

fn main() -> twosource::Result<()> {
    let samples = 1 << 18;
    let x = SourceModel::iid_biased(16, 0.45, 1).generate_bytes(samples)?;
    let y = SourceModel::iid_biased(16, 0.55, 2).generate_bytes(samples)?;

    // each bit has min-entropy -log2(0.55) ~ 0.862, so 13.79 bits per sample
    let rate = EntropyRate::per_sample("13.79", 16)?;
    let plan = plan_eq(16, samples, rate, Epsilon::from_log2(-32.0)?)?;
    println!(
        "n = {}, q = {}, {} blocks planned",
        plan.n, plan.q, plan.num_blocks
    );

    let (output, summary) = extract_eq(&x[..], &y[..], &plan).to_bytes()?;
    println!(
        "{} blocks, {} output bits ({} bytes), stopped: {}",
        summary.blocks_completed,
        summary.output_bits,
        output.len(),
        summary.stop.map_or("running".into(), |s| s.to_string())
    );
    println!(
        "discarded tail bits: x {}, y {}",
        summary.x_discarded_bits(),
        summary.y_discarded_bits()
    );
    let head: String = output.iter().take(16).map(|b| format!("{b:02x}")).collect();
    println!("first bytes: {head}");
    Ok(())
}
