//! Incremental-block extraction: each block is wider than the last, so the
//! per-block error shrinks geometrically and the run can go on without a
//! planned length until the field limit is reached.
//!
//!     cargo run --example extract_growing_blocks

use twosource::extract_neq;
use twosource::params::{plan_neq, EntropyRate};
use twosource::sources::SourceModel;

fn main() -> twosource::Result<()> {
    let x = SourceModel::uniform(8, 11).generate_bytes(1 << 16)?;
    let y = SourceModel::uniform(8, 12).generate_bytes(1 << 16)?;

    let plan = plan_neq(8, EntropyRate::new(7, 8)?, 32, 2, None)?;
    let mut run = extract_neq(&x[..], &y[..], &plan);
    for chunk in run.by_ref() {
        let chunk = chunk?;
        println!(
            "block {:>2}: q = {:>3}, value = {:#x}",
            chunk.block_index,
            chunk.width,
            chunk.value.bits()
        );
    }
    let s = run.summary();
    println!(
        "{} blocks, {} output bits (expected {}), stop: {}",
        s.blocks_completed,
        s.output_bits,
        plan.output_bits_after(s.blocks_completed),
        s.stop.map_or("running".into(), |r| r.to_string())
    );
    Ok(())
}
