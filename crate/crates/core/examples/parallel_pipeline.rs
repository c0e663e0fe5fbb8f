//! Fanning block inner products out to worker threads. Output order always
//! follows input order, so any worker count gives the same bytes.
//!
//!     cargo run --example parallel_pipeline

use std::time::Instant;

use twosource::extractor::{Extraction, ParallelConfig, Schedule};
use twosource::sources::SourceModel;

fn main() -> twosource::Result<()> {
    let samples = 1 << 20;
    let x = SourceModel::uniform(16, 5).generate_bytes(samples)?;
    let y = SourceModel::uniform(16, 6).generate_bytes(samples)?;
    let schedule = Schedule::equal(16, 71, 80, None)?;

    let mut reference = None;
    for workers in [1, 2, 4, 8] {
        let start = Instant::now();
        let config = ParallelConfig::new(workers).with_capacity(4 * workers);
        let (summary, _, out) =
            Extraction::new(&x[..], &y[..], schedule).write_to(config, Vec::new())?;
        let same = *reference.get_or_insert_with(|| out.clone()) == out;
        println!(
            "workers = {workers}: {} blocks in {:?}, identical output: {same}",
            summary.blocks_completed,
            start.elapsed()
        );
    }
    Ok(())
}
