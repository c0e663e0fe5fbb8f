//! Order-preserving fan-out of block inner products over a worker pool.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::thread;

use crossbeam_channel::unbounded;

use super::{BlockPair, OutputChunk};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParallelConfig {
    pub workers: usize,
    /// Blocks in flight (queued, computing, or waiting for reassembly). The
    /// producer stops reading input while this many are outstanding.
    pub capacity: usize,
}

impl ParallelConfig {
    pub fn new(workers: usize) -> Self {
        Self {
            workers,
            capacity: workers.max(1) * 4,
        }
    }

    pub fn sequential() -> Self {
        Self::new(1)
    }

    pub fn with_capacity(mut self, capacity: usize) -> Self {
        self.capacity = capacity;
        self
    }
}

fn compute(block: &BlockPair) -> Result<OutputChunk> {
    match catch_unwind(AssertUnwindSafe(|| block.extract())) {
        Ok(Ok(chunk)) => Ok(chunk),
        Ok(Err(e)) => Err(Error::Worker {
            block_index: block.block_index,
            reason: e.to_string(),
        }),
        Err(_) => Err(Error::Worker {
            block_index: block.block_index,
            reason: "worker panicked".into(),
        }),
    }
}

/// Applies the inner-product extractor to every block and hands the chunks
/// to `sink` in input order, whatever order the workers finish in. Returns
/// the number of chunks delivered.
///
/// Stops at the first failing block (reported with its index), the first
/// input error, or the first sink error. Chunks of earlier blocks are
/// delivered before an input error is returned.
pub fn run_parallel<I, F>(blocks: I, config: ParallelConfig, mut sink: F) -> Result<u64>
where
    I: Iterator<Item = Result<BlockPair>>,
    F: FnMut(OutputChunk) -> Result<()>,
{
    if config.workers == 0 {
        return Err(Error::invalid("at least one worker is required"));
    }
    if config.capacity == 0 {
        return Err(Error::invalid("reassembly capacity must be positive"));
    }
    if config.workers == 1 {
        let mut delivered = 0;
        for block in blocks {
            sink(compute(&block?)?)?;
            delivered += 1;
        }
        return Ok(delivered);
    }

    let mut blocks = blocks;
    thread::scope(|scope| {
        let (job_tx, job_rx) = unbounded::<(u64, BlockPair)>();
        let (done_tx, done_rx) = unbounded::<(u64, Result<OutputChunk>)>();
        for _ in 0..config.workers {
            let job_rx = job_rx.clone();
            let done_tx = done_tx.clone();
            scope.spawn(move || {
                for (seq, block) in job_rx {
                    if done_tx.send((seq, compute(&block))).is_err() {
                        break;
                    }
                }
            });
        }
        drop(done_tx);

        let mut pending: BTreeMap<u64, Result<OutputChunk>> = BTreeMap::new();
        let mut dispatched = 0u64;
        let mut delivered = 0u64;
        let mut input_error = None;
        let mut exhausted = false;
        loop {
            while !exhausted && dispatched - delivered < config.capacity as u64 {
                match blocks.next() {
                    Some(Ok(block)) => {
                        job_tx
                            .send((dispatched, block))
                            .expect("workers outlive the dispatcher");
                        dispatched += 1;
                    }
                    Some(Err(e)) => {
                        input_error = Some(e);
                        exhausted = true;
                    }
                    None => exhausted = true,
                }
            }
            if delivered == dispatched {
                break;
            }
            let (seq, result) = done_rx.recv().expect("a worker holds the result channel");
            pending.insert(seq, result);
            while let Some(result) = pending.remove(&delivered) {
                sink(result?)?;
                delivered += 1;
            }
        }
        drop(job_tx);
        match input_error {
            Some(e) => Err(e),
            None => Ok(delivered),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2q::{FieldElement, GfContext};

    fn blocks(count: u64, q: u32, n: usize) -> Vec<BlockPair> {
        let ctx = GfContext::new(q).unwrap();
        let mask = if q == 128 {
            u128::MAX
        } else {
            (1u128 << q) - 1
        };
        let mut s = 0x1234_5678u128;
        let mut next = move || {
            s = s
                .wrapping_mul(0x5851_f42d_4c95_7f2d)
                .wrapping_add(0x1405_7b7e_f767_814f);
            FieldElement::from_bits((s ^ (s >> 29) ^ (s << 37)) & mask)
        };
        (1..=count)
            .map(|i| BlockPair {
                block_index: i,
                ctx,
                x: (0..n).map(|_| next()).collect(),
                y: (0..n).map(|_| next()).collect(),
            })
            .collect()
    }

    fn run(blocks: &[BlockPair], config: ParallelConfig) -> Result<Vec<OutputChunk>> {
        let mut out = vec![];
        run_parallel(blocks.iter().cloned().map(Ok), config, |c| {
            out.push(c);
            Ok(())
        })?;
        Ok(out)
    }

    #[test]
    fn four_blocks_four_workers_in_order() {
        let bs = blocks(4, 16, 3);
        let out = run(&bs, ParallelConfig::new(4)).unwrap();
        let idx: Vec<u64> = out.iter().map(|c| c.block_index).collect();
        assert_eq!(idx, vec![1, 2, 3, 4]);
    }

    #[test]
    fn worker_counts_agree() {
        let bs = blocks(1000, 80, 5);
        let base = run(&bs, ParallelConfig::new(1)).unwrap();
        for w in [2, 8] {
            assert_eq!(run(&bs, ParallelConfig::new(w)).unwrap(), base);
            assert_eq!(
                run(&bs, ParallelConfig::new(w).with_capacity(1)).unwrap(),
                base
            );
        }
    }

    #[test]
    fn failing_block_reports_its_index() {
        let mut bs = blocks(20, 8, 2);
        bs[12].y.pop();
        for w in [1, 3] {
            match run(&bs, ParallelConfig::new(w)) {
                Err(Error::Worker { block_index, .. }) => assert_eq!(block_index, 13),
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn input_error_after_delivering_prefix() {
        let bs = blocks(5, 8, 2);
        let items = bs
            .iter()
            .cloned()
            .map(Ok)
            .chain(std::iter::once(Err(Error::invalid("boom"))));
        let mut seen = 0;
        let r = run_parallel(items, ParallelConfig::new(2), |_| {
            seen += 1;
            Ok(())
        });
        assert!(r.is_err());
        assert_eq!(seen, 5);
    }

    #[test]
    fn rejects_zero_workers() {
        assert!(run(&[], ParallelConfig::new(0)).is_err());
        assert!(run(&[], ParallelConfig::new(2).with_capacity(0)).is_err());
    }
}
