//! The inner-product extractor and the two streaming block extractors.
//!
//! Both streaming extractors cut each source into consecutive, disjoint
//! windows. Window l spans q_l * n / b samples, that is q_l * n stream bits,
//! which are split into n consecutive q_l-bit field elements (each read
//! least-significant bit first). Output chunk l is the inner product of the
//! two windows in GF(2^q_l). The equal-block extractor keeps q_l = q; the
//! incremental one grows q_{l+1} = q_l + delta * b and stops cleanly once the
//! next width would exceed the field limit.
//!
//! A window cut short by the end of either input is discarded, never padded.

mod parallel;

pub use parallel::{run_parallel, ParallelConfig};

use std::fmt;
use std::io::{Read, Write};

use crate::bits::{BitReader, BitWriter};
use crate::error::{Error, Result};
use crate::gf2q::{FieldElement, GfContext, MAX_DEGREE};
use crate::params::{EqPlan, NeqPlan, MAX_SAMPLE_BITS};

/// Sum over i of x_i * y_i in GF(2^q).
pub fn ext_ip(ctx: &GfContext, x: &[FieldElement], y: &[FieldElement]) -> Result<FieldElement> {
    if x.len() != y.len() {
        return Err(Error::invalid(format!(
            "inner product of {} and {} elements",
            x.len(),
            y.len()
        )));
    }
    if x.is_empty() {
        return Err(Error::invalid("inner product needs at least one element"));
    }
    if let Some(bad) = x.iter().chain(y).find(|e| !ctx.contains(**e)) {
        return Err(Error::invalid(format!(
            "element {:#x} does not fit GF(2^{})",
            bad.bits(),
            ctx.degree()
        )));
    }
    Ok(ctx.dot_unchecked(x, y))
}

/// Streaming position: the next block to be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockCursor {
    /// 1-based
    pub block_index: u64,
    /// 1-based index of the first sample of the block
    pub sample_index: u64,
    pub current_q: u64,
}

/// One block's worth of field elements from each source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPair {
    pub block_index: u64,
    pub ctx: GfContext,
    pub x: Vec<FieldElement>,
    pub y: Vec<FieldElement>,
}

impl BlockPair {
    pub fn extract(&self) -> Result<OutputChunk> {
        Ok(OutputChunk {
            block_index: self.block_index,
            width: self.ctx.degree(),
            value: ext_ip(&self.ctx, &self.x, &self.y)?,
        })
    }
}

/// The q_l output bits of block l.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OutputChunk {
    pub block_index: u64,
    pub width: u32,
    pub value: FieldElement,
}

/// Block layout shared by both extractors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Schedule {
    Equal {
        b: u32,
        n: u64,
        q: u32,
        max_blocks: Option<u64>,
    },
    Growing {
        b: u32,
        n: u64,
        q1: u32,
        delta: u32,
        max_blocks: Option<u64>,
    },
}

fn check_layout(b: u32, n: u64, q: u32) -> Result<()> {
    if b == 0 || b > MAX_SAMPLE_BITS {
        return Err(Error::invalid(format!(
            "sample width {b} outside 1..={MAX_SAMPLE_BITS}"
        )));
    }
    if n == 0 {
        return Err(Error::invalid("blocks need at least one element"));
    }
    if q == 0 || !q.is_multiple_of(b) {
        return Err(Error::invalid(format!(
            "q = {q} must be a positive multiple of b = {b}"
        )));
    }
    if q > MAX_DEGREE {
        return Err(Error::Capacity {
            q: q as u64,
            max: MAX_DEGREE,
        });
    }
    Ok(())
}

impl Schedule {
    pub fn equal(b: u32, n: u64, q: u32, max_blocks: Option<u64>) -> Result<Self> {
        check_layout(b, n, q)?;
        Ok(Schedule::Equal {
            b,
            n,
            q,
            max_blocks,
        })
    }

    pub fn growing(b: u32, n: u64, q1: u32, delta: u32, max_blocks: Option<u64>) -> Result<Self> {
        check_layout(b, n, q1)?;
        Ok(Schedule::Growing {
            b,
            n,
            q1,
            delta,
            max_blocks,
        })
    }

    pub fn sample_bits(&self) -> u32 {
        match *self {
            Schedule::Equal { b, .. } | Schedule::Growing { b, .. } => b,
        }
    }

    pub fn elements_per_block(&self) -> u64 {
        match *self {
            Schedule::Equal { n, .. } | Schedule::Growing { n, .. } => n,
        }
    }

    fn max_blocks(&self) -> Option<u64> {
        match *self {
            Schedule::Equal { max_blocks, .. } | Schedule::Growing { max_blocks, .. } => max_blocks,
        }
    }

    /// Field degree of block `index` (1-based); may exceed the field limit.
    pub fn q_at(&self, index: u64) -> u64 {
        match *self {
            Schedule::Equal { q, .. } => q as u64,
            Schedule::Growing { b, q1, delta, .. } => {
                q1 as u64 + (index - 1) * delta as u64 * b as u64
            }
        }
    }
}

impl From<&EqPlan> for Schedule {
    fn from(plan: &EqPlan) -> Self {
        Schedule::Equal {
            b: plan.b,
            n: plan.n,
            q: plan.q,
            max_blocks: Some(plan.num_blocks),
        }
    }
}

impl From<&NeqPlan> for Schedule {
    fn from(plan: &NeqPlan) -> Self {
        Schedule::Growing {
            b: plan.b,
            n: plan.n,
            q1: plan.q1,
            delta: plan.delta,
            max_blocks: plan.max_blocks,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    /// every block of the plan was produced
    PlanComplete,
    /// the block limit of an incremental plan was reached
    BlockLimit,
    /// an input ended; any partial block was discarded
    InputExhausted,
    /// the next block would need a field wider than the supported maximum
    FieldCapacity,
    /// reading an input failed
    ReadError,
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StopReason::PlanComplete => "plan-complete",
            StopReason::BlockLimit => "block-limit",
            StopReason::InputExhausted => "input-exhausted",
            StopReason::FieldCapacity => "field-capacity",
            StopReason::ReadError => "read-error",
        })
    }
}

/// Accounting for a (possibly still running) extraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StreamSummary {
    pub blocks_completed: u64,
    pub x_bits_read: u64,
    pub y_bits_read: u64,
    /// bits that went into completed blocks (same for both sources)
    pub bits_consumed: u64,
    pub output_bits: u64,
    pub stop: Option<StopReason>,
    /// width of the last completed block
    pub last_q: Option<u32>,
    pub cursor: BlockCursor,
}

impl StreamSummary {
    pub fn x_discarded_bits(&self) -> u64 {
        self.x_bits_read - self.bits_consumed
    }

    pub fn y_discarded_bits(&self) -> u64 {
        self.y_bits_read - self.bits_consumed
    }
}

/// Reads aligned block pairs from two sources according to a schedule.
pub struct BlockReader<X, Y> {
    x: BitReader<X>,
    y: BitReader<Y>,
    schedule: Schedule,
    cursor: BlockCursor,
    blocks_completed: u64,
    bits_consumed: u64,
    last_q: Option<u32>,
    stop: Option<StopReason>,
}

impl<X: Read, Y: Read> BlockReader<X, Y> {
    pub fn new(x: X, y: Y, schedule: Schedule) -> Self {
        Self {
            x: BitReader::new(x),
            y: BitReader::new(y),
            cursor: BlockCursor {
                block_index: 1,
                sample_index: 1,
                current_q: schedule.q_at(1),
            },
            schedule,
            blocks_completed: 0,
            bits_consumed: 0,
            last_q: None,
            stop: None,
        }
    }

    pub fn schedule(&self) -> &Schedule {
        &self.schedule
    }

    pub fn cursor(&self) -> BlockCursor {
        self.cursor
    }

    pub fn summary(&self) -> StreamSummary {
        StreamSummary {
            blocks_completed: self.blocks_completed,
            x_bits_read: self.x.bits_read(),
            y_bits_read: self.y.bits_read(),
            bits_consumed: self.bits_consumed,
            output_bits: 0,
            stop: self.stop,
            last_q: self.last_q,
            cursor: self.cursor,
        }
    }

    fn read_elements(&mut self, from_x: bool, q: u32) -> Result<Option<Vec<FieldElement>>> {
        let n = self.schedule.elements_per_block() as usize;
        let reader_x = &mut self.x;
        let reader_y = &mut self.y;
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let bits = if from_x {
                reader_x.read_bits(q)?
            } else {
                reader_y.read_bits(q)?
            };
            match bits {
                Some(v) => out.push(FieldElement::from_bits(v)),
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    }

    fn next_block(&mut self) -> Result<Option<BlockPair>> {
        if self.stop.is_some() {
            return Ok(None);
        }
        if let Some(limit) = self.schedule.max_blocks() {
            if self.blocks_completed >= limit {
                self.stop = Some(match self.schedule {
                    Schedule::Equal { .. } => StopReason::PlanComplete,
                    Schedule::Growing { .. } => StopReason::BlockLimit,
                });
                return Ok(None);
            }
        }
        let q = self.cursor.current_q;
        if q > MAX_DEGREE as u64 {
            self.stop = Some(StopReason::FieldCapacity);
            return Ok(None);
        }
        let q = q as u32;
        let ctx = GfContext::new(q)?;
        let Some(x) = self.read_elements(true, q)? else {
            self.stop = Some(StopReason::InputExhausted);
            return Ok(None);
        };
        let Some(y) = self.read_elements(false, q)? else {
            self.stop = Some(StopReason::InputExhausted);
            return Ok(None);
        };
        let block = BlockPair {
            block_index: self.cursor.block_index,
            ctx,
            x,
            y,
        };
        let n = self.schedule.elements_per_block();
        let b = self.schedule.sample_bits() as u64;
        self.blocks_completed += 1;
        self.bits_consumed += q as u64 * n;
        self.last_q = Some(q);
        self.cursor.sample_index += q as u64 * n / b;
        self.cursor.block_index += 1;
        self.cursor.current_q = self.schedule.q_at(self.cursor.block_index);
        Ok(Some(block))
    }
}

impl<X: Read, Y: Read> Iterator for BlockReader<X, Y> {
    type Item = Result<BlockPair>;

    fn next(&mut self) -> Option<Self::Item> {
        match self.next_block() {
            Ok(block) => block.map(Ok),
            Err(e) => {
                self.stop = Some(StopReason::ReadError);
                Some(Err(e))
            }
        }
    }
}

/// A running extraction. Iterating yields output chunks in block order on
/// the calling thread; [`Extraction::run`] fans blocks out to workers.
pub struct Extraction<X, Y> {
    blocks: BlockReader<X, Y>,
    output_bits: u64,
}

impl<X: Read, Y: Read> Extraction<X, Y> {
    pub fn new(x: X, y: Y, schedule: Schedule) -> Self {
        Self {
            blocks: BlockReader::new(x, y, schedule),
            output_bits: 0,
        }
    }

    pub fn summary(&self) -> StreamSummary {
        let mut s = self.blocks.summary();
        s.output_bits = self.output_bits;
        s
    }

    /// Feeds every chunk to `sink` in block order, using `config.workers`
    /// threads for the inner products.
    pub fn run<F>(mut self, config: ParallelConfig, mut sink: F) -> Result<StreamSummary>
    where
        F: FnMut(OutputChunk) -> Result<()>,
    {
        let mut output_bits = 0u64;
        run_parallel(&mut self.blocks, config, |chunk| {
            output_bits += chunk.width as u64;
            sink(chunk)
        })?;
        self.output_bits += output_bits;
        Ok(self.summary())
    }

    /// Packs the output into `writer` least-significant-bit first and
    /// zero-pads the final byte. Returns the summary, the pad length in bits
    /// and the writer.
    pub fn write_to<W: Write>(
        self,
        config: ParallelConfig,
        writer: W,
    ) -> Result<(StreamSummary, u32, W)> {
        let mut out = BitWriter::new(writer);
        let summary = self.run(config, |c| Ok(out.write_bits(c.value.bits(), c.width)?))?;
        let (pad, writer) = out.finish()?;
        Ok((summary, pad, writer))
    }

    /// Whole output as bytes, sequentially.
    pub fn to_bytes(self) -> Result<(Vec<u8>, StreamSummary)> {
        let (summary, _, bytes) = self.write_to(ParallelConfig::sequential(), Vec::new())?;
        Ok((bytes, summary))
    }
}

impl<X: Read, Y: Read> Iterator for Extraction<X, Y> {
    type Item = Result<OutputChunk>;

    fn next(&mut self) -> Option<Self::Item> {
        let block = match self.blocks.next()? {
            Ok(b) => b,
            Err(e) => return Some(Err(e)),
        };
        let chunk = block.extract();
        if let Ok(c) = &chunk {
            self.output_bits += c.width as u64;
        }
        Some(chunk)
    }
}

/// Equal-block extraction: `plan.num_blocks` chunks of `plan.q` bits, fewer
/// if an input runs out first.
pub fn extract_eq<X: Read, Y: Read>(x: X, y: Y, plan: &EqPlan) -> Extraction<X, Y> {
    Extraction::new(x, y, Schedule::from(plan))
}

/// Incremental-block extraction: chunk l has width q1 + (l - 1) delta b.
/// Runs until an input ends, the block limit is reached, or the next width
/// exceeds the field limit.
pub fn extract_neq<X: Read, Y: Read>(x: X, y: Y, plan: &NeqPlan) -> Extraction<X, Y> {
    Extraction::new(x, y, Schedule::from(plan))
}
