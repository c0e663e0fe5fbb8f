//! Simulated forward block sources and classical min-entropy certificates.
//!
//! Simulators draw from a seeded ChaCha generator so every stream is
//! reproducible. They exist to exercise the extractors and are not a source
//! of randomness for real use.
//!
//! Certificates cover the classical case only: the adversary's side
//! information is trivial, and the certified rate is the largest delta such
//! that every run X_k..X_i, conditioned on any earlier prefix, has
//! min-entropy at least (i - k + 1) * delta * b.

use std::fs::File;
use std::io::{Read, Write};
use std::path::PathBuf;

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::bits::{BitReader, BitWriter};
use crate::error::{Error, Result};
use crate::params::MAX_SAMPLE_BITS;

/// Probability tables must sum to 1 within this tolerance.
pub const TABLE_TOLERANCE: f64 = 1.0 / (1u64 << 30) as f64;

const MAX_TABLE_BITS: u32 = 16;
const MAX_MARKOV_BITS: u32 = 8;
const MAX_JOINT_BITS: u32 = 4;
const MAX_JOINT_SAMPLES: u32 = 3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SourceKind {
    /// Each of the b bits is independently 1 with probability `p`.
    IidBiased { p: f64 },
    /// Samples drawn i.i.d. from a table over {0,1}^b.
    IidTable { table: Vec<f64> },
    /// Order-1 chain: `transitions[s][t]` is Pr[next = t | current = s].
    /// The first sample follows `initial` (uniform when omitted).
    Markov {
        #[serde(default)]
        initial: Option<Vec<f64>>,
        transitions: Vec<Vec<f64>>,
    },
    /// An explicit joint table over `samples` consecutive samples, index
    /// x_1 + x_2 2^b + x_3 2^(2b). Streams repeat independent draws of the
    /// whole tuple.
    Joint { samples: u32, table: Vec<f64> },
    /// Raw samples replayed from a file.
    File { path: PathBuf },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SourceModel {
    pub b: u32,
    #[serde(default)]
    pub seed: u64,
    #[serde(flatten)]
    pub kind: SourceKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateMethod {
    Analytic,
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MinEntropyCertificate {
    /// certified min-entropy rate per bit
    pub rate: f64,
    pub method: CertificateMethod,
    /// worst conditional guessing probability of a single sample (analytic)
    /// or of the worst run, normalised per sample (exhaustive)
    pub guess_probability: f64,
}

impl MinEntropyCertificate {
    fn analytic(b: u32, guess: f64) -> Self {
        Self {
            rate: guess_to_rate(guess, b as f64),
            method: CertificateMethod::Analytic,
            guess_probability: guess,
        }
    }
}

fn guess_to_rate(guess: f64, bits: f64) -> f64 {
    (-guess.log2() / bits).max(0.0)
}

fn check_table(table: &[f64], bits: u32, what: &str) -> Result<()> {
    let expected = 1usize << bits;
    if table.len() != expected {
        return Err(Error::invalid(format!(
            "{what} has {} entries, expected {expected}",
            table.len()
        )));
    }
    if table.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
        return Err(Error::invalid(format!(
            "{what} has a negative or non-finite entry"
        )));
    }
    let sum: f64 = table.iter().sum();
    if (sum - 1.0).abs() > TABLE_TOLERANCE {
        return Err(Error::invalid(format!("{what} sums to {sum}, not 1")));
    }
    Ok(())
}

fn max_of(table: &[f64]) -> f64 {
    table.iter().copied().fold(0.0, f64::max)
}

impl SourceModel {
    pub fn iid_biased(b: u32, p: f64, seed: u64) -> Self {
        Self {
            b,
            seed,
            kind: SourceKind::IidBiased { p },
        }
    }

    pub fn uniform(b: u32, seed: u64) -> Self {
        Self::iid_biased(b, 0.5, seed)
    }

    /// Parses a TOML model description.
    pub fn from_toml(text: &str) -> Result<Self> {
        let model: Self = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        model.validate()?;
        Ok(model)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        let b = self.b;
        if b == 0 || b > MAX_SAMPLE_BITS {
            return Err(Error::invalid(format!(
                "sample width {b} outside 1..={MAX_SAMPLE_BITS}"
            )));
        }
        match &self.kind {
            SourceKind::IidBiased { p } => {
                if !(0.0..=1.0).contains(p) {
                    return Err(Error::invalid(format!(
                        "bit probability {p} outside [0, 1]"
                    )));
                }
            }
            SourceKind::IidTable { table } => {
                if b > MAX_TABLE_BITS {
                    return Err(Error::invalid(format!(
                        "tables support b <= {MAX_TABLE_BITS}"
                    )));
                }
                check_table(table, b, "sample table")?;
            }
            SourceKind::Markov {
                initial,
                transitions,
            } => {
                if b > MAX_MARKOV_BITS {
                    return Err(Error::invalid(format!(
                        "markov sources support b <= {MAX_MARKOV_BITS}"
                    )));
                }
                if let Some(init) = initial {
                    check_table(init, b, "initial table")?;
                }
                if transitions.len() != 1 << b {
                    return Err(Error::invalid(format!(
                        "markov source needs {} transition rows",
                        1u32 << b
                    )));
                }
                for (s, row) in transitions.iter().enumerate() {
                    check_table(row, b, &format!("transition row {s}"))?;
                }
            }
            SourceKind::Joint { samples, table } => {
                if b > MAX_JOINT_BITS || *samples == 0 || *samples > MAX_JOINT_SAMPLES {
                    return Err(Error::invalid(format!(
                        "joint tables support b <= {MAX_JOINT_BITS} and 1..={MAX_JOINT_SAMPLES} samples"
                    )));
                }
                check_table(table, b * samples, "joint table")?;
            }
            SourceKind::File { .. } => {}
        }
        Ok(())
    }

    /// Writes `count` samples (count * b bits, LSB-first, zero-padded to a
    /// byte) and returns the number of bytes written.
    pub fn generate<W: Write>(&self, count: u64, out: W) -> Result<u64> {
        self.validate()?;
        if count == 0 {
            return Err(Error::invalid("sample count must be positive"));
        }
        let b = self.b;
        let mut w = BitWriter::new(out);
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        match &self.kind {
            SourceKind::IidBiased { p } => {
                if *p == 0.5 {
                    let mut left = count * b as u64;
                    while left > 0 {
                        let take = left.min(64) as u32;
                        w.write_bits(rng.gen::<u64>() as u128, take)?;
                        left -= take as u64;
                    }
                } else {
                    for _ in 0..count {
                        let mut v = 0u128;
                        for i in 0..b {
                            if rng.gen_bool(*p) {
                                v |= 1 << i;
                            }
                        }
                        w.write_bits(v, b)?;
                    }
                }
            }
            SourceKind::IidTable { table } => {
                let dist = weighted(table)?;
                for _ in 0..count {
                    w.write_bits(dist.sample(&mut rng) as u128, b)?;
                }
            }
            SourceKind::Markov {
                initial,
                transitions,
            } => {
                let rows = transitions
                    .iter()
                    .map(|r| weighted(r))
                    .collect::<Result<Vec<_>>>()?;
                let mut state = match initial {
                    Some(init) => weighted(init)?.sample(&mut rng),
                    None => rng.gen_range(0..1usize << b),
                };
                w.write_bits(state as u128, b)?;
                for _ in 1..count {
                    state = rows[state].sample(&mut rng);
                    w.write_bits(state as u128, b)?;
                }
            }
            SourceKind::Joint { samples, table } => {
                let dist = weighted(table)?;
                let mut left = count;
                while left > 0 {
                    let tuple = dist.sample(&mut rng) as u128;
                    let take = left.min(*samples as u64);
                    w.write_bits(tuple, take as u32 * b)?;
                    left -= take;
                }
            }
            SourceKind::File { path } => {
                let needed = count * b as u64;
                let file = File::open(path)?;
                let available = file.metadata()?.len() * 8;
                let mut r = BitReader::new(file);
                let mut left = needed;
                while left > 0 {
                    let take = left.min(64) as u32;
                    let Some(v) = r.read_bits(take)? else {
                        return Err(Error::Truncated { needed, available });
                    };
                    w.write_bits(v, take)?;
                    left -= take as u64;
                }
            }
        }
        let bytes = (count * b as u64).div_ceil(8);
        w.finish()?;
        Ok(bytes)
    }

    fn bit_probability(&self) -> f64 {
        match self.kind {
            SourceKind::IidBiased { p } => p,
            _ => 0.5,
        }
    }

    pub fn generate_bytes(&self, count: u64) -> Result<Vec<u8>> {
        let mut out = Vec::new();
        self.generate(count, &mut out)?;
        Ok(out)
    }

    /// Joint distribution of the first `samples` samples, for models that
    /// have an explicit one.
    pub fn joint_truncation(&self, samples: u32) -> Result<Vec<f64>> {
        self.validate()?;
        let b = self.b;
        if b * samples > 16 {
            return Err(Error::Infeasible(format!(
                "joint table over {samples} samples of {b} bits is too large"
            )));
        }
        let size = 1usize << (b * samples);
        let mask = (1usize << b) - 1;
        match &self.kind {
            SourceKind::IidBiased { .. } | SourceKind::IidTable { .. } => {
                let t = match &self.kind {
                    SourceKind::IidTable { table } => table.clone(),
                    _ => bit_product_table(b, self.bit_probability()),
                };
                Ok((0..size)
                    .map(|idx| (0..samples).map(|i| t[(idx >> (i * b)) & mask]).product())
                    .collect())
            }
            SourceKind::Markov {
                initial,
                transitions,
            } => {
                let uniform = vec![1.0 / (1u64 << b) as f64; 1 << b];
                let init = initial.as_ref().unwrap_or(&uniform);
                Ok((0..size)
                    .map(|idx| {
                        let mut prev = idx & mask;
                        let mut p = init[prev];
                        for i in 1..samples {
                            let cur = (idx >> (i * b)) & mask;
                            p *= transitions[prev][cur];
                            prev = cur;
                        }
                        p
                    })
                    .collect())
            }
            SourceKind::Joint { samples: k, table } if *k == samples => Ok(table.clone()),
            SourceKind::Joint { .. } => Err(Error::invalid(
                "joint truncation must match the table length",
            )),
            SourceKind::File { .. } => Err(Error::Uncertifiable(
                "file sources have no known distribution".into(),
            )),
        }
    }
}

fn bit_product_table(b: u32, p: f64) -> Vec<f64> {
    (0..1usize << b)
        .map(|x| {
            let ones = (x as u32).count_ones() as i32;
            p.powi(ones) * (1.0 - p).powi(b as i32 - ones)
        })
        .collect()
}

fn weighted(table: &[f64]) -> Result<WeightedIndex<f64>> {
    WeightedIndex::new(table).map_err(|e| Error::invalid(format!("bad probability table: {e}")))
}

/// Certifies the forward-block rate of a model.
///
/// i.i.d. and Markov models are handled analytically: the worst conditional
/// guess of one sample is the largest point mass (or transition
/// probability), and a run of length L is guessed with at most that
/// probability to the power L. Joint tables are checked exhaustively.
pub fn certify_forward_block(model: &SourceModel) -> Result<MinEntropyCertificate> {
    model.validate()?;
    let b = model.b;
    match &model.kind {
        SourceKind::IidBiased { p } => {
            let guess = p.max(1.0 - p).powi(b as i32);
            Ok(MinEntropyCertificate::analytic(b, guess))
        }
        SourceKind::IidTable { table } => Ok(MinEntropyCertificate::analytic(b, max_of(table))),
        SourceKind::Markov {
            initial,
            transitions,
        } => {
            let uniform = 1.0 / (1u64 << b) as f64;
            let init = initial.as_deref().map_or(uniform, max_of);
            let trans = transitions.iter().map(|r| max_of(r)).fold(0.0, f64::max);
            Ok(MinEntropyCertificate::analytic(b, init.max(trans)))
        }
        SourceKind::Joint { samples, table } => certify_joint(b, *samples, table),
        SourceKind::File { path } => Err(Error::Uncertifiable(format!(
            "{} is raw data; its min-entropy is a physical assumption",
            path.display()
        ))),
    }
}

/// Exhaustive check over every run k..=i and every prefix x_1..x_{k-1} of
/// positive probability.
pub fn certify_joint(b: u32, samples: u32, table: &[f64]) -> Result<MinEntropyCertificate> {
    if b == 0 || b > MAX_JOINT_BITS || samples == 0 || samples > MAX_JOINT_SAMPLES {
        return Err(Error::Infeasible(format!(
            "exhaustive certification needs b <= {MAX_JOINT_BITS} and at most {MAX_JOINT_SAMPLES} samples"
        )));
    }
    check_table(table, b * samples, "joint table")?;
    let s = samples as usize;
    let b = b as usize;
    let mut worst_rate = f64::INFINITY;
    let mut worst_guess = 0.0;
    for k in 1..=s {
        for i in k..=s {
            let prefix_bits = (k - 1) * b;
            let run_bits = (i - k + 1) * b;
            for prefix in 0..1usize << prefix_bits {
                // Pr[prefix, run] summed over the samples after i
                let mut run_mass = vec![0.0; 1 << run_bits];
                let mut prefix_mass = 0.0;
                for (idx, &p) in table.iter().enumerate() {
                    if idx & ((1 << prefix_bits) - 1) != prefix {
                        continue;
                    }
                    prefix_mass += p;
                    run_mass[(idx >> prefix_bits) & ((1 << run_bits) - 1)] += p;
                }
                if prefix_mass <= 0.0 {
                    continue;
                }
                let guess = max_of(&run_mass) / prefix_mass;
                let rate = guess_to_rate(guess, run_bits as f64);
                if rate < worst_rate {
                    worst_rate = rate;
                    worst_guess = guess.powf(1.0 / (i - k + 1) as f64);
                }
            }
        }
    }
    Ok(MinEntropyCertificate {
        rate: worst_rate.clamp(0.0, 1.0),
        method: CertificateMethod::Exhaustive,
        guess_probability: worst_guess,
    })
}

/// Marginal of a joint table on samples `start..start + len` (0-based).
pub fn marginal_window(
    b: u32,
    samples: u32,
    table: &[f64],
    start: u32,
    len: u32,
) -> Result<Vec<f64>> {
    if len == 0 || start + len > samples {
        return Err(Error::invalid("window outside the table"));
    }
    check_table(table, b * samples, "joint table")?;
    let mut out = vec![0.0; 1 << (b * len)];
    let window_mask = (1usize << (b * len)) - 1;
    for (idx, &p) in table.iter().enumerate() {
        out[(idx >> (b * start)) & window_mask] += p;
    }
    Ok(out)
}

/// Reads a stream back as samples, mostly for tests and tooling.
pub fn read_samples<R: Read>(input: R, b: u32, count: usize) -> Result<Vec<u64>> {
    let mut r = BitReader::new(input);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        match r.read_bits(b)? {
            Some(v) => out.push(v as u64),
            None => break,
        }
    }
    Ok(out)
}
