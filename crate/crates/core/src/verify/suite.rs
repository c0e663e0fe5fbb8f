//! Named collections of checks with a flat pass/fail report.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::bias::MAX_BIAS_BITS;
use super::distance::MAX_DISTANCE_BITS;
use super::hadamard::MAX_HADAMARD_BITS;
use super::*;
use crate::report::Document;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Hadamard,
    Bias,
    Distance,
    Xor,
    Bijection,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] =
        ["hadamard", "bias", "distance", "xor", "bijection", "all"];

    fn name(self) -> &'static str {
        match self {
            Suite::Hadamard => "hadamard",
            Suite::Bias => "bias",
            Suite::Distance => "distance",
            Suite::Xor => "xor",
            Suite::Bijection => "bijection",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "hadamard" => Suite::Hadamard,
            "bias" => Suite::Bias,
            "distance" => Suite::Distance,
            "xor" => Suite::Xor,
            "bijection" => Suite::Bijection,
            "all" => Suite::All,
            other => {
                return Err(Error::invalid(format!(
                    "unknown suite {other:?}; expected one of {}",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    /// largest block size q * n to enumerate
    pub max_bits: u32,
    pub seed: u64,
    pub bias: BiasOptions,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            max_bits: 12,
            seed: 1,
            bias: BiasOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckLine {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SuiteReport {
    pub lines: Vec<CheckLine>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.lines.iter().filter(|l| !l.passed)
    }

    fn push(&mut self, suite: Suite, name: String, passed: bool, detail: String) {
        self.lines.push(CheckLine {
            suite,
            name,
            passed,
            detail,
        });
    }

    pub fn to_document(&self) -> Document {
        let mut doc = Document::new("verify");
        doc.push("checks", self.lines.len());
        doc.push("failures", self.failures().count());
        doc.push("result", if self.passed() { "pass" } else { "fail" });
        for l in &self.lines {
            let verdict = if l.passed { "pass" } else { "FAIL" };
            doc.push(
                format!("{}.{}", l.suite, l.name),
                format!("{verdict} {}", l.detail),
            );
        }
        doc
    }
}

/// Every (q, n) with q * n <= max_bits, smallest blocks first.
fn shapes(max_bits: u32) -> impl Iterator<Item = (u32, u32)> {
    (1..=max_bits).flat_map(move |t| (1..=t).filter(move |q| t % q == 0).map(move |q| (q, t / q)))
}

fn ctx(q: u32) -> Result<GfContext> {
    GfContext::new(q)
}

pub fn run_suite(suite: Suite, options: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::default();
    let all = suite == Suite::All;
    if all || suite == Suite::Hadamard {
        hadamard(&mut report, options)?;
    }
    if all || suite == Suite::Bias {
        bias(&mut report, options)?;
    }
    if all || suite == Suite::Distance {
        distance(&mut report, options)?;
    }
    if all || suite == Suite::Xor {
        xor(&mut report, options)?;
    }
    if all || suite == Suite::Bijection {
        for q in 1..=4 {
            let ok = check_functional_bijection(&ctx(q)?)?;
            report.push(
                Suite::Bijection,
                format!("q{q}"),
                ok,
                "parities match functionals one to one".into(),
            );
        }
    }
    Ok(report)
}

fn hadamard(report: &mut SuiteReport, options: &SuiteOptions) -> Result<()> {
    for (q, n) in shapes(options.max_bits.min(MAX_HADAMARD_BITS)) {
        let r = check_hadamard(&ctx(q)?, n)?;
        report.push(
            Suite::Hadamard,
            format!("q{q}_n{n}"),
            r.holds(),
            format!(
                "method={:?} a={} pairs_per_a={} violations={} spot_checks={} form_mismatches={}",
                r.method,
                r.nonzero_a,
                r.pairs_per_a,
                r.violations,
                r.spot_checks,
                r.form_mismatches
            ),
        );
    }
    Ok(())
}

fn bias(report: &mut SuiteReport, options: &SuiteOptions) -> Result<()> {
    for (q, n) in shapes(options.max_bits.min(MAX_BIAS_BITS)) {
        let checker = BiasChecker::new(&ctx(q)?, n, &options.bias)?;
        for k in 0..=q * n {
            let r = checker.check(k)?;
            report.push(
                Suite::Bias,
                format!("q{q}_n{n}_k{k}"),
                r.holds(),
                format!(
                    "max_bias={:.6} bound={:.6} {} sources={} multipliers={}",
                    r.max_bias,
                    r.bound,
                    if r.exhaustive {
                        "exhaustive"
                    } else {
                        "sampled"
                    },
                    r.sources_per_multiplier,
                    r.multipliers.len()
                ),
            );
        }
    }
    Ok(())
}

/// Uniform distribution on a random subset of size 2^k.
fn random_flat(rng: &mut ChaCha20Rng, t: u32, k: u32) -> Vec<f64> {
    let size = 1usize << t;
    let mut v = vec![0.0; size];
    for i in rand::seq::index::sample(rng, size, 1 << k) {
        v[i] = (-(k as f64)).exp2();
    }
    v
}

/// Each bit of the block independently 1 with probability p.
fn biased_bits(t: u32, p: f64) -> Vec<f64> {
    (0..1u32 << t)
        .map(|x| {
            let ones = x.count_ones() as i32;
            p.powi(ones) * (1.0 - p).powi(t as i32 - ones)
        })
        .collect()
}

/// Explicit source pairs for one block shape.
pub(crate) fn distance_instances(q: u32, n: u32, seed: u64) -> Vec<(String, Vec<f64>, Vec<f64>)> {
    let t = q * n;
    let mut rng = ChaCha20Rng::seed_from_u64(seed ^ ((q as u64) << 8) ^ n as u64);
    let uniform = vec![(-(t as f64)).exp2(); 1 << t];
    let mut nonzero = vec![1.0 / ((1u64 << t) - 1) as f64; 1 << t];
    nonzero[0] = 0.0;
    let mut out = vec![
        ("uniform".to_string(), uniform.clone(), uniform.clone()),
        ("nonzero_x".to_string(), nonzero, uniform.clone()),
        (
            "biased_bits".to_string(),
            biased_bits(t, 0.6),
            biased_bits(t, 0.45),
        ),
    ];
    if t >= 2 {
        let k = t - 1;
        out.push((
            format!("flat_k{k}"),
            random_flat(&mut rng, t, k),
            random_flat(&mut rng, t, k),
        ));
    }
    out
}

fn distance(report: &mut SuiteReport, options: &SuiteOptions) -> Result<()> {
    for (q, n) in shapes(options.max_bits.min(MAX_DISTANCE_BITS)) {
        for (label, px, py) in distance_instances(q, n, options.seed) {
            let r = check_extractor_distance(&ctx(q)?, n, &px, &py, None)?;
            let mut ok = r.holds() && r.statistical_distance <= 1.0;
            let mut detail = format!(
                "distance={:.3e} bound={:.3e} delta={:.4}",
                r.statistical_distance, r.bound, r.delta
            );
            match label.as_str() {
                "uniform" => {
                    let exact = uniform_input_distance(q, n);
                    ok &= (r.statistical_distance - exact).abs() <= 1e-12;
                    detail.push_str(&format!(" closed_form={exact:.3e}"));
                }
                "nonzero_x" => ok &= r.statistical_distance <= 1e-12,
                _ => {}
            }
            report.push(Suite::Distance, format!("q{q}_n{n}_{label}"), ok, detail);
        }
    }
    Ok(())
}

fn xor(report: &mut SuiteReport, options: &SuiteOptions) -> Result<()> {
    let mut rng = ChaCha20Rng::seed_from_u64(options.seed ^ 0x786f72);
    let push = |report: &mut SuiteReport, name: String, r: XorLemmaReport| {
        let detail = format!(
            "lhs={:.6} rhs={:.6} side_values={}",
            r.lhs, r.rhs, r.side_values
        );
        report.push(Suite::Xor, name, r.holds(), detail);
    };
    for q in 1..=4u32 {
        let size = 1usize << q;
        let uniform = vec![vec![1.0 / (2 * size) as f64; size]; 2];
        push(
            report,
            format!("q{q}_uniform"),
            check_xor_lemma_instance(q, &uniform)?,
        );
        let mut constant = vec![0.0; size];
        constant[size - 1] = 1.0;
        push(
            report,
            format!("q{q}_constant"),
            check_xor_lemma_instance(q, &[constant])?,
        );
        for i in 0..8 {
            let sides = rng.gen_range(1..=16usize);
            let mut joint: Vec<Vec<f64>> = (0..sides)
                .map(|_| (0..size).map(|_| rng.gen::<f64>().powi(3)).collect())
                .collect();
            let total: f64 = joint.iter().flatten().sum();
            joint.iter_mut().flatten().for_each(|p| *p /= total);
            push(
                report,
                format!("q{q}_random{i}"),
                check_xor_lemma_instance(q, &joint)?,
            );
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_cover_every_divisor() {
        let s: Vec<_> = shapes(4).collect();
        assert_eq!(
            s,
            vec![
                (1, 1),
                (1, 2),
                (2, 1),
                (1, 3),
                (3, 1),
                (1, 4),
                (2, 2),
                (4, 1)
            ]
        );
    }

    #[test]
    fn suite_names() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().to_string(), name);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_run_passes() {
        let options = SuiteOptions {
            max_bits: 6,
            ..SuiteOptions::default()
        };
        let r = run_suite(Suite::All, &options).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        let doc = r.to_document();
        assert_eq!(doc.get("result"), Some("pass"));
    }
}
