//! Parameter planning and error-bound evaluation.
//!
//! All distances from uniform are handled as log2 values in `f64`, summed in a
//! fixed order with a log-sum-exp step, so identical inputs always give
//! bit-identical results. Evaluation slop is well below 2^-40 in the
//! exponent; callers comparing against targets should allow a 0.01 margin.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2q::MAX_DEGREE;
use crate::report::Document;

/// log2(sqrt(3))
pub const LOG2_SQRT3: f64 = 0.792_481_250_360_578_1;

/// Largest accepted sample width in bits.
pub const MAX_SAMPLE_BITS: u32 = 64;

/// A min-entropy rate kept as an exact reduced fraction, so that the
/// block-count ceiling never depends on floating point rounding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EntropyRate {
    num: u64,
    den: u64,
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Parses a non-negative decimal such as "10.74" into an exact fraction.
fn parse_decimal(s: &str) -> Result<(u128, u128)> {
    let s = s.trim();
    let bad = || Error::invalid(format!("not a decimal number: {s:?}"));
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || frac.len() > 18 {
        return Err(bad());
    }
    let den = 10u128.pow(frac.len() as u32);
    let int: u128 = if int.is_empty() {
        0
    } else {
        int.parse().map_err(|_| bad())?
    };
    let frac: u128 = if frac.is_empty() {
        0
    } else {
        frac.parse().map_err(|_| bad())?
    };
    let num = int
        .checked_mul(den)
        .and_then(|v| v.checked_add(frac))
        .ok_or_else(bad)?;
    Ok((num, den))
}

impl EntropyRate {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::invalid("rate denominator must be positive"));
        }
        Self::from_u128(num as u128, den as u128)
    }

    fn from_u128(num: u128, den: u128) -> Result<Self> {
        if num > den {
            return Err(Error::invalid(format!("rate {num}/{den} exceeds 1")));
        }
        let g = gcd(num, den).max(1);
        let (num, den) = (num / g, den / g);
        if den > u64::MAX as u128 {
            return Err(Error::invalid("rate fraction too large"));
        }
        Ok(Self {
            num: num as u64,
            den: den as u64,
        })
    }

    /// Rate from min-entropy bits per sample, e.g. `("10.74", 16)`.
    pub fn per_sample(bits: &str, b: u32) -> Result<Self> {
        let (num, den) = parse_decimal(bits)?;
        Self::from_u128(num, den * b as u128)
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// ceil(24 / (2 rate - 1)), the number of field elements per block.
    pub fn samples_per_element(&self) -> Result<u64> {
        let (num, den) = (self.num as u128, self.den as u128);
        if 2 * num <= den {
            return Err(Error::UnsupportedRate {
                rate: self.to_string(),
            });
        }
        let gap = 2 * num - den;
        Ok((24 * den).div_ceil(gap) as u64)
    }
}

impl fmt::Display for EntropyRate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Accepts "h/b" with a decimal numerator ("10.74/16") or a plain decimal
/// ("0.75").
impl FromStr for EntropyRate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('/') {
            Some((h, b)) => {
                let (hn, hd) = parse_decimal(h)?;
                let (bn, bd) = parse_decimal(b)?;
                if bn == 0 {
                    return Err(Error::invalid("rate denominator must be positive"));
                }
                Self::from_u128(hn * bd, hd * bn)
            }
            None => {
                let (num, den) = parse_decimal(s)?;
                Self::from_u128(num, den)
            }
        }
    }
}

/// Target distance from uniform, stored as its base-2 logarithm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Epsilon {
    log2: f64,
}

impl Epsilon {
    pub fn from_log2(log2: f64) -> Result<Self> {
        if !log2.is_finite() || log2 >= 0.0 {
            return Err(Error::invalid(format!(
                "epsilon must lie in (0, 1); got 2^{log2}"
            )));
        }
        Ok(Self { log2 })
    }

    pub fn new(value: f64) -> Result<Self> {
        if !(value > 0.0 && value < 1.0) {
            return Err(Error::invalid(format!(
                "epsilon must lie in (0, 1); got {value}"
            )));
        }
        Self::from_log2(value.log2())
    }

    pub fn log2(&self) -> f64 {
        self.log2
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2^{}", self.log2)
    }
}

/// Accepts "2^-30" or a decimal such as "1e-9".
impl FromStr for Epsilon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(exp) = s.strip_prefix("2^") {
            let e: f64 = exp
                .parse()
                .map_err(|_| Error::invalid(format!("bad exponent in {s:?}")))?;
            Self::from_log2(e)
        } else {
            let v: f64 = s
                .parse()
                .map_err(|_| Error::invalid(format!("bad epsilon {s:?}")))?;
            Self::new(v)
        }
    }
}

/// Parses a count written as a plain integer or a power of two ("2^47").
pub fn parse_count(s: &str) -> Result<u64> {
    let s = s.trim();
    let bad = || Error::invalid(format!("bad count {s:?}"));
    if let Some(exp) = s.strip_prefix("2^") {
        let e: u32 = exp.parse().map_err(|_| bad())?;
        1u64.checked_shl(e).filter(|_| e < 64).ok_or_else(bad)
    } else {
        s.replace('_', "").parse().map_err(|_| bad())
    }
}

/// log2(2^a + 2^b)
pub fn log2_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp2().ln_1p() / std::f64::consts::LN_2
}

/// log2 of the inner-product extractor's distance bound for one block of n
/// elements of GF(2^q) drawn from sources of min-entropy rate `delta`:
/// log2(sqrt 3) - 1/4 - (delta/4 - 1/8) q n + 2q.
pub fn error_bound_block(n: u64, q: u64, delta: f64) -> f64 {
    assert!(n >= 1 && q >= 1, "block bound needs n, q >= 1");
    assert!((0.0..=1.0).contains(&delta), "rate must lie in [0, 1]");
    let qn = (q * n) as f64;
    LOG2_SQRT3 - 0.25 - (delta / 4.0 - 0.125) * qn + 2.0 * q as f64
}

/// Fully derived parameters for the equal-block extractor.
#[derive(Clone, Debug, PartialEq)]
pub struct EqPlan {
    pub b: u32,
    /// N, the per-source length in b-bit samples
    pub samples: u64,
    pub rate: EntropyRate,
    pub epsilon: Epsilon,
    pub n: u64,
    pub q: u32,
    pub num_blocks: u64,
    /// num_blocks * q
    pub output_bits: u64,
    pub log2_error: f64,
    /// multiples of b added to q beyond the closed-form choice so the summed
    /// bound meets epsilon
    pub q_bumps: u32,
}

impl EqPlan {
    /// Bits each block takes from each source.
    pub fn block_bits(&self) -> u64 {
        self.q as u64 * self.n
    }

    /// Stream bits of each source covered by the plan.
    pub fn input_bits(&self) -> u128 {
        self.samples as u128 * self.b as u128
    }

    pub fn to_document(&self) -> Document {
        let mut doc = Document::new("plan");
        doc.push("mode", "eq");
        doc.push("b", self.b);
        doc.push("samples", self.samples);
        doc.push("delta", self.rate);
        doc.push("log2_epsilon", self.epsilon.log2());
        doc.push("n", self.n);
        doc.push("q", self.q);
        doc.push("num_blocks", self.num_blocks);
        doc.push("output_bits", self.output_bits);
        doc.push("log2_error", self.log2_error);
        doc.push("q_bumps", self.q_bumps);
        doc
    }

    /// Re-plans from the inputs recorded in `doc` and checks that every
    /// derived field it carries agrees.
    pub fn from_document(doc: &Document) -> Result<Self> {
        if doc.get("mode") != Some("eq") {
            return Err(Error::Parse("expected mode = eq".into()));
        }
        let plan = plan_eq(
            doc.parse("b")?,
            doc.parse("samples")?,
            doc.parse("delta")?,
            Epsilon::from_log2(doc.parse("log2_epsilon")?)?,
        )?;
        let echoed = plan.to_document();
        for (key, value) in doc.entries() {
            match echoed.get(key) {
                Some(v) if v == value => {}
                Some(v) => {
                    return Err(Error::Parse(format!(
                        "{key} = {value} disagrees with recomputed {v}"
                    )))
                }
                None => {}
            }
        }
        Ok(plan)
    }
}

fn check_b(b: u32) -> Result<()> {
    if b == 0 || b > MAX_SAMPLE_BITS {
        Err(Error::invalid(format!(
            "sample width must be in 1..={MAX_SAMPLE_BITS}, got {b}"
        )))
    } else {
        Ok(())
    }
}

/// Plans the equal-block extractor:
/// n = ceil(24 / (2 delta - 1)), q = b ceil(log2(N / (eps n)) / b).
///
/// q is raised by further multiples of b while the summed bound over all
/// blocks still exceeds epsilon.
pub fn plan_eq(b: u32, samples: u64, rate: EntropyRate, epsilon: Epsilon) -> Result<EqPlan> {
    check_b(b)?;
    if samples == 0 {
        return Err(Error::invalid("sample count must be positive"));
    }
    let n = rate.samples_per_element()?;
    let target = (samples as f64).log2() - epsilon.log2() - (n as f64).log2();
    let steps = (target / b as f64).ceil().max(1.0);
    let mut q = steps * b as f64;
    if q > MAX_DEGREE as f64 {
        return Err(Error::Capacity {
            q: q as u64,
            max: MAX_DEGREE,
        });
    }
    let input_bits = samples as u128 * b as u128;
    let mut q_bumps = 0;
    loop {
        let qn = q as u128 * n as u128;
        let num_blocks = (input_bits / qn) as u64;
        let mut plan = EqPlan {
            b,
            samples,
            rate,
            epsilon,
            n,
            q: q as u32,
            num_blocks,
            output_bits: num_blocks * q as u64,
            log2_error: 0.0,
            q_bumps,
        };
        plan.log2_error = error_bound_eq(&plan);
        if plan.log2_error <= epsilon.log2() {
            return Ok(plan);
        }
        q += b as f64;
        q_bumps += 1;
        if q > MAX_DEGREE as f64 {
            return Err(Error::Capacity {
                q: q as u64,
                max: MAX_DEGREE,
            });
        }
    }
}

/// log2(num_blocks * 2^block_bound); negative infinity for an empty plan.
pub fn error_bound_eq(plan: &EqPlan) -> f64 {
    if plan.num_blocks == 0 {
        return f64::NEG_INFINITY;
    }
    error_bound_block(plan.n, plan.q as u64, plan.rate.value()) + (plan.num_blocks as f64).log2()
}

/// Parameters for the incremental-block extractor.
#[derive(Clone, Debug, PartialEq)]
pub struct NeqPlan {
    pub b: u32,
    pub rate: EntropyRate,
    pub n: u64,
    pub q1: u32,
    /// field growth per block, in samples: q_{l+1} = q_l + delta * b
    pub delta: u32,
    pub max_blocks: Option<u64>,
    /// Closed-form limit for delta >= 1; the truncated sum over `max_blocks`
    /// when delta = 0 and a block limit is set; otherwise `None`.
    pub log2_error_limit: Option<f64>,
}

impl NeqPlan {
    /// Field degree of block `index` (1-based).
    pub fn q_at(&self, index: u64) -> u64 {
        self.q1 as u64 + (index - 1) * self.delta as u64 * self.b as u64
    }

    /// Number of blocks whose field degree stays within the supported maximum.
    pub fn blocks_within_capacity(&self) -> Option<u64> {
        if self.delta == 0 {
            return None;
        }
        let step = self.delta as u64 * self.b as u64;
        Some((MAX_DEGREE as u64 - self.q1 as u64) / step + 1)
    }

    /// m_k = k q1 + (k - 1) k delta b / 2
    pub fn output_bits_after(&self, k: u64) -> u128 {
        let k = k as u128;
        k * self.q1 as u128 + (k.saturating_sub(1)) * k * self.delta as u128 * self.b as u128 / 2
    }

    pub fn to_document(&self) -> Document {
        let mut doc = Document::new("plan");
        doc.push("mode", "neq");
        doc.push("b", self.b);
        doc.push("delta", self.rate);
        doc.push("n", self.n);
        doc.push("q1", self.q1);
        doc.push("growth", self.delta);
        doc.push(
            "max_blocks",
            self.max_blocks
                .map_or("none".to_string(), |k| k.to_string()),
        );
        doc.push(
            "log2_error_limit",
            self.log2_error_limit
                .map_or("none".to_string(), |v| v.to_string()),
        );
        doc
    }

    pub fn from_document(doc: &Document) -> Result<Self> {
        if doc.get("mode") != Some("neq") {
            return Err(Error::Parse("expected mode = neq".into()));
        }
        let max_blocks = match doc.get("max_blocks") {
            None | Some("none") => None,
            Some(_) => Some(doc.parse("max_blocks")?),
        };
        let plan = plan_neq(
            doc.parse("b")?,
            doc.parse("delta")?,
            doc.parse("q1")?,
            doc.parse("growth")?,
            max_blocks,
        )?;
        if let Some(n) = doc.get("n") {
            if n != plan.n.to_string() {
                return Err(Error::Parse(format!(
                    "n = {n} disagrees with recomputed {}",
                    plan.n
                )));
            }
        }
        Ok(plan)
    }
}

pub fn plan_neq(
    b: u32,
    rate: EntropyRate,
    q1: u32,
    delta: u32,
    max_blocks: Option<u64>,
) -> Result<NeqPlan> {
    check_b(b)?;
    let n = rate.samples_per_element()?;
    if q1 == 0 || !q1.is_multiple_of(b) {
        return Err(Error::invalid(format!(
            "q1 = {q1} must be a positive multiple of b = {b}"
        )));
    }
    if q1 > MAX_DEGREE {
        return Err(Error::Capacity {
            q: q1 as u64,
            max: MAX_DEGREE,
        });
    }
    let mut plan = NeqPlan {
        b,
        rate,
        n,
        q1,
        delta,
        max_blocks,
        log2_error_limit: None,
    };
    plan.log2_error_limit = match (delta, max_blocks) {
        (0, None) => None,
        (0, Some(k)) => Some(error_bound_neq(&plan, BlockCount::Finite(k))?),
        _ => Some(error_bound_neq(&plan, BlockCount::Infinite)?),
    };
    Ok(plan)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockCount {
    Finite(u64),
    Infinite,
}

/// Bound on the distance of the first k output chunks of the incremental
/// extractor, in log2.
///
/// Finite k sums the per-block bounds; the unbounded case uses the geometric
/// closed form log2(sqrt 3) - 1/4 - q1 - log2(1 - 2^(-delta b)), which needs a
/// positive growth.
pub fn error_bound_neq(plan: &NeqPlan, k: BlockCount) -> Result<f64> {
    let rate = plan.rate.value();
    match k {
        BlockCount::Infinite => {
            if plan.delta == 0 {
                return Err(Error::Divergence);
            }
            let step = plan.delta as f64 * plan.b as f64;
            let tail = (-(-step).exp2()).ln_1p() / std::f64::consts::LN_2;
            Ok(LOG2_SQRT3 - 0.25 - plan.q1 as f64 - tail)
        }
        BlockCount::Finite(k) => {
            let mut acc = f64::NEG_INFINITY;
            let mut prev = f64::INFINITY;
            for l in 1..=k {
                let term = error_bound_block(plan.n, plan.q_at(l), rate);
                // once terms shrink and fall 64 bits below the running sum
                // they no longer change an f64
                if term < prev && term < acc - 64.0 {
                    break;
                }
                acc = log2_add(acc, term);
                prev = term;
            }
            Ok(acc)
        }
    }
}

/// Fraction of the raw min-entropy that ends up in the output.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtractionRate {
    /// 1 / (2 delta n)
    pub exact: f64,
    /// (2 delta - 1) / (48 delta)
    pub approximate: f64,
}

pub fn extraction_rate(n: u64, rate: EntropyRate) -> ExtractionRate {
    let d = rate.value();
    ExtractionRate {
        exact: 1.0 / (2.0 * d * n as f64),
        approximate: (2.0 * d - 1.0) / (48.0 * d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flagship_rate() -> EntropyRate {
        EntropyRate::per_sample("10.74", 16).unwrap()
    }

    #[test]
    fn rate_parsing() {
        let r: EntropyRate = "10.74/16".parse().unwrap();
        assert_eq!(r, flagship_rate());
        assert_eq!((r.numerator(), r.denominator()), (537, 800));
        assert_eq!(
            "0.75".parse::<EntropyRate>().unwrap(),
            EntropyRate::new(3, 4).unwrap()
        );
        assert!("17/16".parse::<EntropyRate>().is_err());
        assert!("abc".parse::<EntropyRate>().is_err());
        assert!("1/0".parse::<EntropyRate>().is_err());
    }

    #[test]
    fn samples_per_element_examples() {
        assert_eq!(flagship_rate().samples_per_element().unwrap(), 71);
        assert_eq!(
            EntropyRate::new(3, 4)
                .unwrap()
                .samples_per_element()
                .unwrap(),
            48
        );
        assert_eq!(
            EntropyRate::new(1, 1)
                .unwrap()
                .samples_per_element()
                .unwrap(),
            24
        );
        assert!(matches!(
            EntropyRate::new(1, 2).unwrap().samples_per_element(),
            Err(Error::UnsupportedRate { .. })
        ));
    }

    #[test]
    fn epsilon_parsing() {
        assert_eq!("2^-30".parse::<Epsilon>().unwrap().log2(), -30.0);
        assert!("2^0".parse::<Epsilon>().is_err());
        assert!("1".parse::<Epsilon>().is_err());
        assert!("1.5".parse::<Epsilon>().is_err());
        assert!("0".parse::<Epsilon>().is_err());
        assert!(("0.5".parse::<Epsilon>().unwrap().log2() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn count_parsing() {
        assert_eq!(parse_count("2^47").unwrap(), 1 << 47);
        assert_eq!(parse_count("5680").unwrap(), 5680);
        assert!(parse_count("2^64").is_err());
        assert!(parse_count("-3").is_err());
    }

    #[test]
    fn flagship_plans() {
        let eps = Epsilon::from_log2(-30.0).unwrap();
        for samples in [1u64 << 47, 1 << 51] {
            let plan = plan_eq(16, samples, flagship_rate(), eps).unwrap();
            assert_eq!((plan.n, plan.q), (71, 80));
            assert_eq!(plan.q_bumps, 0);
            assert!(plan.log2_error <= -30.0);
        }
    }

    #[test]
    fn unsupported_rate_rejected() {
        let eps = Epsilon::from_log2(-30.0).unwrap();
        let r = EntropyRate::new(1, 2).unwrap();
        assert!(matches!(
            plan_eq(16, 1 << 20, r, eps),
            Err(Error::UnsupportedRate { .. })
        ));
        assert!(matches!(
            plan_neq(16, r, 16, 1, None),
            Err(Error::UnsupportedRate { .. })
        ));
    }

    #[test]
    fn capacity_rejected() {
        let eps = Epsilon::from_log2(-100.0).unwrap();
        let r = EntropyRate::new(3, 4).unwrap();
        assert!(matches!(
            plan_eq(16, 1 << 60, r, eps),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn block_bound_examples() {
        let d = flagship_rate().value();
        let v = error_bound_block(71, 80, d);
        // log2 sqrt3 - 0.25 - 0.0428125 * 5680 + 160
        assert!(
            (v - (LOG2_SQRT3 - 0.25 - 243.175 + 160.0)).abs() < 1e-9,
            "{v}"
        );
        assert!(v <= LOG2_SQRT3 - 0.25 - 80.0);
        let half = error_bound_block(5, 7, 0.5);
        assert_eq!(half, LOG2_SQRT3 - 0.25 + 14.0);
    }

    #[test]
    fn eq_bound_scales_with_blocks() {
        let eps = Epsilon::from_log2(-30.0).unwrap();
        let plan = plan_eq(16, 1 << 47, flagship_rate(), eps).unwrap();
        let mut single = plan.clone();
        single.num_blocks = 1;
        assert_eq!(
            error_bound_eq(&single),
            error_bound_block(71, 80, flagship_rate().value())
        );
        let mut doubled = single.clone();
        doubled.num_blocks = 2;
        assert_eq!(error_bound_eq(&doubled), error_bound_eq(&single) + 1.0);
    }

    #[test]
    fn neq_closed_form_example() {
        let plan = plan_neq(16, EntropyRate::new(3, 4).unwrap(), 64, 1, None).unwrap();
        let closed = error_bound_neq(&plan, BlockCount::Infinite).unwrap();
        let expected = LOG2_SQRT3 - 0.25 - 64.0 - (1.0 - 2f64.powi(-16)).log2();
        assert!((closed - expected).abs() < 1e-12);
        assert!((closed - -63.4575).abs() < 1e-3, "{closed}");
        assert_eq!(plan.log2_error_limit, Some(closed));
        let one = error_bound_neq(&plan, BlockCount::Finite(1)).unwrap();
        assert_eq!(one, error_bound_block(plan.n, 64, 0.75));
    }

    #[test]
    fn neq_divergence() {
        let plan = plan_neq(16, EntropyRate::new(3, 4).unwrap(), 64, 0, None).unwrap();
        assert!(matches!(
            error_bound_neq(&plan, BlockCount::Infinite),
            Err(Error::Divergence)
        ));
        assert_eq!(plan.log2_error_limit, None);
    }

    #[test]
    fn neq_output_lengths() {
        let plan = plan_neq(16, EntropyRate::new(3, 4).unwrap(), 16, 1, None).unwrap();
        assert_eq!(plan.output_bits_after(3), 96);
        assert_eq!(plan.output_bits_after(1), 16);
        assert_eq!(plan.blocks_within_capacity(), Some(8));
        assert!(plan_neq(16, EntropyRate::new(3, 4).unwrap(), 24, 1, None).is_err());
    }

    #[test]
    fn rate_examples() {
        let r = extraction_rate(71, flagship_rate());
        assert!((r.exact - 1.0 / (2.0 * 0.67125 * 71.0)).abs() < 1e-15);
        assert!((r.exact - 0.01049).abs() < 1e-5);
        assert!((r.approximate - 0.01063).abs() < 1e-5);
        let full = extraction_rate(24, EntropyRate::new(1, 1).unwrap());
        assert_eq!(full.exact, 1.0 / 48.0);
        assert_eq!(full.approximate, 1.0 / 48.0);
    }

    #[test]
    fn plan_document_roundtrip() {
        let eps = Epsilon::from_log2(-30.0).unwrap();
        let plan = plan_eq(16, 1 << 47, flagship_rate(), eps).unwrap();
        let text = plan.to_document().to_string();
        let parsed = EqPlan::from_document(&text.parse().unwrap()).unwrap();
        assert_eq!(parsed, plan);

        let tampered = text.replace("q = 80", "q = 96");
        assert!(EqPlan::from_document(&tampered.parse().unwrap()).is_err());

        let neq = plan_neq(16, flagship_rate(), 16, 1, Some(4)).unwrap();
        let parsed =
            NeqPlan::from_document(&neq.to_document().to_string().parse().unwrap()).unwrap();
        assert_eq!(parsed, neq);
    }
}
