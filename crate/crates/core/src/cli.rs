//! The `twosource` command line front end.
//!
//! Every subcommand writes a key/value report to standard output, or to the
//! file named by `--report`. Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | other failure |
//! | 2 | usage error or invalid argument |
//! | 3 | field capacity exceeded (q > 128) |
//! | 4 | unsupported min-entropy rate (delta <= 1/2) |
//! | 5 | input/output error |
//! | 6 | a verification check failed |
//!
//! Output files hold the chunks in block order, packed least-significant
//! bit first within each byte; the final byte is zero-padded and the pad
//! length is recorded as `pad_bits`.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};

use crate::bench::{self, FpgaModel, GateCostModel};
use crate::error::{Error, Result};
use crate::extractor::{extract_eq, extract_neq, Extraction, ParallelConfig, StreamSummary};
use crate::params::{
    error_bound_block, error_bound_neq, parse_count, plan_eq, plan_neq, BlockCount, EntropyRate,
    Epsilon, EqPlan, NeqPlan,
};
use crate::report::Document;
use crate::sources::{certify_forward_block, SourceModel};
use crate::verify::{run_suite, Suite, SuiteOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;
pub const EXIT_UNSUPPORTED_RATE: i32 = 4;
pub const EXIT_IO: i32 = 5;
pub const EXIT_VERIFICATION: i32 = 6;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_) | Error::Parse(_) => EXIT_USAGE,
        Error::Capacity { .. } => EXIT_CAPACITY,
        Error::UnsupportedRate { .. } => EXIT_UNSUPPORTED_RATE,
        Error::Io(_) | Error::Truncated { .. } => EXIT_IO,
        _ => EXIT_FAILURE,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "twosource",
    version,
    about = "Seedless two-source randomness extraction"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derive equal-block parameters
    Params(ParamsArgs),
    /// Equal-block extraction from two sample files
    ExtractEq(ExtractEqArgs),
    /// Incremental-block extraction from two sample files
    ExtractNeq(ExtractNeqArgs),
    /// Generate samples from a source model
    Simulate(SimulateArgs),
    /// Run exhaustive oracle checks
    Verify(VerifyArgs),
    /// Cost model projection and software throughput
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    /// bits per sample
    #[arg(long)]
    pub b: Option<u32>,
    /// min-entropy rate, "h/b" or a decimal
    #[arg(long)]
    pub delta: Option<EntropyRate>,
    /// samples per source, e.g. 2^47
    #[arg(long = "N", value_parser = parse_count_arg)]
    pub samples: Option<u64>,
    /// bits per source; must be a multiple of b
    #[arg(long = "N-bits", value_parser = parse_count_arg, conflicts_with = "samples")]
    pub sample_bits: Option<u64>,
    /// target distance, e.g. 2^-30
    #[arg(long)]
    pub epsilon: Option<Epsilon>,
}

#[derive(Debug, Args)]
pub struct ParamsArgs {
    #[command(flatten)]
    pub plan: PlanArgs,
    /// also write the plan to this file
    #[arg(long = "plan-out")]
    pub plan_out: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct IoArgs {
    #[arg(long)]
    pub x: PathBuf,
    #[arg(long)]
    pub y: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExtractEqArgs {
    #[command(flatten)]
    pub io: IoArgs,
    #[command(flatten)]
    pub plan: PlanArgs,
    /// plan file written by `params --plan-out`
    #[arg(long = "plan", conflicts_with_all = ["b", "delta", "samples", "sample_bits", "epsilon"])]
    pub plan_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExtractNeqArgs {
    #[command(flatten)]
    pub io: IoArgs,
    #[arg(long)]
    pub b: Option<u32>,
    #[arg(long)]
    pub delta: Option<EntropyRate>,
    /// width of the first block, a multiple of b
    #[arg(long)]
    pub q1: Option<u32>,
    /// per-block growth in samples (q grows by Delta * b)
    #[arg(long = "Delta")]
    pub growth: Option<u32>,
    #[arg(long = "max-blocks", value_parser = parse_count_arg)]
    pub max_blocks: Option<u64>,
    #[arg(long = "plan", conflicts_with_all = ["b", "delta", "q1", "growth", "max_blocks"])]
    pub plan_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// TOML source model
    #[arg(long)]
    pub model: PathBuf,
    /// number of samples
    #[arg(long, value_parser = parse_count_arg)]
    pub count: u64,
    #[arg(long)]
    pub out: PathBuf,
    /// overrides the model seed
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// hadamard, bias, distance, xor, bijection or all
    #[arg(long, default_value = "all")]
    pub suite: Suite,
    /// largest block size q * n to enumerate
    #[arg(long = "max-bits", default_value_t = 12)]
    pub max_bits: u32,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 16)]
    pub b: u32,
    #[arg(long, default_value = "10.74/16")]
    pub delta: EntropyRate,
    #[arg(long = "N", value_parser = parse_count_arg, default_value = "2^47")]
    pub samples: u64,
    #[arg(long, default_value = "2^-30")]
    pub epsilon: Epsilon,
    /// comma-separated worker counts
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub workers: Vec<usize>,
    /// measurement time per worker count
    #[arg(long, default_value_t = 1.0)]
    pub seconds: f64,
    /// gates per field multiplication (default: calibrated for q)
    #[arg(long = "mul-ops")]
    pub mul_ops: Option<u64>,
    #[arg(long = "clock-hz", default_value_t = FpgaModel::REFERENCE.clock_hz)]
    pub clock_hz: u64,
    #[arg(long, default_value_t = FpgaModel::REFERENCE.lut_count)]
    pub luts: u64,
    #[arg(long = "ops-per-lut", default_value_t = FpgaModel::REFERENCE.ops_per_lut)]
    pub ops_per_lut: u64,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

fn parse_count_arg(s: &str) -> std::result::Result<u64, String> {
    parse_count(s).map_err(|e| e.to_string())
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn main_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let mut stdout = std::io::stdout().lock();
    match run(cli.command, &mut stdout) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("twosource: {e}");
            exit_code(&e)
        }
    }
}

/// Runs one command, writing reports to `out` unless redirected.
pub fn run(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Params(a) => cmd_params(&a, out),
        Command::ExtractEq(a) => cmd_extract_eq(&a, out),
        Command::ExtractNeq(a) => cmd_extract_neq(&a, out),
        Command::Simulate(a) => cmd_simulate(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Bench(a) => cmd_bench(&a, out),
    }
}

fn emit(doc: &Document, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, doc.to_string())?,
        None => out.write_all(doc.to_string().as_bytes())?,
    }
    Ok(())
}

fn required<T: Clone>(v: &Option<T>, flag: &str) -> Result<T> {
    v.clone()
        .ok_or_else(|| Error::invalid(format!("--{flag} is required")))
}

fn samples_from(args: &PlanArgs, b: u32) -> Result<Option<u64>> {
    match (args.samples, args.sample_bits) {
        (Some(n), _) => Ok(Some(n)),
        (None, Some(bits)) if bits % b as u64 != 0 => Err(Error::invalid(format!(
            "--N-bits {bits} is not a multiple of b = {b}"
        ))),
        (None, Some(bits)) => Ok(Some(bits / b as u64)),
        (None, None) => Ok(None),
    }
}

fn plan_from_args(args: &PlanArgs, derived_samples: Option<u64>) -> Result<EqPlan> {
    let b = required(&args.b, "b")?;
    let rate = required(&args.delta, "delta")?;
    let epsilon = required(&args.epsilon, "epsilon")?;
    let samples = match samples_from(args, b)? {
        Some(n) => n,
        None => match derived_samples {
            Some(0) => {
                return Err(Error::invalid(
                    "the inputs hold no complete sample; pass --N to plan anyway",
                ))
            }
            Some(n) => n,
            None => return Err(Error::invalid("--N or --N-bits is required")),
        },
    };
    plan_eq(b, samples, rate, epsilon)
}

fn read_plan(path: &Path) -> Result<Document> {
    fs::read_to_string(path)?.parse()
}

fn cmd_params(args: &ParamsArgs, out: &mut dyn Write) -> Result<i32> {
    let plan = plan_from_args(&args.plan, None)?;
    let doc = plan.to_document();
    if let Some(p) = &args.plan_out {
        fs::write(p, doc.to_string())?;
    }
    emit(&doc, args.report.as_deref(), out)?;
    Ok(EXIT_OK)
}

fn shorter_input_bits(io: &IoArgs) -> Result<u64> {
    let x = fs::metadata(&io.x)?.len();
    let y = fs::metadata(&io.y)?.len();
    Ok(x.min(y) * 8)
}

struct RunOutcome {
    summary: StreamSummary,
    pad_bits: u32,
    output_bytes: u64,
    wall: Duration,
}

fn run_extraction<F>(io: &IoArgs, make: F) -> Result<RunOutcome>
where
    F: FnOnce(BufReader<File>, BufReader<File>) -> Extraction<BufReader<File>, BufReader<File>>,
{
    if io.workers == 0 {
        return Err(Error::invalid("--workers must be at least 1"));
    }
    let x = BufReader::new(File::open(&io.x)?);
    let y = BufReader::new(File::open(&io.y)?);
    let writer = BufWriter::new(File::create(&io.out)?);
    let start = Instant::now();
    let (summary, pad_bits, writer) =
        make(x, y).write_to(ParallelConfig::new(io.workers), writer)?;
    writer
        .into_inner()
        .map_err(|e| e.into_error())?
        .sync_all()?;
    Ok(RunOutcome {
        output_bytes: summary.output_bits.div_ceil(8),
        summary,
        pad_bits,
        wall: start.elapsed(),
    })
}

fn extraction_report(mode: &str, plan: &Document, run: &RunOutcome, workers: usize) -> Document {
    let s = &run.summary;
    let mut d = Document::new("report");
    d.push("mode", mode);
    d.extend_prefixed("plan.", plan);
    d.push("blocks_completed", s.blocks_completed);
    d.push("x_bits_read", s.x_bits_read);
    d.push("y_bits_read", s.y_bits_read);
    d.push("x_bits_consumed", s.bits_consumed);
    d.push("y_bits_consumed", s.bits_consumed);
    d.push("x_discarded_tail_bits", s.x_discarded_bits());
    d.push("y_discarded_tail_bits", s.y_discarded_bits());
    d.push("output_bits", s.output_bits);
    d.push("output_bytes", run.output_bytes);
    d.push("pad_bits", run.pad_bits);
    d.push("last_q", s.last_q.map_or("none".into(), |q| q.to_string()));
    d.push(
        "stop_reason",
        s.stop.map_or("none".into(), |r| r.to_string()),
    );
    d.push("window_disjointness", true);
    d.push("workers", workers);
    d
}

fn cmd_extract_eq(args: &ExtractEqArgs, out: &mut dyn Write) -> Result<i32> {
    let plan = match &args.plan_file {
        Some(p) => EqPlan::from_document(&read_plan(p)?)?,
        None => {
            let derived = match (args.plan.samples, args.plan.sample_bits, args.plan.b) {
                (None, None, Some(b)) => Some(shorter_input_bits(&args.io)? / b as u64),
                _ => None,
            };
            plan_from_args(&args.plan, derived)?
        }
    };
    let run = run_extraction(&args.io, |x, y| extract_eq(x, y, &plan))?;
    let mut d = extraction_report("eq", &plan.to_document(), &run, args.io.workers);
    d.push("log2_error_bound", plan.log2_error);
    let emitted = match run.summary.blocks_completed {
        0 => f64::NEG_INFINITY,
        k => error_bound_block(plan.n, plan.q as u64, plan.rate.value()) + (k as f64).log2(),
    };
    d.push("log2_error_bound_emitted", emitted);
    d.push("wall_time_seconds", run.wall.as_secs_f64());
    emit(&d, args.io.report.as_deref(), out)?;
    Ok(EXIT_OK)
}

fn cmd_extract_neq(args: &ExtractNeqArgs, out: &mut dyn Write) -> Result<i32> {
    let plan: NeqPlan = match &args.plan_file {
        Some(p) => NeqPlan::from_document(&read_plan(p)?)?,
        None => plan_neq(
            required(&args.b, "b")?,
            required(&args.delta, "delta")?,
            required(&args.q1, "q1")?,
            required(&args.growth, "Delta")?,
            args.max_blocks,
        )?,
    };
    let run = run_extraction(&args.io, |x, y| extract_neq(x, y, &plan))?;
    let mut d = extraction_report("neq", &plan.to_document(), &run, args.io.workers);
    let bound = match run.summary.blocks_completed {
        0 => f64::NEG_INFINITY,
        k => error_bound_neq(&plan, BlockCount::Finite(k))?,
    };
    d.push("log2_error_bound", bound);
    d.push(
        "expected_output_bits",
        plan.output_bits_after(run.summary.blocks_completed),
    );
    d.push("wall_time_seconds", run.wall.as_secs_f64());
    emit(&d, args.io.report.as_deref(), out)?;
    Ok(EXIT_OK)
}

fn cmd_simulate(args: &SimulateArgs, out: &mut dyn Write) -> Result<i32> {
    let mut model = SourceModel::from_toml(&fs::read_to_string(&args.model)?)?;
    if let Some(seed) = args.seed {
        model.seed = seed;
    }
    let mut writer = BufWriter::new(File::create(&args.out)?);
    let bytes = model.generate(args.count, &mut writer)?;
    writer.flush()?;
    let mut d = Document::new("simulate");
    d.push("b", model.b);
    d.push("seed", model.seed);
    d.push("samples", args.count);
    d.push("bytes", bytes);
    match certify_forward_block(&model) {
        Ok(c) => {
            d.push("certificate", "certified");
            d.push("certificate.rate", c.rate);
            d.push(
                "certificate.method",
                format!("{:?}", c.method).to_lowercase(),
            );
            d.push("certificate.guess_probability", c.guess_probability);
        }
        Err(Error::Uncertifiable(why)) => d.push("certificate", format!("uncertifiable: {why}")),
        Err(e) => return Err(e),
    }
    emit(&d, args.report.as_deref(), out)?;
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let options = SuiteOptions {
        max_bits: args.max_bits,
        seed: args.seed,
        ..SuiteOptions::default()
    };
    let report = run_suite(args.suite, &options)?;
    let mut d = report.to_document();
    d.push("suite", args.suite);
    d.push("max_bits", args.max_bits);
    emit(&d, args.report.as_deref(), out)?;
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    })
}

fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<i32> {
    let plan = plan_eq(args.b, args.samples, args.delta, args.epsilon)?;
    let mul_ops = args.mul_ops.unwrap_or_else(|| bench::mul_ops_for(plan.q));
    let cost = GateCostModel::new(plan.n, plan.q as u64, mul_ops)?;
    let fpga = FpgaModel {
        clock_hz: args.clock_hz,
        lut_count: args.luts,
        ops_per_lut: args.ops_per_lut,
    };
    let mut d = Document::new("bench");
    d.extend_prefixed("plan.", &plan.to_document());
    d.extend_prefixed("machine.", &bench::machine_document());
    d.push("model.mul_ops", cost.mul_ops);
    d.push("model.block_ops", cost.block_ops);
    d.push("model.run_ops", cost.run_ops(plan.num_blocks));
    d.push("model.lanes", fpga.parallel_blocks(&cost));
    match bench::projected_speed(&fpga, &cost) {
        Ok(p) => d.push("model.bits_per_second", p.bits_per_second),
        Err(e) => d.push("model.bits_per_second", format!("none ({e})")),
    }
    if args.seconds <= 0.0 || !args.seconds.is_finite() {
        return Err(Error::invalid("--seconds must be positive"));
    }
    let duration = Duration::from_secs_f64(args.seconds);
    let reports = bench::measure_scaling(&plan, &args.workers, duration)?;
    let base = reports.first().map(|r| r.output_bits_per_second);
    for r in &reports {
        let prefix = format!("workers{}.", r.workers);
        let mut doc = r.to_document();
        if let Some(base) = base.filter(|b| *b > 0.0) {
            doc.push("scaling", format!("{:.3}", r.output_bits_per_second / base));
        }
        d.extend_prefixed(&prefix, &doc);
    }
    emit(&d, args.report.as_deref(), out)?;
    let all_match = reports.iter().all(|r| r.outputs_match);
    Ok(if all_match {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    })
}
