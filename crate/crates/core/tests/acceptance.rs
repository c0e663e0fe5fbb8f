//! Acceptance checks, one PASS/FAIL line each. Run with
//! `cargo test --test acceptance`; the process exits non-zero if any check
//! fails.

mod common;

use std::cell::Cell;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::Rng;
use twosource::bench::{gate_count, projected_speed, FpgaModel, GateCostModel};
use twosource::extractor::{Extraction, ParallelConfig, Schedule};
use twosource::gf2q::GfContext;
use twosource::params::{
    error_bound_block, error_bound_neq, plan_eq, plan_neq, BlockCount, EntropyRate, Epsilon,
    LOG2_SQRT3,
};
use twosource::verify::{
    check_hadamard, output_distance, run_suite, uniform_input_distance, Suite, SuiteOptions,
};
use twosource::{extract_eq, extract_neq};

use common::{axiom_failures, mask, random_bytes, reference_extract, rng};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn flagship_rate() -> EntropyRate {
    EntropyRate::per_sample("10.74", 16).unwrap()
}

fn parameter_reproduction() -> Outcome {
    let eps = Epsilon::from_log2(-30.0).unwrap();
    let mut slowest = Duration::ZERO;
    let mut shapes = Vec::new();
    // N = 2^51 read as a sample count and as a bit count
    for samples in [1u64 << 51, 1 << 47] {
        for _ in 0..10 {
            let start = Instant::now();
            let p = plan_eq(16, samples, flagship_rate(), eps).unwrap();
            slowest = slowest.max(start.elapsed());
            shapes.push((p.n, p.q));
        }
    }
    outcome(
        shapes.iter().all(|&s| s == (71, 80)) && slowest < Duration::from_millis(1),
        format!(
            "(n, q) = {:?} for N = 2^51 and 2^47 samples, slowest of 20 calls {slowest:?}",
            shapes[0]
        ),
    )
}

fn cost_model() -> Outcome {
    let gates = gate_count(71, 80, 4885).unwrap();
    let cost = GateCostModel::new(71, 80, 4885).unwrap();
    let fpga = FpgaModel {
        clock_hz: 200_000_000,
        lut_count: 300_000,
        ops_per_lut: 5,
    };
    let speed = projected_speed(&fpga, &cost).unwrap();
    outcome(
        gates == 352_435 && speed.lanes == 4 && speed.bits_per_second == 64_000_000_000,
        format!(
            "gates {gates}, lanes {}, {} bit/s",
            speed.lanes, speed.bits_per_second
        ),
    )
}

fn run_cases<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> (u32, Option<String>) {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    let ran = Cell::new(0);
    let result = runner.run(&strategy, |v| {
        test(v)?;
        ran.set(ran.get() + 1);
        Ok(())
    });
    (ran.get(), result.err().map(|e| e.to_string()))
}

fn output_lengths() -> Outcome {
    let nonempty = Cell::new(0);
    let eq = (
        prop::sample::select(vec![1u32, 2, 4, 8, 16]),
        prop::sample::select(vec![(3u64, 4u64), (5, 8), (7, 8), (1, 1), (9, 10)]),
        1u64..20_000,
        5u32..40,
        any::<u64>(),
    );
    let (eq_cases, eq_err) = run_cases(128, eq, |(b, (num, den), samples, e, seed)| {
        let rate = EntropyRate::new(num, den).unwrap();
        let plan = match plan_eq(b, samples, rate, Epsilon::from_log2(-(e as f64)).unwrap()) {
            Ok(p) => p,
            Err(_) => return Err(TestCaseError::reject("no plan")),
        };
        let bits = samples * b as u64;
        let x = random_bytes(&mut rng(seed), bits.div_ceil(8) as usize);
        let y = random_bytes(&mut rng(!seed), bits.div_ceil(8) as usize);
        let (_, summary) = extract_eq(&x[..], &y[..], &plan).to_bytes().unwrap();
        let expected = bits / (plan.q as u64 * plan.n) * plan.q as u64;
        prop_assert_eq!(summary.output_bits, expected);
        prop_assert_eq!(plan.output_bits, expected);
        nonempty.set(nonempty.get() + (expected > 0) as u32);
        Ok(())
    });
    let neq = (
        prop::sample::select(vec![1u32, 2, 4, 8]),
        1u32..5,
        0u32..4,
        1u64..12,
        prop::option::of(1u64..8),
        any::<u64>(),
    );
    let (neq_cases, neq_err) =
        run_cases(128, neq, |(b, q1_mult, delta, samples_k, limit, seed)| {
            let q1 = b * q1_mult;
            let plan = plan_neq(b, EntropyRate::new(7, 8).unwrap(), q1, delta, limit).unwrap();
            // enough input for roughly `samples_k` blocks, usually with a ragged tail
            let bits: u64 = (1..=samples_k).map(|l| plan.q_at(l) * plan.n).sum::<u64>() + seed % 97;
            let x = random_bytes(&mut rng(seed), bits.div_ceil(8) as usize);
            let y = random_bytes(&mut rng(seed ^ 1), bits.div_ceil(8) as usize);
            let (_, summary) = extract_neq(&x[..], &y[..], &plan).to_bytes().unwrap();
            let k = summary.blocks_completed;
            let m_k = k as u128 * q1 as u128
                + (k as u128).saturating_sub(1) * k as u128 * (delta * b) as u128 / 2;
            prop_assert_eq!(summary.output_bits as u128, m_k);
            let reference = reference_extract(&x, &y, plan.n, |l| plan.q_at(l), limit);
            prop_assert_eq!(k, reference.blocks);
            Ok(())
        });
    let failure = eq_err.or(neq_err);
    outcome(
        failure.is_none() && eq_cases >= 100 && neq_cases >= 100,
        match failure {
            Some(e) => e,
            None => format!(
                "{eq_cases} eq cases ({} with output), {neq_cases} neq cases",
                nonempty.get()
            ),
        },
    )
}

fn hadamard() -> Outcome {
    let mut shapes = 0;
    let mut bad = Vec::new();
    for q in 1..=16u32 {
        let ctx = GfContext::new(q).unwrap();
        for n in 1..=16 / q {
            let r = check_hadamard(&ctx, n).unwrap();
            shapes += 1;
            if !r.holds() {
                bad.push(format!("q={q} n={n}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{shapes} shapes with q*n <= 16, failing: {bad:?}"),
    )
}

fn distance() -> Outcome {
    let report = run_suite(
        Suite::Distance,
        &SuiteOptions {
            max_bits: 12,
            ..SuiteOptions::default()
        },
    )
    .unwrap();
    let bound_failures = report.failures().count();
    // uniform sources on both sides, every shape
    let mut worst = 0.0f64;
    let mut shapes = 0;
    let mut closed_form_ok = true;
    for q in 1..=12u32 {
        let ctx = GfContext::new(q).unwrap();
        for n in 1..=12 / q {
            let t = q * n;
            let u = vec![(-(t as f64)).exp2(); 1 << t];
            let d = output_distance(&ctx, n, &u, &u).unwrap();
            closed_form_ok &= (d - uniform_input_distance(q, n)).abs() <= 1e-12;
            worst = worst.max(d);
            shapes += 1;
        }
    }
    let limit = (-40.0f64).exp2();
    outcome(
        bound_failures == 0 && worst <= limit,
        format!(
            "{} instances, {bound_failures} above the bound; uniform pairs over {shapes} shapes: \
             largest distance 2^{:.3} vs limit 2^-40 (exact value 2^-qn (1 - 2^-q), closed form {})",
            report.lines.len(),
            worst.log2(),
            if closed_form_ok { "matches" } else { "MISMATCH" }
        ),
    )
}

fn bias() -> Outcome {
    let report = run_suite(
        Suite::Bias,
        &SuiteOptions {
            max_bits: 12,
            ..SuiteOptions::default()
        },
    )
    .unwrap();
    let failures = report.failures().count();
    outcome(
        failures == 0,
        format!(
            "{} (shape, k) instances with t <= 12, {failures} violations",
            report.lines.len()
        ),
    )
}

fn equivalence() -> Outcome {
    let mut r = rng(7);
    let mut inputs = 0;
    let mut mismatches = 0;
    let mut nonempty = 0;
    let rates = [(3u64, 4u64), (5, 8), (7, 8), (537, 800)];
    for i in 0..64u64 {
        let b = [4u32, 8, 16][i as usize % 3];
        let (num, den) = rates[(i / 3) as usize % rates.len()];
        let samples = r.gen_range(200..4000u64) * 16 / b as u64;
        let plan = plan_eq(
            b,
            samples,
            EntropyRate::new(num, den).unwrap(),
            Epsilon::from_log2(-12.0).unwrap(),
        )
        .unwrap();
        let neq = plan_neq(b, plan.rate, plan.q, 0, Some(plan.num_blocks)).unwrap();
        let len = (samples * b as u64).div_ceil(8) as usize + r.gen_range(0..3);
        let x = random_bytes(&mut r, len);
        let y = random_bytes(&mut r, len);
        let (a, _) = extract_eq(&x[..], &y[..], &plan).to_bytes().unwrap();
        let (c, _) = extract_neq(&x[..], &y[..], &neq).to_bytes().unwrap();
        inputs += 1;
        mismatches += (a != c) as u32;
        nonempty += !a.is_empty() as u32;
    }
    outcome(
        mismatches == 0,
        format!("{inputs} random inputs ({nonempty} with output), {mismatches} mismatches"),
    )
}

fn determinism() -> Outcome {
    let samples = 1 << 20;
    let plan = plan_eq(
        16,
        samples,
        flagship_rate(),
        Epsilon::from_log2(-30.0).unwrap(),
    )
    .unwrap();
    let mut r = rng(11);
    let x = random_bytes(&mut r, (samples * 2) as usize);
    let y = random_bytes(&mut r, (samples * 2) as usize);
    let mut outputs = Vec::new();
    let mut blocks = 0;
    for workers in [1, 2, 8] {
        let (summary, _, out) = Extraction::new(&x[..], &y[..], Schedule::from(&plan))
            .write_to(ParallelConfig::new(workers), Vec::new())
            .unwrap();
        blocks = summary.blocks_completed;
        outputs.push(out);
    }
    let same = outputs.windows(2).all(|w| w[0] == w[1]);
    outcome(
        same && blocks >= 1000,
        format!("{blocks} blocks, workers 1/2/8 identical: {same}"),
    )
}

fn convergence() -> Outcome {
    let mut checked = 0;
    let mut worst_gap = 0.0f64;
    let mut monotone = true;
    for (num, den) in [(5u64, 8u64), (3, 4), (7, 8), (1, 1)] {
        let rate = EntropyRate::new(num, den).unwrap();
        for (b, delta) in [(8u32, 1u32), (8, 2), (8, 3), (16, 1), (4, 2)] {
            for q1 in [b, 2 * b, 4 * b] {
                let plan = plan_neq(b, rate, q1, delta, None).unwrap();
                // the block bound at these rates is exactly sqrt 3 2^(-1/4 - q)
                let step = (delta * b) as f64;
                let closed = LOG2_SQRT3 - 0.25 - q1 as f64 - (1.0 - (-step).exp2()).log2();
                let mut prev = f64::NEG_INFINITY;
                for k in 1..=200 {
                    let v = error_bound_neq(&plan, BlockCount::Finite(k)).unwrap();
                    monotone &= v >= prev;
                    prev = v;
                    if k >= 50 {
                        worst_gap = worst_gap.max((v - closed).abs());
                        checked += 1;
                    }
                }
                let exact_n = error_bound_block(plan.n, q1 as u64, rate.value());
                monotone &= (exact_n - (LOG2_SQRT3 - 0.25 - q1 as f64)).abs() < 1e-9;
            }
        }
    }
    outcome(
        monotone && worst_gap <= 0.01,
        format!("{checked} (plan, k) values, largest gap {worst_gap:.3e} log2 units, monotone: {monotone}"),
    )
}

fn field() -> Outcome {
    let mut failures = 0;
    let mut triples = 0u64;
    for q in 1..=3u32 {
        let ctx = GfContext::new(q).unwrap();
        let size = 1u128 << q;
        let all =
            (0..size).flat_map(|a| (0..size).flat_map(move |b| (0..size).map(move |c| (a, b, c))));
        triples += (size * size * size) as u64;
        failures += axiom_failures(&ctx, all);
    }
    for q in [4u32, 8, 16, 80, 128] {
        let ctx = GfContext::new(q).unwrap();
        let mut r = rng(q as u64);
        let m = mask(q);
        let sample: Vec<_> = (0..10_000)
            .map(|_| {
                (
                    r.gen::<u128>() & m,
                    r.gen::<u128>() & m,
                    r.gen::<u128>() & m,
                )
            })
            .collect();
        triples += sample.len() as u64;
        failures += axiom_failures(&ctx, sample.into_iter());
    }
    let mut inverses = 0;
    for q in 1..=8u32 {
        let ctx = GfContext::new(q).unwrap();
        for a in 1..1u128 << q {
            let a = ctx.element(a).unwrap();
            match ctx.inverse(a).unwrap() {
                Some(inv) if ctx.mul(a, inv).unwrap().bits() == 1 => {}
                _ => failures += 1,
            }
            inverses += 1;
        }
        failures += ctx.inverse(ctx.element(0).unwrap()).unwrap().is_some() as u64;
    }
    outcome(
        failures == 0,
        format!("{triples} triples, {inverses} inverses, {failures} failures"),
    )
}

fn main() {
    type Check = (&'static str, fn() -> Outcome);
    let criteria: [Check; 10] = [
        ("parameter reproduction", parameter_reproduction),
        ("cost model reproduction", cost_model),
        ("output length formulas", output_lengths),
        ("hadamard oracle", hadamard),
        ("distance oracle", distance),
        ("one-bit bias", bias),
        ("neq/eq equivalence", equivalence),
        ("parallel determinism", determinism),
        ("error bound convergence", convergence),
        ("field correctness", field),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let o = check();
        failed += !o.passed as u32;
        println!(
            "{} {name}: {} [{:.1}s]",
            if o.passed { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed as usize,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
