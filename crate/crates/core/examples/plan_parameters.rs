//! Parameter planning for both extractors.
//!
//!     cargo run --example plan_parameters

use twosource::params::{
    error_bound_neq, extraction_rate, plan_eq, plan_neq, BlockCount, EntropyRate, Epsilon,
};

fn main() -> twosource::Result<()> {
    // 16-bit samples carrying 10.74 bits of min-entropy each
    let rate = EntropyRate::per_sample("10.74", 16)?;
    let epsilon = Epsilon::from_log2(-30.0)?;

    for log_n in [40, 47, 51] {
        let plan = plan_eq(16, 1 << log_n, rate, epsilon)?;
        println!(
            "N = 2^{log_n}: n = {}, q = {}, blocks = {}, output = {} bits, log2 error = {:.2}",
            plan.n, plan.q, plan.num_blocks, plan.output_bits, plan.log2_error
        );
    }
    let plan = plan_eq(16, 1 << 47, rate, epsilon)?;
    println!("\n{}", plan.to_document());

    let r = extraction_rate(plan.n, rate);
    println!(
        "extraction rate {:.5} (asymptotic {:.5})\n",
        r.exact, r.approximate
    );

    // incremental blocks: q grows by 16 bits per block, from 16 up to 128
    let neq = plan_neq(16, rate, 16, 1, None)?;
    for k in [1, 2, 4, 8] {
        println!(
            "after {k} blocks: {} output bits, log2 error <= {:.3}",
            neq.output_bits_after(k),
            error_bound_neq(&neq, BlockCount::Finite(k))?
        );
    }
    println!(
        "unbounded run: log2 error <= {:.3}",
        error_bound_neq(&neq, BlockCount::Infinite)?
    );

    // a rate at or below 1/2 cannot be used
    let low = EntropyRate::new(1, 2)?;
    println!(
        "\nrate 1/2: {}",
        plan_eq(16, 1 << 47, low, epsilon).unwrap_err()
    );
    Ok(())
}
