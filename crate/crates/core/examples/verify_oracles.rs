//! Brute-force checks of the inner-product extractor on small blocks.
//!
//!     cargo run --example verify_oracles

use twosource::gf2q::GfContext;
use twosource::verify::{
    check_extractor_distance, check_hadamard, check_one_bit_bias, check_xor_lemma_instance,
    uniform_input_distance, BiasOptions,
};

fn main() -> twosource::Result<()> {
    for (q, n) in [(1, 8), (2, 4), (4, 2), (8, 1)] {
        let r = check_hadamard(&GfContext::new(q)?, n)?;
        println!(
            "hadamard q={q} n={n}: {:?}, violations {}",
            r.method, r.violations
        );
    }

    let ctx = GfContext::new(2)?;
    for k in 0..=4 {
        let r = check_one_bit_bias(&ctx, 2, k, &BiasOptions::default())?;
        println!(
            "bias q=2 n=2 k={k}: max {:.4} <= bound {:.4}",
            r.max_bias, r.bound
        );
    }

    let t = 8;
    let uniform = vec![1.0 / 256.0; 256];
    let r = check_extractor_distance(&GfContext::new(4)?, 2, &uniform, &uniform, None)?;
    println!(
        "distance, uniform inputs: {:.3e} (exact {:.3e}), bound {}",
        r.statistical_distance,
        uniform_input_distance(4, 2),
        r.bound
    );
    let mut heavy = vec![0.6 / 255.0; 1 << t];
    heavy[3] = 0.4;
    let r = check_extractor_distance(&GfContext::new(4)?, 2, &heavy, &uniform, None)?;
    println!("distance, one heavy point: {:.3e}", r.statistical_distance);

    let r = check_xor_lemma_instance(1, &[vec![1.0, 0.0]])?;
    println!("xor lemma, constant bit: {} <= {}", r.lhs, r.rhs);
    Ok(())
}
