//! Source models, generated streams and min-entropy certificates.
//!
//!     cargo run --example simulate_sources

use twosource::sources::{certify_forward_block, certify_joint, SourceModel};

const MARKOV: &str = r#"
b = 2
seed = 7
kind = "markov"
transitions = [
    [0.40, 0.20, 0.20, 0.20],
    [0.25, 0.25, 0.25, 0.25],
    [0.20, 0.40, 0.20, 0.20],
    [0.30, 0.30, 0.20, 0.20],
]
"#;

fn main() -> twosource::Result<()> {
    let models = [
        ("uniform", SourceModel::uniform(16, 1)),
        ("biased bits", SourceModel::iid_biased(16, 0.6, 1)),
        ("markov", SourceModel::from_toml(MARKOV)?),
    ];
    for (name, model) in &models {
        let bytes = model.generate_bytes(4096)?;
        let cert = certify_forward_block(model)?;
        println!(
            "{name:>12}: {} bytes, rate {:.4} ({:?}, worst guess {:.4})",
            bytes.len(),
            cert.rate,
            cert.method,
            cert.guess_probability
        );
    }

    // a joint table in which the first sample is fixed: no forward rate
    let mut joint = vec![0.0; 16];
    for second in 0..4 {
        joint[second << 2] = 0.25;
    }
    println!(
        "fixed first sample: rate {}",
        certify_joint(2, 2, &joint)?.rate
    );

    // the same Markov model truncated to three samples, checked exhaustively
    let markov = &models[2].1;
    let exhaustive = certify_joint(2, 3, &markov.joint_truncation(3)?)?;
    println!(
        "markov, exhaustive over 3 samples: rate {:.4}",
        exhaustive.rate
    );
    Ok(())
}
