//! Seedless online two-source randomness extraction.
//!
//! Two independent raw streams of b-bit samples (for example the outputs of
//! two separate quantum random number generators) are cut into disjoint
//! blocks, and each block pair is mapped to a short output with the
//! inner-product extractor over GF(2^q). The crate provides:
//!
//! - [`gf2q`]: field arithmetic for 1 <= q <= 128 with a fixed modulus table,
//! - [`extractor`]: the inner-product gadget and the equal-block and
//!   incremental-block streaming extractors, with ordered parallel execution,
//! - [`params`]: parameter planning and log-domain error bounds,
//! - [`sources`]: seeded source simulators and min-entropy certificates,
//! - [`verify`]: exhaustive oracles for the one-bit and distance guarantees,
//! - [`bench`]: the hardware cost model and software throughput runs,
//! - [`cli`]: the `twosource` command line front end.
//!
//! ```
//! use twosource::params::{plan_eq, EntropyRate, Epsilon};
//!
//! let rate: EntropyRate = "10.74/16".parse().unwrap();
//! let plan = plan_eq(16, 1 << 47, rate, Epsilon::from_log2(-30.0).unwrap()).unwrap();
//! assert_eq!((plan.n, plan.q), (71, 80));
//! ```

pub mod bench;
pub mod bits;
pub mod cli;
pub mod error;
pub mod extractor;
pub mod gf2q;
pub mod params;
pub mod report;
pub mod sources;
pub mod verify;

pub use error::{Error, Result};
pub use extractor::{ext_ip, extract_eq, extract_neq, run_parallel, OutputChunk};
pub use gf2q::{FieldElement, GfContext};
pub use params::{plan_eq, plan_neq, EntropyRate, Epsilon, EqPlan, NeqPlan};
