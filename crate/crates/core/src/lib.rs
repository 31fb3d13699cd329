//! Rates for Gaussian channels with noisily-known interference.
//!
//! A transmitter that knows the interfering signal exactly can precode
//! against it and lose nothing — the channel behaves as if the interference
//! were absent.  This crate quantifies what happens when that knowledge is
//! *imperfect*: transmitter and/or receiver see the interference only
//! through independent additive-noise observations.  A single scalar, the
//! residual fraction `μ ∈ [0, 1]`, captures how much of the interference
//! power survives the best possible cancellation, and the capacity is the
//! clean-channel formula with `μ·Q` of leftover interference in the noise
//! floor.
//!
//! What's here:
//!
//! * [`dpc`] — the noisy-precoding channel itself: capacity, the
//!   interference-cancellation coefficient `α`, one-sided and multi-
//!   observation variants.
//! * [`exponent`] — random-coding error exponents for the Gaussian channel,
//!   used to convert finite-blocklength decode failures into equivalent
//!   observation noise.
//! * [`cognitive`] — a secondary transmitter/receiver pair coexisting with
//!   a primary: five operating regimes, listening-time optimization, and
//!   parameter sweeps.
//! * [`gaussian`] — shared primitives: rates with unit handling, covariance
//!   matrices, differential entropy, mutual information.
//! * [`oracle`] — slower, structurally independent recomputations
//!   (determinant identities, grid searches, Monte Carlo estimates) used to
//!   cross-check every closed form in the test suite.
//!
//! Rates are stored in nats; [`Rate::bits`] converts on display only, so
//! thresholds and comparisons never accumulate unit-conversion error.
//!
//! # Quick start
//!
//! ```
//! use dirtypaper::dpc::DirtyPaperChannel;
//!
//! // unit power and interference, unit channel noise, and one unit-noise
//! // observation of the interference at each side
//! let ch = DirtyPaperChannel::new(1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
//!
//! // a third of the interference power survives cancellation
//! assert!((ch.residual_fraction().unwrap() - 1.0 / 3.0).abs() < 1e-15);
//!
//! // capacity sits strictly between the all-noise and no-interference ends
//! let c = ch.capacity().nats();
//! assert!((c - 0.279807893967711).abs() < 1e-12);
//! ```

pub mod cognitive;
pub mod dpc;
pub mod exponent;
pub mod gaussian;
pub mod oracle;

mod error;
mod linalg;
mod numeric;

pub use error::{Error, Result};
pub use gaussian::{Rate, Unit};

// Compile and run every code block in the user guide as a doc-test, so the
// book cannot drift from the library.  `cargo test --doc` covers it.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/capacity.md")]
    mod capacity {}
    #[doc = include_str!("../../../book/src/alpha.md")]
    mod alpha {}
    #[doc = include_str!("../../../book/src/exponents.md")]
    mod exponents {}
    #[doc = include_str!("../../../book/src/cognitive.md")]
    mod cognitive {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
