//! Space-time structure of a single-photon Gaussian pulse scattered by a
//! two-level emitter (qubit) embedded in a 1D open waveguide.
//!
//! The crate computes the full complex field `u(x, t)/A` behind and in front
//! of the qubit from closed-form kernels built on the complex exponential
//! integral and the sine/cosine integrals, together with the stationary
//! transmission/reflection amplitudes, the qubit excitation amplitude, and
//! the large-time / far-field limits. Every closed form is cross-checked by
//! brute-force validators in [`oracle`]: direct oscillatory quadrature of the
//! defining spectral integrals and a discretized-mode Schrödinger integrator.
//!
//! Quick map:
//! - [`special`] — complex `E1`, `si`/`ci`, complex error function
//! - [`stationary`] — plane-wave transmission/reflection, driven and lossy variants
//! - [`dynamics`] — Gaussian packet, qubit amplitude `β(t)`, spectral amplitudes
//! - [`field`] — space-time kernels, full/large-time fields, interference split
//! - [`oracle`] — quadrature and mode-sum validators
//! - [`validate`] — the invariant check suite used by the `validate` subcommand
//! - [`cli`] — config parsing and the CSV/JSON emitting subcommands
//!
//! Frequencies are angular (rad/s) everywhere inside the library; the config
//! layer accepts Hz-style inputs (GHz/MHz) and applies the 2π once.

pub mod cli;
pub mod dynamics;
pub mod field;
pub mod oracle;
pub mod special;
pub mod stationary;
pub mod validate;

pub use num_complex::Complex64;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_86;

/// Errors raised by the numeric layers.
///
/// `Domain` marks arguments outside a function's mathematical domain (poles,
/// branch cuts, guard bands around singular loci). `Precondition` marks
/// calls outside a formula's declared regime (causality region, smallness
/// conditions). `Convergence` marks a brute-force validator whose
/// self-refinement did not settle.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("convergence failure: {0}")]
    Convergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Machine-readable reason code used in skipped CSV rows.
    pub fn reason_code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "singularity_guard",
            Error::Precondition(_) => "precondition",
            Error::Convergence(_) => "convergence",
        }
    }
}
