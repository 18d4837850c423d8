//! Numerical analysis on periodic dyadic grids.
//!
//! The crate samples functions on the torus `[-2^K, 2^K)^n` (n = 1 or 2),
//! decomposes them into dyadic frequency blocks, evaluates a family of
//! weighted quasi-norms (Lebesgue, Herz, Morrey, block-Besov/Triebel-Lizorkin
//! scales, difference characterizations), and runs scaling/interpolation
//! experiments whose parameter tuples are vetted by the exact-arithmetic
//! admissibility checkers in `fsx-exact`.
//!
//! Layering, bottom to top:
//!
//! * [`lattice`] — grids, sampled functions, dyadic annuli, exact index
//!   remaps (dilation, translation);
//! * [`spectral`] — unitary DFT, smooth dyadic partition of unity, Fourier
//!   multipliers (Bessel, Riesz, derivatives);
//! * [`quasinorms`] — all norm evaluations, returning [`NormValue`] with
//!   truncation diagnostics;
//! * [`differences`] — finite differences, ball means, and the
//!   difference-based norms;
//! * [`corpus`] — named test-function families plus closed-form reference
//!   norms for the cases that admit them;
//! * [`harness`] — gated inequality experiments with deterministic
//!   JSON/CSV reports.

pub mod corpus;
pub mod differences;
pub mod fsxio;
pub mod harness;
pub mod lattice;
pub mod par;
pub mod quasinorms;
pub mod regression;
pub mod spectral;

pub use lattice::{AnnulusRange, Grid, SampledFunction};
pub use quasinorms::{HerzParams, MorreyParams, NormValue, SmoothnessParams};
pub use spectral::DyadicSystem;

/// Crate-wide error type.
///
/// `Truncation` and `Resolution` are the two "the grid cannot represent this
/// request" failures; they carry enough context to state which precondition
/// broke. `Gated` is reserved for the harness: numerics never ran because the
/// exact-arithmetic admissibility check rejected the parameter tuple.
#[derive(Debug, thiserror::Error)]
pub enum CoreError {
    #[error("grid: {0}")]
    Grid(String),
    #[error("index range: {0}")]
    Range(String),
    #[error("parameter: {0}")]
    Parameter(String),
    #[error("truncation: {0}")]
    Truncation(String),
    #[error("resolution: {0}")]
    Resolution(String),
    #[error("singular multiplier: {0}")]
    SingularMultiplier(String),
    #[error("non-finite sample values: {0}")]
    NonFinite(String),
    #[error("admissibility gate rejected tuple for {theorem}: verdict {verdict:?}")]
    Gated {
        theorem: String,
        verdict: fsx_exact::Verdict,
        certificate: Box<fsx_exact::Certificate>,
    },
    #[error("exact checker: {0}")]
    Exact(#[from] fsx_exact::ExactError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("file format: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
