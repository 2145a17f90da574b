//! Scan statistics for empirical distributions on the unit interval.
//!
//! Given a sorted sample `u(1) <= ... <= u(n)` in `[0, 1]` (with the
//! conventions `u(0) = 0` and `u(n+1) = 1`), this crate computes windowed
//! extrema of normalized interval counts — scan statistics — together with
//! the machinery needed to calibrate them:
//!
//! * [`scan`] — pairwise statistics in two normalizations (length-based
//!   "studentized" and mass-based "standardized"), one- and two-sided scans
//!   over a length window, a brute-force reference path and an exact fast
//!   path with certified length pruning, plus classical supremum statistics
//!   (Kolmogorov–Smirnov, Eicker-type suprema, minimum spacing).
//! * [`limits`] — the asymptotic laws of those scans in Gumbel τ-coordinates,
//!   the normalizing sequence, the exact minimum-spacing law, and the
//!   Kolmogorov series; conversions between observed values, τ, p-values and
//!   critical values.
//! * [`deviations`] — large-deviation rate functions, cumulant transforms and
//!   Chernoff / moderate-deviation tail bounds used as diagnostics and as
//!   test oracles.
//! * [`sample`] — ingestion (sorting, CDF transforms under a null
//!   distribution) and reproducible generation of uniform order statistics.
//! * [`mc`] — a seeded, schedule-independent Monte Carlo harness that
//!   replicates any statistic, compares empirical laws against the limit
//!   laws, and persists results.
//!
//! Numeric entry points are generic over the scalar type through
//! [`num_traits::Float`]; the crate-root aliases [`Real`] and [`Sample`] fix
//! the default `f64` instantiation used by the simulation harness and the
//! command-line tool.

// Guards of the form `!(x >= 0)` are deliberate throughout: unlike `x < 0`
// they also reject NaN, which must never slip past a domain check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod deviations;
pub mod limits;
pub mod mc;
pub mod sample;
pub mod scan;

/// Default scalar type for simulation and CLI use.
pub type Real = f64;

/// A sorted unit-interval sample over the default scalar.
pub type Sample = sample::SortedSample<Real>;

pub use limits::Law;
pub use sample::{NullDistribution, SortedSample};
pub use scan::{ScanMode, ScanOutcome, ScanSpec, Side, Variant};

/// Errors shared by every module of the crate.
///
/// The CLI maps these onto exit-code classes: input-shape problems
/// (`EmptyInput`, `OutOfUnitInterval`, `NonFiniteValue`) are parse errors,
/// `Io` is an I/O error, and everything else is a domain error.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// The input holds no values.
    #[error("input contains no values")]
    EmptyInput,
    /// A raw value lies outside `[0, 1]`.
    #[error("value {value} at position {index} lies outside [0, 1]")]
    OutOfUnitInterval { index: usize, value: f64 },
    /// A raw value is NaN or infinite.
    #[error("value at position {index} is not finite")]
    NonFiniteValue { index: usize },
    /// A parameter violates a documented precondition.
    #[error("{0}")]
    Domain(String),
    /// The pair spans the whole sample, so the length normalizer vanishes.
    #[error("pair ({i}, {j}) spans the whole sample; the length normalizer is zero")]
    DegenerateLength { i: usize, j: usize },
    /// The pair's empirical mass is 0 or 1, so the mass normalizer vanishes.
    #[error("pair ({i}, {j}) has span {span}; the mass normalizer is zero")]
    DegenerateSpan { i: usize, j: usize, span: f64 },
    /// No admissible index pair exists in the requested length window.
    #[error("no admissible pair with length in [{k}, {l}] for a sample of size {n}")]
    EmptyWindow { k: usize, l: usize, n: usize },
    /// Every candidate index is skipped by the degeneracy rules.
    #[error("every index is degenerate for this statistic")]
    AllDegenerate,
    /// The limit law does not calibrate the statistic that was replicated.
    #[error("law {law} does not calibrate statistic {statistic}")]
    IncompatibleLaw { law: String, statistic: String },
    /// A single replicate failed; the derived seed pinpoints it.
    #[error("replicate {replicate} (derived seed {derived_seed:#018x}) failed: {source}")]
    ReplicateFailed {
        replicate: usize,
        derived_seed: u64,
        #[source]
        source: Box<Error>,
    },
    /// A stored experiment record disagrees with the recomputed digest.
    #[error("stored digest {stored} does not match recomputed digest {recomputed}")]
    DigestMismatch { stored: String, recomputed: String },
    /// An I/O failure, with the offending path when known.
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable name for serialization and exit-code mapping.
    pub fn kind_name(&self) -> &'static str {
        match self {
            Error::EmptyInput => "EmptyInput",
            Error::OutOfUnitInterval { .. } => "OutOfUnitInterval",
            Error::NonFiniteValue { .. } => "NonFiniteValue",
            Error::Domain(_) => "DomainError",
            Error::DegenerateLength { .. } => "DegenerateLength",
            Error::DegenerateSpan { .. } => "DegenerateSpan",
            Error::EmptyWindow { .. } => "EmptyWindow",
            Error::AllDegenerate => "AllDegenerate",
            Error::IncompatibleLaw { .. } => "IncompatibleLaw",
            Error::ReplicateFailed { .. } => "ReplicateFailed",
            Error::DigestMismatch { .. } => "DigestMismatch",
            Error::Io(_) => "IoError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
