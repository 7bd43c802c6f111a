//! Truncated Fourier Transform over prime fields, with exact operation counting.
//!
//! The crate implements the in-place radix-2 number-theoretic transform in
//! bit-reversed output order, the truncated variant that computes only the
//! first `ell` outputs while skipping every butterfly outside the per-stage
//! truncation bound, and the recursive inversion of the truncated transform
//! from `ell` values plus a zero tail. On top of those sit TFT-based
//! polynomial multiplication and a small CLI.
//!
//! All transforms run against a [`TransformPlan`] (precomputed twiddles in
//! bit-reversed order) and report their ring-operation counts through an
//! [`OpCounter`], so the claimed cost bounds can be checked exactly rather
//! than benchmarked.

pub mod cli;
pub mod invtft;
pub mod plan;
pub mod polymul;
pub mod ring;
pub mod tft;
pub mod transform;

pub use invtft::inv_tft;
pub use plan::{bit_reverse, TransformPlan};
pub use polymul::{multiply_schoolbook, multiply_tft, Polynomial};
pub use ring::{FieldElement, PrimeField};
pub use tft::{tft_cost_bound, tft_forward};
pub use transform::{dft_inplace, dft_naive, idft_inplace, OpCounter};

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The requested modulus is not an odd prime.
    #[error("modulus {0} is not an odd prime")]
    NotOddPrime(u64),

    /// Zero has no multiplicative inverse.
    #[error("zero is not invertible")]
    ZeroInverse,

    /// Transform sizes must be powers of two, at least 2.
    #[error("transform size {0} is not a power of two >= 2")]
    BadTransformSize(usize),

    /// No element of multiplicative order `n` exists modulo `modulus`.
    #[error("no root of order {n} modulo {modulus} ({n} does not divide {modulus} - 1)")]
    NoRootOfOrder { n: usize, modulus: u64 },

    /// The supplied element does not have the order required of the
    /// transform root.
    #[error("{root} is not a principal root of order {n} modulo {modulus}")]
    NotAPrincipalRoot { root: u64, n: usize, modulus: u64 },

    /// A bit count or index was outside the range a reversal accepts.
    #[error("index {index} does not fit in {bits} bits")]
    IndexOutOfRange { index: usize, bits: usize },

    /// A stage or twiddle lookup was outside the plan's range.
    #[error("stage {stage} / block {block} invalid for a {p}-stage plan")]
    StageOutOfRange {
        stage: usize,
        block: usize,
        p: usize,
    },

    /// A buffer did not match the plan's transform size.
    #[error("buffer length {got}, plan expects {expected}")]
    LengthMismatch { expected: usize, got: usize },

    /// The requested output count is outside `1..=n`.
    #[error("output count {ell} out of range 1..={n}")]
    EllOutOfRange { ell: usize, n: usize },

    /// A buffer position past the first `ell` held a nonzero value.
    #[error("position {index} must be zero (only the first {ell} entries may be set)")]
    NonzeroTail { index: usize, ell: usize },

    /// A block push-up was requested on a region that is not aligned.
    #[error("region start {start} not aligned to power-of-two length {len}")]
    MisalignedRegion { start: usize, len: usize },

    /// A push range did not match the butterfly layout of its stage.
    #[error("positions {from}..={to} do not form a valid stage-{stage} push range")]
    InvalidPushRange {
        from: usize,
        to: usize,
        stage: usize,
    },

    /// A product would need a larger power-of-two transform than the
    /// modulus supports.
    #[error(
        "product needs transform size {needed}, modulus {modulus} supports at most {supported}"
    )]
    ProductTooLarge {
        needed: usize,
        modulus: u64,
        supported: usize,
    },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
