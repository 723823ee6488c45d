//! Exact coefficient arithmetic: Laurent polynomials in u = q^{1/6},
//! normalized rational functions, truncated power series, and the quantum /
//! q-combinatorial scalar families built on them.
//!
//! Public items:
//! - [`SixthPowerLaurent`]: sparse Laurent polynomial, BigInt coefficients.
//! - [`RationalQ`]: quotient of two `SixthPowerLaurent`, eagerly normalized.
//! - [`TruncatedSeries`]: dense element of Z[[q]]/q^{N+1}Z[[q]].
//! - [`quantum_int`], [`quantum_factorial`], [`quantum_binom`]: [n], [n]!,
//!   [a brack b].
//! - [`q_pochhammer`], [`q_binom`], [`q_multinom`]: (q)_k and Gaussian
//!   binomial/multinomial polynomials.
//! - [`QError`]: division/conversion failures; exactness violations are
//!   surfaced, never truncated away.

mod laurent;
mod quantum;
mod rational;
mod series;

pub use laurent::SixthPowerLaurent;
pub use quantum::{q_binom, q_multinom, q_pochhammer, quantum_binom, quantum_factorial, quantum_int};
pub use rational::RationalQ;
pub use series::TruncatedSeries;

/// Arithmetic failures. Non-divisibility is a mathematical assertion failing,
/// not a recoverable rounding situation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("exact division failed: {context}")]
    NonDivisible { context: String },
    #[error("exponent {0}/6 is not a nonnegative integer power of q")]
    NotASeriesExponent(i64),
    #[error("{0}")]
    Domain(String),
}
