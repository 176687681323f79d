//! Sieve-backed Möbius/Mertens arithmetic, sign-frequency distributions, and a
//! seeded lazy-random-walk model of the Mertens function.
//!
//! The crate is organized around immutable tables produced by segmented sieves
//! ([`arith::MobiusTable`], [`arith::OmegaTable`], [`arith::MertensSeries`])
//! and pure statistics computed over them: exact sign frequencies and their
//! limiting step CDF ([`dist`]), distinct-prime-divisor histograms and
//! normal-approximation diagnostics ([`omega`]), growth-ratio reports for the
//! classical |M(n)| bounds ([`bounds`]), and a lazy ±1/0 random walk whose step
//! probabilities mirror the Möbius sign frequencies, simulated as deterministic
//! seeded ensembles ([`walk`]).

pub mod arith;
pub mod bounds;
pub mod dist;
mod error;
pub mod omega;
pub mod sigfmt;
pub mod walk;

pub use error::{Error, Result};

use std::f64::consts::PI;

/// Asymptotic density of each Möbius sign class {μ = +1} and {μ = −1}: 3/π².
pub const SIGN_DENSITY: f64 = 3.0 / (PI * PI);

/// Asymptotic density of the squarefree integers: 6/π².
pub const SQUAREFREE_DENSITY: f64 = 6.0 / (PI * PI);

/// Exact rational type used wherever frequency identities must hold with zero
/// tolerance. i128 components keep q(n)·n and M(n)² exact up to the 10⁸ sieve
/// ceiling with room to spare.
pub type Rational = num::rational::Ratio<i128>;
