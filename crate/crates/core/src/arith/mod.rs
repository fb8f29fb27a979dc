//! Exact rational helpers and truncated p-adic arithmetic.

pub mod padic;
pub mod rational;
pub mod scalar;

pub use padic::PadicNumber;
pub use rational::*;
pub use scalar::Scalar;
