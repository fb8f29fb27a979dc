//! Exact R(p,q)-deformed quantum calculus and its p-adic extensions.
//!
//! Rational computations use `BigRational` throughout; p-adic values are
//! truncated to a stated relative precision.

pub mod arith;
pub mod cli;
pub mod deform;
pub mod error;
pub mod gammabeta;
pub mod padicfun;
pub mod quadrature;
pub mod report;
pub mod series;
pub mod spinzeta;

pub use error::{Error, Result};
