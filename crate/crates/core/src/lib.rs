//! Exact coefficients of cyclotomic polynomials Φₙ and their cofactors
//! Ψₙ = (xⁿ − 1)/Φₙ.
//!
//! Ternary coefficients a_pqr(k) are available two independent ways: a full
//! power-series expansion ([`poly`]) and Kaplan's O(p) per-coefficient sum
//! over truncated binary coefficients ([`kaplan`], built on [`binary`]).
//! [`props`] analyses coefficient sets (flatness, jump one, convexity,
//! optimality), [`semigroup`] covers the numerical-semigroup view of binary
//! coefficients and [`families`] builds the extremal Möller-type families.

pub mod arith;
pub mod binary;
pub mod cli;
mod error;
pub mod families;
pub mod kaplan;
pub mod poly;
pub mod props;
pub mod semigroup;

pub use error::{Error, Result};
