//! Exact arithmetic for π-typical Witt vectors, Frobenius lifts and
//! π-derivations over 𝔽_q[t], ℤ and ℤ[i].

pub mod cli;
pub mod coeff;
pub mod delta;
pub mod error;
pub mod harness;
pub mod poly;
pub mod witt;

pub use error::{Error, Result, Valuation};
