use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// A π-adic valuation: a natural number, or infinity for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn is_finite(self) -> bool {
        matches!(self, Valuation::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    /// `self >= n`, treating infinity as larger than everything.
    pub fn at_least(self, n: u32) -> bool {
        self >= Valuation::Finite(n)
    }
}

impl From<u32> for Valuation {
    fn from(v: u32) -> Self {
        Valuation::Finite(v)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_u32(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different coefficient rings")]
    RingMismatch,
    #[error("operands belong to different polynomial algebras")]
    AlgebraMismatch,
    #[error("not divisible by pi^{required} (valuation is {valuation})")]
    NotDivisible { required: u32, valuation: Valuation },
    #[error("division by zero")]
    DivisionByZero,
    #[error("not a Frobenius lift: image of {generator} is not congruent to {generator}^q mod pi (difference mod pi: {witness})")]
    NotAFrobeniusLift { generator: String, witness: String },
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error(
        "ghost vector is not in the image of the ghost map (component {index} is not divisible)"
    )]
    NotInGhostImage { index: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("{operation} needs a Witt vector of length at least 2")]
    TooShort { operation: &'static str },
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("enumeration budget exceeded: {trials} candidates")]
    BudgetExceeded { trials: u128 },
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error("suite '{suite}' is incompatible with this ring: {reason}")]
    IncompatibleRing { suite: String, reason: String },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
