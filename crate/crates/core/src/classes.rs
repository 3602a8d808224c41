//! Symbolic error classes attached to leading-order values.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Multiplicative error attached to a leading term as `g → ∞`.
///
/// The order is by severity so that combining values can take the maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ErrorClass {
    /// No error: the value is exact.
    Exact,
    /// `1 + O(1/g)`
    OneOverG,
    /// `1 + O(1/g^{1/4})`
    OneOverGQuarter,
    /// `1 + O(1/g)·O(1)^p`
    OneOverGTimesCp,
    /// `O(1)`: the leading formula is only correct up to a bounded factor.
    LowGenus,
    /// Only an upper bound `≤ C^p · expr` with unspecified `C`.
    BoundOnly,
}

impl ErrorClass {
    pub fn combine(self, other: ErrorClass) -> ErrorClass {
        self.max(other)
    }

    pub fn is_exact(self) -> bool {
        self == ErrorClass::Exact
    }

    /// Relative error bound `K·rate(g)` with the caller's constant `K`, or
    /// `None` for classes that do not bound the error.
    pub fn relative_bound(self, g: f64, k: f64) -> Option<f64> {
        match self {
            ErrorClass::Exact => Some(0.0),
            ErrorClass::OneOverG | ErrorClass::OneOverGTimesCp => Some(k / g),
            ErrorClass::OneOverGQuarter => Some(k / g.powf(0.25)),
            ErrorClass::LowGenus | ErrorClass::BoundOnly => None,
        }
    }
}

impl fmt::Display for ErrorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorClass::Exact => "exact",
            ErrorClass::OneOverG => "1+O(1/g)",
            ErrorClass::OneOverGQuarter => "1+O(1/g^(1/4))",
            ErrorClass::OneOverGTimesCp => "1+O(1/g)*O(1)^p",
            ErrorClass::LowGenus => "O(1)",
            ErrorClass::BoundOnly => "<= C^p",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combining_takes_the_worse_class() {
        assert_eq!(ErrorClass::Exact.combine(ErrorClass::OneOverG), ErrorClass::OneOverG);
        assert_eq!(ErrorClass::LowGenus.combine(ErrorClass::OneOverG), ErrorClass::LowGenus);
        assert_eq!(ErrorClass::BoundOnly.combine(ErrorClass::Exact), ErrorClass::BoundOnly);
    }
}
