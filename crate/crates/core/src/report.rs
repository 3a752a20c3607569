//! Outcome records shared by the identity checkers.

use num_traits::{Signed, Zero};

use crate::rational::{format, to_f64, Rational};

/// Both sides of an identity evaluated exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactCheck {
    pub name: String,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl ExactCheck {
    pub fn new(name: impl Into<String>, lhs: Rational, rhs: Rational) -> Self {
        Self { name: name.into(), lhs, rhs }
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn discrepancy(&self) -> Rational {
        &self.lhs - &self.rhs
    }

    pub fn summary(&self) -> String {
        if self.holds() {
            format!("{}: {} (exact)", self.name, format(&self.lhs))
        } else {
            format!(
                "{}: lhs {} != rhs {} (diff {})",
                self.name,
                format(&self.lhs),
                format(&self.rhs),
                format(&self.discrepancy())
            )
        }
    }
}

/// A numeric comparison with the tolerance it was judged against.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericCheck {
    pub name: String,
    pub computed: f64,
    pub reference: f64,
    /// Relative tolerance with a unit floor: pass iff `|c - r| <= tol * max(|r|, 1)`.
    pub tolerance: f64,
}

impl NumericCheck {
    pub fn new(name: impl Into<String>, computed: f64, reference: f64, tolerance: f64) -> Self {
        Self { name: name.into(), computed, reference, tolerance }
    }

    pub fn abs_error(&self) -> f64 {
        (self.computed - self.reference).abs()
    }

    pub fn rel_error(&self) -> f64 {
        self.abs_error() / self.reference.abs().max(1.0)
    }

    pub fn passes(&self) -> bool {
        self.rel_error() <= self.tolerance
    }
}

/// Worst relative error of a set of exact checks, as a float, for reporting.
pub fn worst_exact(checks: &[ExactCheck]) -> f64 {
    checks
        .iter()
        .map(|c| {
            let d = c.discrepancy();
            if d.is_zero() {
                0.0
            } else {
                to_f64(&d.abs()) / to_f64(&c.rhs.abs()).max(1.0)
            }
        })
        .fold(0.0, f64::max)
}
