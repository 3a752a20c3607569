//! Higher-order q-Euler families: exact generating-function expansion,
//! direct series summation, and the identities tying them together.

mod gf;
mod identities;
mod series_sum;
mod spec;

pub use gf::{generating_function, gf_expand, gf_value};
pub use identities::{
    binomial_shift_in_x, check_bernoulli_difference, check_difference_identity, check_distribution,
    specialization_checks,
};
pub use series_sum::{series_sum, SeriesForm};
pub use spec::{EvalPath, FamilyKind, FamilySpec, NumericFamilySpec, PolyValue, TruncationReport, Value};
