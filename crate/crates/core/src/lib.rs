//! Higher-order q-Euler numbers and polynomials, their Barnes-type and
//! character-twisted variants, and the q-zeta functions interpolating them.
//!
//! Three evaluation routes check one another:
//!
//! * exact expansion of generating functions over the rationals ([`families::gf_expand`]),
//! * direct summation of the explicit series ([`families::series_sum`], [`qzeta`]),
//! * finite-level fermionic p-adic sums ([`padic`]).

pub mod combinat;
pub mod dirichlet;
pub mod error;
pub mod families;
pub mod multisum;
pub mod padic;
pub mod quadrature;
pub mod qzeta;
pub mod rational;
pub mod report;
pub mod series;
pub mod summation;

pub use combinat::{binom, qbinom, QBracketContext};
pub use dirichlet::{chi_eval, enumerate_characters, DirichletCharacter};
pub use error::{Error, Result};
pub use families::{gf_expand, series_sum, FamilyKind, FamilySpec, NumericFamilySpec, PolyValue, SeriesForm};
pub use padic::{IntegrandPoly, PadicInt};
pub use qzeta::{l_qr, zeta_qr, ComplexVal, ZetaParams};
pub use rational::Rational;
pub use report::{ExactCheck, NumericCheck};
pub use series::TruncSeries;
