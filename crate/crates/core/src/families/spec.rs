use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::dirichlet::DirichletCharacter;
use crate::error::{Error, Result};
use crate::rational::{int, to_f64, Rational};

/// Which generating function a [`FamilySpec`] names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    /// `(2/(q e^t + 1))^r e^{xt}`
    QEulerOrderR,
    /// `2^r / prod_{j=1..r} (1 + q^{h-r+j-1} e^t) * e^{xt}`
    QEulerHR,
    /// `2^r / prod_j (q^{w_j} e^{w_j t} + 1) * e^{xt}`
    BarnesQEuler,
    /// `2^r / prod_j (q^{a_j} e^{w_j t} + 1) * e^{xt}`
    BarnesQEulerTwist,
    /// Order-1 character twist; `r` must be 1.
    ChiQEuler,
    /// `(2 sum_{a<f} (-q)^a chi(a) e^{at} / (q^f e^{ft} + 1))^r e^{xt}`
    ChiQEulerOrderR,
    /// `prod_j 2 sum_{b<f} chi(b) q^{a_j b} (-1)^b e^{w_j b t} / (q^{a_j f} e^{w_j f t} + 1) * e^{xt}`
    ChiBarnesQEuler,
    /// `t^r e^{xt} / prod_j (e^{a_j t} - 1)`; the `a_j` live in `weights`.
    BarnesBernoulli,
    /// `2^r / prod_j (e^{w_j t} + 1) * e^{xt}`
    ClassicalBarnesEuler,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 9] = [
        FamilyKind::QEulerOrderR,
        FamilyKind::QEulerHR,
        FamilyKind::BarnesQEuler,
        FamilyKind::BarnesQEulerTwist,
        FamilyKind::ChiQEuler,
        FamilyKind::ChiQEulerOrderR,
        FamilyKind::ChiBarnesQEuler,
        FamilyKind::BarnesBernoulli,
        FamilyKind::ClassicalBarnesEuler,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::QEulerOrderR => "qeuler",
            FamilyKind::QEulerHR => "qeuler-hr",
            FamilyKind::BarnesQEuler => "barnes",
            FamilyKind::BarnesQEulerTwist => "barnes-twist",
            FamilyKind::ChiQEuler => "chi-qeuler",
            FamilyKind::ChiQEulerOrderR => "chi-qeuler-r",
            FamilyKind::ChiBarnesQEuler => "chi-barnes",
            FamilyKind::BarnesBernoulli => "barnes-bernoulli",
            FamilyKind::ClassicalBarnesEuler => "classical-barnes",
        }
    }

    pub fn has_character(self) -> bool {
        matches!(self, FamilyKind::ChiQEuler | FamilyKind::ChiQEulerOrderR | FamilyKind::ChiBarnesQEuler)
    }

    /// Kinds whose parameters include a weight vector.
    pub fn uses_weights(self) -> bool {
        matches!(
            self,
            FamilyKind::BarnesQEuler
                | FamilyKind::BarnesQEulerTwist
                | FamilyKind::ChiBarnesQEuler
                | FamilyKind::BarnesBernoulli
                | FamilyKind::ClassicalBarnesEuler
        )
    }

    pub fn uses_twists(self) -> bool {
        matches!(self, FamilyKind::BarnesQEulerTwist | FamilyKind::ChiBarnesQEuler)
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown family '{s}'")))
    }
}

/// Parameters of one polynomial family instance on the exact path.
///
/// `q` and `x` are rationals; weights and twists are positive integers so
/// that every `q^{w_j}` stays rational.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub q: Rational,
    pub x: Rational,
    pub r: usize,
    /// Only read by [`FamilyKind::QEulerHR`].
    pub h: i64,
    pub weights: Vec<i64>,
    pub twists: Vec<i64>,
    pub chi: Option<DirichletCharacter>,
}

impl FamilySpec {
    fn base(kind: FamilyKind, q: Rational, x: Rational, r: usize) -> Self {
        Self { kind, q, x, r, h: 0, weights: Vec::new(), twists: Vec::new(), chi: None }
    }

    pub fn q_euler(q: Rational, x: Rational, r: usize) -> Self {
        Self::base(FamilyKind::QEulerOrderR, q, x, r)
    }

    pub fn q_euler_hr(q: Rational, x: Rational, h: i64, r: usize) -> Self {
        Self { h, ..Self::base(FamilyKind::QEulerHR, q, x, r) }
    }

    pub fn barnes(q: Rational, x: Rational, weights: Vec<i64>) -> Self {
        let r = weights.len();
        Self { weights, ..Self::base(FamilyKind::BarnesQEuler, q, x, r) }
    }

    pub fn barnes_twist(q: Rational, x: Rational, weights: Vec<i64>, twists: Vec<i64>) -> Self {
        let r = weights.len();
        Self { weights, twists, ..Self::base(FamilyKind::BarnesQEulerTwist, q, x, r) }
    }

    pub fn chi_q_euler(q: Rational, x: Rational, chi: DirichletCharacter) -> Self {
        Self { chi: Some(chi), ..Self::base(FamilyKind::ChiQEuler, q, x, 1) }
    }

    pub fn chi_q_euler_order(q: Rational, x: Rational, r: usize, chi: DirichletCharacter) -> Self {
        Self { chi: Some(chi), ..Self::base(FamilyKind::ChiQEulerOrderR, q, x, r) }
    }

    pub fn chi_barnes(
        q: Rational,
        x: Rational,
        weights: Vec<i64>,
        twists: Vec<i64>,
        chi: DirichletCharacter,
    ) -> Self {
        let r = weights.len();
        Self { weights, twists, chi: Some(chi), ..Self::base(FamilyKind::ChiBarnesQEuler, q, x, r) }
    }

    /// Barnes' multiple Bernoulli polynomials `B_n(x, r | a)`; `q` is unused.
    pub fn barnes_bernoulli(x: Rational, a: Vec<i64>) -> Self {
        let r = a.len();
        Self { weights: a, ..Self::base(FamilyKind::BarnesBernoulli, int(1), x, r) }
    }

    /// `q`-free Barnes multiple Euler polynomials; `q` is fixed to 1.
    pub fn classical_barnes(x: Rational, weights: Vec<i64>) -> Self {
        let r = weights.len();
        Self { weights, ..Self::base(FamilyKind::ClassicalBarnesEuler, int(1), x, r) }
    }

    pub fn with_x(&self, x: Rational) -> Self {
        Self { x, ..self.clone() }
    }

    pub fn with_q(&self, q: Rational) -> Self {
        Self { q, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        let kind = self.kind;
        if self.r == 0 {
            return Err(Error::Usage("order r must be at least 1".into()));
        }
        if kind == FamilyKind::ChiQEuler && self.r != 1 {
            return Err(Error::Usage("chi-qeuler has order 1; use chi-qeuler-r".into()));
        }
        if kind.uses_weights() {
            if self.weights.len() != self.r {
                return Err(Error::Usage(format!("expected {} weights, got {}", self.r, self.weights.len())));
            }
            if self.weights.iter().any(|&w| w <= 0) {
                return Err(Error::Domain("weights must be positive integers".into()));
            }
        }
        if kind.uses_twists() {
            if self.twists.len() != self.r {
                return Err(Error::Usage(format!("expected {} twists, got {}", self.r, self.twists.len())));
            }
            if self.twists.iter().any(|&a| a <= 0) {
                return Err(Error::Domain("twist exponents must be positive integers".into()));
            }
        }
        match (&self.chi, kind.has_character()) {
            (None, true) => return Err(Error::Usage(format!("family {kind} needs a character"))),
            (Some(_), false) => return Err(Error::Usage(format!("family {kind} takes no character"))),
            (Some(chi), true) if chi.conductor() % 2 == 0 => {
                return Err(Error::Unsupported("character conductor must be odd".into()))
            }
            _ => {}
        }
        if self.q.is_zero() && !matches!(kind, FamilyKind::BarnesBernoulli | FamilyKind::ClassicalBarnesEuler)
        {
            return Err(Error::Degenerate("q must be nonzero".into()));
        }
        Ok(())
    }

    /// Real-valued copy for the numeric path.
    pub fn to_numeric(&self) -> NumericFamilySpec {
        NumericFamilySpec {
            kind: self.kind,
            q: to_f64(&self.q),
            x: to_f64(&self.x),
            r: self.r,
            h: self.h,
            weights: self.weights.iter().map(|&w| w as f64).collect(),
            twists: self.twists.iter().map(|&a| a as f64).collect(),
            chi: self.chi.clone(),
        }
    }

    /// True when `q` lies in the open interval `(0, 1)`.
    pub fn q_in_unit_interval(&self) -> bool {
        self.q.is_positive() && self.q < Rational::one()
    }
}

/// Parameters of a family instance on the numeric path.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericFamilySpec {
    pub kind: FamilyKind,
    pub q: f64,
    pub x: f64,
    pub r: usize,
    pub h: i64,
    pub weights: Vec<f64>,
    pub twists: Vec<f64>,
    pub chi: Option<DirichletCharacter>,
}

impl NumericFamilySpec {
    pub fn validate(&self) -> Result<()> {
        if self.r == 0 {
            return Err(Error::Usage("order r must be at least 1".into()));
        }
        if !(self.q.is_finite() && self.x.is_finite()) {
            return Err(Error::Usage("q and x must be finite".into()));
        }
        if self.kind.uses_weights() && self.weights.len() != self.r {
            return Err(Error::Usage(format!("expected {} weights", self.r)));
        }
        if self.kind.uses_twists() && self.twists.len() != self.r {
            return Err(Error::Usage(format!("expected {} twists", self.r)));
        }
        if self.weights.iter().chain(&self.twists).any(|&v| v.is_nan() || v <= 0.0) {
            return Err(Error::Domain("weights and twists must be positive".into()));
        }
        if self.kind.has_character() != self.chi.is_some() {
            return Err(Error::Usage(format!("character presence does not match family {}", self.kind)));
        }
        Ok(())
    }
}

/// Which evaluation produced a [`PolyValue`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalPath {
    GeneratingFunction,
    SeriesSum,
}

/// Truncation bookkeeping of a numeric series evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationReport {
    pub terms: u64,
    /// Per-index cutoffs (one entry for the single-index forms).
    pub cutoffs: Vec<u64>,
    /// Upper bound on the absolute truncation error.
    pub tail_bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(Rational),
    Numeric(Complex64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolyValue {
    pub n: usize,
    pub value: Value,
    pub path: EvalPath,
    pub truncation: Option<TruncationReport>,
}

impl PolyValue {
    pub fn numeric(&self) -> Complex64 {
        match &self.value {
            Value::Exact(r) => Complex64::new(to_f64(r), 0.0),
            Value::Numeric(z) => *z,
        }
    }
}
