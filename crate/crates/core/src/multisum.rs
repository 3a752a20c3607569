//! Nested alternating sums over several indices with rigorous truncation bounds.
//!
//! A [`MultiSum`] evaluates
//!
//! ```text
//! prefactor * sum_{m_1..m_r} prod_i w_i(m_i) * g(offset_1 + ... + offset_r)
//! ```
//!
//! where each axis contributes a list of `(offset, weight)` points. Geometric
//! axes carry weights `c(m) chi(m) (-1)^m y^m` at offset `scale * m`; finite
//! axes carry an explicit point list.
//!
//! Truncation bounds use `u^k <= (k/(e*theta))^k e^{theta*u}` so that every
//! geometric axis is dominated by a geometric series of ratio
//! `y * e^{theta * scale} < 1`; `theta` is chosen from a fixed grid.
//!
//! Axes with ratio `y >= 1` only make sense for polynomial `g`. They are summed
//! in the Abel sense: ratio `> 1` by reflection
//! `sum_{m>=0} z^m P(m) = -sum_{k>=1} z^{-k} P(-k)`, ratio `= 1` by the Euler
//! transform, which is a finite linear functional on polynomials.

use num_complex::Complex64;

use crate::dirichlet::DirichletCharacter;
use crate::error::{Error, Result};
use crate::summation::ComplexSum;

/// Polynomial factor multiplying the geometric weight on an axis.
#[derive(Debug, Clone, PartialEq)]
pub enum Coef {
    One,
    /// `C(m + r - 1, m)`
    Binomial {
        r: usize,
    },
    /// Gaussian binomial `[m + r - 1 choose m]_q`, `0 < q < 1`.
    QBinomial {
        q: f64,
        r: usize,
    },
}

impl Coef {
    fn eval(&self, m: i64) -> f64 {
        match *self {
            Coef::One => 1.0,
            Coef::Binomial { r } => (1..r).fold(1.0, |acc, i| acc * (m as f64 + i as f64) / i as f64),
            Coef::QBinomial { q, r } => (1..r)
                .fold(1.0, |acc, i| acc * (1.0 - q.powi((m + i as i64) as i32)) / (1.0 - q.powi(i as i32))),
        }
    }

    /// `(K, d)` with `|c(m)| <= K (m+1)^d` for `m >= 0`.
    fn majorant(&self) -> (f64, u32) {
        match *self {
            Coef::One => (1.0, 0),
            Coef::Binomial { r } => (1.0, r.saturating_sub(1) as u32),
            Coef::QBinomial { q, r } => (1.0 / (1..r).map(|i| 1.0 - q.powi(i as i32)).product::<f64>(), 0),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub offset: f64,
    pub weight: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Axis {
    Geometric { ratio: f64, scale: f64, chi: Option<DirichletCharacter>, coef: Coef },
    Finite(Vec<Point>),
}

impl Axis {
    pub fn geometric(ratio: f64, scale: f64) -> Self {
        Axis::Geometric { ratio, scale, chi: None, coef: Coef::One }
    }
}

/// Growth model of the summand: `|g(u)| <= constant * (base + |u|)^degree`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Growth {
    pub degree: f64,
    pub base: f64,
    pub constant: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Regime {
    Direct,
    Reflected,
    Euler,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiSum {
    pub prefactor: f64,
    pub axes: Vec<Axis>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SumResult {
    pub value: Complex64,
    pub tail_bound: f64,
    /// `16 eps * sum |terms|`, a generous bound on accumulated rounding.
    pub rounding_bound: f64,
    pub cutoffs: Vec<u64>,
    pub terms: u64,
}

const THETA_GRID: [f64; 14] = [0.01, 0.02, 0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95];
const MAX_CUTOFF: u64 = 50_000_000;

fn regime(ratio: f64) -> Regime {
    if ratio < 1.0 {
        Regime::Direct
    } else if ratio > 1.0 {
        Regime::Reflected
    } else {
        Regime::Euler
    }
}

/// `sup_{u >= 0} u^k e^{-theta u}`.
fn power_sup(k: f64, theta: f64) -> f64 {
    if k <= 0.0 {
        1.0
    } else {
        (k / (std::f64::consts::E * theta)).powf(k)
    }
}

/// Euler-transform weights: `sum_m (-1)^m P(m) = sum_{m=0..deg} w_m P(m)` for `deg P <= deg`.
pub fn euler_weights(deg: usize) -> Vec<f64> {
    (0..=deg)
        .map(|m| {
            let mut s = 0.0;
            let mut binom = 1.0; // C(k, m) for k = m
            for k in m..=deg {
                if k > m {
                    binom = binom * k as f64 / (k - m) as f64;
                }
                s += binom / 2f64.powi(k as i32 + 1);
            }
            if m % 2 == 0 {
                s
            } else {
                -s
            }
        })
        .collect()
}

struct GeoBound {
    rho: f64,
    constant: f64,
    start: i32,
}

impl MultiSum {
    fn check(&self, growth: &Growth) -> Result<()> {
        for axis in &self.axes {
            if let Axis::Geometric { ratio, chi, coef, scale } = axis {
                if !(ratio.is_finite() && *ratio > 0.0 && *scale > 0.0) {
                    return Err(Error::Domain("axis ratio and scale must be positive".into()));
                }
                let r = regime(*ratio);
                if r != Regime::Direct {
                    if chi.is_some() || *coef != Coef::One {
                        return Err(Error::Divergent(
                            "regularized axes support only plain geometric weights".into(),
                        ));
                    }
                    if growth.degree.fract() != 0.0 || growth.degree < 0.0 {
                        return Err(Error::Divergent("regularized axes need a polynomial summand".into()));
                    }
                }
            }
        }
        Ok(())
    }

    fn theta_max(&self) -> f64 {
        self.axes
            .iter()
            .filter_map(|a| match a {
                Axis::Geometric { ratio, scale, coef, .. } => {
                    let r0 = match regime(*ratio) {
                        Regime::Direct => *ratio,
                        Regime::Reflected => 1.0 / ratio,
                        Regime::Euler => return None,
                    };
                    let extra = if coef.majorant().1 > 0 { 1.0 } else { 0.0 };
                    Some(-r0.ln() / (scale + extra))
                }
                Axis::Finite(_) => None,
            })
            .fold(f64::INFINITY, f64::min)
    }

    fn points(&self, axis: &Axis, cutoff: u64, degree: usize) -> Vec<Point> {
        match axis {
            Axis::Finite(points) => points.clone(),
            Axis::Geometric { ratio, scale, chi, coef } => match regime(*ratio) {
                Regime::Direct => (0..=cutoff as i64)
                    .map(|m| {
                        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                        let mut w = Complex64::new(sign * ratio.powi(m as i32) * coef.eval(m), 0.0);
                        if let Some(chi) = chi {
                            w *= chi.eval(m);
                        }
                        Point { offset: scale * m as f64, weight: w }
                    })
                    .collect(),
                Regime::Reflected => (1..=cutoff as i64)
                    .map(|k| {
                        let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
                        Point {
                            offset: -scale * k as f64,
                            weight: Complex64::new(sign * ratio.powi(-(k as i32)), 0.0),
                        }
                    })
                    .collect(),
                Regime::Euler => euler_weights(degree)
                    .into_iter()
                    .enumerate()
                    .map(|(m, w)| Point { offset: scale * m as f64, weight: Complex64::new(w, 0.0) })
                    .collect(),
            },
        }
    }

    /// Per-axis majorants at `theta`; `None` if some axis is not dominated.
    fn geo_bounds(&self, theta: f64, degree: usize) -> Option<(Vec<Option<GeoBound>>, f64)> {
        let mut finite_product = 1.0;
        let mut out = Vec::with_capacity(self.axes.len());
        for axis in &self.axes {
            match axis {
                Axis::Geometric { ratio, scale, coef, .. } if regime(*ratio) != Regime::Euler => {
                    let (r0, start) = match regime(*ratio) {
                        Regime::Direct => (*ratio, 0),
                        _ => (1.0 / ratio, 1),
                    };
                    let (k, d) = coef.majorant();
                    let (extra, c) =
                        if d > 0 { (1.0, k * power_sup(d as f64, theta) * theta.exp()) } else { (0.0, k) };
                    let rho = r0 * (theta * (scale + extra)).exp();
                    if rho.is_nan() || rho >= 1.0 {
                        return None;
                    }
                    out.push(Some(GeoBound { rho, constant: c, start }));
                }
                other => {
                    let pts = self.points(other, 0, degree);
                    finite_product *=
                        pts.iter().map(|p| p.weight.norm() * (theta * p.offset.abs()).exp()).sum::<f64>();
                    out.push(None);
                }
            }
        }
        Some((out, finite_product))
    }

    fn leading_constant(&self, growth: &Growth, theta: f64, finite_product: f64) -> f64 {
        self.prefactor.abs()
            * growth.constant
            * power_sup(growth.degree, theta)
            * (theta * growth.base).exp()
            * finite_product
    }

    /// Truncation bound for explicit cutoffs (minimized over the theta grid).
    pub fn tail_bound(&self, growth: &Growth, cutoffs: &[u64]) -> f64 {
        let degree = growth.degree.max(0.0) as usize;
        let theta_max = self.theta_max();
        if !theta_max.is_finite() {
            return 0.0;
        }
        THETA_GRID
            .iter()
            .filter_map(|alpha| {
                let theta = alpha * theta_max;
                let (geo, fin) = self.geo_bounds(theta, degree)?;
                let lead = self.leading_constant(growth, theta, fin);
                let full: Vec<f64> = geo
                    .iter()
                    .map(|g| g.as_ref().map_or(1.0, |g| g.constant * g.rho.powi(g.start) / (1.0 - g.rho)))
                    .collect();
                let mut total = 0.0;
                for (i, g) in geo.iter().enumerate() {
                    if let Some(g) = g {
                        let tail = g.constant * g.rho.powf(cutoffs[i] as f64 + 1.0) / (1.0 - g.rho);
                        let others: f64 =
                            full.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, f)| f).product();
                        total += tail * others;
                    }
                }
                Some(lead * total)
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Smallest cutoffs (under the bound model) keeping the tail below `tol`,
    /// never below `min_cutoff` on geometric axes.
    pub fn cutoffs(&self, growth: &Growth, tol: f64, min_cutoff: u64) -> Result<Vec<u64>> {
        self.check(growth)?;
        let degree = growth.degree.max(0.0) as usize;
        let theta_max = self.theta_max();
        let n_geo = self
            .axes
            .iter()
            .filter(|a| matches!(a, Axis::Geometric { ratio, .. } if regime(*ratio) != Regime::Euler))
            .count();
        if n_geo == 0 {
            return Ok(vec![0; self.axes.len()]);
        }
        let mut best: Option<(f64, Vec<u64>)> = None;
        for alpha in THETA_GRID {
            let theta = alpha * theta_max;
            let Some((geo, fin)) = self.geo_bounds(theta, degree) else { continue };
            let lead = self.leading_constant(growth, theta, fin);
            let full: Vec<f64> = geo
                .iter()
                .map(|g| g.as_ref().map_or(1.0, |g| g.constant * g.rho.powi(g.start) / (1.0 - g.rho)))
                .collect();
            let mut cut = vec![0u64; self.axes.len()];
            let mut ok = true;
            for (i, g) in geo.iter().enumerate() {
                let Some(g) = g else { continue };
                let others: f64 = full.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, f)| f).product();
                let target = tol / (n_geo as f64 * lead * others) * (1.0 - g.rho) / g.constant;
                let need = if target >= 1.0 { 0.0 } else { (target.ln() / g.rho.ln()).ceil() - 1.0 };
                if !need.is_finite() || need > MAX_CUTOFF as f64 {
                    ok = false;
                    break;
                }
                cut[i] = (need.max(0.0) as u64).max(min_cutoff);
            }
            if !ok {
                continue;
            }
            let cost: f64 =
                cut.iter().zip(&geo).map(|(c, g)| if g.is_some() { *c as f64 + 1.0 } else { 1.0 }).product();
            if best.as_ref().is_none_or(|(b, _)| cost < *b) {
                best = Some((cost, cut));
            }
        }
        best.map(|(_, c)| c)
            .ok_or_else(|| Error::Divergent("no feasible truncation meets the requested tolerance".into()))
    }

    /// Evaluates with explicit cutoffs; `g` receives the summed offset.
    pub fn evaluate_with<F>(&self, growth: &Growth, cutoffs: &[u64], g: F) -> Result<SumResult>
    where
        F: Fn(f64) -> Complex64,
    {
        self.check(growth)?;
        let degree = growth.degree.max(0.0) as usize;
        let points: Vec<Vec<Point>> =
            self.axes.iter().zip(cutoffs).map(|(a, &c)| self.points(a, c, degree)).collect();
        let mut acc = ComplexSum::new();
        nest(&points, 0, 0.0, Complex64::new(1.0, 0.0), &g, &mut acc);
        let value = acc.value() * self.prefactor;
        Ok(SumResult {
            value,
            tail_bound: self.tail_bound(growth, cutoffs),
            rounding_bound: 16.0 * f64::EPSILON * acc.abs_sum() * self.prefactor.abs(),
            cutoffs: cutoffs.to_vec(),
            terms: acc.terms(),
        })
    }

    pub fn evaluate<F>(&self, growth: &Growth, tol: f64, min_cutoff: u64, g: F) -> Result<SumResult>
    where
        F: Fn(f64) -> Complex64,
    {
        let cutoffs = self.cutoffs(growth, tol, min_cutoff)?;
        self.evaluate_with(growth, &cutoffs, g)
    }
}

fn nest<F: Fn(f64) -> Complex64>(
    points: &[Vec<Point>],
    depth: usize,
    offset: f64,
    weight: Complex64,
    g: &F,
    acc: &mut ComplexSum,
) {
    if depth == points.len() {
        acc.add(weight * g(offset));
        return;
    }
    for p in &points[depth] {
        if p.weight.re == 0.0 && p.weight.im == 0.0 {
            continue;
        }
        nest(points, depth + 1, offset + p.offset, weight * p.weight, g, acc);
    }
}
