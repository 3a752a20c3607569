use clap::{ArgAction, Args, ValueEnum};
use qeuler_core::families::{gf_expand, series_sum};
use qeuler_core::rational::Rational;
use qeuler_core::{Error, FamilyKind, FamilySpec, Result, SeriesForm};

use crate::args::{self, CharArgs};
use crate::output::{float, rational, Row, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PathChoice {
    /// Exact expansion, or the series when the character is complex.
    Auto,
    Exact,
    Numeric,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormChoice {
    Multi,
    Single,
}

#[derive(Args, Debug)]
#[command(disable_help_flag = true)]
pub struct EvalArgs {
    #[arg(long, action = ArgAction::Help)]
    help: Option<bool>,
    #[arg(long, value_parser = args::family)]
    family: FamilyKind,
    /// Order r (implied by the weight list when given).
    #[arg(short = 'r', long = "order")]
    order: Option<usize>,
    #[arg(short, long, default_value = "1/2", value_parser = args::rational, allow_hyphen_values = true)]
    q: Rational,
    #[arg(short, long, default_value = "0", value_parser = args::rational, allow_hyphen_values = true)]
    x: Rational,
    /// Shift parameter h of the (h, r) family.
    #[arg(short = 'h', long = "h", default_value_t = 2, allow_hyphen_values = true)]
    h: i64,
    #[arg(short = 'w', long = "weights", value_delimiter = ',')]
    weights: Vec<i64>,
    /// q-exponents a_j (twisted families); default to the weights.
    #[arg(short = 'a', long = "twists", value_delimiter = ',')]
    twists: Vec<i64>,
    #[command(flatten)]
    chi: CharArgs,
    #[arg(long, default_value_t = 5)]
    nmax: usize,
    #[arg(long, value_enum, default_value_t = PathChoice::Auto)]
    path: PathChoice,
    #[arg(long, value_enum, default_value_t = FormChoice::Multi)]
    form: FormChoice,
    /// Absolute truncation tolerance of the numeric path.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

fn build_spec(a: &EvalArgs) -> Result<FamilySpec> {
    let kind = a.family;
    let chi = a.chi.resolve()?;
    if kind.has_character() != chi.is_some() {
        return Err(Error::Usage(if chi.is_some() {
            format!("family {kind} takes no character")
        } else {
            format!("family {kind} needs --chi-mod")
        }));
    }
    if !kind.uses_weights() && !a.weights.is_empty() {
        return Err(Error::Usage(format!("family {kind} takes no weights")));
    }
    if !kind.uses_twists() && !a.twists.is_empty() {
        return Err(Error::Usage(format!("family {kind} takes no twist exponents")));
    }
    let weights = if a.weights.is_empty() { vec![1; a.order.unwrap_or(1)] } else { a.weights.clone() };
    if kind.uses_weights() {
        if let Some(r) = a.order {
            if r != weights.len() {
                return Err(Error::Usage(format!("-r {r} disagrees with {} weights", weights.len())));
            }
        }
    }
    let twists = if a.twists.is_empty() { weights.clone() } else { a.twists.clone() };
    let r = a.order.unwrap_or(1);
    let (q, x) = (a.q.clone(), a.x.clone());
    let spec = match kind {
        FamilyKind::QEulerOrderR => FamilySpec::q_euler(q, x, r),
        FamilyKind::QEulerHR => FamilySpec::q_euler_hr(q, x, a.h, r),
        FamilyKind::BarnesQEuler => FamilySpec::barnes(q, x, weights),
        FamilyKind::BarnesQEulerTwist => FamilySpec::barnes_twist(q, x, weights, twists),
        FamilyKind::ChiQEuler if r != 1 => {
            return Err(Error::Usage("chi-qeuler has order 1; use chi-qeuler-r".into()))
        }
        FamilyKind::ChiQEuler => FamilySpec::chi_q_euler(q, x, chi.expect("checked")),
        FamilyKind::ChiQEulerOrderR => FamilySpec::chi_q_euler_order(q, x, r, chi.expect("checked")),
        FamilyKind::ChiBarnesQEuler => FamilySpec::chi_barnes(q, x, weights, twists, chi.expect("checked")),
        FamilyKind::BarnesBernoulli => FamilySpec::barnes_bernoulli(x, weights),
        FamilyKind::ClassicalBarnesEuler => FamilySpec::classical_barnes(x, weights),
    };
    spec.validate()?;
    Ok(spec)
}

pub fn run(a: &EvalArgs) -> Result<Table> {
    let spec = build_spec(a)?;
    let complex_chi = spec.chi.as_ref().is_some_and(|c| !c.is_real());
    let path = match a.path {
        PathChoice::Auto if complex_chi => PathChoice::Numeric,
        PathChoice::Auto => PathChoice::Exact,
        other => other,
    };
    let form = match a.form {
        FormChoice::Multi => SeriesForm::MultiIndex,
        FormChoice::Single => SeriesForm::SingleIndex,
    };

    let mut table = Table::new("eval", vec!["n", "exact", "numeric", "numeric_im", "tail_bound"]);
    table.param("family", spec.kind.name());
    table.param("q", rational(&spec.q));
    table.param("x", rational(&spec.x));
    table.param("r", spec.r);
    if spec.kind == FamilyKind::QEulerHR {
        table.param("h", spec.h);
    }
    if spec.kind.uses_weights() {
        table.param("weights", spec.weights.clone());
    }
    if spec.kind.uses_twists() {
        table.param("twists", spec.twists.clone());
    }
    if let Some(chi) = &spec.chi {
        table.param("chi_mod", chi.conductor());
        table.param("chi_label", chi.label().to_vec());
    }
    table.param("nmax", a.nmax);
    table.param("path", format!("{path:?}").to_lowercase());

    let exact = match path {
        PathChoice::Exact | PathChoice::Both => Some(gf_expand(&spec, a.nmax)?),
        _ => None,
    };
    let numeric = match path {
        PathChoice::Numeric | PathChoice::Both => {
            table.param("form", format!("{:?}", a.form).to_lowercase());
            table.param("tol", float(a.tol));
            let num = spec.to_numeric();
            Some((0..=a.nmax).map(|n| series_sum(&num, n, form, a.tol)).collect::<Result<Vec<_>>>()?)
        }
        _ => None,
    };
    for n in 0..=a.nmax {
        let mut row = Row::new();
        row.insert("n".into(), n.into());
        if let Some(e) = &exact {
            row.insert("exact".into(), rational(&e[n]));
        }
        if let Some(v) = &numeric {
            let value = v[n].numeric();
            row.insert("numeric".into(), float(value.re));
            if complex_chi {
                row.insert("numeric_im".into(), float(value.im));
            }
            let tail = v[n].truncation.as_ref().map_or(0.0, |t| t.tail_bound);
            row.insert("tail_bound".into(), float(tail));
        }
        table.rows.push(row);
    }
    if exact.is_none() {
        table.columns.retain(|c| *c != "exact");
    }
    if numeric.is_none() {
        table.columns.retain(|c| !matches!(*c, "numeric" | "numeric_im" | "tail_bound"));
    } else if !complex_chi {
        table.columns.retain(|c| *c != "numeric_im");
    }
    Ok(table)
}
