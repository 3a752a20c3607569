use clap::{ArgAction, Args, ValueEnum};

use qeuler_core::padic::oracle_convergence;
use qeuler_core::rational::{int, parse, Rational};
use qeuler_core::{Error, FamilySpec, Result};

use crate::args;
use crate::output::{rational, Row, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PadicFamily {
    Qeuler,
    QeulerHr,
}

#[derive(Args, Debug)]
#[command(disable_help_flag = true)]
pub struct PadicArgs {
    #[arg(long, action = ArgAction::Help)]
    help: Option<bool>,
    #[arg(short, default_value_t = 3)]
    p: u64,
    /// Precision: residues are kept mod p^M.
    #[arg(short = 'M', default_value_t = 8)]
    precision: u32,
    /// Highest level; rows cover levels 1..=N.
    #[arg(short = 'N', default_value_t = 8)]
    levels: u32,
    /// Polynomial degree.
    #[arg(short, default_value_t = 0)]
    n: usize,
    #[arg(short, default_value_t = 1)]
    r: usize,
    /// Family parameter, e.g. `1+p`, `1+p^2` or a rational.
    #[arg(short, default_value = "1+p")]
    q: String,
    #[arg(short, default_value = "0", value_parser = args::rational, allow_hyphen_values = true)]
    x: Rational,
    #[arg(long, value_enum, default_value_t = PadicFamily::Qeuler)]
    family: PadicFamily,
    #[arg(short = 'h', default_value_t = 2, allow_hyphen_values = true)]
    h: i64,
}

/// A sum of terms, each a rational, `p`, `p^k` or `c*p`/`cp`.
fn parse_q(expr: &str, p: u64) -> Result<Rational> {
    let p = int(p as i64);
    let mut total = Rational::from_integer(0.into());
    for term in expr.split('+').map(str::trim) {
        let value = match term.split_once('p') {
            None => parse(term)?,
            Some((coef, rest)) => {
                let coef = match coef.trim_end_matches('*') {
                    "" => int(1),
                    c => parse(c)?,
                };
                let exp = match rest.strip_prefix('^') {
                    None if rest.is_empty() => 1,
                    Some(k) => {
                        k.parse::<i64>().map_err(|_| Error::Usage(format!("bad exponent in '{term}'")))?
                    }
                    None => return Err(Error::Usage(format!("cannot parse '{term}'"))),
                };
                coef * qeuler_core::rational::pow(&p, exp)?
            }
        };
        total += value;
    }
    Ok(total)
}

pub fn run(a: &PadicArgs) -> Result<Table> {
    qeuler_core::PadicInt::new(a.p, a.precision, 0)?;
    if a.levels == 0 {
        return Err(Error::Usage("-N must be at least 1".into()));
    }
    if a.r == 0 {
        return Err(Error::Usage("-r must be at least 1".into()));
    }
    let q = parse_q(&a.q, a.p)?;
    let spec = match a.family {
        PadicFamily::Qeuler => FamilySpec::q_euler(q.clone(), a.x.clone(), a.r),
        PadicFamily::QeulerHr => FamilySpec::q_euler_hr(q.clone(), a.x.clone(), a.h, a.r),
    };
    let report = oracle_convergence(&spec, a.n, a.p, 1..=a.levels, a.precision)?;

    let mut table = Table::new("padic", vec!["N", "residue", "valuation", "monotone"]);
    table.param("p", a.p);
    table.param("M", a.precision);
    table.param("n", a.n);
    table.param("r", a.r);
    table.param("q", rational(&q));
    table.param("x", rational(&a.x));
    table.param("family", format!("{:?}", a.family).to_lowercase());
    if a.family == PadicFamily::QeulerHr {
        table.param("h", a.h);
    }
    let mut monotone = true;
    let mut prev = 0;
    for row in &report.rows {
        monotone &= row.valuation >= prev;
        prev = row.valuation;
        let mut out = Row::new();
        out.insert("N".into(), row.level.into());
        out.insert("residue".into(), row.value.residue().into());
        out.insert("valuation".into(), row.valuation.into());
        out.insert("monotone".into(), monotone.into());
        table.rows.push(out);
    }
    table.pass = Some(report.monotone());
    Ok(table)
}
