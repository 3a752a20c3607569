use clap::Args;
use num_complex::Complex64;
use rayon::prelude::*;

use qeuler_core::qzeta::{l_qr, zeta_qr, ZetaParams};
use qeuler_core::{Error, Result};

use crate::args::{self, CharArgs};
use crate::output::{float, Row, Table};

#[derive(Args, Debug)]
pub struct ZetaArgs {
    /// Order r; the weights default to r ones.
    #[arg(short = 'r', long = "order")]
    order: Option<usize>,
    #[arg(short = 'w', long = "weights", value_delimiter = ',')]
    weights: Vec<f64>,
    #[arg(short, long, default_value_t = 0.5, allow_hyphen_values = true)]
    q: f64,
    #[arg(short, long, default_value_t = 1.0, allow_hyphen_values = true)]
    x: f64,
    /// Comma-separated points such as `-2,0.5,2+i`.
    #[arg(long = "s", value_delimiter = ',', value_parser = args::complex, allow_hyphen_values = true, default_value = "0")]
    s: Vec<Complex64>,
    #[command(flatten)]
    chi: CharArgs,
    /// Absolute truncation tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

pub fn run(a: &ZetaArgs) -> Result<Table> {
    let weights = if a.weights.is_empty() { vec![1.0; a.order.unwrap_or(1)] } else { a.weights.clone() };
    if let Some(r) = a.order {
        if r != weights.len() {
            return Err(Error::Usage(format!("-r {r} disagrees with {} weights", weights.len())));
        }
    }
    let mut params = ZetaParams::new(a.q, a.x, weights).with_tol(a.tol);
    params.chi = a.chi.resolve()?;
    params.validate()?;

    let mut table = Table::new("zeta", vec!["s_re", "s_im", "value_re", "value_im", "err_bound"]);
    table.param("function", if params.chi.is_some() { "l" } else { "zeta" });
    table.param("q", float(params.q));
    table.param("x", float(params.x));
    table.param("weights", params.w.iter().map(|&w| float(w)).collect::<Vec<_>>());
    table.param("tol", float(params.tol));
    if let Some(chi) = &params.chi {
        table.param("chi_mod", chi.conductor());
        table.param("chi_label", chi.label().to_vec());
    }
    let values =
        a.s.par_iter()
            .map(|&s| match params.chi {
                Some(_) => l_qr(s, &params),
                None => zeta_qr(s, &params),
            })
            .collect::<Result<Vec<_>>>()?;
    for (s, v) in a.s.iter().zip(values) {
        let mut row = Row::new();
        row.insert("s_re".into(), float(s.re));
        row.insert("s_im".into(), float(s.im));
        row.insert("value_re".into(), float(v.re));
        row.insert("value_im".into(), float(v.im));
        row.insert("err_bound".into(), float(v.err_bound));
        table.rows.push(row);
    }
    Ok(table)
}
