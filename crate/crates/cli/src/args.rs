//! Value parsers and argument groups shared by several subcommands.

use std::str::FromStr;

use clap::Args;
use num_complex::Complex64;
use qeuler_core::dirichlet::{enumerate_characters, DirichletCharacter};
use qeuler_core::rational::{parse, Rational};
use qeuler_core::{Error, FamilyKind, Result};

pub fn rational(s: &str) -> std::result::Result<Rational, String> {
    parse(s).map_err(|e| e.to_string())
}

pub fn family(s: &str) -> std::result::Result<FamilyKind, String> {
    FamilyKind::from_str(s).map_err(|_| {
        let names: Vec<&str> = FamilyKind::ALL.iter().map(|k| k.name()).collect();
        format!("unknown family '{s}' (expected one of {})", names.join(", "))
    })
}

/// Accepts `a`, `bi`, `a+bi` and `a-bi`.
pub fn complex(s: &str) -> std::result::Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse '{s}' as a complex number");
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // Split at the last sign that is not part of an exponent or the leading sign.
    let split = body
        .char_indices()
        .rev()
        .find(|&(i, c)| (c == '+' || c == '-') && i > 0 && !matches!(&body[i - 1..i], "e" | "E"))
        .map(|(i, _)| i);
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = im.parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

#[derive(Args, Debug, Clone, Default)]
pub struct CharArgs {
    /// Conductor of the Dirichlet character (odd).
    #[arg(long = "chi-mod")]
    pub modulus: Option<u64>,
    /// Index into the enumerated characters of that conductor; defaults to
    /// the first real nontrivial one.
    #[arg(long = "chi-index")]
    pub index: Option<usize>,
}

impl CharArgs {
    pub fn resolve(&self) -> Result<Option<DirichletCharacter>> {
        let Some(f) = self.modulus else {
            if self.index.is_some() {
                return Err(Error::Usage("--chi-index needs --chi-mod".into()));
            }
            return Ok(None);
        };
        if f == 0 || f % 2 == 0 {
            return Err(Error::Usage(format!("character conductor must be odd, got {f}")));
        }
        let chars = enumerate_characters(f)?;
        let index = match self.index {
            Some(i) => i,
            None => chars.iter().position(|c| c.is_real() && !c.is_trivial()).unwrap_or(0),
        };
        chars.get(index).cloned().map(Some).ok_or_else(|| {
            Error::Usage(format!("character index {index} out of range; {} characters mod {f}", chars.len()))
        })
    }
}
