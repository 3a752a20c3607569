//! Dirichlet characters of odd conductor.
//!
//! `(Z/fZ)^*` is split by CRT into the unit groups mod each prime power
//! `p^e || f`. For odd `p` those are cyclic, so a character is fixed by the
//! root of unity it assigns to a generator of each factor.

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};

/// A character stored as its value table over `0..f`.
///
/// `exact` holds the values as `-1/0/1` when every value is real; identity
/// checks that need exact arithmetic only accept such characters.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCharacter {
    conductor: u64,
    values: Vec<Complex64>,
    exact: Option<Vec<i8>>,
    is_trivial: bool,
    /// Exponent assigned to the generator of each prime-power factor.
    label: Vec<u64>,
}

struct PrimePowerFactor {
    modulus: u64,
    generator: u64,
    order: u64,
}

impl DirichletCharacter {
    /// The principal character mod `f` (`chi(0) = 1` when `f = 1`).
    pub fn principal(f: u64) -> Result<Self> {
        Ok(enumerate_characters(f)?.swap_remove(0))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn is_real(&self) -> bool {
        self.exact.is_some()
    }

    pub fn is_trivial(&self) -> bool {
        self.is_trivial
    }

    /// Generator exponents identifying this character within [`enumerate_characters`].
    pub fn label(&self) -> &[u64] {
        &self.label
    }

    pub fn eval(&self, m: i64) -> Complex64 {
        self.values[m.rem_euclid(self.conductor as i64) as usize]
    }

    /// Exact value for real characters, `None` otherwise.
    pub fn eval_exact(&self, m: i64) -> Option<i8> {
        self.exact.as_ref().map(|e| e[m.rem_euclid(self.conductor as i64) as usize])
    }
}

pub fn chi_eval(chi: &DirichletCharacter, m: i64) -> Complex64 {
    chi.eval(m)
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    factorize(n).iter().map(|&(p, e)| (p - 1) * p.pow(e - 1)).product()
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Smallest generator of the cyclic group `(Z/p^e Z)^*`, `p` odd.
fn primitive_root(p: u64, e: u32) -> u64 {
    let modulus = p.pow(e);
    let order = (p - 1) * p.pow(e - 1);
    let prime_divisors: Vec<u64> = factorize(order).into_iter().map(|(d, _)| d).collect();
    (2..modulus)
        .find(|&g| g % p != 0 && prime_divisors.iter().all(|&d| pow_mod(g, order / d, modulus) != 1))
        .unwrap_or(1)
}

fn root_of_unity(num: u64, den: u64) -> Complex64 {
    let num = num % den;
    if num == 0 {
        Complex64::new(1.0, 0.0)
    } else if 2 * num == den {
        Complex64::new(-1.0, 0.0)
    } else if 4 * num == den {
        Complex64::new(0.0, 1.0)
    } else if 4 * num == 3 * den {
        Complex64::new(0.0, -1.0)
    } else {
        Complex64::from_polar(1.0, TAU * num as f64 / den as f64)
    }
}

/// All `phi(f)` characters mod an odd `f`, principal character first.
pub fn enumerate_characters(f: u64) -> Result<Vec<DirichletCharacter>> {
    if f == 0 || f.is_multiple_of(2) {
        return Err(Error::Unsupported(format!("conductor must be odd and positive, got {f}")));
    }
    if f == 1 {
        return Ok(vec![DirichletCharacter {
            conductor: 1,
            values: vec![Complex64::new(1.0, 0.0)],
            exact: Some(vec![1]),
            is_trivial: true,
            label: Vec::new(),
        }]);
    }

    let factors: Vec<PrimePowerFactor> = factorize(f)
        .into_iter()
        .map(|(p, e)| PrimePowerFactor {
            modulus: p.pow(e),
            generator: primitive_root(p, e),
            order: (p - 1) * p.pow(e - 1),
        })
        .collect();
    let lcm = factors.iter().fold(1u64, |acc, c| acc.lcm(&c.order));

    // Discrete logs: index[i][n mod p_i^e_i] for each unit residue.
    let logs: Vec<Vec<Option<u64>>> = factors
        .iter()
        .map(|c| {
            let mut table = vec![None; c.modulus as usize];
            let mut g = 1u64;
            for k in 0..c.order {
                table[g as usize] = Some(k);
                g = g * c.generator % c.modulus;
            }
            table
        })
        .collect();

    let mut labels: Vec<Vec<u64>> = vec![Vec::new()];
    for c in &factors {
        labels = labels
            .into_iter()
            .flat_map(|l| {
                (0..c.order).map(move |k| {
                    let mut l = l.clone();
                    l.push(k);
                    l
                })
            })
            .collect();
    }

    let characters = labels
        .into_iter()
        .map(|label| {
            let mut values = Vec::with_capacity(f as usize);
            let mut exact = Vec::with_capacity(f as usize);
            let mut real = true;
            for n in 0..f {
                if n.gcd(&f) != 1 {
                    values.push(Complex64::new(0.0, 0.0));
                    exact.push(0);
                    continue;
                }
                let mut angle = 0u64;
                for ((c, table), k) in factors.iter().zip(&logs).zip(&label) {
                    let ind = table[(n % c.modulus) as usize].expect("unit residue");
                    angle = (angle + k * ind % c.order * (lcm / c.order)) % lcm;
                }
                let v = root_of_unity(angle, lcm);
                if angle == 0 {
                    exact.push(1);
                } else if 2 * angle == lcm {
                    exact.push(-1);
                } else {
                    real = false;
                }
                values.push(v);
            }
            DirichletCharacter {
                conductor: f,
                values,
                exact: real.then_some(exact),
                is_trivial: label.iter().all(|&k| k == 0),
                label,
            }
        })
        .collect();
    Ok(characters)
}

/// The nontrivial real characters mod `f`.
pub fn real_nontrivial(f: u64) -> Result<Vec<DirichletCharacter>> {
    Ok(enumerate_characters(f)?.into_iter().filter(|c| c.is_real() && !c.is_trivial()).collect())
}
