//! q-expansions of `eta` and `Delta`, the Petersson norm of `Delta`, and the
//! product formula for the FHSV threefold.
//!
//! `eta` here is the bare product `prod_{n>=1} (1 - q^n)`, without the
//! classical `q^{1/24}` prefactor. `Delta = q eta^24` is the usual cusp form.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pseries::{int, ExactSeries, Rational, Variable};

pub const DELTA_WEIGHT: i32 = 12;

/// `prod_{n=1}^{order} (1 - q^n)` truncated at `q^order`.
pub fn eta_series(order: usize) -> ExactSeries {
    // multiply in one factor at a time, in place: c_m -= c_{m-n}
    let mut c = vec![Rational::zero(); order + 1];
    c[0] = Rational::one();
    for n in 1..=order {
        for m in (n..=order).rev() {
            let prev = c[m - n].clone();
            c[m] -= prev;
        }
    }
    ExactSeries::new(Variable::Q, order, c)
}

/// `q prod (1 - q^n)^24` truncated at `q^order`.
pub fn delta_series(order: usize) -> Result<ExactSeries> {
    if order == 0 {
        return Err(Error::Domain {
            op: "delta_series",
            requirement: "order >= 1".into(),
        });
    }
    let eta24 = eta_series(order - 1).pow(24);
    Ok(ExactSeries::new(
        Variable::Q,
        order,
        std::iter::once(int(0)).chain(eta24.coeffs().iter().cloned()),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeterssonValue {
    #[serde(serialize_with = "ser_complex", deserialize_with = "de_complex")]
    pub tau: Complex64,
    pub norm_sq: f64,
    /// Absolute bound on `|norm_sq - exact|` from the dropped tail and
    /// floating-point rounding.
    pub error_bound: f64,
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_complex(*z))
}

fn de_complex<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Complex64, D::Error> {
    let s = String::deserialize(d)?;
    parse_complex(&s).map_err(serde::de::Error::custom)
}

/// Formats as `a+bi` / `a-bi` using round-trip float formatting.
pub fn format_complex(z: Complex64) -> String {
    if z.im.is_sign_negative() {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Parses `a+bi`, `a-bi`, `a`, `bi`, `i`, `-i`, `2i` style complex literals.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("not a complex number: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not part of an exponent or leading
    let split = body
        .char_indices()
        .filter(|&(i, c)| (c == '+' || c == '-') && i > 0)
        .filter(|&(i, _)| !matches!(body.as_bytes()[i - 1], b'e' | b'E'))
        .map(|(i, _)| i)
        .next_back();
    let imag = |part: &str| -> Result<f64> {
        match part {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            p => p.parse::<f64>().map_err(|_| bad()),
        }
    };
    match split {
        Some(i) => {
            let re = body[..i].parse::<f64>().map_err(|_| bad())?;
            Ok(Complex64::new(re, imag(&body[i..])?))
        }
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

/// `q = exp(2 pi i tau)`.
pub fn nome(tau: Complex64) -> Complex64 {
    (Complex64::new(0.0, 2.0 * PI) * tau).exp()
}

/// Petersson norm `(Im tau)^12 |Delta(tau)|^2`, using the first `terms`
/// factors of the product.
///
/// With `r = |q|`, the dropped factors satisfy
/// `|sum_{n>N} 24 log(1 - q^n)| <= eps = 24 r^{N+1} / ((1-r)(1-r^{N+1}))`,
/// so `|Delta|^2` is off by a relative factor of at most `exp(2 eps) - 1`.
pub fn petersson_delta(tau: Complex64, terms: usize) -> Result<PeterssonValue> {
    if !(tau.im > 0.0) {
        return Err(Error::Domain {
            op: "petersson_delta",
            requirement: format!("Im(tau) > 0, got tau = {}", format_complex(tau)),
        });
    }
    // q^n depends on tau only through exp(-2 pi n Im tau) and the phase
    // 2 pi n Re tau mod 2 pi; Re tau is reduced mod 1 first.
    let frac = tau.re - tau.re.floor();
    let r = (-2.0 * PI * tau.im).exp();
    let q_n = |n: usize| Complex64::from_polar(r.powi(n as i32), 2.0 * PI * ((n as f64 * frac).fract()));

    let mut log_abs = 0.0f64;
    for n in 1..=terms {
        log_abs += (Complex64::one() - q_n(n)).norm().ln();
    }
    // log |Delta|^2 = 2 (log r + 24 sum log|1 - q^n|)
    let log_delta_sq = 2.0 * (r.ln() + 24.0 * log_abs);
    let log_norm = DELTA_WEIGHT as f64 * tau.im.ln() + log_delta_sq;
    let norm_sq = log_norm.exp();

    let tail_n = (terms + 1) as i32;
    let eps = 24.0 * r.powi(tail_n) / ((1.0 - r) * (1.0 - r.powi(tail_n)));
    let tail = (2.0 * eps).exp_m1();
    let rounding = 64.0 * (terms as f64 + 16.0) * f64::EPSILON;
    Ok(PeterssonValue {
        tau,
        norm_sq,
        error_bound: norm_sq * (tail + rounding),
    })
}

/// `C * ||Phi||^2 * ||Delta||^2`; the Borcherds norm is an external input.
pub fn fhsv_assemble(phi_norm_sq: f64, delta_norm_sq: f64, constant: f64) -> Result<f64> {
    for (name, v) in [("phi_norm_sq", phi_norm_sq), ("delta_norm_sq", delta_norm_sq), ("C", constant)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::Domain {
                op: "fhsv_assemble",
                requirement: format!("{name} > 0, got {v}"),
            });
        }
    }
    Ok(constant * phi_norm_sq * delta_norm_sq)
}
