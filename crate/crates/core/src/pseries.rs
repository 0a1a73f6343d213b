//! Truncated formal power series over arbitrary-precision rationals.
//!
//! A series carries an explicit truncation order `N` and the coefficients of
//! `t^0 ..= t^N`. Binary operations truncate to the smaller of the two orders
//! and never extend precision.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for the rational `num / den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    Rational::from_str(s).map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
}

/// Writes `coeffs` as `ints / den` with `den` the lcm of the denominators.
fn integer_form(coeffs: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = coeffs
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    (ints, den)
}

/// Label of the formal variable a series is expanded in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variable {
    #[serde(rename = "x")]
    X,
    #[serde(rename = "q")]
    Q,
    #[serde(rename = "psi-inv")]
    PsiInv,
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variable::X => "x",
            Variable::Q => "q",
            Variable::PsiInv => "psi-inv",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSeries {
    coeffs: Vec<Rational>,
    var: Variable,
}

impl ExactSeries {
    /// Builds a series of the given order from leading coefficients; missing
    /// coefficients are zero and extra ones are dropped.
    pub fn new(var: Variable, order: usize, coeffs: impl IntoIterator<Item = Rational>) -> Self {
        let mut coeffs: Vec<Rational> = coeffs.into_iter().take(order + 1).collect();
        coeffs.resize(order + 1, Rational::zero());
        Self { coeffs, var }
    }

    pub fn from_ints(var: Variable, order: usize, coeffs: &[i64]) -> Self {
        Self::new(var, order, coeffs.iter().map(|&c| int(c)))
    }

    pub fn zero(var: Variable, order: usize) -> Self {
        Self::new(var, order, std::iter::empty())
    }

    pub fn constant(var: Variable, order: usize, c: Rational) -> Self {
        Self::new(var, order, std::iter::once(c))
    }

    pub fn one(var: Variable, order: usize) -> Self {
        Self::constant(var, order, Rational::one())
    }

    /// The series `t`.
    pub fn variable(var: Variable, order: usize) -> Self {
        Self::new(var, order, [Rational::zero(), Rational::one()])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn var(&self) -> Variable {
        self.var
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^n`; zero past the truncation order.
    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.var, order.min(self.order()), self.coeffs.iter().cloned())
    }

    /// Relabels the variable. Used where a chart change is intended, e.g. when
    /// an x-series is composed with x(q).
    pub fn with_var(mut self, var: Variable) -> Self {
        self.var = var;
        self
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var != other.var {
            return Err(Error::VariableMismatch(self.var, other.var));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let n = self.order().min(other.order());
        Ok(Self {
            coeffs: (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
            var: self.var,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let n = self.order().min(other.order());
        Ok(Self {
            coeffs: (0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(),
            var: self.var,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            var: self.var,
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            var: self.var,
        }
    }

    /// Cauchy product, schoolbook.
    ///
    /// Both operands are cleared to integer vectors over a common denominator
    /// first, so the inner loop is a big-integer convolution and each output
    /// coefficient is reduced once.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let n = self.order().min(other.order());
        let (a, da) = integer_form(&self.coeffs[..=n]);
        let (b, db) = integer_form(&other.coeffs[..=n]);
        let den = da * db;
        let mut coeffs = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = BigInt::zero();
            for i in 0..=k {
                if !a[i].is_zero() && !b[k - i].is_zero() {
                    acc += &a[i] * &b[k - i];
                }
            }
            coeffs.push(Rational::new(acc, den.clone()));
        }
        Ok(Self { coeffs, var: self.var })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.var, self.order());
        for _ in 0..k {
            acc = acc.mul(self).expect("same variable");
        }
        acc
    }

    /// Quotient `self / other`; the divisor must have a nonzero constant term.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let b0 = other.constant_term();
        if b0.is_zero() {
            return Err(Error::NonUnit);
        }
        let n = self.order().min(other.order());
        let inv_b0 = b0.recip();
        let mut q: Vec<Rational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                if !other.coeffs[j].is_zero() {
                    acc -= &other.coeffs[j] * &q[k - j];
                }
            }
            q.push(acc * &inv_b0);
        }
        Ok(Self { coeffs: q, var: self.var })
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one(self.var, self.order()).div(self)
    }

    /// Formal exponential; requires a zero constant term.
    ///
    /// Uses `n f_n = sum_{k=1}^n k a_k f_{n-k}`, which follows from `f' = a' f`.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::ConstantTerm {
                op: "exp",
                expected: "0",
                found: format_rational(self.constant_term()),
            });
        }
        let n = self.order();
        let mut f: Vec<Rational> = Vec::with_capacity(n + 1);
        f.push(Rational::one());
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &f[m - k] * BigInt::from(k);
                }
            }
            f.push(acc / BigInt::from(m));
        }
        Ok(Self { coeffs: f, var: self.var })
    }

    /// Formal logarithm; requires constant term one.
    ///
    /// Uses `n b_n = n a_n - sum_{k=1}^{n-1} k b_k a_{n-k}`, from `a b' = a'`.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::ConstantTerm {
                op: "log",
                expected: "1",
                found: format_rational(self.constant_term()),
            });
        }
        let n = self.order();
        let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
        b.push(Rational::zero());
        for m in 1..=n {
            let mut acc = &self.coeffs[m] * BigInt::from(m);
            for k in 1..m {
                if !self.coeffs[m - k].is_zero() {
                    acc -= &b[k] * &self.coeffs[m - k] * BigInt::from(k);
                }
            }
            b.push(acc / BigInt::from(m));
        }
        Ok(Self { coeffs: b, var: self.var })
    }

    /// `t d/dt`: maps the coefficient `c_n` to `n c_n`.
    pub fn euler_derivative(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * BigInt::from(n))
                .collect(),
            var: self.var,
        }
    }

    /// `t d/dt log(self)` for a series with nonzero constant term, computed
    /// as `(t f') / f` so no normalization of the constant is needed.
    pub fn log_derivative(&self) -> Result<Self> {
        self.euler_derivative().div(self)
    }

    /// `self(inner(t))`; the inner series must have zero constant term.
    /// The result carries the inner series' variable.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.constant_term().is_zero() {
            return Err(Error::Composition(format_rational(inner.constant_term())));
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        // Horner: (((c_n) g + c_{n-1}) g + ...) g + c_0
        let mut acc = Self::constant(inner.var, n, self.coeffs[n].clone());
        for k in (0..n).rev() {
            acc = acc.mul(&inner)?;
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse of `c_1 t + c_2 t^2 + ...` with `c_1 != 0`.
    ///
    /// Lagrange inversion: with `h = t / self`, the inverse has coefficients
    /// `b_n = [t^{n-1}] h^n / n`.
    pub fn reverse(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonInvertible("nonzero constant term"));
        }
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        if self.coeffs[1].is_zero() {
            return Err(Error::NonInvertible("zero linear term"));
        }
        // self / t, as a unit series of order n - 1
        let shifted = Self::new(self.var, n - 1, self.coeffs[1..].iter().cloned());
        let h = shifted.recip()?;
        let mut coeffs = vec![Rational::zero(); n + 1];
        let mut power = Self::one(self.var, n - 1);
        for (m, slot) in coeffs.iter_mut().enumerate().skip(1) {
            power = power.mul(&h)?;
            *slot = power.coeffs[m - 1].clone() / BigInt::from(m);
        }
        Ok(Self { coeffs, var: self.var })
    }

    /// Substitutes `t -> t^k`.
    pub fn dilate(&self, k: usize) -> Self {
        assert!(k >= 1);
        let n = self.order();
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * k > n {
                break;
            }
            coeffs[i * k] = c.clone();
        }
        Self { coeffs, var: self.var }
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Indices of coefficients that are not integers.
    pub fn non_integral_indices(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_integer())
            .map(|(i, _)| i)
            .collect()
    }

    /// Evaluates the truncated polynomial at a float; only for diagnostics.
    pub fn eval_f64(&self, t: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            variable: self.var,
            order: self.order(),
            coefficients: self.coeffs.iter().map(format_rational).collect(),
        }
    }

    pub fn from_json(json: &SeriesJson) -> Result<Self> {
        if json.coefficients.len() != json.order + 1 {
            return Err(Error::Parse(format!(
                "series of order {} needs {} coefficients, found {}",
                json.order,
                json.order + 1,
                json.coefficients.len()
            )));
        }
        let coeffs = json
            .coefficients
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { coeffs, var: json.variable })
    }
}

impl fmt::Display for ExactSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => {}
                _ => write!(f, "{a}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "{}", self.var)?,
                _ => write!(f, "{}^{i}", self.var)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O({}^{})", self.var, self.order() + 1)
    }
}

/// Wire form of a series: coefficient strings `"p/q"` in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub variable: Variable,
    pub order: usize,
    pub coefficients: Vec<String>,
}
