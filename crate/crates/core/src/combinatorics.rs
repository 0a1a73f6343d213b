//! The coefficients `delta(n, p)` attached to an ordinary double point.
//!
//! ```text
//! delta(n, p) = sum_{j=0}^{p} (-1)^j C(n+1, j) ((p-j+1)^{n+2} - (p-j)^{n+2}) / (n+2)!
//! ```

use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::pseries::Rational;

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn delta(n: u32, p: u32) -> Result<Rational> {
    if n == 0 || p > n {
        return Err(Error::Domain {
            op: "delta",
            requirement: format!("n >= 1 and 0 <= p <= n, got n = {n}, p = {p}"),
        });
    }
    let e = n + 2;
    let mut sum = BigInt::from(0);
    for j in 0..=p {
        let hi = BigInt::from(p - j + 1).pow(e);
        let lo = BigInt::from(p - j).pow(e);
        let term = binomial(n + 1, j) * (hi - lo);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(Rational::new(sum, factorial(e)))
}

/// The full row `delta(n, 0), ..., delta(n, n)`.
pub fn delta_row(n: u32) -> Result<Vec<Rational>> {
    (0..=n).map(|p| delta(n, p)).collect()
}

/// Checks, for threefolds, the symmetry `delta(3,p) + delta(3,3-p) = 1` and the
/// weighted sum `sum_p p delta(3,p) = 19/4`.
pub fn threefold_identities_hold() -> bool {
    let row = delta_row(3).expect("n = 3 is in range");
    let symmetric = (0..=3).all(|p| &row[p] + &row[3 - p] == Rational::one());
    let weighted: Rational = row
        .iter()
        .enumerate()
        .map(|(p, d)| d * BigInt::from(p))
        .sum();
    symmetric && weighted == Rational::new(19.into(), 4.into())
}

/// Whether `delta(n,p) + delta(n,n-p) = 1` for every `p`; reported for
/// exploration only, nothing downstream relies on it for `n != 3`.
pub fn symmetry_holds(n: u32) -> Result<bool> {
    let row = delta_row(n)?;
    let n = n as usize;
    Ok((0..=n).all(|p| &row[p] + &row[n - p] == Rational::one()))
}
