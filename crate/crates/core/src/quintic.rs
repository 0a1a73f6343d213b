//! Mirror-quintic series: the fundamental period, the mirror map, and the
//! logarithmic derivative of the genus-one amplitude.
//!
//! Everything is expanded in `x = (5 psi)^{-5}` on the B-side and in `q` on
//! the A-side. Fractional powers of `psi` and of `psi^5 - 1` never appear as
//! series: they enter only through their logarithms, where `log psi` is a
//! rational multiple of `log x` (up to a constant) and `q d/dq log x` is the
//! honest power series `u(q)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::pseries::{int, rat, ExactSeries, Rational, Variable};

pub const DEFAULT_ORDER: usize = 30;

/// `5^5`, the conifold locus `psi^5 = 1` sits at `x = 1/3125`.
pub const CONIFOLD_X_INV: i64 = 3125;

/// Fundamental period `y0 = sum_{n>=0} (5n)!/(n!)^5 x^n`.
pub fn period_y0(order: usize) -> ExactSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut fact_5n = BigInt::one();
    let mut fact_n = BigInt::one();
    coeffs.push(Rational::one());
    for n in 1..=order {
        for j in (5 * n - 4)..=(5 * n) {
            fact_5n *= j;
        }
        fact_n *= n;
        let denom = (0..5).fold(BigInt::one(), |acc, _| acc * &fact_n);
        coeffs.push(Rational::new(fact_5n.clone(), denom));
    }
    ExactSeries::new(Variable::X, order, coeffs)
}

/// Applies `theta^4 - 5x(5 theta+1)(5 theta+2)(5 theta+3)(5 theta+4)` with
/// `theta = x d/dx` and reports whether the result vanishes to the
/// truncation order.
pub fn picard_fuchs_check(y0: &ExactSeries) -> bool {
    let n = y0.order();
    let theta = |s: &ExactSeries| s.euler_derivative();
    let lhs = theta(&theta(&theta(&theta(y0))));

    let mut rhs = y0.clone();
    for k in 1..=4 {
        // (5 theta + k) s
        rhs = theta(&rhs).scale(&int(5)).add(&rhs.scale(&int(k))).expect("same var");
    }
    // multiply by 5x, dropping the term pushed past the truncation order
    let x = ExactSeries::variable(Variable::X, n);
    let rhs = rhs.mul(&x).expect("same var").scale(&int(5));
    lhs.sub(&rhs).map(|d| d.coeffs().iter().all(Zero::is_zero)).unwrap_or(false)
}

/// Harmonic block `H_n = sum_{j=n+1}^{5n} 1/j`.
fn harmonic_block(n: usize) -> Rational {
    ((n + 1)..=(5 * n)).map(|j| rat(1, j as i64)).sum()
}

/// The two coordinate charts near large complex structure, tied together by
/// the mirror map.
#[derive(Clone, Debug, PartialEq)]
pub struct MirrorChart {
    pub order: usize,
    /// `y0(x)`
    pub y0: ExactSeries,
    /// `q(x) = x exp(5/y0 sum_n a_n H_n x^n)`
    pub q_of_x: ExactSeries,
    /// Compositional inverse `x(q)`.
    pub x_of_q: ExactSeries,
    /// `u(q) = q d/dq log x(q)`.
    pub u_of_q: ExactSeries,
}

pub fn mirror_map(order: usize) -> Result<MirrorChart> {
    if order == 0 {
        return Err(Error::Domain {
            op: "mirror_map",
            requirement: "order >= 1".into(),
        });
    }
    let y0 = period_y0(order);
    let correction = ExactSeries::new(
        Variable::X,
        order,
        std::iter::once(Rational::zero())
            .chain((1..=order).map(|n| &y0.coeffs()[n] * harmonic_block(n))),
    );
    // log(q/x) = 5 S / y0
    let log_q_over_x = correction.scale(&int(5)).div(&y0)?;
    let x = ExactSeries::variable(Variable::X, order);
    let q_of_x = x.mul(&log_q_over_x.exp()?)?;
    let x_of_q = q_of_x.reverse()?.with_var(Variable::Q);

    // x d/dx log q = 1 + theta_x(log(q/x)); u is its reciprocal in the q chart
    let dlogq = ExactSeries::one(Variable::X, order).add(&log_q_over_x.euler_derivative())?;
    let u_of_q = dlogq.recip()?.compose(&x_of_q)?;

    Ok(MirrorChart {
        order,
        y0,
        q_of_x,
        x_of_q,
        u_of_q,
    })
}

/// `q d/dq log F_1` along the A-model chart, as a series in `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct F1LogDerivative {
    pub g: ExactSeries,
}

/// Exponents of the genus-one amplitude
/// `(psi/y0)^{62/3} (psi^5 - 1)^{-1/6} q dpsi/dq`.
const PSI_OVER_Y0_EXP: (i64, i64) = (62, 3);
const CONIFOLD_EXP: (i64, i64) = (-1, 6);

/// Net multiple of `log x` in `log F_1`.
///
/// `log psi = -(1/5) log x + const`, so `psi^{62/3}` and the factor `psi` from
/// `q dpsi/dq = -(psi/5) u` contribute `-(1/5)(62/3 + 1)`; the conifold
/// factor `(psi^5-1)^{-1/6} = ((1-3125x)/(3125x))^{-1/6}` contributes `+1/6`.
pub fn log_x_weight() -> Rational {
    let psi_power = rat(PSI_OVER_Y0_EXP.0, PSI_OVER_Y0_EXP.1) + int(1);
    -psi_power * rat(1, 5) - rat(CONIFOLD_EXP.0, CONIFOLD_EXP.1)
}

/// Assembles `G` from its ingredients:
///
/// ```text
/// -G = w u + u (theta_x M)(x(q)) + q d/dq log u,
/// M  = -(62/3) log y0 + (-1/6) log(1 - 3125 x),
/// ```
///
/// where `w` is [`log_x_weight`]. The overall sign selects the branch on which
/// the constant term is `+25/6`.
pub fn g_from_parts(u_of_q: &ExactSeries, x_of_q: &ExactSeries, y0: &ExactSeries) -> Result<ExactSeries> {
    let order = u_of_q.order().min(x_of_q.order()).min(y0.order());
    let y0 = y0.truncate(order);
    let conifold = ExactSeries::from_ints(Variable::X, order, &[1, -CONIFOLD_X_INV]);
    let theta_m = y0
        .log_derivative()?
        .scale(&-rat(PSI_OVER_Y0_EXP.0, PSI_OVER_Y0_EXP.1))
        .add(&conifold.log_derivative()?.scale(&rat(CONIFOLD_EXP.0, CONIFOLD_EXP.1)))?;
    let u = u_of_q.truncate(order);
    let minus_g = u
        .scale(&log_x_weight())
        .add(&u.mul(&theta_m.compose(&x_of_q.truncate(order))?)?)?
        .add(&u.log_derivative()?)?;
    Ok(minus_g.neg())
}

pub fn f1_log_derivative(chart: &MirrorChart) -> Result<F1LogDerivative> {
    let g = g_from_parts(&chart.u_of_q, &chart.x_of_q, &chart.y0)?;
    Ok(F1LogDerivative { g })
}
