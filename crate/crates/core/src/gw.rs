//! Gromov-Witten bookkeeping for the genus-one amplitude.
//!
//! The right-hand side of the genus-one mirror formula has two algebraically
//! equivalent shapes: a Lambert series and the logarithmic derivative of an
//! eta product. Both are built here, independently, so each can check the
//! other. The genus-zero input comes either from the user or from
//! [`genus0_pipeline`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::eta_series;
use crate::pseries::{format_rational, int, parse_rational, rat, ExactSeries, Rational, Variable};
use crate::quintic::{MirrorChart, CONIFOLD_X_INV};

/// Degree-indexed genus-0 and genus-1 invariants.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct GwTable {
    pub max_degree: usize,
    pub n0: BTreeMap<usize, Rational>,
    pub n1: BTreeMap<usize, Rational>,
    /// Genus-0 instanton numbers, present when the table came from
    /// [`genus0_pipeline`].
    pub instanton_n0: Option<BTreeMap<usize, BigInt>>,
}

/// The constant `50/12` heading both forms.
pub fn leading_constant() -> Rational {
    rat(50, 12)
}

impl GwTable {
    /// A table with every invariant zero up to `max_degree`.
    pub fn empty(max_degree: usize) -> Self {
        let zeros: BTreeMap<_, _> = (1..=max_degree).map(|d| (d, Rational::zero())).collect();
        Self {
            max_degree,
            n0: zeros.clone(),
            n1: zeros,
            instanton_n0: None,
        }
    }

    pub fn from_maps(n0: BTreeMap<usize, Rational>, n1: BTreeMap<usize, Rational>) -> Self {
        let max_degree = n0.keys().chain(n1.keys()).copied().max().unwrap_or(0);
        let mut t = Self::empty(max_degree);
        t.n0.extend(n0);
        t.n1.extend(n1);
        t
    }

    fn n0_at(&self, d: usize) -> Rational {
        self.n0.get(&d).cloned().unwrap_or_else(Rational::zero)
    }

    fn n1_at(&self, d: usize) -> Rational {
        self.n1.get(&d).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn to_json(&self) -> GwTableJson {
        let fmt = |m: &BTreeMap<usize, Rational>| -> BTreeMap<String, String> {
            m.iter().map(|(d, v)| (d.to_string(), format_rational(v))).collect()
        };
        GwTableJson {
            n0: fmt(&self.n0),
            n1: Some(fmt(&self.n1)),
            instanton_n0: self
                .instanton_n0
                .as_ref()
                .map(|m| m.iter().map(|(d, v)| (d.to_string(), v.to_string())).collect()),
        }
    }

    pub fn from_json(json: &GwTableJson) -> Result<Self> {
        let n0 = parse_degree_map(&json.n0)?;
        let n1 = json.n1.as_ref().map(parse_degree_map).transpose()?.unwrap_or_default();
        let mut table = Self::from_maps(n0, n1);
        if let Some(inst) = &json.instanton_n0 {
            let parsed = inst
                .iter()
                .map(|(d, v)| {
                    let d = parse_degree(d)?;
                    let v = v
                        .parse::<BigInt>()
                        .map_err(|_| Error::Parse(format!("not an integer: {v:?}")))?;
                    Ok((d, v))
                })
                .collect::<Result<BTreeMap<_, _>>>()?;
            table.instanton_n0 = Some(parsed);
        }
        Ok(table)
    }
}

/// File/CLI schema: `{"n0": {"1": "2875", ...}, "n1": {...}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GwTableJson {
    pub n0: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n1: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instanton_n0: Option<BTreeMap<String, String>>,
}

fn parse_degree(s: &str) -> Result<usize> {
    match s.trim().parse::<usize>() {
        Ok(d) if d >= 1 => Ok(d),
        _ => Err(Error::Parse(format!("degree must be a positive integer, got {s:?}"))),
    }
}

pub fn parse_degree_map(m: &BTreeMap<String, String>) -> Result<BTreeMap<usize, Rational>> {
    m.iter()
        .map(|(d, v)| Ok((parse_degree(d)?, parse_rational(v)?)))
        .collect()
}

/// `50/12 - sum_{n,d} N1(d) 2nd q^{nd}/(1-q^{nd}) - sum_d N0(d) 2d q^d/(12(1-q^d))`,
/// expanded term by term.
pub fn lambert_series(table: &GwTable, order: usize) -> ExactSeries {
    let mut c = vec![Rational::zero(); order + 1];
    c[0] = leading_constant();
    for d in 1..=order {
        let n1 = table.n1_at(d);
        if !n1.is_zero() {
            for n in 1..=order / d {
                let weight = &n1 * BigInt::from(2 * n * d);
                for m in (n * d..=order).step_by(n * d) {
                    c[m] -= &weight;
                }
            }
        }
        let n0 = table.n0_at(d);
        if !n0.is_zero() {
            let weight = &n0 * rat(2 * d as i64, 12);
            for m in (d..=order).step_by(d) {
                c[m] -= &weight;
            }
        }
    }
    ExactSeries::new(Variable::Q, order, c)
}

/// `q d/dq log {q^{25/12} prod_d eta(q^d)^{N1(d)} (1-q^d)^{N0(d)/12}}^2`
/// with `eta(q) = prod (1 - q^n)`, evaluated through series products and
/// logarithmic derivatives.
pub fn eta_product_log_derivative(table: &GwTable, order: usize) -> ExactSeries {
    let mut acc = ExactSeries::constant(Variable::Q, order, rat(25, 12));
    let dlog_eta = eta_series(order).log_derivative().expect("eta is a unit series");
    for d in 1..=order {
        let n1 = table.n1_at(d);
        if !n1.is_zero() {
            // theta log eta(q^d) = d * (theta log eta)(q^d)
            let weight = n1 * BigInt::from(d);
            acc = acc.add(&dlog_eta.dilate(d).scale(&weight)).expect("q-series");
        }
        let n0 = table.n0_at(d);
        if !n0.is_zero() {
            let mut one_minus = vec![Rational::zero(); order + 1];
            one_minus[0] = Rational::one();
            one_minus[d] = int(-1);
            let dlog = ExactSeries::new(Variable::Q, order, one_minus)
                .log_derivative()
                .expect("unit series");
            acc = acc.add(&dlog.scale(&(n0 * rat(1, 12)))).expect("q-series");
        }
    }
    acc.scale(&int(2))
}

fn divisors(m: usize) -> impl Iterator<Item = usize> {
    (1..=m).filter(move |d| m.is_multiple_of(*d))
}

fn sigma1(m: usize) -> usize {
    divisors(m).sum()
}

/// Solves the Lambert form for `N1(1..=order)` given `G` and the genus-0
/// invariants, degree by degree.
pub fn extract_n1(g: &ExactSeries, n0: &BTreeMap<usize, Rational>) -> Result<GwTable> {
    if g.constant_term() != &leading_constant() {
        return Err(Error::Normalization(format_rational(g.constant_term())));
    }
    let order = g.order();
    if let Some(d) = (1..=order).find(|d| !n0.contains_key(d)) {
        return Err(Error::Domain {
            op: "extract_n1",
            requirement: format!("genus-0 invariants for every degree up to {order}; degree {d} is missing"),
        });
    }
    let mut n1: BTreeMap<usize, Rational> = BTreeMap::new();
    for m in 1..=order {
        // -g_m = sum_{d|m} [ N1(d) 2d sigma(m/d) + N0(d) d/6 ]
        let mut rest = -g.coeff(m);
        for d in divisors(m) {
            rest -= &n0[&d] * rat(d as i64, 6);
            if d < m {
                rest -= &n1[&d] * BigInt::from(2 * d * sigma1(m / d));
            }
        }
        n1.insert(m, rest / BigInt::from(2 * m));
    }
    let n0 = (1..=order).map(|d| (d, n0[&d].clone())).collect();
    Ok(GwTable {
        max_degree: order,
        n0,
        n1,
        instanton_n0: None,
    })
}

/// Normalized Yukawa coupling `K(q) = 5 u^3 / ((1 - 3125 x) y0^2)` in the
/// `q` chart, i.e. the B-model coupling `5/(x^3 (1-3125x))` transported by
/// the mirror map and divided by `y0^2`.
pub fn yukawa_coupling(chart: &MirrorChart, order: usize) -> Result<ExactSeries> {
    let order = order.min(chart.order);
    let x = chart.x_of_q.truncate(order);
    let u = chart.u_of_q.truncate(order);
    let conifold = ExactSeries::from_ints(Variable::X, order, &[1, -CONIFOLD_X_INV]);
    let y0_sq = chart.y0.truncate(order).pow(2);
    let denom = conifold.mul(&y0_sq)?.compose(&x)?;
    u.pow(3).scale(&int(5)).div(&denom)
}

/// Genus-0 invariants from the Yukawa coupling.
///
/// `K(q) = 5 + sum_d n_d d^3 q^d/(1-q^d)` is solved for the instanton numbers
/// `n_d`, which must be integers; the Gromov-Witten invariants follow from
/// the multiple-cover rule `N0(d) = sum_{k|d} n_{d/k} / k^3`. `N1` is left at
/// zero.
pub fn genus0_pipeline(chart: &MirrorChart, order: usize) -> Result<GwTable> {
    if order > chart.order {
        return Err(Error::Domain {
            op: "genus0_pipeline",
            requirement: format!("chart of order >= {order}, got {}", chart.order),
        });
    }
    let k = yukawa_coupling(chart, order)?;
    if k.constant_term() != &int(5) {
        return Err(Error::Domain {
            op: "genus0_pipeline",
            requirement: format!("K(0) = 5, found {}", format_rational(k.constant_term())),
        });
    }
    let mut inst: BTreeMap<usize, BigInt> = BTreeMap::new();
    for m in 1..=order {
        let mut rest = k.coeff(m);
        for d in divisors(m).filter(|&d| d < m) {
            rest -= Rational::from_integer(&inst[&d] * BigInt::from(d * d * d));
        }
        let n = rest / BigInt::from(m * m * m);
        if !n.is_integer() {
            return Err(Error::NonIntegralInstanton {
                degree: m,
                value: format_rational(&n),
            });
        }
        inst.insert(m, n.to_integer());
    }
    let n0 = (1..=order)
        .map(|d| {
            let v: Rational = divisors(d)
                .map(|k| Rational::new(inst[&(d / k)].clone(), BigInt::from(k * k * k)))
                .sum();
            (d, v)
        })
        .collect();
    let mut table = GwTable::empty(order);
    table.n0 = n0;
    table.instanton_n0 = Some(inst);
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quintic::mirror_map;

    fn table_12_1() -> GwTable {
        GwTable::from_maps(
            BTreeMap::from([(1, int(12))]),
            BTreeMap::from([(1, int(1))]),
        )
    }

    #[test]
    fn lambert_examples() {
        let empty = lambert_series(&GwTable::empty(0), 5);
        assert_eq!(empty, ExactSeries::constant(Variable::Q, 5, rat(50, 12)));
        let s = lambert_series(&table_12_1(), 1);
        assert_eq!(s.coeffs(), &[rat(25, 6), int(-4)]);
    }

    #[test]
    fn eta_examples() {
        let empty = eta_product_log_derivative(&GwTable::empty(0), 5);
        assert_eq!(empty, ExactSeries::constant(Variable::Q, 5, rat(50, 12)));
        let s = eta_product_log_derivative(&table_12_1(), 1);
        assert_eq!(s.coeffs(), &[rat(25, 6), int(-4)]);
        assert_eq!(eta_product_log_derivative(&table_12_1(), 12), lambert_series(&table_12_1(), 12));
    }

    #[test]
    fn lambert_is_triangular() {
        let t = GwTable::from_maps(
            BTreeMap::from([(3, int(7))]),
            BTreeMap::from([(4, rat(1, 3))]),
        );
        let s = lambert_series(&t, 12);
        for m in [1, 2, 5, 7, 10, 11] {
            assert!(s.coeff(m).is_zero(), "degree {m}");
        }
        assert!(!s.coeff(3).is_zero());
        assert!(!s.coeff(8).is_zero());
    }

    #[test]
    fn extract_examples() {
        let g = ExactSeries::constant(Variable::Q, 4, rat(50, 12));
        let zeros: BTreeMap<_, _> = (1..=4).map(|d| (d, Rational::zero())).collect();
        let t = extract_n1(&g, &zeros).unwrap();
        assert!(t.n1.values().all(Zero::is_zero));

        let g = ExactSeries::new(Variable::Q, 1, [rat(25, 6), int(-4)]);
        let t = extract_n1(&g, &BTreeMap::from([(1, int(12))])).unwrap();
        assert_eq!(t.n1[&1], int(1));
    }

    #[test]
    fn extract_rejects_bad_input() {
        let g = ExactSeries::constant(Variable::Q, 2, int(4));
        assert!(matches!(extract_n1(&g, &BTreeMap::new()), Err(Error::Normalization(_))));
        let g = ExactSeries::constant(Variable::Q, 2, rat(25, 6));
        let n0 = BTreeMap::from([(1, int(1))]);
        assert!(matches!(extract_n1(&g, &n0), Err(Error::Domain { .. })));
    }

    #[test]
    fn genus0_first_degrees() {
        let chart = mirror_map(4).unwrap();
        let k = yukawa_coupling(&chart, 4).unwrap();
        assert_eq!(k.constant_term(), &int(5));
        let t = genus0_pipeline(&chart, 4).unwrap();
        let inst = t.instanton_n0.as_ref().unwrap();
        assert_eq!(inst[&1], BigInt::from(2875));
        assert_eq!(t.n0[&1], int(2875));
        assert_eq!(t.n0[&2], int(609250) + rat(2875, 8));
        assert!(genus0_pipeline(&chart, 5).is_err());
    }

    #[test]
    fn json_round_trip() {
        let chart = mirror_map(3).unwrap();
        let t = genus0_pipeline(&chart, 3).unwrap();
        let json = t.to_json();
        assert_eq!(json.n0["1"], "2875");
        assert_eq!(GwTable::from_json(&json).unwrap(), t);
    }
}
