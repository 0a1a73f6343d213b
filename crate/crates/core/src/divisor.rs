//! The closed-form factor of the BCOV invariant over the `psi`-line.
//!
//! For a one-parameter family over `P^1` with degeneration divisor
//! `D* = sum r_k D_k`, ramification `R = sum (r_j - 1) R_j` and a section
//! `Xi` of the Hodge bundle with `div(Xi) = sum m_i P_i + m_inf P_inf`, the
//! invariant is `C || F Xi^{48+chi} (d/dpsi)^12 ||^{1/6}` with
//!
//! ```text
//! F = prod (psi - D_k)^{2 r_k} / ((psi - P_i)^{(48+chi) m_i} (psi - R_j)^{12 (r_j - 1)}).
//! ```
//!
//! [`WeightedDivisor`] records the exponents of `F` together with the powers
//! of `Xi`, of the vector field, and the outer root.

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::{format_complex, parse_complex};
use crate::pseries::{format_rational, int, rat, Rational};

/// Points closer than this are treated as equal when one of them is only
/// known numerically.
pub const POINT_TOLERANCE: f64 = 1e-12;

/// A point of `P^1` in the coordinate `psi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Point {
    /// `exp(2 pi i index / order)`, kept symbolic.
    RootOfUnity { order: u32, index: u32 },
    Value(Complex64),
    Infinity,
}

impl Point {
    pub fn root_of_unity(order: u32, index: u32) -> Self {
        assert!(order >= 1);
        let r = Ratio::new(index % order, order);
        Point::RootOfUnity {
            order: *r.denom(),
            index: *r.numer(),
        }
    }

    pub fn value(re: f64, im: f64) -> Self {
        Point::Value(Complex64::new(re, im))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn to_complex(&self) -> Option<Complex64> {
        match *self {
            Point::RootOfUnity { order, index } => Some(Complex64::from_polar(
                1.0,
                2.0 * std::f64::consts::PI * index as f64 / order as f64,
            )),
            Point::Value(z) => Some(z),
            Point::Infinity => None,
        }
    }

    /// Exact for two symbolic points, numeric to [`POINT_TOLERANCE`] otherwise.
    pub fn same_as(&self, other: &Point) -> bool {
        match (self, other) {
            (Point::Infinity, Point::Infinity) => true,
            (Point::Infinity, _) | (_, Point::Infinity) => false,
            (Point::RootOfUnity { .. }, Point::RootOfUnity { .. }) => {
                Point::normalize(self) == Point::normalize(other)
            }
            _ => {
                let (a, b) = (self.to_complex().unwrap(), other.to_complex().unwrap());
                (a - b).norm() <= POINT_TOLERANCE
            }
        }
    }

    fn normalize(p: &Point) -> Point {
        match *p {
            Point::RootOfUnity { order, index } => Point::root_of_unity(order, index),
            other => other,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointJson {
    Root { root_of_unity: (u32, u32) },
    Value { value: String },
    Named(String),
}

impl PointJson {
    pub fn to_point(&self) -> Result<Point> {
        match self {
            PointJson::Root { root_of_unity: (n, k) } => {
                if *n == 0 {
                    return Err(Error::Parse("root_of_unity order must be >= 1".into()));
                }
                Ok(Point::root_of_unity(*n, *k))
            }
            PointJson::Value { value } => Ok(Point::Value(parse_complex(value)?)),
            PointJson::Named(s) if s == "infinity" => Ok(Point::Infinity),
            PointJson::Named(s) => Err(Error::Parse(format!("unknown point {s:?}"))),
        }
    }

    pub fn from_point(p: &Point) -> Self {
        match *p {
            Point::RootOfUnity { order, index } => PointJson::Root {
                root_of_unity: (order, index),
            },
            Point::Value(z) => PointJson::Value {
                value: format_complex(z),
            },
            Point::Infinity => PointJson::Named("infinity".into()),
        }
    }
}

/// Divisor data of a one-parameter family over the `psi`-line.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyData {
    /// Euler number of the general fiber.
    pub chi: i64,
    /// `div(Xi)` as `(point, multiplicity)`; may include infinity.
    pub xi_divisor: Vec<(Point, i64)>,
    /// `(R_j, r_j)` with `r_j >= 2`.
    pub ramification: Vec<(Point, u32)>,
    /// `(D_k, r_k)` with `r_k >= 1`.
    pub odp_points: Vec<(Point, u32)>,
}

impl FamilyData {
    /// The mirror quintic: `chi = 200`, `div(Xi) = [0]`, a reduced
    /// degeneration divisor at the fifth roots of unity, no ramification.
    pub fn mirror_quintic() -> Self {
        Self {
            chi: 200,
            xi_divisor: vec![(Point::value(0.0, 0.0), 1)],
            ramification: Vec::new(),
            odp_points: (0..5).map(|k| (Point::root_of_unity(5, k), 1)).collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::IllPosedFamily(m));
        if let Some((_, r)) = self.ramification.iter().find(|(_, r)| *r < 2) {
            return bad(format!("ramification index must be >= 2, got {r}"));
        }
        if let Some((_, r)) = self.odp_points.iter().find(|(_, r)| *r < 1) {
            return bad(format!("ODP multiplicity must be >= 1, got {r}"));
        }
        if self
            .ramification
            .iter()
            .chain(&self.odp_points)
            .any(|(p, _)| p.is_infinite())
        {
            return bad("ramification and ODP points must be finite".into());
        }
        let lists: [(&str, Vec<Point>); 3] = [
            ("div(Xi)", self.xi_divisor.iter().map(|e| e.0).collect()),
            ("ramification", self.ramification.iter().map(|e| e.0).collect()),
            ("ODP", self.odp_points.iter().map(|e| e.0).collect()),
        ];
        let all: Vec<(&str, Point)> = lists
            .iter()
            .flat_map(|(name, pts)| pts.iter().map(move |p| (*name, *p)))
            .collect();
        for (i, (na, a)) in all.iter().enumerate() {
            for (nb, b) in &all[i + 1..] {
                if a.same_as(b) {
                    return bad(format!("point {a:?} appears in both {na} and {nb}"));
                }
            }
        }
        Ok(())
    }

    pub fn xi_degree(&self) -> i64 {
        self.xi_divisor.iter().map(|(_, m)| m).sum()
    }

    pub fn odp_degree(&self) -> i64 {
        self.odp_points.iter().map(|(_, r)| *r as i64).sum()
    }

    pub fn ramification_degree(&self) -> i64 {
        self.ramification.iter().map(|(_, r)| *r as i64 - 1).sum()
    }

    pub fn hodge_weight(&self) -> i64 {
        48 + self.chi
    }

    pub fn from_json(json: &FamilyJson) -> Result<Self> {
        let data = Self {
            chi: json.chi,
            xi_divisor: json
                .xi_divisor
                .iter()
                .map(|e| Ok((e.point.to_point()?, e.multiplicity)))
                .collect::<Result<_>>()?,
            ramification: json
                .ramification
                .iter()
                .map(|e| Ok((e.point.to_point()?, e.r)))
                .collect::<Result<_>>()?,
            odp_points: json
                .odp_points
                .iter()
                .map(|e| Ok((e.point.to_point()?, e.r)))
                .collect::<Result<_>>()?,
        };
        data.validate()?;
        Ok(data)
    }

    pub fn to_json(&self) -> FamilyJson {
        FamilyJson {
            chi: self.chi,
            xi_divisor: self
                .xi_divisor
                .iter()
                .map(|(p, m)| XiEntry {
                    point: PointJson::from_point(p),
                    multiplicity: *m,
                })
                .collect(),
            ramification: self
                .ramification
                .iter()
                .map(|(p, r)| IndexedPoint {
                    point: PointJson::from_point(p),
                    r: *r,
                })
                .collect(),
            odp_points: self
                .odp_points
                .iter()
                .map(|(p, r)| IndexedPoint {
                    point: PointJson::from_point(p),
                    r: *r,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct XiEntry {
    pub point: PointJson,
    pub multiplicity: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndexedPoint {
    pub point: PointJson,
    pub r: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub chi: i64,
    #[serde(default)]
    pub xi_divisor: Vec<XiEntry>,
    #[serde(default)]
    pub ramification: Vec<IndexedPoint>,
    #[serde(default)]
    pub odp_points: Vec<IndexedPoint>,
}

/// `|| prod (psi - p)^{e_p} Xi^{xi_power} (d/dpsi)^{vector_field_power} ||^{overall_root}`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedDivisor {
    /// Exponents at finite points.
    pub entries: Vec<(Point, Rational)>,
    pub xi_power: Rational,
    pub vector_field_power: Rational,
    pub overall_root: Rational,
}

impl WeightedDivisor {
    /// Order of the rational function at infinity in the local coordinate
    /// `1/psi`, i.e. minus the total finite degree.
    pub fn infinity_exponent(&self) -> Rational {
        -self.entries.iter().map(|(_, e)| e.clone()).sum::<Rational>()
    }

    /// Exponents scaled by the outer root, with coincident points merged and
    /// zero exponents removed.
    pub fn normalized(&self) -> (Vec<(Point, Rational)>, Rational, Rational) {
        let mut merged: Vec<(Point, Rational)> = Vec::new();
        for (p, e) in &self.entries {
            let scaled = e * &self.overall_root;
            match merged.iter_mut().find(|(q, _)| q.same_as(p)) {
                Some(slot) => slot.1 += scaled,
                None => merged.push((*p, scaled)),
            }
        }
        merged.retain(|(_, e)| !e.is_zero());
        (
            merged,
            &self.xi_power * &self.overall_root,
            &self.vector_field_power * &self.overall_root,
        )
    }
}

/// Exponents of the closed-form factor for the given family.
pub fn assemble_factor(data: &FamilyData) -> Result<WeightedDivisor> {
    data.validate()?;
    let w = data.hodge_weight();
    let mut entries = Vec::new();
    for (p, r) in &data.odp_points {
        entries.push((*p, int(2 * *r as i64)));
    }
    for (p, m) in data.xi_divisor.iter().filter(|(p, _)| !p.is_infinite()) {
        entries.push((*p, int(-w * m)));
    }
    for (p, r) in &data.ramification {
        entries.push((*p, int(-12 * (*r as i64 - 1))));
    }
    Ok(WeightedDivisor {
        entries,
        xi_power: int(w),
        vector_field_power: int(12),
        overall_root: rat(1, 6),
    })
}

/// Equality after multiplying every exponent by the outer root.
pub fn divisor_equal(a: &WeightedDivisor, b: &WeightedDivisor) -> bool {
    let (ea, xa, va) = a.normalized();
    let (eb, xb, vb) = b.normalized();
    if xa != xb || va != vb || ea.len() != eb.len() {
        return false;
    }
    ea.iter()
        .all(|(p, e)| eb.iter().any(|(q, f)| p.same_as(q) && e == f))
}

/// `psi^{-62} (psi^5 - 1)^{1/2} Xi^62 (d/dpsi)^3` under the `2/3` root.
pub fn quintic_normal_form() -> WeightedDivisor {
    let mut entries = vec![(Point::value(0.0, 0.0), int(-62))];
    entries.extend((0..5).map(|k| (Point::root_of_unity(5, k), rat(1, 2))));
    WeightedDivisor {
        entries,
        xi_power: int(62),
        vector_field_power: int(3),
        overall_root: rat(2, 3),
    }
}

/// `log |prod (psi - D_k)^{2 r_k} / ((psi - P_i)^{(48+chi) m_i} (psi - R_j)^{12(r_j-1)})|`.
pub fn green_potential(data: &FamilyData, psi: Complex64) -> Result<f64> {
    let factor = assemble_factor(data)?;
    let mut acc = 0.0;
    for (p, e) in &factor.entries {
        let z = p.to_complex().expect("finite entry");
        let dist = (psi - z).norm();
        if dist <= POINT_TOLERANCE {
            return Err(Error::OnDivisor {
                exponent: format_rational(e),
            });
        }
        acc += e.to_f64().unwrap_or(f64::NAN) * dist.ln();
    }
    Ok(acc)
}

/// The degree balance
/// `12 a + (48+chi) b - 12 c - 2 deg D* + 12 deg R + 12 chi(P^1) + (48+chi) deg Xi`,
/// which vanishes for consistent boundary exponents `(a, b, c)` at infinity.
pub fn residue_balance_check(data: &FamilyData, boundary: (&Rational, &Rational, &Rational)) -> Rational {
    let (a, b, c) = boundary;
    let w = int(data.hodge_weight());
    let euler_p1 = 2;
    a * int(12) + &w * b - c * int(12) - int(2 * data.odp_degree())
        + int(12 * data.ramification_degree())
        + int(12 * euler_p1)
        + w * int(data.xi_degree())
}

/// Solves the degree balance for `b(inf)` given `a(inf)` and `c(inf)`;
/// `None` when `48 + chi = 0`.
pub fn solve_b_infinity(data: &FamilyData, a: &Rational, c: &Rational) -> Option<Rational> {
    let w = data.hodge_weight();
    if w == 0 {
        return None;
    }
    let rest = residue_balance_check(data, (a, &Rational::zero(), c));
    Some(-rest / int(w))
}
