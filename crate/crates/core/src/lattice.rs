//! The L2 inner product on `H^2` induced by a cubic form and a Kahler class,
//! the covolume of the integral lattice, and the FHSV specialization.
//!
//! Transcendental factors are powers of `pi` only; they are tracked as an
//! integer exponent next to a rational mantissa ([`PiMonomial`]).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pseries::{format_rational, int, parse_rational, rat, Rational};

/// `mantissa * pi^pi_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiMonomial {
    pub mantissa: Rational,
    pub pi_power: i32,
}

impl PiMonomial {
    pub fn new(mantissa: Rational, pi_power: i32) -> Self {
        Self { mantissa, pi_power }
    }

    pub fn rational(r: Rational) -> Self {
        Self::new(r, 0)
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    /// `(2 pi)^k`.
    pub fn two_pi_pow(k: i32) -> Self {
        Self::new(pow_rational(&int(2), k), k)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.mantissa * &other.mantissa, self.pi_power + other.pi_power)
    }

    pub fn powi(&self, k: i32) -> Self {
        Self::new(pow_rational(&self.mantissa, k), self.pi_power * k)
    }

    pub fn recip(&self) -> Self {
        self.powi(-1)
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.mantissa.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI.powi(self.pi_power)
    }

    pub fn to_json(&self) -> PiMonomialJson {
        PiMonomialJson {
            mantissa: format_rational(&self.mantissa),
            pi_power: self.pi_power,
        }
    }

    pub fn from_json(json: &PiMonomialJson) -> Result<Self> {
        Ok(Self::new(parse_rational(&json.mantissa)?, json.pi_power))
    }
}

impl fmt::Display for PiMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_power {
            0 => write!(f, "{}", self.mantissa),
            p => write!(f, "{} * pi^{}", self.mantissa, p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiMonomialJson {
    pub mantissa: String,
    pub pi_power: i32,
}

fn pow_rational(r: &Rational, k: i32) -> Rational {
    let base = if k < 0 { r.recip() } else { r.clone() };
    (0..k.unsigned_abs()).fold(Rational::one(), |acc, _| acc * &base)
}

/// Square matrix of rationals, row-major.
pub type Matrix = Vec<Vec<Rational>>;

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Rows are first cleared of denominators, `det(A) = det(DA) / det(D)`, so
/// every intermediate quantity is an integer and each division is exact.
pub fn determinant(a: &Matrix) -> Rational {
    let n = a.len();
    if n == 0 {
        return Rational::one();
    }
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| {
            assert_eq!(row.len(), n, "matrix must be square");
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            row.iter().map(|x| (x * &l).to_integer()).collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    Rational::new(sign * &m[n - 1][n - 1], scale)
}

/// An integral lattice with a symmetric cubic form and a distinguished class.
///
/// `cubic` holds the rational values of the form on basis triples; every
/// value of the geometric form is `normalization` times the stored one, so
/// for the cup-product form `(2 pi)^{-3} int a b c` the normalization is
/// `(2 pi)^{-3}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicLattice {
    rank: usize,
    cubic: Vec<Rational>,
    kappa: Vec<Rational>,
    normalization: PiMonomial,
}

impl CubicLattice {
    /// Builds the form from `(i, j, k, value)` entries (0-based); every
    /// permutation of a listed triple receives the value and unlisted triples
    /// are zero. Conflicting entries for the same unordered triple are
    /// rejected.
    pub fn new(
        rank: usize,
        entries: &[(usize, usize, usize, Rational)],
        kappa: Vec<Rational>,
        normalization: PiMonomial,
    ) -> Result<Self> {
        let bad = |msg: String| Error::Domain {
            op: "cubic lattice",
            requirement: msg,
        };
        if rank == 0 {
            return Err(bad("rank >= 1".into()));
        }
        if kappa.len() != rank {
            return Err(bad(format!("kappa of length {rank}, got {}", kappa.len())));
        }
        let mut cubic = vec![Rational::zero(); rank * rank * rank];
        let mut set = vec![false; rank * rank * rank];
        for (i, j, k, v) in entries {
            let (i, j, k) = (*i, *j, *k);
            if i >= rank || j >= rank || k >= rank {
                return Err(bad(format!("indices below {rank}, got ({i}, {j}, {k})")));
            }
            for (a, b, c) in [(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)] {
                let idx = (a * rank + b) * rank + c;
                if set[idx] && &cubic[idx] != v {
                    return Err(bad(format!("a symmetric form; ({i}, {j}, {k}) given twice with different values")));
                }
                set[idx] = true;
                cubic[idx] = v.clone();
            }
        }
        let lattice = Self {
            rank,
            cubic,
            kappa,
            normalization,
        };
        if !lattice.kappa_cube().is_positive() {
            return Err(bad(format!(
                "c(kappa, kappa, kappa) > 0, got {}",
                format_rational(&lattice.kappa_cube())
            )));
        }
        Ok(lattice)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn kappa(&self) -> &[Rational] {
        &self.kappa
    }

    pub fn normalization(&self) -> &PiMonomial {
        &self.normalization
    }

    pub fn cubic_at(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.cubic[(i * self.rank + j) * self.rank + k]
    }

    /// `c(a, b, c)` on coordinate vectors, in units of the normalization.
    pub fn cubic_form(&self, a: &[Rational], b: &[Rational], c: &[Rational]) -> Rational {
        let n = self.rank;
        let mut acc = Rational::zero();
        for (i, ai) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let ab = ai * bj;
                for (k, ck) in c.iter().enumerate().take(n).filter(|(_, x)| !x.is_zero()) {
                    let v = self.cubic_at(i, j, k);
                    if !v.is_zero() {
                        acc += &ab * ck * v;
                    }
                }
            }
        }
        acc
    }

    fn kappa_cube(&self) -> Rational {
        self.cubic_form(&self.kappa, &self.kappa, &self.kappa)
    }

    /// `<a, b> = (3/2) c(a,k,k) c(b,k,k) / c(k,k,k) - c(a,b,k)`, in units of
    /// the normalization.
    pub fn l2_pairing(&self, a: &[Rational], b: &[Rational]) -> Result<Rational> {
        let kkk = self.kappa_cube();
        if kkk.is_zero() {
            return Err(Error::DegenerateKahler);
        }
        let k = &self.kappa;
        let akk = self.cubic_form(a, k, k);
        let bkk = self.cubic_form(b, k, k);
        let abk = self.cubic_form(a, b, k);
        Ok(rat(3, 2) * akk * bkk / kkk - abk)
    }

    /// Gram matrix of the basis under the L2 pairing and its determinant.
    pub fn covolume(&self) -> Result<GramResult> {
        let basis: Vec<Vec<Rational>> = (0..self.rank)
            .map(|i| (0..self.rank).map(|j| if i == j { int(1) } else { int(0) }).collect())
            .collect();
        let mut gram = vec![vec![Rational::zero(); self.rank]; self.rank];
        for i in 0..self.rank {
            for j in i..self.rank {
                let v = self.l2_pairing(&basis[i], &basis[j])?;
                gram[i][j] = v.clone();
                gram[j][i] = v;
            }
        }
        let det = determinant(&gram);
        let covolume = PiMonomial::rational(det).mul(&self.normalization.powi(self.rank as i32));
        Ok(GramResult { gram, covolume })
    }

    /// Re-expresses the lattice in the basis `e'_i = sum_j p[i][j] e_j`.
    /// For `p` in `GL(rank, Z)` the covolume is unchanged.
    pub fn change_basis(&self, p: &[Vec<BigInt>]) -> Result<Self> {
        let n = self.rank;
        let p: Matrix = p
            .iter()
            .map(|row| row.iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect();
        // c'(i,j,k) = sum p_ia p_jb p_kc c(a,b,c)
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let v = self.cubic_form(&p[i], &p[j], &p[k]);
                    if !v.is_zero() {
                        entries.push((i, j, k, v));
                    }
                }
            }
        }
        // kappa = sum k_i e_i = sum k'_i e'_i  =>  p^T k' = k
        let pt: Matrix = (0..n).map(|i| (0..n).map(|j| p[j][i].clone()).collect()).collect();
        let kappa = solve(&pt, &self.kappa).ok_or(Error::Domain {
            op: "change_basis",
            requirement: "an invertible basis change".into(),
        })?;
        Self::new(n, &entries, kappa, self.normalization.clone())
    }

    pub fn from_json(json: &LatticeJson) -> Result<Self> {
        let mut entries = Vec::with_capacity(json.cubic.len());
        for e in &json.cubic {
            entries.push((e.0, e.1, e.2, parse_rational(&e.3)?));
        }
        let kappa = json
            .kappa
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        let normalization = match &json.normalization {
            Some(n) => PiMonomial::from_json(n)?,
            None => PiMonomial::one(),
        };
        Self::new(json.rank, &entries, kappa, normalization)
    }
}

/// `{rank, cubic: [[i,j,k,"p/q"], ...], kappa: ["p/q", ...]}` with optional
/// `normalization: {mantissa, pi_power}` (default 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub rank: usize,
    pub cubic: Vec<(usize, usize, usize, String)>,
    pub kappa: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalization: Option<PiMonomialJson>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GramResult {
    /// Pairings of basis vectors in units of the lattice normalization.
    pub gram: Matrix,
    pub covolume: PiMonomial,
}

impl GramResult {
    pub fn to_json(&self) -> GramResultJson {
        GramResultJson {
            gram: self
                .gram
                .iter()
                .map(|row| row.iter().map(format_rational).collect())
                .collect(),
            covolume: self.covolume.to_json(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramResultJson {
    pub gram: Vec<Vec<String>>,
    pub covolume: PiMonomialJson,
}

/// Exact solution of `a x = b` by Gauss-Jordan elimination; `None` when `a`
/// is singular.
pub fn solve(a: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().cloned().chain(std::iter::once(bi.clone())).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let v = &f * &m[col][c];
                    m[r][c] -= v;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

fn quadratic(a: &Matrix, h: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            acc += &h[i] * x * &h[j];
        }
    }
    acc
}

fn mat_vec(a: &Matrix, h: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(h).map(|(x, y)| x * y).sum())
        .collect()
}

/// `B = A - 2 (A h)(h^T A) / (h^T A h)`, the reflection of `A` in `h`.
pub fn reflect_in(a: &Matrix, h: &[Rational]) -> Result<Matrix> {
    let hah = quadratic(a, h);
    if hah.is_zero() {
        return Err(Error::Domain {
            op: "rank-1 update",
            requirement: "h^T A h != 0".into(),
        });
    }
    let ah = mat_vec(a, h);
    let coef = int(2) / hah;
    Ok(a.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, x)| x - &coef * &ah[i] * &ah[j])
                .collect()
        })
        .collect())
}

/// Checks `det B = -det A` for `B` from [`reflect_in`].
pub fn rank1_update_det_check(a: &Matrix, h: &[Rational]) -> Result<bool> {
    let det_a = determinant(a);
    if det_a.is_zero() {
        return Err(Error::Domain {
            op: "rank-1 update",
            requirement: "A invertible".into(),
        });
    }
    let b = reflect_in(a, h)?;
    Ok(determinant(&b) == -det_a)
}

/// Rank of the Enriques-invariant part of `H^2` of the K3 cover.
pub const FHSV_K3_RANK: usize = 10;

fn fhsv_validate(a: &Matrix, h: &[Rational]) -> Result<Rational> {
    let n = FHSV_K3_RANK;
    if a.len() != n || a.iter().any(|r| r.len() != n) || h.len() != n {
        return Err(Error::Domain {
            op: "fhsv",
            requirement: format!("a {n}x{n} Gram matrix and a vector of length {n}"),
        });
    }
    if (0..n).any(|i| (0..n).any(|j| a[i][j] != a[j][i] || !a[i][j].is_integer())) {
        return Err(Error::Domain {
            op: "fhsv",
            requirement: "a symmetric integral Gram matrix".into(),
        });
    }
    let det = determinant(a);
    if det != int(-1024) {
        return Err(Error::LatticeType(format_rational(&det)));
    }
    let hah = quadratic(a, h);
    if !hah.is_positive() {
        return Err(Error::NonKahler(format_rational(&hah)));
    }
    Ok(hah)
}

/// The cubic lattice of the FHSV threefold `(K3 x E)/Z_2`.
///
/// On the cover, `int e_i e_j v = <e_i, e_j>` is the only nonzero cubic
/// pairing; pulling back halves it. The class is `kappa = H + v` with
/// `H = sum h_i e_i`, and the normalization is `(2 pi)^{-3}`.
pub fn fhsv_lattice(a: &Matrix, h: &[Rational]) -> Result<CubicLattice> {
    fhsv_validate(a, h)?;
    let n = FHSV_K3_RANK;
    let v = n;
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i..n {
            if !a[i][j].is_zero() {
                entries.push((i, j, v, &a[i][j] * rat(1, 2)));
            }
        }
    }
    let kappa = h.iter().cloned().chain(std::iter::once(int(1))).collect();
    CubicLattice::new(n + 1, &entries, kappa, PiMonomial::two_pi_pow(-3))
}

/// Covolume of the FHSV lattice via the generic Gram determinant.
pub fn fhsv_covolume(a: &Matrix, h: &[Rational]) -> Result<GramResult> {
    fhsv_lattice(a, h)?.covolume()
}

/// `Vol = <H,H> / (2^5 pi^3)`.
pub fn fhsv_volume(a: &Matrix, h: &[Rational]) -> Result<PiMonomial> {
    let hah = fhsv_validate(a, h)?;
    Ok(PiMonomial::new(hah * rat(1, 32), -3))
}

/// `Vol^{-3} Vol_L2^{-1} <H,H>^4`, the constant left after the `<H,H>`
/// dependence cancels.
pub fn fhsv_constant(a: &Matrix, h: &[Rational]) -> Result<PiMonomial> {
    let hah = fhsv_validate(a, h)?;
    let vol = fhsv_volume(a, h)?;
    let covol = fhsv_covolume(a, h)?.covolume;
    Ok(vol
        .powi(-3)
        .mul(&covol.recip())
        .mul(&PiMonomial::rational(hah).powi(4)))
}

pub fn matrix_from_ints(rows: &[Vec<i64>]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
}

/// `U(2) + E8(2)`: an even lattice of rank 10 with determinant `-2^10`.
pub fn enriques_gram() -> Matrix {
    let mut m = vec![vec![0i64; 10]; 10];
    m[0][1] = 2;
    m[1][0] = 2;
    // E8 Cartan matrix (negative definite sign convention), scaled by 2
    let e8_edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)];
    for i in 0..8 {
        m[2 + i][2 + i] = -4;
    }
    for (i, j) in e8_edges {
        m[2 + i][2 + j] = 2;
        m[2 + j][2 + i] = 2;
    }
    matrix_from_ints(&m)
}
