//! Seeded generators for property-style checks.

use std::collections::BTreeMap;

use mirrorcalc::gw::GwTable;
use mirrorcalc::lattice::Matrix;
use mirrorcalc::pseries::{rat, Rational};
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-20..=20), rng.gen_range(1..=9))
}

/// Random table with sparse rational entries up to `max_degree`.
pub fn gw_table(rng: &mut impl Rng, max_degree: usize) -> GwTable {
    let mut n0 = BTreeMap::new();
    let mut n1 = BTreeMap::new();
    for d in 1..=max_degree {
        let r0 = if rng.gen_bool(0.6) { small_rational(rng) } else { rat(0, 1) };
        let r1 = if rng.gen_bool(0.6) { small_rational(rng) } else { rat(0, 1) };
        n0.insert(d, r0);
        n1.insert(d, r1);
    }
    GwTable::from_maps(n0, n1)
}

pub fn symmetric_matrix(rng: &mut impl Rng, n: usize) -> Matrix {
    let mut m = vec![vec![rat(0, 1); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = small_rational(rng);
            m[i][j] = v.clone();
            m[j][i] = v;
        }
    }
    m
}

pub fn vector(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| small_rational(rng)).collect()
}

/// Product of random elementary integer row operations and sign flips, so
/// the determinant is +-1.
pub fn unimodular(rng: &mut impl Rng, n: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            if rng.gen_bool(0.3) {
                m[i].iter_mut().for_each(|x| *x = -x.clone());
            }
            continue;
        }
        let k = BigInt::from(rng.gen_range(-2i64..=2));
        let row_j = m[j].clone();
        for (x, y) in m[i].iter_mut().zip(row_j) {
            *x += &k * y;
        }
    }
    m
}

/// Random symmetric cubic form of the given rank together with a class
/// `kappa` satisfying `c(kappa, kappa, kappa) > 0`.
pub fn cubic_lattice(rng: &mut impl Rng, rank: usize) -> mirrorcalc::lattice::CubicLattice {
    use mirrorcalc::lattice::{CubicLattice, PiMonomial};
    loop {
        let mut entries = Vec::new();
        for i in 0..rank {
            for j in i..rank {
                for k in j..rank {
                    if rng.gen_bool(0.5) {
                        entries.push((i, j, k, rat(rng.gen_range(-6..=6), rng.gen_range(1..=3))));
                    }
                }
            }
        }
        let kappa = (0..rank).map(|_| rat(rng.gen_range(-3..=3), 1)).collect();
        if let Ok(l) = CubicLattice::new(rank, &entries, kappa, PiMonomial::two_pi_pow(-3)) {
            return l;
        }
    }
}
