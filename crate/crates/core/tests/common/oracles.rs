//! Reference computations that share no code with the library paths they
//! check.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Degree of `c_6(Sym^5 S^*)` on the Grassmannian `G(2,5)`, i.e. the number of
/// lines on a generic quintic threefold.
///
/// Splitting principle: with Chern roots `a, b` of `S^*`, the bundle
/// `Sym^5 S^*` has roots `i a + (5-i) b`. The top Chern class is rewritten in
/// `sigma_1 = a + b` and `sigma_11 = a b` and integrated with the Pieri rule.
pub fn lines_on_quintic() -> BigInt {
    // polynomial in (a, b): exponent pair -> coefficient
    let mut poly: BTreeMap<(u32, u32), BigInt> = BTreeMap::from([((0, 0), BigInt::one())]);
    for i in 0..=5u32 {
        let mut next: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for ((p, q), c) in &poly {
            *next.entry((p + 1, *q)).or_default() += c * BigInt::from(i);
            *next.entry((*p, q + 1)).or_default() += c * BigInt::from(5 - i);
        }
        next.retain(|_, c| !c.is_zero());
        poly = next;
    }

    // symmetric reduction: leading a^i b^j (i >= j) -> e1^{i-j} e2^j
    let mut in_e: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
    while let Some((&(i, j), c)) = poly.iter().filter(|((i, j), _)| i >= j).max_by_key(|(k, _)| **k) {
        let c = c.clone();
        *in_e.entry((i - j, j)).or_default() += &c;
        for ((p, q), v) in e_monomial(i - j, j) {
            *poly.entry((p, q)).or_default() -= &c * v;
        }
        poly.retain(|_, v| !v.is_zero());
    }
    assert!(poly.is_empty(), "c6 is symmetric");

    in_e.iter()
        .map(|(&(k, l), c)| c * schubert_integral(k, l))
        .sum()
}

/// Expansion of `(a+b)^k (ab)^l` in monomials.
fn e_monomial(k: u32, l: u32) -> BTreeMap<(u32, u32), BigInt> {
    let mut out = BTreeMap::new();
    let mut binom = BigInt::one();
    for r in 0..=k {
        out.insert((r + l, k - r + l), binom.clone());
        binom = binom * (k - r) / (r + 1);
    }
    out
}

/// `int_{G(2,5)} sigma_1^k sigma_11^l` with `k + 2l = 6`, by repeated Pieri
/// multiplication on partitions inside the 2 x 3 box.
fn schubert_integral(k: u32, l: u32) -> BigInt {
    let mut classes: BTreeMap<(u32, u32), BigInt> = BTreeMap::from([((0, 0), BigInt::one())]);
    let fits = |(a, b): (u32, u32)| a <= 3 && b <= a;
    for _ in 0..k {
        let mut next: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for (&(a, b), c) in &classes {
            for cand in [(a + 1, b), (a, b + 1)] {
                if fits(cand) {
                    *next.entry(cand).or_default() += c;
                }
            }
        }
        classes = next;
    }
    for _ in 0..l {
        classes = classes
            .into_iter()
            .filter_map(|((a, b), c)| fits((a + 1, b + 1)).then_some(((a + 1, b + 1), c)))
            .collect();
    }
    classes.get(&(3, 3)).cloned().unwrap_or_default()
}

/// Generalized pentagonal numbers `k(3k-1)/2` and their signs, as in Euler's
/// pentagonal number theorem, up to `order`.
pub fn pentagonal_coefficients(order: usize) -> Vec<i64> {
    let mut c = vec![0i64; order + 1];
    for k in 0i64.. {
        let mut any = false;
        for m in [k, -k] {
            let g = m * (3 * m - 1) / 2;
            if (g as usize) <= order {
                any = true;
                c[g as usize] = if k % 2 == 0 { 1 } else { -1 };
            }
        }
        if !any {
            break;
        }
    }
    c
}

/// Truncated product `prod_{n=1}^{order} (1 - q^n)^e` by repeated naive
/// polynomial multiplication over i128.
pub fn naive_product_power(order: usize, e: u32) -> Vec<i128> {
    let mut acc = vec![0i128; order + 1];
    acc[0] = 1;
    for n in 1..=order {
        for _ in 0..e {
            let mut next = acc.clone();
            for m in n..=order {
                next[m] -= acc[m - n];
            }
            acc = next;
        }
    }
    acc
}

