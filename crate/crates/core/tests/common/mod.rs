//! Independent oracles shared by the integration and acceptance tests. Only
//! num-bigint arithmetic is used here, never the crate's own rings.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Integer polynomial in `X, Y` as `(i, j) -> c`.
pub type IntPoly = BTreeMap<(usize, usize), i64>;

fn binom(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for t in 0..k {
        r = r * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    r
}

/// Coefficients of `f(Z - 1, W - 1)` in `Z^a W^b`, exponents reduced mod `m`.
pub fn group_ring_coeffs(f: &IntPoly, m: usize) -> BTreeMap<(usize, usize), BigInt> {
    let mut out: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
    for (&(i, j), &c) in f {
        // X^i = sum_a C(i, a) Z^a (-1)^{i-a}
        for a in 0..=i {
            for b in 0..=j {
                let sign = if (i - a + j - b) % 2 == 0 { 1 } else { -1 };
                let term = binom(i, a) * binom(j, b) * BigInt::from(c * sign);
                *out.entry((a % m, b % m)).or_default() += term;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Matrix of multiplication by `f` on `Z[(Z/m)^2]` in the basis `Z^a W^b`.
pub fn multiplication_matrix(f: &IntPoly, m: usize) -> Vec<Vec<BigInt>> {
    let n = m * m;
    let coeffs = group_ring_coeffs(f, m);
    let mut mat = vec![vec![BigInt::zero(); n]; n];
    for col in 0..n {
        let (a0, b0) = (col / m, col % m);
        for (&(a, b), c) in &coeffs {
            let row = ((a0 + a) % m) * m + (b0 + b) % m;
            mat[row][col] += c;
        }
    }
    mat
}

fn vp(x: &BigInt, p: u32) -> u32 {
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    while !x.is_zero() && x.is_multiple_of(&p) {
        x /= &p;
        v += 1;
    }
    v
}

fn vp_rat(x: &BigRational, p: u32) -> i64 {
    vp(x.numer(), p) as i64 - vp(x.denom(), p) as i64
}

/// Diagonal of the Smith normal form over `Z_p`, as `p`-adic valuations of the
/// invariant factors; `None` marks a zero invariant factor. Elimination runs
/// over `Q` with minimal-valuation pivots, which keeps every step inside
/// `Z_(p)`.
pub fn smith_valuations(mat: &[Vec<BigInt>], p: u32) -> Vec<Option<i64>> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut a: Vec<Vec<BigRational>> = mat
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut diag = Vec::new();
    for k in 0..rows.min(cols) {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if !a[i][j].is_zero() {
                    let v = vp_rat(&a[i][j], p);
                    if best.is_none_or(|b| v < b.0) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else {
            break;
        };
        a.swap(k, pi);
        for r in a.iter_mut() {
            r.swap(k, pj);
        }
        let piv = a[k][k].clone();
        for i in k + 1..rows {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &piv;
            for j in k..cols {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
        // column operations are implied: the pivot has minimal valuation in
        // its row, so the row's remaining entries are cleared over Z_(p)
        diag.push(Some(v));
    }
    while diag.len() < rows.min(cols) {
        diag.push(None);
    }
    diag
}

/// `Z_p`-rank of `Z_p[(Z/p^n)^2] / (f)` = number of zero invariant factors.
pub fn coinvariant_rank_snf(f: &IntPoly, p: u32, n: u32) -> usize {
    let m = (p as usize).pow(n);
    let mat = multiplication_matrix(f, m);
    smith_valuations(&mat, p).iter().filter(|d| d.is_none()).count()
}

/// Orbits of `(Z/p^n)^2` under scaling by units, by direct union.
pub fn class_orbits(p: u32, n: u32) -> Vec<Vec<(u64, u64)>> {
    let m = (p as u64).pow(n);
    let units: Vec<u64> = (1..=m).filter(|u| u % p as u64 != 0).map(|u| u % m).collect();
    let mut seen = vec![false; (m * m) as usize];
    let mut out = Vec::new();
    for a in 0..m {
        for b in 0..m {
            if seen[(a * m + b) as usize] {
                continue;
            }
            let mut orbit: Vec<(u64, u64)> = units.iter().map(|u| (a * u % m, b * u % m)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &(x, y) in &orbit {
                seen[(x * m + y) as usize] = true;
            }
            out.push(orbit);
        }
    }
    out
}

/// `p`-adic order exponent of `x` in `Z/p^n`: the `k` with `x` of additive
/// order `p^k`.
pub fn order_exponent(x: u64, p: u32, n: u32) -> u32 {
    if x == 0 {
        return 0;
    }
    let mut v = 0;
    let mut y = x;
    while y % p as u64 == 0 {
        y /= p as u64;
        v += 1;
    }
    n - v
}

/// Leibniz determinant for tiny integer matrices.
pub fn leibniz(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = BigInt::zero();
    permute(&mut perm, 0, m, &mut total);
    total
}

fn permute(perm: &mut Vec<usize>, k: usize, m: &[Vec<BigInt>], total: &mut BigInt) {
    let n = perm.len();
    if k == n {
        let mut inv = 0;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inv += 1;
                }
            }
        }
        let mut prod = BigInt::one();
        for (i, &j) in perm.iter().enumerate() {
            prod *= &m[i][j];
        }
        if inv % 2 == 1 {
            prod = -prod;
        }
        *total += prod;
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(perm, k + 1, m, total);
        perm.swap(k, i);
    }
}

/// Small deterministic generator (SplitMix64) so oracle inputs do not depend
/// on the crate's own RNG plumbing.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }
}

/// Seeded `f` of total degree at most 4: a random factor of degree <= 2 times
/// one of `X`, `Y`, `X - Y`, `Phi_3(1 + X)` or `1`, so that roots occur.
pub fn seeded_poly(seed: u64) -> IntPoly {
    let mut rng = SplitMix(seed);
    let mut h = IntPoly::new();
    for (i, j) in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)] {
        let c = rng.range(-3, 3);
        if c != 0 {
            h.insert((i, j), c);
        }
    }
    if h.is_empty() {
        h.insert((0, 0), 1);
    }
    let special: IntPoly = match rng.next() % 5 {
        0 => [((1, 0), 1)].into(),
        1 => [((0, 1), 1)].into(),
        2 => [((1, 0), 1), ((0, 1), -1)].into(),
        // Phi_3(1 + X) = 3 + 3X + X^2
        3 => [((0, 0), 3), ((1, 0), 3), ((2, 0), 1)].into(),
        _ => [((0, 0), 1)].into(),
    };
    let mut f = IntPoly::new();
    for (&(a, b), &c) in &h {
        for (&(d, e), &k) in &special {
            *f.entry((a + d, b + e)).or_default() += c * k;
        }
    }
    f.retain(|_, c| *c != 0);
    f
}
