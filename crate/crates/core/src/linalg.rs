//! Determinants, inverses and characteristic polynomials over the rings used
//! in this crate.
//!
//! Determinants go through a division-free subset expansion, which works over
//! any commutative ring and is exact. It costs `O(n 2^n)` ring operations,
//! which is cheap for the `2g x 2g` and `4g x 4g` matrices that occur here.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::padic::{PAdicScalar, Rational, ResidueRing, Valuation};

/// A commutative ring whose elements need a context object to operate on.
pub trait Ring {
    type Elem: Clone;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

/// Determinant of a square matrix by expansion over column subsets.
///
/// `dp[S]` holds the signed sum over injections of the first `|S|` rows onto
/// the columns in `S`.
pub fn determinant<R: Ring>(ring: &R, m: &[Vec<R::Elem>]) -> Result<R::Elem> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::Shape("determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(ring.one());
    }
    if n > 24 {
        return Err(Error::Shape(format!("subset determinant limited to 24 rows, got {n}")));
    }
    let size = 1usize << n;
    let mut dp: Vec<Option<R::Elem>> = vec![None; size];
    dp[0] = Some(ring.one());
    // Visit subsets in order of popcount so dp[S \ {j}] is ready.
    let mut by_count: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for s in 0..size {
        by_count[s.count_ones() as usize].push(s);
    }
    for k in 1..=n {
        let row = &m[k - 1];
        for &s in &by_count[k] {
            let mut acc: Option<R::Elem> = None;
            for (j, entry) in row.iter().enumerate() {
                if s & (1 << j) == 0 || ring.is_zero(entry) {
                    continue;
                }
                let rest = s & !(1 << j);
                let Some(prev) = &dp[rest] else { continue };
                let term = ring.mul(entry, prev)?;
                let above = (rest >> (j + 1)).count_ones();
                acc = Some(match (acc, above % 2 == 1) {
                    (None, false) => term,
                    (None, true) => ring.sub(&ring.zero(), &term)?,
                    (Some(a), false) => ring.add(&a, &term)?,
                    (Some(a), true) => ring.sub(&a, &term)?,
                });
            }
            if let Some(a) = acc {
                if !ring.is_zero(&a) {
                    dp[s] = Some(a);
                }
            }
        }
        // Subsets of size k-1 are no longer needed.
        for &s in &by_count[k - 1] {
            dp[s] = None;
        }
    }
    Ok(dp[size - 1].take().unwrap_or_else(|| ring.zero()))
}

/// Square submatrix with the given rows and columns.
pub fn submatrix<T: Clone>(m: &[Vec<T>], rows: &[usize], cols: &[usize]) -> Vec<Vec<T>> {
    rows.iter()
        .map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect())
        .collect()
}

impl Ring for ResidueRing {
    type Elem = BigUint;

    fn zero(&self) -> BigUint {
        BigUint::zero()
    }
    fn one(&self) -> BigUint {
        BigUint::one()
    }
    fn add(&self, a: &BigUint, b: &BigUint) -> Result<BigUint> {
        Ok(ResidueRing::add(self, a, b))
    }
    fn sub(&self, a: &BigUint, b: &BigUint) -> Result<BigUint> {
        Ok(ResidueRing::sub(self, a, b))
    }
    fn mul(&self, a: &BigUint, b: &BigUint) -> Result<BigUint> {
        Ok(ResidueRing::mul(self, a, b))
    }
    fn is_zero(&self, a: &BigUint) -> bool {
        a.is_zero()
    }
}

/// Dense univariate polynomials over `Z/p^N`, lowest degree first.
pub struct UniPolyRing {
    pub base: Arc<ResidueRing>,
}

fn trim(mut v: Vec<BigUint>) -> Vec<BigUint> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

impl Ring for UniPolyRing {
    type Elem = Vec<BigUint>;

    fn zero(&self) -> Self::Elem {
        Vec::new()
    }
    fn one(&self) -> Self::Elem {
        vec![BigUint::one()]
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let n = a.len().max(b.len());
        let z = BigUint::zero();
        Ok(trim(
            (0..n)
                .map(|i| self.base.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
                .collect(),
        ))
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let n = a.len().max(b.len());
        let z = BigUint::zero();
        Ok(trim(
            (0..n)
                .map(|i| self.base.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
                .collect(),
        ))
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        if a.is_empty() || b.is_empty() {
            return Ok(Vec::new());
        }
        let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        for c in out.iter_mut() {
            *c = self.base.reduce_uint(c);
        }
        Ok(trim(out))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }
}

/// A matrix over `Z/p^N`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZpMatrix {
    ring: Arc<ResidueRing>,
    rows: usize,
    cols: usize,
    data: Vec<BigUint>,
}

impl ZpMatrix {
    pub fn zeros(ring: Arc<ResidueRing>, rows: usize, cols: usize) -> Self {
        ZpMatrix {
            ring,
            rows,
            cols,
            data: vec![BigUint::zero(); rows * cols],
        }
    }

    pub fn identity(ring: Arc<ResidueRing>, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = BigUint::one();
        }
        m
    }

    pub fn from_i64_rows(ring: Arc<ResidueRing>, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| ring.from_i64(v)))
            .collect();
        Ok(ZpMatrix {
            ring,
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_rows(ring: Arc<ResidueRing>, rows: Vec<Vec<BigUint>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        let data = rows
            .into_iter()
            .flatten()
            .map(|v| ring.reduce_uint(&v))
            .collect();
        Ok(ZpMatrix {
            ring,
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn ring(&self) -> &Arc<ResidueRing> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigUint {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigUint) {
        let v = self.ring.reduce_uint(&v);
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<BigUint>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    /// Entries as symmetric integer representatives.
    pub fn to_signed_strings(&self) -> Vec<Vec<String>> {
        self.to_rows()
            .iter()
            .map(|row| row.iter().map(|v| self.ring.signed(v).to_string()).collect())
            .collect()
    }

    pub fn mul(&self, rhs: &ZpMatrix) -> Result<ZpMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = ZpMatrix::zeros(self.ring.clone(), self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        for v in out.data.iter_mut() {
            *v = self.ring.reduce_uint(v);
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &ZpMatrix) -> Result<ZpMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape("matrix difference of unequal shapes".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| self.ring.sub(a, b))
            .collect();
        Ok(ZpMatrix {
            data,
            ..self.clone()
        })
    }

    pub fn scale(&self, c: &BigUint) -> ZpMatrix {
        let data = self.data.iter().map(|a| self.ring.mul(a, c)).collect();
        ZpMatrix {
            data,
            ..self.clone()
        }
    }

    pub fn pow(&self, e: u32) -> Result<ZpMatrix> {
        let mut out = ZpMatrix::identity(self.ring.clone(), self.rows);
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn determinant(&self) -> Result<BigUint> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "determinant of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        determinant(self.ring.as_ref(), &self.to_rows())
    }

    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> ZpMatrix {
        let mut out = ZpMatrix::zeros(self.ring.clone(), h, w);
        for i in 0..h {
            for j in 0..w {
                out.data[i * w + j] = self.get(r0 + i, c0 + j).clone();
            }
        }
        out
    }

    /// Inverse over `Z/p^N`; the determinant must be a unit.
    ///
    /// Uses the adjugate up to size 8 and Gauss-Jordan elimination with a
    /// minimal-valuation pivot (lowest row on ties) above that.
    pub fn inverse(&self) -> Result<ZpMatrix> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let det = self.determinant()?;
        let det_inv = self.ring.inv(&det).ok_or(Error::DeterminantNotUnit)?;
        if n <= 8 {
            self.inverse_adjugate(&det_inv)
        } else {
            self.inverse_gauss_jordan()
        }
    }

    fn inverse_adjugate(&self, det_inv: &BigUint) -> Result<ZpMatrix> {
        let n = self.rows;
        let rows = self.to_rows();
        let mut out = ZpMatrix::zeros(self.ring.clone(), n, n);
        for i in 0..n {
            for j in 0..n {
                let keep_r: Vec<usize> = (0..n).filter(|&k| k != i).collect();
                let keep_c: Vec<usize> = (0..n).filter(|&k| k != j).collect();
                let minor = determinant(self.ring.as_ref(), &submatrix(&rows, &keep_r, &keep_c))?;
                let cof = if (i + j) % 2 == 0 {
                    minor
                } else {
                    self.ring.neg(&minor)
                };
                // adj(A)[j][i] = cofactor(i, j)
                out.data[j * n + i] = self.ring.mul(&cof, det_inv);
            }
        }
        Ok(out)
    }

    pub(crate) fn inverse_gauss_jordan(&self) -> Result<ZpMatrix> {
        let n = self.rows;
        let ring = &self.ring;
        let mut a = self.to_rows();
        let mut inv = ZpMatrix::identity(ring.clone(), n).to_rows();
        for col in 0..n {
            let pivot = (col..n)
                .filter_map(|r| ring.valuation(&a[r][col]).map(|v| (v, r)))
                .min()
                .ok_or(Error::DeterminantNotUnit)?;
            if pivot.0 != 0 {
                return Err(Error::DeterminantNotUnit);
            }
            a.swap(col, pivot.1);
            inv.swap(col, pivot.1);
            let pinv = ring.inv(&a[col][col]).ok_or(Error::DeterminantNotUnit)?;
            for j in 0..n {
                a[col][j] = ring.mul(&a[col][j], &pinv);
                inv[col][j] = ring.mul(&inv[col][j], &pinv);
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = ring.mul(&f, &a[col][j]);
                    ring.sub_assign(&mut a[r][j], &t);
                    let t = ring.mul(&f, &inv[col][j]);
                    ring.sub_assign(&mut inv[r][j], &t);
                }
            }
        }
        ZpMatrix::from_rows(ring.clone(), inv)
    }

    /// Characteristic polynomial `det(x I - A)`, lowest degree first.
    pub fn charpoly(&self) -> Result<Vec<BigUint>> {
        if !self.is_square() {
            return Err(Error::Shape("characteristic polynomial of a non-square matrix".into()));
        }
        let n = self.rows;
        let pr = UniPolyRing {
            base: self.ring.clone(),
        };
        let m: Vec<Vec<Vec<BigUint>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = self.ring.neg(self.get(i, j));
                        if i == j {
                            trim(vec![c, BigUint::one()])
                        } else {
                            trim(vec![c])
                        }
                    })
                    .collect()
            })
            .collect();
        let mut cp = determinant(&pr, &m)?;
        cp.resize(n + 1, BigUint::zero());
        Ok(cp)
    }

    /// Whether the matrix is `[[0, A1], [A2, 0]]` with `g x g` blocks.
    pub fn is_block_anti_diagonal(&self, g: usize) -> bool {
        self.rows == 2 * g
            && self.cols == 2 * g
            && self.block(0, 0, g, g).is_zero()
            && self.block(g, g, g, g).is_zero()
    }

    /// Whether the matrix is `[[B11, 0], [0, B22]]` with `g x g` blocks.
    pub fn is_block_diagonal(&self, g: usize) -> bool {
        self.rows == 2 * g
            && self.cols == 2 * g
            && self.block(0, g, g, g).is_zero()
            && self.block(g, 0, g, g).is_zero()
    }
}

/// Vertices and slopes of the lower convex hull of `(i, v_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(usize, Rational)>,
    /// Segment slopes, left to right, each repeated by its horizontal length.
    pub slopes: Vec<Rational>,
}

/// Newton polygon of points `(i, v_i)`; `None` entries are treated as absent.
pub fn newton_polygon(points: &[Option<Rational>]) -> NewtonPolygon {
    let pts: Vec<(usize, Rational)> = points
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| (i, v)))
        .collect();
    let mut hull: Vec<(usize, Rational)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // drop the middle point unless it lies strictly below the chord
            let lhs = (y2 - y1) * Rational::from_integer((p.0 - x1) as i64);
            let rhs = (p.1 - y1) * Rational::from_integer((x2 - x1) as i64);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut slopes = Vec::new();
    for w in hull.windows(2) {
        let len = w[1].0 - w[0].0;
        let s = (w[1].1 - w[0].1) / Rational::from_integer(len as i64);
        slopes.extend(std::iter::repeat_n(s, len));
    }
    NewtonPolygon {
        vertices: hull,
        slopes,
    }
}

/// Solve `A x = b` over `Q_p` by Gaussian elimination with a minimal-valuation
/// pivot (lowest row on ties).
pub fn solve_padic(a: &[Vec<PAdicScalar>], b: &[PAdicScalar]) -> Result<Vec<PAdicScalar>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::Shape("solve needs a square system".into()));
    }
    let mut m: Vec<Vec<PAdicScalar>> = a.to_vec();
    let mut rhs: Vec<PAdicScalar> = b.to_vec();
    for col in 0..n {
        let mut best: Option<(Rational, usize)> = None;
        for r in col..n {
            if let Valuation::Exact(v) = m[r][col].valuation() {
                if best.is_none_or(|(bv, _)| v < bv) {
                    best = Some((v, r));
                }
            }
        }
        let (_, pr) = best.ok_or(Error::ZeroDivide {
            precision: m[col][col].precision(),
        })?;
        m.swap(col, pr);
        rhs.swap(col, pr);
        let pinv = m[col][col].invert()?;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].mul(&pinv)?;
            for j in col..n {
                let t = f.mul(&m[col][j])?;
                m[r][j] = m[r][j].sub(&t)?;
            }
            let t = f.mul(&rhs[col])?;
            rhs[r] = rhs[r].sub(&t)?;
        }
    }
    let mut x = vec![PAdicScalar::zero(rhs[0].prime(), 0); n];
    for i in (0..n).rev() {
        let mut acc = rhs[i].clone();
        for j in i + 1..n {
            acc = acc.sub(&m[i][j].mul(&x[j])?)?;
        }
        x[i] = acc.div(&m[i][i])?;
    }
    Ok(x)
}
