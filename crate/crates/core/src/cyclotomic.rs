//! Arithmetic in `Q_p(zeta_{p^r})` with exact fractional valuations.
//!
//! Elements are stored in the power basis `1, zeta, ..., zeta^{phi-1}` over
//! `Z/p^N`. The roots are a compatible system: `zeta_{p^{r+1}}^p = zeta_{p^r}`,
//! so embedding to a higher level only re-indexes coefficients.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::solve_padic;
use crate::padic::{euler_phi_pp, PAdicScalar, Rational, ResidueRing, Valuation};

/// `Phi_{p^n}(x)` and its shift `Phi_{p^n}(1 + X)`, both with exact integer
/// coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloPolynomial {
    pub prime: u32,
    pub index: u32,
    pub coeffs: Vec<BigUint>,
    pub shifted: Vec<BigUint>,
}

impl CycloPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// Binomial coefficients `C(m, 0..=m)`.
pub fn binomial_row(m: u64) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(m as usize + 1);
    let mut c = BigUint::one();
    row.push(c.clone());
    for k in 0..m {
        c = c * BigUint::from(m - k) / BigUint::from(k + 1);
        row.push(c.clone());
    }
    row
}

pub fn cyclo_polynomial(p: u32, n: u32) -> Result<CycloPolynomial> {
    crate::padic::check_prime(p)?;
    if n == 0 {
        return Err(Error::Invalid("cyclotomic index must be at least 1".into()));
    }
    let m = (p as u64).pow(n - 1);
    let deg = (p as u64 - 1) * m;
    let mut coeffs = vec![BigUint::zero(); deg as usize + 1];
    let mut shifted = vec![BigUint::zero(); deg as usize + 1];
    for i in 0..p as u64 {
        coeffs[(i * m) as usize] = BigUint::one();
        for (k, c) in binomial_row(i * m).into_iter().enumerate() {
            shifted[k] += c;
        }
    }
    Ok(CycloPolynomial {
        prime: p,
        index: n,
        coeffs,
        shifted,
    })
}

/// Number of power-basis coefficients at a level.
pub fn basis_len(p: u32, level: u32) -> usize {
    euler_phi_pp(p, level) as usize
}

/// Reduce a vector indexed by exponents modulo `x^{p^L} - 1`, then modulo
/// `Phi_{p^L}(x)`.
pub(crate) fn reduce_exponents(ring: &ResidueRing, level: u32, mut c: Vec<BigUint>) -> Vec<BigUint> {
    let p = ring.prime() as usize;
    if level == 0 {
        let mut acc = BigUint::zero();
        for v in &c {
            ring.add_assign(&mut acc, v);
        }
        return vec![acc];
    }
    let order = p.pow(level);
    if c.len() > order {
        let tail = c.split_off(order);
        for (i, v) in tail.into_iter().enumerate() {
            if !v.is_zero() {
                let slot = &mut c[i % order];
                ring.add_assign(slot, &v);
            }
        }
    }
    c.resize(order, BigUint::zero());
    let m = order / p;
    let phi = order - m;
    for j in 0..m {
        let top = std::mem::take(&mut c[phi + j]);
        if top.is_zero() {
            continue;
        }
        for t in 0..p - 1 {
            ring.sub_assign(&mut c[t * m + j], &top);
        }
    }
    c.truncate(phi);
    c
}

/// An element of `Q_p(zeta_{p^level})` with integral coefficients mod `p^N`.
#[derive(Debug, Clone)]
pub struct CycloElement {
    ring: Arc<ResidueRing>,
    level: u32,
    coeffs: Vec<BigUint>,
    eps: OnceLock<Vec<BigUint>>,
}

impl PartialEq for CycloElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.level == other.level && self.coeffs == other.coeffs
    }
}

impl Eq for CycloElement {}

impl CycloElement {
    pub fn from_coeffs(ring: Arc<ResidueRing>, level: u32, coeffs: Vec<BigUint>) -> Result<Self> {
        let n = basis_len(ring.prime(), level);
        if coeffs.len() != n {
            return Err(Error::Shape(format!(
                "level {level} needs {n} coefficients, got {}",
                coeffs.len()
            )));
        }
        let coeffs = coeffs.iter().map(|c| ring.reduce_uint(c)).collect();
        Ok(Self::raw(ring, level, coeffs))
    }

    pub(crate) fn raw(ring: Arc<ResidueRing>, level: u32, coeffs: Vec<BigUint>) -> Self {
        CycloElement {
            ring,
            level,
            coeffs,
            eps: OnceLock::new(),
        }
    }

    /// Build from coefficients of arbitrary exponents of `zeta_{p^level}`.
    pub fn from_exponents(ring: Arc<ResidueRing>, level: u32, c: Vec<BigUint>) -> Self {
        let coeffs = reduce_exponents(&ring, level, c);
        Self::raw(ring, level, coeffs)
    }

    pub fn zero(ring: Arc<ResidueRing>, level: u32) -> Self {
        let n = basis_len(ring.prime(), level);
        Self::raw(ring, level, vec![BigUint::zero(); n])
    }

    pub fn scalar(ring: Arc<ResidueRing>, level: u32, value: BigUint) -> Self {
        let mut e = Self::zero(ring, level);
        e.coeffs[0] = e.ring.reduce_uint(&value);
        e
    }

    pub fn from_i64(ring: Arc<ResidueRing>, level: u32, value: i64) -> Self {
        let v = ring.from_i64(value);
        Self::scalar(ring, level, v)
    }

    pub fn one(ring: Arc<ResidueRing>, level: u32) -> Self {
        Self::scalar(ring, level, BigUint::one())
    }

    /// `zeta_{p^level}^exponent`.
    pub fn zeta_pow(ring: Arc<ResidueRing>, level: u32, exponent: i64) -> Self {
        let order = (ring.prime() as i64).pow(level);
        let e = exponent.rem_euclid(order) as usize;
        let mut c = vec![BigUint::zero(); e + 1];
        c[e] = BigUint::one();
        Self::from_exponents(ring, level, c)
    }

    pub fn zeta(ring: Arc<ResidueRing>, level: u32) -> Self {
        Self::zeta_pow(ring, level, 1)
    }

    /// `eps_level = zeta_{p^level} - 1`.
    pub fn eps(ring: Arc<ResidueRing>, level: u32) -> Self {
        let z = Self::zeta(ring.clone(), level);
        z.sub(&Self::one(ring, level)).expect("same ring")
    }

    /// `eps_i / eps_{i+1} = 1 + zeta_{p^{i+1}} + ... + zeta_{p^{i+1}}^{p-1}`,
    /// placed at `level >= i + 1`. Computed without division.
    pub fn eps_ratio(ring: Arc<ResidueRing>, i: u32, level: u32) -> Result<Self> {
        if i == 0 || level < i + 1 {
            return Err(Error::Invalid(format!(
                "eps ratio {i}/{} not defined at level {level}",
                i + 1
            )));
        }
        let p = ring.prime() as usize;
        let step = p.pow(level - i - 1);
        let mut c = vec![BigUint::zero(); step * (p - 1) + 1];
        for t in 0..p {
            c[t * step] = BigUint::one();
        }
        Ok(Self::from_exponents(ring, level, c))
    }

    pub fn ring(&self) -> &Arc<ResidueRing> {
        &self.ring
    }

    pub fn prime(&self) -> u32 {
        self.ring.prime()
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn precision(&self) -> u32 {
        self.ring.digits()
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Image under `zeta_{p^r} -> zeta_{p^{r'}}^{p^{r'-r}}`.
    pub fn embed(&self, target: u32) -> Result<Self> {
        if target < self.level {
            return Err(Error::UnsupportedEmbedding {
                from: self.level,
                to: target,
            });
        }
        if target == self.level {
            return Ok(self.clone());
        }
        let p = self.prime() as usize;
        let stride = if self.level == 0 {
            0
        } else {
            p.pow(target - self.level)
        };
        let mut c = vec![BigUint::zero(); basis_len(self.prime(), target)];
        for (i, v) in self.coeffs.iter().enumerate() {
            if !v.is_zero() {
                c[i * stride] = v.clone();
            }
        }
        Ok(Self::raw(self.ring.clone(), target, c))
    }

    /// Reduce precision to `digits`.
    pub fn truncate(&self, digits: u32) -> Result<Self> {
        if digits >= self.ring.digits() {
            return Ok(self.clone());
        }
        let ring = ResidueRing::shared(self.prime(), digits)?;
        let c = self.coeffs.iter().map(|v| ring.reduce_uint(v)).collect();
        Ok(Self::raw(ring, self.level, c))
    }

    /// Bring two operands to a common level and the weaker precision.
    fn align(&self, other: &Self) -> Result<(Self, Self)> {
        if self.prime() != other.prime() {
            return Err(Error::PrimeMismatch(self.prime(), other.prime()));
        }
        let level = self.level.max(other.level);
        let digits = self.precision().min(other.precision());
        let a = self.embed(level)?.truncate(digits)?;
        let b = other.embed(level)?.truncate(digits)?;
        Ok((a, b))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other)?;
        let c = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| a.ring.add(x, y))
            .collect();
        Ok(Self::raw(a.ring.clone(), a.level, c))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other)?;
        let c = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| a.ring.sub(x, y))
            .collect();
        Ok(Self::raw(a.ring.clone(), a.level, c))
    }

    pub fn neg(&self) -> Self {
        let c = self.coeffs.iter().map(|x| self.ring.neg(x)).collect();
        Self::raw(self.ring.clone(), self.level, c)
    }

    pub fn scale(&self, k: &BigUint) -> Self {
        let c = self.coeffs.iter().map(|x| self.ring.mul(x, k)).collect();
        Self::raw(self.ring.clone(), self.level, c)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other)?;
        let nz = |v: &[BigUint]| v.iter().filter(|c| !c.is_zero()).count();
        let (sparse, dense) = if nz(&a.coeffs) <= nz(&b.coeffs) {
            (&a, &b)
        } else {
            (&b, &a)
        };
        let n = a.coeffs.len();
        let mut out = vec![BigUint::zero(); 2 * n];
        for (i, x) in sparse.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in dense.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        let ring = a.ring.clone();
        for v in out.iter_mut() {
            *v = ring.reduce_uint(v);
        }
        Ok(Self::from_exponents(ring, a.level, out))
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut out = Self::one(self.ring.clone(), self.level);
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Coefficients in the basis `1, eps, eps^2, ...` (Taylor shift by 1).
    pub fn eps_coeffs(&self) -> &[BigUint] {
        self.eps.get_or_init(|| {
            let mut a = self.coeffs.clone();
            let n = a.len();
            // a(x) -> a(1 + x): repeated synthetic division by (x - 1)
            for i in 0..n {
                for j in (i..n - 1).rev() {
                    if !a[j + 1].is_zero() {
                        let t = a[j + 1].clone();
                        self.ring.add_assign(&mut a[j], &t);
                    }
                }
            }
            a
        })
    }

    /// Valuation normalized by `val(p) = 1`.
    pub fn valuation(&self) -> Valuation {
        if self.is_zero() {
            return Valuation::at_least_int(self.precision() as i64);
        }
        let phi = self.coeffs.len() as i64;
        let mut best: Option<Rational> = None;
        for (k, b) in self.eps_coeffs().iter().enumerate() {
            if let Some(v) = self.ring.valuation(b) {
                let cand = Rational::from_integer(v as i64) + Rational::new(k as i64, phi);
                if best.is_none_or(|b| cand < b) {
                    best = Some(cand);
                }
            }
        }
        match best {
            Some(v) => Valuation::Exact(v),
            None => Valuation::at_least_int(self.precision() as i64),
        }
    }

    /// Multiplication-by-`self` as a matrix over `Q_p` on the power basis.
    fn mul_matrix(&self) -> Result<Vec<Vec<PAdicScalar>>> {
        let n = self.coeffs.len();
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let basis = Self::zeta_pow(self.ring.clone(), self.level, j as i64);
            cols.push(self.mul(&basis)?);
        }
        Ok((0..n)
            .map(|i| (0..n).map(|j| self.ring.to_scalar(&cols[j].coeffs[i])).collect())
            .collect())
    }

    /// Exact division by solving the multiplication-matrix system; meant for
    /// small levels. The quotient must be integral. Precision drops to what
    /// the elimination certifies.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other)?;
        let m = b.mul_matrix()?;
        let rhs: Vec<PAdicScalar> = a.coeffs.iter().map(|c| a.ring.to_scalar(c)).collect();
        let x = solve_padic(&m, &rhs)?;
        let digits = x.iter().map(|s| s.precision()).min().unwrap_or(0);
        if digits < 1 {
            return Err(Error::ZeroDivide { precision: digits });
        }
        let ring = ResidueRing::shared(a.prime(), digits as u32)?;
        let mut c = Vec::with_capacity(x.len());
        for s in &x {
            c.push(ring.from_scalar(&s.truncate(digits))?);
        }
        Ok(Self::raw(ring, a.level, c))
    }

    /// Equality modulo the weaker precision, after embedding to a common level.
    pub fn eq_to_precision(&self, other: &Self) -> bool {
        match self.sub(other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }

    /// Symmetric integer representatives of the coefficients.
    pub fn signed_coeffs(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| self.ring.signed(c)).collect()
    }

    /// The value as a level-0 scalar, when it lies in `Q_p`.
    pub fn as_scalar(&self) -> Option<PAdicScalar> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.ring.to_scalar(&self.coeffs[0]))
        } else {
            None
        }
    }

    pub fn from_scalar(ring: Arc<ResidueRing>, level: u32, s: &PAdicScalar) -> Result<Self> {
        let v = ring.from_scalar(s)?;
        Ok(Self::scalar(ring, level, v))
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.signed_coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct CycloWire {
    p: u32,
    level: u32,
    coefficients: Vec<String>,
}

impl Serialize for CycloElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloWire {
            p: self.prime(),
            level: self.level,
            coefficients: self.signed_coeffs().iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

/// Integer-valued convenience for tests and reports.
pub fn signed_to_i64(v: &BigInt) -> Option<i64> {
    if v.sign() == Sign::Minus {
        v.to_i64()
    } else {
        v.to_u64().and_then(|u| i64::try_from(u).ok())
    }
}
