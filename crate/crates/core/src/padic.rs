//! Bounded-precision arithmetic in `Z_p` and `Q_p`.
//!
//! Two layers live here. [`ResidueRing`] is the bare ring `Z/p^N` used for
//! coefficient storage everywhere else in the crate. [`PAdicScalar`] is the
//! user-facing scalar: a value `p^v * u` known modulo `p^N`, carrying its own
//! absolute precision so that precision loss is visible after every step.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Rationals used for (fractional) valuations.
pub type Rational = Ratio<i64>;

/// Default absolute precision, in base-`p` digits.
pub const DEFAULT_PRECISION: u32 = 64;

pub fn is_odd_prime(n: u64) -> bool {
    if n < 3 || n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn check_prime(p: u32) -> Result<()> {
    if is_odd_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::BadPrime(p as u64))
    }
}

/// `phi(p^k)`, with `phi(p^0) = 1`.
pub fn euler_phi_pp(p: u32, k: u32) -> u64 {
    if k == 0 {
        1
    } else {
        (p as u64 - 1) * (p as u64).pow(k - 1)
    }
}

/// Valuation of a quantity known only to finite precision.
///
/// `AtLeast(b)` is returned when the quantity is indistinguishable from zero
/// at the working precision; `b` is the precision bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Exact(Rational),
    AtLeast(Rational),
}

impl Valuation {
    pub fn exact_int(v: i64) -> Self {
        Valuation::Exact(Rational::from_integer(v))
    }

    pub fn at_least_int(v: i64) -> Self {
        Valuation::AtLeast(Rational::from_integer(v))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Valuation::Exact(_))
    }

    pub fn exact(&self) -> Option<Rational> {
        match self {
            Valuation::Exact(v) => Some(*v),
            Valuation::AtLeast(_) => None,
        }
    }

    /// The exact value or the lower bound.
    pub fn bound(&self) -> Rational {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => *v,
        }
    }

    /// Zero decision under threshold `tau`: reported zero when the valuation
    /// is at least `tau` (or only a lower bound is known).
    pub fn is_reported_zero(&self, tau: i64) -> bool {
        match self {
            Valuation::Exact(v) => *v >= Rational::from_integer(tau),
            Valuation::AtLeast(_) => true,
        }
    }

    /// Valuation of a product.
    pub fn add(&self, other: &Valuation) -> Valuation {
        match (self, other) {
            (Valuation::Exact(a), Valuation::Exact(b)) => Valuation::Exact(a + b),
            (Valuation::Exact(a), Valuation::AtLeast(b))
            | (Valuation::AtLeast(a), Valuation::Exact(b))
            | (Valuation::AtLeast(a), Valuation::AtLeast(b)) => Valuation::AtLeast(a + b),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(v) => write!(f, "{}", v),
            Valuation::AtLeast(v) => write!(f, ">={}", v),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The residue ring `Z/p^N`, shared by coefficient vectors.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct ResidueRing {
    prime: u32,
    digits: u32,
    powers: Vec<BigUint>,
}

impl ResidueRing {
    pub fn new(prime: u32, digits: u32) -> Result<Self> {
        check_prime(prime)?;
        if digits == 0 {
            return Err(Error::BadPrecision(0));
        }
        let p = BigUint::from(prime);
        let mut powers = Vec::with_capacity(digits as usize + 1);
        powers.push(BigUint::one());
        for k in 0..digits as usize {
            let next = &powers[k] * &p;
            powers.push(next);
        }
        Ok(ResidueRing {
            prime,
            digits,
            powers,
        })
    }

    pub fn shared(prime: u32, digits: u32) -> Result<Arc<Self>> {
        Ok(Arc::new(Self::new(prime, digits)?))
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn modulus(&self) -> &BigUint {
        &self.powers[self.digits as usize]
    }

    /// `p^k` for `k <= digits`.
    pub fn pow(&self, k: u32) -> &BigUint {
        &self.powers[k as usize]
    }

    pub fn same_as(&self, other: &ResidueRing) -> bool {
        self.prime == other.prime && self.digits == other.digits
    }

    pub fn zero(&self) -> BigUint {
        BigUint::zero()
    }

    pub fn one(&self) -> BigUint {
        BigUint::one()
    }

    pub fn reduce(&self, v: &BigInt) -> BigUint {
        let m = BigInt::from_biguint(Sign::Plus, self.modulus().clone());
        v.mod_floor(&m).to_biguint().expect("mod_floor is non-negative")
    }

    pub fn reduce_uint(&self, v: &BigUint) -> BigUint {
        if v < self.modulus() {
            v.clone()
        } else {
            v % self.modulus()
        }
    }

    pub fn from_i64(&self, v: i64) -> BigUint {
        self.reduce(&BigInt::from(v))
    }

    pub fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        let mut s = a + b;
        if &s >= self.modulus() {
            s -= self.modulus();
        }
        s
    }

    pub fn add_assign(&self, a: &mut BigUint, b: &BigUint) {
        *a += b;
        if &*a >= self.modulus() {
            *a -= self.modulus();
        }
    }

    pub fn sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        if a >= b {
            a - b
        } else {
            a + self.modulus() - b
        }
    }

    pub fn sub_assign(&self, a: &mut BigUint, b: &BigUint) {
        if &*a >= b {
            *a -= b;
        } else {
            *a += self.modulus();
            *a -= b;
        }
    }

    pub fn neg(&self, a: &BigUint) -> BigUint {
        if a.is_zero() {
            BigUint::zero()
        } else {
            self.modulus() - a
        }
    }

    pub fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) % self.modulus()
    }

    /// Number of factors of `p` in a residue; `None` for the zero residue.
    pub fn valuation(&self, a: &BigUint) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        Some(strip_p(a, self.prime).0)
    }

    pub fn is_unit(&self, a: &BigUint) -> bool {
        self.valuation(a) == Some(0)
    }

    /// Inverse of a unit residue.
    pub fn inv(&self, a: &BigUint) -> Option<BigUint> {
        if !self.is_unit(a) {
            return None;
        }
        a.modinv(self.modulus())
    }

    /// Symmetric representative in `(-p^N/2, p^N/2]`.
    pub fn signed(&self, a: &BigUint) -> BigInt {
        let half = self.modulus() >> 1;
        if a > &half {
            BigInt::from_biguint(Sign::Plus, a.clone())
                - BigInt::from_biguint(Sign::Plus, self.modulus().clone())
        } else {
            BigInt::from_biguint(Sign::Plus, a.clone())
        }
    }

    /// Reduce a residue of a finer ring into this one.
    pub fn truncate(&self, a: &BigUint) -> BigUint {
        self.reduce_uint(a)
    }

    pub fn to_scalar(&self, a: &BigUint) -> PAdicScalar {
        PAdicScalar::normalize(self.prime, self.digits as i64, 0, a.clone())
    }

    /// Residue of an integral scalar; fails on negative valuation.
    pub fn from_scalar(&self, s: &PAdicScalar) -> Result<BigUint> {
        if s.prime != self.prime {
            return Err(Error::PrimeMismatch(self.prime, s.prime));
        }
        match s.valuation {
            None => Ok(BigUint::zero()),
            Some(v) if v < 0 => Err(Error::Invalid(format!(
                "scalar with valuation {v} is not integral"
            ))),
            Some(v) => {
                if v >= self.digits as i64 {
                    return Ok(BigUint::zero());
                }
                Ok(self.reduce_uint(&(&s.unit * self.pow(v as u32))))
            }
        }
    }
}

/// Split `a = p^k * u` with `p` not dividing `u`. `a` must be nonzero.
fn strip_p(a: &BigUint, p: u32) -> (u32, BigUint) {
    let mut k = 0;
    let mut u = a.clone();
    loop {
        let (q, r) = u.div_rem(&BigUint::from(p));
        if !r.is_zero() {
            return (k, u);
        }
        u = q;
        k += 1;
    }
}

fn pp(p: u32, k: i64) -> BigUint {
    debug_assert!(k >= 0);
    BigUint::from(p).pow(k as u32)
}

/// An element of `Z_p` or `Q_p` known modulo `p^precision`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PAdicScalar {
    prime: u32,
    precision: i64,
    /// `None` when the value is indistinguishable from zero mod `p^precision`.
    valuation: Option<i64>,
    /// Unit part in `[0, p^(precision - valuation))`, zero when `valuation` is `None`.
    unit: BigUint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl PAdicScalar {
    pub fn zero(prime: u32, precision: i64) -> Self {
        PAdicScalar {
            prime,
            precision,
            valuation: None,
            unit: BigUint::zero(),
        }
    }

    pub fn from_int(prime: u32, precision: i64, value: impl Into<BigInt>) -> Result<Self> {
        check_prime(prime)?;
        if precision < 1 {
            return Err(Error::BadPrecision(precision));
        }
        let m = BigInt::from_biguint(Sign::Plus, pp(prime, precision));
        let r = value.into().mod_floor(&m).to_biguint().unwrap();
        Ok(Self::normalize(prime, precision, 0, r))
    }

    pub fn one(prime: u32, precision: i64) -> Result<Self> {
        Self::from_int(prime, precision, 1)
    }

    /// `p^k` (any sign of `k`) at absolute precision `precision`.
    pub fn p_power(prime: u32, precision: i64, k: i64) -> Result<Self> {
        check_prime(prime)?;
        if k >= precision {
            return Ok(Self::zero(prime, precision));
        }
        Ok(PAdicScalar {
            prime,
            precision,
            valuation: Some(k),
            unit: BigUint::one(),
        })
    }

    /// Build `p^m * s` where `s` is known modulo `p^(precision - m)`.
    pub(crate) fn normalize(prime: u32, precision: i64, m: i64, s: BigUint) -> Self {
        let rel = precision - m;
        if rel <= 0 {
            return Self::zero(prime, precision);
        }
        let s = s % pp(prime, rel);
        if s.is_zero() {
            return Self::zero(prime, precision);
        }
        let (k, u) = strip_p(&s, prime);
        PAdicScalar {
            prime,
            precision,
            valuation: Some(m + k as i64),
            unit: u,
        }
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn unit_part(&self) -> &BigUint {
        &self.unit
    }

    pub fn raw_valuation(&self) -> Option<i64> {
        self.valuation
    }

    pub fn valuation(&self) -> Valuation {
        match self.valuation {
            Some(v) => Valuation::exact_int(v),
            None => Valuation::at_least_int(self.precision),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.valuation.is_none()
    }

    pub fn is_unit(&self) -> bool {
        self.valuation == Some(0)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.prime != other.prime {
            Err(Error::PrimeMismatch(self.prime, other.prime))
        } else {
            Ok(())
        }
    }

    fn signed_value_shifted(&self, m: i64) -> BigInt {
        // p^(v - m) * u, assuming v >= m
        match self.valuation {
            None => BigInt::zero(),
            Some(v) => BigInt::from_biguint(Sign::Plus, &self.unit * pp(self.prime, v - m)),
        }
    }

    pub fn arith(&self, rhs: &Self, op: ArithOp) -> Result<Self> {
        match op {
            ArithOp::Add => self.add(rhs),
            ArithOp::Sub => self.sub(rhs),
            ArithOp::Mul => self.mul(rhs),
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.add_signed(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add_signed(rhs, true)
    }

    fn add_signed(&self, rhs: &Self, negate: bool) -> Result<Self> {
        self.check(rhs)?;
        let n = self.precision.min(rhs.precision);
        let m = match (self.valuation, rhs.valuation) {
            (None, None) => return Ok(Self::zero(self.prime, n)),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        if m >= n {
            return Ok(Self::zero(self.prime, n));
        }
        let a = self.signed_value_shifted(m);
        let b = rhs.signed_value_shifted(m);
        let s = if negate { a - b } else { a + b };
        let modulus = BigInt::from_biguint(Sign::Plus, pp(self.prime, n - m));
        let s = s.mod_floor(&modulus).to_biguint().unwrap();
        Ok(Self::normalize(self.prime, n, m, s))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        match (self.valuation, rhs.valuation) {
            (Some(a), Some(b)) => {
                let n = (self.precision + b).min(rhs.precision + a);
                Ok(Self::normalize(self.prime, n, a + b, &self.unit * &rhs.unit))
            }
            (None, Some(b)) => Ok(Self::zero(self.prime, self.precision + b)),
            (Some(a), None) => Ok(Self::zero(self.prime, rhs.precision + a)),
            (None, None) => Ok(Self::zero(self.prime, self.precision + rhs.precision)),
        }
    }

    pub fn neg(&self) -> Self {
        match self.valuation {
            None => self.clone(),
            Some(v) => {
                let m = pp(self.prime, self.precision - v);
                PAdicScalar {
                    unit: &m - &self.unit,
                    ..self.clone()
                }
            }
        }
    }

    /// Multiplicative inverse; non-units give negative valuations.
    pub fn invert(&self) -> Result<Self> {
        let v = self.valuation.ok_or(Error::ZeroDivide {
            precision: self.precision,
        })?;
        let rel = self.precision - v;
        let m = pp(self.prime, rel);
        let inv = self
            .unit
            .modinv(&m)
            .ok_or_else(|| Error::Inconsistent("unit part not invertible".into()))?;
        Ok(PAdicScalar {
            prime: self.prime,
            precision: self.precision - 2 * v,
            valuation: Some(-v),
            unit: inv,
        })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        self.mul(&rhs.invert()?)
    }

    /// Drop precision to `precision` (never raises it).
    pub fn truncate(&self, precision: i64) -> Self {
        if precision >= self.precision {
            return self.clone();
        }
        match self.valuation {
            None => Self::zero(self.prime, precision),
            Some(v) => Self::normalize(self.prime, precision, v, self.unit.clone()),
        }
    }

    /// Equality of the values modulo the weaker of the two precisions.
    pub fn eq_to_precision(&self, other: &Self) -> bool {
        match self.sub(other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }

    /// Base-`p` digits of the unit part, least significant first.
    pub fn unit_digits(&self) -> Vec<u32> {
        let mut out = Vec::new();
        let mut u = self.unit.clone();
        let p = BigUint::from(self.prime);
        while !u.is_zero() {
            let (q, r) = u.div_rem(&p);
            out.push(r.to_u32().unwrap());
            u = q;
        }
        out
    }

    /// The represented value as a rational `p^v * u` when it fits in `i64`.
    pub fn to_rational(&self) -> Option<Ratio<BigInt>> {
        let v = match self.valuation {
            None => return Some(Ratio::zero()),
            Some(v) => v,
        };
        let u = BigInt::from_biguint(Sign::Plus, self.unit.clone());
        match v.cmp(&0) {
            Ordering::Less => Some(Ratio::new(u, BigInt::from(self.prime).pow((-v) as u32))),
            _ => Some(Ratio::from_integer(u * BigInt::from(self.prime).pow(v as u32))),
        }
    }

    /// Symmetric integer representative when the valuation is non-negative.
    pub fn to_signed_int(&self) -> Option<BigInt> {
        let r = self.to_rational()?;
        if !r.is_integer() {
            return None;
        }
        let m = BigInt::from(self.prime).pow(self.precision.max(0) as u32);
        let v = r.to_integer().mod_floor(&m);
        if v.clone() * 2 > m {
            Some(v - m)
        } else {
            Some(v)
        }
    }
}

impl fmt::Display for PAdicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.valuation {
            None => write!(f, "O({}^{})", self.prime, self.precision),
            Some(0) => write!(f, "{} + O({}^{})", self.unit, self.prime, self.precision),
            Some(v) => write!(
                f,
                "{}^{} * {} + O({}^{})",
                self.prime, v, self.unit, self.prime, self.precision
            ),
        }
    }
}

#[derive(Serialize)]
struct ScalarWire {
    valuation: Option<i64>,
    unit_digits: Vec<u32>,
    precision: i64,
}

impl Serialize for PAdicScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarWire {
            valuation: self.valuation,
            unit_digits: self.unit_digits(),
            precision: self.precision,
        }
        .serialize(s)
    }
}

/// Integer valuation of a nonzero integer (test and report helper).
pub fn int_valuation(p: u32, n: &BigInt) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    Some(strip_p(&n.abs().to_biguint().unwrap(), p).0)
}
