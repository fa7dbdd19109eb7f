//! Bivariate polynomials standing in for elements of `Z_p[[X, Y]]`, and their
//! evaluation at pairs of `p`-power roots of unity.
//!
//! Coefficients are stored against the group-element monomials `Z^i W^j`
//! with `Z = 1 + X`, `W = 1 + Y`. In that basis `Phi_{p^n}(1 + X)` and
//! `(1 + X)^{p^n} - 1` have only `p` and `2` terms, and evaluating at a
//! character is a re-indexing of coefficients. The `X`/`Y` basis is used at
//! the boundaries (construction, serialization, degree caps).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycloElement;
use crate::error::{Error, Result};
use crate::linalg::Ring;
use crate::padic::{PAdicScalar, ResidueRing};

/// Products whose degree in either variable would exceed this, with no caps
/// set, are refused instead of built.
pub const MAX_DEGREE: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    X,
    Y,
}

/// A pair `w = (zeta_{p^r}^a, zeta_{p^s}^b)` of roots of unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CharacterPoint {
    pub prime: u32,
    pub r: u32,
    pub s: u32,
    pub a: u64,
    pub b: u64,
}

impl CharacterPoint {
    /// Exponents are reduced modulo `p^r` (resp. `p^s`); a coordinate of
    /// order exponent 0 is the trivial root and its exponent is stored as 0.
    pub fn new(prime: u32, r: u32, s: u32, a: u64, b: u64) -> Result<Self> {
        crate::padic::check_prime(prime)?;
        let norm = |k: u32, e: u64, name: &str| -> Result<u64> {
            if k == 0 {
                return Ok(0);
            }
            let m = (prime as u64).pow(k);
            let e = e % m;
            if e % prime as u64 == 0 {
                return Err(Error::BadCharacter(format!(
                    "exponent {name}={e} is divisible by {prime} but order exponent is {k}"
                )));
            }
            Ok(e)
        };
        Ok(CharacterPoint {
            prime,
            r,
            s,
            a: norm(r, a, "a")?,
            b: norm(s, b, "b")?,
        })
    }

    /// `(zeta_{p^r}, zeta_{p^s})`.
    pub fn primitive(prime: u32, r: u32, s: u32) -> Result<Self> {
        Self::new(prime, r, s, 1, 1)
    }

    pub fn trivial(prime: u32) -> Self {
        CharacterPoint {
            prime,
            r: 0,
            s: 0,
            a: 0,
            b: 0,
        }
    }

    /// Level of the ambient field `Q_p(zeta_{p^max(r,s)})`.
    pub fn level(&self) -> u32 {
        self.r.max(self.s)
    }

    /// Exponents `(e1, e2)` with `w_1 = zeta_{p^L}^{e1}`, `w_2 = zeta_{p^L}^{e2}`.
    pub fn exponents_at(&self, level: u32) -> (u64, u64) {
        let p = self.prime as u64;
        let e = |k: u32, x: u64| if k == 0 { 0 } else { x * p.pow(level - k) };
        (e(self.r, self.a), e(self.s, self.b))
    }

    /// Exponents of the conductor `p^{r+1} (p^c)^{s+1}`.
    pub fn conductor_exponents(&self) -> (u32, u32) {
        (self.r + 1, self.s + 1)
    }

    /// `w^{p^n} = 1`.
    pub fn is_killed_by(&self, n: u32) -> bool {
        self.r <= n && self.s <= n
    }
}

impl fmt::Display for CharacterPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.prime;
        let part = |k: u32, e: u64| {
            if k == 0 {
                "1".to_string()
            } else {
                format!("z{}^{}", (p as u64).pow(k), e)
            }
        };
        write!(f, "({}, {})", part(self.r, self.a), part(self.s, self.b))
    }
}

/// `a(x) -> a(x + c)` for `c = 1` or `c = -1`, in place.
pub(crate) fn taylor_shift(ring: &ResidueRing, a: &mut [BigUint], plus: bool) {
    let n = a.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            if a[j + 1].is_zero() {
                continue;
            }
            let t = a[j + 1].clone();
            if plus {
                ring.add_assign(&mut a[j], &t);
            } else {
                ring.sub_assign(&mut a[j], &t);
            }
        }
    }
}

type Terms = BTreeMap<(usize, usize), BigUint>;

/// Apply a Taylor shift in both variables to a sparse term map.
fn shift_2d(ring: &ResidueRing, terms: &Terms, plus: bool) -> Terms {
    let mut rows: BTreeMap<usize, Vec<BigUint>> = BTreeMap::new();
    for (&(i, j), c) in terms {
        let row = rows.entry(j).or_default();
        if row.len() <= i {
            row.resize(i + 1, BigUint::zero());
        }
        row[i] = c.clone();
    }
    let mut cols: BTreeMap<usize, Vec<BigUint>> = BTreeMap::new();
    for (j, mut row) in rows {
        taylor_shift(ring, &mut row, plus);
        for (i, c) in row.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let col = cols.entry(i).or_default();
            if col.len() <= j {
                col.resize(j + 1, BigUint::zero());
            }
            col[j] = c;
        }
    }
    let mut out = Terms::new();
    for (i, mut col) in cols {
        taylor_shift(ring, &mut col, plus);
        for (j, c) in col.into_iter().enumerate() {
            if !c.is_zero() {
                out.insert((i, j), c);
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct IwasawaPoly {
    ring: Arc<ResidueRing>,
    /// Nonzero coefficients of `Z^i W^j`.
    terms: Terms,
    /// Optional `(D_X, D_Y)`: products drop `X^i Y^j` with `i > D_X` or `j > D_Y`.
    caps: Option<(usize, usize)>,
}

impl PartialEq for IwasawaPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.terms == other.terms
    }
}

impl Eq for IwasawaPoly {}

impl IwasawaPoly {
    pub fn zero(ring: Arc<ResidueRing>) -> Self {
        IwasawaPoly {
            ring,
            terms: Terms::new(),
            caps: None,
        }
    }

    pub fn constant(ring: Arc<ResidueRing>, c: BigUint) -> Self {
        let c = ring.reduce_uint(&c);
        let mut terms = Terms::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        IwasawaPoly {
            ring,
            terms,
            caps: None,
        }
    }

    pub fn from_i64(ring: Arc<ResidueRing>, c: i64) -> Self {
        let v = ring.from_i64(c);
        Self::constant(ring, v)
    }

    pub fn one(ring: Arc<ResidueRing>) -> Self {
        Self::constant(ring, BigUint::one())
    }

    /// Build from coefficients of `Z^i W^j` (group-element monomials).
    pub fn from_group_terms(
        ring: Arc<ResidueRing>,
        terms: impl IntoIterator<Item = ((usize, usize), BigUint)>,
    ) -> Self {
        let mut out = Terms::new();
        for (k, c) in terms {
            let e = out.entry(k).or_insert_with(BigUint::zero);
            ring.add_assign(e, &ring.reduce_uint(&c));
        }
        out.retain(|_, c| !c.is_zero());
        IwasawaPoly {
            ring,
            terms: out,
            caps: None,
        }
    }

    /// Build from coefficients of `X^i Y^j`.
    pub fn from_x_terms(
        ring: Arc<ResidueRing>,
        terms: impl IntoIterator<Item = ((usize, usize), BigUint)>,
    ) -> Self {
        let tmp = Self::from_group_terms(ring.clone(), terms);
        let shifted = shift_2d(&ring, &tmp.terms, false);
        IwasawaPoly {
            ring,
            terms: shifted,
            caps: None,
        }
    }

    pub fn from_x_i64(ring: Arc<ResidueRing>, terms: &[(usize, usize, i64)]) -> Self {
        let t: Vec<_> = terms
            .iter()
            .map(|&(i, j, c)| ((i, j), ring.from_i64(c)))
            .collect();
        Self::from_x_terms(ring, t)
    }

    /// The variable `X` or `Y`.
    pub fn var(ring: Arc<ResidueRing>, v: Var) -> Self {
        Self::from_x_i64(ring, &[(key(v, 1).0, key(v, 1).1, 1)])
    }

    /// `Phi_{p^n}(1 + v) = sum_{t<p} (1+v)^{t p^{n-1}}`.
    pub fn cyclo(ring: Arc<ResidueRing>, n: u32, v: Var) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("cyclotomic index must be at least 1".into()));
        }
        let p = ring.prime() as usize;
        let m = p.pow(n - 1);
        let t: Vec<_> = (0..p).map(|t| (key(v, t * m), BigUint::one())).collect();
        Ok(Self::from_group_terms(ring, t))
    }

    /// `omega_n(v) = (1 + v)^{p^n} - 1`.
    pub fn omega(ring: Arc<ResidueRing>, n: u32, v: Var) -> Self {
        let e = (ring.prime() as usize).pow(n);
        let minus_one = ring.from_i64(-1);
        Self::from_group_terms(ring, [(key(v, e), BigUint::one()), ((0, 0), minus_one)])
    }

    pub fn with_caps(mut self, dx: usize, dy: usize) -> Self {
        self.caps = Some((dx, dy));
        self.apply_caps();
        self
    }

    pub fn caps(&self) -> Option<(usize, usize)> {
        self.caps
    }

    fn apply_caps(&mut self) {
        let Some((dx, dy)) = self.caps else { return };
        if self.degree_x() <= dx && self.degree_y() <= dy {
            return;
        }
        let mut x = shift_2d(&self.ring, &self.terms, true);
        x.retain(|&(i, j), _| i <= dx && j <= dy);
        self.terms = shift_2d(&self.ring, &x, false);
    }

    pub fn ring(&self) -> &Arc<ResidueRing> {
        &self.ring
    }

    pub fn prime(&self) -> u32 {
        self.ring.prime()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree_x(&self) -> usize {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn degree_y(&self) -> usize {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Whether the polynomial involves only `v` (constants qualify).
    pub fn is_univariate_in(&self, v: Var) -> bool {
        self.terms.keys().all(|&(i, j)| match v {
            Var::X => j == 0,
            Var::Y => i == 0,
        })
    }

    /// Coefficients against `Z^i W^j`, sorted by `(i, j)`.
    pub fn group_terms(&self) -> impl Iterator<Item = (&(usize, usize), &BigUint)> {
        self.terms.iter()
    }

    /// Nonzero coefficients against `X^i Y^j`, sorted by `(i, j)`.
    pub fn x_terms(&self) -> Vec<((usize, usize), BigUint)> {
        shift_2d(&self.ring, &self.terms, true).into_iter().collect()
    }

    /// Coefficient of `X^i Y^j` as a scalar.
    pub fn coeff_x(&self, i: usize, j: usize) -> PAdicScalar {
        let t = shift_2d(&self.ring, &self.terms, true);
        let c = t.get(&(i, j)).cloned().unwrap_or_default();
        self.ring.to_scalar(&c)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.prime() != other.prime() {
            return Err(Error::PrimeMismatch(self.prime(), other.prime()));
        }
        if !self.ring.same_as(&other.ring) {
            return Err(Error::Invalid(format!(
                "precision mismatch: {} vs {} digits",
                self.ring.digits(),
                other.ring.digits()
            )));
        }
        Ok(())
    }

    fn joint_caps(&self, other: &Self) -> Option<(usize, usize)> {
        match (self.caps, other.caps) {
            (None, c) | (c, None) => c,
            (Some(a), Some(b)) => Some((a.0.min(b.0), a.1.min(b.1))),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let e = terms.entry(*k).or_insert_with(BigUint::zero);
            self.ring.add_assign(e, c);
            if e.is_zero() {
                terms.remove(k);
            }
        }
        let mut out = IwasawaPoly {
            ring: self.ring.clone(),
            terms,
            caps: self.joint_caps(other),
        };
        out.apply_caps();
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (*k, self.ring.neg(c)))
            .collect();
        IwasawaPoly {
            ring: self.ring.clone(),
            terms,
            caps: self.caps,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigUint) -> Self {
        let mut terms = Terms::new();
        for (key, c) in &self.terms {
            let v = self.ring.mul(c, k);
            if !v.is_zero() {
                terms.insert(*key, v);
            }
        }
        IwasawaPoly {
            ring: self.ring.clone(),
            terms,
            caps: self.caps,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let caps = self.joint_caps(other);
        let dx = self.degree_x() + other.degree_x();
        let dy = self.degree_y() + other.degree_y();
        if caps.is_none() && (dx > MAX_DEGREE || dy > MAX_DEGREE) {
            return Err(Error::DegreeOverflow {
                dx,
                dy,
                limit: MAX_DEGREE,
            });
        }
        let mut acc: HashMap<(usize, usize), BigUint> = HashMap::new();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                *acc.entry((i1 + i2, j1 + j2)).or_insert_with(BigUint::zero) += c1 * c2;
            }
        }
        let mut terms = Terms::new();
        for (k, c) in acc {
            let c = self.ring.reduce_uint(&c);
            if !c.is_zero() {
                terms.insert(k, c);
            }
        }
        let mut out = IwasawaPoly {
            ring: self.ring.clone(),
            terms,
            caps,
        };
        out.apply_caps();
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut out = Self::one(self.ring.clone());
        out.caps = self.caps;
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// `F(w) = F_0(w_1 - 1, w_2 - 1)` in `Q_p(zeta_{p^max(r,s)})`.
    pub fn eval(&self, w: &CharacterPoint) -> Result<CycloElement> {
        if w.prime != self.prime() {
            return Err(Error::PrimeMismatch(self.prime(), w.prime));
        }
        let level = w.level();
        let order = (self.prime() as u64).pow(level);
        let (e1, e2) = w.exponents_at(level);
        let mut c = vec![BigUint::zero(); order as usize];
        for (&(i, j), v) in &self.terms {
            let idx = ((i as u64 % order) * e1 + (j as u64 % order) * e2) % order;
            self.ring.add_assign(&mut c[idx as usize], v);
        }
        Ok(CycloElement::from_exponents(self.ring.clone(), level, c))
    }

    /// Remainder after division by the monic `Phi_{p^n}(1 + v)`.
    pub fn rem_cyclo(&self, n: u32, v: Var) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("cyclotomic index must be at least 1".into()));
        }
        let p = self.prime() as usize;
        let m = p.pow(n - 1);
        let phi = (p - 1) * m;
        // Work one exponent of `v` at a time, from the top down.
        let mut lines: BTreeMap<usize, BTreeMap<usize, BigUint>> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            let (d, o) = match v {
                Var::X => (i, j),
                Var::Y => (j, i),
            };
            lines.entry(o).or_default().insert(d, c.clone());
        }
        let mut out = Terms::new();
        for (o, mut line) in lines {
            while let Some((&d, _)) = line.iter().next_back() {
                if d < phi {
                    break;
                }
                let c = line.remove(&d).unwrap();
                for t in 0..p - 1 {
                    let e = line.entry(d - phi + t * m).or_insert_with(BigUint::zero);
                    self.ring.sub_assign(e, &c);
                }
                line.retain(|_, x| !x.is_zero());
            }
            for (d, c) in line {
                out.insert(key(v, d).with_other(o, v), c);
            }
        }
        Ok(IwasawaPoly {
            ring: self.ring.clone(),
            terms: out,
            caps: self.caps,
        })
    }

    pub fn divisible_by_cyclo(&self, n: u32, v: Var) -> Result<bool> {
        Ok(self.rem_cyclo(n, v)?.is_zero())
    }

    /// Sparse `{i, j, coefficient}` triples in the `X`/`Y` basis.
    pub fn to_triples(&self) -> Vec<PolyTerm> {
        self.x_terms()
            .into_iter()
            .map(|((i, j), c)| PolyTerm {
                i,
                j,
                coefficient: self.ring.signed(&c).to_string(),
            })
            .collect()
    }
}

/// Monomial key `v^e` as `(i, j)`.
fn key(v: Var, e: usize) -> (usize, usize) {
    match v {
        Var::X => (e, 0),
        Var::Y => (0, e),
    }
}

trait WithOther {
    fn with_other(self, o: usize, v: Var) -> (usize, usize);
}

impl WithOther for (usize, usize) {
    fn with_other(self, o: usize, v: Var) -> (usize, usize) {
        match v {
            Var::X => (self.0, o),
            Var::Y => (o, self.1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolyTerm {
    pub i: usize,
    pub j: usize,
    pub coefficient: String,
}

impl Serialize for IwasawaPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_triples().serialize(s)
    }
}

impl fmt::Display for IwasawaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.to_triples();
        if t.is_empty() {
            return write!(f, "0");
        }
        for (k, term) in t.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", term.coefficient)?;
            if term.i > 0 {
                write!(f, "*X^{}", term.i)?;
            }
            if term.j > 0 {
                write!(f, "*Y^{}", term.j)?;
            }
        }
        Ok(())
    }
}

/// The polynomial ring as a [`Ring`] context, for generic determinants.
pub struct PolyRing {
    pub base: Arc<ResidueRing>,
}

impl Ring for PolyRing {
    type Elem = IwasawaPoly;

    fn zero(&self) -> IwasawaPoly {
        IwasawaPoly::zero(self.base.clone())
    }
    fn one(&self) -> IwasawaPoly {
        IwasawaPoly::one(self.base.clone())
    }
    fn add(&self, a: &IwasawaPoly, b: &IwasawaPoly) -> Result<IwasawaPoly> {
        a.add(b)
    }
    fn sub(&self, a: &IwasawaPoly, b: &IwasawaPoly) -> Result<IwasawaPoly> {
        a.sub(b)
    }
    fn mul(&self, a: &IwasawaPoly, b: &IwasawaPoly) -> Result<IwasawaPoly> {
        a.mul(b)
    }
    fn is_zero(&self, a: &IwasawaPoly) -> bool {
        a.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{Rational, Valuation};
    use proptest::prelude::*;

    fn ring() -> Arc<ResidueRing> {
        ResidueRing::shared(3, 30).unwrap()
    }

    fn xp(terms: &[(usize, usize, i64)]) -> IwasawaPoly {
        IwasawaPoly::from_x_i64(ring(), terms)
    }

    #[test]
    fn basic_products() {
        let r = ring();
        let x = IwasawaPoly::var(r.clone(), Var::X);
        let y = IwasawaPoly::var(r.clone(), Var::Y);
        assert_eq!(x.mul(&y).unwrap(), xp(&[(1, 1, 1)]));
        let phi = IwasawaPoly::cyclo(r.clone(), 1, Var::X).unwrap();
        assert_eq!(phi, xp(&[(2, 0, 1), (1, 0, 3), (0, 0, 3)]));
        assert_eq!(phi.mul(&IwasawaPoly::one(r.clone())).unwrap(), phi);
        let w1 = IwasawaPoly::omega(r.clone(), 1, Var::X);
        assert_eq!(w1, xp(&[(3, 0, 1), (2, 0, 3), (1, 0, 3)]));
        assert_eq!(IwasawaPoly::omega(r, 0, Var::X), x);
    }

    #[test]
    fn omega_factorization() {
        let r = ring();
        for n in 1..=2 {
            let lhs = IwasawaPoly::omega(r.clone(), n, Var::X);
            let rhs = IwasawaPoly::omega(r.clone(), n - 1, Var::X)
                .mul(&IwasawaPoly::cyclo(r.clone(), n, Var::X).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
            assert!(lhs.divisible_by_cyclo(n, Var::X).unwrap());
        }
    }

    #[test]
    fn x_basis_round_trip() {
        let f = xp(&[(0, 0, 5), (3, 1, -2), (1, 4, 7)]);
        let back = IwasawaPoly::from_x_terms(ring(), f.x_terms());
        assert_eq!(back, f);
        assert_eq!(f.coeff_x(3, 1).to_signed_int().unwrap(), (-2).into());
    }

    #[test]
    fn evaluation_examples() {
        let r = ring();
        let x = IwasawaPoly::var(r.clone(), Var::X);
        let w = CharacterPoint::new(3, 1, 0, 1, 0).unwrap();
        assert_eq!(x.eval(&w).unwrap(), CycloElement::eps(r.clone(), 1));

        let phi = IwasawaPoly::cyclo(r.clone(), 1, Var::X).unwrap();
        assert!(phi.eval(&w).unwrap().is_zero());

        let w9 = CharacterPoint::new(3, 2, 0, 1, 0).unwrap();
        let v = phi.eval(&w9).unwrap();
        assert_eq!(v.valuation(), Valuation::Exact(Rational::new(1, 3)));
        assert_eq!(v, CycloElement::eps_ratio(r.clone(), 1, 2).unwrap());

        let t = phi.eval(&CharacterPoint::trivial(3)).unwrap();
        assert_eq!(t.as_scalar().unwrap().to_signed_int().unwrap(), 3.into());
    }

    #[test]
    fn omega_vanishing_matches_order() {
        let r = ring();
        for n in 0..=2 {
            let om = IwasawaPoly::omega(r.clone(), n, Var::X);
            for k in 0..=3 {
                let w = CharacterPoint::new(3, k, 0, 1, 1).unwrap();
                assert_eq!(om.eval(&w).unwrap().is_zero(), k <= n, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn caps_truncate_and_overflow_reported() {
        let r = ring();
        let f = xp(&[(0, 0, 1), (1, 0, 1)]).with_caps(2, 0);
        let cube = f.pow(3).unwrap();
        assert_eq!(cube, xp(&[(0, 0, 1), (1, 0, 3), (2, 0, 3)]));
        let big = IwasawaPoly::from_group_terms(r.clone(), [((MAX_DEGREE, 0), BigUint::one())]);
        let err = big.mul(&big).unwrap_err();
        assert!(matches!(err, Error::DegreeOverflow { .. }));
    }

    #[test]
    fn character_validation() {
        assert!(CharacterPoint::new(3, 1, 1, 3, 1).is_err());
        let w = CharacterPoint::new(3, 0, 2, 7, 10).unwrap();
        assert_eq!((w.a, w.b), (0, 1));
        assert_eq!(w.conductor_exponents(), (1, 3));
    }

    fn arb_poly() -> impl Strategy<Value = IwasawaPoly> {
        proptest::collection::vec((0usize..4, 0usize..4, -30i64..30), 0..6)
            .prop_map(|t| xp(&t))
    }

    fn arb_char() -> impl Strategy<Value = CharacterPoint> {
        (0u32..3, 0u32..3, 1u64..9, 1u64..9).prop_filter_map("unit exponents", |(r, s, a, b)| {
            CharacterPoint::new(3, r, s, a, b).ok()
        })
    }

    proptest! {
        #[test]
        fn evaluation_is_a_ring_homomorphism(f in arb_poly(), g in arb_poly(), w in arb_char()) {
            let lhs = f.mul(&g).unwrap().eval(&w).unwrap();
            let rhs = f.eval(&w).unwrap().mul(&g.eval(&w).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            let lhs = f.add(&g).unwrap().eval(&w).unwrap();
            let rhs = f.eval(&w).unwrap().add(&g.eval(&w).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn cyclo_remainder_detects_roots(f in arb_poly()) {
            let phi = IwasawaPoly::cyclo(ring(), 1, Var::X).unwrap();
            let g = f.mul(&phi).unwrap();
            prop_assert!(g.divisible_by_cyclo(1, Var::X).unwrap());
            let rem = f.rem_cyclo(1, Var::X).unwrap();
            prop_assert!(f.sub(&rem).unwrap().divisible_by_cyclo(1, Var::X).unwrap());
        }
    }
}
