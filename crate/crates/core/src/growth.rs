//! Character classes, coinvariant ranks of `Lambda`-modules, and the
//! `O(p^n)` rank-bound accounting over a synthetic growth scenario.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::block::{delta_k, surviving_tag, BlockData};
use crate::error::{Error, Result};
use crate::iwasawa::{CharacterPoint, IwasawaPoly, Var};
use crate::logmatrix::{IndexTag, Place};
use crate::padic::{euler_phi_pp, Rational, ResidueRing, Valuation};

fn phi(p: u32, k: u32) -> u128 {
    euler_phi_pp(p, k) as u128
}

fn ppow(p: u32, k: u32) -> Result<u128> {
    (p as u128)
        .checked_pow(k)
        .ok_or_else(|| Error::Invalid(format!("{p}^{k} overflows")))
}

/// A Galois orbit of characters, with a representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterClass {
    pub rep: CharacterPoint,
    pub size: u128,
}

/// Number of classes whose representatives have orders exactly `(r, s)`.
pub fn classes_in_cell(p: u32, r: u32, s: u32) -> u128 {
    if r == 0 && s == 0 {
        1
    } else {
        phi(p, r.min(s))
    }
}

/// `phi(p^max(o_1, o_2))`, the `Z_p`-rank of `Z_p[w]`.
pub fn class_rank(w: &CharacterPoint) -> u128 {
    phi(w.prime, w.level())
}

/// Classes in the cell `(r, s)`: with `r >= s` the first exponent is
/// normalized to 1 and the second runs over units mod `p^s`, and
/// symmetrically otherwise.
pub fn cell_classes(p: u32, r: u32, s: u32) -> Result<Vec<CharacterClass>> {
    let size = phi(p, r.max(s));
    if r == 0 && s == 0 {
        return Ok(vec![CharacterClass {
            rep: CharacterPoint::trivial(p),
            size,
        }]);
    }
    let free = r.min(s);
    let m = (p as u64).pow(free);
    let units: Vec<u64> = if free == 0 {
        vec![1]
    } else {
        (1..m).filter(|x| x % p as u64 != 0).collect()
    };
    units
        .into_iter()
        .map(|u| {
            let (a, b) = if r >= s { (1, u) } else { (u, 1) };
            Ok(CharacterClass {
                rep: CharacterPoint::new(p, r, s, a, b)?,
                size,
            })
        })
        .collect()
}

/// Orbits of `{w : w^{p^n} = 1}` under `(w1, w2) -> (w1^a, w2^a)`; with
/// `new_only`, only those not killed by `p^{n-1}` (for `n = 0`, the trivial
/// class).
pub fn enumerate_classes(p: u32, n: u32, new_only: bool) -> Result<Vec<CharacterClass>> {
    let mut out = Vec::new();
    for r in 0..=n {
        for s in 0..=n {
            if new_only && r.max(s) != n {
                continue;
            }
            out.extend(cell_classes(p, r, s)?);
        }
    }
    Ok(out)
}

/// Factors with known root sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructuredFactor {
    /// The variable itself; vanishes iff that coordinate is trivial.
    Var(Var),
    /// `Phi_{p^k}(1 + v)`; vanishes iff that coordinate has order exactly `p^k`.
    Cyclo(Var, u32),
    /// `(1 + v)^{p^m} - 1`; vanishes iff that coordinate has order dividing `p^m`.
    Omega(Var, u32),
}

impl StructuredFactor {
    fn vanishes_at(&self, r: u32, s: u32) -> bool {
        let order = |v: Var| match v {
            Var::X => r,
            Var::Y => s,
        };
        match *self {
            StructuredFactor::Var(v) => order(v) == 0,
            StructuredFactor::Cyclo(v, k) => order(v) == k,
            StructuredFactor::Omega(v, m) => order(v) <= m,
        }
    }

    pub fn to_poly(&self, ring: &Arc<ResidueRing>) -> Result<IwasawaPoly> {
        Ok(match *self {
            StructuredFactor::Var(v) => IwasawaPoly::var(ring.clone(), v),
            StructuredFactor::Cyclo(v, k) => IwasawaPoly::cyclo(ring.clone(), k, v)?,
            StructuredFactor::Omega(v, m) => IwasawaPoly::omega(ring.clone(), m, v),
        })
    }
}

impl fmt::Display for StructuredFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructuredFactor::Var(v) => write!(f, "{v:?}"),
            StructuredFactor::Cyclo(v, k) => write!(f, "Phi_{k}({v:?})"),
            StructuredFactor::Omega(v, m) => write!(f, "omega_{m}({v:?})"),
        }
    }
}

/// One cyclic factor `Lambda/(f)`.
#[derive(Debug, Clone)]
pub enum TorsionFactor {
    /// `f` is the product of the listed factors (times a unit).
    Tagged(Vec<StructuredFactor>),
    /// `f` given only as a polynomial; roots are found by evaluation.
    Untagged(IwasawaPoly),
}

impl TorsionFactor {
    pub fn to_poly(&self, ring: &Arc<ResidueRing>) -> Result<IwasawaPoly> {
        match self {
            TorsionFactor::Untagged(f) => Ok(f.clone()),
            TorsionFactor::Tagged(fs) => {
                let mut acc = IwasawaPoly::one(ring.clone());
                for f in fs {
                    acc = acc.mul(&f.to_poly(ring)?)?;
                }
                Ok(acc)
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            TorsionFactor::Tagged(fs) if fs.is_empty() => "1".into(),
            TorsionFactor::Tagged(fs) => fs.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("*"),
            TorsionFactor::Untagged(f) => f.to_string(),
        }
    }
}

/// `Lambda^r ⊕ Lambda/(f_1) ⊕ ... ⊕ Lambda/(f_k)`.
#[derive(Debug, Clone)]
pub struct ModulePresentation {
    pub prime: u32,
    pub free_rank: u32,
    pub torsion: Vec<TorsionFactor>,
    pub ring: Arc<ResidueRing>,
}

impl ModulePresentation {
    pub fn new(ring: Arc<ResidueRing>, free_rank: u32, torsion: Vec<TorsionFactor>) -> Result<Self> {
        for t in &torsion {
            if let TorsionFactor::Untagged(f) = t {
                if f.is_zero() {
                    return Err(Error::Invalid("torsion factor is zero".into()));
                }
                if f.prime() != ring.prime() {
                    return Err(Error::PrimeMismatch(ring.prime(), f.prime()));
                }
            }
        }
        Ok(ModulePresentation {
            prime: ring.prime(),
            free_rank,
            torsion,
            ring,
        })
    }

    pub fn is_torsion(&self) -> bool {
        self.free_rank == 0
    }
}

/// Root decision for one factor at one class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RootKind {
    No,
    /// Exact root (tag logic, or the integer lift evaluates to zero).
    Exact,
    /// Counted as a root on the strength of the zero threshold only.
    PrecisionOnly,
}

fn untagged_root(f: &IwasawaPoly, w: &CharacterPoint, tau: i64) -> Result<RootKind> {
    let value = f.eval(w)?;
    if !value.valuation().is_reported_zero(tau) {
        return Ok(RootKind::No);
    }
    if !value.is_zero() {
        return Ok(RootKind::PrecisionOnly);
    }
    // Re-evaluate the symmetric integer lift with enough digits that no
    // coefficient can wrap; zero there means zero over Z.
    let ring = f.ring();
    let p = ring.prime() as f64;
    let mass: f64 = f.num_terms().max(1) as f64 * p;
    let extra = (mass.ln() / p.ln()).ceil() as u32 + 2;
    let wide = ResidueRing::shared(ring.prime(), ring.digits() + extra)?;
    let lifted = IwasawaPoly::from_group_terms(
        wide.clone(),
        f.group_terms()
            .map(|(k, c)| (*k, wide.reduce(&ring.signed(c))))
            .collect::<Vec<_>>(),
    );
    if lifted.eval(w)?.is_zero() {
        Ok(RootKind::Exact)
    } else {
        Ok(RootKind::PrecisionOnly)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CoinvariantRank {
    pub n: u32,
    pub rank: u128,
    pub free_part: u128,
    /// Roots counted per torsion factor (elements, not classes).
    pub factor_roots: Vec<u128>,
    /// Some root was accepted only because of the zero threshold.
    pub upper_bound_only: bool,
}

/// `r p^{2n} + sum_i #{w : w^{p^n} = 1, f_i(w) = 0}`, counted class by class
/// as class size times class count.
pub fn coinvariant_rank(m: &ModulePresentation, n: u32, tau: i64) -> Result<CoinvariantRank> {
    let p = m.prime;
    let free_part = (m.free_rank as u128)
        .checked_mul(ppow(p, 2 * n)?)
        .ok_or_else(|| Error::Invalid("rank overflows".into()))?;
    let mut factor_roots = Vec::with_capacity(m.torsion.len());
    let mut upper = false;
    for t in &m.torsion {
        let mut count: u128 = 0;
        for r in 0..=n {
            for s in 0..=n {
                match t {
                    TorsionFactor::Tagged(fs) => {
                        if fs.iter().any(|f| f.vanishes_at(r, s)) {
                            count += classes_in_cell(p, r, s) * phi(p, r.max(s));
                        }
                    }
                    TorsionFactor::Untagged(f) => {
                        for class in cell_classes(p, r, s)? {
                            match untagged_root(f, &class.rep, tau)? {
                                RootKind::No => {}
                                RootKind::Exact => count += class.size,
                                RootKind::PrecisionOnly => {
                                    count += class.size;
                                    upper = true;
                                }
                            }
                        }
                    }
                }
            }
        }
        factor_roots.push(count);
    }
    Ok(CoinvariantRank {
        n,
        rank: free_part + factor_roots.iter().sum::<u128>(),
        free_part,
        factor_roots,
        upper_bound_only: upper,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FreeRankFit {
    pub ranks: Vec<u128>,
    pub residuals: Vec<u128>,
    pub fitted_free_rank: u128,
    /// `max_n residual_n / p^n`, exact.
    pub constant: String,
    pub constant_value: f64,
    pub upper_bound_only: bool,
}

/// Fit `rank_n = r p^{2n} + O(p^n)` over `n = 0..=n_max`.
pub fn free_rank_fit(m: &ModulePresentation, n_max: u32, tau: i64) -> Result<FreeRankFit> {
    if n_max < 2 {
        return Err(Error::Invalid("need n_max >= 2".into()));
    }
    let p = m.prime;
    let mut ranks = Vec::new();
    let mut residuals = Vec::new();
    let mut upper = false;
    let mut c = BigRational::zero();
    for n in 0..=n_max {
        let cr = coinvariant_rank(m, n, tau)?;
        upper |= cr.upper_bound_only;
        if cr.rank < cr.free_part {
            return Err(Error::Inconsistent(format!(
                "rank {} below free part {} at n={n}",
                cr.rank, cr.free_part
            )));
        }
        let res = cr.rank - cr.free_part;
        let ratio = BigRational::new(BigInt::from(res), BigInt::from(ppow(p, n)?));
        if ratio > c {
            c = ratio;
        }
        ranks.push(cr.rank);
        residuals.push(res);
    }
    let top = ppow(p, 2 * n_max)?;
    let last = *ranks.last().unwrap();
    let fitted = (last + top / 2) / top;
    Ok(FreeRankFit {
        ranks,
        residuals,
        fitted_free_rank: fitted,
        constant: c.to_string(),
        constant_value: ratio_f64(&c),
        upper_bound_only: upper,
    })
}

fn ratio_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Valuation shape `a + b/phi(p^r) + c/phi(p^s)` of the Coleman values paired
/// with one index set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColemanModel {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    /// The modeled value is zero (infinite valuation).
    #[serde(default)]
    pub vanishes: bool,
}

impl ColemanModel {
    /// `None` when the modeled value is zero.
    pub fn valuation(&self, p: u32, r: u32, s: u32) -> Option<Valuation> {
        if self.vanishes {
            return None;
        }
        let v = Rational::from_integer(self.a)
            + Rational::new(self.b, euler_phi_pp(p, r) as i64)
            + Rational::new(self.c, euler_phi_pp(p, s) as i64);
        Some(Valuation::Exact(v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountRule {
    Constant(u64),
    /// `count = max(r, s)` on each cell.
    Level,
}

/// Cells `(r, s)` whose characters include bad classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BadSetRule {
    Cell { r: u32, s: u32, count: u64 },
    /// Cells `(k, k + offset)` for every `k >= 1` with `k + offset >= 1`.
    Diagonal { offset: i64, count: CountRule },
}

impl BadSetRule {
    /// Bad classes this rule places in cell `(r, s)`.
    pub fn count_at(&self, r: u32, s: u32) -> u64 {
        match *self {
            BadSetRule::Cell { r: rr, s: ss, count } => {
                if (rr, ss) == (r, s) {
                    count
                } else {
                    0
                }
            }
            BadSetRule::Diagonal { offset, count } => {
                if r >= 1 && s >= 1 && s as i64 - r as i64 == offset {
                    match count {
                        CountRule::Constant(c) => c,
                        CountRule::Level => r.max(s) as u64,
                    }
                } else {
                    0
                }
            }
        }
    }

    /// Whether this rule places bad classes at some `|r - s| > n0`.
    pub fn reaches_beyond(&self, n0: u32) -> bool {
        match *self {
            BadSetRule::Cell { r, s, count } => count > 0 && r.abs_diff(s) > n0,
            BadSetRule::Diagonal { offset, count } => {
                offset.unsigned_abs() > n0 as u64 && count != CountRule::Constant(0)
            }
        }
    }

    pub fn unbounded(&self) -> bool {
        matches!(
            self,
            BadSetRule::Diagonal {
                count: CountRule::Level,
                ..
            }
        )
    }
}

/// A synthetic model of Coleman data and fine Selmer data.
#[derive(Debug, Clone)]
pub struct GrowthScenario {
    pub prime: u32,
    pub g: usize,
    pub models: BTreeMap<IndexTag, ColemanModel>,
    pub default_model: ColemanModel,
    /// Minor valuation used when no block data is available.
    pub minor_valuation: Option<Rational>,
    pub bad_set: Vec<BadSetRule>,
    pub n0: u32,
    pub fine: ModulePresentation,
    pub block_mode: bool,
    pub bound_0: u128,
    pub tau: i64,
}

impl GrowthScenario {
    pub fn bad_count(&self, r: u32, s: u32) -> u64 {
        self.bad_set.iter().map(|b| b.count_at(r, s)).sum()
    }

    pub fn model_for(&self, tag: IndexTag) -> ColemanModel {
        self.models.get(&tag).copied().unwrap_or(self.default_model)
    }

    pub fn c_n_unbounded(&self) -> bool {
        self.bad_set.iter().any(|b| b.unbounded())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HLargeCell {
    pub r: u32,
    pub s: u32,
    pub in_scope: bool,
    pub index: Option<IndexTag>,
    pub minor_valuation: Valuation,
    /// `None` when the modeled value is zero.
    pub coleman_valuation: Option<Valuation>,
    pub total_valuation: Option<Valuation>,
    pub bad_classes: u64,
    pub nonzero: bool,
    pub violation: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HLargeReport {
    pub n0: u32,
    pub cells: Vec<HLargeCell>,
    /// Some bad-set rule places bad classes at `|r - s| > n0`.
    pub bad_set_beyond_threshold: bool,
    pub violations: usize,
}

impl HLargeReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && !self.bad_set_beyond_threshold
    }
}

/// Valuation of the surviving `I0`-row minor at orders `(r, s)` computed from
/// the closed form: `g val(delta_r) + g val(delta_s)` plus the valuations of
/// the determinants of the scalar blocks.
pub fn survivor_minor_valuation(b: &BlockData, r: u32, s: u32) -> Result<Valuation> {
    let mut total = Valuation::exact_int(0);
    for (q, k) in [(Place::P, r), (Place::Pc, s)] {
        let (b1, b2) = b.blocks(q);
        let prod = b1.mul(b2)?;
        let block = if k % 2 == 1 {
            prod.pow((k - 1) / 2)?.mul(b1)?
        } else {
            prod.pow(k / 2)?
        };
        let det = block.determinant()?;
        let vdet = match b.ring.valuation(&det) {
            Some(v) => Valuation::exact_int(v as i64),
            None => Valuation::at_least_int(b.ring.digits() as i64),
        };
        let vdelta = delta_k(b.ring.clone(), k)?.valuation();
        let mut vd = Valuation::exact_int(0);
        for _ in 0..b.g {
            vd = vd.add(&vdelta);
        }
        total = total.add(&vd).add(&vdet);
    }
    Ok(total)
}

/// Decide the paired minor/Coleman sum cell by cell for `1 <= r <= r_max`,
/// `1 <= s <= s_max`.
pub fn h_large_scan(
    sc: &GrowthScenario,
    block: Option<&BlockData>,
    r_max: u32,
    s_max: u32,
) -> Result<HLargeReport> {
    let mut cells = Vec::new();
    let mut violations = 0;
    for r in 1..=r_max {
        for s in 1..=s_max {
            let in_scope = r.abs_diff(s) > sc.n0;
            let (index, model) = if sc.block_mode {
                let t = surviving_tag(r, s);
                (Some(t), sc.model_for(t))
            } else {
                (None, sc.default_model)
            };
            let minor_valuation = match (block, sc.block_mode) {
                (Some(b), true) => survivor_minor_valuation(b, r, s)?,
                _ => Valuation::Exact(sc.minor_valuation.unwrap_or_else(|| Rational::from_integer(0))),
            };
            let coleman_valuation = model.valuation(sc.prime, r, s);
            let total_valuation = coleman_valuation.map(|c| minor_valuation.add(&c));
            let bad = sc.bad_count(r, s);
            let nonzero = total_valuation.is_some_and(|v| v.is_finite()) && bad == 0;
            let violation = in_scope && !nonzero;
            if violation {
                violations += 1;
            }
            cells.push(HLargeCell {
                r,
                s,
                in_scope,
                index,
                minor_valuation,
                coleman_valuation,
                total_valuation,
                bad_classes: bad,
                nonzero,
                violation,
            });
        }
    }
    Ok(HLargeReport {
        n0: sc.n0,
        cells,
        bad_set_beyond_threshold: sc.bad_set.iter().any(|b| b.reaches_beyond(sc.n0)),
        violations,
    })
}

/// Number of bad classes with `max(r, s) = n`.
pub fn xi_count(sc: &GrowthScenario, n: u32) -> u128 {
    level_cells(n).map(|(r, s)| sc.bad_count(r, s) as u128).sum()
}

/// Number of cells with `max(r, s) = n` holding any bad class.
pub fn xi_count_cells(sc: &GrowthScenario, n: u32) -> u128 {
    level_cells(n).filter(|&(r, s)| sc.bad_count(r, s) > 0).count() as u128
}

fn level_cells(n: u32) -> impl Iterator<Item = (u32, u32)> {
    (0..=n)
        .flat_map(move |r| (0..=n).map(move |s| (r, s)))
        .filter(move |&(r, s)| r.max(s) == n)
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthRow {
    pub n: u32,
    pub new_classes: u128,
    pub c_n: u128,
    pub c_n_cells: u128,
    pub increment: u128,
    pub cumulative: u128,
    pub fine_rank: Option<u128>,
    pub total: u128,
    /// `total / p^n`, exact.
    pub ratio: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    /// `sup_{n <= n_max} total_n / p^n`.
    pub finite_sup: String,
    /// `(total_{n_max} - total_{n_max - 1}) / (p^{n_max} - p^{n_max - 1})`.
    pub tail_slope: String,
    /// The larger of the two, or `None` when `C_n` is unbounded.
    pub value: Option<String>,
    pub value_f64: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthReport {
    pub prime: u32,
    pub g: usize,
    pub rows: Vec<GrowthRow>,
    /// Certificate with `C_n` counted in classes.
    pub certificate: Certificate,
    /// Certificate with `C_n` counted in cells.
    pub certificate_cells: Certificate,
    pub c_n_unbounded: bool,
    pub flags: Vec<String>,
    pub upper_bound_only: bool,
}

fn certificate(p: u32, totals: &[u128], unbounded: bool) -> Result<Certificate> {
    let mut sup = BigRational::zero();
    for (n, t) in totals.iter().enumerate() {
        let r = BigRational::new(BigInt::from(*t), BigInt::from(ppow(p, n as u32)?));
        if r > sup {
            sup = r;
        }
    }
    let k = totals.len() - 1;
    let slope = if k >= 1 {
        let num = BigInt::from(totals[k]) - BigInt::from(totals[k - 1]);
        let den = BigInt::from(ppow(p, k as u32)? - ppow(p, k as u32 - 1)?);
        BigRational::new(num, den)
    } else {
        BigRational::zero()
    };
    let best = if slope > sup { slope.clone() } else { sup.clone() };
    Ok(Certificate {
        finite_sup: sup.to_string(),
        tail_slope: slope.to_string(),
        value: (!unbounded).then(|| best.to_string()),
        value_f64: (!unbounded).then(|| ratio_f64(&best)),
    })
}

fn decimal(num: u128, den: u128) -> String {
    let q = BigRational::new(BigInt::from(num), BigInt::from(den));
    let scaled = (q * BigRational::from_integer(BigInt::from(1_000_000_000u64))).round();
    let v: BigInt = scaled.to_integer();
    let s = v.to_string();
    let s = format!("{s:0>10}");
    let (int, frac) = s.split_at(s.len() - 9);
    format!("{int}.{frac}")
}

fn series(sc: &GrowthScenario, n_max: u32, fine: Option<&[u128]>) -> Result<GrowthReport> {
    if n_max < 1 {
        return Err(Error::Invalid("need n_max >= 1".into()));
    }
    let p = sc.prime;
    let two_g = 2 * sc.g as u128;
    let mut rows = Vec::new();
    let (mut cum, mut cum_cells) = (sc.bound_0, sc.bound_0);
    let (mut totals, mut totals_cells) = (Vec::new(), Vec::new());
    for n in 0..=n_max {
        let (c_n, c_cells) = if n == 0 {
            (0, 0)
        } else {
            (xi_count(sc, n), xi_count_cells(sc, n))
        };
        let new_classes = enumerate_classes(p, n, true)?.len() as u128;
        let inc = if n == 0 { 0 } else { two_g * c_n * phi(p, n) };
        let inc_cells = if n == 0 { 0 } else { two_g * c_cells * phi(p, n) };
        cum += inc;
        cum_cells += inc_cells;
        let f = fine.map(|f| f[n as usize]);
        let total = cum + f.unwrap_or(0);
        totals.push(total);
        totals_cells.push(cum_cells + f.unwrap_or(0));
        rows.push(GrowthRow {
            n,
            new_classes,
            c_n,
            c_n_cells: c_cells,
            increment: inc,
            cumulative: cum,
            fine_rank: f,
            total,
            ratio: decimal(total, ppow(p, n)?),
        });
    }
    let unbounded = sc.c_n_unbounded();
    Ok(GrowthReport {
        prime: p,
        g: sc.g,
        certificate: certificate(p, &totals, unbounded)?,
        certificate_cells: certificate(p, &totals_cells, unbounded)?,
        rows,
        c_n_unbounded: unbounded,
        flags: Vec::new(),
        upper_bound_only: false,
    })
}

/// `bound_n = bound_{n-1} + 2g C_n phi(p^n)` for `n = 0..=n_max`.
pub fn growth_bound_series(sc: &GrowthScenario, n_max: u32) -> Result<GrowthReport> {
    let mut rep = series(sc, n_max, None)?;
    if rep.c_n_unbounded {
        rep.flags.push("bad classes per level are unbounded".into());
    }
    Ok(rep)
}

/// `total_n = bound_n + rank (fine module)_{Gamma_n}`.
pub fn mordell_weil_bound(
    sc: &GrowthScenario,
    n_max: u32,
    h_large: Option<&HLargeReport>,
) -> Result<GrowthReport> {
    let mut fine = Vec::new();
    let mut upper = false;
    for n in 0..=n_max {
        let cr = coinvariant_rank(&sc.fine, n, sc.tau)?;
        upper |= cr.upper_bound_only;
        fine.push(cr.rank);
    }
    let mut rep = series(sc, n_max, Some(&fine))?;
    rep.upper_bound_only = upper;
    if !sc.fine.is_torsion() {
        rep.flags.push("fine module has a free part; it must be torsion".into());
    }
    if let Some(h) = h_large {
        if !h.passed() {
            rep.flags.push("scenario violates the large-|r-s| nonvanishing hypothesis".into());
        }
    }
    if rep.c_n_unbounded {
        rep.flags.push("bad classes per level are unbounded".into());
    }
    Ok(rep)
}
