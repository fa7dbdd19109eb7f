//! The block anti-diagonal case `C_q = [[0, A1], [A2, 0]]`.
//!
//! Here `C_{q,n} = [[0, B1], [Phi_{p^n} B2, 0]]` with `B1 = A2^{-1}` and
//! `B2 = A1^{-1}`, so `H_{q,k}` evaluated at `zeta_{p^k} - 1` has a closed form
//! in terms of `delta_k`, and only one `I0`-row minor of `H_{r,s}` survives at
//! a character of orders `(r, s)`, depending on the parities of `r` and `s`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::Serialize;

use crate::cyclotomic::CycloElement;
use crate::error::{Error, Result};
use crate::iwasawa::{CharacterPoint, Var};
use crate::linalg::ZpMatrix;
use crate::logmatrix::{
    block_minor_factors, enumerate_index_sets, CycloMatrix, DieudonneInput, IndexTag, LambdaMatrix,
    Place, SignedIndex,
};
use crate::padic::{euler_phi_pp, Rational, ResidueRing, Valuation};

/// The pairs `(B_{q,1}, B_{q,2})` for both places.
#[derive(Debug, Clone)]
pub struct BlockData {
    pub prime: u32,
    pub g: usize,
    pub ring: Arc<ResidueRing>,
    pub p: (ZpMatrix, ZpMatrix),
    pub pc: (ZpMatrix, ZpMatrix),
}

impl BlockData {
    pub fn from_input(d: &DieudonneInput) -> Result<Self> {
        let g = d.g;
        let pair = |q: Place| -> Result<(ZpMatrix, ZpMatrix)> {
            let c = d.c(q);
            if !c.is_block_anti_diagonal(g) {
                return Err(Error::NotBlockAntiDiagonal);
            }
            let a1 = c.block(0, g, g, g);
            let a2 = c.block(g, 0, g, g);
            Ok((a2.inverse()?, a1.inverse()?))
        };
        Ok(BlockData {
            prime: d.prime,
            g,
            ring: d.ring.clone(),
            p: pair(Place::P)?,
            pc: pair(Place::Pc)?,
        })
    }

    pub fn blocks(&self, q: Place) -> &(ZpMatrix, ZpMatrix) {
        match q {
            Place::P => &self.p,
            Place::Pc => &self.pc,
        }
    }
}

/// `delta_k`: the product of `eps_i / eps_{i+1}` over odd `i < k` with
/// `i + 1 <= k` (empty for `k = 1`), placed at level `k`.
pub fn delta_k(ring: Arc<ResidueRing>, k: u32) -> Result<CycloElement> {
    if k == 0 {
        return Err(Error::Invalid("delta index must be at least 1".into()));
    }
    let mut acc = CycloElement::one(ring.clone(), k);
    let mut i = 1;
    while i < k {
        acc = acc.mul(&CycloElement::eps_ratio(ring.clone(), i, k)?)?;
        i += 2;
    }
    Ok(acc)
}

/// Exact valuation of `delta_k`.
pub fn delta_valuation(p: u32, k: u32) -> Rational {
    let mut v = Rational::from_integer(0);
    let mut i = 1;
    while i < k {
        v += Rational::new(1, euler_phi_pp(p, i) as i64) - Rational::new(1, euler_phi_pp(p, i + 1) as i64);
        i += 2;
    }
    v
}

/// `H_{q,k}(zeta_{p^k} - 1)` from the closed form: the top-right block is
/// `delta_k (B1 B2)^{(k-1)/2} B1` for odd `k`, the top-left block is
/// `delta_k (B1 B2)^{k/2}` for even `k`, everything else is zero.
pub fn closed_form_h(b: &BlockData, q: Place, k: u32) -> Result<CycloMatrix> {
    let g = b.g;
    let (b1, b2) = b.blocks(q);
    let delta = delta_k(b.ring.clone(), k)?;
    let prod = b1.mul(b2)?;
    let (block, col0) = if k % 2 == 1 {
        (prod.pow((k - 1) / 2)?.mul(b1)?, g)
    } else {
        (prod.pow(k / 2)?, 0)
    };
    let zero = CycloElement::zero(b.ring.clone(), k);
    let mut rows = vec![vec![zero; 2 * g]; 2 * g];
    for i in 0..g {
        for j in 0..g {
            rows[i][col0 + j] = delta.scale(block.get(i, j));
        }
    }
    Ok(CycloMatrix { rows })
}

/// The index `J` whose `(I0, J)`-minor survives at orders `(r, s)`.
pub fn surviving_index(g: usize, r: u32, s: u32) -> SignedIndex {
    SignedIndex::tagged(g, surviving_tag(r, s))
}

pub fn surviving_tag(r: u32, s: u32) -> IndexTag {
    match (r % 2 == 0, s % 2 == 0) {
        (true, true) => IndexTag::I0,
        (false, false) => IndexTag::I1,
        (false, true) => IndexTag::Mix10,
        (true, false) => IndexTag::Mix01,
    }
}

/// Survivor for each parity pair `(r mod 2, s mod 2)`.
#[derive(Debug, Clone, Serialize)]
pub struct ParityPattern {
    pub entries: Vec<((u32, u32), IndexTag)>,
}

impl ParityPattern {
    pub fn standard() -> Self {
        let entries = [(0, 0), (1, 1), (1, 0), (0, 1)]
            .into_iter()
            .map(|(a, b)| ((a, b), surviving_tag(a + 2, b + 2)))
            .collect();
        ParityPattern { entries }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroStatus {
    /// Divisible by `Phi_{p^r}(1+X)` or `Phi_{p^s}(1+Y)`, or identically zero.
    SymbolicZero,
    /// Not shown zero structurally, but zero under the working threshold.
    PrecisionZero,
    Nonzero,
}

impl ZeroStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            ZeroStatus::SymbolicZero => "symbolic-zero",
            ZeroStatus::PrecisionZero => "precision-zero",
            ZeroStatus::Nonzero => "nonzero",
        }
    }

    pub fn is_zero(&self) -> bool {
        !matches!(self, ZeroStatus::Nonzero)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MinorCheck {
    pub j: SignedIndex,
    pub status: ZeroStatus,
    pub valuation: Valuation,
    pub survivor: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VanishingReport {
    pub r: u32,
    pub s: u32,
    pub character: CharacterPoint,
    pub tau: i64,
    pub survivor: SignedIndex,
    pub survivor_valuation: Valuation,
    /// `g (val delta_r + val delta_s)`, the valuation the closed form predicts.
    pub predicted_survivor_valuation: Valuation,
    pub minors: Vec<MinorCheck>,
    /// Non-survivors that came out nonzero, and a survivor that came out zero.
    pub failures: Vec<String>,
}

impl VanishingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn all_non_survivors_symbolic(&self) -> bool {
        self.minors
            .iter()
            .filter(|m| !m.survivor)
            .all(|m| m.status == ZeroStatus::SymbolicZero)
    }
}

/// Check every `(I0, J)`-minor of `diag(H_{p,r}, H_{pc,s})` at `theta`.
///
/// `hp` and `hpc` are `H_{p,r}` and `H_{pc,s}`; `theta` must have orders
/// exactly `(r, s)`.
pub fn verify_vanishing_pattern(
    g: usize,
    hp: &LambdaMatrix,
    hpc: &LambdaMatrix,
    theta: &CharacterPoint,
    tau: i64,
) -> Result<VanishingReport> {
    let (r, s) = (theta.r, theta.s);
    if r == 0 || s == 0 {
        return Err(Error::BadCharacter(format!(
            "vanishing pattern needs orders >= 1, got ({r}, {s})"
        )));
    }
    let i0 = SignedIndex::tagged(g, IndexTag::I0);
    let survivor = surviving_index(g, r, s);
    let mut minors = Vec::new();
    let mut failures = Vec::new();
    let level = theta.level();
    let mut survivor_valuation = Valuation::at_least_int(0);
    for j in enumerate_index_sets(g)? {
        let is_survivor = j == survivor;
        let (status, valuation) = match block_minor_factors(hp, hpc, &i0, &j)? {
            None => (ZeroStatus::SymbolicZero, Valuation::at_least_int(hp_digits(hp))),
            Some((a, b)) => {
                let m = a.mul(&b)?;
                let symbolic = m.is_zero()
                    || m.divisible_by_cyclo(r, Var::X)?
                    || m.divisible_by_cyclo(s, Var::Y)?;
                let value = m.eval(theta)?;
                debug_assert_eq!(value.level(), level);
                let v = value.valuation();
                if symbolic {
                    (ZeroStatus::SymbolicZero, v)
                } else if v.is_reported_zero(tau) {
                    (ZeroStatus::PrecisionZero, v)
                } else {
                    (ZeroStatus::Nonzero, v)
                }
            }
        };
        if is_survivor {
            survivor_valuation = valuation;
            if status.is_zero() {
                failures.push(format!("survivor {} is {}", j.label(), status.as_str()));
            }
        } else if status == ZeroStatus::Nonzero {
            failures.push(format!("non-survivor {} is nonzero ({valuation})", j.label()));
        }
        minors.push(MinorCheck {
            j,
            status,
            valuation,
            survivor: is_survivor,
        });
    }
    let p = theta.prime;
    Ok(VanishingReport {
        r,
        s,
        character: *theta,
        tau,
        survivor,
        survivor_valuation,
        predicted_survivor_valuation: Valuation::Exact(
            Rational::from_integer(g as i64) * (delta_valuation(p, r) + delta_valuation(p, s)),
        ),
        minors,
        failures,
    })
}

fn hp_digits(h: &LambdaMatrix) -> i64 {
    h.get(0, 0).ring().digits() as i64
}

/// Result of `B C B^{-1}`.
#[derive(Debug, Clone)]
pub struct Conjugation {
    pub result: ZpMatrix,
    pub input_block_anti_diagonal: bool,
    pub result_block_anti_diagonal: bool,
}

impl Conjugation {
    /// Block anti-diagonal inputs stay block anti-diagonal.
    pub fn preserved(&self) -> bool {
        !self.input_block_anti_diagonal || self.result_block_anti_diagonal
    }
}

fn check_block_diagonal_basis(b: &ZpMatrix, g: usize) -> Result<()> {
    if !b.is_block_diagonal(g) {
        return Err(Error::NotBlockDiagonal);
    }
    for k in [0, g] {
        let blk = b.block(k, k, g, g);
        if !b.ring().is_unit(&blk.determinant()?) {
            return Err(Error::DeterminantNotUnit);
        }
    }
    Ok(())
}

/// `B C B^{-1}` for a block diagonal `B` with invertible blocks.
pub fn conjugate_basis(c: &ZpMatrix, b: &ZpMatrix, g: usize) -> Result<Conjugation> {
    check_block_diagonal_basis(b, g)?;
    let result = b.mul(c)?.mul(&b.inverse()?)?;
    Ok(Conjugation {
        input_block_anti_diagonal: c.is_block_anti_diagonal(g),
        result_block_anti_diagonal: result.is_block_anti_diagonal(g),
        result,
    })
}

/// Row selections for the vanishing-locus comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum RowSelection {
    Top,
    Bottom,
    Full,
    Empty,
    Custom(Vec<usize>),
}

impl RowSelection {
    /// 0-based rows of a `2g`-row matrix.
    pub fn rows(&self, g: usize) -> Vec<usize> {
        match self {
            RowSelection::Top => (0..g).collect(),
            RowSelection::Bottom => (g..2 * g).collect(),
            RowSelection::Full => (0..2 * g).collect(),
            RowSelection::Empty => vec![],
            RowSelection::Custom(v) => v.clone(),
        }
    }

    /// Whether the selection is a union of whole blocks, which is what the
    /// invariance argument covers.
    pub fn covered(&self, g: usize) -> bool {
        match self {
            RowSelection::Custom(v) => {
                let set: BTreeSet<usize> = v.iter().copied().collect();
                let top: BTreeSet<usize> = (0..g).collect();
                let bottom: BTreeSet<usize> = (g..2 * g).collect();
                set.is_empty() || set == top || set == bottom || set == &top | &bottom
            }
            _ => true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelInvariance {
    pub selection: RowSelection,
    pub covered: bool,
    /// Columns whose selected rows all vanish, before and after `B`.
    pub locus_before: Vec<usize>,
    pub locus_after: Vec<usize>,
    pub equal: bool,
}

fn locus(v: &CycloMatrix, rows: &[usize]) -> Vec<usize> {
    (0..v.ncols())
        .filter(|&j| rows.iter().all(|&i| v.get(i, j).is_zero()))
        .collect()
}

/// `B V` for a scalar matrix `B` and a matrix `V` of cyclotomic values.
pub fn apply_scalar_matrix(b: &ZpMatrix, v: &CycloMatrix) -> Result<CycloMatrix> {
    if b.cols() != v.nrows() {
        return Err(Error::Shape("B V with mismatched inner dimension".into()));
    }
    let mut rows = Vec::with_capacity(b.rows());
    for i in 0..b.rows() {
        let mut row = Vec::with_capacity(v.ncols());
        for j in 0..v.ncols() {
            let mut acc = CycloElement::zero(v.get(0, j).ring().clone(), v.get(0, j).level());
            for k in 0..b.cols() {
                let c: &BigUint = b.get(i, k);
                if num_traits::Zero::is_zero(c) {
                    continue;
                }
                acc = acc.add(&v.get(k, j).scale(c))?;
            }
            row.push(acc);
        }
        rows.push(row);
    }
    Ok(CycloMatrix { rows })
}

/// Compare the simultaneous-vanishing locus of the selected rows of `V` and
/// of `B V`.
pub fn kernel_invariance_check(
    v: &CycloMatrix,
    b: &ZpMatrix,
    g: usize,
    selection: RowSelection,
) -> Result<KernelInvariance> {
    check_block_diagonal_basis(b, g)?;
    if v.nrows() != 2 * g {
        return Err(Error::Shape(format!("V has {} rows, expected {}", v.nrows(), 2 * g)));
    }
    let rows = selection.rows(g);
    if rows.iter().any(|&i| i >= 2 * g) {
        return Err(Error::BadIndexSet(format!("row selection {rows:?} out of range")));
    }
    let bv = apply_scalar_matrix(b, v)?;
    let before = locus(v, &rows);
    let after = locus(&bv, &rows);
    Ok(KernelInvariance {
        covered: selection.covered(g),
        equal: before == after,
        selection,
        locus_before: before,
        locus_after: after,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logmatrix::{h_matrix, h_tower};

    fn elliptic() -> DieudonneInput {
        let c = vec![vec![0, -1], vec![1, 0]];
        DieudonneInput::new(3, 1, 30, &c, &c).unwrap()
    }

    #[test]
    fn block_data_of_elliptic() {
        let b = BlockData::from_input(&elliptic()).unwrap();
        assert_eq!(b.p.0.to_signed_strings(), vec![vec!["1"]]);
        assert_eq!(b.p.1.to_signed_strings(), vec![vec!["-1"]]);
    }

    #[test]
    fn delta_examples() {
        let r = ResidueRing::shared(3, 30).unwrap();
        assert_eq!(delta_k(r.clone(), 1).unwrap(), CycloElement::one(r.clone(), 1));
        let d2 = delta_k(r.clone(), 2).unwrap();
        assert_eq!(d2.valuation(), Valuation::Exact(Rational::new(1, 3)));
        let e1 = CycloElement::eps(r.clone(), 1).embed(2).unwrap();
        let e2 = CycloElement::eps(r.clone(), 2);
        assert!(d2.eq_to_precision(&e1.div(&e2).unwrap()));
        let d4 = delta_k(r.clone(), 4).unwrap();
        let expect = Rational::new(1, 3) + Rational::new(1, 27);
        assert_eq!(d4.valuation(), Valuation::Exact(expect));
        assert_eq!(delta_valuation(3, 4), expect);
    }

    #[test]
    fn closed_form_matches_direct_evaluation() {
        let d = elliptic();
        let b = BlockData::from_input(&d).unwrap();
        for q in Place::BOTH {
            let tower = h_tower(&d, q, 4).unwrap();
            for k in 1..=4u32 {
                let (r, s) = match q {
                    Place::P => (k, 0),
                    Place::Pc => (0, k),
                };
                let w = CharacterPoint::primitive(3, r, s).unwrap();
                let direct = tower[k as usize - 1].eval(&w).unwrap();
                let closed = closed_form_h(&b, q, k).unwrap();
                assert!(closed.eq_to_precision(&direct), "q={q} k={k}");
            }
        }
        let c1 = closed_form_h(&b, Place::P, 1).unwrap();
        assert_eq!(c1.get(0, 1), &CycloElement::one(d.ring.clone(), 1));
    }

    #[test]
    fn survivors_by_parity() {
        assert_eq!(surviving_tag(2, 2), IndexTag::I0);
        assert_eq!(surviving_tag(1, 1), IndexTag::I1);
        assert_eq!(surviving_tag(2, 1), IndexTag::Mix01);
        assert_eq!(surviving_tag(1, 2), IndexTag::Mix10);
        assert_eq!(ParityPattern::standard().entries.len(), 4);
    }

    #[test]
    fn elliptic_vanishing_pattern() {
        let d = elliptic();
        for (r, s) in [(1, 1), (2, 1), (2, 3)] {
            let hp = h_matrix(&d, Place::P, r).unwrap();
            let hpc = h_matrix(&d, Place::Pc, s).unwrap();
            let w = CharacterPoint::primitive(3, r, s).unwrap();
            let rep = verify_vanishing_pattern(1, &hp, &hpc, &w, 15).unwrap();
            assert!(rep.passed(), "{:?}", rep.failures);
            assert!(rep.all_non_survivors_symbolic());
            assert_eq!(rep.minors.len(), 6);
            assert_eq!(rep.survivor_valuation, rep.predicted_survivor_valuation);
        }
    }

    #[test]
    fn conjugation_examples() {
        let d = elliptic();
        let r = d.ring.clone();
        let b = ZpMatrix::from_i64_rows(r.clone(), &[vec![2, 0], vec![0, 5]]).unwrap();
        let out = conjugate_basis(&d.c_p, &b, 1).unwrap();
        assert!(out.preserved() && out.result_block_anti_diagonal);
        // [[0, -u/v], [v/u, 0]] with u = 2, v = 5
        let u_over_v = r.mul(&BigUint::from(2u32), &r.inv(&BigUint::from(5u32)).unwrap());
        assert_eq!(out.result.get(0, 1), &r.neg(&u_over_v));
        let id = ZpMatrix::identity(r.clone(), 2);
        assert_eq!(conjugate_basis(&d.c_p, &id, 1).unwrap().result, d.c_p);
        let bad = ZpMatrix::from_i64_rows(r, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(conjugate_basis(&d.c_p, &bad, 1).unwrap_err(), Error::NotBlockDiagonal);
    }

    #[test]
    fn kernel_locus_preserved() {
        let r = ResidueRing::shared(3, 20).unwrap();
        let z = CycloElement::zero(r.clone(), 1);
        let one = CycloElement::one(r.clone(), 1);
        let e = CycloElement::eps(r.clone(), 1);
        let v = CycloMatrix {
            rows: vec![vec![z.clone(), one.clone()], vec![e.clone(), z.clone()]],
        };
        let b = ZpMatrix::from_i64_rows(r, &[vec![4, 0], vec![0, 7]]).unwrap();
        let k = kernel_invariance_check(&v, &b, 1, RowSelection::Top).unwrap();
        assert_eq!(k.locus_before, vec![0]);
        assert!(k.equal && k.covered);
        let k = kernel_invariance_check(&v, &b, 1, RowSelection::Custom(vec![0])).unwrap();
        assert!(k.covered);
    }
}
