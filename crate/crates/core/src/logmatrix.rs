//! The matrix tower built from a pair of Frobenius matrices: the factors
//! `C_{q,r}`, their products `H_{q,r}`, the block matrix `H_{r,s}`, its
//! signed minors, and the approximants `M_{q,n}` of the logarithmic matrix.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cyclotomic::CycloElement;
use crate::error::{Error, Result};
use crate::iwasawa::{CharacterPoint, IwasawaPoly, PolyRing, Var};
use crate::linalg::{determinant, newton_polygon, ZpMatrix};
use crate::padic::{Rational, ResidueRing, Valuation};

/// One of the two primes above `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Place {
    #[serde(rename = "p")]
    P,
    #[serde(rename = "pc")]
    Pc,
}

impl Place {
    pub const BOTH: [Place; 2] = [Place::P, Place::Pc];

    /// The variable this place's matrices live in.
    pub fn var(self) -> Var {
        match self {
            Place::P => Var::X,
            Place::Pc => Var::Y,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Place::P => "p",
            Place::Pc => "pc",
        })
    }
}

/// Frobenius matrices `C_p`, `C_pc` over `Z_p` at working precision.
#[derive(Debug, Clone)]
pub struct DieudonneInput {
    pub prime: u32,
    pub g: usize,
    pub ring: Arc<ResidueRing>,
    pub c_p: ZpMatrix,
    pub c_pc: ZpMatrix,
}

impl DieudonneInput {
    pub fn new(prime: u32, g: usize, precision: u32, c_p: &[Vec<i64>], c_pc: &[Vec<i64>]) -> Result<Self> {
        let ring = ResidueRing::shared(prime, precision)?;
        Ok(DieudonneInput {
            prime,
            g,
            c_p: ZpMatrix::from_i64_rows(ring.clone(), c_p)?,
            c_pc: ZpMatrix::from_i64_rows(ring.clone(), c_pc)?,
            ring,
        })
    }

    pub fn from_matrices(g: usize, c_p: ZpMatrix, c_pc: ZpMatrix) -> Result<Self> {
        if !c_p.ring().same_as(c_pc.ring()) {
            return Err(Error::Invalid("matrices over different residue rings".into()));
        }
        Ok(DieudonneInput {
            prime: c_p.ring().prime(),
            g,
            ring: c_p.ring().clone(),
            c_p,
            c_pc,
        })
    }

    pub fn c(&self, q: Place) -> &ZpMatrix {
        match q {
            Place::P => &self.c_p,
            Place::Pc => &self.c_pc,
        }
    }

    fn check_shape(&self, q: Place) -> Result<()> {
        let c = self.c(q);
        if self.g == 0 || c.rows() != 2 * self.g || c.cols() != 2 * self.g {
            return Err(Error::Shape(format!(
                "C_{q} is {}x{}, expected {}x{}",
                c.rows(),
                c.cols(),
                2 * self.g,
                2 * self.g
            )));
        }
        Ok(())
    }

    /// `C_q diag(p I_g, I_g)`, which is `p` times the Frobenius matrix `C_{phi,q}`.
    pub fn scaled_frobenius(&self, q: Place) -> Result<ZpMatrix> {
        self.check_shape(q)?;
        let c = self.c(q);
        let mut a = c.clone();
        let p = BigUint::from(self.prime);
        for i in 0..c.rows() {
            for j in 0..self.g {
                a.set(i, j, c.get(i, j) * &p);
            }
        }
        Ok(a)
    }
}

/// Frobenius analysis of one place.
#[derive(Debug, Clone, Serialize)]
pub struct PlaceValidation {
    pub place: Place,
    pub determinant: String,
    pub determinant_is_unit: bool,
    pub block_anti_diagonal: bool,
    /// Newton polygon slopes of the characteristic polynomial of `C_phi`.
    pub newton_slopes: Vec<String>,
    /// Valuations of the eigenvalues of `C_phi` (negated slopes).
    pub eigenvalue_valuations: Vec<String>,
    /// All eigenvalue valuations in `[-1, 0)`.
    pub slopes_in_closed_minus_one_open_zero: bool,
    /// All eigenvalue valuations in `(-1, 0]`.
    pub slopes_in_open_minus_one_closed_zero: bool,
    /// `det(I - C_phi)` reported zero under the threshold.
    pub eigenvalue_one: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub accepted: bool,
    pub reasons: Vec<String>,
    pub warnings: Vec<String>,
    pub tau: i64,
    pub places: Vec<PlaceValidation>,
}

impl ValidationReport {
    pub fn block_anti_diagonal(&self) -> bool {
        self.places.len() == 2 && self.places.iter().all(|p| p.block_anti_diagonal)
    }
}

fn analyze_place(d: &DieudonneInput, q: Place, tau: i64) -> Result<PlaceValidation> {
    let c = d.c(q);
    let det = c.determinant()?;
    let a = d.scaled_frobenius(q)?;
    let n = 2 * d.g;
    // chi_{C_phi}(x) = p^{-2g} chi_A(p x): coefficient i has valuation v(a_i) + i - 2g.
    let cp = a.charpoly()?;
    let points: Vec<Option<Rational>> = cp
        .iter()
        .enumerate()
        .map(|(i, c)| {
            d.ring
                .valuation(c)
                .map(|v| Rational::from_integer(v as i64 + i as i64 - n as i64))
        })
        .collect();
    let np = newton_polygon(&points);
    let roots: Vec<Rational> = np.slopes.iter().map(|s| -s).collect();
    let zero = Rational::from_integer(0);
    let minus_one = Rational::from_integer(-1);
    // det(I - C_phi) = p^{-2g} chi_A(p)
    let mut s = BigUint::zero();
    let mut pk = BigUint::one();
    let p = BigUint::from(d.prime);
    for c in &cp {
        s = d.ring.add(&s, &d.ring.mul(c, &pk));
        pk = d.ring.reduce_uint(&(&pk * &p));
    }
    let eig1 = match d.ring.valuation(&s) {
        None => true,
        Some(v) => v as i64 >= tau,
    };
    Ok(PlaceValidation {
        place: q,
        determinant: d.ring.signed(&det).to_string(),
        determinant_is_unit: d.ring.is_unit(&det),
        block_anti_diagonal: c.is_block_anti_diagonal(d.g),
        newton_slopes: np.slopes.iter().map(|s| s.to_string()).collect(),
        eigenvalue_valuations: roots.iter().map(|s| s.to_string()).collect(),
        slopes_in_closed_minus_one_open_zero: roots.len() == n
            && roots.iter().all(|v| *v >= minus_one && *v < zero),
        slopes_in_open_minus_one_closed_zero: roots.len() == n
            && roots.iter().all(|v| *v > minus_one && *v <= zero),
        eigenvalue_one: eig1,
    })
}

/// Check unit determinants and report Frobenius slopes for both places.
pub fn validate_input(d: &DieudonneInput, tau: i64) -> ValidationReport {
    let mut reasons = Vec::new();
    let mut warnings = Vec::new();
    let mut places = Vec::new();
    for q in Place::BOTH {
        if let Err(e) = d.check_shape(q) {
            reasons.push(e.to_string());
            continue;
        }
        match analyze_place(d, q, tau) {
            Ok(pv) => {
                if !pv.determinant_is_unit {
                    reasons.push(format!("C_{q}: {}", Error::DeterminantNotUnit));
                }
                if pv.eigenvalue_one {
                    warnings.push(format!("C_{q}: Frobenius has eigenvalue 1 to precision"));
                }
                places.push(pv);
            }
            Err(e) => reasons.push(format!("C_{q}: {e}")),
        }
    }
    ValidationReport {
        accepted: reasons.is_empty(),
        reasons,
        warnings,
        tau,
        places,
    }
}

/// Which rows/columns of a `4g x 4g` matrix belong to which place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlockLayout {
    pub g: usize,
}

/// A rectangular matrix of polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<IwasawaPoly>,
    layout: Option<BlockLayout>,
}

impl LambdaMatrix {
    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> IwasawaPoly,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        LambdaMatrix {
            rows,
            cols,
            entries,
            layout: None,
        }
    }

    pub fn constant(m: &ZpMatrix) -> Self {
        let ring = m.ring().clone();
        Self::from_fn(m.rows(), m.cols(), |i, j| {
            IwasawaPoly::constant(ring.clone(), m.get(i, j).clone())
        })
    }

    pub fn identity(ring: Arc<ResidueRing>, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                IwasawaPoly::one(ring.clone())
            } else {
                IwasawaPoly::zero(ring.clone())
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn layout(&self) -> Option<BlockLayout> {
        self.layout
    }

    pub fn get(&self, i: usize, j: usize) -> &IwasawaPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<IwasawaPoly>> {
        (0..self.rows)
            .map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn mul(&self, rhs: &LambdaMatrix) -> Result<LambdaMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let ring = self.entries[0].ring().clone();
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = IwasawaPoly::zero(ring.clone());
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = rhs.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b)?)?;
                }
                entries.push(acc);
            }
        }
        Ok(LambdaMatrix {
            rows: self.rows,
            cols: rhs.cols,
            entries,
            layout: None,
        })
    }

    pub fn sub(&self, rhs: &LambdaMatrix) -> Result<LambdaMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape("difference of unequal shapes".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<_>>()?;
        Ok(LambdaMatrix {
            entries,
            ..self.clone()
        })
    }

    pub fn scale(&self, k: &BigUint) -> LambdaMatrix {
        LambdaMatrix {
            entries: self.entries.iter().map(|e| e.scale(k)).collect(),
            ..self.clone()
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> LambdaMatrix {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        LambdaMatrix {
            rows: rows.len(),
            cols: cols.len(),
            entries,
            layout: None,
        }
    }

    pub fn determinant(&self) -> Result<IwasawaPoly> {
        let ring = self
            .entries
            .first()
            .map(|e| e.ring().clone())
            .ok_or_else(|| Error::Shape("determinant of an empty matrix".into()))?;
        determinant(&PolyRing { base: ring }, &self.to_rows())
    }

    /// Entrywise evaluation at a character.
    pub fn eval(&self, w: &CharacterPoint) -> Result<CycloMatrix> {
        let mut rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                row.push(self.get(i, j).eval(w)?);
            }
            rows.push(row);
        }
        Ok(CycloMatrix { rows })
    }

    /// Whether the off-diagonal `2g x 2g` blocks of a `4g x 4g` matrix vanish.
    pub fn is_block_diagonal(&self, g: usize) -> bool {
        if self.rows != 4 * g || self.cols != 4 * g {
            return false;
        }
        (0..4 * g).all(|i| {
            (0..4 * g).all(|j| (i < 2 * g) == (j < 2 * g) || self.get(i, j).is_zero())
        })
    }

    pub fn max_degree(&self) -> usize {
        self.entries
            .iter()
            .map(|e| e.degree_x().max(e.degree_y()))
            .max()
            .unwrap_or(0)
    }
}

impl Serialize for LambdaMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

/// A matrix of cyclotomic values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycloMatrix {
    pub rows: Vec<Vec<CycloElement>>,
}

impl CycloMatrix {
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloElement {
        &self.rows[i][j]
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.rows[i].iter().all(|e| e.is_zero())
    }

    pub fn eq_to_precision(&self, other: &CycloMatrix) -> bool {
        self.nrows() == other.nrows()
            && self.ncols() == other.ncols()
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| a.iter().zip(b).all(|(x, y)| x.eq_to_precision(y)))
    }
}

/// `C_{q,r} = diag(I_g, Phi_{p^r}(1 + v_q) I_g) C_q^{-1}`.
pub fn c_step(d: &DieudonneInput, q: Place, r: u32) -> Result<LambdaMatrix> {
    let inv = d.c(q).inverse()?;
    c_step_from_inverse(d, q, r, &inv)
}

fn c_step_from_inverse(d: &DieudonneInput, q: Place, r: u32, inv: &ZpMatrix) -> Result<LambdaMatrix> {
    d.check_shape(q)?;
    if r == 0 {
        return Err(Error::Invalid("level must be at least 1".into()));
    }
    let phi = IwasawaPoly::cyclo(d.ring.clone(), r, q.var())?;
    let g = d.g;
    Ok(LambdaMatrix::from_fn(2 * g, 2 * g, |i, j| {
        let c = inv.get(i, j);
        if i < g {
            IwasawaPoly::constant(d.ring.clone(), c.clone())
        } else {
            phi.scale(c)
        }
    }))
}

/// `H_{q,1}, ..., H_{q,r_max}` with `H_{q,r} = C_{q,r} C_{q,r-1} ... C_{q,1}`.
pub fn h_tower(d: &DieudonneInput, q: Place, r_max: u32) -> Result<Vec<LambdaMatrix>> {
    let inv = d.c(q).inverse()?;
    let mut out: Vec<LambdaMatrix> = Vec::with_capacity(r_max as usize);
    for r in 1..=r_max {
        let step = c_step_from_inverse(d, q, r, &inv)?;
        let h = match out.last() {
            None => step,
            Some(prev) => step.mul(prev)?,
        };
        out.push(h);
    }
    Ok(out)
}

pub fn h_matrix(d: &DieudonneInput, q: Place, r: u32) -> Result<LambdaMatrix> {
    if r == 0 {
        return Err(Error::Invalid("level must be at least 1".into()));
    }
    Ok(h_tower(d, q, r)?.pop().expect("nonempty tower"))
}

/// The block diagonal `4g x 4g` matrix `diag(H_p, H_pc)`.
pub fn h_block(hp: &LambdaMatrix, hpc: &LambdaMatrix) -> Result<LambdaMatrix> {
    let n = hp.rows;
    if hp.cols != n || hpc.rows != n || hpc.cols != n || n % 2 != 0 || n == 0 {
        return Err(Error::Shape(format!(
            "blocks must be equal even squares, got {}x{} and {}x{}",
            hp.rows, hp.cols, hpc.rows, hpc.cols
        )));
    }
    if !hp.entries.iter().all(|e| e.is_univariate_in(Var::X))
        || !hpc.entries.iter().all(|e| e.is_univariate_in(Var::Y))
    {
        return Err(Error::Shape("blocks must be in X and Y respectively".into()));
    }
    let ring = hp.entries[0].ring().clone();
    let mut m = LambdaMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, true) => hp.get(i, j).clone(),
        (false, false) => hpc.get(i - n, j - n).clone(),
        _ => IwasawaPoly::zero(ring.clone()),
    });
    m.layout = Some(BlockLayout { g: n / 2 });
    Ok(m)
}

/// Distinguished members of the index family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum IndexTag {
    I0,
    I1,
    /// `(I_{p,0}, I_{pc,1})`
    Mix01,
    /// `(I_{p,1}, I_{pc,0})`
    Mix10,
    /// `({1..2g}, {})`
    FullP,
    /// `({}, {1..2g})`
    FullPc,
}

impl fmt::Display for IndexTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IndexTag::I0 => "I0",
            IndexTag::I1 => "I1",
            IndexTag::Mix01 => "I_p0xI_pc1",
            IndexTag::Mix10 => "I_p1xI_pc0",
            IndexTag::FullP => "full_p",
            IndexTag::FullPc => "full_pc",
        })
    }
}

/// A pair `(J_p, J_pc)` of subsets of `{1, ..., 2g}` (1-based, ascending).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SignedIndex {
    pub g: usize,
    pub jp: Vec<usize>,
    pub jpc: Vec<usize>,
}

impl SignedIndex {
    pub fn new(g: usize, mut jp: Vec<usize>, mut jpc: Vec<usize>) -> Result<Self> {
        jp.sort_unstable();
        jpc.sort_unstable();
        for set in [&jp, &jpc] {
            if set.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::BadIndexSet(format!("repeated index in {set:?}")));
            }
            if set.iter().any(|&i| i == 0 || i > 2 * g) {
                return Err(Error::BadIndexSet(format!("{set:?} not within 1..={}", 2 * g)));
            }
        }
        if jp.len() + jpc.len() != 2 * g {
            return Err(Error::BadIndexSet(format!(
                "sizes {} + {} do not sum to {}",
                jp.len(),
                jpc.len(),
                2 * g
            )));
        }
        Ok(SignedIndex { g, jp, jpc })
    }

    pub fn tagged(g: usize, tag: IndexTag) -> Self {
        let low: Vec<usize> = (1..=g).collect();
        let high: Vec<usize> = (g + 1..=2 * g).collect();
        let all: Vec<usize> = (1..=2 * g).collect();
        let (jp, jpc) = match tag {
            IndexTag::I0 => (low.clone(), low),
            IndexTag::I1 => (high.clone(), high),
            IndexTag::Mix01 => (low, high),
            IndexTag::Mix10 => (high, low),
            IndexTag::FullP => (all, vec![]),
            IndexTag::FullPc => (vec![], all),
        };
        SignedIndex { g, jp, jpc }
    }

    pub fn tag(&self) -> Option<IndexTag> {
        [
            IndexTag::I0,
            IndexTag::I1,
            IndexTag::Mix01,
            IndexTag::Mix10,
            IndexTag::FullP,
            IndexTag::FullPc,
        ]
        .into_iter()
        .find(|&t| Self::tagged(self.g, t) == *self)
    }

    /// 0-based row (or column) positions in the `4g x 4g` block matrix.
    pub fn positions(&self) -> Vec<usize> {
        self.jp
            .iter()
            .map(|&i| i - 1)
            .chain(self.jpc.iter().map(|&i| 2 * self.g + i - 1))
            .collect()
    }

    /// Compact label, e.g. `{1,2}|{3,4}`.
    pub fn label(&self) -> String {
        let f = |v: &[usize]| {
            v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
        };
        format!("{{{}}}|{{{}}}", f(&self.jp), f(&self.jpc))
    }
}

impl fmt::Display for SignedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag() {
            Some(t) => write!(f, "{} {}", t, self.label()),
            None => f.write_str(&self.label()),
        }
    }
}

/// All pairs `(J_p, J_pc)` with `|J_p| + |J_pc| = 2g`, ordered by bitmask.
pub fn enumerate_index_sets(g: usize) -> Result<Vec<SignedIndex>> {
    if g == 0 || 4 * g > 62 {
        return Err(Error::Invalid(format!("dimension {g} out of range")));
    }
    let n = 2 * g;
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << (2 * n)) {
        if mask.count_ones() as usize != n {
            continue;
        }
        let jp = (0..n).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
        let jpc = (0..n).filter(|b| mask >> (n + b) & 1 == 1).map(|b| b + 1).collect();
        out.push(SignedIndex { g, jp, jpc });
    }
    Ok(out)
}

/// `(I, J)`-minor of a `4g x 4g` matrix: rows `I_p ∪ (2g + I_pc)` and columns
/// likewise from `J`, both ascending; plain determinant with no extra sign.
pub fn minor(h: &LambdaMatrix, i: &SignedIndex, j: &SignedIndex) -> Result<IwasawaPoly> {
    let g = i.g;
    if j.g != g || h.rows != 4 * g || h.cols != 4 * g {
        return Err(Error::BadIndexSet(format!(
            "index sets for g={}/{} on a {}x{} matrix",
            i.g, j.g, h.rows, h.cols
        )));
    }
    h.submatrix(&i.positions(), &j.positions()).determinant()
}

/// Minor of `diag(H_p, H_pc)` in factored form: `None` (the minor is zero)
/// unless `|I_p| = |J_p|`, otherwise `(det H_p[I_p, J_p], det H_pc[I_pc, J_pc])`
/// with empty determinants equal to 1.
pub fn block_minor_factors(
    hp: &LambdaMatrix,
    hpc: &LambdaMatrix,
    i: &SignedIndex,
    j: &SignedIndex,
) -> Result<Option<(IwasawaPoly, IwasawaPoly)>> {
    if i.jp.len() != j.jp.len() {
        return Ok(None);
    }
    let ring = hp.entries[0].ring().clone();
    let part = |h: &LambdaMatrix, rows: &[usize], cols: &[usize]| -> Result<IwasawaPoly> {
        if rows.is_empty() {
            return Ok(IwasawaPoly::one(ring.clone()));
        }
        let idx = |v: &[usize]| v.iter().map(|k| k - 1).collect::<Vec<_>>();
        h.submatrix(&idx(rows), &idx(cols)).determinant()
    };
    Ok(Some((part(hp, &i.jp, &j.jp)?, part(hpc, &i.jpc, &j.jpc)?)))
}

/// Factored block minor multiplied out; agrees with [`minor`] on `h_block`.
pub fn block_minor(
    hp: &LambdaMatrix,
    hpc: &LambdaMatrix,
    i: &SignedIndex,
    j: &SignedIndex,
) -> Result<IwasawaPoly> {
    match block_minor_factors(hp, hpc, i, j)? {
        None => Ok(IwasawaPoly::zero(hp.entries[0].ring().clone())),
        Some((a, b)) => a.mul(&b),
    }
}

/// `p^{-scale} * A` with `A` a polynomial matrix.
#[derive(Debug, Clone)]
pub struct MApproximant {
    pub n: u32,
    pub scale: u32,
    pub numerator: LambdaMatrix,
}

fn degree_in(q: Place, k: (usize, usize)) -> usize {
    match q.var() {
        Var::X => k.0,
        Var::Y => k.1,
    }
}

/// Per-degree stabilization of `M_{q,n+1} - M_{q,n}`.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceRow {
    pub n: u32,
    pub degree: usize,
    pub valuation: Valuation,
}

/// `M_{q,n} = C_phi^{n+1} H_{q,n}` for `n = 1..=n_max`, plus the valuation of
/// `coeff_j(M_{q,n+1} - M_{q,n})` for `n < n_max` and `j <= max_degree`.
pub fn m_approximants(
    d: &DieudonneInput,
    q: Place,
    n_max: u32,
    max_degree: usize,
) -> Result<(Vec<MApproximant>, Vec<ConvergenceRow>)> {
    if n_max == 0 {
        return Err(Error::Invalid("level must be at least 1".into()));
    }
    let a = LambdaMatrix::constant(&d.scaled_frobenius(q)?);
    let tower = h_tower(d, q, n_max)?;
    let mut apx = Vec::new();
    let mut a_pow = a.mul(&a)?;
    for (k, h) in tower.iter().enumerate() {
        let n = k as u32 + 1;
        apx.push(MApproximant {
            n,
            scale: n + 1,
            numerator: a_pow.mul(h)?,
        });
        a_pow = a_pow.mul(&a)?;
    }
    let p = BigUint::from(d.prime);
    let mut rows = Vec::new();
    for w in apx.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        // p^{-(n+2)} (A_{n+1} - p A_n)
        let diff = hi.numerator.sub(&lo.numerator.scale(&p))?;
        let coeffs: Vec<Vec<((usize, usize), BigUint)>> =
            diff.entries.iter().map(|e| e.x_terms()).collect();
        for j in 0..=max_degree {
            let mut best: Option<u32> = None;
            for terms in &coeffs {
                if let Some((_, c)) = terms.iter().find(|(k, _)| degree_in(q, *k) == j) {
                    if let Some(v) = d.ring.valuation(c) {
                        best = Some(best.map_or(v, |b| b.min(v)));
                    }
                }
            }
            let shift = hi.scale as i64;
            let valuation = match best {
                Some(v) => Valuation::exact_int(v as i64 - shift),
                None => Valuation::at_least_int(d.ring.digits() as i64 - shift),
            };
            rows.push(ConvergenceRow {
                n: lo.n,
                degree: j,
                valuation,
            });
        }
    }
    Ok((apx, rows))
}
