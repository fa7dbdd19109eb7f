//! Seeded random matrices over `Z/p^N` with unit determinant.

use std::sync::Arc;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::ZpMatrix;
use crate::padic::ResidueRing;

const MAX_ATTEMPTS: usize = 10_000;

/// Deterministic generator; the stream depends only on the seed.
pub struct MatrixGen {
    ring: Arc<ResidueRing>,
    rng: ChaCha8Rng,
}

impl MatrixGen {
    pub fn new(ring: Arc<ResidueRing>, seed: u64) -> Self {
        MatrixGen {
            ring,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform element of `[0, p^N)`, drawn digit by digit.
    pub fn element(&mut self) -> BigUint {
        let p = self.ring.prime();
        let mut acc = BigUint::from(0u32);
        for _ in 0..self.ring.digits() {
            acc = acc * p + self.rng.gen_range(0..p);
        }
        acc
    }

    pub fn unit(&mut self) -> BigUint {
        loop {
            let x = self.element();
            if self.ring.is_unit(&x) {
                return x;
            }
        }
    }

    pub fn matrix(&mut self, n: usize) -> ZpMatrix {
        let rows = (0..n).map(|_| (0..n).map(|_| self.element()).collect()).collect();
        ZpMatrix::from_rows(self.ring.clone(), rows).expect("square rows")
    }

    /// Rejection-sample an `n x n` matrix with unit determinant.
    pub fn unit_matrix(&mut self, n: usize) -> Result<ZpMatrix> {
        for _ in 0..MAX_ATTEMPTS {
            let m = self.matrix(n);
            if self.ring.is_unit(&m.determinant()?) {
                return Ok(m);
            }
        }
        Err(Error::Invalid(format!("no unit-determinant {n}x{n} matrix after {MAX_ATTEMPTS} draws")))
    }

    /// `[[0, B1], [B2, 0]]` with `B1, B2` in `GL_g`.
    pub fn block_anti_diagonal(&mut self, g: usize) -> Result<ZpMatrix> {
        let b1 = self.unit_matrix(g)?;
        let b2 = self.unit_matrix(g)?;
        Ok(assemble(&self.ring, g, None, Some(&b1), Some(&b2), None))
    }

    /// `diag(B11, B22)` with both blocks in `GL_g`.
    pub fn block_diagonal(&mut self, g: usize) -> Result<ZpMatrix> {
        let a = self.unit_matrix(g)?;
        let d = self.unit_matrix(g)?;
        Ok(assemble(&self.ring, g, Some(&a), None, None, Some(&d)))
    }
}

fn assemble(
    ring: &Arc<ResidueRing>,
    g: usize,
    tl: Option<&ZpMatrix>,
    tr: Option<&ZpMatrix>,
    bl: Option<&ZpMatrix>,
    br: Option<&ZpMatrix>,
) -> ZpMatrix {
    let mut m = ZpMatrix::zeros(ring.clone(), 2 * g, 2 * g);
    for (blk, r0, c0) in [(tl, 0, 0), (tr, 0, g), (bl, g, 0), (br, g, g)] {
        if let Some(b) = blk {
            for i in 0..g {
                for j in 0..g {
                    m.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
        }
    }
    m
}

/// A pair `(C_p, C_pc)` of `2g x 2g` unit-determinant matrices, block
/// anti-diagonal when `block_anti_diagonal` is set.
pub fn gen_test_matrices(
    ring: Arc<ResidueRing>,
    g: usize,
    seed: u64,
    block_anti_diagonal: bool,
) -> Result<(ZpMatrix, ZpMatrix)> {
    if g == 0 {
        return Err(Error::Shape("g must be positive".into()));
    }
    let mut gen = MatrixGen::new(ring, seed);
    if block_anti_diagonal {
        Ok((gen.block_anti_diagonal(g)?, gen.block_anti_diagonal(g)?))
    } else {
        Ok((gen.unit_matrix(2 * g)?, gen.unit_matrix(2 * g)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_unit() {
        let ring = ResidueRing::shared(3, 64).unwrap();
        let a = gen_test_matrices(ring.clone(), 2, 7, false).unwrap();
        let b = gen_test_matrices(ring.clone(), 2, 7, false).unwrap();
        assert_eq!(a, b);
        let c = gen_test_matrices(ring.clone(), 2, 8, false).unwrap();
        assert_ne!(a, c);
        assert!(ring.is_unit(&a.0.determinant().unwrap()));
        assert!(ring.is_unit(&a.1.determinant().unwrap()));
    }

    #[test]
    fn block_flag_zeroes_diagonal_blocks() {
        let ring = ResidueRing::shared(5, 64).unwrap();
        for seed in 0..5 {
            let (cp, cpc) = gen_test_matrices(ring.clone(), 2, seed, true).unwrap();
            for m in [&cp, &cpc] {
                assert!(m.is_block_anti_diagonal(2));
                assert!(m.block(0, 0, 2, 2).is_zero() && m.block(2, 2, 2, 2).is_zero());
                assert!(ring.is_unit(&m.determinant().unwrap()));
            }
        }
        let mut g = MatrixGen::new(ring, 1);
        assert!(g.block_diagonal(2).unwrap().is_block_diagonal(2));
    }

    #[test]
    fn elements_in_range() {
        let ring = ResidueRing::shared(3, 5).unwrap();
        let mut g = MatrixGen::new(ring.clone(), 3);
        for _ in 0..200 {
            assert!(&g.element() < ring.modulus());
        }
    }
}
