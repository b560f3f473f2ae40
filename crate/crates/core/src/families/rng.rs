//! Seeded sampling of matrices and parameters.
//!
//! The generator is ChaCha8 seeded through `seed_from_u64`; entries are drawn
//! uniformly from {−2,…,2}/{1,2}.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::matrix::{Matrix, Subspace};
use crate::scalar::{BaseInvolution, Rational, Ring, Scalar};

use super::space::MatrixClass;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rational(&mut self) -> Rational {
        let num = self.rng.random_range(-2i64..=2);
        let den = self.rng.random_range(1i64..=2);
        Rational::new(num, den)
    }

    pub fn matrix(&mut self, rows: usize, cols: usize, ring: Ring) -> Matrix {
        let data = (0..rows * cols * ring.width()).map(|_| self.rational()).collect();
        Matrix::from_flat(rows, cols, ring, data).expect("sized data")
    }

    fn nonzero_matrix(&mut self, rows: usize, cols: usize, ring: Ring) -> Matrix {
        loop {
            let m = self.matrix(rows, cols, ring);
            if !m.is_zero() || rows * cols == 0 {
                return m;
            }
        }
    }

    pub fn invertible(&mut self, n: usize, ring: Ring) -> Matrix {
        loop {
            let m = self.matrix(n, n, ring);
            if m.inverse().is_ok() {
                return m;
            }
        }
    }

    /// A random combination of the basis of `space`.
    pub fn in_space(&mut self, space: &Subspace) -> Matrix {
        let coeffs: Vec<Rational> = (0..space.dim()).map(|_| self.rational()).collect();
        space.combine(&coeffs).expect("coefficient count matches")
    }

    /// Sample `index` of a parameter sequence: 0 is the zero matrix, indices
    /// ≡ 1 mod 4 have minimal nonzero rank in the class, all others are
    /// generic elements.
    pub fn parameter(&mut self, class: &MatrixClass, ring: Ring, index: usize) -> Result<Matrix> {
        let (rows, cols) = class.shape();
        if index == 0 {
            return Ok(Matrix::zeros(rows, cols, ring));
        }
        if index % 4 == 1 {
            return self.low_rank(class, ring);
        }
        Ok(self.in_space(&class.subspace(ring)?))
    }

    /// Rank one where the class allows it, otherwise rank two.
    pub fn low_rank(&mut self, class: &MatrixClass, ring: Ring) -> Result<Matrix> {
        match *class {
            MatrixClass::Full { rows, cols } => {
                let u = self.nonzero_matrix(rows, 1, ring);
                let v = self.nonzero_matrix(1, cols, ring);
                u.matmul(&v)
            }
            MatrixClass::Fixed { n, delta, sign } => {
                let u = self.nonzero_matrix(n, 1, ring);
                let ud = u.dagger(delta)?;
                match middle_unit(ring, delta, sign) {
                    Some(c) => u.scale_right(&c)?.matmul(&ud),
                    None => loop {
                        let v = self.nonzero_matrix(n, 1, ring);
                        let m = u.matmul(&v.dagger(delta)?)?.try_sub(&v.matmul(&ud)?)?;
                        if !m.is_zero() || n < 2 {
                            return Ok(m);
                        }
                    },
                }
            }
        }
    }
}

/// A unit `c` with `δ(c) = sign·c`, so that `u·c·δ(u)ᵗ` lies in the class.
fn middle_unit(ring: Ring, delta: BaseInvolution, sign: i8) -> Option<Scalar> {
    if sign > 0 {
        return Some(Scalar::one(ring));
    }
    match delta {
        BaseInvolution::Identity => None,
        BaseInvolution::Conj | BaseInvolution::QConj => Scalar::unit(ring, 1).ok(),
        BaseInvolution::QSplit => Scalar::unit(ring, 2).ok(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank(m: &Matrix) -> usize {
        let rows: Vec<Matrix> = (0..m.rows()).map(|i| m.block(i, 0, 1, m.cols()).unwrap()).collect();
        Subspace::span(1, m.cols(), m.ring(), &rows).unwrap().dim()
    }

    #[test]
    fn deterministic() {
        let a = Sampler::new(7).matrix(3, 3, Ring::HQ);
        let b = Sampler::new(7).matrix(3, 3, Ring::HQ);
        assert_eq!(a, b);
        assert_ne!(a, Sampler::new(8).matrix(3, 3, Ring::HQ));
    }

    #[test]
    fn entries_in_range() {
        let mut s = Sampler::new(1);
        for _ in 0..200 {
            let r = s.rational();
            assert!(r.abs() <= Rational::from_int(2));
            assert!(r.is_integer() || r.denom() == 2.into());
        }
    }

    #[test]
    fn parameters_stay_in_class() {
        let classes = [
            (MatrixClass::full(2, 3), Ring::Q),
            (MatrixClass::sym(3), Ring::QI),
            (MatrixClass::asym(3), Ring::Q),
            (MatrixClass::herm(3, BaseInvolution::Conj), Ring::QI),
            (MatrixClass::aherm(2, BaseInvolution::Conj), Ring::QI),
            (MatrixClass::herm(2, BaseInvolution::QConj), Ring::HQ),
            (MatrixClass::aherm(2, BaseInvolution::QConj), Ring::HQ),
            (MatrixClass::aherm(2, BaseInvolution::QSplit), Ring::HQ),
        ];
        let mut s = Sampler::new(3);
        for (class, ring) in classes {
            for i in 0..8 {
                let a = s.parameter(&class, ring, i).unwrap();
                assert!(class.contains(&a).unwrap(), "{class} sample {i}");
                if i == 0 {
                    assert!(a.is_zero());
                }
                if i % 4 == 1 {
                    assert!(!a.is_zero());
                }
            }
        }
    }

    #[test]
    fn low_rank_samples() {
        let mut s = Sampler::new(5);
        assert_eq!(rank(&s.low_rank(&MatrixClass::full(3, 3), Ring::Q).unwrap()), 1);
        assert_eq!(rank(&s.low_rank(&MatrixClass::sym(3), Ring::Q).unwrap()), 1);
        assert_eq!(rank(&s.low_rank(&MatrixClass::asym(3), Ring::Q).unwrap()), 2);
    }
}
