//! Real and complex realizations of complex and quaternionic matrices.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Rational, Ring};

fn expect_ring(x: &Matrix, ring: Ring, what: &str) -> Result<()> {
    if x.ring() != ring {
        return Err(Error::RingMismatch(format!("{what} expects a {ring} matrix, got {}", x.ring())));
    }
    Ok(())
}

/// ι(a + ib) = [[a, b], [−b, a]] from `M(n,m;ℚ(i))` into `M(2n,2m;ℚ)`.
pub fn iota(z: &Matrix) -> Result<Matrix> {
    expect_ring(z, Ring::QI, "ι")?;
    let (a, b) = (z.component(0)?, z.component(1)?);
    Matrix::from_blocks(&a, &b, &b.neg(), &a)
}

/// κ(a + bi) = a + bj from `M(n,m;ℚ(i))` into `M(n,m;ℍ)`.
pub fn kappa(z: &Matrix) -> Result<Matrix> {
    expect_ring(z, Ring::QI, "κ")?;
    let mut data = Vec::with_capacity(z.flat_len() * 2);
    for e in z.data().chunks(2) {
        data.extend([e[0].clone(), Rational::ZERO, e[1].clone(), Rational::ZERO]);
    }
    Matrix::from_flat(z.rows(), z.cols(), Ring::HQ, data)
}

/// ψ(Z + Wj) = [[Z, W], [−W̄, Z̄]] from `M(n,m;ℍ)` into `M(2n,2m;ℚ(i))`.
pub fn psi(q: &Matrix) -> Result<Matrix> {
    expect_ring(q, Ring::HQ, "ψ")?;
    let part = |c0: usize, c1: usize, sign0: i64, sign1: i64| {
        let data = q
            .data()
            .chunks(4)
            .flat_map(|e| [&e[c0] * &Rational::from_int(sign0), &e[c1] * &Rational::from_int(sign1)])
            .collect();
        Matrix::from_flat(q.rows(), q.cols(), Ring::QI, data)
    };
    let z = part(0, 1, 1, 1)?;
    let w = part(2, 3, 1, 1)?;
    let minus_w_bar = part(2, 3, -1, 1)?;
    let z_bar = part(0, 1, 1, -1)?;
    Matrix::from_blocks(&z, &w, &minus_w_bar, &z_bar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::BaseInvolution;

    fn qi(r: usize, c: usize, v: &[i64]) -> Matrix {
        Matrix::from_flat(r, c, Ring::QI, v.iter().map(|x| Rational::from_int(*x)).collect()).unwrap()
    }

    fn hq(r: usize, c: usize, v: &[i64]) -> Matrix {
        Matrix::from_flat(r, c, Ring::HQ, v.iter().map(|x| Rational::from_int(*x)).collect()).unwrap()
    }

    #[test]
    fn iota_is_multiplicative_and_intertwines_adjoint() {
        let z = qi(2, 2, &[1, 2, 0, -1, 3, 0, 1, 1]);
        let w = qi(2, 2, &[0, 1, 2, 2, -1, 0, 1, -2]);
        assert_eq!(iota(&z.matmul(&w).unwrap()).unwrap(), iota(&z).unwrap().matmul(&iota(&w).unwrap()).unwrap());
        assert_eq!(iota(&z.dagger(BaseInvolution::Conj).unwrap()).unwrap(), iota(&z).unwrap().transpose());
        assert_eq!(iota(&qi(1, 1, &[0, 1])).unwrap(), Matrix::from_ints(2, 2, Ring::Q, &[0, 1, -1, 0]).unwrap());
    }

    #[test]
    fn kappa_is_multiplicative() {
        let z = qi(2, 2, &[1, 2, 0, -1, 3, 0, 1, 1]);
        let w = qi(2, 2, &[0, 1, 2, 2, -1, 0, 1, -2]);
        assert_eq!(kappa(&z.matmul(&w).unwrap()).unwrap(), kappa(&z).unwrap().matmul(&kappa(&w).unwrap()).unwrap());
        assert_eq!(kappa(&qi(1, 1, &[3, 5])).unwrap(), hq(1, 1, &[3, 0, 5, 0]));
    }

    #[test]
    fn psi_is_multiplicative_and_intertwines_adjoint() {
        let p = hq(2, 2, &[1, 2, 0, -1, 3, 0, 1, 1, 0, 0, 2, 1, -1, 1, 0, 2]);
        let q = hq(2, 2, &[0, 1, 2, 2, -1, 0, 1, -2, 1, 1, 1, 1, 2, 0, 0, -1]);
        assert_eq!(psi(&p.matmul(&q).unwrap()).unwrap(), psi(&p).unwrap().matmul(&psi(&q).unwrap()).unwrap());
        assert_eq!(
            psi(&p.dagger(BaseInvolution::QConj).unwrap()).unwrap(),
            psi(&p).unwrap().dagger(BaseInvolution::Conj).unwrap()
        );
        // ψ(j) = [[0, 1], [−1, 0]]
        assert_eq!(psi(&hq(1, 1, &[0, 0, 1, 0])).unwrap(), qi(2, 2, &[0, 0, 1, 0, -1, 0, 0, 0]));
    }

    #[test]
    fn ring_checks() {
        assert!(iota(&Matrix::identity(1, Ring::Q)).is_err());
        assert!(psi(&Matrix::identity(1, Ring::QI)).is_err());
    }
}
