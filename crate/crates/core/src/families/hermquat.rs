//! Left multiplication by `j` exchanges the standard and split Hermitian
//! quaternionic matrices.

use serde::Serialize;

use crate::error::Result;
use crate::matrix::{Matrix, Subspace};
use crate::scalar::{BaseInvolution, Ring, Scalar};

use super::space::MatrixClass;

#[derive(Debug, Clone, Serialize)]
pub struct HermQuatReport {
    pub n: usize,
    /// `dim Herm(n,ℍ)`, `dim Aherm(n,H̃)`, and whether `j·Herm(n,ℍ) = Aherm(n,H̃)`.
    pub herm_to_aherm_split: (usize, usize, bool),
    /// `dim Aherm(n,ℍ)`, `dim Herm(n,H̃)`, and whether `j·Aherm(n,ℍ) = Herm(n,H̃)`.
    pub aherm_to_herm_split: (usize, usize, bool),
}

impl HermQuatReport {
    pub fn pass(&self) -> bool {
        self.herm_to_aherm_split.2 && self.aherm_to_herm_split.2
    }
}

fn j_times(source: &Subspace, n: usize) -> Result<Subspace> {
    let j = Matrix::scalar_matrix(n, &Scalar::unit(Ring::HQ, 2)?);
    let images: Vec<Matrix> = source.basis_matrices().iter().map(|b| j.matmul(b)).collect::<Result<_>>()?;
    Subspace::span(n, n, Ring::HQ, &images)
}

fn maps_onto(from: MatrixClass, to: MatrixClass, n: usize) -> Result<(usize, usize, bool)> {
    let source = from.subspace(Ring::HQ)?;
    let target = to.subspace(Ring::HQ)?;
    let image = j_times(&source, n)?;
    Ok((source.dim(), target.dim(), image.dim() == source.dim() && image == target))
}

pub fn hermquat_report(n: usize) -> Result<HermQuatReport> {
    use BaseInvolution::{QConj, QSplit};
    Ok(HermQuatReport {
        n,
        herm_to_aherm_split: maps_onto(MatrixClass::herm(n, QConj), MatrixClass::aherm(n, QSplit), n)?,
        aherm_to_herm_split: maps_onto(MatrixClass::aherm(n, QConj), MatrixClass::herm(n, QSplit), n)?,
    })
}

/// Both identities, exactly; `false` for `n = 0`.
pub fn hermquat_check(n: usize) -> bool {
    n >= 1 && hermquat_report(n).map(|r| r.pass()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn quat(c: [i64; 4]) -> Matrix {
        Matrix::from_flat(1, 1, Ring::HQ, c.iter().map(|x| Rational::from_int(*x)).collect()).unwrap()
    }

    #[test]
    fn n1_by_hand() {
        let aherm_split = MatrixClass::aherm(1, BaseInvolution::QSplit).subspace(Ring::HQ).unwrap();
        assert_eq!(aherm_split, Subspace::span(1, 1, Ring::HQ, &[quat([0, 0, 1, 0])]).unwrap());
        let herm_split = MatrixClass::herm(1, BaseInvolution::QSplit).subspace(Ring::HQ).unwrap();
        let by_table = [quat([0, 0, 0, 1]), quat([-1, 0, 0, 0]), quat([0, -1, 0, 0])];
        assert_eq!(herm_split, Subspace::span(1, 1, Ring::HQ, &by_table).unwrap());
        let r = hermquat_report(1).unwrap();
        assert_eq!(r.herm_to_aherm_split, (1, 1, true));
        assert_eq!(r.aherm_to_herm_split, (3, 3, true));
    }

    #[test]
    fn n2_dims() {
        let r = hermquat_report(2).unwrap();
        assert_eq!(r.herm_to_aherm_split, (6, 6, true));
        assert_eq!(r.aherm_to_herm_split, (10, 10, true));
        assert!(hermquat_check(3));
        assert!(!hermquat_check(0));
    }
}
