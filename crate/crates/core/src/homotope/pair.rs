//! Symmetric pairs built from joint eigenspaces.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::involution::JointDecomposition;
use crate::matrix::{Matrix, Subspace};
use crate::scalar::Rational;

use super::bracket_a;

/// `g = h ⊕ m` with `h = piece(−t)` and `m = piece(s)` for `A ∈ piece(t)`.
///
/// When `s = −t` the space `m` is itself a Lie algebra and `h = m`.
#[derive(Debug, Clone)]
pub struct SymmetricPairRec {
    pub s: Vec<i8>,
    pub t: Vec<i8>,
    pub a: Matrix,
    pub g: Subspace,
    pub h: Subspace,
    pub m: Subspace,
    /// σ = −tᵢ·τᵢ for the first i with sᵢ = tᵢ; `None` for group type.
    pub sigma: Option<usize>,
    pub group_type: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairVerdict {
    pub hh_in_h: bool,
    pub hm_in_m: bool,
    pub mm_in_h: bool,
    pub sigma_split: bool,
    pub sigma_automorphism: bool,
}

impl PairVerdict {
    pub fn all(&self) -> bool {
        self.hh_in_h && self.hm_in_m && self.mm_in_h && self.sigma_split && self.sigma_automorphism
    }
}

fn negate(v: &[i8]) -> Vec<i8> {
    v.iter().map(|x| -x).collect()
}

pub fn symmetric_pair(dec: &JointDecomposition, s: &[i8], t: &[i8], a: &Matrix) -> Result<SymmetricPairRec> {
    let piece = |v: &[i8]| {
        dec.piece(v).cloned().ok_or_else(|| Error::InvalidSize(format!("no piece for signs {v:?}")))
    };
    if !piece(t)?.contains(a)? {
        return Err(Error::NotInPiece(format!("A is not in the piece {t:?}")));
    }
    let minus_t = negate(t);
    let h = piece(&minus_t)?;
    let m = piece(s)?;
    let group_type = s == minus_t.as_slice();
    let g = if group_type { m.clone() } else { h.sum(&m)? };
    let sigma = s.iter().zip(t).position(|(a, b)| a == b);
    Ok(SymmetricPairRec { s: s.to_vec(), t: t.to_vec(), a: a.clone(), g, h, m, sigma, group_type })
}

fn brackets_within(u: &Subspace, v: &Subspace, target: &Subspace, a: &Matrix) -> Result<bool> {
    let vb = v.basis_matrices();
    for x in u.basis_matrices() {
        for y in &vb {
            if !target.contains(&bracket_a(&x, y, a)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl SymmetricPairRec {
    pub fn apply_sigma(&self, dec: &JointDecomposition, x: &Matrix) -> Result<Option<Matrix>> {
        let Some(i) = self.sigma else { return Ok(None) };
        let tau = &dec.involutions()[i];
        Ok(Some(tau.apply(x)?.scale(&Rational::from_int(-(self.t[i] as i64)))))
    }

    /// All bracket inclusions and σ properties, exhaustively on basis pairs.
    /// For group type, `[m, m]_A ⊆ m` stands in for all three inclusions.
    pub fn verify(&self, dec: &JointDecomposition) -> Result<PairVerdict> {
        let a = &self.a;
        if self.group_type {
            let closed = brackets_within(&self.m, &self.m, &self.m, a)?;
            return Ok(PairVerdict {
                hh_in_h: closed,
                hm_in_m: closed,
                mm_in_h: closed,
                sigma_split: true,
                sigma_automorphism: true,
            });
        }
        let hh_in_h = brackets_within(&self.h, &self.h, &self.h, a)?;
        let hm_in_m = brackets_within(&self.h, &self.m, &self.m, a)?;
        let mm_in_h = brackets_within(&self.m, &self.m, &self.h, a)?;
        let mut sigma_split = true;
        for (space, sign) in [(&self.h, 1i64), (&self.m, -1)] {
            for b in space.basis_matrices() {
                let sb = self.apply_sigma(dec, &b)?.expect("σ exists off the antidiagonal");
                sigma_split &= sb == b.scale(&Rational::from_int(sign));
            }
        }
        let gb = self.g.basis_matrices();
        let images: Vec<Matrix> =
            gb.iter().map(|b| Ok(self.apply_sigma(dec, b)?.expect("σ"))).collect::<Result<_>>()?;
        let mut sigma_automorphism = true;
        'outer: for (x, sx) in gb.iter().zip(&images) {
            for (y, sy) in gb.iter().zip(&images) {
                let lhs = self.apply_sigma(dec, &bracket_a(x, y, a)?)?.expect("σ");
                if lhs != bracket_a(sx, sy, a)? {
                    sigma_automorphism = false;
                    break 'outer;
                }
            }
        }
        Ok(PairVerdict { hh_in_h, hm_in_m, mm_in_h, sigma_split, sigma_automorphism })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involution::{joint_eigenspaces, sign_vectors, MatrixInvolution};
    use crate::matrix::{block_constant, BlockConstant};
    use crate::scalar::{BaseInvolution, Ring};

    fn siegel(n: usize) -> JointDecomposition {
        let i = block_constant(BlockConstant::I(n), Ring::Q).unwrap();
        let f = block_constant(BlockConstant::F(n), Ring::Q).unwrap();
        joint_eigenspaces(&[
            MatrixInvolution::anti(BaseInvolution::Identity, i).unwrap(),
            MatrixInvolution::anti(BaseInvolution::Identity, f).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn all_siegel_cells() {
        let dec = siegel(1);
        let signs = sign_vectors(2);
        let mut pairs = 0;
        for t in &signs {
            let piece = dec.piece(t).unwrap();
            let a = piece.combine(&vec![Rational::ONE; piece.dim()]).unwrap();
            for s in &signs {
                let p = symmetric_pair(&dec, s, t, &a).unwrap();
                assert_eq!(p.group_type, *s == negate(t));
                assert!(p.verify(&dec).unwrap().all(), "cell s={s:?} t={t:?}");
                if !p.group_type {
                    assert_eq!(p.g.dim(), p.h.dim() + p.m.dim());
                    pairs += 1;
                }
            }
        }
        assert_eq!(pairs, 12);
    }

    #[test]
    fn rejects_parameter_outside_piece() {
        let dec = siegel(1);
        let a = Matrix::identity(2, Ring::Q);
        assert!(symmetric_pair(&dec, &[1, 1], &[1, 1], &a).is_ok());
        assert!(matches!(symmetric_pair(&dec, &[1, 1], &[-1, 1], &a), Err(Error::NotInPiece(_))));
    }
}
