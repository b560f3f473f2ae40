//! Homotope brackets, triple products, symmetric pairs and related maps.

mod imbedding;
mod kernel;
mod pair;
mod product;
mod system;

pub use imbedding::{standard_imbedding, GElem, StandardImbedding};
pub use pair::{symmetric_pair, PairVerdict, SymmetricPairRec};
pub use product::{t_product, AlphaMap, Associative, Core, Negated, SharedProduct, TripleProduct};
pub use system::{check_closure, Axiom, AxiomReport, LtsReport, TripleSystem, Witness};

use crate::error::{Error, Result};
use crate::involution::MatrixInvolution;
use crate::matrix::{Matrix, SparseVec, Subspace};
use crate::scalar::Rational;

/// `[X,Y]_A = XAY − YAX`.
pub fn bracket_a(x: &Matrix, y: &Matrix, a: &Matrix) -> Result<Matrix> {
    x.mul3(a, y)?.try_sub(&y.mul3(a, x)?)
}

/// `[X,Y,Z]_A = (XAYAZ + ZAYAX) − (YAXAZ + ZAXAY)`.
pub fn triple_a(x: &Matrix, y: &Matrix, z: &Matrix, a: &Matrix) -> Result<Matrix> {
    let (xa, ya, za) = (x.matmul(a)?, y.matmul(a)?, z.matmul(a)?);
    let p = xa.mul3(&ya, z)?.try_add(&za.mul3(&ya, x)?)?;
    let q = ya.mul3(&xa, z)?.try_add(&za.mul3(&xa, y)?)?;
    p.try_sub(&q)
}

/// `[X,Y,Z]_α = T(X, αY, Z) − T(Y, αX, Z)`.
pub fn triple_alpha(x: &Matrix, y: &Matrix, z: &Matrix, alpha: &AlphaMap) -> Result<Matrix> {
    alpha.triple(x, y, z)
}

/// A parameter together with the space it was declared to lie in.
#[derive(Debug, Clone, PartialEq)]
pub struct HomotopeParameter {
    a: Matrix,
    class: String,
}

impl HomotopeParameter {
    pub fn arbitrary(a: Matrix) -> Self {
        HomotopeParameter { a, class: "arbitrary".into() }
    }

    pub fn in_space(a: Matrix, space: &Subspace, class: &str) -> Result<Self> {
        if !space.contains(&a)? {
            return Err(Error::NotInPiece(format!("parameter is not in {class}")));
        }
        Ok(HomotopeParameter { a, class: class.into() })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }

    pub fn class(&self) -> &str {
        &self.class
    }
}

fn bracket_coords(space: &Subspace, basis: &[Matrix], a: &Matrix) -> Result<Option<Vec<SparseVec>>> {
    let d = basis.len();
    let mut out = Vec::with_capacity(d * d);
    for x in basis {
        for y in basis {
            match space.coords_sparse(bracket_a(x, y, a)?.data()) {
                Some(c) => out.push(c),
                None => return Ok(None),
            }
        }
    }
    Ok(Some(out))
}

/// Jacobi identity for `[·,·]_A` on all basis triples of a bracket-closed space.
pub fn check_jacobi(space: &Subspace, a: &Matrix) -> Result<AxiomReport> {
    let basis = space.basis_matrices();
    let d = basis.len();
    let c = bracket_coords(space, &basis, a)?.ok_or_else(|| Error::NotClosed(Vec::new()))?;
    let mut acc = vec![Rational::ZERO; d];
    let add_nested = |acc: &mut Vec<Rational>, x: usize, y: usize, z: usize| {
        for (l, v) in &c[x * d + y] {
            for (m, w) in &c[l * d + z] {
                acc[*m] += &(v * w);
            }
        }
    };
    for x in 0..d {
        for y in x + 1..d {
            for z in y + 1..d {
                add_nested(&mut acc, x, y, z);
                add_nested(&mut acc, y, z, x);
                add_nested(&mut acc, z, x, y);
                if acc.iter().any(|v| !v.is_zero()) {
                    return Ok(AxiomReport::failed(Axiom::Jacobi, vec![x, y, z], &basis));
                }
            }
        }
    }
    Ok(AxiomReport::passed(Axiom::Jacobi))
}

/// X ↦ S·X·T.
pub fn hom_sxt(s: &Matrix, t: &Matrix, x: &Matrix) -> Result<Matrix> {
    s.mul3(x, t)
}

/// `[SXT, SYT]_A = S·[X,Y]_{TAS}·T`.
pub fn check_hom_sxt(s: &Matrix, t: &Matrix, a: &Matrix, x: &Matrix, y: &Matrix) -> Result<bool> {
    let lhs = bracket_a(&hom_sxt(s, t, x)?, &hom_sxt(s, t, y)?, a)?;
    let tas = t.mul3(a, s)?;
    let rhs = hom_sxt(s, t, &bracket_a(x, y, &tas)?)?;
    Ok(lhs == rhs)
}

/// For `A³ = A`, whether X ↦ AXA is an endomorphism of `[·,·]_A` on the
/// elementary basis of the square matrices.
pub fn check_endomorphism(a: &Matrix) -> Result<bool> {
    if a.mul3(a, a)? != *a {
        return Err(Error::Unsupported("endomorphism check needs A³ = A".into()));
    }
    let basis = Matrix::elementary_basis(a.cols(), a.rows(), a.ring());
    for x in &basis {
        for y in &basis {
            if !check_hom_sxt(a, a, a, x, y)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `(g, A) ↦ g·A·τ(g)` and the intertwiner `X ↦ τ(g)·X·g`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaAction {
    pub a_prime: Matrix,
    pub left: Matrix,
    pub right: Matrix,
}

impl GammaAction {
    pub fn psi(&self, x: &Matrix) -> Result<Matrix> {
        self.left.mul3(x, &self.right)
    }

    /// Whether ψ is an isomorphism from the `A'`-system to the `A`-system on `piece`.
    pub fn verify(&self, a: &Matrix, piece: &Subspace) -> Result<bool> {
        let from = TripleSystem::with_param(piece.clone(), &self.a_prime)?;
        let to = TripleSystem::with_param(piece.clone(), a)?;
        from.intertwines(&to, |x| self.psi(x))
    }
}

pub fn gamma_act(g: &Matrix, a: &Matrix, tau: &MatrixInvolution, phi: &MatrixInvolution) -> Result<GammaAction> {
    g.inverse()?;
    if phi.apply(g)? != *g {
        return Err(Error::NotInPiece("g is not fixed by φ".into()));
    }
    let tg = tau.apply(g)?;
    Ok(GammaAction { a_prime: g.mul3(a, &tg)?, left: tg, right: g.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{BaseInvolution, Ring, Scalar};

    fn m(v: &[i64]) -> Matrix {
        Matrix::from_ints(2, 2, Ring::Q, v).unwrap()
    }

    fn e(i: usize, j: usize) -> Matrix {
        Matrix::elementary(2, 2, Ring::Q, i, j, 0)
    }

    #[test]
    fn bracket_examples() {
        let x = m(&[1, 2, 3, 4]);
        let y = m(&[0, 1, -1, 2]);
        let one = Matrix::identity(2, Ring::Q);
        let comm = x.matmul(&y).unwrap().try_sub(&y.matmul(&x).unwrap()).unwrap();
        assert_eq!(bracket_a(&x, &y, &one).unwrap(), comm);
        assert!(bracket_a(&x, &y, &Matrix::zeros(2, 2, Ring::Q)).unwrap().is_zero());
        assert_eq!(bracket_a(&e(0, 0), &e(1, 0), &e(0, 1)).unwrap(), e(0, 0));
    }

    #[test]
    fn triple_examples() {
        let one = Matrix::identity(2, Ring::Q);
        let t = triple_a(&e(0, 1), &e(1, 0), &e(0, 1), &one).unwrap();
        let xy = bracket_a(&e(0, 1), &e(1, 0), &one).unwrap();
        assert_eq!(t, bracket_a(&xy, &e(0, 1), &one).unwrap());
        assert_eq!(t, e(0, 1).scale(&Rational::from_int(2)));
        let a = m(&[1, -1, 2, 0]);
        let (x, y, z) = (m(&[1, 0, 2, 1]), m(&[0, 3, 1, 1]), m(&[2, 1, 0, -1]));
        assert_eq!(triple_a(&x, &y, &z, &a).unwrap(), triple_alpha(&x, &y, &z, &AlphaMap::param(&a)).unwrap());
        let two_a = a.scale(&Rational::from_int(2));
        assert_eq!(
            triple_a(&x, &y, &z, &two_a).unwrap(),
            triple_a(&x, &y, &z, &a).unwrap().scale(&Rational::from_int(4))
        );
    }

    #[test]
    fn jacobi_full_spaces() {
        let a = m(&[0, 1, 1, 1]);
        assert!(check_jacobi(&Subspace::full(2, 2, Ring::Q), &a).unwrap().pass);
        let h = Matrix::from_flat(1, 1, Ring::HQ, [1, 2, 0, -1].map(Rational::from_int).to_vec()).unwrap();
        assert!(check_jacobi(&Subspace::full(1, 1, Ring::HQ), &h).unwrap().pass);
    }

    #[test]
    fn sxt_homomorphism() {
        let one = Matrix::identity(2, Ring::Q);
        let x = m(&[1, 2, 3, 4]);
        assert_eq!(hom_sxt(&one, &one, &x).unwrap(), x);
        let (s, t, a) = (m(&[1, 1, 0, 2]), m(&[0, 1, 1, -1]), m(&[2, 0, 1, 1]));
        assert!(check_hom_sxt(&s, &t, &a, &x, &m(&[0, 1, 5, 1])).unwrap());
        assert!(check_endomorphism(&e(0, 0)).unwrap());
        assert!(check_endomorphism(&m(&[1, 1, 1, 1])).is_err());
    }

    #[test]
    fn gamma_scaling() {
        let tau = MatrixInvolution::standard(2, Ring::Q, BaseInvolution::Identity).unwrap();
        let phi = MatrixInvolution::conjugation(Matrix::identity(2, Ring::Q)).unwrap();
        let a = m(&[1, 2, 2, 0]);
        let two = Matrix::scalar_matrix(2, &Scalar::int(Ring::Q, 2));
        let act = gamma_act(&two, &a, &tau, &phi).unwrap();
        assert_eq!(act.a_prime, a.scale(&Rational::from_int(4)));
        assert_eq!(act.psi(&e(0, 1)).unwrap(), e(0, 1).scale(&Rational::from_int(4)));
        let sym = tau.eigenspace(1).unwrap();
        assert!(act.verify(&a, &sym).unwrap());
        let id = gamma_act(&Matrix::identity(2, Ring::Q), &a, &tau, &phi).unwrap();
        assert_eq!(id.a_prime, a);
        assert!(gamma_act(&e(0, 0), &a, &tau, &phi).is_err());
    }

    #[test]
    fn parameter_membership() {
        let tau = MatrixInvolution::standard(2, Ring::Q, BaseInvolution::Identity).unwrap();
        let sym = tau.eigenspace(1).unwrap();
        assert!(HomotopeParameter::in_space(m(&[1, 2, 2, 0]), &sym, "Sym").is_ok());
        assert!(matches!(
            HomotopeParameter::in_space(m(&[1, 2, 3, 0]), &sym, "Sym"),
            Err(Error::NotInPiece(_))
        ));
    }
}
