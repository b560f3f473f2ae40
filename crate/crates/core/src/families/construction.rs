//! The four two-involution constructions and their model identifications.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::involution::{joint_eigenspaces, sign_label, JointDecomposition, MatrixInvolution};
use crate::matrix::{block_constant, BlockConstant, Echelon, Matrix, Subspace};
use crate::scalar::{BaseInvolution, Ring, Scalar};

use super::embed::{iota, kappa, psi};
use super::space::MatrixClass;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstructionKind {
    Proj,
    Siegel,
    Quat1,
    Quat2,
}

impl ConstructionKind {
    pub const ALL: [ConstructionKind; 4] =
        [ConstructionKind::Proj, ConstructionKind::Siegel, ConstructionKind::Quat1, ConstructionKind::Quat2];

    pub fn name(self) -> &'static str {
        match self {
            ConstructionKind::Proj => "proj",
            ConstructionKind::Siegel => "siegel",
            ConstructionKind::Quat1 => "quat1",
            ConstructionKind::Quat2 => "quat2",
        }
    }

    pub fn default_ring(self) -> Ring {
        match self {
            ConstructionKind::Proj | ConstructionKind::Siegel => Ring::Q,
            ConstructionKind::Quat1 => Ring::HQ,
            ConstructionKind::Quat2 => Ring::QI,
        }
    }

    pub fn allowed_rings(self) -> &'static [Ring] {
        match self {
            ConstructionKind::Proj => &[Ring::Q, Ring::QI],
            ConstructionKind::Siegel => &[Ring::Q],
            ConstructionKind::Quat1 => &[Ring::HQ],
            ConstructionKind::Quat2 => &[Ring::QI],
        }
    }

    /// Whether the construction takes `(p, q)` rather than a single `n`.
    pub fn is_rectangular(self) -> bool {
        self == ConstructionKind::Proj
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstructionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ConstructionKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownLabel(s.into()))
    }
}

type LinearMap = Arc<dyn Fn(&Matrix) -> Result<Matrix> + Send + Sync>;

/// A ℚ-linear map from a named model space onto one joint eigenspace.
#[derive(Clone)]
pub struct ModelMap {
    pub signs: Vec<i8>,
    pub model: String,
    pub domain: Subspace,
    map: LinearMap,
}

impl fmt::Debug for ModelMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModelMap").field("signs", &self.signs).field("model", &self.model).finish()
    }
}

impl ModelMap {
    fn new(signs: [i8; 2], model: String, domain: Subspace, map: LinearMap) -> Self {
        ModelMap { signs: signs.to_vec(), model, domain, map }
    }

    pub fn apply(&self, x: &Matrix) -> Result<Matrix> {
        (self.map)(x)
    }

    /// Whether the images of a basis of the domain form a basis of `piece`.
    pub fn is_bijection_onto(&self, piece: &Subspace) -> Result<bool> {
        if self.domain.dim() != piece.dim() {
            return Ok(false);
        }
        let mut e = Echelon::new(piece.ambient_dim());
        for b in self.domain.basis_matrices() {
            let im = self.apply(&b)?;
            if im.shape() != (piece.ambient().0, piece.ambient().1) || !piece.contains(&im)? {
                return Ok(false);
            }
            if !e.insert_dense(im.into_data()) {
                return Ok(false);
            }
        }
        Ok(e.rank() == piece.dim())
    }
}

/// An algebra with two commuting anti-involutions, its joint eigenspaces and
/// model identifications of the four pieces.
#[derive(Debug, Clone)]
pub struct Construction {
    pub kind: ConstructionKind,
    pub sizes: Vec<usize>,
    pub ring: Ring,
    pub decomposition: JointDecomposition,
    /// The automorphism τ∘τ̃.
    pub phi: MatrixInvolution,
    pub models: Vec<ModelMap>,
}

fn scalar_unit(ring: Ring, u: usize) -> Result<Scalar> {
    Scalar::unit(ring, u)
}

fn left(m: Matrix) -> impl Fn(&Matrix) -> Result<Matrix> {
    move |x: &Matrix| m.matmul(x)
}

pub fn instantiate(kind: ConstructionKind, sizes: &[usize], ring: Option<Ring>) -> Result<Construction> {
    let ring = ring.unwrap_or(kind.default_ring());
    if !kind.allowed_rings().contains(&ring) {
        return Err(Error::Unsupported(format!("{kind} over {ring}")));
    }
    let expected = if kind.is_rectangular() { 2 } else { 1 };
    if sizes.len() != expected || sizes.contains(&0) {
        return Err(Error::InvalidSize(format!("{kind} needs {expected} positive size(s), got {sizes:?}")));
    }
    let (taus, models) = match kind {
        ConstructionKind::Proj => proj(sizes[0], sizes[1], ring)?,
        ConstructionKind::Siegel => siegel(sizes[0])?,
        ConstructionKind::Quat1 => quat1(sizes[0])?,
        ConstructionKind::Quat2 => quat2(sizes[0])?,
    };
    let decomposition = joint_eigenspaces(&taus)?;
    let phi = taus[0].compose(&taus[1])?;
    let c = Construction { kind, sizes: sizes.to_vec(), ring, decomposition, phi, models };
    for m in &c.models {
        let piece = c.piece(&m.signs)?;
        if !m.is_bijection_onto(piece)? {
            return Err(Error::NotInPiece(format!("model {} is not onto piece {}", m.model, sign_label(&m.signs))));
        }
    }
    Ok(c)
}

type Parts = (Vec<MatrixInvolution>, Vec<ModelMap>);

/// τ(X) = Xᵗ and τ̃(X) = I_{p,q}·Xᵗ·I_{p,q} on `M(p+q; 𝕂)`.
fn proj(p: usize, q: usize, ring: Ring) -> Result<Parts> {
    let n = p + q;
    let ipq = block_constant(BlockConstant::Ipq(p, q), ring)?;
    let tau = MatrixInvolution::standard(n, ring, BaseInvolution::Identity)?;
    let tau2 = MatrixInvolution::anti(BaseInvolution::Identity, ipq)?;
    let pair_space = |sign: i8| -> Result<Subspace> {
        let a = MatrixClass::Fixed { n: p, delta: BaseInvolution::Identity, sign };
        let b = MatrixClass::Fixed { n: q, delta: BaseInvolution::Identity, sign };
        let mut mats = Vec::new();
        for x in a.subspace(ring)?.basis_matrices() {
            mats.push(Matrix::block_diag(&x, &Matrix::zeros(q, q, ring))?);
        }
        for y in b.subspace(ring)?.basis_matrices() {
            mats.push(Matrix::block_diag(&Matrix::zeros(p, p, ring), &y)?);
        }
        Subspace::span(n, n, ring, &mats)
    };
    let identity: LinearMap = Arc::new(|x: &Matrix| Ok(x.clone()));
    let off_sym: LinearMap = Arc::new(move |x: &Matrix| {
        let y = x.block(0, p, p, q)?;
        let mut out = Matrix::zeros(n, n, x.ring());
        out.set_block(0, p, &y)?;
        out.set_block(p, 0, &y.transpose())?;
        Ok(out)
    });
    let off_skew: LinearMap = Arc::new(move |x: &Matrix| {
        let y = x.block(p, 0, q, p)?;
        let mut out = Matrix::zeros(n, n, x.ring());
        out.set_block(0, p, &y.transpose().neg())?;
        out.set_block(p, 0, &y)?;
        Ok(out)
    });
    let block_space = |r0: usize, c0: usize, rows: usize, cols: usize| -> Result<Subspace> {
        let mats: Vec<Matrix> = Matrix::elementary_basis(rows, cols, ring)
            .into_iter()
            .map(|e| {
                let mut out = Matrix::zeros(n, n, ring);
                out.set_block(r0, c0, &e)?;
                Ok(out)
            })
            .collect::<Result<_>>()?;
        Subspace::span(n, n, ring, &mats)
    };
    let models = vec![
        ModelMap::new([1, 1], format!("Sym({p})+Sym({q})"), pair_space(1)?, identity.clone()),
        ModelMap::new([-1, 1], format!("M({q},{p})"), block_space(p, 0, q, p)?, off_skew),
        ModelMap::new([1, -1], format!("M({p},{q})"), block_space(0, p, p, q)?, off_sym),
        ModelMap::new([-1, -1], format!("Asym({p})+Asym({q})"), pair_space(-1)?, identity),
    ];
    Ok((vec![tau, tau2], models))
}

/// τ_I(X) = I·Xᵗ·I and τ_F(X) = F·Xᵗ·F on `M(2n; ℚ)`, with complex
/// matrices realized through ι.
fn siegel(n: usize) -> Result<Parts> {
    let i = block_constant(BlockConstant::I(n), Ring::Q)?;
    let f = block_constant(BlockConstant::F(n), Ring::Q)?;
    let tau_i = MatrixInvolution::anti(BaseInvolution::Identity, i.clone())?;
    let tau_f = MatrixInvolution::anti(BaseInvolution::Identity, f.clone())?;
    let sym = MatrixClass::sym(n).subspace(Ring::QI)?;
    let asym = MatrixClass::asym(n).subspace(Ring::QI)?;
    let herm = MatrixClass::herm(n, BaseInvolution::Conj).subspace(Ring::QI)?;
    let times = |m: Matrix| -> LinearMap { Arc::new(move |z: &Matrix| m.matmul(&iota(z)?)) };
    let models = vec![
        ModelMap::new([1, 1], format!("Sym({n},C)"), sym, Arc::new(iota)),
        ModelMap::new([-1, 1], format!("F*Herm({n},C)"), herm.clone(), times(f)),
        ModelMap::new([1, -1], format!("I*Herm({n},C)"), herm, times(i)),
        ModelMap::new([-1, -1], format!("Asym({n},C)"), asym, Arc::new(iota)),
    ];
    Ok((vec![tau_i, tau_f], models))
}

/// τ(X) = X*, τ̃(X) = X̃ᵗ on `M(n; ℍ)`, with complex matrices realized
/// through κ.
fn quat1(n: usize) -> Result<Parts> {
    let tau = MatrixInvolution::standard(n, Ring::HQ, BaseInvolution::QConj)?;
    let tau2 = MatrixInvolution::standard(n, Ring::HQ, BaseInvolution::QSplit)?;
    let unit_i = Matrix::scalar_matrix(n, &scalar_unit(Ring::HQ, 1)?);
    let class = |c: MatrixClass| c.subspace(Ring::QI);
    let times_i = |m: Matrix| -> LinearMap { Arc::new(move |z: &Matrix| m.matmul(&kappa(z)?)) };
    let models = vec![
        ModelMap::new([1, 1], format!("Herm({n},C)"), class(MatrixClass::herm(n, BaseInvolution::Conj))?, Arc::new(kappa)),
        ModelMap::new([-1, 1], format!("i*Sym({n},C)"), class(MatrixClass::sym(n))?, times_i(unit_i.clone())),
        ModelMap::new([1, -1], format!("i*Asym({n},C)"), class(MatrixClass::asym(n))?, times_i(unit_i)),
        ModelMap::new([-1, -1], format!("Aherm({n},C)"), class(MatrixClass::aherm(n, BaseInvolution::Conj))?, Arc::new(kappa)),
    ];
    Ok((vec![tau, tau2], models))
}

/// τ(X) = I·Xᵗ·I, τ̃(X) = F·X̄ᵗ·F on `M(2n; ℚ(i))`, with quaternionic
/// matrices realized through ψ.
fn quat2(n: usize) -> Result<Parts> {
    let i = block_constant(BlockConstant::I(n), Ring::QI)?;
    let f = block_constant(BlockConstant::F(n), Ring::QI)?;
    let tau = MatrixInvolution::anti(BaseInvolution::Identity, i)?;
    let tau2 = MatrixInvolution::anti(BaseInvolution::Conj, f.clone())?;
    let herm = MatrixClass::herm(n, BaseInvolution::QConj).subspace(Ring::HQ)?;
    let aherm = MatrixClass::aherm(n, BaseInvolution::QConj).subspace(Ring::HQ)?;
    let fi = f.scale_left(&scalar_unit(Ring::QI, 1)?)?;
    let times = |m: Matrix| -> LinearMap {
        let l = left(m);
        Arc::new(move |q: &Matrix| l(&psi(q)?))
    };
    let models = vec![
        ModelMap::new([1, 1], format!("i*F*Aherm({n},H)"), aherm.clone(), times(fi.clone())),
        ModelMap::new([-1, 1], format!("F*Herm({n},H)"), herm.clone(), times(f.clone())),
        ModelMap::new([1, -1], format!("F*Aherm({n},H)"), aherm, times(f)),
        ModelMap::new([-1, -1], format!("i*F*Herm({n},H)"), herm, times(fi)),
    ];
    Ok((vec![tau, tau2], models))
}

impl Construction {
    pub fn name(&self) -> String {
        let sizes: Vec<String> = self.sizes.iter().map(|s| s.to_string()).collect();
        format!("{}({})", self.kind, sizes.join(","))
    }

    pub fn piece(&self, signs: &[i8]) -> Result<&Subspace> {
        self.decomposition
            .piece(signs)
            .ok_or_else(|| Error::InvalidSize(format!("no piece {}", sign_label(signs))))
    }

    pub fn model(&self, signs: &[i8]) -> Option<&ModelMap> {
        self.models.iter().find(|m| m.signs == signs)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.decomposition.dims()
    }

    /// For quat1: the fixed algebra of φ is κ(M(n, ℚ(i))).
    pub fn phi_fixed_is_complex(&self) -> Result<bool> {
        if self.kind != ConstructionKind::Quat1 {
            return Err(Error::Unsupported("only quat1 embeds ℂ through κ".into()));
        }
        let n = self.sizes[0];
        let fixed = self.phi.eigenspace(1)?;
        let images: Vec<Matrix> =
            Matrix::elementary_basis(n, n, Ring::QI).iter().map(kappa).collect::<Result<_>>()?;
        let span = Subspace::span(n, n, Ring::HQ, &images)?;
        Ok(span == fixed)
    }

    /// The off-diagonal Peirce cells of proj: `s = t` with the piece living
    /// in one corner block of `M(p+q)`.
    pub fn is_peirce_cell(&self, space: &[i8], param: &[i8]) -> bool {
        self.kind == ConstructionKind::Proj && space == param && space[0] != space[1]
    }

    pub fn to_json(&self) -> Value {
        let pieces: Vec<Value> = self
            .decomposition
            .pieces()
            .iter()
            .map(|(s, p)| {
                json!({
                    "signs": s,
                    "label": sign_label(s),
                    "dim": p.dim(),
                    "model": self.model(s).map(|m| m.model.clone()),
                })
            })
            .collect();
        json!({
            "construction": self.kind.name(),
            "sizes": self.sizes,
            "ring": self.ring.name(),
            "involutions": self.decomposition.involutions().iter().map(|t| t.to_descriptor()).collect::<Vec<_>>(),
            "pieces": pieces,
            "total": self.dims().iter().sum::<usize>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::nullspace;
    use crate::scalar::Rational;

    /// Joint eigenspace dimensions from the kernel of the stacked maps τᵢ − sᵢ.
    fn oracle_dims(c: &Construction) -> Vec<usize> {
        let taus = c.decomposition.involutions();
        let (n, ring) = (taus[0].size(), taus[0].ring());
        let basis = Matrix::elementary_basis(n, n, ring);
        let len = basis.len();
        c.decomposition
            .pieces()
            .iter()
            .map(|(s, _)| {
                let mut rows = Vec::new();
                for (tau, &si) in taus.iter().zip(s) {
                    let cols: Vec<Vec<Rational>> = basis
                        .iter()
                        .map(|b| {
                            let v = tau.apply(b).unwrap().try_sub(&b.scale(&Rational::from_int(si as i64))).unwrap();
                            v.into_data()
                        })
                        .collect();
                    rows.extend((0..len).map(|r| cols.iter().map(|c| c[r].clone()).collect::<Vec<_>>()));
                }
                nullspace(&rows, len).len()
            })
            .collect()
    }

    #[test]
    fn proj_dims() {
        for (p, q) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)] {
            let c = instantiate(ConstructionKind::Proj, &[p, q], None).unwrap();
            let expect = vec![p * (p + 1) / 2 + q * (q + 1) / 2, p * q, p * q, p * (p - 1) / 2 + q * (q - 1) / 2];
            assert_eq!(c.dims(), expect);
            assert_eq!(oracle_dims(&c), expect);
            assert!(c.decomposition.verify().unwrap());
        }
        let c = instantiate(ConstructionKind::Proj, &[1, 1], None).unwrap();
        assert_eq!(c.dims(), vec![2, 1, 1, 0]);
        let c = instantiate(ConstructionKind::Proj, &[2, 1], Some(Ring::QI)).unwrap();
        assert_eq!(c.dims(), vec![8, 4, 4, 2]);
    }

    #[test]
    fn siegel_dims() {
        for n in 1..=2 {
            let c = instantiate(ConstructionKind::Siegel, &[n], None).unwrap();
            let expect = vec![n * (n + 1), n * n, n * n, n * (n - 1)];
            assert_eq!(c.dims(), expect);
            assert_eq!(oracle_dims(&c), expect);
        }
    }

    #[test]
    fn quat1_dims_and_fixed_algebra() {
        for n in 1..=2 {
            let c = instantiate(ConstructionKind::Quat1, &[n], None).unwrap();
            let expect = vec![n * n, n * n + n, n * n - n, n * n];
            assert_eq!(c.dims(), expect);
            assert_eq!(oracle_dims(&c), expect);
            assert!(c.phi_fixed_is_complex().unwrap());
        }
    }

    #[test]
    fn quat2_dims() {
        let c = instantiate(ConstructionKind::Quat2, &[1], None).unwrap();
        assert_eq!(c.dims(), vec![3, 1, 3, 1]);
        assert_eq!(c.dims().iter().sum::<usize>(), 8);
        let c = instantiate(ConstructionKind::Quat2, &[2], None).unwrap();
        assert_eq!(c.dims(), vec![10, 6, 10, 6]);
        assert_eq!(oracle_dims(&c), vec![10, 6, 10, 6]);
    }

    #[test]
    fn size_and_ring_errors() {
        assert!(matches!(instantiate(ConstructionKind::Quat2, &[0], None), Err(Error::InvalidSize(_))));
        assert!(matches!(instantiate(ConstructionKind::Proj, &[1], None), Err(Error::InvalidSize(_))));
        assert!(matches!(instantiate(ConstructionKind::Siegel, &[1], Some(Ring::HQ)), Err(Error::Unsupported(_))));
        assert!("bogus".parse::<ConstructionKind>().is_err());
    }

    #[test]
    fn json_lists_models() {
        let c = instantiate(ConstructionKind::Quat1, &[1], None).unwrap();
        let v = c.to_json();
        assert_eq!(v["pieces"][1]["dim"], 2);
        assert_eq!(v["pieces"][0]["model"], "Herm(1,C)");
    }
}
