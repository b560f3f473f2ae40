//! Involutions of matrix algebras and their joint eigenspace decompositions.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::{Echelon, Matrix, Subspace};
use crate::scalar::{BaseInvolution, Rational, Ring, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InvolutionKind {
    Anti,
    Auto,
}

/// X ↦ B·δ(X)ᵗ·B⁻¹ (antiautomorphism) or X ↦ B·δ(X)·B⁻¹ (automorphism) on
/// `M(n, n; ring)`, validated on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixInvolution {
    kind: InvolutionKind,
    delta: BaseInvolution,
    twist: Matrix,
    twist_inv: Matrix,
}

impl MatrixInvolution {
    pub fn new(kind: InvolutionKind, delta: BaseInvolution, twist: Matrix) -> Result<Self> {
        if !twist.is_square() {
            return Err(Error::ShapeMismatch("twist must be square".into()));
        }
        delta.check(twist.ring())?;
        let twist_inv = twist.inverse()?;
        let inv = MatrixInvolution { kind, delta, twist, twist_inv };
        inv.validate()?;
        Ok(inv)
    }

    pub fn anti(delta: BaseInvolution, twist: Matrix) -> Result<Self> {
        Self::new(InvolutionKind::Anti, delta, twist)
    }

    pub fn auto(delta: BaseInvolution, twist: Matrix) -> Result<Self> {
        Self::new(InvolutionKind::Auto, delta, twist)
    }

    /// X ↦ δ(X)ᵗ.
    pub fn standard(n: usize, ring: Ring, delta: BaseInvolution) -> Result<Self> {
        Self::anti(delta, Matrix::identity(n, ring))
    }

    /// X ↦ B·X·B⁻¹.
    pub fn conjugation(b: Matrix) -> Result<Self> {
        Self::auto(BaseInvolution::Identity, b)
    }

    pub fn kind(&self) -> InvolutionKind {
        self.kind
    }

    pub fn delta(&self) -> BaseInvolution {
        self.delta
    }

    pub fn twist(&self) -> &Matrix {
        &self.twist
    }

    pub fn size(&self) -> usize {
        self.twist.rows()
    }

    pub fn ring(&self) -> Ring {
        self.twist.ring()
    }

    pub fn is_anti(&self) -> bool {
        self.kind == InvolutionKind::Anti
    }

    fn validate(&self) -> Result<()> {
        let n = self.size();
        let basis = Matrix::elementary_basis(n, n, self.ring());
        let images: Vec<Matrix> = basis.iter().map(|e| self.apply(e)).collect::<Result<_>>()?;
        for (e, img) in basis.iter().zip(&images) {
            if self.apply(img)? != *e {
                return Err(Error::NotInvolution(format!("does not square to the identity on {e}")));
            }
        }
        for (a, ia) in basis.iter().zip(&images) {
            for (b, ib) in basis.iter().zip(&images) {
                let lhs = self.apply(&a.matmul(b)?)?;
                let rhs = match self.kind {
                    InvolutionKind::Anti => ib.matmul(ia)?,
                    InvolutionKind::Auto => ia.matmul(ib)?,
                };
                if lhs != rhs {
                    let what = match self.kind {
                        InvolutionKind::Anti => "antimorphism",
                        InvolutionKind::Auto => "morphism",
                    };
                    return Err(Error::NotInvolution(format!("{what} property fails on {a} and {b}")));
                }
            }
        }
        Ok(())
    }

    fn check_arg(&self, x: &Matrix) -> Result<()> {
        if x.shape() != (self.size(), self.size()) || x.ring() != self.ring() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} {} argument for an involution of M({n},{n};{})",
                x.rows(),
                x.cols(),
                x.ring(),
                self.ring(),
                n = self.size()
            )));
        }
        Ok(())
    }

    pub fn apply(&self, x: &Matrix) -> Result<Matrix> {
        self.check_arg(x)?;
        let core = match self.kind {
            InvolutionKind::Anti => x.dagger(self.delta)?,
            InvolutionKind::Auto => x.apply_entrywise(self.delta)?,
        };
        self.twist.mul3(&core, &self.twist_inv)
    }

    /// `self ∘ other` for two antiautomorphisms, as an automorphism.
    ///
    /// With τₖ(X) = Bₖ·δₖ(X)ᵗ·Bₖ⁻¹ the composite is C·(δ₁δ₂)(X)·C⁻¹ with
    /// C = B₁·δ₁(B₂⁻¹)ᵗ. On ℍ_ℚ, δ₁δ₂ ∈ {qconj∘qsplit, qsplit∘qconj} is
    /// conjugation by j and is absorbed into the twist.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if !(self.is_anti() && other.is_anti()) {
            return Err(Error::Unsupported("composition is implemented for two antiautomorphisms".into()));
        }
        if self.size() != other.size() || self.ring() != other.ring() {
            return Err(Error::ShapeMismatch("involutions on different algebras".into()));
        }
        let c = self.twist.matmul(&other.twist_inv.dagger(self.delta)?)?;
        use BaseInvolution::*;
        let (twist, delta) = match (self.delta, other.delta) {
            (a, b) if a == b => (c, Identity),
            (Identity, d) | (d, Identity) => (c, d),
            (QConj, QSplit) | (QSplit, QConj) => {
                let j = Scalar::unit(Ring::HQ, 2)?;
                (c.matmul(&Matrix::scalar_matrix(self.size(), &j))?, Identity)
            }
            (a, b) => return Err(Error::Unsupported(format!("composite of {} and {}", a.name(), b.name()))),
        };
        Self::auto(delta, twist)
    }

    /// Whether the two involutions commute on every elementary matrix.
    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        if self.size() != other.size() || self.ring() != other.ring() {
            return Err(Error::ShapeMismatch("involutions on different algebras".into()));
        }
        for e in Matrix::elementary_basis(self.size(), self.size(), self.ring()) {
            if self.apply(&other.apply(&e)?)? != other.apply(&self.apply(&e)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The ±1-eigenspace.
    pub fn eigenspace(&self, sign: i8) -> Result<Subspace> {
        Ok(joint_eigenspaces(std::slice::from_ref(self))?.piece(&[sign]).expect("sign vector").clone())
    }

    /// JSON descriptor `{"kind","delta","transpose","twist"}`.
    pub fn to_descriptor(&self) -> Value {
        let twist = if self.twist == Matrix::identity(self.size(), self.ring()) {
            json!("identity")
        } else {
            self.twist.to_json_value()
        };
        json!({
            "kind": self.kind,
            "delta": self.delta.name(),
            "transpose": self.is_anti(),
            "twist": twist,
        })
    }

    /// Parses a descriptor; `"identity"` twists take the given size and ring.
    pub fn from_descriptor(v: &Value, n: usize, ring: Ring) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("involution descriptor: {m}"));
        let kind: InvolutionKind =
            serde_json::from_value(v.get("kind").cloned().ok_or_else(|| bad("missing kind"))?)
                .map_err(|e| bad(&e.to_string()))?;
        let delta: BaseInvolution = v
            .get("delta")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing delta"))?
            .parse()?;
        let transpose = v.get("transpose").and_then(Value::as_bool).ok_or_else(|| bad("missing transpose"))?;
        if transpose != (kind == InvolutionKind::Anti) {
            return Err(bad("transpose must be true exactly for antiautomorphisms"));
        }
        let twist = match v.get("twist") {
            Some(Value::String(s)) if s == "identity" => Matrix::identity(n, ring),
            Some(m) => serde_json::from_value::<Matrix>(m.clone()).map_err(|e| bad(&e.to_string()))?,
            None => return Err(bad("missing twist")),
        };
        Self::new(kind, delta, twist)
    }
}

/// Sign vectors in the fixed order: index m ↦ sᵢ = −1 iff bit i of m is set.
/// For k = 2 this is (1,1), (−1,1), (1,−1), (−1,−1).
pub fn sign_vectors(k: usize) -> Vec<Vec<i8>> {
    (0..1usize << k)
        .map(|m| (0..k).map(|i| if m >> i & 1 == 1 { -1 } else { 1 }).collect())
        .collect()
}

pub fn sign_label(s: &[i8]) -> String {
    let parts: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Decomposition of `M(n,n)` into joint eigenspaces of commuting involutions.
#[derive(Debug, Clone)]
pub struct JointDecomposition {
    involutions: Vec<MatrixInvolution>,
    pieces: Vec<(Vec<i8>, Subspace)>,
}

impl JointDecomposition {
    pub fn involutions(&self) -> &[MatrixInvolution] {
        &self.involutions
    }

    pub fn pieces(&self) -> &[(Vec<i8>, Subspace)] {
        &self.pieces
    }

    pub fn piece(&self, signs: &[i8]) -> Option<&Subspace> {
        self.pieces.iter().find(|(s, _)| s == signs).map(|(_, p)| p)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(|(_, p)| p.dim()).collect()
    }

    /// Direct-sum and eigenvalue checks: dims add up to the ambient, the sum
    /// is everything, and every τᵢ acts on piece(s) by sᵢ.
    pub fn verify(&self) -> Result<bool> {
        let first = &self.pieces[0].1;
        let total: usize = self.dims().iter().sum();
        if total != first.ambient_dim() {
            return Ok(false);
        }
        let mut e = Echelon::new(first.ambient_dim());
        for (_, p) in &self.pieces {
            for v in p.basis_matrices() {
                e.insert_dense(v.into_data());
            }
        }
        if e.rank() != total {
            return Ok(false);
        }
        for (s, p) in &self.pieces {
            for b in p.basis_matrices() {
                for (tau, &si) in self.involutions.iter().zip(s) {
                    if tau.apply(&b)? != b.scale(&Rational::from_int(si as i64)) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Joint eigenspaces via the projections Πᵢ (1 + sᵢτᵢ)/2 applied to the
/// elementary basis.
pub fn joint_eigenspaces(invs: &[MatrixInvolution]) -> Result<JointDecomposition> {
    let first = invs.first().ok_or_else(|| Error::InvalidSize("no involutions".into()))?;
    let (n, ring) = (first.size(), first.ring());
    for (a, t1) in invs.iter().enumerate() {
        if t1.size() != n || t1.ring() != ring {
            return Err(Error::ShapeMismatch("involutions on different algebras".into()));
        }
        for t2 in &invs[a + 1..] {
            if !t1.commutes_with(t2)? {
                return Err(Error::NotCommuting);
            }
        }
    }
    let half = Rational::new(1, 2);
    let basis = Matrix::elementary_basis(n, n, ring);
    let mut pieces = Vec::new();
    for s in sign_vectors(invs.len()) {
        let mut e = Echelon::new(n * n * ring.width());
        for b in &basis {
            let mut v = b.clone();
            for (tau, &si) in invs.iter().zip(&s) {
                let tv = tau.apply(&v)?;
                let w = if si > 0 { v.try_add(&tv)? } else { v.try_sub(&tv)? };
                v = w.scale(&half);
            }
            e.insert_dense(v.into_data());
        }
        pieces.push((s, Subspace::from_echelon(n, n, ring, e)?));
    }
    Ok(JointDecomposition { involutions: invs.to_vec(), pieces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{block_constant, nullspace, BlockConstant};

    fn m(v: &[i64]) -> Matrix {
        Matrix::from_ints(2, 2, Ring::Q, v).unwrap()
    }

    fn siegel_pair(n: usize) -> (MatrixInvolution, MatrixInvolution) {
        let i = block_constant(BlockConstant::I(n), Ring::Q).unwrap();
        let f = block_constant(BlockConstant::F(n), Ring::Q).unwrap();
        (
            MatrixInvolution::anti(BaseInvolution::Identity, i).unwrap(),
            MatrixInvolution::anti(BaseInvolution::Identity, f).unwrap(),
        )
    }

    /// Nullspace of the stacked maps (τᵢ − sᵢ·id).
    fn oracle_dims(invs: &[MatrixInvolution]) -> Vec<usize> {
        let (n, ring) = (invs[0].size(), invs[0].ring());
        let basis = Matrix::elementary_basis(n, n, ring);
        let len = basis.len();
        sign_vectors(invs.len())
            .iter()
            .map(|s| {
                let mut rows = Vec::new();
                for (tau, &si) in invs.iter().zip(s) {
                    let cols: Vec<Vec<Rational>> = basis
                        .iter()
                        .map(|b| {
                            tau.apply(b)
                                .unwrap()
                                .try_sub(&b.scale(&Rational::from_int(si as i64)))
                                .unwrap()
                                .into_data()
                        })
                        .collect();
                    for r in 0..len {
                        rows.push(cols.iter().map(|c| c[r].clone()).collect());
                    }
                }
                nullspace(&rows, len).len()
            })
            .collect()
    }

    #[test]
    fn explicit_formulae() {
        let j = block_constant(BlockConstant::J(1), Ring::Q).unwrap();
        let f = block_constant(BlockConstant::F(1), Ring::Q).unwrap();
        let t1 = MatrixInvolution::standard(2, Ring::Q, BaseInvolution::Identity).unwrap();
        let tj = MatrixInvolution::anti(BaseInvolution::Identity, j).unwrap();
        let tf = MatrixInvolution::anti(BaseInvolution::Identity, f).unwrap();
        let x = m(&[1, 2, 3, 4]);
        assert_eq!(t1.apply(&x).unwrap(), m(&[1, 3, 2, 4]));
        assert_eq!(tj.apply(&x).unwrap(), m(&[4, -2, -3, 1]));
        assert_eq!(tf.apply(&x).unwrap(), m(&[4, 2, 3, 1]));
        let (ti, _) = siegel_pair(1);
        assert_eq!(ti.apply(&x).unwrap(), m(&[1, -3, -2, 4]));
    }

    #[test]
    fn commuting_examples() {
        let (ti, tf) = siegel_pair(1);
        let t1 = MatrixInvolution::standard(2, Ring::Q, BaseInvolution::Identity).unwrap();
        let tj = MatrixInvolution::anti(BaseInvolution::Identity, block_constant(BlockConstant::J(1), Ring::Q).unwrap())
            .unwrap();
        assert!(t1.commutes_with(&tj).unwrap());
        assert!(ti.commutes_with(&tf).unwrap());
        assert!(ti.commutes_with(&ti).unwrap());
        let phi = ti.compose(&tf).unwrap();
        let jc = MatrixInvolution::conjugation(block_constant(BlockConstant::J(1), Ring::Q).unwrap()).unwrap();
        for e in Matrix::elementary_basis(2, 2, Ring::Q) {
            assert_eq!(phi.apply(&e).unwrap(), jc.apply(&e).unwrap());
        }
    }

    #[test]
    fn rejects_non_involutions() {
        let twist = m(&[1, 1, 0, 1]);
        assert!(MatrixInvolution::anti(BaseInvolution::Identity, twist).is_err());
        let hq = MatrixInvolution::standard(1, Ring::HQ, BaseInvolution::Identity);
        assert!(matches!(hq, Err(Error::NotInvolution(_))));
        let entrywise = MatrixInvolution::auto(BaseInvolution::QConj, Matrix::identity(2, Ring::HQ));
        assert!(entrywise.is_err());
        assert!(MatrixInvolution::anti(BaseInvolution::Conj, m(&[1, 0, 0, 1])).is_err());
        let j = block_constant(BlockConstant::J(1), Ring::Q).unwrap();
        assert!(MatrixInvolution::anti(BaseInvolution::Identity, j).is_ok());
    }

    #[test]
    fn single_transpose() {
        let t1 = MatrixInvolution::standard(2, Ring::Q, BaseInvolution::Identity).unwrap();
        let d = joint_eigenspaces(&[t1]).unwrap();
        assert_eq!(d.dims(), vec![3, 1]);
        assert!(d.verify().unwrap());
    }

    #[test]
    fn siegel_dims_match_oracle() {
        for n in 1..=2 {
            let (ti, tf) = siegel_pair(n);
            let d = joint_eigenspaces(&[ti.clone(), tf.clone()]).unwrap();
            assert_eq!(d.dims(), oracle_dims(&[ti, tf]));
            assert!(d.verify().unwrap());
        }
        let (ti, tf) = siegel_pair(1);
        assert_eq!(joint_eigenspaces(&[ti, tf]).unwrap().dims(), vec![2, 1, 1, 0]);
    }

    #[test]
    fn quaternionic_pair() {
        let a = MatrixInvolution::standard(1, Ring::HQ, BaseInvolution::QConj).unwrap();
        let b = MatrixInvolution::standard(1, Ring::HQ, BaseInvolution::QSplit).unwrap();
        let d = joint_eigenspaces(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(d.dims(), vec![1, 2, 0, 1]);
        assert_eq!(d.dims(), oracle_dims(&[a.clone(), b.clone()]));
        let phi = a.compose(&b).unwrap();
        let j = Scalar::unit(Ring::HQ, 2).unwrap();
        let jm = Matrix::scalar_matrix(1, &j);
        for e in Matrix::elementary_basis(1, 1, Ring::HQ) {
            let expect = jm.mul3(&e, &jm.inverse().unwrap()).unwrap();
            assert_eq!(phi.apply(&e).unwrap(), expect);
        }
    }

    #[test]
    fn non_commuting_rejected() {
        let t1 = MatrixInvolution::standard(2, Ring::Q, BaseInvolution::Identity).unwrap();
        let c = MatrixInvolution::conjugation(m(&[1, 1, 0, -1])).unwrap();
        assert!(matches!(joint_eigenspaces(&[t1, c]), Err(Error::NotCommuting)));
    }

    #[test]
    fn three_involutions() {
        let n = 2;
        let t = MatrixInvolution::standard(n, Ring::QI, BaseInvolution::Identity).unwrap();
        let c = MatrixInvolution::standard(n, Ring::QI, BaseInvolution::Conj).unwrap();
        let ipq = block_constant(BlockConstant::Ipq(1, 1), Ring::QI).unwrap();
        let p = MatrixInvolution::anti(BaseInvolution::Identity, ipq).unwrap();
        let d = joint_eigenspaces(&[t.clone(), c.clone(), p.clone()]).unwrap();
        assert_eq!(d.pieces().len(), 8);
        assert!(d.verify().unwrap());
        assert_eq!(d.dims(), oracle_dims(&[t, c, p]));
    }

    #[test]
    fn descriptor_round_trip() {
        let (ti, _) = siegel_pair(1);
        let v = ti.to_descriptor();
        assert_eq!(v["transpose"], json!(true));
        let back = MatrixInvolution::from_descriptor(&v, 2, Ring::Q).unwrap();
        assert_eq!(back, ti);
        let ident = json!({"kind":"anti","delta":"conj","transpose":true,"twist":"identity"});
        assert!(MatrixInvolution::from_descriptor(&ident, 2, Ring::QI).is_ok());
        let bad = json!({"kind":"auto","delta":"id","transpose":true,"twist":"identity"});
        assert!(MatrixInvolution::from_descriptor(&bad, 2, Ring::Q).is_err());
    }
}
