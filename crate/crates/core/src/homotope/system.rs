//! Triple systems on subspaces, their structure constants and axiom checks.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::{Echelon, Matrix, SparseVec, Subspace};
use crate::scalar::{Rational, Ring};

use super::kernel::{lts_witnesses, sparse_entries, t_half, SparseEntries};
use super::product::{AlphaMap, Negated, SharedProduct, TripleProduct};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axiom {
    LT1,
    LT2,
    LT3,
    #[serde(rename = "closure")]
    Closure,
    #[serde(rename = "jacobi")]
    Jacobi,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub matrices: Vec<Matrix>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub pass: bool,
    pub witness: Option<Witness>,
}

impl AxiomReport {
    pub fn passed(axiom: Axiom) -> Self {
        AxiomReport { axiom, pass: true, witness: None }
    }

    pub fn failed(axiom: Axiom, indices: Vec<usize>, basis: &[Matrix]) -> Self {
        let matrices = indices.iter().map(|&i| basis[i].clone()).collect();
        AxiomReport { axiom, pass: false, witness: Some(Witness { indices, matrices }) }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Reports for LT1, LT2 and LT3, in that order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LtsReport(pub Vec<AxiomReport>);

impl LtsReport {
    pub fn all_pass(&self) -> bool {
        self.0.iter().all(|r| r.pass)
    }

    pub fn get(&self, axiom: Axiom) -> Option<&AxiomReport> {
        self.0.iter().find(|r| r.axiom == axiom)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(AxiomReport::to_json).collect())
    }
}

/// A subspace closed under a triple product, with structure constants
/// `[bₓ, b_y, b_z] = Σ c(x,y,z)ₘ bₘ` over its canonical basis.
#[derive(Clone)]
pub struct TripleSystem {
    space: Subspace,
    basis: Vec<Matrix>,
    product: SharedProduct,
    consts: Vec<SparseVec>,
}

impl fmt::Debug for TripleSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TripleSystem")
            .field("dim", &self.dim())
            .field("product", &self.product.describe())
            .finish()
    }
}

/// First basis triple whose product leaves the space, with all constants
/// computed so far.
fn structure_constants(
    space: &Subspace,
    basis: &[Matrix],
    product: &dyn TripleProduct,
) -> Result<std::result::Result<Vec<SparseVec>, Vec<usize>>> {
    let d = basis.len();
    let (rows, cols, _) = space.ambient();
    let mids: Vec<Matrix> = basis.iter().map(|b| product.middle(b)).collect::<Result<_>>()?;
    let sign = product.t_sign();
    if let Some(s) = &sign {
        if mids.iter().any(|m| m.shape() != (cols, rows)) {
            return Err(Error::ShapeMismatch("middle map has the wrong shape".into()));
        }
        let sparse: Vec<SparseEntries> = basis.iter().map(sparse_entries).collect();
        return Ok(antisymmetric_constants(space, &sparse, &mids, s));
    }
    let mut consts = Vec::with_capacity(d * d * d);
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let t = product.assemble(&basis[x], &basis[y], &basis[z], &mids[x], &mids[y])?;
                if t.shape() != (rows, cols) {
                    return Err(Error::ShapeMismatch("triple product leaves the ambient shape".into()));
                }
                match space.coords_sparse(&t.into_data()) {
                    Some(c) => consts.push(c),
                    None => return Ok(Err(vec![x, y, z])),
                }
            }
        }
    }
    Ok(Ok(consts))
}

/// Constants of `s·(T(x, m_y, z) − T(y, m_x, z))`, sharing each `T(u, m_v, z)`
/// between `[u, v, z]` and `[v, u, z]`.
fn antisymmetric_constants(
    space: &Subspace,
    sparse: &[SparseEntries],
    mids: &[Matrix],
    sign: &Rational,
) -> std::result::Result<Vec<SparseVec>, Vec<usize>> {
    let d = sparse.len();
    let (rows, cols, ring) = space.ambient();
    let mut consts = vec![SparseVec::new(); d * d * d];
    let mut failed: Option<Vec<usize>> = None;
    for z in 0..d {
        let halves: Vec<Vec<Rational>> =
            (0..d * d).map(|k| t_half(ring, (rows, cols), &sparse[k / d], &mids[k % d], &sparse[z])).collect();
        for x in 0..d {
            for y in x + 1..d {
                let flat: Vec<Rational> =
                    halves[x * d + y].iter().zip(&halves[y * d + x]).map(|(a, b)| (a - b) * sign).collect();
                match space.coords_sparse(&flat) {
                    Some(c) => {
                        consts[(y * d + x) * d + z] = c.iter().map(|(i, v)| (*i, -v)).collect();
                        consts[(x * d + y) * d + z] = c;
                    }
                    None => {
                        let at = vec![x, y, z];
                        if failed.as_ref().is_none_or(|f| at < *f) {
                            failed = Some(at);
                        }
                    }
                }
            }
        }
    }
    match failed {
        Some(at) => Err(at),
        None => Ok(consts),
    }
}

/// Whether every basis triple of `space` has its product inside `space`.
pub fn check_closure(space: &Subspace, product: &dyn TripleProduct) -> Result<AxiomReport> {
    let basis = space.basis_matrices();
    Ok(match structure_constants(space, &basis, product)? {
        Ok(_) => AxiomReport::passed(Axiom::Closure),
        Err(t) => AxiomReport::failed(Axiom::Closure, t, &basis),
    })
}

impl TripleSystem {
    pub fn new(space: Subspace, product: SharedProduct) -> Result<Self> {
        let basis = space.basis_matrices();
        match structure_constants(&space, &basis, product.as_ref())? {
            Ok(consts) => Ok(TripleSystem { space, basis, product, consts }),
            Err(t) => Err(Error::NotClosed(t)),
        }
    }

    /// The homotope product `[X,Y,Z]_A`.
    pub fn with_param(space: Subspace, a: &Matrix) -> Result<Self> {
        Self::new(space, Arc::new(AlphaMap::param(a)))
    }

    pub fn with_alpha(space: Subspace, alpha: AlphaMap) -> Result<Self> {
        Self::new(space, Arc::new(alpha))
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn product(&self) -> &SharedProduct {
        &self.product
    }

    pub fn constant(&self, x: usize, y: usize, z: usize) -> &SparseVec {
        let d = self.dim();
        &self.consts[(x * d + y) * d + z]
    }

    pub fn constants(&self) -> &[SparseVec] {
        &self.consts
    }

    pub fn triple(&self, x: &Matrix, y: &Matrix, z: &Matrix) -> Result<Matrix> {
        self.product.triple(x, y, z)
    }

    /// The product with opposite sign on the same space.
    pub fn cdual(&self) -> TripleSystem {
        let consts = self
            .consts
            .iter()
            .map(|c| c.iter().map(|(i, v)| (*i, -v)).collect())
            .collect();
        TripleSystem {
            space: self.space.clone(),
            basis: self.basis.clone(),
            product: Arc::new(Negated(self.product.clone())),
            consts,
        }
    }

    /// R(bᵤ, bᵥ) = [bᵤ, bᵥ, ·] as a `d×d` matrix in basis coordinates.
    pub fn r_operator(&self, u: usize, v: usize) -> Matrix {
        let d = self.dim();
        let mut data = vec![Rational::ZERO; d * d];
        for l in 0..d {
            for (m, val) in self.constant(u, v, l) {
                data[m * d + l] = val.clone();
            }
        }
        Matrix::from_flat(d, d, Ring::Q, data).expect("square operator")
    }

    pub fn same_constants(&self, other: &TripleSystem) -> bool {
        self.dim() == other.dim() && self.consts == other.consts
    }

    /// Whether `map` is a linear isomorphism onto `other` that intertwines
    /// the products on all basis triples.
    pub fn intertwines<F>(&self, other: &TripleSystem, map: F) -> Result<bool>
    where
        F: Fn(&Matrix) -> Result<Matrix>,
    {
        if self.dim() == 0 {
            return Ok(other.dim() == 0);
        }
        let images: Vec<Matrix> = self.basis.iter().map(&map).collect::<Result<_>>()?;
        let mut e = Echelon::new(other.space.ambient_dim());
        for im in &images {
            if !other.space.contains(im)? {
                return Ok(false);
            }
            e.insert_dense(im.data().to_vec());
        }
        if e.rank() != self.dim() || other.dim() != self.dim() {
            return Ok(false);
        }
        let d = self.dim();
        let other_mids: Vec<Matrix> =
            images.iter().map(|m| other.product.middle(m)).collect::<Result<_>>()?;
        for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    let mut lhs = Matrix::zeros(images[0].rows(), images[0].cols(), images[0].ring());
                    for (m, c) in self.constant(x, y, z) {
                        lhs.add_scaled(c, &images[*m])?;
                    }
                    let rhs = other.product.assemble(
                        &images[x],
                        &images[y],
                        &images[z],
                        &other_mids[x],
                        &other_mids[y],
                    )?;
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// LT1, LT2 and LT3 on all basis tuples.
    pub fn check_lts(&self) -> LtsReport {
        let [lt1, lt2, lt3] = lts_witnesses(&self.consts, self.dim());
        let report = |axiom, w: Option<Vec<usize>>| match w {
            None => AxiomReport::passed(axiom),
            Some(idx) => AxiomReport::failed(axiom, idx, &self.basis),
        };
        LtsReport(vec![report(Axiom::LT1, lt1), report(Axiom::LT2, lt2), report(Axiom::LT3, lt3)])
    }

    pub fn describe(&self) -> Value {
        json!({ "dim": self.dim(), "product": self.product.describe() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotope::product::Associative;

    fn full(n: usize, ring: Ring) -> Subspace {
        Subspace::full(n, n, ring)
    }

    #[test]
    fn full_space_passes() {
        let a = Matrix::from_ints(2, 2, Ring::Q, &[1, 2, -1, 0]).unwrap();
        let t = TripleSystem::with_param(full(2, Ring::Q), &a).unwrap();
        assert!(t.check_lts().all_pass());
        let flat = TripleSystem::with_param(full(2, Ring::Q), &Matrix::zeros(2, 2, Ring::Q)).unwrap();
        assert!(flat.check_lts().all_pass());
        assert!(flat.constants().iter().all(Vec::is_empty));
    }

    #[test]
    fn associative_fails_lt1() {
        let t = TripleSystem::new(full(2, Ring::Q), Arc::new(Associative)).unwrap();
        let r = t.check_lts();
        let lt1 = r.get(Axiom::LT1).unwrap();
        assert!(!lt1.pass);
        let w = lt1.witness.as_ref().unwrap();
        assert_eq!(w.indices.len(), 3);
        let [x, y, z] = [&w.matrices[0], &w.matrices[1], &w.matrices[2]];
        assert_ne!(x.mul3(y, z).unwrap(), y.mul3(x, z).unwrap().neg());
        // E11·E12·E21 = E11 while E12·E11·E21 = 0.
        let e = |i, j| Matrix::elementary(2, 2, Ring::Q, i, j, 0);
        assert_eq!(t.constant(0, 1, 2), &vec![(0, Rational::ONE)]);
        assert!(t.constant(1, 0, 2).is_empty());
        assert_eq!(e(0, 0).mul3(&e(0, 1), &e(1, 0)).unwrap(), e(0, 0));
    }

    #[test]
    fn closure_report() {
        let sym = Subspace::span(
            2,
            2,
            Ring::Q,
            &[
                Matrix::from_ints(2, 2, Ring::Q, &[1, 0, 0, 0]).unwrap(),
                Matrix::from_ints(2, 2, Ring::Q, &[0, 1, 1, 0]).unwrap(),
                Matrix::from_ints(2, 2, Ring::Q, &[0, 0, 0, 1]).unwrap(),
            ],
        )
        .unwrap();
        let r = check_closure(&sym, &AlphaMap::param(&Matrix::identity(2, Ring::Q))).unwrap();
        assert!(r.pass);
        let bad = check_closure(&sym, &Associative).unwrap();
        assert!(!bad.pass);
        assert!(matches!(TripleSystem::new(sym, Arc::new(Associative)), Err(Error::NotClosed(_))));
    }

    #[test]
    fn cdual_negates() {
        let a = Matrix::from_flat(2, 2, Ring::QI, [1, 0, 2, 0, 0, 1, 1, -1].map(Rational::from_int).to_vec()).unwrap();
        let t = TripleSystem::with_param(full(2, Ring::QI), &a).unwrap();
        let c = t.cdual();
        assert!(c.check_lts().all_pass());
        assert!(c.cdual().same_constants(&t));
        let x = &t.basis()[1];
        assert_eq!(c.triple(x, &t.basis()[4], x).unwrap(), t.triple(x, &t.basis()[4], x).unwrap().neg());
    }

    #[test]
    fn report_json_shape() {
        let r = AxiomReport::passed(Axiom::LT2).to_json();
        assert_eq!(r, json!({"axiom": "LT2", "pass": true, "witness": null}));
        let c = AxiomReport::passed(Axiom::Closure).to_json();
        assert_eq!(c["axiom"], json!("closure"));
    }
}
