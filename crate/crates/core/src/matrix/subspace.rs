//! Exact ℚ-linear algebra on flattened coordinate vectors.

use crate::error::{Error, Result};
use crate::scalar::{Rational, Ring};

use super::Matrix;

/// Sparse vector as sorted `(index, value)` pairs without zeros.
pub type SparseVec = Vec<(usize, Rational)>;

fn to_sparse(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// `a -= c·b` on sparse vectors.
fn axpy_sparse(a: &SparseVec, c: &Rational, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(c * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incrementally maintained reduced row-echelon form.
///
/// Every stored row has a leading 1 at its pivot and zeros at all other
/// pivots, so reducing a vector is a single pass over the rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    len: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(len: usize) -> Self {
        Echelon { len, rows: Vec::new(), pivot_row: vec![None; len] }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduces a dense vector in place against the stored rows.
    pub fn reduce_dense(&self, v: &mut [Rational]) {
        for row in &self.rows {
            let p = row[0].0;
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (j, x) in row {
                v[*j] -= &(&c * x);
            }
        }
    }

    /// Adds a vector; returns `true` iff it was independent of the rows.
    pub fn insert_dense(&mut self, mut v: Vec<Rational>) -> bool {
        assert_eq!(v.len(), self.len, "echelon vector length");
        self.reduce_dense(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip().expect("nonzero pivot");
        let row: SparseVec = v[p..]
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| (p + k, x * &inv))
            .collect();
        for other in &mut self.rows {
            if let Ok(pos) = other.binary_search_by_key(&p, |e| e.0) {
                let c = other[pos].1.clone();
                *other = axpy_sparse(other, &c, &row);
            }
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn insert_sparse(&mut self, v: &SparseVec) -> bool {
        let mut dense = vec![Rational::ZERO; self.len];
        for (i, x) in v {
            dense[*i] = x.clone();
        }
        self.insert_dense(dense)
    }

    pub fn contains_dense(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.reduce_dense(&mut w);
        w.iter().all(Rational::is_zero)
    }

    /// Rows sorted by pivot column: the canonical reduced basis.
    pub fn into_rref(mut self) -> Vec<SparseVec> {
        self.rows.sort_by_key(|r| r[0].0);
        self.rows
    }

    /// Basis of `{x : r·x = 0 for every row r}`.
    pub fn annihilator(&self) -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        for f in 0..self.len {
            if self.pivot_row[f].is_some() {
                continue;
            }
            let mut v = vec![Rational::ZERO; self.len];
            v[f] = Rational::ONE;
            for row in &self.rows {
                if let Ok(pos) = row.binary_search_by_key(&f, |e| e.0) {
                    v[row[0].0] = -&row[pos].1;
                }
            }
            out.push(v);
        }
        out
    }
}

/// Basis of the right nullspace `{x : M x = 0}` of the matrix with the given
/// dense rows of length `ncols`.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert_dense(r.clone());
    }
    e.annihilator()
}

/// A ℚ-subspace of a matrix space, stored in canonical reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    rows: usize,
    cols: usize,
    ring: Ring,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn from_rref(rows: usize, cols: usize, ring: Ring, basis: Vec<SparseVec>) -> Self {
        let pivots = basis.iter().map(|r| r[0].0).collect();
        Subspace { rows, cols, ring, basis, pivots }
    }

    pub fn from_echelon(rows: usize, cols: usize, ring: Ring, e: Echelon) -> Result<Self> {
        if e.len() != rows * cols * ring.width() {
            return Err(Error::ShapeMismatch("echelon length does not match ambient".into()));
        }
        Ok(Self::from_rref(rows, cols, ring, e.into_rref()))
    }

    pub fn zero(rows: usize, cols: usize, ring: Ring) -> Self {
        Self::from_rref(rows, cols, ring, Vec::new())
    }

    pub fn full(rows: usize, cols: usize, ring: Ring) -> Self {
        let n = rows * cols * ring.width();
        Self::from_rref(rows, cols, ring, (0..n).map(|i| vec![(i, Rational::ONE)]).collect())
    }

    /// The ℚ-span of the given matrices.
    pub fn span(rows: usize, cols: usize, ring: Ring, mats: &[Matrix]) -> Result<Self> {
        let mut e = Echelon::new(rows * cols * ring.width());
        for m in mats {
            if m.shape() != (rows, cols) || m.ring() != ring {
                return Err(Error::ShapeMismatch(format!(
                    "{:?} over {} in ambient {rows}x{cols} over {ring}",
                    m.shape(),
                    m.ring()
                )));
            }
            e.insert_dense(m.data().to_vec());
        }
        Self::from_echelon(rows, cols, ring, e)
    }

    /// Span of flattened vectors.
    pub fn from_vectors(rows: usize, cols: usize, ring: Ring, vecs: &[Vec<Rational>]) -> Result<Self> {
        let n = rows * cols * ring.width();
        let mut e = Echelon::new(n);
        for v in vecs {
            if v.len() != n {
                return Err(Error::ShapeMismatch("vector length".into()));
            }
            e.insert_dense(v.clone());
        }
        Self::from_echelon(rows, cols, ring, e)
    }

    pub fn ambient(&self) -> (usize, usize, Ring) {
        (self.rows, self.cols, self.ring)
    }

    pub fn ambient_dim(&self) -> usize {
        self.rows * self.cols * self.ring.width()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    pub fn basis_vectors(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self, i: usize) -> Matrix {
        let mut data = vec![Rational::ZERO; self.ambient_dim()];
        for (j, x) in &self.basis[i] {
            data[*j] = x.clone();
        }
        Matrix::from_flat(self.rows, self.cols, self.ring, data).expect("basis length")
    }

    pub fn basis_matrices(&self) -> Vec<Matrix> {
        (0..self.dim()).map(|i| self.basis_matrix(i)).collect()
    }

    fn check_matrix(&self, m: &Matrix) -> Result<()> {
        if m.shape() != (self.rows, self.cols) || m.ring() != self.ring {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} {} matrix in ambient {}x{} {}",
                m.rows(),
                m.cols(),
                m.ring(),
                self.rows,
                self.cols,
                self.ring
            )));
        }
        Ok(())
    }

    fn check_same_ambient(&self, o: &Self) -> Result<()> {
        if self.ambient() != o.ambient() {
            return Err(Error::ShapeMismatch("subspaces in different ambients".into()));
        }
        Ok(())
    }

    /// Coordinates of a flattened vector, or `None` when it is not in the space.
    pub fn coords_flat(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if self.is_full() {
            return Some(v.to_vec());
        }
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, row) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (j, x) in row {
                residual[*j] -= &(c * x);
            }
        }
        residual.iter().all(Rational::is_zero).then_some(coords)
    }

    /// Sparse coordinates `(basis index, value)`, or `None` when not contained.
    pub fn coords_sparse(&self, v: &[Rational]) -> Option<SparseVec> {
        self.coords_flat(v).map(|c| to_sparse(&c))
    }

    pub fn coords(&self, m: &Matrix) -> Result<Option<Vec<Rational>>> {
        self.check_matrix(m)?;
        Ok(self.coords_flat(m.data()))
    }

    pub fn contains(&self, m: &Matrix) -> Result<bool> {
        Ok(self.coords(m)?.is_some())
    }

    /// `Σ cᵢ bᵢ`.
    pub fn combine(&self, coeffs: &[Rational]) -> Result<Matrix> {
        if coeffs.len() != self.dim() {
            return Err(Error::ShapeMismatch("coefficient count".into()));
        }
        let mut data = vec![Rational::ZERO; self.ambient_dim()];
        for (c, row) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (j, x) in row {
                data[*j] += &(c * x);
            }
        }
        Matrix::from_flat(self.rows, self.cols, self.ring, data)
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.ambient_dim());
        for r in &self.basis {
            e.insert_sparse(r);
        }
        e
    }

    pub fn sum(&self, o: &Self) -> Result<Self> {
        self.check_same_ambient(o)?;
        let mut e = self.echelon();
        for r in &o.basis {
            e.insert_sparse(r);
        }
        Self::from_echelon(self.rows, self.cols, self.ring, e)
    }

    pub fn intersect(&self, o: &Self) -> Result<Self> {
        self.check_same_ambient(o)?;
        let ann = self.echelon().annihilator();
        // Conditions on the coefficients b of Σ bⱼ wⱼ.
        let conds: Vec<Vec<Rational>> = ann
            .iter()
            .map(|a| {
                o.basis
                    .iter()
                    .map(|w| w.iter().fold(Rational::ZERO, |acc, (j, x)| acc + &a[*j] * x))
                    .collect()
            })
            .collect();
        let sols = nullspace(&conds, o.dim());
        let vecs: Vec<Vec<Rational>> = sols
            .iter()
            .map(|b| o.combine(b).map(Matrix::into_data))
            .collect::<Result<_>>()?;
        Self::from_vectors(self.rows, self.cols, self.ring, &vecs)
    }

    pub fn is_subspace_of(&self, o: &Self) -> Result<bool> {
        self.check_same_ambient(o)?;
        let e = o.echelon();
        let n = self.ambient_dim();
        Ok(self.basis.iter().all(|r| {
            let mut d = vec![Rational::ZERO; n];
            for (j, x) in r {
                d[*j] = x.clone();
            }
            e.contains_dense(&d)
        }))
    }
}
