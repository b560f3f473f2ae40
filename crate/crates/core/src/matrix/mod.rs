//! Dense matrices over ℚ, ℚ(i) and ℍ_ℚ stored as flat rational components.
//!
//! Entry `(i, j)` occupies components `(i·cols + j)·w .. +w` where `w` is the
//! ring width, so the flattened vector lists entries row-major with the
//! components of each entry adjacent. This order is also the canonical basis
//! order of every matrix space: `E₁₁, i·E₁₁, …, E₁₂, …`.

mod blocks;
mod subspace;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{inv_components, mul_acc, BaseInvolution, Rational, Ring, RingElement, Scalar};

pub use blocks::{block_constant, BlockConstant};
pub use subspace::{nullspace, Echelon, SparseVec, Subspace};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    ring: Ring,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, ring: Ring) -> Self {
        Matrix { rows, cols, ring, data: vec![Rational::ZERO; rows * cols * ring.width()] }
    }

    pub fn identity(n: usize, ring: Ring) -> Self {
        Self::scalar_matrix(n, &Scalar::one(ring))
    }

    /// `s·1ₙ`.
    pub fn scalar_matrix(n: usize, s: &Scalar) -> Self {
        let mut m = Self::zeros(n, n, s.ring());
        for i in 0..n {
            m.entry_mut(i, i).clone_from_slice(s.components());
        }
        m
    }

    /// Matrix with rational integer entries given row-major.
    pub fn from_ints(rows: usize, cols: usize, ring: Ring, vals: &[i64]) -> Result<Self> {
        Self::from_rationals(rows, cols, ring, &vals.iter().map(|&v| Rational::from_int(v)).collect::<Vec<_>>())
    }

    /// Matrix with rational (real) entries given row-major.
    pub fn from_rationals(rows: usize, cols: usize, ring: Ring, vals: &[Rational]) -> Result<Self> {
        if vals.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!("{} values for {rows}x{cols}", vals.len())));
        }
        let mut m = Self::zeros(rows, cols, ring);
        for (k, v) in vals.iter().enumerate() {
            m.data[k * ring.width()] = v.clone();
        }
        Ok(m)
    }

    pub fn from_entries(rows: usize, cols: usize, entries: &[Scalar]) -> Result<Self> {
        let ring = entries.first().map(Scalar::ring).ok_or_else(|| Error::InvalidSize("empty matrix".into()))?;
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!("{} entries for {rows}x{cols}", entries.len())));
        }
        let mut m = Self::zeros(rows, cols, ring);
        for (k, e) in entries.iter().enumerate() {
            if e.ring() != ring {
                return Err(Error::RingMismatch("mixed entry rings".into()));
            }
            let w = ring.width();
            m.data[k * w..(k + 1) * w].clone_from_slice(e.components());
        }
        Ok(m)
    }

    pub fn from_flat(rows: usize, cols: usize, ring: Ring, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols * ring.width() {
            return Err(Error::ShapeMismatch(format!("flat length {} for {rows}x{cols} over {ring}", data.len())));
        }
        Ok(Matrix { rows, cols, ring, data })
    }

    /// `u·E_{ij}` where `u` is the unit with component index `unit`.
    pub fn elementary(rows: usize, cols: usize, ring: Ring, i: usize, j: usize, unit: usize) -> Self {
        let mut m = Self::zeros(rows, cols, ring);
        m.data[(i * cols + j) * ring.width() + unit] = Rational::ONE;
        m
    }

    /// The canonical ℚ-basis of the matrix space in flattening order.
    pub fn elementary_basis(rows: usize, cols: usize, ring: Ring) -> Vec<Matrix> {
        (0..rows * cols * ring.width())
            .map(|k| {
                let mut m = Self::zeros(rows, cols, ring);
                m.data[k] = Rational::ONE;
                m
            })
            .collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// The flattened rational coordinate vector.
    pub fn data(&self) -> &[Rational] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Rational> {
        self.data
    }

    /// ℚ-dimension of the ambient matrix space.
    pub fn flat_len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub(crate) fn entry(&self, i: usize, j: usize) -> &[Rational] {
        let w = self.ring.width();
        let k = (i * self.cols + j) * w;
        &self.data[k..k + w]
    }

    #[inline]
    fn entry_mut(&mut self, i: usize, j: usize) -> &mut [Rational] {
        let w = self.ring.width();
        let k = (i * self.cols + j) * w;
        &mut self.data[k..k + w]
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        Scalar::from_components(self.ring, self.entry(i, j)).expect("entry width matches ring")
    }

    pub fn set(&mut self, i: usize, j: usize, s: &Scalar) -> Result<()> {
        if s.ring() != self.ring {
            return Err(Error::RingMismatch(format!("{} entry in {} matrix", s.ring(), self.ring)));
        }
        if i >= self.rows || j >= self.cols {
            return Err(Error::ShapeMismatch(format!("index ({i},{j}) out of {}x{}", self.rows, self.cols)));
        }
        self.entry_mut(i, j).clone_from_slice(s.components());
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    fn check_same(&self, o: &Self) -> Result<()> {
        if self.ring != o.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, o.ring)));
        }
        if self.shape() != o.shape() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Ok(self.with_data(data))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        Ok(self.with_data(data))
    }

    /// `self += c·o`.
    pub fn add_scaled(&mut self, c: &Rational, o: &Self) -> Result<()> {
        self.check_same(o)?;
        if c.is_zero() {
            return Ok(());
        }
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            if !b.is_zero() {
                *a += &(c * b);
            }
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        self.with_data(self.data.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.with_data(self.data.iter().map(|a| a * r).collect())
    }

    /// `s·X` (left scalar multiplication).
    pub fn scale_left(&self, s: &Scalar) -> Result<Self> {
        self.scalar_matrix_like(s, self.rows)?.matmul(self)
    }

    /// `X·s` (right scalar multiplication).
    pub fn scale_right(&self, s: &Scalar) -> Result<Self> {
        self.matmul(&self.scalar_matrix_like(s, self.cols)?)
    }

    fn scalar_matrix_like(&self, s: &Scalar, n: usize) -> Result<Self> {
        if s.ring() != self.ring {
            return Err(Error::RingMismatch(format!("{} scalar on {} matrix", s.ring(), self.ring)));
        }
        Ok(Self::scalar_matrix(n, s))
    }

    fn with_data(&self, data: Vec<Rational>) -> Self {
        Matrix { rows: self.rows, cols: self.cols, ring: self.ring, data }
    }

    pub fn matmul(&self, o: &Self) -> Result<Self> {
        if self.ring != o.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, o.ring)));
        }
        if self.cols != o.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let ring = self.ring;
        let w = ring.width();
        let mut out = Self::zeros(self.rows, o.cols, ring);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(i, k);
                if a.iter().all(Rational::is_zero) {
                    continue;
                }
                let brow = &o.data[k * o.cols * w..(k + 1) * o.cols * w];
                let orow = &mut out.data[i * o.cols * w..(i + 1) * o.cols * w];
                if w == 1 {
                    let a = &a[0];
                    for (dst, b) in orow.iter_mut().zip(brow) {
                        if !b.is_zero() {
                            *dst += &(a * b);
                        }
                    }
                } else {
                    for j in 0..o.cols {
                        mul_acc(ring, a, &brow[j * w..(j + 1) * w], &mut orow[j * w..(j + 1) * w]);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `X·Y·Z`.
    pub fn mul3(&self, y: &Self, z: &Self) -> Result<Self> {
        self.matmul(y)?.matmul(z)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows, self.ring);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entry_mut(j, i).clone_from_slice(self.entry(i, j));
            }
        }
        out
    }

    /// δ applied to every entry.
    pub fn apply_entrywise(&self, delta: BaseInvolution) -> Result<Self> {
        delta.check(self.ring)?;
        let mut out = self.clone();
        let w = self.ring.width();
        for e in out.data.chunks_mut(w) {
            delta.apply_components(e);
        }
        Ok(out)
    }

    /// δ(X)ᵗ.
    pub fn dagger(&self, delta: BaseInvolution) -> Result<Self> {
        Ok(self.apply_entrywise(delta)?.transpose())
    }

    /// Exact inverse by Gauss–Jordan elimination with left row operations.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!("inverse of {}x{}", self.rows, self.cols)));
        }
        let n = self.rows;
        let ring = self.ring;
        let mut a = self.clone();
        let mut inv = Self::identity(n, ring);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| a.entry(r, col).iter().any(|x| !x.is_zero()))
                .ok_or_else(|| Error::NotInvertible("singular matrix".into()))?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = inv_components(ring, a.entry(col, col)).expect("nonzero pivot");
            a.left_scale_row(col, &p);
            inv.left_scale_row(col, &p);
            for r in 0..n {
                if r == col || a.entry(r, col).iter().all(Rational::is_zero) {
                    continue;
                }
                let f: Vec<Rational> = a.entry(r, col).iter().map(|x| -x).collect();
                a.add_left_multiple(r, col, &f);
                inv.add_left_multiple(r, col, &f);
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        let w = self.ring.width() * self.cols;
        for k in 0..w {
            self.data.swap(r1 * w + k, r2 * w + k);
        }
    }

    fn left_scale_row(&mut self, r: usize, f: &[Rational]) {
        for j in 0..self.cols {
            let mut out = vec![Rational::ZERO; f.len()];
            mul_acc(self.ring, f, self.entry(r, j), &mut out);
            self.entry_mut(r, j).clone_from_slice(&out);
        }
    }

    /// row[dst] += f·row[src].
    fn add_left_multiple(&mut self, dst: usize, src: usize, f: &[Rational]) {
        for j in 0..self.cols {
            let mut acc = self.entry(dst, j).to_vec();
            mul_acc(self.ring, f, self.entry(src, j), &mut acc);
            self.entry_mut(dst, j).clone_from_slice(&acc);
        }
    }

    /// Copies of a rectangular block.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Result<Self> {
        if r0 + rows > self.rows || c0 + cols > self.cols {
            return Err(Error::ShapeMismatch("block out of range".into()));
        }
        let mut out = Self::zeros(rows, cols, self.ring);
        for i in 0..rows {
            for j in 0..cols {
                out.entry_mut(i, j).clone_from_slice(self.entry(r0 + i, c0 + j));
            }
        }
        Ok(out)
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) -> Result<()> {
        if b.ring != self.ring {
            return Err(Error::RingMismatch("block ring".into()));
        }
        if r0 + b.rows > self.rows || c0 + b.cols > self.cols {
            return Err(Error::ShapeMismatch("block out of range".into()));
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.entry_mut(r0 + i, c0 + j).clone_from_slice(b.entry(i, j));
            }
        }
        Ok(())
    }

    /// `[[a, b], [c, d]]` from four compatible blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::ShapeMismatch("incompatible blocks".into()));
        }
        let mut m = Self::zeros(a.rows + c.rows, a.cols + b.cols, a.ring);
        m.set_block(0, 0, a)?;
        m.set_block(0, a.cols, b)?;
        m.set_block(a.rows, 0, c)?;
        m.set_block(a.rows, a.cols, d)?;
        Ok(m)
    }

    /// `diag(a, b)`.
    pub fn block_diag(a: &Self, b: &Self) -> Result<Self> {
        Self::from_blocks(
            a,
            &Self::zeros(a.rows, b.cols, a.ring),
            &Self::zeros(b.rows, a.cols, a.ring),
            b,
        )
    }

    /// Reinterprets the entries in a larger ring.
    pub fn promote(&self, ring: Ring) -> Result<Self> {
        if ring == self.ring {
            return Ok(self.clone());
        }
        let (w0, w1) = (self.ring.width(), ring.width());
        if w1 < w0 {
            return Err(Error::RingMismatch(format!("cannot demote {} to {ring}", self.ring)));
        }
        let mut out = Self::zeros(self.rows, self.cols, ring);
        for (k, e) in self.data.chunks(w0).enumerate() {
            out.data[k * w1..k * w1 + w0].clone_from_slice(e);
        }
        Ok(out)
    }

    /// Real part / component extraction: the ℚ-matrix of component `c`.
    pub fn component(&self, c: usize) -> Result<Self> {
        let w = self.ring.width();
        if c >= w {
            return Err(Error::RingMismatch(format!("component {c} of {}", self.ring)));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            ring: Ring::Q,
            data: self.data.chunks(w).map(|e| e[c].clone()).collect(),
        })
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("matrix serializes")
    }
}

impl RingElement for Matrix {
    fn try_add(&self, o: &Self) -> Result<Self> {
        Matrix::try_add(self, o)
    }
    fn try_sub(&self, o: &Self) -> Result<Self> {
        Matrix::try_sub(self, o)
    }
    fn try_mul(&self, o: &Self) -> Result<Self> {
        self.matmul(o)
    }
    fn neg(&self) -> Self {
        Matrix::neg(self)
    }
    fn is_zero(&self) -> bool {
        Matrix::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Matrix::zeros(self.rows, self.cols, self.ring)
    }
    fn one_like(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("identity of a non-square shape".into()));
        }
        Ok(Matrix::identity(self.rows, self.ring))
    }
    fn try_inv(&self) -> Result<Self> {
        self.inverse()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} {} {}", self.rows, self.cols, self.ring, self)
    }
}

/// Wire format: `{"rows","cols","ring","entries":[[…]]}` with scalar strings.
#[derive(Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub ring: Ring,
    pub entries: Vec<Vec<String>>,
}

impl From<Matrix> for MatrixJson {
    fn from(m: Matrix) -> Self {
        let entries = (0..m.rows)
            .map(|i| (0..m.cols).map(|j| m.get(i, j).to_string()).collect())
            .collect();
        MatrixJson { rows: m.rows, cols: m.cols, ring: m.ring, entries }
    }
}

impl TryFrom<MatrixJson> for Matrix {
    type Error = Error;
    fn try_from(j: MatrixJson) -> Result<Self> {
        if j.rows == 0 || j.cols == 0 {
            return Err(Error::InvalidSize("matrix dimensions must be positive".into()));
        }
        if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
            return Err(Error::ShapeMismatch("entries do not match rows/cols".into()));
        }
        let mut m = Matrix::zeros(j.rows, j.cols, j.ring);
        for (i, row) in j.entries.iter().enumerate() {
            for (k, s) in row.iter().enumerate() {
                m.set(i, k, &Scalar::parse(j.ring, s)?)?;
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, c: i64, d: i64) -> Scalar {
        Scalar::quaternion(a.into(), b.into(), c.into(), d.into())
    }

    #[test]
    fn matmul_examples() {
        let x = Matrix::from_ints(2, 3, Ring::Q, &[1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(Matrix::identity(2, Ring::Q).matmul(&x).unwrap(), x);
        let j = Matrix::from_entries(1, 1, &[q(0, 0, 1, 0)]).unwrap();
        let i = Matrix::from_entries(1, 1, &[q(0, 1, 0, 0)]).unwrap();
        assert_eq!(j.matmul(&i).unwrap(), Matrix::from_entries(1, 1, &[q(0, 0, 0, -1)]).unwrap());
        let e12 = Matrix::elementary(2, 2, Ring::Q, 0, 1, 0);
        let e21 = Matrix::elementary(2, 2, Ring::Q, 1, 0, 0);
        assert_eq!(e12.matmul(&e21).unwrap(), Matrix::elementary(2, 2, Ring::Q, 0, 0, 0));
        assert!(x.matmul(&x).is_err());
        assert!(x.matmul(&Matrix::identity(3, Ring::QI)).is_err());
    }

    #[test]
    fn dagger_examples() {
        let x = Matrix::from_ints(2, 2, Ring::Q, &[1, 2, 3, 4]).unwrap();
        assert_eq!(x.dagger(BaseInvolution::Identity).unwrap(), x.transpose());
        let i = Matrix::from_entries(1, 1, &[Scalar::gaussian(0.into(), 1.into())]).unwrap();
        assert_eq!(i.dagger(BaseInvolution::Conj).unwrap(), i.neg());
        let j = Matrix::from_entries(1, 1, &[q(0, 0, 1, 0)]).unwrap();
        assert_eq!(j.dagger(BaseInvolution::QSplit).unwrap(), j.neg());
        assert!(x.dagger(BaseInvolution::Conj).is_err());
    }

    #[test]
    fn quaternion_inverse() {
        let m = Matrix::from_entries(2, 2, &[q(1, 2, 0, -1), q(0, 1, 1, 0), q(3, 0, 0, 1), q(0, 0, -2, 1)]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv).unwrap(), Matrix::identity(2, Ring::HQ));
        assert_eq!(inv.matmul(&m).unwrap(), Matrix::identity(2, Ring::HQ));
        assert!(Matrix::from_ints(2, 2, Ring::Q, &[1, 2, 2, 4]).unwrap().inverse().is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = Matrix::from_entries(1, 2, &[q(1, -2, 0, 1), q(0, 0, 0, 0)]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":1,"cols":2,"ring":"HQ","entries":[["1-2i+0j+1k","0+0i+0j+0k"]]}"#);
        let back: Matrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<Matrix>(r#"{"rows":1,"cols":2,"ring":"Q","entries":[["1"]]}"#).is_err());
    }

    #[test]
    fn blocks_and_promotion() {
        let a = Matrix::from_ints(1, 1, Ring::Q, &[2]).unwrap();
        let b = Matrix::from_ints(2, 2, Ring::Q, &[1, 2, 3, 4]).unwrap();
        let d = Matrix::block_diag(&a, &b).unwrap();
        assert_eq!(d.block(1, 1, 2, 2).unwrap(), b);
        let p = b.promote(Ring::HQ).unwrap();
        assert_eq!(p.component(0).unwrap(), b);
        assert!(p.component(2).unwrap().is_zero());
    }
}
