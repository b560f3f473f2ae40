//! Normal forms of parameters under the Γ-action, with exact witnesses.
//!
//! `rectangular`: `A_nf = g₁·A·g₂ = diag(1,…,1,0,…,0)`.
//! `symmetric`, `hermitian`: `A_nf = g·A·δ(g)ᵗ` diagonal, positive entries
//! first, each nonzero entry reduced to a squarefree integer.
//! `skew`: `A_nf = g·A·gᵗ` a sum of `[[0,1],[−1,0]]` blocks followed by zeros.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::homotope::{gamma_act, TripleSystem};
use crate::involution::MatrixInvolution;
use crate::matrix::{Matrix, Subspace};
use crate::scalar::{BaseInvolution, Rational, Ring, Scalar};

/// Primes tried when splitting off square factors.
const SQUAREFREE_LIMIT: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormalFormKind {
    Rectangular,
    Symmetric,
    Skew,
    Hermitian,
}

impl NormalFormKind {
    pub const ALL: [NormalFormKind; 4] =
        [NormalFormKind::Rectangular, NormalFormKind::Symmetric, NormalFormKind::Skew, NormalFormKind::Hermitian];

    pub fn name(self) -> &'static str {
        match self {
            NormalFormKind::Rectangular => "rectangular",
            NormalFormKind::Symmetric => "symmetric",
            NormalFormKind::Skew => "skew",
            NormalFormKind::Hermitian => "hermitian",
        }
    }

    fn delta(self, ring: Ring) -> BaseInvolution {
        match (self, ring) {
            (NormalFormKind::Hermitian, Ring::QI) => BaseInvolution::Conj,
            _ => BaseInvolution::Identity,
        }
    }
}

impl fmt::Display for NormalFormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NormalFormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| Error::UnknownLabel(s.into()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalForm {
    pub kind: NormalFormKind,
    pub a: Matrix,
    pub a_nf: Matrix,
    /// `A_nf = left·A·right`.
    pub left: Matrix,
    pub right: Matrix,
    pub rank: usize,
    pub signature: Option<Signature>,
}

/// Elementary row and column operations on a working copy.
struct Work {
    m: Matrix,
}

impl Work {
    fn get(&self, i: usize, j: usize) -> Scalar {
        self.m.get(i, j)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.m.cols() {
            let (x, y) = (self.get(a, j), self.get(b, j));
            self.m.set(a, j, &y).expect("in range");
            self.m.set(b, j, &x).expect("in range");
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.m.rows() {
            let (x, y) = (self.get(i, a), self.get(i, b));
            self.m.set(i, a, &y).expect("in range");
            self.m.set(i, b, &x).expect("in range");
        }
    }

    /// row_dst += c·row_src
    fn add_row(&mut self, dst: usize, src: usize, c: &Scalar) -> Result<()> {
        for j in 0..self.m.cols() {
            let v = self.get(dst, j).try_add(&c.try_mul(&self.get(src, j))?)?;
            self.m.set(dst, j, &v)?;
        }
        Ok(())
    }

    /// col_dst += col_src·c
    fn add_col(&mut self, dst: usize, src: usize, c: &Scalar) -> Result<()> {
        for i in 0..self.m.rows() {
            let v = self.get(i, dst).try_add(&self.get(i, src).try_mul(c)?)?;
            self.m.set(i, dst, &v)?;
        }
        Ok(())
    }

    fn scale_row(&mut self, i: usize, c: &Scalar) -> Result<()> {
        for j in 0..self.m.cols() {
            let v = c.try_mul(&self.get(i, j))?;
            self.m.set(i, j, &v)?;
        }
        Ok(())
    }

    fn scale_col(&mut self, j: usize, c: &Scalar) -> Result<()> {
        for i in 0..self.m.rows() {
            let v = self.get(i, j).try_mul(c)?;
            self.m.set(i, j, &v)?;
        }
        Ok(())
    }
}

fn check_ring(a: &Matrix, kind: NormalFormKind) -> Result<()> {
    let ok = match kind {
        NormalFormKind::Rectangular | NormalFormKind::Hermitian => matches!(a.ring(), Ring::Q | Ring::QI),
        NormalFormKind::Symmetric | NormalFormKind::Skew => a.ring() == Ring::Q,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("{kind} normal form over {}", a.ring())))
    }
}

fn check_symmetry(a: &Matrix, kind: NormalFormKind) -> Result<()> {
    if kind == NormalFormKind::Rectangular {
        return Ok(());
    }
    if !a.is_square() {
        return Err(Error::SymmetryClass(format!("{kind} normal form needs a square matrix")));
    }
    let d = a.dagger(kind.delta(a.ring()))?;
    let ok = if kind == NormalFormKind::Skew { d == a.neg() } else { d == *a };
    if ok {
        Ok(())
    } else {
        Err(Error::SymmetryClass(format!("matrix is not {kind}")))
    }
}

pub fn normal_form(a: &Matrix, kind: NormalFormKind) -> Result<NormalForm> {
    check_ring(a, kind)?;
    check_symmetry(a, kind)?;
    match kind {
        NormalFormKind::Rectangular => rectangular(a),
        NormalFormKind::Symmetric | NormalFormKind::Hermitian => congruence_diagonal(a, kind),
        NormalFormKind::Skew => skew(a),
    }
}

fn rectangular(a: &Matrix) -> Result<NormalForm> {
    let (rows, cols, ring) = (a.rows(), a.cols(), a.ring());
    let mut m = Work { m: a.clone() };
    let mut left = Work { m: Matrix::identity(rows, ring) };
    let mut right = Work { m: Matrix::identity(cols, ring) };
    let mut rank = 0;
    while rank < rows.min(cols) {
        let pivot = (rank..rows).flat_map(|i| (rank..cols).map(move |j| (i, j))).find(|&(i, j)| !m.get(i, j).is_zero());
        let Some((i, j)) = pivot else { break };
        let k = rank;
        m.swap_rows(k, i);
        left.swap_rows(k, i);
        m.swap_cols(k, j);
        right.swap_cols(k, j);
        let inv = m.get(k, k).inv()?;
        m.scale_row(k, &inv)?;
        left.scale_row(k, &inv)?;
        for i in 0..rows {
            let c = m.get(i, k);
            if i != k && !c.is_zero() {
                let c = c.neg();
                m.add_row(i, k, &c)?;
                left.add_row(i, k, &c)?;
            }
        }
        for j in 0..cols {
            let c = m.get(k, j);
            if j != k && !c.is_zero() {
                let c = c.neg();
                m.add_col(j, k, &c)?;
                right.add_col(j, k, &c)?;
            }
        }
        rank += 1;
    }
    Ok(NormalForm {
        kind: NormalFormKind::Rectangular,
        a: a.clone(),
        a_nf: m.m,
        left: left.m,
        right: right.m,
        rank,
        signature: None,
    })
}

/// Row operation on `m` mirrored by the δ-adjoint column operation, tracked in `g`.
fn congruence_add(m: &mut Work, g: &mut Work, dst: usize, src: usize, c: &Scalar, delta: BaseInvolution) -> Result<()> {
    m.add_row(dst, src, c)?;
    m.add_col(dst, src, &c.apply(delta)?)?;
    g.add_row(dst, src, c)
}

fn congruence_swap(m: &mut Work, g: &mut Work, a: usize, b: usize) {
    m.swap_rows(a, b);
    m.swap_cols(a, b);
    g.swap_rows(a, b);
}

fn congruence_diagonal(a: &Matrix, kind: NormalFormKind) -> Result<NormalForm> {
    let (n, ring) = (a.rows(), a.ring());
    let delta = kind.delta(ring);
    let mut m = Work { m: a.clone() };
    let mut g = Work { m: Matrix::identity(n, ring) };
    for k in 0..n {
        if m.get(k, k).is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !m.get(i, i).is_zero()) {
                congruence_swap(&mut m, &mut g, k, i);
            } else if let Some(j) = (k + 1..n).find(|&j| !m.get(k, j).is_zero()) {
                // Diagonal k becomes 2·|m_kj|² after row_k += m_kj·row_j.
                let c = m.get(k, j);
                congruence_add(&mut m, &mut g, k, j, &c, delta)?;
            } else {
                continue;
            }
        }
        let inv = m.get(k, k).inv()?;
        for i in k + 1..n {
            let c = m.get(i, k);
            if !c.is_zero() {
                let c = c.try_mul(&inv)?.neg();
                congruence_add(&mut m, &mut g, i, k, &c, delta)?;
            }
        }
    }
    // Reduce each diagonal entry d = u/v to its squarefree class:
    // uv = s²·t gives (v/s)²·d = t.
    for k in 0..n {
        let d = m.get(k, k).components()[0].clone();
        if d.is_zero() {
            continue;
        }
        let (_, s) = Rational::squarefree_split(&(d.numer() * d.denom()), SQUAREFREE_LIMIT);
        let c = Scalar::from_rational(ring, Rational::from_big(d.denom(), s));
        m.scale_row(k, &c)?;
        m.scale_col(k, &c)?;
        g.scale_row(k, &c)?;
    }
    // Positive entries first, then negative, then zeros.
    let class = |w: &Work, k: usize| match w.get(k, k).components()[0].signum() {
        1 => 0,
        -1 => 1,
        _ => 2,
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&k| class(&m, k));
    let mut sorted = Work { m: Matrix::zeros(n, n, ring) };
    let mut g_sorted = Work { m: Matrix::zeros(n, n, ring) };
    for (new, &old) in order.iter().enumerate() {
        sorted.m.set(new, new, &m.get(old, old))?;
        for j in 0..n {
            g_sorted.m.set(new, j, &g.get(old, j))?;
        }
    }
    let count = |c: usize| (0..n).filter(|&k| class(&sorted, k) == c).count();
    let signature = Signature { positive: count(0), negative: count(1), zero: count(2) };
    let right = g_sorted.m.dagger(delta)?;
    Ok(NormalForm {
        kind,
        a: a.clone(),
        a_nf: sorted.m,
        left: g_sorted.m,
        right,
        rank: signature.positive + signature.negative,
        signature: Some(signature),
    })
}

/// Symplectic Gram–Schmidt for the form `B(u, v) = u·A·vᵗ` on row vectors.
fn skew(a: &Matrix) -> Result<NormalForm> {
    let (n, ring) = (a.rows(), a.ring());
    let form = |u: &Matrix, v: &Matrix| -> Result<Scalar> { Ok(u.mul3(a, &v.transpose())?.get(0, 0)) };
    let mut pool: Vec<Matrix> = (0..n).map(|i| Matrix::elementary(1, n, ring, 0, i, 0)).collect();
    let mut rows = Vec::with_capacity(n);
    loop {
        let mut pair = None;
        'search: for i in 0..pool.len() {
            for j in i + 1..pool.len() {
                let b = form(&pool[i], &pool[j])?;
                if !b.is_zero() {
                    pair = Some((i, j, b));
                    break 'search;
                }
            }
        }
        let Some((i, j, b)) = pair else { break };
        let f = pool.remove(j).scale_left(&b.inv()?)?;
        let e = pool.remove(i);
        for w in pool.iter_mut() {
            // w − B(w,f)·e + B(w,e)·f is B-orthogonal to e and f.
            let (wf, we) = (form(w, &f)?, form(w, &e)?);
            *w = w.try_sub(&e.scale_left(&wf)?)?.try_add(&f.scale_left(&we)?)?;
        }
        rows.push(e);
        rows.push(f);
    }
    let rank = rows.len();
    rows.extend(pool);
    let mut g = Matrix::zeros(n, n, ring);
    for (i, r) in rows.iter().enumerate() {
        g.set_block(i, 0, r)?;
    }
    let right = g.transpose();
    let a_nf = g.mul3(a, &right)?;
    Ok(NormalForm { kind: NormalFormKind::Skew, a: a.clone(), a_nf, left: g, right, rank, signature: None })
}

impl NormalForm {
    /// `A_nf = left·A·right`, exactly.
    pub fn verify_identity(&self) -> Result<bool> {
        Ok(self.left.mul3(&self.a, &self.right)? == self.a_nf)
    }

    /// Whether `A_nf` has the shape promised by its kind.
    pub fn is_normal(&self) -> bool {
        let m = &self.a_nf;
        let n = m.rows().min(m.cols());
        let zero_off = |keep: &dyn Fn(usize, usize) -> bool| {
            (0..m.rows()).all(|i| (0..m.cols()).all(|j| keep(i, j) || m.get(i, j).is_zero()))
        };
        match self.kind {
            NormalFormKind::Rectangular => {
                zero_off(&|i, j| i == j)
                    && (0..n).all(|k| {
                        let e = m.get(k, k);
                        if k < self.rank {
                            e == Scalar::one(m.ring())
                        } else {
                            e.is_zero()
                        }
                    })
            }
            NormalFormKind::Symmetric | NormalFormKind::Hermitian => {
                zero_off(&|i, j| i == j)
                    && (0..n).all(|k| {
                        let c = m.get(k, k).components().to_vec();
                        c[1..].iter().all(Rational::is_zero)
                            && (c[0].is_zero() || {
                                let t = c[0].numer();
                                c[0].is_integer()
                                    && Rational::squarefree_split(&t, SQUAREFREE_LIMIT).1 == BigInt::from(1)
                            })
                    })
            }
            NormalFormKind::Skew => {
                let one = Scalar::one(m.ring());
                zero_off(&|i, j| i < self.rank && j < self.rank && i / 2 == j / 2 && i != j)
                    && (0..self.rank / 2).all(|b| m.get(2 * b, 2 * b + 1) == one && m.get(2 * b + 1, 2 * b) == one.neg())
            }
        }
    }

    /// The Γ-action isomorphism between the homotopes of `A_nf` and `A`.
    ///
    /// Rectangular: `X ↦ g₂⁻¹·X·g₁⁻¹` from `(M(p,q), A)` to `(M(p,q), A_nf)`.
    /// Otherwise: `X ↦ δ(g)ᵗ·X·g` from `A_nf` to `A` on both eigenspaces of
    /// `X ↦ δ(X)ᵗ`.
    pub fn verify_isomorphism(&self) -> Result<bool> {
        let ring = self.a.ring();
        if self.kind == NormalFormKind::Rectangular {
            let (q, p) = self.a.shape();
            let space = Subspace::full(p, q, ring);
            let from = TripleSystem::with_param(space.clone(), &self.a)?;
            let to = TripleSystem::with_param(space, &self.a_nf)?;
            let (li, ri) = (self.left.inverse()?, self.right.inverse()?);
            return from.intertwines(&to, |x| ri.mul3(x, &li));
        }
        let n = self.a.rows();
        let tau = MatrixInvolution::standard(n, ring, self.kind.delta(ring))?;
        let phi = MatrixInvolution::conjugation(Matrix::identity(n, ring))?;
        let action = gamma_act(&self.left, &self.a, &tau, &phi)?;
        if action.a_prime != self.a_nf {
            return Ok(false);
        }
        for sign in [1, -1] {
            if !action.verify(&self.a, &tau.eigenspace(sign)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind,
            "ring": self.a.ring(),
            "a": self.a.to_json_value(),
            "a_nf": self.a_nf.to_json_value(),
            "left": self.left.to_json_value(),
            "right": self.right.to_json_value(),
            "rank": self.rank,
            "signature": self.signature,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{MatrixClass, Sampler};

    fn q(n: usize, v: &[i64]) -> Matrix {
        Matrix::from_ints(n, v.len() / n, Ring::Q, v).unwrap()
    }

    fn full_check(nf: &NormalForm) {
        assert!(nf.verify_identity().unwrap(), "{:?}", nf);
        assert!(nf.is_normal(), "{:?}", nf.a_nf);
        assert!(nf.verify_isomorphism().unwrap());
    }

    #[test]
    fn zero_matrix() {
        for kind in [NormalFormKind::Rectangular, NormalFormKind::Symmetric, NormalFormKind::Skew] {
            let nf = normal_form(&Matrix::zeros(2, 2, Ring::Q), kind).unwrap();
            assert!(nf.a_nf.is_zero());
            assert_eq!(nf.left, Matrix::identity(2, Ring::Q));
            full_check(&nf);
        }
    }

    #[test]
    fn hyperbolic_plane() {
        let nf = normal_form(&q(2, &[0, 1, 1, 0]), NormalFormKind::Symmetric).unwrap();
        assert_eq!(nf.signature, Some(Signature { positive: 1, negative: 1, zero: 0 }));
        assert_eq!(nf.a_nf, q(2, &[2, 0, 0, -2]));
        full_check(&nf);
    }

    #[test]
    fn standard_skew_is_fixed() {
        let a = q(2, &[0, 1, -1, 0]);
        let nf = normal_form(&a, NormalFormKind::Skew).unwrap();
        assert_eq!(nf.a_nf, a);
        assert_eq!(nf.left, Matrix::identity(2, Ring::Q));
    }

    #[test]
    fn squares_are_removed() {
        let nf = normal_form(&q(2, &[12, 0, 0, -9]), NormalFormKind::Symmetric).unwrap();
        assert_eq!(nf.a_nf, q(2, &[3, 0, 0, -1]));
    }

    #[test]
    fn errors() {
        assert!(matches!(normal_form(&q(2, &[1, 2, 3, 4]), NormalFormKind::Symmetric), Err(Error::SymmetryClass(_))));
        assert!(matches!(normal_form(&q(2, &[1, 0, 0, 1]), NormalFormKind::Skew), Err(Error::SymmetryClass(_))));
        let qi = Matrix::identity(2, Ring::QI);
        assert!(matches!(normal_form(&qi, NormalFormKind::Skew), Err(Error::Unsupported(_))));
        let hq = Matrix::identity(2, Ring::HQ);
        assert!(matches!(normal_form(&hq, NormalFormKind::Rectangular), Err(Error::Unsupported(_))));
        assert_eq!("skew".parse::<NormalFormKind>().unwrap(), NormalFormKind::Skew);
    }

    #[test]
    fn random_samples() {
        let mut s = Sampler::new(21);
        for i in 0..12 {
            let n = 1 + i % 3;
            let rect = s.parameter(&MatrixClass::full(n, 4 - n), Ring::Q, i).unwrap();
            full_check(&normal_form(&rect, NormalFormKind::Rectangular).unwrap());
            let rect_c = s.parameter(&MatrixClass::full(n, 2), Ring::QI, i).unwrap();
            full_check(&normal_form(&rect_c, NormalFormKind::Rectangular).unwrap());
            let sym = s.parameter(&MatrixClass::sym(n), Ring::Q, i).unwrap();
            full_check(&normal_form(&sym, NormalFormKind::Symmetric).unwrap());
            let asym = s.parameter(&MatrixClass::asym(n + 1), Ring::Q, i).unwrap();
            full_check(&normal_form(&asym, NormalFormKind::Skew).unwrap());
            let herm = s.parameter(&MatrixClass::herm(n, BaseInvolution::Conj), Ring::QI, i).unwrap();
            full_check(&normal_form(&herm, NormalFormKind::Hermitian).unwrap());
        }
    }
}
