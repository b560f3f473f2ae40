//! The Lie algebra m ⊕ span{R(x,y)} attached to a Lie triple system.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Subspace};
use crate::scalar::{Rational, Ring};

use super::system::{Axiom, AxiomReport, TripleSystem};

/// An element `D + x` with `D` an operator on `m` and `x` in basis coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct GElem {
    pub d: Matrix,
    pub x: Vec<Rational>,
}

#[derive(Debug, Clone)]
pub struct StandardImbedding {
    lts: TripleSystem,
    r: Vec<Matrix>,
    h: Subspace,
}

pub fn standard_imbedding(t: &TripleSystem) -> Result<StandardImbedding> {
    let report = t.check_lts();
    if !report.all_pass() {
        let failed: Vec<String> =
            report.0.iter().filter(|r| !r.pass).map(|r| format!("{:?}", r.axiom)).collect();
        return Err(Error::AxiomFailure(failed.join(", ")));
    }
    let d = t.dim();
    let r: Vec<Matrix> = (0..d * d).map(|k| t.r_operator(k / d, k % d)).collect();
    let h = Subspace::span(d, d, Ring::Q, &r)?;
    Ok(StandardImbedding { lts: t.clone(), r, h })
}

impl StandardImbedding {
    pub fn dim_h(&self) -> usize {
        self.h.dim()
    }

    pub fn dim_m(&self) -> usize {
        self.lts.dim()
    }

    pub fn dim(&self) -> usize {
        self.dim_h() + self.dim_m()
    }

    pub fn h(&self) -> &Subspace {
        &self.h
    }

    fn zero_op(&self) -> Matrix {
        let d = self.dim_m();
        Matrix::zeros(d, d, Ring::Q)
    }

    fn r_of(&self, x: &[Rational], y: &[Rational]) -> Result<Matrix> {
        let d = self.dim_m();
        let mut out = self.zero_op();
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                out.add_scaled(&(xi * yj), &self.r[i * d + j])?;
            }
        }
        Ok(out)
    }

    fn apply_op(d: &Matrix, x: &[Rational]) -> Vec<Rational> {
        let n = x.len();
        (0..n)
            .map(|i| {
                let row = &d.data()[i * n..(i + 1) * n];
                row.iter().zip(x).fold(Rational::ZERO, |acc, (a, b)| acc + &(a * b))
            })
            .collect()
    }

    /// Basis: the canonical basis of `h` followed by that of `m`.
    pub fn basis(&self) -> Vec<GElem> {
        let d = self.dim_m();
        let mut out: Vec<GElem> = self
            .h
            .basis_matrices()
            .into_iter()
            .map(|op| GElem { d: op, x: vec![Rational::ZERO; d] })
            .collect();
        for i in 0..d {
            let mut x = vec![Rational::ZERO; d];
            x[i] = Rational::ONE;
            out.push(GElem { d: self.zero_op(), x });
        }
        out
    }

    /// `[D + x, D' + y] = [D, D'] + R(x, y) + D(y) − D'(x)`.
    pub fn bracket(&self, a: &GElem, b: &GElem) -> Result<GElem> {
        let comm = a.d.matmul(&b.d)?.try_sub(&b.d.matmul(&a.d)?)?;
        let d = comm.try_add(&self.r_of(&a.x, &b.x)?)?;
        let dy = Self::apply_op(&a.d, &b.x);
        let dx = Self::apply_op(&b.d, &a.x);
        let x = dy.iter().zip(&dx).map(|(p, q)| p - q).collect();
        Ok(GElem { d, x })
    }

    pub fn sigma(&self, a: &GElem) -> GElem {
        GElem { d: a.d.clone(), x: a.x.iter().map(|v| -v).collect() }
    }

    fn failed(axiom: Axiom, idx: Vec<usize>) -> AxiomReport {
        AxiomReport { axiom, pass: false, witness: Some(super::Witness { indices: idx, matrices: Vec::new() }) }
    }

    /// `[h, h] ⊆ h` on basis pairs.
    pub fn check_closure(&self) -> Result<AxiomReport> {
        let hb = self.h.basis_matrices();
        for (i, p) in hb.iter().enumerate() {
            for (j, q) in hb.iter().enumerate() {
                let c = p.matmul(q)?.try_sub(&q.matmul(p)?)?;
                if !self.h.contains(&c)? {
                    return Ok(Self::failed(Axiom::Closure, vec![i, j]));
                }
            }
        }
        Ok(AxiomReport::passed(Axiom::Closure))
    }

    pub fn check_jacobi(&self) -> Result<AxiomReport> {
        let b = self.basis();
        let n = b.len();
        let mut ab = vec![None; n * n];
        for i in 0..n {
            for j in i + 1..n {
                ab[i * n + j] = Some(self.bracket(&b[i], &b[j])?);
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let ij = ab[i * n + j].as_ref().expect("computed");
                    let jk = ab[j * n + k].as_ref().expect("computed");
                    let ik = ab[i * n + k].as_ref().expect("computed");
                    let p = self.bracket(ij, &b[k])?;
                    let q = self.bracket(jk, &b[i])?;
                    // [[k, i], j] = −[[i, k], j]
                    let r = self.bracket(ik, &b[j])?;
                    let d = p.d.try_add(&q.d)?.try_sub(&r.d)?;
                    let x_zero = (0..p.x.len()).all(|l| (&(&p.x[l] + &q.x[l]) - &r.x[l]).is_zero());
                    if !d.is_zero() || !x_zero {
                        return Ok(Self::failed(Axiom::Jacobi, vec![i, j, k]));
                    }
                }
            }
        }
        Ok(AxiomReport::passed(Axiom::Jacobi))
    }

    /// σ = +1 on h, −1 on m is an automorphism.
    pub fn check_sigma(&self) -> Result<bool> {
        let b = self.basis();
        for p in &b {
            for q in &b {
                if self.sigma(&self.bracket(p, q)?) != self.bracket(&self.sigma(p), &self.sigma(q))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `[[x, y], z]` on m recovers the structure constants of the system.
    pub fn reproduces_lts(&self) -> Result<bool> {
        let d = self.dim_m();
        let unit = |i: usize| {
            let mut v = vec![Rational::ZERO; d];
            v[i] = Rational::ONE;
            GElem { d: self.zero_op(), x: v }
        };
        for x in 0..d {
            for y in 0..d {
                let xy = self.bracket(&unit(x), &unit(y))?;
                for z in 0..d {
                    let r = self.bracket(&xy, &unit(z))?;
                    let mut expect = vec![Rational::ZERO; d];
                    for (m, v) in self.lts.constant(x, y, z) {
                        expect[*m] = v.clone();
                    }
                    if !r.d.is_zero() || r.x != expect {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_and_one_dimensional() {
        let full = Subspace::full(2, 2, Ring::Q);
        let flat = TripleSystem::with_param(full, &Matrix::zeros(2, 2, Ring::Q)).unwrap();
        let s = standard_imbedding(&flat).unwrap();
        assert_eq!((s.dim_h(), s.dim_m()), (0, 4));
        assert!(s.check_jacobi().unwrap().pass);
        let one = TripleSystem::with_param(Subspace::full(1, 1, Ring::Q), &Matrix::identity(1, Ring::Q)).unwrap();
        assert_eq!(standard_imbedding(&one).unwrap().dim_h(), 0);
    }

    #[test]
    fn gl2_group_case() {
        let t = TripleSystem::with_param(Subspace::full(2, 2, Ring::Q), &Matrix::identity(2, Ring::Q)).unwrap();
        let s = standard_imbedding(&t).unwrap();
        // Inner derivations of gl(2) as a triple system are ad([X,Y]), i.e. ad(sl(2)).
        assert_eq!(s.dim_h(), 3);
        assert!(s.check_closure().unwrap().pass);
        assert!(s.check_jacobi().unwrap().pass);
        assert!(s.check_sigma().unwrap());
        assert!(s.reproduces_lts().unwrap());
    }

    #[test]
    fn rejects_non_lts() {
        let t = TripleSystem::new(Subspace::full(2, 2, Ring::Q), std::sync::Arc::new(super::super::Associative)).unwrap();
        assert!(matches!(standard_imbedding(&t), Err(Error::AxiomFailure(_))));
    }
}
