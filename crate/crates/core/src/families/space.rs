//! Named matrix spaces used as model spaces and parameter sets.

use std::fmt;

use crate::error::{Error, Result};
use crate::involution::MatrixInvolution;
use crate::matrix::{Matrix, Subspace};
use crate::scalar::{BaseInvolution, Ring};

/// `M(rows, cols)` or the ±1-eigenspace of `X ↦ δ(X)ᵗ` on `M(n, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixClass {
    Full { rows: usize, cols: usize },
    Fixed { n: usize, delta: BaseInvolution, sign: i8 },
}

impl MatrixClass {
    pub fn full(rows: usize, cols: usize) -> Self {
        MatrixClass::Full { rows, cols }
    }

    pub fn sym(n: usize) -> Self {
        MatrixClass::Fixed { n, delta: BaseInvolution::Identity, sign: 1 }
    }

    pub fn asym(n: usize) -> Self {
        MatrixClass::Fixed { n, delta: BaseInvolution::Identity, sign: -1 }
    }

    pub fn herm(n: usize, delta: BaseInvolution) -> Self {
        MatrixClass::Fixed { n, delta, sign: 1 }
    }

    pub fn aherm(n: usize, delta: BaseInvolution) -> Self {
        MatrixClass::Fixed { n, delta, sign: -1 }
    }

    pub fn shape(&self) -> (usize, usize) {
        match *self {
            MatrixClass::Full { rows, cols } => (rows, cols),
            MatrixClass::Fixed { n, .. } => (n, n),
        }
    }

    pub fn subspace(&self, ring: Ring) -> Result<Subspace> {
        match *self {
            MatrixClass::Full { rows, cols } => Ok(Subspace::full(rows, cols, ring)),
            MatrixClass::Fixed { n, delta, sign } => {
                if n == 0 {
                    return Ok(Subspace::zero(0, 0, ring));
                }
                MatrixInvolution::standard(n, ring, delta)?.eigenspace(sign)
            }
        }
    }

    pub fn contains(&self, m: &Matrix) -> Result<bool> {
        if m.shape() != self.shape() {
            return Ok(false);
        }
        match *self {
            MatrixClass::Full { .. } => Ok(true),
            MatrixClass::Fixed { delta, sign, .. } => {
                let d = m.dagger(delta)?;
                Ok(if sign > 0 { d == *m } else { d == m.neg() })
            }
        }
    }

    pub fn check(&self, m: &Matrix) -> Result<()> {
        if self.contains(m)? {
            Ok(())
        } else {
            Err(Error::NotInPiece(format!("parameter is not in {self}")))
        }
    }
}

impl fmt::Display for MatrixClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MatrixClass::Full { rows, cols } => write!(f, "M({rows},{cols})"),
            MatrixClass::Fixed { n, delta, sign } => {
                let name = match (delta, sign > 0) {
                    (BaseInvolution::Identity, true) => "Sym",
                    (BaseInvolution::Identity, false) => "Asym",
                    (BaseInvolution::QSplit, true) => "Herm~",
                    (BaseInvolution::QSplit, false) => "Aherm~",
                    (_, true) => "Herm",
                    (_, false) => "Aherm",
                };
                write!(f, "{name}({n})")
            }
        }
    }
}
