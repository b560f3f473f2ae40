//! Triple products of the form T(X, αY, Z) − T(Y, αX, Z).

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{BaseInvolution, Rational};

/// T(a, m, b) = a·m·b + b·m·a.
pub fn t_product(a: &Matrix, m: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.mul3(m, b)?.try_add(&b.mul3(m, a)?)
}

/// A trilinear product evaluated through a linear middle map.
///
/// `middle` is cached once per basis element by [`TripleSystem`](super::TripleSystem).
pub trait TripleProduct: fmt::Debug + Send + Sync {
    fn middle(&self, y: &Matrix) -> Result<Matrix>;

    fn assemble(&self, x: &Matrix, y: &Matrix, z: &Matrix, mid_x: &Matrix, mid_y: &Matrix) -> Result<Matrix> {
        t_product(x, mid_y, z)?.try_sub(&t_product(y, mid_x, z)?)
    }

    fn triple(&self, x: &Matrix, y: &Matrix, z: &Matrix) -> Result<Matrix> {
        self.assemble(x, y, z, &self.middle(x)?, &self.middle(y)?)
    }

    /// `Some(s)` when `assemble` is `s·(T(x, mid_y, z) − T(y, mid_x, z))`.
    fn t_sign(&self) -> Option<Rational> {
        None
    }

    fn describe(&self) -> Value;
}

pub type SharedProduct = Arc<dyn TripleProduct>;

/// What sits between the outer factors of a sandwich map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Core {
    Id,
    Entrywise(BaseInvolution),
    Dagger(BaseInvolution),
}

impl Core {
    fn apply(self, y: &Matrix) -> Result<Matrix> {
        match self {
            Core::Id => Ok(y.clone()),
            Core::Entrywise(d) => y.apply_entrywise(d),
            Core::Dagger(d) => y.dagger(d),
        }
    }

    fn name(self) -> String {
        match self {
            Core::Id => "X".into(),
            Core::Entrywise(BaseInvolution::Identity) => "X".into(),
            Core::Entrywise(d) => format!("{}(X)", d.name()),
            Core::Dagger(BaseInvolution::Identity) => "X^t".into(),
            Core::Dagger(d) => format!("{}(X)^t", d.name()),
        }
    }
}

/// The α-maps of the classification tables.
#[derive(Debug, Clone, PartialEq)]
pub enum AlphaMap {
    Zero,
    /// `sign · L · core(Y) · R`.
    Sandwich { sign: Rational, left: Matrix, core: Core, right: Matrix },
    /// Polarized form on block-diagonal `diag(Y, Y')` with `Y` of shape
    /// `top`: the middle is `diag(first(Y'), second(Y))`.
    Pair { first: Box<AlphaMap>, second: Box<AlphaMap>, top: (usize, usize) },
}

impl AlphaMap {
    /// Y ↦ A·Y·A.
    pub fn param(a: &Matrix) -> Self {
        AlphaMap::sandwich(1, a, Core::Id, a)
    }

    pub fn sandwich(sign: i64, left: &Matrix, core: Core, right: &Matrix) -> Self {
        AlphaMap::Sandwich { sign: Rational::from_int(sign), left: left.clone(), core, right: right.clone() }
    }

    pub fn pair(first: AlphaMap, second: AlphaMap, top: (usize, usize)) -> Self {
        AlphaMap::Pair { first: Box::new(first), second: Box::new(second), top }
    }

    pub fn apply(&self, y: &Matrix) -> Result<Matrix> {
        match self {
            AlphaMap::Zero => Ok(Matrix::zeros(y.cols(), y.rows(), y.ring())),
            AlphaMap::Sandwich { sign, left, core, right } => {
                let m = left.mul3(&core.apply(y)?, right)?;
                Ok(if sign.is_one() { m } else { m.scale(sign) })
            }
            AlphaMap::Pair { first, second, top: (r, s) } => {
                let (r, s) = (*r, *s);
                if y.rows() < r || y.cols() < s {
                    return Err(Error::ShapeMismatch("pair element smaller than its top block".into()));
                }
                let (r2, s2) = (y.rows() - r, y.cols() - s);
                let y1 = y.block(0, 0, r, s)?;
                let y2 = y.block(r, s, r2, s2)?;
                let m1 = first.apply(&y2)?;
                let m2 = second.apply(&y1)?;
                if m1.shape() != (s, r) || m2.shape() != (s2, r2) {
                    return Err(Error::ShapeMismatch("pair α has the wrong block shapes".into()));
                }
                let mut out = Matrix::zeros(s + s2, r + r2, y.ring());
                out.set_block(0, 0, &m1)?;
                out.set_block(s, r, &m2)?;
                Ok(out)
            }
        }
    }

    pub fn negated(&self) -> Self {
        match self {
            AlphaMap::Zero => AlphaMap::Zero,
            AlphaMap::Sandwich { sign, left, core, right } => {
                AlphaMap::Sandwich { sign: -sign, left: left.clone(), core: *core, right: right.clone() }
            }
            AlphaMap::Pair { first, second, top } => AlphaMap::pair(first.negated(), second.negated(), *top),
        }
    }

    pub fn formula(&self) -> String {
        match self {
            AlphaMap::Zero => "0".into(),
            AlphaMap::Sandwich { sign, core, .. } => {
                let s = if *sign == Rational::ONE {
                    String::new()
                } else if *sign == -Rational::ONE {
                    "-".into()
                } else {
                    format!("{sign}·")
                };
                format!("{s}L·{}·R", core.name())
            }
            AlphaMap::Pair { first, second, .. } => format!("({}, {})", first.formula(), second.formula()),
        }
    }
}

impl TripleProduct for AlphaMap {
    fn middle(&self, y: &Matrix) -> Result<Matrix> {
        self.apply(y)
    }

    fn t_sign(&self) -> Option<Rational> {
        Some(Rational::ONE)
    }

    fn describe(&self) -> Value {
        json!({ "product": "alpha", "alpha": self.formula() })
    }
}

/// The product with the opposite sign.
#[derive(Debug, Clone)]
pub struct Negated(pub SharedProduct);

impl TripleProduct for Negated {
    fn middle(&self, y: &Matrix) -> Result<Matrix> {
        self.0.middle(y)
    }

    fn assemble(&self, x: &Matrix, y: &Matrix, z: &Matrix, mid_x: &Matrix, mid_y: &Matrix) -> Result<Matrix> {
        Ok(self.0.assemble(x, y, z, mid_x, mid_y)?.neg())
    }

    fn t_sign(&self) -> Option<Rational> {
        self.0.t_sign().map(|s| -s)
    }

    fn describe(&self) -> Value {
        json!({ "product": "negated", "of": self.0.describe() })
    }
}

/// The associative product X·Y·Z, which is not a Lie triple product.
#[derive(Debug, Clone, Copy)]
pub struct Associative;

impl TripleProduct for Associative {
    fn middle(&self, y: &Matrix) -> Result<Matrix> {
        Ok(y.clone())
    }

    fn assemble(&self, x: &Matrix, _y: &Matrix, z: &Matrix, _mid_x: &Matrix, mid_y: &Matrix) -> Result<Matrix> {
        x.mul3(mid_y, z)
    }

    fn describe(&self) -> Value {
        json!({ "product": "associative" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Ring;

    #[test]
    fn param_is_sandwich() {
        let a = Matrix::from_ints(2, 2, Ring::Q, &[1, 2, 0, 1]).unwrap();
        let y = Matrix::from_ints(2, 2, Ring::Q, &[0, 1, 3, 0]).unwrap();
        let alpha = AlphaMap::param(&a);
        assert_eq!(alpha.apply(&y).unwrap(), a.mul3(&y, &a).unwrap());
        assert_eq!(alpha.negated().apply(&y).unwrap(), a.mul3(&y, &a).unwrap().neg());
        assert_eq!(AlphaMap::Zero.apply(&y).unwrap(), Matrix::zeros(2, 2, Ring::Q));
    }

    #[test]
    fn pair_swaps_blocks() {
        let one = Matrix::identity(1, Ring::Q);
        let two = one.scale(&Rational::from_int(2));
        let alpha = AlphaMap::pair(AlphaMap::param(&one), AlphaMap::param(&two), (1, 1));
        let y = Matrix::from_ints(2, 2, Ring::Q, &[3, 0, 0, 5]).unwrap();
        assert_eq!(alpha.apply(&y).unwrap(), Matrix::from_ints(2, 2, Ring::Q, &[5, 0, 0, 12]).unwrap());
    }

    #[test]
    fn associative_is_xyz() {
        let e = |i, j| Matrix::elementary(2, 2, Ring::Q, i, j, 0);
        let p = Associative.triple(&e(0, 0), &e(0, 1), &e(1, 1)).unwrap();
        assert_eq!(p, e(0, 1));
    }
}
