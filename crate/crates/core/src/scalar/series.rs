//! Truncated series over ℚ[t,s]/(t², s²) with coefficients in any ring-like
//! type. Coefficients are stored for the monomials 1, t, s, ts.

use crate::error::{Error, Result};

use super::Scalar;

/// Fallible ring operations shared by scalars and matrices.
pub trait RingElement: Clone + PartialEq {
    fn try_add(&self, o: &Self) -> Result<Self>;
    fn try_sub(&self, o: &Self) -> Result<Self>;
    fn try_mul(&self, o: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Result<Self>;
    fn try_inv(&self) -> Result<Self>;
}

impl RingElement for Scalar {
    fn try_add(&self, o: &Self) -> Result<Self> {
        Scalar::try_add(self, o)
    }
    fn try_sub(&self, o: &Self) -> Result<Self> {
        Scalar::try_sub(self, o)
    }
    fn try_mul(&self, o: &Self) -> Result<Self> {
        Scalar::try_mul(self, o)
    }
    fn neg(&self) -> Self {
        Scalar::neg(self)
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Scalar::zero(self.ring())
    }
    fn one_like(&self) -> Result<Self> {
        Ok(Scalar::one(self.ring()))
    }
    fn try_inv(&self) -> Result<Self> {
        self.inv()
    }
}

/// Monomial indices.
pub const ONE: usize = 0;
pub const T: usize = 1;
pub const S: usize = 2;
pub const TS: usize = 3;

/// a₀ + a₁t + a₂s + a₃ts with t² = s² = 0 and t, s central.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<E> {
    coeffs: [E; 4],
}

impl<E: RingElement> Series<E> {
    pub fn new(c0: E, ct: E, cs: E, cts: E) -> Self {
        Series { coeffs: [c0, ct, cs, cts] }
    }

    pub fn constant(c: E) -> Self {
        let z = c.zero_like();
        Series { coeffs: [c, z.clone(), z.clone(), z] }
    }

    /// `x·t`.
    pub fn t(x: E) -> Self {
        let z = x.zero_like();
        Series { coeffs: [z.clone(), x, z.clone(), z] }
    }

    /// `x·s`.
    pub fn s(x: E) -> Self {
        let z = x.zero_like();
        Series { coeffs: [z.clone(), z.clone(), x, z] }
    }

    pub fn coeff(&self, monomial: usize) -> &E {
        &self.coeffs[monomial]
    }

    pub fn coeffs(&self) -> &[E; 4] {
        &self.coeffs
    }

    pub fn map<F: Fn(&E) -> Result<E>>(&self, f: F) -> Result<Self> {
        Ok(Series {
            coeffs: [f(&self.coeffs[0])?, f(&self.coeffs[1])?, f(&self.coeffs[2])?, f(&self.coeffs[3])?],
        })
    }
}

impl<E: RingElement> RingElement for Series<E> {
    fn try_add(&self, o: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (x, y) in out.coeffs.iter_mut().zip(&o.coeffs) {
            *x = x.try_add(y)?;
        }
        Ok(out)
    }

    fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.neg())
    }

    fn try_mul(&self, o: &Self) -> Result<Self> {
        let (a, b) = (&self.coeffs, &o.coeffs);
        let c0 = a[ONE].try_mul(&b[ONE])?;
        let ct = a[ONE].try_mul(&b[T])?.try_add(&a[T].try_mul(&b[ONE])?)?;
        let cs = a[ONE].try_mul(&b[S])?.try_add(&a[S].try_mul(&b[ONE])?)?;
        let cts = a[ONE]
            .try_mul(&b[TS])?
            .try_add(&a[T].try_mul(&b[S])?)?
            .try_add(&a[S].try_mul(&b[T])?)?
            .try_add(&a[TS].try_mul(&b[ONE])?)?;
        Ok(Series { coeffs: [c0, ct, cs, cts] })
    }

    fn neg(&self) -> Self {
        Series { coeffs: self.coeffs.clone().map(|c| c.neg()) }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RingElement::is_zero)
    }

    fn zero_like(&self) -> Self {
        Series::constant(self.coeffs[0].zero_like())
    }

    fn one_like(&self) -> Result<Self> {
        Ok(Series::constant(self.coeffs[0].one_like()?))
    }

    /// x⁻¹ = Σ_{k≤2} (−c₀⁻¹N)ᵏ c₀⁻¹ with N the nilpotent part.
    fn try_inv(&self) -> Result<Self> {
        let c0_inv = self.coeffs[ONE]
            .try_inv()
            .map_err(|_| Error::NotInvertible("series constant term".into()))?;
        let mut nil = self.clone();
        nil.coeffs[ONE] = nil.coeffs[ONE].zero_like();
        let step = Series::constant(c0_inv.clone()).try_mul(&nil)?.neg();
        let one = self.one_like()?;
        let sum = one.try_add(&step)?.try_add(&step.try_mul(&step)?)?;
        sum.try_mul(&Series::constant(c0_inv))
    }
}
