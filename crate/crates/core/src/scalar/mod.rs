//! Exact scalars over ℚ, ℚ(i) and the rational quaternions, their base
//! involutions, and a truncated two-variable series extension.

mod rational;
pub mod series;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use rational::Rational;
pub use series::{RingElement, Series};

/// Base ring tag. Components are stored over ℚ in the basis (1), (1, i) or
/// (1, i, j, k).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ring {
    Q,
    QI,
    HQ,
}

impl Ring {
    /// Number of rational components per entry.
    pub const fn width(self) -> usize {
        match self {
            Ring::Q => 1,
            Ring::QI => 2,
            Ring::HQ => 4,
        }
    }

    pub fn is_commutative(self) -> bool {
        !matches!(self, Ring::HQ)
    }

    pub fn name(self) -> &'static str {
        match self {
            Ring::Q => "Q",
            Ring::QI => "QI",
            Ring::HQ => "HQ",
        }
    }

    /// Symbols of the imaginary units, in component order.
    fn units(self) -> &'static [char] {
        match self {
            Ring::Q => &[],
            Ring::QI => &['i'],
            Ring::HQ => &['i', 'j', 'k'],
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Ring {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Q" => Ok(Ring::Q),
            "QI" => Ok(Ring::QI),
            "HQ" => Ok(Ring::HQ),
            _ => Err(Error::Parse(format!("unknown ring `{s}`"))),
        }
    }
}

/// Additive involutions of the base rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseInvolution {
    Identity,
    /// Complex conjugation on ℚ(i).
    Conj,
    /// a+bi+cj+dk ↦ a−bi−cj−dk.
    QConj,
    /// λ ↦ j·conj(λ)·j⁻¹, i.e. a+bi+cj+dk ↦ a+bi−cj+dk.
    QSplit,
}

impl BaseInvolution {
    pub fn name(self) -> &'static str {
        match self {
            BaseInvolution::Identity => "id",
            BaseInvolution::Conj => "conj",
            BaseInvolution::QConj => "qconj",
            BaseInvolution::QSplit => "qsplit",
        }
    }

    pub fn applies_to(self, ring: Ring) -> bool {
        match self {
            BaseInvolution::Identity => true,
            BaseInvolution::Conj => ring == Ring::QI,
            BaseInvolution::QConj | BaseInvolution::QSplit => ring == Ring::HQ,
        }
    }

    pub fn check(self, ring: Ring) -> Result<()> {
        if self.applies_to(ring) {
            Ok(())
        } else {
            Err(Error::InvolutionMismatch(self.name().into(), ring.name().into()))
        }
    }

    /// Whether δ reverses products (true only for the quaternionic kinds).
    pub fn reverses_products(self) -> bool {
        matches!(self, BaseInvolution::QConj | BaseInvolution::QSplit)
    }

    /// Applies δ in place to the rational components of one entry.
    #[inline]
    pub(crate) fn apply_components(self, c: &mut [Rational]) {
        match self {
            BaseInvolution::Identity => {}
            BaseInvolution::Conj => c[1] = -&c[1],
            BaseInvolution::QConj => {
                for x in &mut c[1..4] {
                    *x = -&*x;
                }
            }
            BaseInvolution::QSplit => c[2] = -&c[2],
        }
    }
}

impl FromStr for BaseInvolution {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "id" => Ok(BaseInvolution::Identity),
            "conj" => Ok(BaseInvolution::Conj),
            "qconj" => Ok(BaseInvolution::QConj),
            "qsplit" => Ok(BaseInvolution::QSplit),
            _ => Err(Error::Parse(format!("unknown base involution `{s}`"))),
        }
    }
}

/// `out += a·b` on component slices of the given ring.
#[inline]
pub(crate) fn mul_acc(ring: Ring, a: &[Rational], b: &[Rational], out: &mut [Rational]) {
    match ring {
        Ring::Q => {
            if !b[0].is_zero() {
                out[0] += &(&a[0] * &b[0]);
            }
        }
        Ring::QI => {
            let (x, y, u, v) = (&a[0], &a[1], &b[0], &b[1]);
            out[0] += &(&(x * u) - &(y * v));
            out[1] += &(&(x * v) + &(y * u));
        }
        Ring::HQ => {
            let (a1, b1, c1, d1) = (&a[0], &a[1], &a[2], &a[3]);
            let (a2, b2, c2, d2) = (&b[0], &b[1], &b[2], &b[3]);
            if a2.is_zero() && b2.is_zero() && c2.is_zero() && d2.is_zero() {
                return;
            }
            out[0] += &(&(&(a1 * a2) - &(b1 * b2)) - &(&(c1 * c2) + &(d1 * d2)));
            out[1] += &(&(&(a1 * b2) + &(b1 * a2)) + &(&(c1 * d2) - &(d1 * c2)));
            out[2] += &(&(&(a1 * c2) - &(b1 * d2)) + &(&(c1 * a2) + &(d1 * b2)));
            out[3] += &(&(&(a1 * d2) + &(b1 * c2)) - &(&(c1 * b2) - &(d1 * a2)));
        }
    }
}

/// Inverse of one nonzero entry given as components.
pub(crate) fn inv_components(ring: Ring, a: &[Rational]) -> Option<Vec<Rational>> {
    let norm = a.iter().fold(Rational::ZERO, |acc, x| acc + x * x);
    let inv = norm.recip()?;
    let mut out: Vec<Rational> = a.iter().map(|x| x * &inv).collect();
    if ring != Ring::Q {
        for x in &mut out[1..] {
            *x = -&*x;
        }
    }
    Some(out)
}

/// An exact element of ℚ, ℚ(i) or ℍ_ℚ, tagged with its ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    ring: Ring,
    c: [Rational; 4],
}

impl Scalar {
    pub fn zero(ring: Ring) -> Self {
        Scalar { ring, c: Default::default() }
    }

    pub fn one(ring: Ring) -> Self {
        Self::from_rational(ring, Rational::ONE)
    }

    pub fn from_rational(ring: Ring, r: Rational) -> Self {
        let mut s = Self::zero(ring);
        s.c[0] = r;
        s
    }

    pub fn int(ring: Ring, n: i64) -> Self {
        Self::from_rational(ring, Rational::from_int(n))
    }

    pub fn rational(r: Rational) -> Self {
        Self::from_rational(Ring::Q, r)
    }

    pub fn gaussian(a: Rational, b: Rational) -> Self {
        Scalar { ring: Ring::QI, c: [a, b, Rational::ZERO, Rational::ZERO] }
    }

    pub fn quaternion(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Scalar { ring: Ring::HQ, c: [a, b, c, d] }
    }

    /// Builds a scalar from its rational components (length = ring width).
    pub fn from_components(ring: Ring, comps: &[Rational]) -> Result<Self> {
        if comps.len() != ring.width() {
            return Err(Error::ShapeMismatch(format!(
                "{} components for ring {ring}",
                comps.len()
            )));
        }
        let mut s = Self::zero(ring);
        s.c[..comps.len()].clone_from_slice(comps);
        Ok(s)
    }

    /// The imaginary unit with index `u` (1 = i, 2 = j, 3 = k).
    pub fn unit(ring: Ring, u: usize) -> Result<Self> {
        if u >= ring.width() {
            return Err(Error::RingMismatch(format!("unit {u} not in {ring}")));
        }
        let mut s = Self::zero(ring);
        s.c[u] = Rational::ONE;
        Ok(s)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn components(&self) -> &[Rational] {
        &self.c[..self.ring.width()]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Rational::is_zero)
    }

    /// Reinterprets this scalar in a larger ring (ℚ ⊂ ℚ(i) ⊂ ℍ_ℚ with i ↦ i).
    pub fn promote(&self, ring: Ring) -> Result<Self> {
        if ring.width() < self.ring.width() {
            return Err(Error::RingMismatch(format!("cannot demote {} to {ring}", self.ring)));
        }
        Ok(Scalar { ring, c: self.c.clone() })
    }

    fn same_ring(&self, o: &Self) -> Result<()> {
        if self.ring == o.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{} vs {}", self.ring, o.ring)))
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.same_ring(o)?;
        let mut s = self.clone();
        for (x, y) in s.c.iter_mut().zip(&o.c) {
            *x += y;
        }
        Ok(s)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.neg())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.same_ring(o)?;
        let mut s = Self::zero(self.ring);
        mul_acc(self.ring, &self.c, &o.c, &mut s.c);
        Ok(s)
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for x in &mut s.c {
            *x = -&*x;
        }
        s
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut s = self.clone();
        for x in &mut s.c {
            *x = &*x * r;
        }
        s
    }

    pub fn inv(&self) -> Result<Self> {
        let comps = inv_components(self.ring, self.components())
            .ok_or_else(|| Error::NotInvertible("zero scalar".into()))?;
        Self::from_components(self.ring, &comps)
    }

    pub fn apply(&self, delta: BaseInvolution) -> Result<Self> {
        delta.check(self.ring)?;
        let mut s = self.clone();
        delta.apply_components(&mut s.c);
        Ok(s)
    }

    /// Reduced norm: the sum of squared components.
    pub fn norm(&self) -> Rational {
        self.c.iter().fold(Rational::ZERO, |acc, x| acc + x * x)
    }
}

/// a−bi−cj−dk.
pub fn quat_conj(q: &Scalar) -> Result<Scalar> {
    q.apply(BaseInvolution::QConj)
}

/// j·conj(q)·j⁻¹.
pub fn quat_split(q: &Scalar) -> Result<Scalar> {
    q.apply(BaseInvolution::QSplit)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.c[0])?;
        for (x, u) in self.c[1..self.ring.width()].iter().zip(self.ring.units()) {
            if x.signum() < 0 {
                write!(f, "-{}{u}", x.abs())?;
            } else {
                write!(f, "+{x}{u}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Scalar {
    /// Parses signed terms such as `-1/2`, `3/4i`, `j`, `-k` in any order.
    pub fn parse(ring: Ring, s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("invalid {ring} scalar `{s}`: {why}"));
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(bad("empty"));
        }
        let mut out = Self::zero(ring);
        let mut seen = [false; 4];
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0;
        while pos < chars.len() {
            let mut neg = false;
            if chars[pos] == '+' || chars[pos] == '-' {
                neg = chars[pos] == '-';
                pos += 1;
            } else if pos > 0 {
                return Err(bad("missing sign between terms"));
            }
            let start = pos;
            while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '/') {
                pos += 1;
            }
            let number: String = chars[start..pos].iter().collect();
            let unit = match chars.get(pos) {
                Some(&c) if c.is_ascii_alphabetic() => {
                    pos += 1;
                    match ring.units().iter().position(|&u| u == c) {
                        Some(i) => i + 1,
                        None => return Err(bad("unknown unit")),
                    }
                }
                _ => 0,
            };
            let mut value = if number.is_empty() {
                if unit == 0 {
                    return Err(bad("dangling sign"));
                }
                Rational::ONE
            } else {
                number.parse::<Rational>().map_err(|_| bad("malformed number"))?
            };
            if neg {
                value = -value;
            }
            if seen[unit] {
                return Err(bad("repeated component"));
            }
            seen[unit] = true;
            out.c[unit] = value;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, c: i64, d: i64) -> Scalar {
        Scalar::quaternion(a.into(), b.into(), c.into(), d.into())
    }

    #[test]
    fn quaternion_table() {
        let (i, j, k) = (q(0, 1, 0, 0), q(0, 0, 1, 0), q(0, 0, 0, 1));
        assert_eq!(i.try_mul(&j).unwrap(), k);
        assert_eq!(j.try_mul(&k).unwrap(), i);
        assert_eq!(k.try_mul(&i).unwrap(), j);
        assert_eq!(j.try_mul(&i).unwrap(), k.neg());
        assert_eq!(i.try_mul(&i).unwrap(), q(-1, 0, 0, 0));
    }

    #[test]
    fn conj_examples() {
        assert_eq!(quat_conj(&q(1, 0, 0, 0)).unwrap(), q(1, 0, 0, 0));
        assert_eq!(quat_conj(&q(0, 1, 0, 0)).unwrap(), q(0, -1, 0, 0));
        assert_eq!(quat_conj(&q(1, 2, 3, 4)).unwrap(), q(1, -2, -3, -4));
    }

    #[test]
    fn split_matches_definition() {
        let j = q(0, 0, 1, 0);
        let jinv = j.inv().unwrap();
        for x in [q(1, 0, 0, 0), q(0, 1, 0, 0), q(0, 0, 1, 0), q(0, 0, 0, 1), q(1, -2, 3, 5)] {
            let direct = j.try_mul(&quat_conj(&x).unwrap()).unwrap().try_mul(&jinv).unwrap();
            assert_eq!(quat_split(&x).unwrap(), direct);
        }
        assert_eq!(quat_split(&j).unwrap(), j.neg());
    }

    #[test]
    fn involution_ring_checks() {
        assert!(Scalar::int(Ring::Q, 1).apply(BaseInvolution::Conj).is_err());
        assert!(Scalar::int(Ring::QI, 1).apply(BaseInvolution::QSplit).is_err());
        assert!(Scalar::int(Ring::HQ, 1).apply(BaseInvolution::Identity).is_ok());
    }

    #[test]
    fn parse_and_format() {
        let s = Scalar::parse(Ring::HQ, "1+2i+3j+4k").unwrap();
        assert_eq!(s, q(1, 2, 3, 4));
        assert_eq!(s.to_string(), "1+2i+3j+4k");
        let g = Scalar::parse(Ring::QI, "-1/2i+3/4").unwrap();
        assert_eq!(g.to_string(), "3/4-1/2i");
        assert_eq!(Scalar::parse(Ring::QI, "i").unwrap(), Scalar::unit(Ring::QI, 1).unwrap());
        assert_eq!(Scalar::parse(Ring::Q, "-7/3").unwrap().to_string(), "-7/3");
        for bad in ["", "1+", "2j", "1i2", "i+i", "x"] {
            assert!(Scalar::parse(Ring::QI, bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn inverse() {
        let x = q(1, -2, 3, 1);
        let one = x.try_mul(&x.inv().unwrap()).unwrap();
        assert_eq!(one, Scalar::one(Ring::HQ));
        assert!(Scalar::zero(Ring::QI).inv().is_err());
    }

    #[test]
    fn ring_mismatch() {
        assert!(Scalar::one(Ring::Q).try_add(&Scalar::one(Ring::QI)).is_err());
    }
}
