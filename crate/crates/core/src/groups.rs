//! The deformed groups `G_A ⊇ U_A, S_A` with law `X·_A Y = X + Y − X·A·Y`.
//!
//! `X ∈ M(p,q)`, `A ∈ M(q,p)`; `X ∈ G_A` iff `1 − X·A` is invertible, and
//! `j_A(X) = −(1 − X·A)⁻¹·X` is the inverse. With an antiinvolution `*`:
//! `U_A = {X* + X = X*·A·X}` for `A* = A` and `S_A = {X* − X = X*·A·X}` for
//! `A* = −A`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::families::Sampler;
use crate::homotope::{bracket_a, HomotopeParameter};
use crate::involution::MatrixInvolution;
use crate::matrix::Matrix;
use crate::scalar::series::{ONE, S, T, TS};
use crate::scalar::{BaseInvolution, Rational, Ring, RingElement, Series};

/// `x + y − x·a·y` in any ring-like type.
pub fn law<E: RingElement>(x: &E, y: &E, a: &E) -> Result<E> {
    x.try_add(y)?.try_sub(&x.try_mul(a)?.try_mul(y)?)
}

/// `−(1 − x·a)⁻¹·x`, with `one` the identity of the `x·a` ring.
pub fn law_inverse<E: RingElement>(x: &E, a: &E, one: &E) -> Result<E> {
    Ok(one.try_sub(&x.try_mul(a)?)?.try_inv()?.try_mul(x)?.neg())
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    x: Matrix,
    a: HomotopeParameter,
    /// `(1 − X·A)⁻¹`
    inv_witness: Matrix,
}

fn one_minus_xa(x: &Matrix, a: &Matrix) -> Result<Matrix> {
    if x.cols() != a.rows() || x.rows() != a.cols() {
        return Err(Error::ShapeMismatch(format!(
            "X is {}x{} but A is {}x{}",
            x.rows(),
            x.cols(),
            a.rows(),
            a.cols()
        )));
    }
    Matrix::identity(x.rows(), x.ring()).try_sub(&x.matmul(a)?)
}

impl GroupElement {
    /// Fails with `NotInvertible` when `1 − X·A` is singular.
    pub fn new(x: Matrix, a: HomotopeParameter) -> Result<Self> {
        let m = one_minus_xa(&x, a.matrix())?;
        let inv_witness = m.inverse()?;
        let id = Matrix::identity(m.rows(), m.ring());
        if m.matmul(&inv_witness)? != id || inv_witness.matmul(&m)? != id {
            return Err(Error::NotInvertible("1 − XA".into()));
        }
        Ok(GroupElement { x, a, inv_witness })
    }

    pub fn identity(a: HomotopeParameter) -> Self {
        let m = a.matrix();
        let x = Matrix::zeros(m.cols(), m.rows(), m.ring());
        let inv_witness = Matrix::identity(m.cols(), m.ring());
        GroupElement { x, a, inv_witness }
    }

    pub fn x(&self) -> &Matrix {
        &self.x
    }

    pub fn a(&self) -> &Matrix {
        self.a.matrix()
    }

    pub fn inv_witness(&self) -> &Matrix {
        &self.inv_witness
    }

    fn same_group(&self, o: &Self) -> Result<()> {
        if self.a() != o.a() {
            return Err(Error::NotInPiece("elements belong to different parameters".into()));
        }
        Ok(())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_group(o)?;
        let z = law(&self.x, &o.x, self.a())?;
        let g = GroupElement::new(z, self.a.clone());
        assert!(g.is_ok(), "G_A is closed under its law");
        g
    }

    pub fn inv(&self) -> Result<Self> {
        let j = self.inv_witness.matmul(&self.x)?.neg();
        GroupElement::new(j, self.a.clone())
    }

    /// `1 − A·X`, a homomorphism into the ordinary matrix group.
    pub fn linear_image(&self) -> Result<Matrix> {
        Matrix::identity(self.a().rows(), self.x.ring()).try_sub(&self.a().matmul(&self.x)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GroupKind {
    G,
    U,
    S,
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "G" | "g" => Ok(GroupKind::G),
            "U" | "u" => Ok(GroupKind::U),
            "S" | "s" => Ok(GroupKind::S),
            _ => Err(Error::UnknownLabel(s.into())),
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

fn check_parameter<'t>(a: &Matrix, kind: GroupKind, tau: Option<&'t MatrixInvolution>) -> Result<Option<&'t MatrixInvolution>> {
    if kind == GroupKind::G {
        return Ok(None);
    }
    let tau = tau.ok_or_else(|| Error::Unsupported(format!("{kind}_A needs an antiinvolution")))?;
    if !tau.is_anti() {
        return Err(Error::NotInvolution("U_A and S_A need an antiinvolution".into()));
    }
    let ta = tau.apply(a)?;
    let ok = if kind == GroupKind::U { ta == *a } else { ta == a.neg() };
    if !ok {
        return Err(Error::SymmetryClass(format!("{kind}_A needs τ(A) = {}A", if kind == GroupKind::U { "" } else { "−" })));
    }
    Ok(Some(tau))
}

fn equation(x: &Matrix, a: &Matrix, kind: GroupKind, tau: Option<&MatrixInvolution>, right: bool) -> Result<bool> {
    if one_minus_xa(x, a)?.inverse().is_err() {
        return Ok(false);
    }
    if kind == GroupKind::G {
        return Ok(true);
    }
    let tau = tau.ok_or_else(|| Error::Unsupported(format!("{kind}_A needs an antiinvolution")))?;
    let xs = tau.apply(x)?;
    let lhs = if kind == GroupKind::U { xs.try_add(x)? } else { xs.try_sub(x)? };
    let rhs = if right { x.mul3(a, &xs)? } else { xs.mul3(a, x)? };
    Ok(lhs == rhs)
}

/// Whether `1 − X·A` is invertible and `X* ± X = X*·A·X` holds, without
/// checking the symmetry of `A`.
pub fn satisfies_equation(x: &Matrix, a: &Matrix, kind: GroupKind, tau: Option<&MatrixInvolution>) -> Result<bool> {
    equation(x, a, kind, tau, false)
}

/// Membership in `G_A`, `U_A` or `S_A` in the form `X* ± X = X*·A·X`.
pub fn membership(x: &Matrix, a: &Matrix, kind: GroupKind, tau: Option<&MatrixInvolution>) -> Result<bool> {
    let tau = check_parameter(a, kind, tau)?;
    equation(x, a, kind, tau, false)
}

/// The equivalent form `X* ± X = X·A·X*`.
pub fn membership_right_form(x: &Matrix, a: &Matrix, kind: GroupKind, tau: Option<&MatrixInvolution>) -> Result<bool> {
    let tau = check_parameter(a, kind, tau)?;
    equation(x, a, kind, tau, true)
}

/// `Z·(1 + ½·A·Z)⁻¹`: an element of `U_A` for `Z* = −Z`, of `S_A` for `Z* = Z`.
pub fn cayley(z: &Matrix, a: &Matrix) -> Result<Matrix> {
    let half = Rational::new(1, 2);
    let m = Matrix::identity(a.rows(), z.ring()).try_add(&a.matmul(z)?.scale(&half))?;
    z.matmul(&m.inverse()?)
}

/// The group commutator `x·y·x⁻¹·y⁻¹` of `x = tX`, `y = sY` in
/// `ℚ[t,s]/(t², s²)`; its `ts`-coefficient is `−[X,Y]_A`.
pub fn series_commutator(x: &Matrix, y: &Matrix, a: &Matrix) -> Result<Series<Matrix>> {
    let one = Series::constant(Matrix::identity(x.rows(), x.ring()));
    let sa = Series::constant(a.clone());
    let sx = Series::t(x.clone());
    let sy = Series::s(y.clone());
    let xi = law_inverse(&sx, &sa, &one)?;
    let yi = law_inverse(&sy, &sa, &one)?;
    let xy = law(&sx, &sy, &sa)?;
    law(&law(&xy, &xi, &sa)?, &yi, &sa)
}

pub fn tangent_check(x: &Matrix, y: &Matrix, a: &Matrix) -> Result<bool> {
    let c = series_commutator(x, y, a)?;
    let flat = [ONE, T, S].iter().all(|&m| c.coeff(m).is_zero());
    Ok(flat && *c.coeff(TS) == bracket_a(x, y, a)?.neg())
}

/// The `U_A` defect `(tX)* + tX − (tX)*·A·(tX)` in `ℚ[t]/(t²)`; zero exactly
/// when `X* = −X`.
pub fn u_linearization_defect(x: &Matrix, a: &Matrix, tau: &MatrixInvolution) -> Result<Series<Matrix>> {
    let sx = Series::t(x.clone());
    let sxs = sx.map(|m| tau.apply(m))?;
    let sa = Series::constant(a.clone());
    sxs.try_add(&sx)?.try_sub(&sxs.try_mul(&sa)?.try_mul(&sx)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupCheck {
    Axioms,
    Homomorphism,
    Tangent,
    Membership,
    Linearization,
    All,
}

impl GroupCheck {
    pub const EACH: [GroupCheck; 5] =
        [GroupCheck::Axioms, GroupCheck::Homomorphism, GroupCheck::Tangent, GroupCheck::Membership, GroupCheck::Linearization];

    pub fn name(self) -> &'static str {
        match self {
            GroupCheck::Axioms => "axioms",
            GroupCheck::Homomorphism => "homomorphism",
            GroupCheck::Tangent => "tangent",
            GroupCheck::Membership => "membership",
            GroupCheck::Linearization => "linearization",
            GroupCheck::All => "all",
        }
    }
}

impl FromStr for GroupCheck {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::EACH
            .into_iter()
            .chain([GroupCheck::All])
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownLabel(s.into()))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckTally {
    pub check: GroupCheck,
    pub trials: usize,
    pub passed: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupReport {
    pub n: usize,
    pub ring: Ring,
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<CheckTally>,
}

impl GroupReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.failures.is_empty())
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!(self);
        v["all_pass"] = json!(self.all_pass());
        v
    }
}

fn delta_for(ring: Ring) -> BaseInvolution {
    if ring == Ring::QI {
        BaseInvolution::Conj
    } else {
        BaseInvolution::Identity
    }
}

/// An element of `G_A`, resampling until `1 − X·A` is invertible.
fn sample_element(s: &mut Sampler, a: &HomotopeParameter, n: usize, ring: Ring) -> GroupElement {
    loop {
        if let Ok(g) = GroupElement::new(s.matrix(n, n, ring), a.clone()) {
            return g;
        }
    }
}

/// A Cayley element of `U_A` (`sign = 1`) or `S_A` (`sign = −1`).
fn sample_member(s: &mut Sampler, a: &Matrix, tau: &MatrixInvolution, sign: i8) -> Result<Matrix> {
    let space = tau.eigenspace(-sign)?;
    loop {
        let z = s.in_space(&space);
        if let Ok(x) = cayley(&z, a) {
            if one_minus_xa(&x, a)?.inverse().is_ok() {
                return Ok(x);
            }
        }
    }
}

fn run_one(check: GroupCheck, n: usize, ring: Ring, samples: usize, s: &mut Sampler) -> Result<CheckTally> {
    let mut tally = CheckTally { check, trials: 0, passed: 0, failures: Vec::new() };
    let tau = MatrixInvolution::standard(n, ring, delta_for(ring))?;
    for k in 0..samples {
        let raw = if k == 0 { Matrix::zeros(n, n, ring) } else { s.matrix(n, n, ring) };
        let a = HomotopeParameter::arbitrary(raw.clone());
        let mut fails = Vec::new();
        match check {
            GroupCheck::Axioms => {
                let (x, y, z) = (sample_element(s, &a, n, ring), sample_element(s, &a, n, ring), sample_element(s, &a, n, ring));
                let e = GroupElement::identity(a.clone());
                if x.mul(&y)?.mul(&z)? != x.mul(&y.mul(&z)?)? {
                    fails.push("associativity");
                }
                if x.mul(&e)? != x || e.mul(&x)? != x {
                    fails.push("identity");
                }
                let xi = x.inv()?;
                if x.mul(&xi)? != e || xi.mul(&x)? != e {
                    fails.push("inverse");
                }
            }
            GroupCheck::Homomorphism => {
                let (x, y) = (sample_element(s, &a, n, ring), sample_element(s, &a, n, ring));
                if x.mul(&y)?.linear_image()? != x.linear_image()?.matmul(&y.linear_image()?)? {
                    fails.push("1 − A(x·y) = (1 − Ax)(1 − Ay)");
                }
            }
            GroupCheck::Tangent => {
                let (x, y) = (s.matrix(n, n, ring), s.matrix(n, n, ring));
                if !tangent_check(&x, &y, &raw)? {
                    fails.push("ts-coefficient of the commutator");
                }
            }
            GroupCheck::Membership => {
                for (kind, sign) in [(GroupKind::U, 1i8), (GroupKind::S, -1)] {
                    let a = s.in_space(&tau.eigenspace(sign)?);
                    let p = HomotopeParameter::arbitrary(a.clone());
                    let x = sample_member(s, &a, &tau, sign)?;
                    let y = sample_member(s, &a, &tau, sign)?;
                    if !membership(&x, &a, kind, Some(&tau))? || !membership_right_form(&x, &a, kind, Some(&tau))? {
                        fails.push(if kind == GroupKind::U { "U_A sample" } else { "S_A sample" });
                        continue;
                    }
                    let (gx, gy) = (GroupElement::new(x, p.clone())?, GroupElement::new(y, p)?);
                    let prod = gx.mul(&gy)?;
                    let inv = gx.inv()?;
                    if !membership(prod.x(), &a, kind, Some(&tau))? || !membership(inv.x(), &a, kind, Some(&tau))? {
                        fails.push(if kind == GroupKind::U { "U_A closure" } else { "S_A closure" });
                    }
                    let jx = inv.x().clone();
                    let xs = tau.apply(gx.x())?;
                    let expect = if kind == GroupKind::U { xs } else { xs.neg() };
                    if jx != expect {
                        fails.push("j_A(X) = ±X*");
                    }
                }
            }
            GroupCheck::Linearization => {
                let a = s.in_space(&tau.eigenspace(1)?);
                let x = s.in_space(&tau.eigenspace(-1)?);
                if !u_linearization_defect(&x, &a, &tau)?.is_zero() {
                    fails.push("defect of an Aherm tangent vector");
                }
                let y = s.in_space(&tau.eigenspace(1)?);
                if !y.is_zero() && u_linearization_defect(&y, &a, &tau)?.is_zero() {
                    fails.push("Herm tangent vector passed");
                }
            }
            GroupCheck::All => unreachable!("expanded by run_group_checks"),
        }
        tally.trials += 1;
        if fails.is_empty() {
            tally.passed += 1;
        } else {
            tally.failures.extend(fails.into_iter().map(|f| format!("sample {k}: {f}")));
        }
    }
    Ok(tally)
}

/// Seeded group checks on `n×n` matrices; each check draws from its own stream.
pub fn run_group_checks(check: GroupCheck, n: usize, ring: Ring, samples: usize, seed: u64) -> Result<GroupReport> {
    if n == 0 {
        return Err(Error::InvalidSize("n must be at least 1".into()));
    }
    if !matches!(ring, Ring::Q | Ring::QI) {
        return Err(Error::Unsupported(format!("group checks over {ring}")));
    }
    let list: Vec<GroupCheck> = if check == GroupCheck::All { GroupCheck::EACH.to_vec() } else { vec![check] };
    let mut checks = Vec::new();
    for (i, c) in list.into_iter().enumerate() {
        let mut s = Sampler::new(seed.wrapping_add(i as u64));
        checks.push(run_one(c, n, ring, samples, &mut s)?);
    }
    Ok(GroupReport { n, ring, samples, seed, checks })
}
