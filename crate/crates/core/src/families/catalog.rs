//! The shipped family catalog: for each label a space V⁺, a parameter set and
//! an α-map, realized as a [`TripleSystem`].
//!
//! Polarized and twisted families live on block-diagonal matrices
//! `diag(Y, Y')` with `Y ∈ V⁺`, `Y' ∈ V⁻`; their α is an [`AlphaMap::Pair`].

use std::sync::OnceLock;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::homotope::{AlphaMap, Core, LtsReport, TripleSystem};
use crate::matrix::{Matrix, Subspace};
use crate::scalar::{BaseInvolution, Ring};

use super::rng::Sampler;
use super::space::MatrixClass;

use BaseInvolution::{Conj, Identity, QConj, QSplit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SizeKind {
    /// `[n]`
    Square,
    /// `[p, q]`
    Rect,
    /// `[r, r', s, s']`
    Four,
}

impl SizeKind {
    pub fn arity(self) -> usize {
        match self {
            SizeKind::Square => 1,
            SizeKind::Rect => 2,
            SizeKind::Four => 4,
        }
    }

    pub fn names(self) -> &'static [&'static str] {
        match self {
            SizeKind::Square => &["n"],
            SizeKind::Rect => &["p", "q"],
            SizeKind::Four => &["r", "r'", "s", "s'"],
        }
    }
}

type SpaceFn = fn(&[usize], Ring) -> Result<Subspace>;
type ParamFn = fn(&[usize]) -> Vec<MatrixClass>;
type AlphaFn = fn(&[Matrix]) -> Result<AlphaMap>;

/// One catalog line. The `g`/`h` names are unverified metadata.
#[derive(Clone, Serialize)]
pub struct FamilyInfo {
    pub label: String,
    pub table: &'static str,
    pub sizes: SizeKind,
    pub rings: &'static [Ring],
    pub v_plus: &'static str,
    pub v_minus: &'static str,
    pub alpha: String,
    pub parameters: &'static str,
    pub g: &'static str,
    pub h: &'static str,
    #[serde(skip)]
    sign: i64,
    #[serde(skip)]
    space: SpaceFn,
    #[serde(skip)]
    params: ParamFn,
    #[serde(skip)]
    build: AlphaFn,
}

impl std::fmt::Debug for FamilyInfo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FamilyInfo").field("label", &self.label).field("alpha", &self.alpha).finish()
    }
}

fn class_space(c: MatrixClass, ring: Ring) -> Result<Subspace> {
    c.subspace(ring)
}

/// `{diag(Y, Y') : Y ∈ a, Y' ∈ b}`.
pub fn block_diag_space(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    let (r1, c1, ring) = a.ambient();
    let (r2, c2, _) = b.ambient();
    let zero_a = Matrix::zeros(r1, c1, ring);
    let zero_b = Matrix::zeros(r2, c2, ring);
    let mut mats = Vec::with_capacity(a.dim() + b.dim());
    for m in a.basis_matrices() {
        mats.push(Matrix::block_diag(&m, &zero_b)?);
    }
    for m in b.basis_matrices() {
        mats.push(Matrix::block_diag(&zero_a, &m)?);
    }
    Subspace::span(r1 + r2, c1 + c2, ring, &mats)
}

fn pair_space(a: MatrixClass, b: MatrixClass, ring: Ring) -> Result<Subspace> {
    block_diag_space(&a.subspace(ring)?, &b.subspace(ring)?)
}

fn conj(a: &Matrix) -> Result<Matrix> {
    a.apply_entrywise(Conj)
}

fn sandwich(left: &Matrix, core: Core, right: &Matrix) -> AlphaMap {
    AlphaMap::sandwich(1, left, core, right)
}

fn aya(p: &[Matrix]) -> Result<AlphaMap> {
    Ok(AlphaMap::param(&p[0]))
}

fn a_dag_b(p: &[Matrix], d: BaseInvolution) -> Result<AlphaMap> {
    Ok(sandwich(&p[0], Core::Dagger(d), &p[1]))
}

fn a_conj_abar(p: &[Matrix]) -> Result<AlphaMap> {
    Ok(sandwich(&p[0], Core::Entrywise(Conj), &conj(&p[0])?))
}

/// `(first, second) = (sign·A†·Y'·A, sign·A·Y·A†)` with `A ∈ M(q, p)`, `Y` of size `p`.
fn congruence_pair(a: &Matrix, d: BaseInvolution, sign: i64) -> Result<AlphaMap> {
    let ad = a.dagger(d)?;
    let p = a.cols();
    Ok(AlphaMap::pair(
        AlphaMap::sandwich(sign, &ad, Core::Id, a),
        AlphaMap::sandwich(sign, a, Core::Id, &ad),
        (p, p),
    ))
}

struct Line {
    label: &'static str,
    table: &'static str,
    sizes: SizeKind,
    rings: &'static [Ring],
    v_plus: &'static str,
    v_minus: &'static str,
    alpha: &'static str,
    parameters: &'static str,
    space: SpaceFn,
    params: ParamFn,
    build: AlphaFn,
}

impl Line {
    fn info(&self, label: &str, sign: i64, g: &'static str, h: &'static str) -> FamilyInfo {
        FamilyInfo {
            label: label.into(),
            table: self.table,
            sizes: self.sizes,
            rings: self.rings,
            v_plus: self.v_plus,
            v_minus: self.v_minus,
            alpha: if sign < 0 { format!("-{}", self.alpha) } else { self.alpha.into() },
            parameters: self.parameters,
            g,
            h,
            sign,
            space: self.space,
            params: self.params,
            build: self.build,
        }
    }

    /// The line and its c-dual (label with a prime, α negated).
    fn both(&self, names: [(&'static str, &'static str); 2]) -> [FamilyInfo; 2] {
        [
            self.info(self.label, 1, names[0].0, names[0].1),
            self.info(&format!("{}'", self.label), -1, names[1].0, names[1].1),
        ]
    }

    fn single(&self, g: &'static str, h: &'static str) -> FamilyInfo {
        self.info(self.label, 1, g, h)
    }
}

const RC: &[Ring] = &[Ring::Q, Ring::QI];
const C: &[Ring] = &[Ring::QI];
const H: &[Ring] = &[Ring::HQ];

fn rect(s: &[usize], ring: Ring) -> Result<Subspace> {
    Ok(Subspace::full(s[0], s[1], ring))
}

fn build_catalog() -> Vec<FamilyInfo> {
    let mut out = Vec::new();
    let rect_line = |label, rings, alpha, parameters, params: ParamFn, build: AlphaFn| Line {
        label,
        table: "",
        sizes: SizeKind::Rect,
        rings,
        v_plus: "M(p,q)",
        v_minus: "M(q,p)",
        alpha,
        parameters,
        space: rect,
        params,
        build,
    };
    let square_line = |label, rings, v: &'static str, alpha, parameters, space: SpaceFn, params: ParamFn, build: AlphaFn| Line {
        label,
        table: "",
        sizes: SizeKind::Square,
        rings,
        v_plus: v,
        v_minus: v,
        alpha,
        parameters,
        space,
        params,
        build,
    };
    let tag = |t: &'static str, l: Line| Line { table: t, ..l };

    // Rectangular matrices.
    out.extend(
        tag("1", rect_line("1.a", RC, "A·X·A", "A in M(q,p)", |s| vec![MatrixClass::full(s[1], s[0])], aya))
            .both([("Gl_{p,q}(A;K) (group case)", "-"), ("Gl_{p,q}(A;K[i])", "Gl_{p,q}(A;K)")]),
    );
    out.extend(
        tag(
            "1",
            rect_line(
                "1.b",
                RC,
                "A·X^t·B",
                "A in Sym(q), B in Sym(p)",
                |s| vec![MatrixClass::sym(s[1]), MatrixClass::sym(s[0])],
                |p| a_dag_b(p, Identity),
            ),
        )
        .both([("O_{p+q}(diag(A,B);K)", "O_p(A;K) x O_q(B;K)"), ("O_{p+q}(diag(A,-B);K)", "O_p(A;K) x O_q(B;K)")]),
    );
    out.extend(
        tag(
            "1",
            rect_line(
                "1.c",
                RC,
                "A·X^t·B",
                "A in Asym(q), B in Asym(p)",
                |s| vec![MatrixClass::asym(s[1]), MatrixClass::asym(s[0])],
                |p| a_dag_b(p, Identity),
            ),
        )
        .both([
            ("Sp_{(p+q)/2}(diag(A,B);K)", "Sp_{p/2}(A;K) x Sp_{q/2}(B;K)"),
            ("Sp_{(p+q)/2}(diag(A,-B);K)", "Sp_{p/2}(A;K) x Sp_{q/2}(B;K)"),
        ]),
    );
    out.extend(
        tag("1C", rect_line("1.A", C, "A·conj(X)·conj(A)", "A in M(q,p;C)", |s| vec![MatrixClass::full(s[1], s[0])], a_conj_abar))
            .both([("Gl_{p,q}(A;M(2,2;R))", "Gl_{p,q}(A;C)"), ("Gl_{p,q}(A;H)", "Gl_{p,q}(A;C)")]),
    );
    out.extend(
        tag(
            "1C",
            rect_line(
                "1.B",
                C,
                "A·conj(X)^t·B",
                "A in Herm(q;C), B in Herm(p;C)",
                |s| vec![MatrixClass::herm(s[1], Conj), MatrixClass::herm(s[0], Conj)],
                |p| a_dag_b(p, Conj),
            ),
        )
        .both([("U_{p+q}(diag(A,B);C)", "U_p(A;C) x U_q(B;C)"), ("U_{p+q}(diag(A,-B);C)", "U_p(A;C) x U_q(B;C)")]),
    );
    out.extend(
        tag("1.3", rect_line("1.3.a", H, "A·X·A", "A in M(q,p;H)", |s| vec![MatrixClass::full(s[1], s[0])], aya))
            .both([("Gl_{p,q}(A;H) (group case)", "-"), ("Gl_{p,q}(A;M(2,2;C))", "Gl_{p,q}(A;H)")]),
    );
    out.extend(
        tag(
            "1.3",
            rect_line(
                "1.3.b",
                H,
                "A·conj(X)^t·B",
                "A in Herm(q;H), B in Herm(p;H)",
                |s| vec![MatrixClass::herm(s[1], QConj), MatrixClass::herm(s[0], QConj)],
                |p| a_dag_b(p, QConj),
            ),
        )
        .both([("U_{p+q}(diag(A,B);H)", "U_p(A;H) x U_q(B;H)"), ("U_{p+q}(diag(A,-B);H)", "U_p(A;H) x U_q(B;H)")]),
    );
    out.extend(
        tag(
            "1.3",
            rect_line(
                "1.3.c",
                H,
                "A·split(X)^t·B",
                "A in Herm~(q;H), B in Herm~(p;H)",
                |s| vec![MatrixClass::herm(s[1], QSplit), MatrixClass::herm(s[0], QSplit)],
                |p| a_dag_b(p, QSplit),
            ),
        )
        .both([("U_{p+q}(diag(A,B);H~)", "U_p(A;H~) x U_q(B;H~)"), ("U_{p+q}(diag(A,-B);H~)", "U_p(A;H~) x U_q(B;H~)")]),
    );

    // Symmetric matrices.
    let sym_space: SpaceFn = |s, r| class_space(MatrixClass::sym(s[0]), r);
    out.extend(
        tag("2", square_line("2.a", RC, "Sym(n)", "A·X·A", "A in Sym(n)", sym_space, |s| vec![MatrixClass::sym(s[0])], aya))
            .both([("Gl_n(A;K)", "O_n(A;K)"), ("U_n(A;K[i])", "O_n(A;K)")]),
    );
    out.extend(
        tag("2", square_line("2.b", RC, "Sym(n)", "A·X·A", "A in Asym(n)", sym_space, |s| vec![MatrixClass::asym(s[0])], aya))
            .both([("Sp_{n/2}(A;K) (group case)", "-"), ("Sp_{n/2}(A;K[i])", "Sp_{n/2}(A;K)")]),
    );
    out.extend(
        tag(
            "2C",
            square_line(
                "2.A",
                C,
                "Sym(n;C)",
                "A·conj(X)·conj(A)",
                "A in Herm(n;C)",
                sym_space,
                |s| vec![MatrixClass::herm(s[0], Conj)],
                a_conj_abar,
            ),
        )
        .both([("U_n(A;H)", "U_n(A;C)"), ("Sp_n([[b,a],[-a,b]])", "U_n(b+ia;C)")]),
    );

    // Skew-symmetric matrices.
    let asym_space: SpaceFn = |s, r| class_space(MatrixClass::asym(s[0]), r);
    out.extend(
        tag("3", square_line("3.a", RC, "Asym(n)", "A·X·A", "A in Asym(n)", asym_space, |s| vec![MatrixClass::asym(s[0])], aya))
            .both([("Gl_n(A;K)", "Sp_{n/2}(A;K)"), ("U_n(A;K[i])", "Sp_{n/2}(A;K)")]),
    );
    out.extend(
        tag("3", square_line("3.b", RC, "Asym(n)", "A·X·A", "A in Sym(n)", asym_space, |s| vec![MatrixClass::sym(s[0])], aya))
            .both([("O_n(A;K) (group case)", "-"), ("O_n(A;K[i])", "O_n(A;K)")]),
    );
    out.push(
        tag(
            "3C",
            square_line(
                "3.A",
                C,
                "Asym(n;C)",
                "A·conj(X)·conj(A)",
                "A in iHerm(n;C)",
                asym_space,
                |s| vec![MatrixClass::aherm(s[0], Conj)],
                a_conj_abar,
            ),
        )
        .single("U_n(A;H~)", "U_n(A;C)"),
    );
    out.push(
        tag(
            "3C",
            square_line(
                "3.A'",
                C,
                "Asym(n;C)",
                "A·conj(X)·conj(A)",
                "A in Herm(n;C)",
                asym_space,
                |s| vec![MatrixClass::herm(s[0], Conj)],
                a_conj_abar,
            ),
        )
        .info("3.A'", -1, "O_{2n}([[a,b],[-b,a]];R)", "U_n(b+ia;C)"),
    );

    // Hermitian matrices.
    let herm_c: SpaceFn = |s, r| class_space(MatrixClass::herm(s[0], Conj), r);
    out.extend(
        tag(
            "1.1",
            square_line("1.1.a", C, "Herm(n;C)", "A·X·A", "A in Herm(n;C)", herm_c, |s| vec![MatrixClass::herm(s[0], Conj)], aya),
        )
        .both([("Gl_n(A;C)", "U_n(A;C)"), ("U_n(A;C) (group case)", "-")]),
    );
    out.extend(
        tag(
            "1.1",
            square_line(
                "1.1.b",
                C,
                "Herm(n;C)",
                "A·conj(X)·conj(A)",
                "A in Sym(n;C)",
                herm_c,
                |s| vec![MatrixClass::sym(s[0])],
                a_conj_abar,
            ),
        )
        .both([("U_n(A;H~)", "O_n(A;C)"), ("O_{2n}([[a,b],[b,-a]];R)", "O_n(a+ib;C)")]),
    );
    out.extend(
        tag(
            "1.1",
            square_line(
                "1.1.c",
                C,
                "Herm(n;C)",
                "A·conj(X)·conj(A)",
                "A in Asym(n;C)",
                herm_c,
                |s| vec![MatrixClass::asym(s[0])],
                a_conj_abar,
            ),
        )
        .both([("Sp_n([[a,b],[b,-a]];R)", "Sp_{n/2}(a+ib;C)"), ("U_n(A;H)", "Sp_{n/2}(A;C)")]),
    );
    let herm_h: SpaceFn = |s, r| class_space(MatrixClass::herm(s[0], QConj), r);
    out.extend(
        tag(
            "3.1",
            square_line("3.1.a", H, "Herm(n;H)", "A·X·A", "A in Herm(n;H)", herm_h, |s| vec![MatrixClass::herm(s[0], QConj)], aya),
        )
        .both([("Gl_n(A;H)", "U_n(A;H)"), ("U_{2n}(IA;C)", "U_n(A;H)")]),
    );
    out.extend(
        tag(
            "3.1",
            square_line("3.1.b", H, "Herm(n;H)", "A·X·A", "A in Aherm(n;H)", herm_h, |s| vec![MatrixClass::aherm(s[0], QConj)], aya),
        )
        .both([("U_n(A;H~) (group case)", "-"), ("O_{2n}(IA;C)", "U_n(A;H~)")]),
    );
    let herm_t: SpaceFn = |s, r| class_space(MatrixClass::herm(s[0], QSplit), r);
    out.extend(
        tag(
            "2.2",
            square_line("2.2.a", H, "Herm~(n;H)", "A·X·A", "A in Herm~(n;H)", herm_t, |s| vec![MatrixClass::herm(s[0], QSplit)], aya),
        )
        .both([("Gl_n(A;H)", "U_n(A;H~)"), ("U_{2n}(IA;C)", "U_n(A;H~)")]),
    );
    out.extend(
        tag(
            "2.2",
            square_line(
                "2.2.b",
                H,
                "Herm~(n;H)",
                "A·X·A",
                "A in Aherm~(n;H)",
                herm_t,
                |s| vec![MatrixClass::aherm(s[0], QSplit)],
                aya,
            ),
        )
        .both([("U_n(A;H) (group case)", "-"), ("Sp_{2n}(IA;C)", "U_n(A;H)")]),
    );

    // Para-Hermitian spaces on V⁺ × V⁻.
    let pol = |label, sizes, rings, v_plus, v_minus, alpha, parameters, space: SpaceFn, params: ParamFn, build: AlphaFn| Line {
        label,
        table: "pol",
        sizes,
        rings,
        v_plus,
        v_minus,
        alpha,
        parameters,
        space,
        params,
        build,
    };
    let pol_rect: SpaceFn = |s, r| pair_space(MatrixClass::full(s[0], s[1]), MatrixClass::full(s[1], s[0]), r);
    out.push(
        pol(
            "pol-1.a",
            SizeKind::Rect,
            RC,
            "M(p,q)",
            "M(q,p)",
            "(A·X^t·B, A^t·X'^t·B^t)",
            "A, B in M(p,q)",
            pol_rect,
            |s| vec![MatrixClass::full(s[0], s[1]), MatrixClass::full(s[0], s[1])],
            |p| {
                let (a, b) = (&p[0], &p[1]);
                Ok(AlphaMap::pair(
                    sandwich(&a.transpose(), Core::Dagger(Identity), &b.transpose()),
                    sandwich(a, Core::Dagger(Identity), b),
                    (a.rows(), a.cols()),
                ))
            },
        )
        .single("Gl_{2p,2q}(diag(A,B);K)", "Gl_{p,q}(A;K) x Gl_{p,q}(B;K)"),
    );
    out.push(
        pol(
            "pol-1.b",
            SizeKind::Rect,
            RC,
            "M(p,q)",
            "M(q,p)",
            "(A·X·B, B·X'·A)",
            "A in M(p,p), B in M(q,q)",
            pol_rect,
            |s| vec![MatrixClass::full(s[0], s[0]), MatrixClass::full(s[1], s[1])],
            |p| {
                let (a, b) = (&p[0], &p[1]);
                Ok(AlphaMap::pair(sandwich(b, Core::Id, a), sandwich(a, Core::Id, b), (a.rows(), b.rows())))
            },
        )
        .single("Gl_{p+q}(diag(A,B);K)", "Gl_p(A;K) x Gl_q(B;K)"),
    );
    let pol_square = |label, rings, v: &'static str, alpha, parameters, space: SpaceFn, build: AlphaFn| {
        pol(label, SizeKind::Square, rings, v, v, alpha, parameters, space, |s| vec![MatrixClass::full(s[0], s[0])], build)
    };
    out.push(
        pol_square(
            "pol-2",
            RC,
            "Sym(n)",
            "(-A·X·A^t, -A^t·X'·A)",
            "A in M(n,n)",
            |s, r| pair_space(MatrixClass::sym(s[0]), MatrixClass::sym(s[0]), r),
            |p| congruence_pair(&p[0], Identity, -1),
        )
        .single("Sp_n([[0,A],[-A^t,0]];K)", "Gl_n(A;K)"),
    );
    out.push(
        pol_square(
            "pol-3",
            RC,
            "Asym(n)",
            "(A·X·A^t, A^t·X'·A)",
            "A in M(n,n)",
            |s, r| pair_space(MatrixClass::asym(s[0]), MatrixClass::asym(s[0]), r),
            |p| congruence_pair(&p[0], Identity, 1),
        )
        .single("O_{2n}([[0,A],[A^t,0]];K)", "Gl_n(A;K)"),
    );
    out.push(
        pol_square(
            "pol-1.1",
            C,
            "Herm(n;C)",
            "(A·X·A*, A*·X'·A)",
            "A in M(n,n;C)",
            |s, r| pair_space(MatrixClass::herm(s[0], Conj), MatrixClass::herm(s[0], Conj), r),
            |p| congruence_pair(&p[0], Conj, 1),
        )
        .single("U_{2n}([[0,A],[A*,0]];C)", "Gl_n(A;C)"),
    );
    out.push(
        pol_square(
            "pol-3.1",
            H,
            "Herm(n;H)",
            "(A·X·A*, A*·X'·A)",
            "A in M(n,n;H)",
            |s, r| pair_space(MatrixClass::herm(s[0], QConj), MatrixClass::herm(s[0], QConj), r),
            |p| congruence_pair(&p[0], QConj, 1),
        )
        .single("U_{2n}([[0,A],[A*,0]];H)", "Gl_n(A;H)"),
    );
    out.push(
        pol_square(
            "pol-2.2",
            H,
            "Herm~(n;H)",
            "(A·X·A~, A~·X'·A)",
            "A in M(n,n;H)",
            |s, r| pair_space(MatrixClass::herm(s[0], QSplit), MatrixClass::herm(s[0], QSplit), r),
            |p| congruence_pair(&p[0], QSplit, 1),
        )
        .single("U_{2n}([[0,A],[A~,0]];H~)", "Gl_n(A;H)"),
    );

    // Twisted polarized spaces.
    let tw = |label, sizes, rings, v_plus, v_minus, alpha, parameters, space: SpaceFn, params: ParamFn, build: AlphaFn| Line {
        table: "tw",
        ..pol(label, sizes, rings, v_plus, v_minus, alpha, parameters, space, params, build)
    };
    out.push(
        tw(
            "tw-1",
            SizeKind::Four,
            RC,
            "M(r,s')",
            "M(s,r')",
            "(A·X·B, B·X'·A)",
            "A in M(r',r), B in M(s',s)",
            |s, r| pair_space(MatrixClass::full(s[0], s[3]), MatrixClass::full(s[2], s[1]), r),
            |s| vec![MatrixClass::full(s[1], s[0]), MatrixClass::full(s[3], s[2])],
            |p| {
                let (a, b) = (&p[0], &p[1]);
                Ok(AlphaMap::pair(sandwich(b, Core::Id, a), sandwich(a, Core::Id, b), (a.cols(), b.rows())))
            },
        )
        .single("Gl_{r+s,r'+s'}(diag(A,B);K)", "Gl_{r,r'}(A;K) x Gl_{s,s'}(B;K)"),
    );
    let tw_pq = |label, rings, v_plus, v_minus, alpha, space: SpaceFn, build: AlphaFn| {
        tw(label, SizeKind::Rect, rings, v_plus, v_minus, alpha, "A in M(q,p)", space, |s| vec![MatrixClass::full(s[1], s[0])], build)
    };
    out.push(
        tw_pq(
            "tw-2",
            RC,
            "Sym(p)",
            "Sym(q)",
            "(-A·X·A^t, -A^t·X'·A)",
            |s, r| pair_space(MatrixClass::sym(s[0]), MatrixClass::sym(s[1]), r),
            |p| congruence_pair(&p[0], Identity, -1),
        )
        .single("Sp_n([[0,A],[-A^t,0]];K)", "Gl_{p,q}(A;K)"),
    );
    out.push(
        tw_pq(
            "tw-3",
            RC,
            "Asym(p)",
            "Asym(q)",
            "(A·X·A^t, A^t·X'·A)",
            |s, r| pair_space(MatrixClass::asym(s[0]), MatrixClass::asym(s[1]), r),
            |p| congruence_pair(&p[0], Identity, 1),
        )
        .single("O_{p+q}([[0,A],[A^t,0]];K)", "Gl_{p,q}(A;K)"),
    );
    out.push(
        tw_pq(
            "tw-1.1",
            C,
            "Herm(p;C)",
            "Herm(q;C)",
            "(A·X·A*, A*·X'·A)",
            |s, r| pair_space(MatrixClass::herm(s[0], Conj), MatrixClass::herm(s[1], Conj), r),
            |p| congruence_pair(&p[0], Conj, 1),
        )
        .single("U_{p+q}([[0,A],[A*,0]];C)", "Gl_{p,q}(A;C)"),
    );
    out.push(
        tw_pq(
            "tw-3.1",
            H,
            "Herm(p;H)",
            "Herm(q;H)",
            "(A·X·A*, A*·X'·A)",
            |s, r| pair_space(MatrixClass::herm(s[0], QConj), MatrixClass::herm(s[1], QConj), r),
            |p| congruence_pair(&p[0], QConj, 1),
        )
        .single("U_{p+q}([[0,A],[A*,0]];H)", "Gl_{p,q}(A;H)"),
    );
    out.push(
        tw_pq(
            "tw-2.2",
            H,
            "Herm~(p;H)",
            "Herm~(q;H)",
            "(A·X·A~, A~·X'·A)",
            |s, r| pair_space(MatrixClass::herm(s[0], QSplit), MatrixClass::herm(s[1], QSplit), r),
            |p| congruence_pair(&p[0], QSplit, 1),
        )
        .single("U_{p+q}([[0,A],[A~,0]];H~)", "Gl_{p,q}(A;H)"),
    );
    out
}

/// Every shipped family, in table order.
pub fn catalog() -> &'static [FamilyInfo] {
    static CATALOG: OnceLock<Vec<FamilyInfo>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

pub fn lookup(label: &str) -> Result<&'static FamilyInfo> {
    catalog().iter().find(|f| f.label == label).ok_or_else(|| Error::UnknownLabel(label.into()))
}

pub fn catalog_json() -> Value {
    json!(catalog())
}

/// A family at concrete sizes over a concrete ring.
#[derive(Debug, Clone)]
pub struct FamilyDescriptor {
    pub info: &'static FamilyInfo,
    pub sizes: Vec<usize>,
    pub ring: Ring,
    pub space: Subspace,
    pub params: Vec<MatrixClass>,
}

/// `ring = None` picks the first ring the family is defined over.
pub fn family(label: &str, sizes: &[usize], ring: Option<Ring>) -> Result<FamilyDescriptor> {
    let info = lookup(label)?;
    let arity = info.sizes.arity();
    if sizes.len() != arity {
        return Err(Error::InvalidSize(format!(
            "{label} takes sizes ({}), got {} values",
            info.sizes.names().join(","),
            sizes.len()
        )));
    }
    if sizes.contains(&0) {
        return Err(Error::InvalidSize(format!("{label}: sizes must be at least 1")));
    }
    let ring = ring.unwrap_or(info.rings[0]);
    if !info.rings.contains(&ring) {
        return Err(Error::Unsupported(format!("{label} is not defined over {ring}")));
    }
    Ok(FamilyDescriptor {
        info,
        sizes: sizes.to_vec(),
        ring,
        space: (info.space)(sizes, ring)?,
        params: (info.params)(sizes),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleReport {
    pub index: usize,
    pub closure: bool,
    pub lts: Option<Value>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub label: String,
    pub ring: Ring,
    pub sizes: Vec<usize>,
    pub dim: usize,
    pub seed: u64,
    pub samples: Vec<SampleReport>,
}

impl FamilyReport {
    pub fn all_pass(&self) -> bool {
        self.samples.iter().all(|s| s.pass)
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!(self);
        v["all_pass"] = json!(self.all_pass());
        v
    }
}

impl FamilyDescriptor {
    pub fn label(&self) -> &str {
        &self.info.label
    }

    /// Draws sample `index` of each parameter (see [`Sampler::parameter`]).
    pub fn sample(&self, sampler: &mut Sampler, index: usize) -> Result<Vec<Matrix>> {
        self.params.iter().map(|c| sampler.parameter(c, self.ring, index)).collect()
    }

    /// α for the given parameters, after checking they lie in the parameter set.
    pub fn alpha(&self, params: &[Matrix]) -> Result<AlphaMap> {
        if params.len() != self.params.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} takes {} parameter matrices, got {}",
                self.info.label,
                self.params.len(),
                params.len()
            )));
        }
        for (class, m) in self.params.iter().zip(params) {
            if m.ring() != self.ring {
                return Err(Error::RingMismatch(format!("parameter over {}, family over {}", m.ring(), self.ring)));
            }
            class.check(m)?;
        }
        let a = (self.info.build)(params)?;
        Ok(if self.info.sign < 0 { a.negated() } else { a })
    }

    /// Fails with `NotClosed` when V⁺ is not closed under the product.
    pub fn system(&self, params: &[Matrix]) -> Result<TripleSystem> {
        TripleSystem::with_alpha(self.space.clone(), self.alpha(params)?)
    }

    pub fn check_sample(&self, params: &[Matrix]) -> Result<(bool, Option<LtsReport>)> {
        match self.system(params) {
            Ok(sys) => Ok((true, Some(sys.check_lts()))),
            Err(Error::NotClosed(_)) => Ok((false, None)),
            Err(e) => Err(e),
        }
    }

    /// Closure and LTS axioms on `samples` seeded parameters.
    pub fn check(&self, samples: usize, seed: u64) -> Result<FamilyReport> {
        let mut sampler = Sampler::new(seed);
        let mut out = Vec::with_capacity(samples);
        for index in 0..samples {
            let params = self.sample(&mut sampler, index)?;
            let (closure, lts) = self.check_sample(&params)?;
            let pass = closure && lts.as_ref().is_some_and(|r| r.all_pass());
            out.push(SampleReport { index, closure, lts: lts.map(|r| r.to_json()), pass });
        }
        Ok(FamilyReport {
            label: self.info.label.clone(),
            ring: self.ring,
            sizes: self.sizes.clone(),
            dim: self.space.dim(),
            seed,
            samples: out,
        })
    }
}

/// Whether the primed partner of a family is the c-dual on identical
/// structure constants for the given parameters.
pub fn check_cdual_pairing(fam: &FamilyDescriptor, dual: &FamilyDescriptor, params: &[Matrix]) -> Result<bool> {
    if fam.space != dual.space {
        return Ok(false);
    }
    let s = fam.system(params)?;
    let d = dual.system(params)?;
    Ok(s.cdual().same_constants(&d))
}

/// Whether the product of `i·A` is the negation of that of `A` on the space.
pub fn check_i_negation(space: &Subspace, a: &Matrix) -> Result<bool> {
    let i = crate::scalar::Scalar::unit(Ring::QI, 1)?;
    let s = TripleSystem::with_param(space.clone(), a)?;
    let t = TripleSystem::with_param(space.clone(), &a.scale_left(&i)?)?;
    Ok(s.cdual().same_constants(&t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotope::triple_a;

    #[test]
    fn labels_are_unique_and_complete() {
        let labels: Vec<&str> = catalog().iter().map(|f| f.label.as_str()).collect();
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), labels.len());
        for l in ["1.a", "1.c'", "1.B'", "1.3.c'", "2.b'", "2.A'", "3.A", "3.A'", "1.1.c'", "3.1.b'", "2.2.b'", "pol-2", "tw-2.2"] {
            assert!(labels.contains(&l), "{l}");
        }
        assert_eq!(labels.len(), 42 + 7 + 6);
    }

    #[test]
    fn unknown_label_and_bad_sizes() {
        assert!(matches!(family("bogus", &[1], None), Err(Error::UnknownLabel(_))));
        assert!(matches!(family("1.a", &[2], None), Err(Error::InvalidSize(_))));
        assert!(matches!(family("2.a", &[0], None), Err(Error::InvalidSize(_))));
        assert!(matches!(family("1.A", &[1, 1], Some(Ring::Q)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn group_case_is_nested_commutator() {
        let f = family("1.a", &[2, 2], Some(Ring::Q)).unwrap();
        let sys = f.system(&[Matrix::identity(2, Ring::Q)]).unwrap();
        let b = sys.basis().to_vec();
        let br = |x: &Matrix, y: &Matrix| x.matmul(y).unwrap().try_sub(&y.matmul(x).unwrap()).unwrap();
        for x in &b {
            for y in &b {
                for z in &b {
                    assert_eq!(sys.triple(x, y, z).unwrap(), br(&br(x, y), z));
                }
            }
        }
        assert!(sys.check_lts().all_pass());
    }

    #[test]
    fn siegel_line_at_n1() {
        let f = family("2.A'", &[1], None).unwrap();
        let one = Matrix::identity(1, Ring::QI);
        let alpha = f.alpha(std::slice::from_ref(&one)).unwrap();
        let qi = |a: i64, b: i64| Matrix::from_flat(1, 1, Ring::QI, vec![a.into(), b.into()]).unwrap();
        assert_eq!(alpha.apply(&qi(3, 5)).unwrap(), qi(-3, 5));
        assert_eq!(f.space.dim(), 2);
        assert!(f.system(&[one]).unwrap().check_lts().all_pass());
    }

    #[test]
    fn polarized_product_matches_pair_formula() {
        let f = family("pol-2", &[1], Some(Ring::Q)).unwrap();
        let sys = f.system(&[Matrix::identity(1, Ring::Q)]).unwrap();
        assert_eq!(sys.dim(), 2);
        assert!(sys.check_lts().all_pass());
        // T((X,X'),(Y,Y'),(Z,Z')) with α(Y,Y') = (−Y, −Y') in the 1×1 case.
        let m = |x: i64, xp: i64| Matrix::from_ints(2, 2, Ring::Q, &[x, 0, 0, xp]).unwrap();
        let (x, y, z) = (m(1, 2), m(3, -1), m(2, 5));
        let t = |x: (i64, i64), w: (i64, i64), z: (i64, i64)| (2 * x.0 * w.1 * z.0, 2 * x.1 * w.0 * z.1);
        let first = t((1, 2), (-3, 1), (2, 5));
        let second = t((3, -1), (-1, -2), (2, 5));
        assert_eq!(sys.triple(&x, &y, &z).unwrap(), m(first.0 - second.0, first.1 - second.1));
    }

    #[test]
    fn one_b_matches_block_computation() {
        // On the off-diagonal piece [[0, X], [Xᵗ, 0]] with parameter diag(B, C)
        // the product reproduces X ↦ B·…·C contractions.
        let f = family("1.b", &[2, 1], Some(Ring::Q)).unwrap();
        let a = Matrix::from_ints(1, 1, Ring::Q, &[3]).unwrap();
        let b = Matrix::from_ints(2, 2, Ring::Q, &[1, 2, 2, -1]).unwrap();
        let sys = f.system(&[a.clone(), b.clone()]).unwrap();
        let big_a = Matrix::block_diag(&b, &a).unwrap();
        let embed = |x: &Matrix| {
            let z = Matrix::zeros(2, 2, Ring::Q);
            let z1 = Matrix::zeros(1, 1, Ring::Q);
            Matrix::from_blocks(&z, x, &x.transpose(), &z1).unwrap()
        };
        let xs = sys.basis().to_vec();
        for x in &xs {
            for y in &xs {
                for z in &xs {
                    let lhs = embed(&sys.triple(x, y, z).unwrap());
                    let rhs = triple_a(&embed(x), &embed(y), &embed(z), &big_a).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn primed_lines_are_cduals() {
        let mut s = Sampler::new(4);
        for f in catalog().iter().filter(|f| f.label.ends_with('\'') && f.label != "3.A'") {
            let base = &f.label[..f.label.len() - 1];
            let sizes = vec![2; f.sizes.arity()];
            let fam = family(base, &sizes, None).unwrap();
            let dual = family(&f.label, &sizes, None).unwrap();
            let params = fam.sample(&mut s, 2).unwrap();
            assert!(check_cdual_pairing(&fam, &dual, &params).unwrap(), "{}", f.label);
        }
    }

    #[test]
    fn i_times_parameter_negates() {
        let space = Subspace::full(2, 2, Ring::QI);
        let a = Sampler::new(9).matrix(2, 2, Ring::QI);
        assert!(check_i_negation(&space, &a).unwrap());
    }

    #[test]
    fn small_families_pass() {
        for f in catalog() {
            let sizes = vec![1; f.sizes.arity()];
            for ring in f.rings {
                let d = family(&f.label, &sizes, Some(*ring)).unwrap();
                let r = d.check(6, 11).unwrap();
                assert!(r.all_pass(), "{} over {ring}: {:?}", f.label, r.samples);
            }
        }
    }

    #[test]
    fn rejects_parameters_outside_class() {
        let f = family("2.a", &[2], Some(Ring::Q)).unwrap();
        let a = Matrix::from_ints(2, 2, Ring::Q, &[0, 1, -1, 0]).unwrap();
        assert!(matches!(f.alpha(&[a]), Err(Error::NotInPiece(_))));
    }
}
