//! Exhaustive LT1–LT3 checks on structure constants, and a sparse evaluator
//! for T(X, αY, Z) − T(Y, αX, Z) on basis matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::matrix::{Echelon, Matrix, SparseVec};
use crate::scalar::{mul_acc, Rational, Ring};

pub(super) trait Coef: Clone + PartialEq {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add_prod(&mut self, a: &Self, b: &Self);
    fn sub_prod(&mut self, a: &Self, b: &Self);
    fn add(&mut self, a: &Self);
    fn neg(&self) -> Self;
    fn as_i128(&self) -> Option<i128>;
}

macro_rules! int_coef {
    ($t:ty) => {
        impl Coef for $t {
            fn zero() -> Self {
                0
            }
            fn is_zero(&self) -> bool {
                *self == 0
            }
            fn add_prod(&mut self, a: &Self, b: &Self) {
                *self += a * b;
            }
            fn sub_prod(&mut self, a: &Self, b: &Self) {
                *self -= a * b;
            }
            fn add(&mut self, a: &Self) {
                *self += a;
            }
            fn neg(&self) -> Self {
                -self
            }
            fn as_i128(&self) -> Option<i128> {
                Some(*self as i128)
            }
        }
    };
}

int_coef!(i64);
int_coef!(i128);

impl Coef for Rational {
    fn zero() -> Self {
        Rational::ZERO
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add_prod(&mut self, a: &Self, b: &Self) {
        *self += &(a * b);
    }
    fn sub_prod(&mut self, a: &Self, b: &Self) {
        *self -= &(a * b);
    }
    fn add(&mut self, a: &Self) {
        *self += a;
    }
    fn neg(&self) -> Self {
        -self
    }
    fn as_i128(&self) -> Option<i128> {
        None
    }
}

/// Structure constants stored contiguously; entry k spans `off[k]..off[k+1]`.
pub(super) struct Table<C> {
    d: usize,
    off: Vec<usize>,
    ent: Vec<(usize, C)>,
}

impl<C: Coef> Table<C> {
    fn new(d: usize, lists: impl Iterator<Item = Vec<(usize, C)>>) -> Self {
        let mut off = vec![0];
        let mut ent = Vec::new();
        for l in lists {
            ent.extend(l);
            off.push(ent.len());
        }
        Table { d, off, ent }
    }

    #[inline]
    fn at(&self, x: usize, y: usize, z: usize) -> &[(usize, C)] {
        let k = (x * self.d + y) * self.d + z;
        &self.ent[self.off[k]..self.off[k + 1]]
    }
}

/// Constants scaled by a common denominator, when everything fits in `i128`.
fn small_scaled(consts: &[SparseVec]) -> Option<Vec<Vec<(usize, i128)>>> {
    let mut lcm: i128 = 1;
    for (_, v) in consts.iter().flatten() {
        let (_, d) = v.as_small()?;
        lcm = lcm.lcm(&(d as i128));
        if lcm > 1 << 62 {
            return None;
        }
    }
    consts
        .iter()
        .map(|l| {
            l.iter()
                .map(|(i, v)| {
                    let (n, d) = v.as_small().expect("checked above");
                    (n as i128).checked_mul(lcm / d as i128).map(|x| (*i, x))
                })
                .collect()
        })
        .collect()
}

/// Witnesses for LT1, LT2 and LT3 (`None` when the axiom holds).
pub(super) fn lts_witnesses(consts: &[SparseVec], d: usize) -> [Option<Vec<usize>>; 3] {
    if let Some(scaled) = small_scaled(consts) {
        let max = scaled.iter().flatten().map(|(_, v)| v.unsigned_abs()).max().unwrap_or_default();
        // Every accumulated entry is a sum of at most 4·d products of constants.
        let worst = max.checked_mul(max).and_then(|m| m.checked_mul(4 * d.max(1) as u128));
        if worst.is_some_and(|w| w < 1 << 62) {
            let c = scaled.iter().map(|l| l.iter().map(|(i, v)| (*i, *v as i64)).collect());
            return run(&Table::new(d, c), consts);
        }
        if worst.is_some_and(|w| w < 1 << 126) {
            return run(&Table::new(d, scaled.into_iter()), consts);
        }
    }
    let lcm = Rational::lcm_denominators(consts.iter().flatten().map(|(_, v)| v));
    let scaled: Vec<Vec<(usize, BigInt)>> = consts
        .iter()
        .map(|list| list.iter().map(|(i, v)| (*i, v.numer() * (&lcm / v.denom()))).collect())
        .collect();
    let max = scaled.iter().flatten().map(|(_, v)| v.abs()).max().unwrap_or_default();
    let worst = BigInt::from(4 * d.max(1)) * &max * &max;
    if worst < BigInt::from(1i64 << 62) {
        let c = scaled.iter().map(|l| l.iter().map(|(i, v)| (*i, v.to_i64().expect("bounded"))).collect());
        run(&Table::new(d, c), consts)
    } else if worst < BigInt::from(1i128 << 126) {
        let c = scaled.iter().map(|l| l.iter().map(|(i, v)| (*i, v.to_i128().expect("bounded"))).collect());
        run(&Table::new(d, c), consts)
    } else {
        run(&Table::new(d, consts.iter().cloned()), consts)
    }
}

fn run<C: Coef>(t: &Table<C>, consts: &[SparseVec]) -> [Option<Vec<usize>>; 3] {
    let lt1 = check_lt1(t);
    let lt1_pass = lt1.is_none();
    let lt2 = check_lt2(t, lt1_pass);
    let lt3 = check_lt3(t, consts, lt1_pass);
    [lt1, lt2, lt3]
}

/// Dense accumulator of length d.
struct Acc<C> {
    v: Vec<C>,
}

impl<C: Coef> Acc<C> {
    fn new(d: usize) -> Self {
        Acc { v: vec![C::zero(); d] }
    }

    fn add_list(&mut self, list: &[(usize, C)]) {
        for (i, c) in list {
            self.v[*i].add(c);
        }
    }

    fn add_scaled(&mut self, w: &C, list: &[(usize, C)]) {
        for (i, c) in list {
            self.v[*i].add_prod(w, c);
        }
    }

    fn sub_scaled(&mut self, w: &C, list: &[(usize, C)]) {
        for (i, c) in list {
            self.v[*i].sub_prod(w, c);
        }
    }

    /// Whether the accumulated vector vanishes; resets it either way.
    fn take_is_zero(&mut self) -> bool {
        let mut zero = true;
        for x in &mut self.v {
            if !x.is_zero() {
                zero = false;
                *x = C::zero();
            }
        }
        zero
    }
}

fn check_lt1<C: Coef>(t: &Table<C>) -> Option<Vec<usize>> {
    let d = t.d;
    for x in 0..d {
        for y in x..d {
            for z in 0..d {
                let a = t.at(x, y, z);
                let b = t.at(y, x, z);
                let ok = a.len() == b.len() && a.iter().zip(b).all(|((i, u), (j, v))| i == j && *u == v.neg());
                if !ok {
                    return Some(vec![x, y, z]);
                }
            }
        }
    }
    None
}

/// The cyclic sum is alternating once LT1 holds, so strictly increasing
/// triples suffice then.
fn check_lt2<C: Coef>(t: &Table<C>, lt1: bool) -> Option<Vec<usize>> {
    let d = t.d;
    let mut acc = Acc::new(d);
    for x in 0..d {
        for y in if lt1 { x + 1 } else { 0 }..d {
            for z in if lt1 { y + 1 } else { 0 }..d {
                acc.add_list(t.at(x, y, z));
                acc.add_list(t.at(y, z, x));
                acc.add_list(t.at(z, x, y));
                if !acc.take_is_zero() {
                    return Some(vec![x, y, z]);
                }
            }
        }
    }
    None
}

fn candidate_pairs(d: usize, lt1: bool) -> Vec<(usize, usize)> {
    (0..d).flat_map(|u| (if lt1 { u + 1 } else { 0 }..d).map(move |v| (u, v))).collect()
}

/// Pairs (u, v) whose operators R(u, v) form a basis of their span.
fn spanning_pairs<C: Coef>(t: &Table<C>, consts: &[SparseVec], lt1: bool) -> Vec<(usize, usize)> {
    let pairs = candidate_pairs(t.d, lt1);
    if let Some(sel) = int_spanning_pairs(t, &pairs) {
        return sel;
    }
    let d = t.d;
    let mut ech = Echelon::new(d * d);
    let mut chosen = Vec::new();
    for &(u, v) in &pairs {
        let mut vec: SparseVec = Vec::new();
        for l in 0..d {
            for (m, val) in &consts[(u * d + v) * d + l] {
                vec.push((l * d + m, val.clone()));
            }
        }
        if !vec.is_empty() && ech.insert_sparse(&vec) {
            chosen.push((u, v));
        }
    }
    chosen
}

fn content_normalize(v: &mut [i128]) {
    let mut g = 0i128;
    for x in v.iter().filter(|x| **x != 0) {
        g = g.gcd(x);
        if g == 1 {
            return;
        }
    }
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

/// Fraction-free elimination over i128; `None` if an intermediate overflows.
fn int_spanning_pairs<C: Coef>(t: &Table<C>, pairs: &[(usize, usize)]) -> Option<Vec<(usize, usize)>> {
    const LARGE: i128 = 1 << 80;
    let d = t.d;
    let len = d * d;
    let mut rows: Vec<(usize, Vec<i128>)> = Vec::new();
    let mut chosen = Vec::new();
    let mut v = vec![0i128; len];
    for &(u, w) in pairs {
        v.iter_mut().for_each(|x| *x = 0);
        let mut empty = true;
        for l in 0..d {
            for (m, val) in t.at(u, w, l) {
                v[l * d + m] = val.as_i128()?;
                empty = false;
            }
        }
        if empty {
            continue;
        }
        for (p, row) in &rows {
            let a = v[*p];
            if a == 0 {
                continue;
            }
            let lead = row[*p];
            let g = a.gcd(&lead);
            let (f1, f2) = (lead / g, a / g);
            let mut big = false;
            for i in *p..len {
                let (x, r) = (v[i], row[i]);
                if x == 0 && r == 0 {
                    continue;
                }
                let y = x.checked_mul(f1)?.checked_sub(f2.checked_mul(r)?)?;
                big |= y.abs() > LARGE;
                v[i] = y;
            }
            if big {
                content_normalize(&mut v);
            }
        }
        if let Some(p) = v.iter().position(|x| *x != 0) {
            content_normalize(&mut v);
            rows.push((p, v.clone()));
            chosen.push((u, w));
        }
    }
    Some(chosen)
}

/// Derivation identity for a basis of the span of the operators R(u, v).
fn check_lt3<C: Coef>(t: &Table<C>, consts: &[SparseVec], lt1: bool) -> Option<Vec<usize>> {
    let d = t.d;
    let chosen = spanning_pairs(t, consts, lt1);
    let mut acc = Acc::new(d);
    for &(u, v) in &chosen {
        let col = |l: usize| t.at(u, v, l);
        for x in 0..d {
            for y in if lt1 { x + 1 } else { 0 }..d {
                for z in 0..d {
                    for (l, w) in t.at(x, y, z) {
                        acc.add_scaled(w, col(*l));
                    }
                    for (l, a) in col(x) {
                        acc.sub_scaled(a, t.at(*l, y, z));
                    }
                    for (l, a) in col(y) {
                        acc.sub_scaled(a, t.at(x, *l, z));
                    }
                    for (l, a) in col(z) {
                        acc.sub_scaled(a, t.at(x, y, *l));
                    }
                    if !acc.take_is_zero() {
                        return Some(vec![u, v, x, y, z]);
                    }
                }
            }
        }
    }
    None
}

/// Nonzero entries `(i, j, components)` of a matrix.
pub(super) type SparseEntries = Vec<(usize, usize, Vec<Rational>)>;

pub(super) fn sparse_entries(m: &Matrix) -> SparseEntries {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let e = m.entry(i, j);
            if e.iter().any(|x| !x.is_zero()) {
                out.push((i, j, e.to_vec()));
            }
        }
    }
    out
}

/// `out += s·x·m·z` with `x`, `z` sparse and `s = ±1`.
fn sandwich(out: &mut [Rational], ring: Ring, out_cols: usize, x: &SparseEntries, m: &Matrix, z: &SparseEntries, minus: bool) {
    let w = ring.width();
    let mut t1: [Rational; 4] = Default::default();
    let mut t2: [Rational; 4] = Default::default();
    for (i, j, a) in x {
        for (k, l, b) in z {
            let mjk = m.entry(*j, *k);
            if mjk.iter().all(Rational::is_zero) {
                continue;
            }
            t1[..w].iter_mut().for_each(|v| *v = Rational::ZERO);
            t2[..w].iter_mut().for_each(|v| *v = Rational::ZERO);
            mul_acc(ring, a, mjk, &mut t1[..w]);
            mul_acc(ring, &t1[..w], b, &mut t2[..w]);
            let dst = &mut out[(i * out_cols + l) * w..(i * out_cols + l + 1) * w];
            for (o, v) in dst.iter_mut().zip(&t2[..w]) {
                if minus {
                    *o -= v;
                } else {
                    *o += v;
                }
            }
        }
    }
}

/// Flattened `T(u, m, z) = u·m·z + z·m·u` for sparse `u`, `z`.
pub(super) fn t_half(ring: Ring, shape: (usize, usize), u: &SparseEntries, m: &Matrix, z: &SparseEntries) -> Vec<Rational> {
    let mut out = vec![Rational::ZERO; shape.0 * shape.1 * ring.width()];
    sandwich(&mut out, ring, shape.1, u, m, z, false);
    sandwich(&mut out, ring, shape.1, z, m, u, false);
    out
}

/// Flattened `s·(T(x, m_y, z) − T(y, m_x, z))` for sparse basis matrices.
#[cfg(test)]
#[allow(clippy::too_many_arguments)]
pub(super) fn t_difference(
    ring: Ring,
    shape: (usize, usize),
    x: &SparseEntries,
    y: &SparseEntries,
    z: &SparseEntries,
    mid_x: &Matrix,
    mid_y: &Matrix,
    sign: &Rational,
) -> Vec<Rational> {
    let mut out = t_half(ring, shape, x, mid_y, z);
    let cols = shape.1;
    sandwich(&mut out, ring, cols, y, mid_x, z, true);
    sandwich(&mut out, ring, cols, z, mid_x, y, true);
    if !sign.is_one() {
        for v in &mut out {
            *v *= sign;
        }
    }
    out
}
