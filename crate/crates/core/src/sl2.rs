//! Irreducible sl(2)-modules in the standard basis, and sl(2)-equivariant maps
//! between them.
//!
//! `V(a)` has basis `v_0, …, v_a` with
//! `h·v_i = (a−2i)v_i`, `e·v_i = (a−i+1)v_{i−1}`, `f·v_i = (i+1)v_{i+1}`.
//! `Hom(V(b), V(a))` is an sl(2)-module via `s·T = R_a(s)T − T R_b(s)`; the
//! elementary matrix `E_pq` has weight `(a−2p) − (b−2q)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{rat, HalfInt, Rational};
use crate::matrix::RatMatrix;
use crate::sixj;

/// Highest weight `a` of the irreducible `V(a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct IrrepLabel(pub u32);

impl IrrepLabel {
    pub fn weight(self) -> u32 {
        self.0
    }

    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }

    pub fn half(self) -> HalfInt {
        HalfInt::from_twice(self.0 as i64)
    }
}

impl From<u32> for IrrepLabel {
    fn from(a: u32) -> Self {
        IrrepLabel(a)
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V({})", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sl2Generator {
    E,
    H,
    F,
}

impl Sl2Generator {
    pub const ALL: [Sl2Generator; 3] = [Sl2Generator::E, Sl2Generator::H, Sl2Generator::F];
}

/// Matrices of `e, h, f` on `V(a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sl2Triple {
    pub e: RatMatrix,
    pub h: RatMatrix,
    pub f: RatMatrix,
}

impl Sl2Triple {
    pub fn get(&self, g: Sl2Generator) -> &RatMatrix {
        match g {
            Sl2Generator::E => &self.e,
            Sl2Generator::H => &self.h,
            Sl2Generator::F => &self.f,
        }
    }

    /// `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
    pub fn satisfies_relations(&self) -> bool {
        let two = rat(2);
        self.h.commutator(&self.e).ok() == Some(self.e.scale(&two))
            && self.h.commutator(&self.f).ok() == Some(self.f.scale(&-two))
            && self.e.commutator(&self.f).ok() == Some(self.h.clone())
    }
}

pub fn rep_matrices(a: IrrepLabel) -> Sl2Triple {
    let a = a.0 as i64;
    let n = (a + 1) as usize;
    let mut e = RatMatrix::zeros(n, n);
    let mut h = RatMatrix::zeros(n, n);
    let mut f = RatMatrix::zeros(n, n);
    for i in 0..n {
        let ii = i as i64;
        h[(i, i)] = rat(a - 2 * ii);
        if i >= 1 {
            e[(i - 1, i)] = rat(a - ii + 1);
        }
        if i + 1 < n {
            f[(i + 1, i)] = rat(ii + 1);
        }
    }
    Sl2Triple { e, h, f }
}

/// `s·v_i` in `V(m)` as a sparse combination of basis vectors.
pub fn act_on_basis(m: IrrepLabel, g: Sl2Generator, i: usize) -> Option<(usize, Rational)> {
    let (m, ii) = (m.0 as i64, i as i64);
    match g {
        Sl2Generator::E => (i >= 1).then(|| (i - 1, rat(m - ii + 1))),
        Sl2Generator::H => (m != 2 * ii).then(|| (i, rat(m - 2 * ii))),
        Sl2Generator::F => (ii < m).then(|| (i + 1, rat(ii + 1))),
    }
}

/// Dimension of `Hom_sl2(V(k), V(a) ⊗ V(b))`: 1 if `(a/2, b/2, k/2)` is a
/// triangle, else 0.
pub fn cg_multiplicity(a: IrrepLabel, b: IrrepLabel, k: IrrepLabel) -> u32 {
    u32::from(sixj::triangle(a.half(), b.half(), k.half()))
}

/// Pair of representations acting on `Hom(V(b), V(a))`.
#[derive(Debug, Clone)]
pub struct HomModule {
    pub a: IrrepLabel,
    pub b: IrrepLabel,
    ra: Sl2Triple,
    rb: Sl2Triple,
}

impl HomModule {
    pub fn new(a: IrrepLabel, b: IrrepLabel) -> Self {
        HomModule {
            a,
            b,
            ra: rep_matrices(a),
            rb: rep_matrices(b),
        }
    }

    pub fn rows(&self) -> usize {
        self.a.dim()
    }

    pub fn cols(&self) -> usize {
        self.b.dim()
    }

    /// `R_a(s)T − T R_b(s)`.
    pub fn act(&self, g: Sl2Generator, t: &RatMatrix) -> RatMatrix {
        &(self.ra.get(g) * t) - &(t * self.rb.get(g))
    }

    /// Weight of the elementary matrix `E_pq`.
    pub fn weight_of(&self, p: usize, q: usize) -> i64 {
        (self.a.0 as i64 - 2 * p as i64) - (self.b.0 as i64 - 2 * q as i64)
    }

    fn positions_of_weight(&self, w: i64) -> Vec<(usize, usize)> {
        (0..self.rows())
            .flat_map(|p| (0..self.cols()).map(move |q| (p, q)))
            .filter(|&(p, q)| self.weight_of(p, q) == w)
            .collect()
    }
}

/// The images `X(v_0), …, X(v_m)` of one sl(2)-equivariant map
/// `V(m) → Hom(V(b), V(a))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantFamily {
    pub m: IrrepLabel,
    pub b: IrrepLabel,
    pub a: IrrepLabel,
    pub mats: Vec<RatMatrix>,
}

impl EquivariantFamily {
    /// Linear combination `X(Σ c_i v_i)`.
    pub fn eval(&self, coeffs: &[Rational]) -> RatMatrix {
        let mut out = RatMatrix::zeros(self.a.dim(), self.b.dim());
        for (c, x) in coeffs.iter().zip(&self.mats) {
            if !c.is_zero() {
                out = &out + &x.scale(c);
            }
        }
        out
    }

    pub fn scale(&self, k: &Rational) -> Self {
        EquivariantFamily {
            mats: self.mats.iter().map(|x| x.scale(k)).collect(),
            ..self.clone()
        }
    }

    /// Pairs `(generator, i)` where `X(s·v_i) ≠ s·X(v_i)`.
    pub fn equivariance_violations(&self) -> Vec<(Sl2Generator, usize)> {
        let hom = HomModule::new(self.a, self.b);
        let mut bad = Vec::new();
        for g in Sl2Generator::ALL {
            for (i, x) in self.mats.iter().enumerate() {
                let lhs = match act_on_basis(self.m, g, i) {
                    Some((j, c)) => self.mats[j].scale(&c),
                    None => RatMatrix::zeros(self.a.dim(), self.b.dim()),
                };
                if lhs != hom.act(g, x) {
                    bad.push((g, i));
                }
            }
        }
        bad
    }

    pub fn is_equivariant(&self) -> bool {
        self.mats.len() == self.m.dim() && self.equivariance_violations().is_empty()
    }

    /// Scalar `k` with `other = k·self`, if the families are proportional.
    pub fn ratio_to(&self, other: &EquivariantFamily) -> Option<Rational> {
        let (x, y) = self
            .mats
            .iter()
            .zip(&other.mats)
            .find_map(|(x, y)| first_nonzero(x).map(|(i, v)| (v.clone(), y.entries()[i].clone())))?;
        let k = y / x;
        (self.scale(&k).mats == other.mats).then_some(k)
    }
}

fn first_nonzero(m: &RatMatrix) -> Option<(usize, &Rational)> {
    m.entries().iter().enumerate().find(|(_, x)| !x.is_zero())
}

/// The (unique up to scale) equivariant map `V(m) → Hom(V(b), V(a))`, or
/// `None` when `V(m)` does not occur in `Hom(V(b), V(a))`.
///
/// `X(v_0)` is the highest-weight vector of weight `m` (kernel of `e` on the
/// weight-`m` subspace), scaled so its first nonzero entry is 1; the rest
/// follow from `X(v_{i+1}) = f·X(v_i) / (i+1)`.
pub fn equivariant_family(m: IrrepLabel, b: IrrepLabel, a: IrrepLabel) -> Option<EquivariantFamily> {
    let hom = HomModule::new(a, b);
    let positions = hom.positions_of_weight(m.0 as i64);
    if positions.is_empty() {
        return None;
    }
    let (rows, cols) = (hom.rows(), hom.cols());
    let unit = |p: usize, q: usize| {
        let mut t = RatMatrix::zeros(rows, cols);
        t[(p, q)] = Rational::one();
        t
    };
    // Columns: e acting on each weight-m elementary matrix, flattened.
    let images: Vec<Vec<Rational>> = positions
        .iter()
        .map(|&(p, q)| hom.act(Sl2Generator::E, &unit(p, q)).into_entries())
        .collect();
    let system = RatMatrix::from_entries(
        rows * cols,
        positions.len(),
        (0..rows * cols)
            .flat_map(|r| images.iter().map(move |col| col[r].clone()))
            .collect(),
    )
    .expect("shape");
    let kernel = system.kernel_basis();
    debug_assert!(kernel.len() <= 1, "Hom spaces between sl(2) irreducibles are multiplicity free");
    let v = kernel.into_iter().next()?;

    let mut top = RatMatrix::zeros(rows, cols);
    for (k, &(p, q)) in positions.iter().enumerate() {
        top[(p, q)] = v[(k, 0)].clone();
    }
    let lead = first_nonzero(&top).expect("nonzero kernel vector").1.clone();
    top = top.scale(&lead.recip());

    let mut mats = vec![top];
    for i in 0..m.0 as i64 {
        let next = hom.act(Sl2Generator::F, mats.last().expect("nonempty")).scale(&Rational::new(1.into(), (i + 1).into()));
        mats.push(next);
    }
    Some(EquivariantFamily { m, b, a, mats })
}

/// Highest weights (with multiplicity, ascending) of the sl(2)-submodule of
/// `Hom(V(b), V(a))` generated by `mats`.
pub fn decompose_span(mats: &[RatMatrix], a: IrrepLabel, b: IrrepLabel) -> Vec<IrrepLabel> {
    let hom = HomModule::new(a, b);
    let module = SpanBasis::closure(mats, &hom);
    if module.vectors.is_empty() {
        return Vec::new();
    }

    // The submodule is h-stable, so it is the direct sum of the weight
    // projections of its spanning vectors.
    let mut by_weight: BTreeMap<i64, Vec<RatMatrix>> = BTreeMap::new();
    for v in &module.vectors {
        let mut parts: BTreeMap<i64, RatMatrix> = BTreeMap::new();
        for p in 0..hom.rows() {
            for q in 0..hom.cols() {
                if !v[(p, q)].is_zero() {
                    parts
                        .entry(hom.weight_of(p, q))
                        .or_insert_with(|| RatMatrix::zeros(hom.rows(), hom.cols()))[(p, q)] = v[(p, q)].clone();
                }
            }
        }
        for (w, part) in parts {
            by_weight.entry(w).or_default().push(part);
        }
    }

    // Highest-weight vectors of weight w: the kernel of e on the weight space.
    let mut out = Vec::new();
    for (&w, vectors) in &by_weight {
        if w < 0 {
            continue;
        }
        let space = SpanBasis::from_vectors(vectors);
        let images: Vec<RatMatrix> = space.vectors.iter().map(|t| hom.act(Sl2Generator::E, t)).collect();
        let rank_e = crate::matrix::span_rank(&images);
        let count = space.vectors.len() - rank_e;
        out.extend(std::iter::repeat(IrrepLabel(w as u32)).take(count));
    }
    out
}

/// Echelon basis of a span of equally-shaped matrices.
struct SpanBasis {
    shape: (usize, usize),
    vectors: Vec<RatMatrix>,
    /// Row-reduced copy used for membership tests.
    reduced: Vec<(usize, Vec<Rational>)>,
}

impl SpanBasis {
    fn new(shape: (usize, usize)) -> Self {
        SpanBasis {
            shape,
            vectors: Vec::new(),
            reduced: Vec::new(),
        }
    }

    fn from_vectors(vs: &[RatMatrix]) -> Self {
        let mut s = SpanBasis::new(vs.first().map_or((0, 0), RatMatrix::shape));
        for v in vs {
            s.insert(v);
        }
        s
    }

    /// Adds `v` if it is not already in the span; returns whether it was new.
    fn insert(&mut self, v: &RatMatrix) -> bool {
        let mut x: Vec<Rational> = v.entries().to_vec();
        for (pivot, row) in &self.reduced {
            if !x[*pivot].is_zero() {
                let c = x[*pivot].clone();
                for (xi, ri) in x.iter_mut().zip(row) {
                    *xi -= &c * ri;
                }
            }
        }
        let Some(pivot) = x.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = x[pivot].recip();
        for xi in &mut x {
            *xi *= &inv;
        }
        for (_, row) in &mut self.reduced {
            if !row[pivot].is_zero() {
                let c = row[pivot].clone();
                for (ri, xi) in row.iter_mut().zip(&x) {
                    *ri -= &c * xi;
                }
            }
        }
        self.reduced.push((pivot, x));
        self.vectors.push(v.clone());
        true
    }

    /// Smallest sl(2)-stable subspace containing `mats`.
    fn closure(mats: &[RatMatrix], hom: &HomModule) -> Self {
        let mut s = SpanBasis::new((hom.rows(), hom.cols()));
        let mut queue: Vec<RatMatrix> = mats.to_vec();
        while let Some(v) = queue.pop() {
            debug_assert_eq!(v.shape(), s.shape);
            if s.insert(&v) {
                for g in Sl2Generator::ALL {
                    queue.push(hom.act(g, &v));
                }
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{binomial, ratio};

    fn l(a: u32) -> IrrepLabel {
        IrrepLabel(a)
    }

    #[test]
    fn standard_matrices() {
        let r0 = rep_matrices(l(0));
        assert!(r0.e.is_zero() && r0.h.is_zero() && r0.f.is_zero());

        let r1 = rep_matrices(l(1));
        assert_eq!(r1.h, RatMatrix::from_i64(&[[1, 0], [0, -1]]));
        assert_eq!(r1.e, RatMatrix::from_i64(&[[0, 1], [0, 0]]));
        assert_eq!(r1.f, RatMatrix::from_i64(&[[0, 0], [1, 0]]));

        let r2 = rep_matrices(l(2));
        assert_eq!(r2.h, RatMatrix::from_i64(&[[2, 0, 0], [0, 0, 0], [0, 0, -2]]));
        assert_eq!(r2.e, RatMatrix::from_i64(&[[0, 2, 0], [0, 0, 1], [0, 0, 0]]));
        assert_eq!(r2.f, RatMatrix::from_i64(&[[0, 0, 0], [1, 0, 0], [0, 2, 0]]));
    }

    #[test]
    fn sl2_relations_hold_up_to_30() {
        for a in 0..=30 {
            assert!(rep_matrices(l(a)).satisfies_relations(), "a = {a}");
        }
    }

    #[test]
    fn multiplicities() {
        for m in 0..6 {
            assert_eq!(cg_multiplicity(l(0), l(m), l(m)), 1);
        }
        assert_eq!(cg_multiplicity(l(1), l(1), l(1)), 0);
        assert_eq!(cg_multiplicity(l(4), l(3), l(3)), 1);
    }

    #[test]
    fn family_for_trivial_ends() {
        // V(m) → Hom(V(m), V(0)): a row vector with alternating binomials.
        for m in [1u32, 3, 5] {
            let fam = equivariant_family(l(m), l(m), l(0)).unwrap();
            assert!(fam.is_equivariant());
            for (i, x) in fam.mats.iter().enumerate() {
                let mut expected = RatMatrix::zeros(1, m as usize + 1);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                expected[(0, m as usize - i)] = Rational::from_integer(binomial(m as u64, i as u64) * sign);
                assert_eq!(x, &expected, "m = {m}, i = {i}");
            }
        }
        assert!(equivariant_family(l(3), l(0), l(0)).is_none());
    }

    #[test]
    fn family_for_lowering_block() {
        // m = 1, Hom(V(1), V(2)): proportional to (J⁺; 0') and (0'; J⁻).
        let fam = equivariant_family(l(1), l(1), l(2)).unwrap();
        let expected = [
            RatMatrix::from_i64(&[[2, 0], [0, 1], [0, 0]]),
            RatMatrix::from_i64(&[[0, 0], [1, 0], [0, 2]]),
        ];
        for (x, y) in fam.mats.iter().zip(&expected) {
            assert_eq!(x.scale(&rat(2)), *y);
        }
    }

    #[test]
    fn families_exist_exactly_when_triangle_holds() {
        for m in 0..=12 {
            for a in 0..=12 {
                for b in 0..=12 {
                    let fam = equivariant_family(l(m), l(b), l(a));
                    assert_eq!(fam.is_some(), cg_multiplicity(l(a), l(b), l(m)) == 1, "m={m} a={a} b={b}");
                    if let Some(fam) = fam {
                        assert!(fam.is_equivariant(), "m={m} a={a} b={b}");
                    }
                }
            }
        }
    }

    #[test]
    fn span_decompositions() {
        assert_eq!(decompose_span(&[RatMatrix::identity(4)], l(3), l(3)), vec![l(0)]);
        assert!(decompose_span(&[], l(2), l(2)).is_empty());
        let one = decompose_span(&[RatMatrix::from_i64(&[[0, 0], [1, 0]])], l(1), l(1));
        assert_eq!(one, vec![l(2)]);
    }

    #[test]
    fn full_hom_space_is_clebsch_gordan() {
        for a in 0..=8u32 {
            for b in 0..=8u32 {
                let mut basis = Vec::new();
                for p in 0..=a as usize {
                    for q in 0..=b as usize {
                        let mut t = RatMatrix::zeros(a as usize + 1, b as usize + 1);
                        t[(p, q)] = ratio(1, 1);
                        basis.push(t);
                    }
                }
                let expected: Vec<IrrepLabel> = (a.abs_diff(b)..=a + b).step_by(2).map(l).collect();
                assert_eq!(decompose_span(&basis, l(a), l(b)), expected, "a={a} b={b}");
            }
        }
    }
}
