//! The conformal Galilei algebra `g = sl(2) ⋉ h_n`, `h_n = V(m) ⊕ ℚz`,
//! `m = 2n − 1`.
//!
//! Basis order is fixed as `(e, h, f, v_0, …, v_m, z)`. Besides the sl(2)
//! relations and the standard action on `V(m)`, the only nonzero brackets are
//! `[v_i, v_{m−i}] = (−1)^i C(m, i) z`.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{binomial, rat, Rational};
use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::sl2::{act_on_basis, IrrepLabel, Sl2Generator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AlgebraSpec {
    n: u32,
    m: u32,
}

impl AlgebraSpec {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("h_n requires n >= 1".into()));
        }
        Ok(AlgebraSpec { n, m: 2 * n - 1 })
    }

    pub fn from_m(m: u32) -> Result<Self> {
        if m % 2 == 0 {
            return Err(Error::InvalidParameter(format!("h_n requires odd m = 2n−1, got m = {m}")));
        }
        Self::new((m + 1) / 2)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn m_label(&self) -> IrrepLabel {
        IrrepLabel(self.m)
    }

    /// `dim g = 2n + 4`.
    pub fn dim(&self) -> usize {
        2 * self.n as usize + 4
    }

    pub fn heisenberg_dim(&self) -> usize {
        2 * self.n as usize + 1
    }

    pub fn basis(&self) -> Vec<BasisElement> {
        (0..self.dim()).map(|k| BasisElement::from_index(*self, k)).collect()
    }

    /// `v_0, …, v_m, z`.
    pub fn radical_basis(&self) -> Vec<BasisElement> {
        (0..=self.m as usize)
            .map(BasisElement::V)
            .chain(std::iter::once(BasisElement::Z))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    E,
    H,
    F,
    V(usize),
    Z,
}

impl BasisElement {
    pub fn index(self, spec: AlgebraSpec) -> usize {
        match self {
            BasisElement::E => 0,
            BasisElement::H => 1,
            BasisElement::F => 2,
            BasisElement::V(i) => 3 + i,
            BasisElement::Z => spec.dim() - 1,
        }
    }

    pub fn from_index(spec: AlgebraSpec, k: usize) -> Self {
        match k {
            0 => BasisElement::E,
            1 => BasisElement::H,
            2 => BasisElement::F,
            k if k == spec.dim() - 1 => BasisElement::Z,
            k => BasisElement::V(k - 3),
        }
    }

    pub fn sl2(self) -> Option<Sl2Generator> {
        match self {
            BasisElement::E => Some(Sl2Generator::E),
            BasisElement::H => Some(Sl2Generator::H),
            BasisElement::F => Some(Sl2Generator::F),
            _ => None,
        }
    }

    pub fn is_radical(self) -> bool {
        matches!(self, BasisElement::V(_) | BasisElement::Z)
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::E => write!(f, "e"),
            BasisElement::H => write!(f, "h"),
            BasisElement::F => write!(f, "f"),
            BasisElement::V(i) => write!(f, "v_{i}"),
            BasisElement::Z => write!(f, "z"),
        }
    }
}

/// An element of `g` by its coordinates in the fixed basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GalileiElement {
    coeffs: Vec<Rational>,
}

impl GalileiElement {
    pub fn zero(spec: AlgebraSpec) -> Self {
        GalileiElement {
            coeffs: vec![Rational::zero(); spec.dim()],
        }
    }

    pub fn basis(spec: AlgebraSpec, b: BasisElement) -> Self {
        let mut x = Self::zero(spec);
        x.coeffs[b.index(spec)] = Rational::one();
        x
    }

    pub fn from_coeffs(spec: AlgebraSpec, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != spec.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for an algebra of dimension {}",
                coeffs.len(),
                spec.dim()
            )));
        }
        Ok(GalileiElement { coeffs })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, spec: AlgebraSpec, b: BasisElement) -> &Rational {
        &self.coeffs[b.index(spec)]
    }

    pub fn e_coeff(&self) -> &Rational {
        &self.coeffs[0]
    }

    pub fn h_coeff(&self) -> &Rational {
        &self.coeffs[1]
    }

    pub fn f_coeff(&self) -> &Rational {
        &self.coeffs[2]
    }

    pub fn v_coeffs(&self) -> &[Rational] {
        &self.coeffs[3..self.coeffs.len() - 1]
    }

    pub fn z_coeff(&self) -> &Rational {
        self.coeffs.last().expect("nonempty")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero terms `(basis element, coefficient)`.
    pub fn terms(&self, spec: AlgebraSpec) -> impl Iterator<Item = (BasisElement, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (BasisElement::from_index(spec, k), c))
    }

    fn axpy(&mut self, k: usize, c: &Rational) {
        self.coeffs[k] += c;
    }
}

/// Bracket of two basis elements as a sparse vector.
pub fn basis_bracket(spec: AlgebraSpec, x: BasisElement, y: BasisElement) -> Vec<(BasisElement, Rational)> {
    use BasisElement::*;
    let m = spec.m_label();
    match (x, y) {
        (H, E) => vec![(E, rat(2))],
        (E, H) => vec![(E, rat(-2))],
        (H, F) => vec![(F, rat(-2))],
        (F, H) => vec![(F, rat(2))],
        (E, F) => vec![(H, rat(1))],
        (F, E) => vec![(H, rat(-1))],
        (s, V(i)) if s.sl2().is_some() => act_on_basis(m, s.sl2().expect("sl2"), i)
            .map(|(j, c)| vec![(V(j), c)])
            .unwrap_or_default(),
        (V(i), s) if s.sl2().is_some() => act_on_basis(m, s.sl2().expect("sl2"), i)
            .map(|(j, c)| vec![(V(j), -c)])
            .unwrap_or_default(),
        (V(i), V(j)) if i + j == spec.m as usize => {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            vec![(Z, Rational::from_integer(binomial(spec.m as u64, i as u64) * sign))]
        }
        _ => Vec::new(),
    }
}

/// Bilinear extension of [`basis_bracket`].
pub fn bracket(spec: AlgebraSpec, x: &GalileiElement, y: &GalileiElement) -> Result<GalileiElement> {
    if x.coeffs.len() != spec.dim() || y.coeffs.len() != spec.dim() {
        return Err(Error::DimensionMismatch("element does not match the algebra".into()));
    }
    let mut out = GalileiElement::zero(spec);
    for (bx, cx) in x.terms(spec) {
        for (by, cy) in y.terms(spec) {
            for (b, c) in basis_bracket(spec, bx, by) {
                out.axpy(b.index(spec), &(cx * cy * c));
            }
        }
    }
    Ok(out)
}

/// One nonzero entry of the structure-constant table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureConstant {
    pub i: usize,
    pub j: usize,
    #[serde(serialize_with = "serialize_coeffs")]
    pub coeffs: Vec<Rational>,
}

fn serialize_coeffs<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

/// All pairs `(i, j)` with `[b_i, b_j] ≠ 0`, each with its full coordinate vector.
pub fn structure_constants(spec: AlgebraSpec) -> Vec<StructureConstant> {
    let basis = spec.basis();
    let mut out = Vec::new();
    for (i, &x) in basis.iter().enumerate() {
        for (j, &y) in basis.iter().enumerate() {
            let br = basis_bracket(spec, x, y);
            if br.is_empty() {
                continue;
            }
            let mut coeffs = vec![Rational::zero(); spec.dim()];
            for (b, c) in br {
                coeffs[b.index(spec)] += c;
            }
            out.push(StructureConstant { i, j, coeffs });
        }
    }
    out
}

pub fn structure_constants_json(spec: AlgebraSpec) -> String {
    serde_json::to_string_pretty(&structure_constants(spec)).expect("serializable")
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct JacobiReport {
    pub triples_checked: usize,
    pub violations: Vec<(BasisElement, BasisElement, BasisElement)>,
}

impl JacobiReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `[[x,y],w] + [[y,w],x] + [[w,x],y] = 0` over all basis triples.
pub fn verify_jacobi(spec: AlgebraSpec) -> JacobiReport {
    let basis = spec.basis();
    let el = |b| GalileiElement::basis(spec, b);
    let br = |x: &GalileiElement, y: &GalileiElement| bracket(spec, x, y).expect("conforming elements");
    let mut report = JacobiReport::default();
    for &x in &basis {
        for &y in &basis {
            for &w in &basis {
                let (ex, ey, ew) = (el(x), el(y), el(w));
                let t1 = br(&br(&ex, &ey), &ew);
                let t2 = br(&br(&ey, &ew), &ex);
                let t3 = br(&br(&ew, &ex), &ey);
                let total: Vec<Rational> = (0..spec.dim())
                    .map(|k| &t1.coeffs[k] + &t2.coeffs[k] + &t3.coeffs[k])
                    .collect();
                report.triples_checked += 1;
                if total.iter().any(|c| !c.is_zero()) {
                    report.violations.push((x, y, w));
                }
            }
        }
    }
    report
}

/// Gram matrix of `ω(v_i, v_j)`, the `z`-coordinate of `[v_i, v_j]`.
pub fn heisenberg_form(spec: AlgebraSpec) -> RatMatrix {
    let n = spec.m as usize + 1;
    let mut w = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            for (b, c) in basis_bracket(spec, BasisElement::V(i), BasisElement::V(j)) {
                if b == BasisElement::Z {
                    w[(i, j)] = c;
                }
            }
        }
    }
    w
}

/// Whether `ω(s·u, w) + ω(u, s·w) = 0` for `s ∈ {e, h, f}` and all basis
/// vectors `u, w` of `V(m)`.
pub fn form_is_sl2_invariant(m: IrrepLabel, form: &RatMatrix) -> bool {
    let n = m.dim();
    if form.shape() != (n, n) {
        return false;
    }
    let apply = |g, i| act_on_basis(m, g, i);
    for g in Sl2Generator::ALL {
        for u in 0..n {
            for w in 0..n {
                let mut total = Rational::zero();
                if let Some((k, c)) = apply(g, u) {
                    total += c * &form[(k, w)];
                }
                if let Some((k, c)) = apply(g, w) {
                    total += c * &form[(u, k)];
                }
                if !total.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

pub fn sl2_invariant_form_check(spec: AlgebraSpec) -> bool {
    form_is_sl2_invariant(spec.m_label(), &heisenberg_form(spec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::span_rank;
    use BasisElement::*;

    fn spec(n: u32) -> AlgebraSpec {
        AlgebraSpec::new(n).unwrap()
    }

    fn br(s: AlgebraSpec, x: BasisElement, y: BasisElement) -> GalileiElement {
        bracket(s, &GalileiElement::basis(s, x), &GalileiElement::basis(s, y)).unwrap()
    }

    #[test]
    fn dimensions() {
        let s = spec(3);
        assert_eq!((s.m(), s.dim(), s.heisenberg_dim()), (5, 10, 7));
        assert!(AlgebraSpec::from_m(4).is_err());
        assert_eq!(AlgebraSpec::from_m(7).unwrap().n(), 4);
        for (k, b) in s.basis().into_iter().enumerate() {
            assert_eq!(b.index(s), k);
        }
    }

    #[test]
    fn heisenberg_brackets() {
        let s = spec(2);
        let z = GalileiElement::basis(s, Z);
        assert_eq!(br(s, V(0), V(3)), z);
        let mut minus3z = GalileiElement::zero(s);
        minus3z.coeffs[Z.index(s)] = rat(-3);
        assert_eq!(br(s, V(1), V(2)), minus3z);
        for i in 0..4 {
            assert!(br(s, Z, V(i)).is_zero());
        }
        assert!(br(s, V(0), V(2)).is_zero());
    }

    #[test]
    fn sl2_part() {
        let s = spec(1);
        assert_eq!(br(s, E, F), GalileiElement::basis(s, H));
        assert_eq!(br(s, E, V(1)), GalileiElement::basis(s, V(0)));
        assert_eq!(*br(s, H, V(1)).coeff(s, V(1)), rat(-1));
        assert!(br(s, F, Z).is_zero());
        let bad = GalileiElement::zero(spec(2));
        assert!(bracket(s, &bad, &GalileiElement::zero(s)).is_err());
    }

    #[test]
    fn antisymmetric_on_basis() {
        for n in 1..=4 {
            let s = spec(n);
            for x in s.basis() {
                for y in s.basis() {
                    let a = br(s, x, y);
                    let b = br(s, y, x);
                    assert!(a.coeffs.iter().zip(&b.coeffs).all(|(p, q)| (p + q).is_zero()));
                }
            }
        }
    }

    #[test]
    fn jacobi_identity_up_to_n6() {
        for n in 1..=6 {
            let r = verify_jacobi(spec(n));
            assert!(r.holds(), "n = {n}: {:?}", r.violations);
            assert_eq!(r.triples_checked, spec(n).dim().pow(3));
        }
    }

    #[test]
    fn derived_algebras() {
        for n in 1..=5 {
            let s = spec(n);
            let as_row = |x: GalileiElement| RatMatrix::from_entries(1, s.dim(), x.coeffs).unwrap();
            // [h_n, h_n] is the z-line.
            let hh: Vec<RatMatrix> = s
                .radical_basis()
                .into_iter()
                .flat_map(|x| s.radical_basis().into_iter().map(move |y| (x, y)))
                .map(|(x, y)| as_row(br(s, x, y)))
                .collect();
            assert_eq!(span_rank(&hh), 1);
            assert!(hh.iter().all(|r| r.entries()[..s.dim() - 1].iter().all(Zero::is_zero)));
            // [g, h_n] = h_n.
            let gh: Vec<RatMatrix> = s
                .basis()
                .into_iter()
                .flat_map(|x| s.radical_basis().into_iter().map(move |y| (x, y)))
                .map(|(x, y)| as_row(br(s, x, y)))
                .collect();
            assert_eq!(span_rank(&gh), s.heisenberg_dim());
        }
    }

    #[test]
    fn invariant_forms() {
        assert!(sl2_invariant_form_check(spec(1)));
        assert!(sl2_invariant_form_check(spec(2)));
        let mut corrupted = RatMatrix::zeros(4, 4);
        corrupted[(0, 3)] = rat(1);
        corrupted[(3, 0)] = rat(-1);
        corrupted[(1, 2)] = rat(1);
        corrupted[(2, 1)] = rat(-1);
        assert!(!form_is_sl2_invariant(IrrepLabel(3), &corrupted));
    }

    #[test]
    fn structure_table_export() {
        let s = spec(1);
        let table = structure_constants(s);
        let v0v1 = table.iter().find(|c| c.i == V(0).index(s) && c.j == V(1).index(s)).unwrap();
        assert_eq!(v0v1.coeffs[Z.index(s)], rat(1));
        let json: serde_json::Value = serde_json::from_str(&structure_constants_json(s)).unwrap();
        assert_eq!(json.as_array().unwrap().len(), table.len());
    }
}
