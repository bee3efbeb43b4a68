//! Block upper-triangular matrix representations of `sl(2) ⋉ h_n` in a basis
//! adapted to a composition series.
//!
//! Diagonal blocks of `e, h, f` are the standard matrices of the socle
//! factors; radical generators `v_i`, `z` live strictly above the diagonal.
//! Uniseriality then reduces to a structural check: every block on the first
//! superdiagonal must be hit by some radical generator.

mod constructions;
mod export;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{binomial, Rational};
use crate::error::{Error, Result};
use crate::galilei::{basis_bracket, AlgebraSpec, BasisElement, GalileiElement};
use crate::matrix::{span_rank, RatMatrix};
use crate::sl2::{rep_matrices, IrrepLabel};

pub use constructions::{assemble_intro_example, build_construction, lower_maps, raise_maps, Construction};
pub use export::{block_rep_json, block_rep_markdown};

/// Socle factors `V(a_1), …, V(a_ℓ)` from the bottom up.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SocleSequence(Vec<IrrepLabel>);

impl SocleSequence {
    pub fn new(labels: Vec<IrrepLabel>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidParameter("socle sequence must be nonempty".into()));
        }
        Ok(SocleSequence(labels))
    }

    /// Panics on an empty slice.
    pub fn of(weights: &[u32]) -> Self {
        Self::new(weights.iter().copied().map(IrrepLabel).collect()).expect("nonempty socle sequence")
    }

    pub fn labels(&self) -> &[IrrepLabel] {
        &self.0
    }

    pub fn weights(&self) -> Vec<u32> {
        self.0.iter().map(|l| l.0).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn reversed(&self) -> Self {
        SocleSequence(self.0.iter().rev().copied().collect())
    }

    pub fn offsets(&self) -> Vec<usize> {
        self.0
            .iter()
            .scan(0, |acc, l| {
                let start = *acc;
                *acc += l.dim();
                Some(start)
            })
            .collect()
    }

    pub fn total_dim(&self) -> usize {
        self.0.iter().map(|l| l.dim()).sum()
    }
}

impl fmt::Display for SocleSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl serde::Serialize for SocleSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|l| l.0))
    }
}

/// Blocks `(i, j) ↦ matrix` of one generator; absent blocks are zero.
pub type BlockMap = BTreeMap<(usize, usize), RatMatrix>;

#[derive(Debug, Clone, PartialEq, Eq)]
struct GeneratorImage {
    full: RatMatrix,
    blocks: BlockMap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockRep {
    spec: AlgebraSpec,
    socle: SocleSequence,
    offsets: Vec<usize>,
    /// Indexed by basis position `(e, h, f, v_0, …, v_m, z)`.
    generators: Vec<GeneratorImage>,
}

impl BlockRep {
    /// Builds a representation from the radical blocks; `radical[k]` holds the
    /// blocks of `v_k` for `k ≤ m` and `radical[m + 1]` those of `z`.
    pub fn new(spec: AlgebraSpec, socle: SocleSequence, radical: Vec<BlockMap>) -> Result<Self> {
        if radical.len() != spec.m() as usize + 2 {
            return Err(Error::DimensionMismatch(format!(
                "expected {} radical generators, got {}",
                spec.m() + 2,
                radical.len()
            )));
        }
        let offsets = socle.offsets();
        let n = socle.total_dim();
        let labels = socle.labels().to_vec();

        let mut generators = Vec::with_capacity(spec.dim());
        let triples: Vec<_> = labels.iter().map(|&l| rep_matrices(l)).collect();
        for g in [BasisElement::E, BasisElement::H, BasisElement::F] {
            let s = g.sl2().expect("sl2 generator");
            let mut full = RatMatrix::zeros(n, n);
            let mut blocks = BlockMap::new();
            for (t, triple) in triples.iter().enumerate() {
                let block = triple.get(s).clone();
                full.set_block(offsets[t], offsets[t], &block);
                if !block.is_zero() {
                    blocks.insert((t, t), block);
                }
            }
            generators.push(GeneratorImage { full, blocks });
        }

        let z_index = radical.len() - 1;
        for (k, blocks) in radical.into_iter().enumerate() {
            let mut full = RatMatrix::zeros(n, n);
            let mut kept = BlockMap::new();
            for ((i, j), block) in blocks {
                if i >= labels.len() || j >= labels.len() {
                    return Err(Error::DimensionMismatch(format!("block ({i},{j}) outside the grid")));
                }
                if j <= i {
                    return Err(Error::InvalidParameter(format!(
                        "radical block ({i},{j}) is not strictly upper triangular"
                    )));
                }
                if k == z_index && j == i + 1 && !block.is_zero() {
                    return Err(Error::InvalidParameter(format!(
                        "z has a nonzero first-superdiagonal block ({i},{j})"
                    )));
                }
                if block.shape() != (labels[i].dim(), labels[j].dim()) {
                    return Err(Error::DimensionMismatch(format!(
                        "block ({i},{j}) is {}x{}, expected {}x{}",
                        block.rows(),
                        block.cols(),
                        labels[i].dim(),
                        labels[j].dim()
                    )));
                }
                full.set_block(offsets[i], offsets[j], &block);
                if !block.is_zero() {
                    kept.insert((i, j), block);
                }
            }
            generators.push(GeneratorImage { full, blocks: kept });
        }

        Ok(BlockRep {
            spec,
            socle,
            offsets,
            generators,
        })
    }

    /// Splits full matrices (in basis order) into blocks and validates the
    /// adapted-basis shape.
    pub fn from_full_matrices(spec: AlgebraSpec, socle: SocleSequence, mats: Vec<RatMatrix>) -> Result<Self> {
        if mats.len() != spec.dim() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} generator matrices, got {}",
                spec.dim(),
                mats.len()
            )));
        }
        let offsets = socle.offsets();
        let labels = socle.labels();
        let n = socle.total_dim();
        let mut radical = Vec::new();
        for (k, full) in mats.iter().enumerate() {
            if full.shape() != (n, n) {
                return Err(Error::DimensionMismatch(format!("generator {k} is not {n}x{n}")));
            }
            let mut blocks = BlockMap::new();
            for i in 0..labels.len() {
                for j in 0..labels.len() {
                    let b = full.submatrix(offsets[i], offsets[j], labels[i].dim(), labels[j].dim());
                    if !b.is_zero() {
                        blocks.insert((i, j), b);
                    }
                }
            }
            let b = BasisElement::from_index(spec, k);
            if b.sl2().is_some() {
                let s = b.sl2().expect("sl2");
                for (&(i, j), block) in &blocks {
                    if i != j || *block != *rep_matrices(labels[i]).get(s) {
                        return Err(Error::InvalidParameter(format!(
                            "{b} is not the standard block-diagonal matrix at ({i},{j})"
                        )));
                    }
                }
                for (t, &l) in labels.iter().enumerate() {
                    if !rep_matrices(l).get(s).is_zero() && !blocks.contains_key(&(t, t)) {
                        return Err(Error::InvalidParameter(format!("{b} is missing diagonal block {t}")));
                    }
                }
            } else {
                radical.push(blocks);
            }
        }
        Self::new(spec, socle, radical)
    }

    /// Length-3 representation with superdiagonal families `x` (block (0,1)),
    /// `y` (block (1,2)) and `Z(z)` in block (0,2).
    pub fn length3(
        spec: AlgebraSpec,
        socle: SocleSequence,
        x: &[RatMatrix],
        y: &[RatMatrix],
        z: RatMatrix,
    ) -> Result<Self> {
        if socle.len() != 3 {
            return Err(Error::InvalidParameter("length3 needs three socle factors".into()));
        }
        let k = spec.m() as usize + 1;
        if x.len() != k || y.len() != k {
            return Err(Error::DimensionMismatch(format!("families must have {k} matrices")));
        }
        let mut radical: Vec<BlockMap> = x
            .iter()
            .zip(y)
            .map(|(xi, yi)| BlockMap::from([((0, 1), xi.clone()), ((1, 2), yi.clone())]))
            .collect();
        radical.push(BlockMap::from([((0, 2), z)]));
        Self::new(spec, socle, radical)
    }

    pub fn spec(&self) -> AlgebraSpec {
        self.spec
    }

    pub fn socle(&self) -> &SocleSequence {
        &self.socle
    }

    pub fn len(&self) -> usize {
        self.socle.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.socle.total_dim()
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn matrix(&self, b: BasisElement) -> &RatMatrix {
        &self.generators[b.index(self.spec)].full
    }

    pub fn matrices(&self) -> impl Iterator<Item = (BasisElement, &RatMatrix)> {
        self.spec.basis().into_iter().map(move |b| (b, self.matrix(b)))
    }

    /// Block `(i, j)` of the image of `b` (zero if not stored).
    pub fn block(&self, b: BasisElement, i: usize, j: usize) -> RatMatrix {
        let labels = self.socle.labels();
        self.generators[b.index(self.spec)]
            .blocks
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| RatMatrix::zeros(labels[i].dim(), labels[j].dim()))
    }

    fn has_block(&self, b: BasisElement, i: usize, j: usize) -> bool {
        self.generators[b.index(self.spec)].blocks.contains_key(&(i, j))
    }

    /// Image of an arbitrary element.
    pub fn image(&self, x: &GalileiElement) -> RatMatrix {
        let mut out = RatMatrix::zeros(self.dim(), self.dim());
        for (b, c) in x.terms(self.spec) {
            out = &out + &self.matrix(b).scale(c);
        }
        out
    }

    /// Matrices of block `(i, j)` for `v_0, …, v_m`.
    pub fn radical_family(&self, i: usize, j: usize) -> Vec<RatMatrix> {
        (0..=self.spec.m() as usize)
            .map(|k| self.block(BasisElement::V(k), i, j))
            .collect()
    }

    /// Structural invariants of an adapted basis; returns a description of
    /// every failure.
    pub fn structural_problems(&self) -> Vec<String> {
        let mut problems = Vec::new();
        for (t, &l) in self.socle.labels().iter().enumerate() {
            let triple = crate::sl2::Sl2Triple {
                e: self.block(BasisElement::E, t, t),
                h: self.block(BasisElement::H, t, t),
                f: self.block(BasisElement::F, t, t),
            };
            if !triple.satisfies_relations() || triple != rep_matrices(l) {
                problems.push(format!("diagonal block {t} is not the standard {l}"));
            }
        }
        for (k, g) in self.generators.iter().enumerate() {
            let b = BasisElement::from_index(self.spec, k);
            for &(i, j) in g.blocks.keys() {
                let ok = match b {
                    BasisElement::Z => j >= i + 2,
                    BasisElement::V(_) => j > i,
                    _ => i == j,
                };
                if !ok {
                    problems.push(format!("{b} has a block at ({i},{j})"));
                }
            }
        }
        problems
    }

    /// `Some(λ)` when `Z(z)` in block `(0, ℓ−1)` is `λ·I`.
    pub fn corner_scalar(&self) -> Option<Rational> {
        let l = self.len();
        self.block(BasisElement::Z, 0, l - 1).as_scalar()
    }

    pub fn with_z_block(&self, i: usize, j: usize, block: RatMatrix) -> Result<Self> {
        let mats = self.replace_block(BasisElement::Z, i, j, block);
        Self::from_full_matrices(self.spec, self.socle.clone(), mats)
    }

    /// Copy with block `(i, j)` of `b` replaced.
    pub fn replace_block(&self, b: BasisElement, i: usize, j: usize, block: RatMatrix) -> Vec<RatMatrix> {
        let mut mats: Vec<RatMatrix> = self.generators.iter().map(|g| g.full.clone()).collect();
        mats[b.index(self.spec)].set_block(self.offsets[i], self.offsets[j], &block);
        mats
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FuncaReport {
    /// Pairs `(i, j)` where `X(v_i)Y(v_j) − X(v_j)Y(v_i) ≠ Z([v_i, v_j])`.
    pub violations: Vec<(usize, usize)>,
}

impl FuncaReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `X(v_i)Y(v_j) − X(v_j)Y(v_i) = Z([v_i, v_j])` for all `i, j`.
pub fn verify_funca(rep: &BlockRep) -> Result<FuncaReport> {
    if rep.len() != 3 {
        return Err(Error::Precondition(format!("expected length 3, got {}", rep.len())));
    }
    let spec = rep.spec;
    let m = spec.m() as usize;
    let x = rep.radical_family(0, 1);
    let y = rep.radical_family(1, 2);
    let z = rep.block(BasisElement::Z, 0, 2);
    let mut report = FuncaReport::default();
    for i in 0..=m {
        for j in 0..=m {
            let lhs = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
            let mut rhs = RatMatrix::zeros(z.rows(), z.cols());
            for (b, c) in basis_bracket(spec, BasisElement::V(i), BasisElement::V(j)) {
                debug_assert_eq!(b, BasisElement::Z);
                rhs = z.scale(&c);
            }
            if lhs != rhs {
                report.violations.push((i, j));
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HomomorphismReport {
    pub pairs_checked: usize,
    /// Ordered pairs `(x, y)` with `R([x, y]) ≠ [R(x), R(y)]`.
    pub violations: Vec<(BasisElement, BasisElement)>,
}

impl HomomorphismReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `R([x, y]) = [R(x), R(y)]` over all ordered pairs of basis elements.
pub fn verify_homomorphism(rep: &BlockRep) -> HomomorphismReport {
    let spec = rep.spec;
    let mut report = HomomorphismReport::default();
    for x in spec.basis() {
        for y in spec.basis() {
            let mut lhs = RatMatrix::zeros(rep.dim(), rep.dim());
            for (b, c) in basis_bracket(spec, x, y) {
                lhs = &lhs + &rep.matrix(b).scale(&c);
            }
            let rhs = rep.matrix(x).commutator(rep.matrix(y)).expect("square matrices");
            report.pairs_checked += 1;
            if lhs != rhs {
                report.violations.push((x, y));
            }
        }
    }
    report
}

/// No block on the first superdiagonal vanishes identically on the radical.
/// Sufficient for uniseriality because `[g, h_n] = h_n`.
pub fn is_uniserial(rep: &BlockRep) -> bool {
    let radical = rep.spec.radical_basis();
    (0..rep.len().saturating_sub(1)).all(|i| radical.iter().any(|&b| rep.has_block(b, i, i + 1)))
}

/// Injectivity of `g → gl(d)`: the generator images are linearly independent.
pub fn is_faithful(rep: &BlockRep) -> bool {
    let mats: Vec<RatMatrix> = rep.generators.iter().map(|g| g.full.clone()).collect();
    span_rank(&mats) == rep.spec.dim()
}

/// Contragredient `x ↦ −R(x)ᵀ`, rewritten in an adapted standard basis.
///
/// `V(a)*` is identified with `V(a)` by `v_k* ↦ (−1)^k C(a,k)·v_{a−k}`, and
/// the block order is reversed, so the socle sequence is reversed.
pub fn dual(rep: &BlockRep) -> BlockRep {
    let labels = rep.socle.labels();
    let ell = labels.len();
    let n = rep.dim();
    let new_socle = rep.socle.reversed();
    let new_offsets = new_socle.offsets();
    let mut q = RatMatrix::zeros(n, n);
    let mut q_inv = RatMatrix::zeros(n, n);
    for (t, &l) in labels.iter().enumerate() {
        let a = l.0 as usize;
        let nt = ell - 1 - t;
        for k in 0..=a {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let d = Rational::new(sign.into(), binomial(a as u64, k as u64));
            let new = new_offsets[nt] + k;
            let old = rep.offsets[t] + (a - k);
            q[(new, old)] = d.clone();
            q_inv[(old, new)] = d.recip();
        }
    }
    let minus_one = -Rational::one();
    let mats = rep
        .generators
        .iter()
        .map(|g| &(&q * &g.full.transpose().scale(&minus_one)) * &q_inv)
        .collect();
    BlockRep::from_full_matrices(rep.spec, new_socle, mats).expect("contragredient of an adapted representation is adapted")
}

/// Rescales the superdiagonal blocks: conjugation by the block-diagonal
/// matrix `diag(s_0·I, …, s_{ℓ−1}·I)`. Block `(i, j)` is multiplied by
/// `s_i / s_j`.
pub fn conjugate_by_block_scalars(rep: &BlockRep, scalars: &[Rational]) -> Result<BlockRep> {
    if scalars.len() != rep.len() || scalars.iter().any(Zero::is_zero) {
        return Err(Error::InvalidParameter("need one nonzero scalar per block".into()));
    }
    let mut radical = Vec::new();
    for b in rep.spec.radical_basis() {
        let blocks = rep.generators[b.index(rep.spec)]
            .blocks
            .iter()
            .map(|(&(i, j), m)| ((i, j), m.scale(&(&scalars[i] / &scalars[j]))))
            .collect();
        radical.push(blocks);
    }
    BlockRep::new(rep.spec, rep.socle.clone(), radical)
}

#[cfg(test)]
mod tests;
