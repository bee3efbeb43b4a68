//! Classification of faithful uniserial `sl(2) ⋉ h_n`-modules.
//!
//! Length 3 is decided in closed form: the superdiagonal maps are the unique
//! (up to scale) equivariant families, so the only question is whether their
//! commutators `X(v_i)Y(v_j) − X(v_j)Y(v_i)` reproduce the Heisenberg bracket
//! with a single nonzero scalar. Longer modules are ruled out by the obstruction
//! and window arguments in [`length4`] and [`long`].

mod length4;
mod long;

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{binomial, Rational, Surd};
use crate::block_rep::{
    is_faithful, is_uniserial, verify_homomorphism, BlockRep, SocleSequence,
};
use crate::error::{Error, Result};
use crate::galilei::AlgebraSpec;
use crate::matrix::RatMatrix;
use crate::sixj::{self, SixJArgs};
use crate::sl2::{decompose_span, equivariant_family, EquivariantFamily, IrrepLabel};

pub use length4::{
    assemble_length4_candidate, length4_obstruction, length4_search, Length4Outcome, Length4Report,
};
pub use long::{length_ge5_brute_force, length_ge5_check, LongReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Length3Candidate {
    pub spec: AlgebraSpec,
    pub a: IrrepLabel,
    pub b: IrrepLabel,
    pub c: IrrepLabel,
}

impl Length3Candidate {
    pub fn new(spec: AlgebraSpec, a: u32, b: u32, c: u32) -> Self {
        Length3Candidate {
            spec,
            a: IrrepLabel(a),
            b: IrrepLabel(b),
            c: IrrepLabel(c),
        }
    }

    pub fn socle(&self) -> SocleSequence {
        SocleSequence::of(&[self.a.0, self.b.0, self.c.0])
    }
}

/// Why a length-3 candidate carries no faithful uniserial module.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum RejectReason {
    /// `V(0)` does not enter `Hom(V(c), V(a))`, so `z` acts by zero.
    #[serde(rename = "c-not-a")]
    CNotA,
    /// `V(m)` does not enter `Hom(V(from), V(to))`.
    NoHomSpace { from: u32, to: u32 },
    /// The commutators are not `(−1)^i C(m,i)·λ·I` on `i + j = m` and zero elsewhere.
    NonscalarCommutator,
    /// All commutators vanish.
    LambdaZero,
}

impl RejectReason {
    pub fn code(&self) -> &'static str {
        match self {
            RejectReason::CNotA => "c-not-a",
            RejectReason::NoHomSpace { .. } => "no-hom-space",
            RejectReason::NonscalarCommutator => "nonscalar-commutator",
            RejectReason::LambdaZero => "lambda-zero",
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::NoHomSpace { from, to } => write!(f, "no-hom-space: V(m) not in Hom(V({from}),V({to}))"),
            other => f.write_str(other.code()),
        }
    }
}

fn families(cand: &Length3Candidate) -> std::result::Result<(EquivariantFamily, EquivariantFamily), RejectReason> {
    let m = cand.spec.m_label();
    let x = equivariant_family(m, cand.b, cand.a).ok_or(RejectReason::NoHomSpace {
        from: cand.b.0,
        to: cand.a.0,
    })?;
    let y = equivariant_family(m, cand.c, cand.b).ok_or(RejectReason::NoHomSpace {
        from: cand.c.0,
        to: cand.b.0,
    })?;
    Ok((x, y))
}

/// `K_{ij} = X(v_i)Y(v_j) − X(v_j)Y(v_i)` for `i < j`.
fn commutators(x: &[RatMatrix], y: &[RatMatrix]) -> Vec<((usize, usize), RatMatrix)> {
    let k = x.len();
    let mut out = Vec::with_capacity(k * (k - 1) / 2);
    for i in 0..k {
        for j in i + 1..k {
            out.push(((i, j), &(&x[i] * &y[j]) - &(&x[j] * &y[i])));
        }
    }
    out
}

/// The common `λ` with `K_{i,m−i} = (−1)^i C(m,i)·λ·I` and `K_{ij} = 0`
/// otherwise.
fn bracket_scalar(m: usize, ks: &[((usize, usize), RatMatrix)]) -> std::result::Result<Rational, RejectReason> {
    let mut lambda: Option<Rational> = None;
    for ((i, j), k) in ks {
        if i + j != m {
            if !k.is_zero() {
                return Err(RejectReason::NonscalarCommutator);
            }
            continue;
        }
        let s = k.as_scalar().ok_or(RejectReason::NonscalarCommutator)?;
        let sign: i64 = if i % 2 == 0 { 1 } else { -1 };
        let weight = Rational::from_integer(binomial(m as u64, *i as u64) * sign);
        let l = s / weight;
        match &lambda {
            None => lambda = Some(l),
            Some(prev) if *prev == l => {}
            Some(_) => return Err(RejectReason::NonscalarCommutator),
        }
    }
    match lambda {
        Some(l) if !num_traits::Zero::is_zero(&l) => Ok(l),
        _ => Err(RejectReason::LambdaZero),
    }
}

/// The faithful uniserial module with socle factors `V(a), V(b), V(c)`, built
/// from the canonical equivariant families, or the reason none exists.
pub fn try_solve_length3(cand: &Length3Candidate) -> std::result::Result<BlockRep, RejectReason> {
    if cand.c != cand.a {
        return Err(RejectReason::CNotA);
    }
    let (x, y) = families(cand)?;
    let lambda = bracket_scalar(cand.spec.m() as usize, &commutators(&x.mats, &y.mats))?;
    let z = RatMatrix::scalar(cand.a.dim(), lambda);
    Ok(BlockRep::length3(cand.spec, cand.socle(), &x.mats, &y.mats, z).expect("equivariant families have block shapes"))
}

pub fn solve_length3(cand: &Length3Candidate) -> Option<BlockRep> {
    try_solve_length3(cand).ok()
}

/// Expected top constituent `V(r)` of the commutator block and the 6j-symbol
/// `{m/2 r/2 m/2; a/2 b/2 a/2}` deciding whether it survives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutatorPrediction {
    pub r: u32,
    pub sixj_value: Surd,
    /// Common constituents of `Λ²V(m)` and `Hom(V(a), V(a))`, without `V(r)`
    /// when the 6j-symbol vanishes.
    pub predicted_components: Vec<IrrepLabel>,
}

impl CommutatorPrediction {
    pub fn new(m: u32, a: u32, b: u32) -> Self {
        let r = if a % 2 == 0 {
            (2 * m - 2).min(2 * a)
        } else {
            (2 * m - 2).min(2 * a - 2)
        };
        let twice = |x: u32| x as i64;
        let args = SixJArgs::from_twice([twice(m), twice(r), twice(m), twice(a), twice(b), twice(a)]);
        let sixj_value = sixj::eval(&args);
        // Λ²V(m) = V(2m−2) ⊕ V(2m−6) ⊕ …; Hom(V(a),V(a)) = V(0) ⊕ V(2) ⊕ … ⊕ V(2a).
        let predicted_components = (0..=r)
            .step_by(4)
            .filter(|&k| k != r || !sixj_value.is_zero())
            .map(IrrepLabel)
            .collect();
        CommutatorPrediction {
            r,
            sixj_value,
            predicted_components,
        }
    }

    pub fn top_survives(&self) -> bool {
        !self.sixj_value.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutatorAnalysis {
    /// Highest weights of the sl(2)-module spanned by the commutators.
    pub actual: Vec<IrrepLabel>,
    pub prediction: CommutatorPrediction,
}

impl CommutatorAnalysis {
    pub fn contains(&self, k: u32) -> bool {
        self.actual.contains(&IrrepLabel(k))
    }
}

/// Decomposes the span of the commutator block for `V(a), V(b), V(a)` and
/// compares it with the 6j prediction.
pub fn commutator_image(cand: &Length3Candidate) -> Result<CommutatorAnalysis> {
    if cand.c != cand.a {
        return Err(Error::Precondition(format!(
            "commutator prediction needs c = a, got a = {}, c = {}",
            cand.a.0, cand.c.0
        )));
    }
    let (x, y) = families(cand).map_err(|reason| Error::Precondition(reason.to_string()))?;
    let ks: Vec<RatMatrix> = commutators(&x.mats, &y.mats).into_iter().map(|(_, k)| k).collect();
    Ok(CommutatorAnalysis {
        actual: decompose_span(&ks, cand.a, cand.c),
        prediction: CommutatorPrediction::new(cand.spec.m(), cand.a.0, cand.b.0),
    })
}

#[derive(Debug, Clone)]
pub struct FoundModule {
    pub socle: SocleSequence,
    pub rep: BlockRep,
}

#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub spec: AlgebraSpec,
    pub bound: u32,
    pub found: Vec<FoundModule>,
    pub rejected: Vec<(SocleSequence, RejectReason)>,
}

impl ClassificationReport {
    pub fn found_socles(&self) -> BTreeSet<Vec<u32>> {
        self.found.iter().map(|f| f.socle.weights()).collect()
    }

    pub fn matches_expected(&self) -> bool {
        self.found_socles() == expected_length3_socles(self.spec.m(), self.bound)
    }

    /// Every found module passes the homomorphism, uniseriality and
    /// faithfulness checks.
    pub fn all_found_verified(&self) -> bool {
        self.found.par_iter().all(|f| {
            verify_homomorphism(&f.rep).holds() && is_uniserial(&f.rep) && is_faithful(&f.rep)
        })
    }
}

/// Runs the length-3 solver on every `(a, b, c)` with entries `≤ bound`.
pub fn search_length3(spec: AlgebraSpec, bound: u32) -> ClassificationReport {
    let candidates: Vec<Length3Candidate> = (0..=bound)
        .flat_map(|a| (0..=bound).flat_map(move |b| (0..=bound).map(move |c| Length3Candidate::new(spec, a, b, c))))
        .collect();
    let mut outcomes: Vec<(Length3Candidate, std::result::Result<BlockRep, RejectReason>)> =
        candidates.into_par_iter().map(|c| (c, try_solve_length3(&c))).collect();
    outcomes.sort_by(|x, y| x.0.cmp(&y.0));

    let mut found = Vec::new();
    let mut rejected = Vec::new();
    for (cand, outcome) in outcomes {
        match outcome {
            Ok(rep) => found.push(FoundModule {
                socle: cand.socle(),
                rep,
            }),
            Err(reason) => rejected.push((cand.socle(), reason)),
        }
    }
    ClassificationReport {
        spec,
        bound,
        found,
        rejected,
    }
}

/// The known list of length-3 socle sequences of faithful uniserial modules,
/// restricted to entries `≤ bound`.
pub fn expected_length3_socles(m: u32, bound: u32) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    match m {
        1 => {
            for a in 0..bound {
                out.insert(vec![a, a + 1, a]);
                out.insert(vec![a + 1, a, a + 1]);
            }
        }
        _ => {
            out.insert(vec![0, m, 0]);
            out.insert(vec![1, m + 1, 1]);
            out.insert(vec![1, m - 1, 1]);
            if m == 3 {
                out.insert(vec![4, 3, 4]);
            }
        }
    }
    out.retain(|s| s.iter().all(|&x| x <= bound));
    out
}

fn is_progression(seq: &[u32], m: u32) -> bool {
    let step = m as i64;
    let diffs = seq.windows(2).map(|w| w[1] as i64 - w[0] as i64);
    let diffs: Vec<i64> = diffs.collect();
    diffs.iter().all(|&d| d == step) || diffs.iter().all(|&d| d == -step)
}

/// Whether `seq` is the socle sequence of some uniserial `sl(2) ⋉ V(m)`-module,
/// read off the known list of such sequences (up to reversal).
pub fn cs_admissible(m: u32, seq: &SocleSequence) -> bool {
    let w = seq.weights();
    let rev: Vec<u32> = w.iter().rev().copied().collect();
    let matches = |s: &[u32]| -> bool {
        match s.len() {
            1 => true,
            2 => {
                let (a, b) = (s[0] as i64, s[1] as i64);
                let m = m as i64;
                (a + b - m).rem_euclid(2) == 0 && 0 <= b - a && b - a <= m && m <= a + b
            }
            3 => {
                is_progression(s, m)
                    || (s[0] == 0 && s[1] == m && (s[2] as i64 - 2 * m as i64).rem_euclid(4) == 0 && s[2] <= 2 * m)
            }
            4 => is_progression(s, m) || (s == [0, m, m, 0] && m % 4 == 0),
            _ => is_progression(s, m),
        }
    };
    matches(&w) || matches(&rev)
}

/// Non-negative `(a, b) ≤ bound` with `a(a+2) = b(b+2) + 9`.
pub fn eq_ab_solutions(bound: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for a in 0..=bound {
        for b in 0..=bound {
            if a * (a + 2) == b * (b + 2) + 9 {
                out.push((a, b));
            }
        }
    }
    out
}
