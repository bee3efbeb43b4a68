//! Length 4. A faithful module would contain a uniserial submodule and
//! quotient of length 3; for `m ≥ 3` no pair of windows is compatible, and for
//! `m = 1` the forced candidate violates `[v, z] = 0`.
//!
//! For `m = 1` every superdiagonal block is unique up to a nonzero scalar
//! `x_1, x_2, x_3`. The second-superdiagonal blocks of `z` are then fixed by the
//! bracket `[v_0, v_1] = z`: `D(z) ∝ x_1 x_2`, `E(z) ∝ x_2 x_3`. The corner
//! block of `[R(v), R(z)]` is `A(v)E(z) − D(z)C(v)`, and both terms carry the
//! monomial `x_1 x_2 x_3`, so it vanishes for some scaling iff it vanishes for
//! all. The candidate is therefore assembled with every scalar equal to 1.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::{cs_admissible, search_length3};
use crate::block_rep::{lower_maps, raise_maps, BlockMap, BlockRep, SocleSequence};
use crate::error::{Error, Result};
use crate::galilei::{AlgebraSpec, BasisElement};
use crate::matrix::RatMatrix;

/// `v_0, v_1` images in `Hom(V(lower_block), V(upper_block))` for `m = 1`.
fn step_family(upper: u32, lower: u32) -> Option<Vec<RatMatrix>> {
    if lower == upper + 1 {
        Some(raise_maps(upper))
    } else if upper == lower + 1 {
        Some(lower_maps(lower))
    } else {
        None
    }
}

/// `z`-block forced on a length-3 window by `[v_0, v_1] = z`.
fn window_z_block(first: &[RatMatrix], second: &[RatMatrix], faithful: bool) -> Result<RatMatrix> {
    let k = &(&first[0] * &second[1]) - &(&first[1] * &second[0]);
    match (faithful, k.as_scalar()) {
        (true, Some(l)) if !num_traits::Zero::is_zero(&l) => Ok(k),
        (false, _) if k.is_zero() => Ok(k),
        _ => Err(Error::Precondition("window does not carry a uniserial module".into())),
    }
}

/// The `m = 1` candidate with unit superdiagonal scalings: `v_i` on blocks
/// `(0,1), (1,2), (2,3)` and `z` on `(0,2), (1,3)` as forced by the windows.
pub fn assemble_length4_candidate(spec: AlgebraSpec, seq: &SocleSequence) -> Result<BlockRep> {
    let w = seq.weights();
    if spec.m() != 1 || w.len() != 4 {
        return Err(Error::Precondition("length-4 obstruction needs m = 1 and four socle factors".into()));
    }
    let shape_err = || Error::InvalidParameter(format!("unsupported length-4 shape {seq}"));
    let fams: Vec<Vec<RatMatrix>> = (0..3)
        .map(|i| step_family(w[i], w[i + 1]).ok_or_else(shape_err))
        .collect::<Result<_>>()?;
    let first_faithful = w[0] == w[2];
    let second_faithful = w[1] == w[3];
    if !first_faithful && !second_faithful {
        return Err(shape_err());
    }
    let d = window_z_block(&fams[0], &fams[1], first_faithful)?;
    let e = window_z_block(&fams[1], &fams[2], second_faithful)?;

    let mut radical: Vec<BlockMap> = (0..2)
        .map(|i| (0..3).map(|t| ((t, t + 1), fams[t][i].clone())).collect())
        .collect();
    radical.push(BTreeMap::from([((0, 2), d), ((1, 3), e)]));
    BlockRep::new(spec, seq.clone(), radical)
}

/// Corner block `(0, 3)` of `[R(v_i), R(z)]` for `i = 0, 1`. Since `[v_i, z] = 0`
/// a nonzero entry rules the sequence out.
pub fn length4_obstruction(spec: AlgebraSpec, seq: &SocleSequence) -> Result<Vec<RatMatrix>> {
    let rep = assemble_length4_candidate(spec, seq)?;
    let z = rep.matrix(BasisElement::Z);
    let labels = seq.labels();
    let offsets = seq.offsets();
    Ok((0..2)
        .map(|i| {
            let comm = rep.matrix(BasisElement::V(i)).commutator(z).expect("square");
            comm.submatrix(offsets[0], offsets[3], labels[0].dim(), labels[3].dim())
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Length4Outcome {
    /// A length-3 window carries no uniserial module at all.
    WindowNotUniserial,
    /// Both windows are non-faithful and `z` has no invariant to act through
    /// in the corner (`a ≠ d`).
    CenterActsTrivially,
    /// `m ≥ 3` with a faithful window: would require the other window to be
    /// uniserial too.
    FaithfulWindow,
    /// `m = 1` with a faithful window: the corner of `[R(v), R(z)]` is nonzero.
    Obstructed,
    /// Not excluded by any of the arguments above.
    Survivor,
}

#[derive(Debug, Clone, Serialize)]
pub struct Length4Report {
    pub m: u32,
    pub bound: u32,
    pub examined: usize,
    pub counts: BTreeMap<String, usize>,
    pub survivors: Vec<Vec<u32>>,
    /// Sequences sent to the `m = 1` obstruction, with the verdict.
    pub obstructed: Vec<Vec<u32>>,
}

impl Length4Report {
    pub fn no_survivors(&self) -> bool {
        self.survivors.is_empty()
    }
}

fn classify(spec: AlgebraSpec, seq: &[u32], faithful3: &HashSet<Vec<u32>>) -> Length4Outcome {
    let m = spec.m();
    let w1 = &seq[0..3];
    let w2 = &seq[1..4];
    let f1 = faithful3.contains(w1);
    let f2 = faithful3.contains(w2);
    let ok1 = f1 || cs_admissible(m, &SocleSequence::of(w1));
    let ok2 = f2 || cs_admissible(m, &SocleSequence::of(w2));
    if !(ok1 && ok2) {
        return Length4Outcome::WindowNotUniserial;
    }
    if f1 || f2 {
        if m != 1 {
            return Length4Outcome::Survivor;
        }
        return match length4_obstruction(spec, &SocleSequence::of(seq)) {
            Ok(blocks) if blocks.iter().any(|b| !b.is_zero()) => Length4Outcome::Obstructed,
            _ => Length4Outcome::Survivor,
        };
    }
    // Both windows are non-faithful, so z acts only through the corner,
    // which needs V(0) in Hom(V(d), V(a)).
    if seq[0] != seq[3] {
        Length4Outcome::CenterActsTrivially
    } else {
        Length4Outcome::Survivor
    }
}

/// Examines every length-4 sequence with entries `≤ bound`.
pub fn length4_search(spec: AlgebraSpec, bound: u32) -> Length4Report {
    let faithful3: HashSet<Vec<u32>> = search_length3(spec, bound).found_socles().into_iter().collect();
    let b = bound + 1;
    let total = (b as usize).pow(4);
    let mut outcomes: Vec<(Vec<u32>, Length4Outcome)> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let mut rest = idx;
            let mut seq = vec![0u32; 4];
            for slot in seq.iter_mut().rev() {
                *slot = (rest % b as usize) as u32;
                rest /= b as usize;
            }
            let outcome = classify(spec, &seq, &faithful3);
            (seq, outcome)
        })
        .collect();
    outcomes.sort();

    let mut counts = BTreeMap::new();
    let mut survivors = Vec::new();
    let mut obstructed = Vec::new();
    for (seq, outcome) in &outcomes {
        let key = serde_json::to_value(outcome).expect("serializable")["outcome"]
            .as_str()
            .expect("tagged")
            .to_string();
        *counts.entry(key).or_insert(0) += 1;
        match outcome {
            Length4Outcome::Survivor => survivors.push(seq.clone()),
            Length4Outcome::Obstructed => obstructed.push(seq.clone()),
            _ => {}
        }
    }
    Length4Report {
        m: spec.m(),
        bound,
        examined: outcomes.len(),
        counts,
        survivors,
        obstructed,
    }
}
