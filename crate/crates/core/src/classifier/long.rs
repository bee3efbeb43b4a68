//! Length `ℓ ≥ 5`, by induction from length 4: both windows of length `ℓ − 1`
//! are non-faithful, hence uniserial `sl(2) ⋉ V(m)`-modules, which forces a
//! progression of step `±m`. Then no two factors coincide, `V(0)` never enters
//! an off-diagonal `Hom`, and `z` acts trivially.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{cs_admissible, is_progression};
use crate::block_rep::SocleSequence;
use crate::error::{Error, Result};
use crate::galilei::AlgebraSpec;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LongReport {
    pub m: u32,
    pub ell: usize,
    pub bound: u32,
    /// Sequences both of whose `(ℓ−1)`-windows are admissible.
    pub admissible: Vec<Vec<u32>>,
    pub all_progressions: bool,
    /// Admissible sequences with a repeated factor, the only ones on which
    /// `z` could act.
    pub faithful_candidates: Vec<Vec<u32>>,
}

impl LongReport {
    pub fn no_faithful_candidates(&self) -> bool {
        self.faithful_candidates.is_empty()
    }
}

fn window_ok(m: u32, window: &[u32]) -> bool {
    cs_admissible(m, &SocleSequence::of(window))
}

fn extend(m: u32, ell: usize, bound: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() == ell {
        out.push(prefix.clone());
        return;
    }
    for next in 0..=bound {
        prefix.push(next);
        // Every contiguous piece of an admissible window is itself the socle
        // sequence of a uniserial subquotient, so suffixes can be pruned early.
        let start = prefix.len().saturating_sub(ell - 1);
        if window_ok(m, &prefix[start..]) {
            extend(m, ell, bound, prefix, out);
        }
        prefix.pop();
    }
}

fn report(m: u32, ell: usize, bound: u32, admissible: Vec<Vec<u32>>) -> LongReport {
    let all_progressions = admissible.iter().all(|s| is_progression(s, m));
    let faithful_candidates = admissible
        .iter()
        .filter(|s| s.iter().collect::<BTreeSet<_>>().len() < s.len())
        .cloned()
        .collect();
    LongReport {
        m,
        ell,
        bound,
        admissible,
        all_progressions,
        faithful_candidates,
    }
}

/// Depth-first enumeration of length-`ell` sequences with entries `≤ bound`
/// whose windows are admissible.
pub fn length_ge5_check(spec: AlgebraSpec, ell: usize, bound: u32) -> Result<LongReport> {
    if ell < 5 {
        return Err(Error::Precondition(format!("length must be at least 5, got {ell}")));
    }
    let m = spec.m();
    let mut admissible = Vec::new();
    extend(m, ell, bound, &mut Vec::with_capacity(ell), &mut admissible);
    Ok(report(m, ell, bound, admissible))
}

/// Same as [`length_ge5_check`] by scanning all `(bound+1)^ell` sequences.
pub fn length_ge5_brute_force(spec: AlgebraSpec, ell: usize, bound: u32) -> Result<LongReport> {
    if ell < 5 {
        return Err(Error::Precondition(format!("length must be at least 5, got {ell}")));
    }
    let m = spec.m();
    let b = bound as usize + 1;
    let mut admissible = Vec::new();
    for idx in 0..b.pow(ell as u32) {
        let mut rest = idx;
        let mut seq = vec![0u32; ell];
        for slot in seq.iter_mut().rev() {
            *slot = (rest % b) as u32;
            rest /= b;
        }
        if window_ok(m, &seq[..ell - 1]) && window_ok(m, &seq[1..]) {
            admissible.push(seq);
        }
    }
    Ok(report(m, ell, bound, admissible))
}
