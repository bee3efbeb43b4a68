//! The six explicit length-3 families and the `sl(2) ⋉ h_2` example with
//! socle factors `V(4), V(3), V(4)`.

use super::{BlockRep, SocleSequence};
use crate::arith::{binomial, rat, Rational};
use crate::error::{Error, Result};
use crate::galilei::AlgebraSpec;
use crate::matrix::RatMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    /// `V(0), V(m), V(0)`.
    TrivialEnds,
    /// `V(1), V(m+1), V(1)`.
    RaisedMiddle,
    /// `V(1), V(m−1), V(1)`.
    LoweredMiddle,
    /// `m = 1`: `V(a), V(a+1), V(a)`.
    StepUp { a: u32 },
    /// `m = 1`: `V(a+1), V(a), V(a+1)`.
    StepDown { a: u32 },
    /// `m = 3`: `V(4), V(3), V(4)`.
    Exceptional,
}

impl Construction {
    /// Validates `(case, m, a)` against the range of each family.
    pub fn new(case: u8, m: u32, a: Option<u32>) -> Result<Self> {
        if m % 2 == 0 {
            return Err(Error::InvalidParameter(format!("h_n requires odd m = 2n−1, got m = {m}")));
        }
        let needs_a = matches!(case, 4 | 5);
        match (needs_a, a) {
            (true, None) => {
                return Err(Error::InvalidParameter(format!("case {case} requires the parameter a")))
            }
            (false, Some(_)) => {
                return Err(Error::InvalidParameter(format!("case {case} takes no parameter a")))
            }
            _ => {}
        }
        let construction = match case {
            1 => Construction::TrivialEnds,
            2 => Construction::RaisedMiddle,
            3 => Construction::LoweredMiddle,
            4 => Construction::StepUp { a: a.unwrap_or(0) },
            5 => Construction::StepDown { a: a.unwrap_or(0) },
            6 => Construction::Exceptional,
            _ => return Err(Error::InvalidParameter(format!("case must be 1..6, got {case}"))),
        };
        let required_m = match construction {
            Construction::StepUp { .. } | Construction::StepDown { .. } => Some(1),
            Construction::Exceptional => Some(3),
            _ => None,
        };
        if let Some(req) = required_m {
            if m != req {
                return Err(Error::InvalidParameter(format!("case {case} requires m = {req}, got m = {m}")));
            }
        }
        Ok(construction)
    }

    pub fn case(&self) -> u8 {
        match self {
            Construction::TrivialEnds => 1,
            Construction::RaisedMiddle => 2,
            Construction::LoweredMiddle => 3,
            Construction::StepUp { .. } => 4,
            Construction::StepDown { .. } => 5,
            Construction::Exceptional => 6,
        }
    }

    pub fn socle(&self, m: u32) -> SocleSequence {
        match *self {
            Construction::TrivialEnds => SocleSequence::of(&[0, m, 0]),
            Construction::RaisedMiddle => SocleSequence::of(&[1, m + 1, 1]),
            Construction::LoweredMiddle => SocleSequence::of(&[1, m - 1, 1]),
            Construction::StepUp { a } => SocleSequence::of(&[a, a + 1, a]),
            Construction::StepDown { a } => SocleSequence::of(&[a + 1, a, a + 1]),
            Construction::Exceptional => SocleSequence::of(&[4, 3, 4]),
        }
    }

    /// `(X(v_0..v_m), Y(v_0..v_m), λ)` with `Z(z) = λ·I`.
    pub fn families(&self, m: u32) -> (Vec<RatMatrix>, Vec<RatMatrix>, Rational) {
        let mu = m as usize;
        match *self {
            Construction::TrivialEnds => {
                let x = (0..=mu)
                    .map(|i| {
                        let mut t = RatMatrix::zeros(1, mu + 1);
                        t[(0, mu - i)] = signed_binomial(m, i);
                        t
                    })
                    .collect();
                let y = (0..=mu)
                    .map(|i| {
                        let mut t = RatMatrix::zeros(mu + 1, 1);
                        t[(i, 0)] = rat(1);
                        t
                    })
                    .collect();
                (x, y, rat(2))
            }
            Construction::RaisedMiddle => {
                let x = (0..=mu)
                    .map(|i| {
                        let mut t = RatMatrix::zeros(2, mu + 2);
                        let c = signed_binomial(m, i);
                        t[(0, mu - i)] = c.clone();
                        t[(1, mu - i + 1)] = c;
                        t
                    })
                    .collect();
                let y = (0..=mu)
                    .map(|i| {
                        let mut t = RatMatrix::zeros(mu + 2, 2);
                        t[(i, 0)] = rat((mu + 1 - i) as i64);
                        t[(i + 1, 1)] = rat(i as i64 + 1);
                        t
                    })
                    .collect();
                (x, y, rat(m as i64 + 2))
            }
            Construction::LoweredMiddle => {
                let x = (0..=mu)
                    .map(|i| {
                        let mut t = RatMatrix::zeros(2, mu);
                        if i < mu {
                            let k = mu - 1 - i;
                            t[(0, k)] = sign(k) * binom(m - 1, i);
                        }
                        if i >= 1 {
                            let k = mu - i;
                            t[(1, k)] = sign(k) * binom(m - 1, i - 1);
                        }
                        t
                    })
                    .collect();
                let y = (0..=mu)
                    .map(|i| {
                        let mut t = RatMatrix::zeros(mu, 2);
                        if i >= 1 {
                            t[(i - 1, 0)] = rat(1);
                        }
                        if i < mu {
                            t[(i, 1)] = rat(-1);
                        }
                        t
                    })
                    .collect();
                (x, y, rat(1))
            }
            Construction::StepUp { a } => (raise_maps(a), lower_maps(a), rat(a as i64 + 2)),
            Construction::StepDown { a } => (lower_maps(a), raise_maps(a), rat(-(a as i64) - 1)),
            Construction::Exceptional => {
                let x = EXCEPTIONAL_X.iter().map(|rows| RatMatrix::from_i64(rows)).collect();
                let y = EXCEPTIONAL_Y.iter().map(|rows| RatMatrix::from_i64(rows)).collect();
                (x, y, rat(6))
            }
        }
    }

    pub fn build(&self, m: u32) -> Result<BlockRep> {
        let spec = AlgebraSpec::from_m(m)?;
        let socle = self.socle(m);
        let (x, y, lambda) = self.families(m);
        let z = RatMatrix::scalar(socle.labels()[0].dim(), lambda);
        BlockRep::length3(spec, socle, &x, &y, z)
    }
}

/// Builds construction `case` (1..6) for `m`, with `a` for cases 4 and 5.
pub fn build_construction(case: u8, m: u32, a: Option<u32>) -> Result<BlockRep> {
    Construction::new(case, m, a)?.build(m)
}

fn sign(k: usize) -> Rational {
    if k % 2 == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

fn binom(n: u32, k: usize) -> Rational {
    Rational::from_integer(binomial(n as u64, k as u64))
}

fn signed_binomial(m: u32, i: usize) -> Rational {
    sign(i) * binom(m, i)
}

fn j_plus(k: usize) -> RatMatrix {
    RatMatrix::diagonal((0..k).map(|i| rat((k - i) as i64)).collect())
}

fn j_minus(k: usize) -> RatMatrix {
    RatMatrix::diagonal((1..=k).map(|i| rat(i as i64)).collect())
}

/// `Hom(V(a+1), V(a))` images of `v_0, v_1` for `m = 1`: `(0 | I)` and `(−I | 0)`.
pub fn raise_maps(a: u32) -> Vec<RatMatrix> {
    let k = a as usize + 1;
    let mut v0 = RatMatrix::zeros(k, k + 1);
    let mut v1 = RatMatrix::zeros(k, k + 1);
    v0.set_block(0, 1, &RatMatrix::identity(k));
    v1.set_block(0, 0, &RatMatrix::scalar(k, rat(-1)));
    vec![v0, v1]
}

/// `Hom(V(a), V(a+1))` images of `v_0, v_1` for `m = 1`: `(J⁺; 0')` and `(0'; J⁻)`.
pub fn lower_maps(a: u32) -> Vec<RatMatrix> {
    let k = a as usize + 1;
    let mut v0 = RatMatrix::zeros(k + 1, k);
    let mut v1 = RatMatrix::zeros(k + 1, k);
    v0.set_block(0, 0, &j_plus(k));
    v1.set_block(1, 0, &j_minus(k));
    vec![v0, v1]
}

const EXCEPTIONAL_X: [[[i64; 4]; 5]; 4] = [
    [[0, 6, 0, 0], [0, 0, 3, 0], [0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0]],
    [[-6, 0, 0, 0], [0, 0, 0, 0], [0, 0, 3, 0], [0, 0, 0, 3], [0, 0, 0, 0]],
    [[0, 0, 0, 0], [-3, 0, 0, 0], [0, -3, 0, 0], [0, 0, 0, 0], [0, 0, 0, 6]],
    [[0, 0, 0, 0], [0, 0, 0, 0], [-1, 0, 0, 0], [0, -3, 0, 0], [0, 0, -6, 0]],
];

const EXCEPTIONAL_Y: [[[i64; 5]; 4]; 4] = [
    [[0, 0, 3, 0, 0], [0, 0, 0, 2, 0], [0, 0, 0, 0, 1], [0, 0, 0, 0, 0]],
    [[0, -6, 0, 0, 0], [0, 0, -3, 0, 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, 3]],
    [[3, 0, 0, 0, 0], [0, 0, 0, 0, 0], [0, 0, -3, 0, 0], [0, 0, 0, -6, 0]],
    [[0, 0, 0, 0, 0], [1, 0, 0, 0, 0], [0, 2, 0, 0, 0], [0, 0, 3, 0, 0]],
];

/// The `sl(2) ⋉ h_2` example written as `R(Σ a_i v_i)`: each cell is a
/// linear form in `a_0..a_3`.
const INTRO_UPPER: [[&str; 4]; 5] = [
    ["-6a1", "6a0", "0", "0"],
    ["-3a2", "0", "3a0", "0"],
    ["-a3", "-3a2", "3a1", "a0"],
    ["0", "-3a3", "0", "3a1"],
    ["0", "0", "-6a3", "6a2"],
];

const INTRO_LOWER: [[&str; 5]; 4] = [
    ["3a2", "-6a1", "3a0", "0", "0"],
    ["a3", "0", "-3a1", "2a0", "0"],
    ["0", "2a3", "-3a2", "0", "a0"],
    ["0", "0", "3a3", "-6a2", "3a1"],
];

/// Parses `"0"`, `"a2"`, `"-3a1"`, … into `(coefficient, variable)`.
fn parse_linear_cell(cell: &str) -> Result<Option<(i64, usize)>> {
    if cell == "0" {
        return Ok(None);
    }
    let (coef, var) = cell
        .split_once('a')
        .ok_or_else(|| Error::Parse(format!("bad cell {cell:?}")))?;
    let coef = match coef {
        "" => 1,
        "-" => -1,
        c => c.parse().map_err(|_| Error::Parse(format!("bad coefficient in {cell:?}")))?,
    };
    let var = var.parse().map_err(|_| Error::Parse(format!("bad variable in {cell:?}")))?;
    Ok(Some((coef, var)))
}

fn coefficient_matrices<R: AsRef<[&'static str]>>(cells: &[R], vars: usize) -> Vec<RatMatrix> {
    let rows = cells.len();
    let cols = cells[0].as_ref().len();
    let mut mats = vec![RatMatrix::zeros(rows, cols); vars];
    for (i, row) in cells.iter().enumerate() {
        for (j, cell) in row.as_ref().iter().enumerate() {
            if let Some((c, k)) = parse_linear_cell(cell).expect("well-formed display") {
                mats[k][(i, j)] = rat(c);
            }
        }
    }
    mats
}

/// The `V(4), V(3), V(4)` example for `sl(2) ⋉ h_2`, with `Z(z)` forced by
/// `X(v_0)Y(v_3) − X(v_3)Y(v_0) = Z([v_0, v_3]) = Z(z)`.
pub fn assemble_intro_example() -> BlockRep {
    let spec = AlgebraSpec::new(2).expect("n = 2");
    let x = coefficient_matrices(&INTRO_UPPER, 4);
    let y = coefficient_matrices(&INTRO_LOWER, 4);
    let z = &(&x[0] * &y[3]) - &(&x[3] * &y[0]);
    debug_assert!(!z.is_zero());
    BlockRep::length3(spec, SocleSequence::of(&[4, 3, 4]), &x, &y, z).expect("well-shaped example")
}
