//! Exact Wigner 6j-symbols.
//!
//! Values come from the Racah single-sum formula
//!
//! ```text
//! {j1 j2 j3}
//! {j4 j5 j6} = Δ(j1 j2 j3) Δ(j1 j5 j6) Δ(j4 j2 j6) Δ(j4 j5 j3)
//!              · Σ_t (−1)^t (t+1)! / [ Π_i (t − α_i)! Π_k (β_k − t)! ]
//! ```
//!
//! with `Δ(abc)² = (a+b−c)!(a−b+c)!(−a+b+c)! / (a+b+c+1)!`, the four triad
//! sums `α_i` and the three column-pair sums `β_k`. This is the standard
//! Racah phase convention. The result is returned as an exact [`Surd`].

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::arith::{factorials, HalfInt, Rational, Surd, SurdSum};
use crate::error::{Error, Result};

/// Triangle condition: integer sum, non-negative entries, `|a−b| ≤ c ≤ a+b`.
pub fn triangle(a: HalfInt, b: HalfInt, c: HalfInt) -> bool {
    let (a, b, c) = (a.twice(), b.twice(), c.twice());
    a >= 0 && b >= 0 && c >= 0 && (a + b + c) % 2 == 0 && (a - b).abs() <= c && c <= a + b
}

/// Whether a triangle is tight on one side. Errors if `(a, b, c)` is not a
/// triangle at all.
pub fn is_degenerate(a: HalfInt, b: HalfInt, c: HalfInt) -> Result<bool> {
    if !triangle(a, b, c) {
        return Err(Error::Precondition(format!("({a}, {b}, {c}) is not a triangle")));
    }
    Ok((a - b).twice().abs() == c.twice() || c == a + b)
}

/// Arguments `{j1 j2 j3; j4 j5 j6}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SixJArgs(pub [HalfInt; 6]);

impl SixJArgs {
    pub fn new(j: [HalfInt; 6]) -> Self {
        SixJArgs(j)
    }

    pub fn from_twice(t: [i64; 6]) -> Self {
        SixJArgs(t.map(HalfInt::from_twice))
    }

    pub fn j(&self, k: usize) -> HalfInt {
        self.0[k - 1]
    }

    /// Same symbol with `j1` shifted by the integer `delta`.
    pub fn shift_j1(&self, delta: i64) -> Self {
        let mut j = self.0;
        j[0] = j[0] + HalfInt::from_int(delta);
        SixJArgs(j)
    }

    /// The four triads that must all be triangles.
    pub fn triads(&self) -> [[HalfInt; 3]; 4] {
        let [j1, j2, j3, j4, j5, j6] = self.0;
        [[j1, j2, j3], [j1, j5, j6], [j4, j2, j6], [j4, j5, j3]]
    }

    pub fn all_triangles(&self) -> bool {
        self.triads().iter().all(|&[a, b, c]| triangle(a, b, c))
    }

    pub fn has_degenerate_triad(&self) -> bool {
        self.triads()
            .iter()
            .any(|&[a, b, c]| is_degenerate(a, b, c).unwrap_or(false))
    }
}

impl fmt::Display for SixJArgs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e, g] = self.0;
        write!(f, "{{{a} {b} {c}; {d} {e} {g}}}")
    }
}

impl FromStr for SixJArgs {
    type Err = Error;

    /// Parses `"{j1 j2 j3; j4 j5 j6}"`; braces and the semicolon are optional.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().map(|c| if "{};,".contains(c) { ' ' } else { c }).collect();
        let parts = cleaned
            .split_whitespace()
            .map(str::parse::<HalfInt>)
            .collect::<Result<Vec<_>>>()?;
        let j: [HalfInt; 6] = parts
            .try_into()
            .map_err(|v: Vec<HalfInt>| Error::Parse(format!("expected 6 half-integers, got {}", v.len())))?;
        Ok(SixJArgs(j))
    }
}

fn fact(k: i64) -> BigUint {
    debug_assert!(k >= 0);
    factorials().get(k as usize).into_owned()
}

/// Exact value of the 6j-symbol. Zero unless all four triads are triangles.
pub fn eval(args: &SixJArgs) -> Surd {
    if !args.all_triangles() {
        return Surd::zero();
    }
    let t = args.0.map(HalfInt::twice);
    let [j1, j2, j3, j4, j5, j6] = t;

    // Every triad has an even doubled sum, so all halvings below are exact.
    let mut delta_num = BigUint::one();
    let mut delta_den = BigUint::one();
    let mut alphas = [0i64; 4];
    for (k, [a, b, c]) in [[j1, j2, j3], [j1, j5, j6], [j4, j2, j6], [j4, j5, j3]].into_iter().enumerate() {
        delta_num *= fact((a + b - c) / 2) * fact((a - b + c) / 2) * fact((-a + b + c) / 2);
        delta_den *= fact((a + b + c) / 2 + 1);
        alphas[k] = (a + b + c) / 2;
    }
    let betas = [(j1 + j2 + j4 + j5) / 2, (j2 + j3 + j5 + j6) / 2, (j3 + j1 + j6 + j4) / 2];

    let t_min = *alphas.iter().max().expect("four triads");
    let t_max = *betas.iter().min().expect("three pairs");
    let mut sum = Rational::zero();
    for t in t_min..=t_max {
        let mut den = BigUint::one();
        for a in alphas {
            den *= fact(t - a);
        }
        for b in betas {
            den *= fact(b - t);
        }
        let mut term = Rational::new(BigInt::from(fact(t + 1)), BigInt::from(den));
        if t % 2 == 1 {
            term = -term;
        }
        sum += term;
    }

    let radicand = Rational::new(BigInt::from(delta_num), BigInt::from(delta_den));
    Surd::normalize(&sum, &radicand).expect("factorial ratio is positive")
}

fn jj(j: HalfInt) -> Rational {
    let r = j.to_rational();
    &r * (&r + Rational::one())
}

/// `E(i1)` of the three-term recurrence in `j1`:
/// `√[(i1² − (i2−i3)²)((i2+i3+1)² − i1²)(i1² − (i5−i6)²)((i5+i6+1)² − i1²)]`.
pub fn e_coeff(i1: HalfInt, i2: HalfInt, i3: HalfInt, i5: HalfInt, i6: HalfInt) -> Result<Surd> {
    let sq = |x: Rational| &x * &x;
    let one = Rational::one();
    let x1 = sq(i1.to_rational());
    let radicand = (&x1 - sq((i2 - i3).to_rational()))
        * (sq((i2 + i3).to_rational() + &one) - &x1)
        * (&x1 - sq((i5 - i6).to_rational()))
        * (sq((i5 + i6).to_rational() + &one) - &x1);
    Surd::sqrt(&radicand)
}

/// `F(i1)` of the three-term recurrence in `j1`, for the symbol
/// `{i1 i2 i3; i4 i5 i6}`.
pub fn f_coeff(args: &SixJArgs) -> Rational {
    let [i1, i2, i3, i4, i5, i6] = args.0.map(jj);
    let two_i1_plus_1 = args.0[0].to_rational() * Rational::from_integer(2.into()) + Rational::one();
    let two = Rational::from_integer(2.into());
    let inner = &i1 * (-&i1 + &i2 + &i3)
        + &i5 * (&i1 + &i2 - &i3)
        + &i6 * (&i1 - &i2 + &i3)
        - two * &i1 * &i4;
    two_i1_plus_1 * inner
}

/// Left-hand side of
/// `i1·E(i1+1)·{i1+1 …} + F(i1)·{i1 …} + (i1+1)·E(i1)·{i1−1 …}`,
/// grouped by radicand. Zero for every argument where both `E` values exist.
pub fn recurrence_residual(args: &SixJArgs) -> Result<SurdSum> {
    let [i1, i2, i3, _, i5, i6] = args.0;
    let one = HalfInt::from_int(1);
    let e_up = e_coeff(i1 + one, i2, i3, i5, i6)?;
    let e_here = e_coeff(i1, i2, i3, i5, i6)?;
    let i1r = i1.to_rational();

    let mut sum = SurdSum::new();
    sum.push(&e_up.mul(&eval(&args.shift_j1(1))).scale(&i1r));
    sum.push(&eval(args).scale(&f_coeff(args)));
    sum.push(&e_here.mul(&eval(&args.shift_j1(-1))).scale(&(i1r + Rational::one())));
    Ok(sum)
}

/// Orbit under column permutations and upper/lower swaps in pairs of columns.
pub fn symmetry_orbit(args: &SixJArgs) -> BTreeSet<SixJArgs> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    const FLIPS: [[bool; 3]; 4] = [
        [false, false, false],
        [true, true, false],
        [true, false, true],
        [false, true, true],
    ];
    let upper = [args.0[0], args.0[1], args.0[2]];
    let lower = [args.0[3], args.0[4], args.0[5]];
    let mut orbit = BTreeSet::new();
    for p in PERMS {
        for flip in FLIPS {
            let mut j = [HalfInt::ZERO; 6];
            for (col, &src) in p.iter().enumerate() {
                let (u, l) = if flip[col] { (lower[src], upper[src]) } else { (upper[src], lower[src]) };
                j[col] = u;
                j[col + 3] = l;
            }
            orbit.insert(SixJArgs(j));
        }
    }
    orbit
}

/// Outcome of the zero-propagation check: given a vanishing symbol at
/// `j1 − 1` under the stated hypotheses, the symbols at `j1 − 2` and `j1 − 3`
/// must both be nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroPropagationReport {
    pub args: SixJArgs,
    pub at_minus_two: Surd,
    pub at_minus_three: Surd,
}

impl ZeroPropagationReport {
    pub fn holds(&self) -> bool {
        !self.at_minus_two.is_zero() && !self.at_minus_three.is_zero()
    }
}

/// Checks the hypotheses `j1 = j5 + j6 ≥ 3`, `j2 = j3`, triangle validity at
/// `h = j1` and `h = j1 − 1`, and `{j1−1 …} = 0`; then evaluates at `j1 − 2`
/// and `j1 − 3`.
pub fn verify_zero_propagation(args: &SixJArgs) -> Result<ZeroPropagationReport> {
    let [j1, j2, j3, _, j5, j6] = args.0;
    let fail = |clause: String| Err(Error::Precondition(clause));
    if j1.twice() < 6 {
        return fail(format!("j1 = {j1} < 3"));
    }
    if j1 != j5 + j6 {
        return fail(format!("j1 = {j1} != j5 + j6 = {}", j5 + j6));
    }
    if j2 != j3 {
        return fail(format!("j2 = {j2} != j3 = {j3}"));
    }
    for shift in [0, -1] {
        let a = args.shift_j1(shift);
        if !a.all_triangles() {
            return fail(format!("triads of {a} are not all triangles"));
        }
    }
    let below = eval(&args.shift_j1(-1));
    if !below.is_zero() {
        return fail(format!("{} = {below} is not zero", args.shift_j1(-1)));
    }
    Ok(ZeroPropagationReport {
        args: *args,
        at_minus_two: eval(&args.shift_j1(-2)),
        at_minus_three: eval(&args.shift_j1(-3)),
    })
}
