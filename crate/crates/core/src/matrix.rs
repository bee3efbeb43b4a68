//! Dense matrices over ℚ.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{parse_rational, rat, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Rational::one())
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(RatMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_entries(r, c, rows.into_iter().flatten().collect())
    }

    /// Integer matrix literal; panics on ragged input.
    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.as_ref().iter().map(|&x| rat(x)).collect()).collect())
            .expect("ragged integer matrix literal")
    }

    pub fn column(values: Vec<Rational>) -> Self {
        let n = values.len();
        RatMatrix { rows: n, cols: 1, entries: values }
    }

    pub fn diagonal(values: Vec<Rational>) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.into_iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// `Some(c)` when the matrix is `c·I`.
    pub fn as_scalar(&self) -> Option<Rational> {
        if !self.is_square() {
            return None;
        }
        if self.rows == 0 {
            return Some(Rational::zero());
        }
        let c = self[(0, 0)].clone();
        (*self == Self::scalar(self.rows, c.clone())).then_some(c)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, k: &Rational) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * k).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "add")?;
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "sub")?;
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        if !self.is_square() || self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "commutator of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        self.matmul(other)?.try_sub(&other.matmul(self)?)
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &RatMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    /// Reduced row echelon form and pivot columns (Gauss–Jordan over ℚ).
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                m[(r, j)] *= &inv;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    let delta = &factor * &m[(r, j)];
                    m[(i, j)] -= delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Basis of the right null space as column vectors.
    ///
    /// The basis is canonical: the vector attached to free column `f` has a 1
    /// in position `f`, zeros in the other free positions, and this 1 is its
    /// last nonzero entry.
    pub fn kernel_basis(&self) -> Vec<RatMatrix> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(row, f)].clone();
                }
                RatMatrix::column(v)
            })
            .collect()
    }

    /// Rank by fraction-free (Bareiss) elimination on the integer matrix
    /// obtained by clearing denominators row by row.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect()
            })
            .collect();
        let mut prev = BigInt::one();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for i in rank + 1..self.rows {
                for j in c + 1..self.cols {
                    let v = (&a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[rank][c].clone();
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn same_shape(&self, other: &Self, what: &str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "{what} of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

/// Rank of a set of matrices viewed as vectors in a common space.
pub fn span_rank(mats: &[RatMatrix]) -> usize {
    let Some(first) = mats.first() else {
        return 0;
    };
    let n = first.rows * first.cols;
    let stacked = RatMatrix::from_entries(
        mats.len(),
        n,
        mats.iter().flat_map(|m| m.entries.iter().cloned()).collect(),
    )
    .expect("matrices of unequal shape");
    stacked.rank()
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &mut self.entries[i * self.cols + j]
    }
}

// The operator forms panic on shape mismatch; use the `try_*`/`matmul`
// methods where shapes come from user input.

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        self.matmul(rhs).expect("matrix product")
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        self.try_add(rhs).expect("matrix sum")
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        self.try_sub(rhs).expect("matrix difference")
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        self.scale(&-Rational::one())
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            write!(f, "[ {} ]", padded.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect();
        let mut st = s.serialize_struct("RatMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        st.serialize_field("entries", &rows)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            rows: usize,
            cols: usize,
            entries: Vec<Vec<String>>,
        }
        let raw = Raw::deserialize(d)?;
        let entries = raw
            .entries
            .iter()
            .flatten()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        if raw.entries.len() != raw.rows || raw.entries.iter().any(|r| r.len() != raw.cols) {
            return Err(serde::de::Error::custom("entries do not match rows x cols"));
        }
        RatMatrix::from_entries(raw.rows, raw.cols, entries).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use proptest::prelude::*;

    #[test]
    fn products() {
        let a = RatMatrix::from_i64(&[[1, 2, 0], [0, -1, 3], [4, 0, 5]]);
        assert_eq!(&RatMatrix::identity(3) * &a, a);
        assert!((&a * &RatMatrix::zeros(3, 2)).is_zero());
        let n = RatMatrix::from_i64(&[[0, 1], [0, 0]]);
        let m = RatMatrix::from_i64(&[[0, 0], [1, 0]]);
        assert_eq!(&n * &m, RatMatrix::from_i64(&[[1, 0], [0, 0]]));
        assert!(matches!(a.matmul(&n), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn commutators() {
        let a = RatMatrix::from_i64(&[[1, 2], [3, 4]]);
        assert!(a.commutator(&a).unwrap().is_zero());
        assert!(RatMatrix::identity(2).commutator(&a).unwrap().is_zero());
        let e = RatMatrix::from_i64(&[[0, 1], [0, 0]]);
        let f = RatMatrix::from_i64(&[[0, 0], [1, 0]]);
        assert_eq!(e.commutator(&f).unwrap(), RatMatrix::from_i64(&[[1, 0], [0, -1]]));
        assert!(e.commutator(&RatMatrix::identity(3)).is_err());
    }

    #[test]
    fn kernels() {
        assert!(RatMatrix::identity(2).kernel_basis().is_empty());
        assert_eq!(RatMatrix::zeros(1, 2).kernel_basis().len(), 2);
        let k = RatMatrix::from_i64(&[[1, 1]]).kernel_basis();
        assert_eq!(k, vec![RatMatrix::column(vec![rat(-1), rat(1)])]);
    }

    #[test]
    fn ranks() {
        assert_eq!(RatMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(RatMatrix::identity(4).rank(), 4);
        // X(v_0) of the exceptional (m = 3) construction: three nonzero rows.
        let x0 = RatMatrix::from_i64(&[[0, 6, 0, 0], [0, 0, 3, 0], [0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0]]);
        assert_eq!(x0.rank(), 3);
        let frac = RatMatrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(3, 2), rat(1)],
        ])
        .unwrap();
        assert_eq!(frac.rank(), 1);
    }

    #[test]
    fn json_form() {
        let a = RatMatrix::from_rows(vec![vec![ratio(1, 2), rat(-3)]]).unwrap();
        let j = serde_json::to_string(&a).unwrap();
        assert_eq!(j, r#"{"rows":1,"cols":2,"entries":[["1/2","-3"]]}"#);
        let back: RatMatrix = serde_json::from_str(&j).unwrap();
        assert_eq!(back, a);
    }

    fn arb_matrix() -> impl Strategy<Value = RatMatrix> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |v| {
                RatMatrix::from_entries(r, c, v.into_iter().map(|x| ratio(x, 1 + (x.abs() % 2))).collect())
                    .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(a in arb_matrix()) {
            let kernel = a.kernel_basis();
            for v in &kernel {
                prop_assert!((&a * v).is_zero());
            }
            prop_assert_eq!(a.rank() + kernel.len(), a.cols());
        }

        #[test]
        fn bareiss_rank_matches_rref(a in arb_matrix()) {
            prop_assert_eq!(a.rank(), a.rref().1.len());
        }

        #[test]
        fn commutator_is_antisymmetric(n in 1usize..4, xs in proptest::collection::vec(-4i64..5, 18)) {
            let a = RatMatrix::from_entries(n, n, xs[..n * n].iter().map(|&x| rat(x)).collect()).unwrap();
            let b = RatMatrix::from_entries(n, n, xs[9..9 + n * n].iter().map(|&x| rat(x)).collect()).unwrap();
            prop_assert_eq!(a.commutator(&b).unwrap(), -&b.commutator(&a).unwrap());
        }
    }
}
