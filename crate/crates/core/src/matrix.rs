//! Dense matrices over the integers with arbitrary-precision entries.
//!
//! Everything downstream (Smith normal form, homology, the Tate machinery)
//! runs on these. Entries are `num_bigint::BigInt`: intermediate entries of
//! elimination blow up quickly, so fixed-width integers are not an option.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Index, IndexMut};

/// Row-major integer matrix. A `rows == 0` or `cols == 0` matrix is legal and
/// represents a map from or to the zero module.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            entries: rows
                .into_iter()
                .flatten()
                .map(BigInt::from)
                .collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, entries }
    }

    /// n x n scalar matrix c * I.
    pub fn scalar(n: usize, c: i64) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                BigInt::from(c)
            } else {
                BigInt::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self[(i, j)].is_one()
                    } else {
                        self[(i, j)].is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map(&self, f: impl Fn(&BigInt) -> BigInt) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|e| -e)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        self.map(|e| e * c)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in matrix product: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
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
                        let e = &mut out[(i, j)];
                        *e += a * b;
                    }
                }
            }
        }
        out
    }

    /// Matrix power for square matrices, exponent >= 0.
    pub fn pow(&self, mut e: u64) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Entrywise reduction into the range [0, m).
    pub fn reduce_mod(&self, m: u64) -> Self {
        let m = BigInt::from(m);
        self.map(|e| e.mod_floor_ref(&m))
    }

    /// Stack horizontally: [self | other].
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    /// Stack vertically: [self; other].
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        Self::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self[(i, j)].clone()
            } else {
                other[(i - self.rows, j)].clone()
            }
        })
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// Submatrix made of the given columns, in order.
    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    /// Submatrix made of the given rows, in order.
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), self.cols, |i, j| self[(idx[i], j)].clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(k, k)] * &a[(i, j)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = num / &prev;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    /// Assemble a matrix from a grid of blocks. `blocks[i][j]` must have
    /// `row_dims[i]` rows and `col_dims[j]` columns; `None` means a zero block.
    pub fn from_blocks(
        row_dims: &[usize],
        col_dims: &[usize],
        blocks: &[Vec<Option<&IntMatrix>>],
    ) -> Self {
        assert_eq!(blocks.len(), row_dims.len());
        let total_rows: usize = row_dims.iter().sum();
        let total_cols: usize = col_dims.iter().sum();
        let mut out = Self::zeros(total_rows, total_cols);
        let mut roff = 0;
        for (bi, brow) in blocks.iter().enumerate() {
            assert_eq!(brow.len(), col_dims.len());
            let mut coff = 0;
            for (bj, blk) in brow.iter().enumerate() {
                if let Some(b) = blk {
                    assert_eq!(b.rows, row_dims[bi], "block row dim mismatch");
                    assert_eq!(b.cols, col_dims[bj], "block col dim mismatch");
                    for i in 0..b.rows {
                        for j in 0..b.cols {
                            out[(roff + i, coff + j)] = b[(i, j)].clone();
                        }
                    }
                }
                coff += col_dims[bj];
            }
            roff += row_dims[bi];
        }
        out
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    /// Kronecker product, first factor outermost: the (a*other.rows + b,
    /// c*other.cols + d) entry is self[(a, c)] * other[(b, d)].
    pub fn kronecker(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for a in 0..self.rows {
            for c in 0..self.cols {
                let s = &self[(a, c)];
                if s.is_zero() {
                    continue;
                }
                for b in 0..other.rows {
                    for d in 0..other.cols {
                        let t = &other[(b, d)];
                        if !t.is_zero() {
                            out[(a * other.rows + b, c * other.cols + d)] = s * t;
                        }
                    }
                }
            }
        }
        out
    }
}

trait ModFloorRef {
    fn mod_floor_ref(&self, m: &BigInt) -> BigInt;
}

impl ModFloorRef for BigInt {
    fn mod_floor_ref(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

// JSON form: nested arrays of rows. Entries that fit in i64 are emitted as
// JSON numbers; anything larger falls back to a decimal string, and both are
// accepted on input, so round trips are bit-exact.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonEntry {
    Small(i64),
    Big(String),
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let grid: Vec<Vec<JsonEntry>> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        let e = &self[(i, j)];
                        match i64::try_from(e.clone()) {
                            Ok(v) => JsonEntry::Small(v),
                            Err(_) => JsonEntry::Big(e.to_string()),
                        }
                    })
                    .collect()
            })
            .collect();
        grid.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let grid: Vec<Vec<JsonEntry>> = Vec::deserialize(de)?;
        let rows = grid.len();
        let cols = grid.first().map_or(0, |r| r.len());
        if grid.iter().any(|r| r.len() != cols) {
            return Err(D::Error::custom("ragged matrix rows"));
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for row in grid {
            for e in row {
                entries.push(match e {
                    JsonEntry::Small(v) => BigInt::from(v),
                    JsonEntry::Big(s) => s
                        .parse::<BigInt>()
                        .map_err(|_| D::Error::custom("bad integer literal"))?,
                });
            }
        }
        Ok(IntMatrix { rows, cols, entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_identity() {
        let a = IntMatrix::from_rows(vec![vec![1, 2], vec![3, 4]]);
        let id = IntMatrix::identity(2);
        assert_eq!(a.mul(&id), a);
        assert_eq!(id.mul(&a), a);
        let b = IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]);
        let ab = a.mul(&b);
        assert_eq!(ab, IntMatrix::from_rows(vec![vec![2, 1], vec![4, 3]]));
    }

    #[test]
    fn determinant_bareiss() {
        let a = IntMatrix::from_rows(vec![vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 5]]);
        assert_eq!(a.determinant(), BigInt::from(30));
        let b = IntMatrix::from_rows(vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(b.determinant(), BigInt::from(-2));
        let sing = IntMatrix::from_rows(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(sing.determinant(), BigInt::zero());
    }

    #[test]
    fn json_round_trip() {
        let a = IntMatrix::from_rows(vec![vec![1, -7], vec![0, 12]]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, "[[1,-7],[0,12]]");
        let back: IntMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(a, back);
        // big entries survive via the string fallback
        let mut big = IntMatrix::zeros(1, 1);
        big[(0, 0)] = BigInt::parse_bytes(b"123456789012345678901234567890", 10).unwrap();
        let s = serde_json::to_string(&big).unwrap();
        let back: IntMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(big, back);
    }

    #[test]
    fn blocks() {
        let a = IntMatrix::identity(2);
        let b = IntMatrix::from_rows(vec![vec![5], vec![6]]);
        let m = IntMatrix::from_blocks(&[2], &[2, 1], &[vec![Some(&a), Some(&b)]]);
        assert_eq!(
            m,
            IntMatrix::from_rows(vec![vec![1, 0, 5], vec![0, 1, 6]])
        );
    }
}
