use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: alloc::vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from small integer rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        Self::from_fn(r, c, |i, j| {
            let row = rows[i].as_ref();
            assert_eq!(row.len(), c, "ragged matrix rows");
            BigInt::from(row[j])
        })
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (i..self.cols).all(|j| self[(i, j)] == -&self[(j, i)])
            })
    }

    /// Strictly lower-triangular part.
    pub fn strictly_lower(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| {
            if i > j {
                self[(i, j)].clone()
            } else {
                BigInt::zero()
            }
        })
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
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
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &IntMatrix) -> IntMatrix {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            &self[(i / other.rows, j / other.cols)] * &other[(i % other.rows, j % other.cols)]
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Σ c_i M_i for matrices of equal shape.
    pub fn linear_combination(coeffs: &[BigInt], mats: &[IntMatrix]) -> IntMatrix {
        assert_eq!(coeffs.len(), mats.len());
        let (r, c) = mats.first().map_or((0, 0), |m| (m.rows, m.cols));
        let mut out = Self::zeros(r, c);
        for (a, m) in coeffs.iter().zip(mats) {
            if a.is_zero() {
                continue;
            }
            for (o, x) in out.data.iter_mut().zip(&m.data) {
                if !x.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_dst += c * row_src
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = &self[(src, j)] * c;
            self[(dst, j)] += t;
        }
    }

    /// col_dst += c * col_src
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = &self[(i, src)] * c;
            self[(i, dst)] += t;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let t = -&self[(i, j)];
            self[(i, j)] = t;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = !sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign {
            -d
        } else {
            d
        }
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        let mut prev = BigInt::one();
        for c in 0..a.cols {
            let Some(p) = (rank..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, rank);
            for i in rank + 1..a.rows {
                for j in c + 1..a.cols {
                    let v = (&a[(i, j)] * &a[(rank, c)] - &a[(i, c)] * &a[(rank, j)]) / &prev;
                    a[(i, j)] = v;
                }
                a[(i, c)] = BigInt::zero();
            }
            prev = a[(rank, c)].clone();
            rank += 1;
            if rank == a.rows {
                break;
            }
        }
        rank
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|a| a.abs()).max().unwrap_or_default()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_matches_cofactor_expansion() {
        let m = IntMatrix::from_rows(&[[2, -1, 3], [0, 4, 1], [5, 2, -2]]);
        // 2(4·-2 - 1·2) - (-1)(0·-2 - 1·5) + 3(0·2 - 4·5)
        assert_eq!(m.det(), BigInt::from(2 * (-10) - 5 + 3 * (-20)));
    }

    #[test]
    fn det_needs_pivoting() {
        let m = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        assert_eq!(m.det(), BigInt::from(-1));
    }

    #[test]
    fn rank_of_dependent_rows() {
        let m = IntMatrix::from_rows(&[[1, 2, 3], [2, 4, 6], [0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(IntMatrix::zeros(3, 2).rank(), 0);
    }

    #[test]
    fn kron_shape_and_entries() {
        let a = IntMatrix::from_rows(&[[1, 0], [0, 0]]);
        let j = IntMatrix::from_rows(&[[0, 1], [-1, 0]]);
        let k = a.kron(&j);
        assert_eq!(k, IntMatrix::from_rows(&[[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]));
    }

    #[test]
    fn strictly_lower_recovers_skew_matrix() {
        let a = IntMatrix::from_rows(&[[0, 3, -1], [-3, 0, 2], [1, -2, 0]]);
        let l = a.strictly_lower();
        assert_eq!(l.add(&l.transpose().neg()), a);
    }
}
