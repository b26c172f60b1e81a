use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Incrementally built basis of a subspace of `Q^dim`.
///
/// Vectors are offered in order; independent ones are accepted and become the
/// generators that solutions are expressed in. Because acceptance is greedy,
/// a solution puts weight only on the earliest independent generators.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    dim: usize,
    // (pivot column, row scaled to pivot 1, expression over accepted generators)
    rows: Vec<(usize, Vec<BigRational>, Vec<BigRational>)>,
}

impl SpanSolver {
    pub fn new(dim: usize) -> Self {
        SpanSolver { dim, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of accepted generators.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    fn reduce(&self, v: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        assert_eq!(v.len(), self.dim, "vector dimension");
        let mut v = v.to_vec();
        let mut expr = alloc::vec![BigRational::zero(); self.rows.len()];
        for (pivot, row, rexpr) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = v[*pivot].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (x, y) in expr.iter_mut().zip(rexpr) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        (v, expr)
    }

    /// Offers a vector; returns true if it was independent and got accepted.
    pub fn insert(&mut self, v: &[BigRational]) -> bool {
        let (mut r, mut expr) = self.reduce(v);
        let Some(pivot) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[pivot].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        // r = g_new + Σ expr_j g_j
        for x in expr.iter_mut() {
            *x *= &inv;
        }
        expr.push(inv);
        for (_, _, e) in self.rows.iter_mut() {
            e.push(BigRational::zero());
        }
        self.rows.push((pivot, r, expr));
        true
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.reduce(v).0.iter().all(Zero::is_zero)
    }

    /// Coefficients `c` with `v = Σ c_j g_j` over the accepted generators.
    pub fn solve(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        let (r, expr) = self.reduce(v);
        if !r.iter().all(Zero::is_zero) {
            return None;
        }
        // r = v + Σ expr_j g_j = 0
        Some(expr.into_iter().map(|x| -x).collect())
    }
}

/// Rank of a list of rational vectors.
pub fn rational_rank(vectors: &[Vec<BigRational>]) -> usize {
    let Some(first) = vectors.first() else { return 0 };
    let mut s = SpanSolver::new(first.len());
    for v in vectors {
        s.insert(v);
    }
    s.rank()
}

/// Determinant over Q by Gaussian elimination.
pub fn rational_det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[c][c];
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    det
}
