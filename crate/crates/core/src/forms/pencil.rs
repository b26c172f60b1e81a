use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::HomogeneousForm;
use crate::linalg::IntMatrix;
use crate::{Error, Result};

/// `M_x = Σ x_i A_i` for skew-symmetric integer matrices `A_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicPencil {
    m: usize,
    mats: Vec<IntMatrix>,
}

impl SymbolicPencil {
    pub fn new(mats: Vec<IntMatrix>) -> Result<Self> {
        let Some(first) = mats.first() else {
            return Err(Error::InvalidInput("a pencil needs at least one matrix".into()));
        };
        let m = first.rows();
        for (i, a) in mats.iter().enumerate() {
            if a.rows() != m || a.cols() != m {
                return Err(Error::Dimension(format!("matrix {} is {}x{}, expected {m}x{m}", i + 1, a.rows(), a.cols())));
            }
            if !a.is_skew_symmetric() {
                return Err(Error::InvalidInput(format!("matrix {} is not skew-symmetric", i + 1)));
            }
        }
        Ok(SymbolicPencil { m, mats })
    }

    /// A square linear matrix without the skew requirement, for block factors
    /// whose minors are needed on their own.
    pub fn square(mats: Vec<IntMatrix>) -> Result<Self> {
        let Some(first) = mats.first() else {
            return Err(Error::InvalidInput("a pencil needs at least one matrix".into()));
        };
        let m = first.rows();
        if mats.iter().any(|a| a.rows() != m || a.cols() != m) {
            return Err(Error::Dimension("coefficient matrices must be square of one size".into()));
        }
        Ok(SymbolicPencil { m, mats })
    }

    /// Matrix size.
    pub fn size(&self) -> usize {
        self.m
    }

    pub fn nvars(&self) -> usize {
        self.mats.len()
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.mats
    }

    /// Coefficient vector of the linear form at `(r, c)`.
    pub fn entry(&self, r: usize, c: usize) -> Vec<BigInt> {
        self.mats.iter().map(|a| a[(r, c)].clone()).collect()
    }

    pub fn entry_is_zero(&self, r: usize, c: usize) -> bool {
        self.mats.iter().all(|a| a[(r, c)].is_zero())
    }

    pub fn entry_form(&self, r: usize, c: usize) -> HomogeneousForm {
        HomogeneousForm::linear(&self.entry(r, c))
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(IntMatrix::is_zero)
    }

    /// `M_a = Σ a_i A_i`.
    pub fn evaluate(&self, a: &[BigInt]) -> IntMatrix {
        IntMatrix::linear_combination(a, &self.mats)
    }

    /// `Q^T A_i Q` for every coefficient matrix.
    pub fn congruence(&self, q: &IntMatrix) -> Self {
        let qt = q.transpose();
        SymbolicPencil { m: q.cols(), mats: self.mats.iter().map(|a| qt.mul(a).mul(q)).collect() }
    }

    /// Coefficient matrices `A'_j = Σ_i P_{j,i} A_i`.
    pub fn change_variables(&self, p: &IntMatrix) -> Self {
        assert_eq!(p.cols(), self.nvars());
        let mats = (0..p.rows()).map(|j| self.evaluate(p.row(j))).collect();
        SymbolicPencil { m: self.m, mats }
    }

    /// Principal sub-pencil on the given indices.
    pub fn principal(&self, idx: &[usize]) -> Self {
        SymbolicPencil { m: idx.len(), mats: self.mats.iter().map(|a| a.submatrix(idx, idx)).collect() }
    }

    /// Connected components of the support graph; indices with an all-zero
    /// row are left out.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.m).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nxt = p[y];
                p[y] = r;
                y = nxt;
            }
            r
        }
        let mut active = alloc::vec![false; self.m];
        for i in 0..self.m {
            if !self.entry_is_zero(i, i) {
                active[i] = true;
            }
            for j in i + 1..self.m {
                if !self.entry_is_zero(i, j) || !self.entry_is_zero(j, i) {
                    active[i] = true;
                    active[j] = true;
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut root_slot = alloc::vec![usize::MAX; self.m];
        for i in 0..self.m {
            if !active[i] {
                continue;
            }
            let r = find(&mut parent, i);
            if root_slot[r] == usize::MAX {
                root_slot[r] = comps.len();
                comps.push(Vec::new());
            }
            comps[root_slot[r]].push(i);
        }
        comps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_skew() {
        assert!(SymbolicPencil::new(alloc::vec![IntMatrix::from_rows(&[[1, 0], [0, 0]])]).is_err());
        assert!(SymbolicPencil::new(Vec::new()).is_err());
    }

    #[test]
    fn components_of_block_diagonal() {
        let a = IntMatrix::from_rows(&[[0, 0, 1, 0, 0], [0, 0, 0, 0, 0], [-1, 0, 0, 0, 0], [0, 0, 0, 0, 2], [0, 0, 0, -2, 0]]);
        let p = SymbolicPencil::new(alloc::vec![a]).unwrap();
        assert_eq!(p.components(), [alloc::vec![0, 2], alloc::vec![3, 4]]);
    }
}
