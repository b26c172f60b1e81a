use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Row-style Hermite normal form `H = U·A` with `U` unimodular.
///
/// `H` is in row echelon form with positive pivots, entries above each pivot
/// reduced into `[0, pivot)`, and zero rows at the bottom. `pivots[i]` is the
/// pivot column of row `i`.
#[derive(Clone, Debug)]
pub struct RowHermite {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub pivots: Vec<usize>,
}

impl RowHermite {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn row_hermite(a: &IntMatrix) -> RowHermite {
    let (r, c) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(r);
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..c {
        if pr == r {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in pr..r {
                if h[(i, col)].is_zero() {
                    continue;
                }
                if best.map_or(true, |b| h[(i, col)].abs() < h[(b, col)].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(pr, b);
            u.swap_rows(pr, b);
            let mut done = true;
            for i in pr + 1..r {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let f = -(&h[(i, col)] / &h[(pr, col)]);
                h.add_row_multiple(i, pr, &f);
                u.add_row_multiple(i, pr, &f);
                done &= h[(i, col)].is_zero();
            }
            if done {
                break;
            }
        }
        if h[(pr, col)].is_zero() {
            continue;
        }
        if h[(pr, col)].is_negative() {
            h.negate_row(pr);
            u.negate_row(pr);
        }
        for i in 0..pr {
            let f = -h[(i, col)].div_floor(&h[(pr, col)]);
            h.add_row_multiple(i, pr, &f);
            u.add_row_multiple(i, pr, &f);
        }
        pivots.push(col);
        pr += 1;
    }
    RowHermite { h, u, pivots }
}

/// Basis (as rows) of the integer kernel `{x : A x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let rh = row_hermite(&a.transpose());
    (rh.rank()..rh.u.rows()).map(|i| rh.u.row(i).to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_with_reduced_entries() {
        let a = IntMatrix::from_rows(&[[2, 3], [4, 1]]);
        let rh = row_hermite(&a);
        assert_eq!(rh.u.mul(&a), rh.h);
        assert_eq!(rh.h, IntMatrix::from_rows(&[[2, 3], [0, 5]]));
        assert_eq!(rh.pivots, [0, 1]);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let a = IntMatrix::from_rows(&[[1, 2, 3], [4, 5, 6]]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).iter().all(Zero::is_zero));
        assert!(k[0].iter().any(|x| !x.is_zero()));
    }
}
