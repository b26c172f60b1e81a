use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Smith normal form `P·M·Q = diag(μ_1, …)` with unimodular `P`, `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SNFResult {
    pub left: IntMatrix,
    pub diag: Vec<BigInt>,
    pub right: IntMatrix,
}

impl SNFResult {
    /// Number of nonzero invariant factors, i.e. the rank over Q.
    pub fn rank(&self) -> usize {
        self.diag.iter().take_while(|d| !d.is_zero()).count()
    }
}

fn min_abs_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some(b) if a[b].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Smith normal form with recorded transforms.
pub fn snf(m: &IntMatrix) -> SNFResult {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut p = IntMatrix::identity(r);
    let mut q = IntMatrix::identity(c);
    let steps = r.min(c);
    for t in 0..steps {
        loop {
            let Some((pi, pj)) = min_abs_entry(&a, t) else {
                break;
            };
            a.swap_rows(t, pi);
            p.swap_rows(t, pi);
            a.swap_cols(t, pj);
            q.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..r {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let f = -(&a[(i, t)] / &a[(t, t)]);
                a.add_row_multiple(i, t, &f);
                p.add_row_multiple(i, t, &f);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let f = -(&a[(t, j)] / &a[(t, t)]);
                a.add_col_multiple(j, t, &f);
                q.add_col_multiple(j, t, &f);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = a[(t, t)].clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    let one = BigInt::from(1);
                    a.add_row_multiple(t, i, &one);
                    p.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            p.negate_row(t);
        }
    }
    let diag = (0..steps).map(|i| a[(i, i)].clone()).collect();
    SNFResult { left: p, diag, right: q }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SNFResult {
        let s = snf(m);
        let d = s.left.mul(m).mul(&s.right);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i == j {
                    assert_eq!(d[(i, j)], s.diag[i]);
                } else {
                    assert!(d[(i, j)].is_zero());
                }
            }
        }
        assert_eq!(s.left.det().abs(), BigInt::from(1));
        assert_eq!(s.right.det().abs(), BigInt::from(1));
        s
    }

    #[test]
    fn identity_and_unimodular() {
        let one = BigInt::from(1);
        assert_eq!(check(&IntMatrix::identity(2)).diag, [one.clone(), one.clone()]);
        assert_eq!(check(&IntMatrix::from_rows(&[[0, 1], [-1, 0]])).diag, [one.clone(), one]);
    }

    #[test]
    fn divisibility_chain_example() {
        let s = check(&IntMatrix::from_rows(&[[2, 4], [6, 8]]));
        assert_eq!(s.diag, [BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn forces_gcd_into_first_factor() {
        let s = check(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(s.diag, [BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn rectangular_and_rank_deficient() {
        let s = check(&IntMatrix::from_rows(&[[1, 2, 3], [2, 4, 6]]));
        assert_eq!(s.diag, [BigInt::from(1), BigInt::zero()]);
        assert_eq!(s.rank(), 1);
        let s = check(&IntMatrix::from_rows(&[[4], [6], [0]]));
        assert_eq!(s.diag, [BigInt::from(2)]);
    }
}
