//! Named families of two-step nilpotent groups.

mod quadratic;

pub use quadratic::{QuadInt, QuadraticField};

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::forms::{det_form, HomogeneousForm, UniPoly};
use crate::group::GroupPresentation;
use crate::linalg::IntMatrix;
use crate::{Error, Result};

fn symplectic() -> IntMatrix {
    IntMatrix::from_rows(&[[0, 1], [-1, 0]])
}

/// `H3(Z)`: `m = 2`, `n = 1`, `A = [[0,1],[-1,0]]`.
pub fn heisenberg() -> GroupPresentation {
    GroupPresentation::new(2, 1, alloc::vec![symplectic()]).expect("valid")
}

/// The Heisenberg group over the Gaussian integers, `m = 4`, `n = 2`.
pub fn heisenberg_gaussian() -> GroupPresentation {
    GroupPresentation::new(
        4,
        2,
        alloc::vec![
            IntMatrix::from_rows(&[[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]]),
            IntMatrix::from_rows(&[[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]),
        ],
    )
    .expect("valid")
}

/// The quotient of [`heisenberg_gaussian`] by the central element `(0, (1, 0))`:
/// the second matrix alone, of rank 4.
pub fn gaussian_quotient() -> GroupPresentation {
    let a = heisenberg_gaussian().matrices()[1].clone();
    GroupPresentation::new(4, 1, alloc::vec![a]).expect("valid")
}

/// Direct sum of `count` copies of `H3(Z)`: matrices `E_ii ⊗ [[0,1],[-1,0]]`.
pub fn heisenberg_sum(count: usize) -> Result<GroupPresentation> {
    if count == 0 {
        return Err(Error::InvalidInput("count must be at least 1".into()));
    }
    let mats = (0..count)
        .map(|i| IntMatrix::from_fn(count, count, |r, c| BigInt::from((r == i && c == i) as i64)).kron(&symplectic()))
        .collect();
    GroupPresentation::new(2 * count, count, mats)
}

type QMatrix = Vec<Vec<QuadInt>>;

fn qmul(a: &QMatrix, b: &QMatrix, disc: &BigInt) -> QMatrix {
    let (r, k, c) = (a.len(), b.len(), b[0].len());
    (0..r)
        .map(|i| {
            (0..c)
                .map(|j| (0..k).fold(QuadInt::zero_in(disc), |acc, t| &acc + &(&a[i][t] * &b[t][j])))
                .collect()
        })
        .collect()
}

fn qtranspose(a: &QMatrix) -> QMatrix {
    (0..a[0].len()).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// The Galois-twisted sum of two Heisenberg groups over `Q(√D)`.
///
/// With `E_{k,l} = σ_k(α^l)` for `l = 1, 2` and
/// `X_i = (E⊗1)^T (E_ii ⊗ J)(E⊗1)`, the matrices are `B_j = Σ_i σ_i(α^j) X_i`.
pub fn galois_twist(field: &QuadraticField) -> Result<GroupPresentation> {
    let disc = field.disc();
    let alpha = field.alpha();
    let n = 2;
    let e: QMatrix = (0..n).map(|k| (1..=n as u32).map(|l| field.sigma(k, &alpha.pow(l))).collect()).collect();
    // E ⊗ 1_2
    let e2: QMatrix = (0..2 * n)
        .map(|r| (0..2 * n).map(|c| if r % 2 == c % 2 { e[r / 2][c / 2].clone() } else { QuadInt::zero_in(disc) }).collect())
        .collect();
    let e2t = qtranspose(&e2);
    let xs: Vec<QMatrix> = (0..n)
        .map(|i| {
            let block = IntMatrix::from_fn(n, n, |r, c| BigInt::from((r == i && c == i) as i64)).kron(&symplectic());
            let q: QMatrix = (0..2 * n)
                .map(|r| {
                    (0..2 * n)
                        .map(|c| QuadInt::new(BigRational::from_integer(block[(r, c)].clone()), BigRational::zero(), disc.clone()))
                        .collect()
                })
                .collect();
            qmul(&qmul(&e2t, &q, disc), &e2, disc)
        })
        .collect();
    let mut mats = Vec::new();
    for j in 1..=n as u32 {
        let mut b: QMatrix = alloc::vec![alloc::vec![QuadInt::zero_in(disc); 2 * n]; 2 * n];
        for (i, x) in xs.iter().enumerate() {
            let c = field.sigma(i, &alpha.pow(j));
            for (brow, xrow) in b.iter_mut().zip(x) {
                for (bv, xv) in brow.iter_mut().zip(xrow) {
                    *bv = &*bv + &(&c * xv);
                }
            }
        }
        let rows: Option<Vec<Vec<BigInt>>> = b.iter().map(|row| row.iter().map(QuadInt::to_integer).collect()).collect();
        let rows = rows.ok_or_else(|| Error::Internal(format!("twisted matrix B_{j} is not integral")))?;
        let m = IntMatrix::from_big_rows(rows).expect("square");
        if !m.is_skew_symmetric() {
            return Err(Error::Internal(format!("twisted matrix B_{j} is not skew-symmetric")));
        }
        mats.push(m);
    }
    GroupPresentation::new(2 * n, n, mats)
}

/// Outcome of [`nonsingular_over_q_search`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingularitySearch {
    /// `w ≠ 0` with `rank(w^T A_1; …; w^T A_n) < n`.
    Counterexample(Vec<BigInt>),
    /// Nothing found up to this height; not a proof of non-singularity.
    NoneFound(u64),
}

fn rank_small(rows: &[Vec<i128>]) -> Option<usize> {
    // fraction-free elimination with overflow detection
    let mut a: Vec<Vec<i128>> = rows.to_vec();
    let (r, c) = (a.len(), a.first().map_or(0, Vec::len));
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..c {
        let Some(p) = (rank..r).find(|&i| a[i][col] != 0) else { continue };
        a.swap(rank, p);
        for i in rank + 1..r {
            for j in col + 1..c {
                let v = a[rank][col].checked_mul(a[i][j])?.checked_sub(a[i][col].checked_mul(a[rank][j])?)?;
                a[i][j] = v / prev;
            }
            a[i][col] = 0;
        }
        prev = a[rank][col];
        rank += 1;
        if rank == r {
            break;
        }
    }
    Some(rank)
}

/// Vectors of `Z^m` with max-norm exactly `h`, primitive, first nonzero entry
/// positive, ordered by L1 norm then descending lexicographic order.
fn shell(m: usize, h: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = alloc::vec![-h; m];
    'outer: loop {
        let first = cur.iter().find(|&&x| x != 0);
        if first.is_some_and(|&x| x > 0) && cur.iter().any(|x| x.abs() == h) {
            let g = cur.iter().fold(0i64, |acc, &x| num_integer::Integer::gcd(&acc, &x));
            if g == 1 {
                out.push(cur.clone());
            }
        }
        for x in cur.iter_mut().rev() {
            *x += 1;
            if *x <= h {
                continue 'outer;
            }
            *x = -h;
        }
        break;
    }
    out.sort_by(|a, b| {
        let l1 = |v: &Vec<i64>| v.iter().map(|x| x.abs()).sum::<i64>();
        l1(a).cmp(&l1(b)).then_with(|| b.cmp(a))
    });
    out
}

/// Looks for `w` with `φ(w, ·)` of rank below `n`, over primitive `w` of
/// height at most `height_bound`.
pub fn nonsingular_over_q_search(pres: &GroupPresentation, height_bound: u64) -> Result<SingularitySearch> {
    if height_bound == 0 {
        return Err(Error::InvalidInput("height bound must be at least 1".into()));
    }
    let (m, n) = (pres.m(), pres.n());
    let small: Option<Vec<Vec<Vec<i128>>>> = pres
        .matrices()
        .iter()
        .map(|a| (0..m).map(|i| a.row(i).iter().map(|x| i64::try_from(x).ok().map(i128::from)).collect()).collect())
        .collect();
    for h in 1..=height_bound as i64 {
        for w in shell(m, h) {
            let rank = small
                .as_ref()
                .and_then(|mats| {
                    let rows: Vec<Vec<i128>> = mats
                        .iter()
                        .map(|a| (0..m).map(|j| (0..m).map(|i| w[i] as i128 * a[i][j]).sum()).collect())
                        .collect();
                    rank_small(&rows)
                })
                .unwrap_or_else(|| {
                    let wb: Vec<BigInt> = w.iter().map(|&x| BigInt::from(x)).collect();
                    let rows: Vec<Vec<BigInt>> = pres
                        .matrices()
                        .iter()
                        .map(|a| (0..m).map(|j| (0..m).map(|i| &wb[i] * &a[(i, j)]).sum()).collect())
                        .collect();
                    IntMatrix::from_big_rows(rows).expect("rows").rank()
                });
            if rank < n {
                return Ok(SingularitySearch::Counterexample(w.into_iter().map(BigInt::from).collect()));
            }
        }
    }
    Ok(SingularitySearch::NoneFound(height_bound))
}

/// `det(Σ x_i A_i)` as a form in the center variables.
pub fn determinant_form(pres: &GroupPresentation) -> HomogeneousForm {
    let all: Vec<usize> = (0..pres.m()).collect();
    det_form(&pres.pencil(), &all, &all)
}

/// Whether the binary form has a zero at a rational point `(a_1 : a_2)`.
pub fn has_rational_projective_root(f: &HomogeneousForm) -> bool {
    assert_eq!(f.nvars(), 2, "binary form expected");
    if f.is_zero() {
        return true;
    }
    let k = f.degree();
    if f.coeff(&[k, 0]).is_zero() {
        // the point (1 : 0)
        return true;
    }
    let coeffs: Vec<BigRational> = (0..=k).map(|e| f.coeff(&[e, k - e])).collect();
    !UniPoly::new(coeffs).rational_roots().is_empty()
}

/// `m + 1` when the group is certified non-singular over `Q`, else `None`.
///
/// Non-singularity over `Q` is equivalent to `M_a` being invertible for
/// every rational `a ≠ 0`, which is decided exactly for `n ≤ 2`: by
/// `det A ≠ 0` when `n = 1` and by the absence of rational projective roots
/// of `det M_x` when `n = 2`.
pub fn psi_nonsingular(pres: &GroupPresentation) -> Option<usize> {
    let certified = match pres.n() {
        1 => !pres.matrices()[0].det().is_zero(),
        2 => !has_rational_projective_root(&determinant_form(pres)),
        _ => false,
    };
    certified.then_some(pres.m() + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn gaussian_twist_by_hand() {
        let g = galois_twist(&QuadraticField::new(-1).unwrap()).unwrap();
        let j2 = symplectic().scale(&BigInt::from(2));
        let z = IntMatrix::zeros(2, 2);
        let b1 = IntMatrix::from_fn(4, 4, |r, c| match (r / 2, c / 2) {
            (0, 1) | (1, 0) => j2[(r % 2, c % 2)].clone(),
            _ => z[(0, 0)].clone(),
        });
        let b2 = IntMatrix::from_fn(4, 4, |r, c| match (r / 2, c / 2) {
            (0, 0) => j2[(r % 2, c % 2)].clone(),
            (1, 1) => -j2[(r % 2, c % 2)].clone(),
            _ => BigInt::zero(),
        });
        assert_eq!(g.matrices(), &[b1, b2]);
    }

    #[test]
    fn family_shapes() {
        assert_eq!(heisenberg_sum(1).unwrap(), heisenberg());
        let s = heisenberg_sum(2).unwrap();
        assert_eq!(s.matrices()[0][(0, 1)], BigInt::one());
        assert_eq!(s.matrices()[1][(2, 3)], BigInt::one());
        assert!(heisenberg_sum(0).is_err());
        assert_eq!(gaussian_quotient().matrices()[0].rank(), 4);
    }

    #[test]
    fn singularity_checks() {
        assert_eq!(nonsingular_over_q_search(&heisenberg(), 20).unwrap(), SingularitySearch::NoneFound(20));
        let s = heisenberg_sum(2).unwrap();
        assert_eq!(
            nonsingular_over_q_search(&s, 5).unwrap(),
            SingularitySearch::Counterexample(alloc::vec![BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::zero()])
        );
        assert_eq!(psi_nonsingular(&heisenberg()), Some(3));
        assert_eq!(psi_nonsingular(&s), None);
        assert_eq!(psi_nonsingular(&galois_twist(&QuadraticField::new(2).unwrap()).unwrap()), Some(5));
        assert_eq!(psi_nonsingular(&heisenberg_gaussian()), Some(5));
    }
}
