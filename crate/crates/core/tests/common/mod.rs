#![allow(dead_code)]

use nilrf_core::group::GroupPresentation;
use nilrf_core::linalg::IntMatrix;
use num_bigint::BigInt;
use proptest::prelude::*;

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn int_matrix(rows: usize, cols: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(-range..=range, rows * cols)
        .prop_map(move |e| IntMatrix::from_fn(rows, cols, |i, j| BigInt::from(e[i * cols + j])))
}

pub fn any_matrix(max_rows: usize, max_cols: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| int_matrix(r, c, range))
}

pub fn skew(m: usize, upper: &[i64]) -> IntMatrix {
    let mut a = IntMatrix::zeros(m, m);
    let mut it = upper.iter();
    for i in 0..m {
        for j in i + 1..m {
            let x = BigInt::from(*it.next().expect("enough entries"));
            a[(j, i)] = -x.clone();
            a[(i, j)] = x;
        }
    }
    a
}

pub fn skew_matrices(m: usize, n: usize, range: i64) -> impl Strategy<Value = Vec<IntMatrix>> {
    let k = m * (m - 1) / 2;
    proptest::collection::vec(proptest::collection::vec(-range..=range, k), n)
        .prop_map(move |u| u.iter().map(|e| skew(m, e)).collect())
}

/// Valid (full) presentations with `2 ≤ m ≤ max_m`, `1 ≤ n ≤ max_n`.
pub fn presentation(max_m: usize, max_n: usize, range: i64) -> impl Strategy<Value = GroupPresentation> {
    (2..=max_m, 1..=max_n)
        .prop_flat_map(move |(m, n)| skew_matrices(m, n.min(m * (m - 1) / 2), range))
        .prop_filter_map("phi not full", |mats| GroupPresentation::from_matrices(mats).ok())
}

/// Unimodular matrix built from elementary operations.
pub fn unimodular(size: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec((0..size, 0..size, 0u8..4, -2i64..=2), 0..3 * size + 1).prop_map(move |ops| {
        let mut u = IntMatrix::identity(size);
        for (i, j, kind, c) in ops {
            match kind {
                0 if i != j => u.swap_rows(i, j),
                1 => u.negate_row(i),
                _ if i != j => u.add_row_multiple(i, j, &BigInt::from(c)),
                _ => {}
            }
        }
        u
    })
}
