mod common;

use common::big;
use nilrf_core::constructions::{
    determinant_form, galois_twist, gaussian_quotient, heisenberg, heisenberg_gaussian, heisenberg_sum,
    nonsingular_over_q_search, psi_nonsingular, QuadraticField, SingularitySearch,
};
use nilrf_core::forms::SymbolicPencil;
use nilrf_core::group::validate;
use nilrf_core::linalg::IntMatrix;
use nilrf_core::pencils::{
    d_y_alternative, d_y_exact, d_y_formula, d_y_readings_differ, realize, BlockKind, BlockPencil, BlockSpec,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn squarefree(d: i64) -> bool {
    (2..=d.abs()).take_while(|k| k * k <= d.abs()).all(|k| d % (k * k) != 0)
}

/// `min_t rank(t A_1 + A_2)` over the eigenvalue candidates and one generic `t`.
fn d_y_brute(p: &SymbolicPencil, spec: &BlockPencil) -> usize {
    let mut ts: Vec<BigRational> = spec
        .blocks
        .iter()
        .filter_map(|b| match &b.kind {
            BlockKind::FiniteEigen(a) => Some(a.clone()),
            _ => None,
        })
        .collect();
    ts.push(BigRational::new(1009.into(), 7.into()));
    ts.iter()
        .map(|t| {
            // scale by the denominator to stay integral
            let a = [t.numer().clone(), t.denom().clone()];
            p.evaluate(&a).rank()
        })
        .min()
        .unwrap()
}

fn alpha_pool() -> Vec<BigRational> {
    [(0, 1), (1, 1), (-1, 1), (2, 1), (1, 2), (-3, 1)].iter().map(|&(p, q)| BigRational::new(p.into(), q.into())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn realized_pencils_match_brute_rank(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = BlockPencil::random(&mut rng, 4, 3, &alpha_pool());
        let p = realize(&spec).unwrap();
        prop_assert_eq!(p.size(), spec.size());
        prop_assert!(p.matrices().iter().all(IntMatrix::is_skew_symmetric));
        let exact = d_y_exact(&p).unwrap();
        prop_assert_eq!(exact, d_y_brute(&p, &spec));
        prop_assert_eq!(exact, d_y_formula(&spec));
        if !d_y_readings_differ(&spec) {
            prop_assert_eq!(exact, d_y_alternative(&spec));
        }
    }

    #[test]
    fn galois_twists_are_valid(d in -10i64..=10) {
        match QuadraticField::new(d) {
            Ok(field) => {
                prop_assert!(squarefree(d) && d != 0 && d != 1);
                let g = galois_twist(&field).unwrap();
                prop_assert_eq!((g.m(), g.n()), (4, 2));
                prop_assert!(validate(4, 2, g.matrices()).is_ok());
                prop_assert_eq!(psi_nonsingular(&g), Some(5));
            }
            Err(_) => prop_assert!(!squarefree(d) || d == 0 || d == 1),
        }
    }
}

#[test]
fn readings_of_d_y_split_on_infinite_blocks() {
    let spec = BlockPencil::new(vec![BlockSpec::infinite(1), BlockSpec::singular(1)]);
    assert!(d_y_readings_differ(&spec));
    assert_eq!(d_y_formula(&spec), 4);
    assert_eq!(d_y_alternative(&spec), 2);
    let p = realize(&spec).unwrap();
    assert_eq!(d_y_exact(&p).unwrap(), 4);
    assert_eq!(d_y_brute(&p, &spec), 4);
}

#[test]
fn psi_and_singularity() {
    assert_eq!(psi_nonsingular(&heisenberg()), Some(3));
    assert_eq!(psi_nonsingular(&heisenberg_gaussian()), Some(5));
    assert_eq!(psi_nonsingular(&gaussian_quotient()), Some(5));
    let sum = heisenberg_sum(2).unwrap();
    assert_eq!(psi_nonsingular(&sum), None);
    assert_eq!(nonsingular_over_q_search(&sum, 3).unwrap(), SingularitySearch::Counterexample(big(&[1, 0, 0, 0])));
    assert_eq!(nonsingular_over_q_search(&heisenberg_gaussian(), 6).unwrap(), SingularitySearch::NoneFound(6));
    // the Gaussian pencil has determinant (x^2 + y^2)^2
    let det = determinant_form(&heisenberg_gaussian());
    let at = |x: i64, y: i64| det.eval(&[BigRational::from_integer(x.into()), BigRational::from_integer(y.into())]);
    for (x, y) in [(1, 0), (1, 1), (2, -3), (0, 5)] {
        let s = BigInt::from(x * x + y * y);
        assert_eq!(at(x, y), BigRational::from_integer(&s * &s));
    }
}

#[test]
fn gaussian_twist_matrices() {
    let g = galois_twist(&QuadraticField::new(-1).unwrap()).unwrap();
    let j = IntMatrix::from_rows(&[[0, 1], [-1, 0]]);
    let z = IntMatrix::zeros(2, 2);
    let block = |a: &IntMatrix, b: &IntMatrix, c: &IntMatrix, d: &IntMatrix| {
        IntMatrix::from_fn(4, 4, |r, s| {
            let m = match (r / 2, s / 2) {
                (0, 0) => a,
                (0, 1) => b,
                (1, 0) => c,
                _ => d,
            };
            m[(r % 2, s % 2)].clone()
        })
    };
    let two_j = j.scale(&BigInt::from(2));
    assert_eq!(g.matrices()[0], block(&z, &two_j, &two_j, &z));
    assert_eq!(g.matrices()[1], block(&two_j, &z, &z, &two_j.neg()));
}
