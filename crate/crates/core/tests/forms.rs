mod common;

use common::{skew_matrices, unimodular};
use nilrf_core::certify::MinorSpan;
use nilrf_core::forms::{
    det_form, gcd_minors_binary, nonzero_minors, rational_linear_factor, resultant, HomogeneousForm, SymbolicPencil,
    UniPoly,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn subsets(m: usize, d: usize) -> Vec<Vec<usize>> {
    (0u32..1 << m).filter(|s| s.count_ones() as usize == d).map(|s| (0..m).filter(|i| s >> i & 1 == 1).collect()).collect()
}

fn pencil(max_m: usize, max_n: usize) -> impl Strategy<Value = SymbolicPencil> {
    (2..=max_m, 1..=max_n).prop_flat_map(|(m, n)| skew_matrices(m, n, 3)).prop_map(|mats| SymbolicPencil::new(mats).unwrap())
}

fn y_valuation(f: &HomogeneousForm) -> u32 {
    f.last_variable_valuation().unwrap()
}

/// `f = g·h` for binary forms, if `g` divides `f`.
fn binary_quotient(f: &HomogeneousForm, g: &HomogeneousForm) -> Option<(UniPoly, u32)> {
    let (fy, gy) = (y_valuation(f), y_valuation(g));
    let (h, r) = UniPoly::dehomogenize(f).divrem(&UniPoly::dehomogenize(g));
    (r.is_zero() && gy <= fy).then_some((h, fy - gy))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn minors_match_brute_force(p in pencil(4, 3), d in 1usize..=4, point in proptest::collection::vec(-3i64..=3, 3)) {
        let m = p.size();
        prop_assume!(d <= m);
        let mut listed = nonzero_minors(&p, d).unwrap();
        let mut brute = Vec::new();
        let a: Vec<BigInt> = point[..p.nvars()].iter().map(|&x| BigInt::from(x)).collect();
        let at: Vec<BigRational> = a.iter().cloned().map(BigRational::from_integer).collect();
        let numeric = p.evaluate(&a);
        for rows in subsets(m, d) {
            for cols in subsets(m, d) {
                let f = det_form(&p, &rows, &cols);
                prop_assert_eq!(f.eval(&at), BigRational::from_integer(numeric.submatrix(&rows, &cols).det()));
                if !f.is_zero() {
                    brute.push((rows.clone(), cols.clone(), f));
                }
            }
        }
        listed.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        brute.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        prop_assert_eq!(listed, brute);
    }

    #[test]
    fn binary_gcd_is_greatest_common_divisor(p in pencil(4, 2).prop_filter("binary", |p| p.nvars() == 2), d in 1usize..=4) {
        prop_assume!(d <= p.size());
        let g = gcd_minors_binary(&p, d).unwrap();
        let minors = nonzero_minors(&p, d).unwrap();
        prop_assert_eq!(g.is_zero(), minors.is_empty());
        if g.is_zero() {
            return Ok(());
        }
        let mut common = UniPoly::zero();
        let mut min_y = u32::MAX;
        for (_, _, f) in &minors {
            let q = binary_quotient(f, &g);
            prop_assert!(q.is_some(), "gcd {} does not divide {}", g, f);
            let (h, y) = q.unwrap();
            common = common.gcd(&h);
            min_y = min_y.min(y);
        }
        prop_assert!(common.is_constant());
        prop_assert_eq!(min_y, 0);
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(
        a in proptest::collection::vec(-3i64..=3, 2..=4),
        b in proptest::collection::vec(-3i64..=3, 2..=4),
        shared in proptest::option::of(-2i64..=2),
    ) {
        let mut q1 = UniPoly::from_ints(&a);
        let mut q2 = UniPoly::from_ints(&b);
        if let Some(r) = shared {
            let lin = UniPoly::linear_root(BigRational::from_integer(r.into()));
            q1 = q1.mul(&lin);
            q2 = q2.mul(&lin);
        }
        prop_assume!(!q1.is_zero() && !q2.is_zero());
        let res = resultant(&q1, &q2).unwrap();
        prop_assert_eq!(res.is_zero(), !q1.gcd(&q2).is_constant());
        // symmetry up to sign
        let swapped = resultant(&q2, &q1).unwrap();
        prop_assert!(swapped == res.clone() || swapped == -res);
    }

    #[test]
    fn linear_factor_round_trip(a in -4i64..=4, b in -4i64..=4, e in 1u32..=4, c in 1i64..=5, other in proptest::option::of((-3i64..=3, 1i64..=3))) {
        prop_assume!(a != 0 || b != 0);
        let g = a.gcd(&b);
        let mut v = vec![BigInt::from(a / g), BigInt::from(b / g)];
        if v.iter().find(|x| !x.is_zero()).unwrap() < &BigInt::zero() {
            v = v.into_iter().map(|x| -x).collect();
        }
        let mut f = HomogeneousForm::linear(&v).pow(e).scale(&BigRational::from_integer(c.into()));
        let mut expected = Some((v.clone(), e));
        if let Some((s, t)) = other {
            // s·x + t·y with t > 0 is never parallel to v unless the slopes agree
            let w = [BigInt::from(s), BigInt::from(t)];
            if &w[0] * &v[1] != &w[1] * &v[0] {
                f = f.mul(&HomogeneousForm::linear(&w));
                expected = None;
            }
        }
        prop_assert_eq!(rational_linear_factor(&f), expected);
    }

    #[test]
    fn minor_ideal_rank_is_congruence_invariant(
        (p, q, pv) in pencil(4, 3).prop_flat_map(|p| {
            let (m, n) = (p.size(), p.nvars());
            (Just(p), unimodular(m), unimodular(n))
        }),
        d in 1usize..=4,
    ) {
        prop_assume!(d <= p.size());
        let moved = p.change_variables(&pv).congruence(&q);
        let before = MinorSpan::new(&p, d).unwrap();
        let after = MinorSpan::new(&moved, d).unwrap();
        prop_assert_eq!(before.rank(), after.rank());
        prop_assert_eq!(before.raised(d as u32 + 1).rank(), after.raised(d as u32 + 1).rank());
    }
}

#[test]
fn resultant_sign_convention() {
    // q1 columns first: Res(t, t - 1) = det [[1, 1], [0, -1]]
    let r = resultant(&UniPoly::from_ints(&[0, 1]), &UniPoly::from_ints(&[-1, 1])).unwrap();
    assert_eq!(r, -BigRational::one());
}
