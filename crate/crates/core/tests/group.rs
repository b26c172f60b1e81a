mod common;

use common::{big, presentation, skew};
use nilrf_core::group::{ball, collect, spheres, validate, FreeWord, GroupElement, GroupPresentation, Warning};
use nilrf_core::linalg::IntMatrix;
use nilrf_core::Error;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn element(m: usize, n: usize) -> impl Strategy<Value = GroupElement> {
    (proptest::collection::vec(-6i64..=6, m), proptest::collection::vec(-6i64..=6, n))
        .prop_map(|(w, v)| GroupElement::from_ints(&w, &v))
}

fn with_elements(count: usize) -> impl Strategy<Value = (GroupPresentation, Vec<GroupElement>)> {
    presentation(5, 3, 3).prop_flat_map(move |g| {
        let (m, n) = (g.m(), g.n());
        (Just(g), proptest::collection::vec(element(m, n), count))
    })
}

fn with_word() -> impl Strategy<Value = (GroupPresentation, FreeWord, Vec<usize>)> {
    presentation(5, 3, 3).prop_flat_map(|g| {
        let (m, n) = (g.m(), g.n());
        let letters = proptest::collection::vec((0..m, prop_oneof![Just(1i8), Just(-1i8)]), 2..14);
        let tail = proptest::collection::vec(-4i64..=4, n);
        let swaps = proptest::collection::vec(0usize..64, 0..20);
        (Just(g), letters, tail, swaps).prop_map(|(g, l, t, s)| (g, FreeWord::new(l, big(&t)), s))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_laws((g, xs) in with_elements(3)) {
        let (a, b, c) = (&xs[0], &xs[1], &xs[2]);
        let ab_c = g.multiply(&g.multiply(a, b).unwrap(), c).unwrap();
        let a_bc = g.multiply(a, &g.multiply(b, c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let e = g.identity();
        prop_assert_eq!(&g.multiply(a, &e).unwrap(), a);
        prop_assert_eq!(&g.multiply(&e, a).unwrap(), a);
        let inv = g.inverse(a).unwrap();
        prop_assert_eq!(&g.multiply(a, &inv).unwrap(), &e);
        prop_assert_eq!(&g.multiply(&inv, a).unwrap(), &e);
    }

    #[test]
    fn commutator_is_phi((g, xs) in with_elements(2)) {
        let (a, b) = (&xs[0], &xs[1]);
        let ia = g.inverse(a).unwrap();
        let ib = g.inverse(b).unwrap();
        let direct = [&ia, &ib, a, b].into_iter().fold(g.identity(), |acc, x| g.multiply(&acc, x).unwrap());
        prop_assert_eq!(&direct, &g.commutator(a, b).unwrap());
        prop_assert!(direct.is_central());
        prop_assert_eq!(direct.v, g.phi(&a.w, &b.w));
    }

    #[test]
    fn phi_is_alternating_bilinear((g, xs) in with_elements(3), s in -3i64..=3) {
        let (a, b, c) = (&xs[0].w, &xs[1].w, &xs[2].w);
        let sum: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y * s).collect();
        let lhs = g.phi(&sum, c);
        let rhs: Vec<BigInt> = g.phi(a, c).iter().zip(g.phi(b, c)).map(|(x, y)| x + y * s).collect();
        prop_assert_eq!(lhs, rhs);
        let ba: Vec<BigInt> = g.phi(b, a).into_iter().map(|x| -x).collect();
        prop_assert_eq!(g.phi(a, b), ba);
        prop_assert!(g.phi(a, a).iter().all(Zero::is_zero));
        // φ = φ^L(w1, w2) − φ^L(w2, w1)
        let split: Vec<BigInt> = g.phi_lower(a, b).iter().zip(g.phi_lower(b, a)).map(|(x, y)| x - y).collect();
        prop_assert_eq!(g.phi(a, b), split);
    }

    #[test]
    fn collection_is_confluent((g, word, swaps) in with_word()) {
        let (m, n) = (g.m(), g.n());
        let base = collect(&g, &word);
        let mut product = GroupElement::central(m, word.tail.clone());
        for &(i, s) in &word.letters {
            let mut w = vec![BigInt::zero(); m];
            w[i] = BigInt::from(s);
            product = g.multiply(&product, &GroupElement::new(w, vec![BigInt::zero(); n])).unwrap();
        }
        prop_assert_eq!(&base, &product);
        let mut moved = word.clone();
        for pos in swaps {
            moved = moved.swap_adjacent(&g, pos % (word.letters.len() - 1));
            prop_assert_eq!(&collect(&g, &moved), &base);
        }
    }
}

#[test]
fn ball_sizes_of_the_heisenberg_group() {
    let g = GroupPresentation::new(2, 1, vec![skew(2, &[1])]).unwrap();
    let layers = spheres(&g, 3, 100_000).unwrap();
    let sizes: Vec<usize> = layers.iter().map(Vec::len).collect();
    // hand count: 1 identity, 6 generators, then the new elements of radius 2
    assert_eq!(sizes[..2], [1, 6]);
    let b2 = ball(&g, 2, 100_000).unwrap();
    assert_eq!(b2.len(), sizes[..3].iter().sum::<usize>());
    // every element of radius ≤ 2 is a product of two generators or fewer
    let mut gens = g.generators();
    gens.push(g.identity());
    for x in &gens {
        for y in &gens {
            assert!(b2.contains(&g.multiply(x, y).unwrap()));
        }
    }
    let c = g.metric_constant();
    for r in 0..=3 {
        let rb = BigInt::from(r);
        for el in ball(&g, r, 100_000).unwrap() {
            assert!(el.w.iter().all(|x| x.magnitude() <= rb.magnitude()));
            assert!(el.v.iter().all(|x| x.magnitude() <= (&c * &rb * &rb).magnitude()));
        }
    }
    assert!(matches!(ball(&g, 6, 50), Err(Error::ResourceLimit(_))));
}

#[test]
fn validation() {
    assert!(matches!(validate(2, 1, &[IntMatrix::from_rows(&[[0, 1], [1, 0]])]), Err(Error::Validation(_))));
    assert!(matches!(validate(3, 2, &[skew(3, &[1, 0, 0]), skew(3, &[2, 0, 0])]), Err(Error::Validation(_))));
    assert!(matches!(validate(3, 1, &[skew(2, &[1])]), Err(Error::Dimension(_))));
    assert_eq!(validate(3, 2, &[skew(3, &[1, 0, 0]), skew(3, &[0, 1, 0])]).unwrap(), vec![Warning::PrintedDimensionBound { m: 3, n: 2 }]);
    assert!(validate(3, 3, &[skew(3, &[1, 0, 0]), skew(3, &[0, 1, 0]), skew(3, &[0, 0, 1])]).unwrap().is_empty());
}
