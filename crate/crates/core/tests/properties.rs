use mvw_core::families::{random_module, rational_module, standard_module, symplectic_gram, Family};
use mvw_core::grp::{compose_raw, is_breve, random_unitary, BreveElement};
use mvw_core::hermod::{find_iso, is_isometry, orthogonal_decompose, reassembled_gram, tau_twist, IsoResult};
use mvw_core::invalg::{fmat, Sign, SimpleInvolutiveAlgebra, DEFAULT_SEARCH_BUDGET};
use mvw_core::mvw::{canonical_witness, mvw_element, verify_breve_conjugation, Variant};
use mvw_core::numfield::{generic, square_class, QMatrix, Rational, Q};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rational() -> impl Strategy<Value = Rational> {
    (-500i64..500, 1i64..60).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
    proptest::collection::vec(rational(), rows * cols).prop_map(move |v| QMatrix::from_fn(rows, cols, |i, j| v[i * cols + j].clone()))
}

fn algebra(i: usize) -> SimpleInvolutiveAlgebra {
    match i % 3 {
        0 => SimpleInvolutiveAlgebra::rationals(),
        1 => SimpleInvolutiveAlgebra::gaussian(),
        _ => SimpleInvolutiveAlgebra::split_rationals(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn integer_products_agree_with_field_products((a, b) in (1usize..5, 1usize..5, 1usize..5).prop_flat_map(|(n, m, p)| (matrix(n, m), matrix(m, p)))) {
        prop_assert_eq!(a.mul(&b), generic::mul(&Q, &a, &b).unwrap());
        let v = b.col(0);
        prop_assert_eq!(a.apply(&v), generic::apply(&Q, &a, &v));
    }

    #[test]
    fn square_class_ignores_squares(q in rational(), r in rational(), big in 1u64..u64::MAX) {
        prop_assume!(!q.numer().sign().eq(&num_bigint::Sign::NoSign) && !r.numer().sign().eq(&num_bigint::Sign::NoSign));
        let t = &r * Rational::from_integer(BigInt::from(big));
        prop_assert_eq!(square_class(&(&q * &t * &t)), square_class(&q));
    }

    #[test]
    fn decomposition_reassembles(seed in any::<u64>(), kind in 0usize..3, rank in 1usize..4, minus in any::<bool>()) {
        let f = algebra(kind);
        let eps = if minus { Sign::Minus } else { Sign::Plus };
        let rank = if kind == 0 && minus { 2 * rank } else { rank };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_module(&f, eps, rank, &mut rng).unwrap();
        let s = orthogonal_decompose(&e).unwrap();
        prop_assert_eq!(s.iter().map(|x| x.basis.len()).sum::<usize>(), rank);
        let r = &reassembled_gram(&e, &s)[0];
        let vs: Vec<_> = s.iter().flat_map(|x| x.basis.iter().map(|b| b.parts[0].clone())).collect();
        let p = mvw_core::hermod::columns(&f, rank, &vs);
        let pi = fmat::inverse(&f, &p).unwrap();
        prop_assert_eq!(&fmat::mul(&f, &fmat::mul(&f, &pi.transpose(), r), &fmat::tau(&f, &pi)), e.gram(0));
    }

    #[test]
    fn modules_match_their_twist(seed in any::<u64>(), kind in 0usize..3, rank in 1usize..4) {
        let f = algebra(kind);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_module(&f, Sign::Plus, rank, &mut rng).unwrap();
        let t = tau_twist(&e);
        match find_iso(&e, &t, DEFAULT_SEARCH_BUDGET).unwrap() {
            IsoResult::Iso(m) => prop_assert!(is_isometry(&e, &t, &m)),
            other => prop_assert!(false, "no isometry: {:?}", other),
        }
    }

    #[test]
    fn composition_multiplies_signs(seed in any::<u64>(), a_minus in any::<bool>(), b_minus in any::<bool>()) {
        let e = rational_module(Sign::Minus, &symplectic_gram(2)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = canonical_witness(&e).unwrap();
        let pick = |minus: bool, rng: &mut ChaCha8Rng| -> BreveElement {
            let x = random_unitary(&e, rng).unwrap();
            if minus { compose_raw(&e, &x, &w) } else { x }
        };
        let a = pick(a_minus, &mut rng);
        let b = pick(b_minus, &mut rng);
        let c = compose_raw(&e, &a, &b);
        prop_assert_eq!(c.delta, a.delta.times(b.delta));
        prop_assert!(is_breve(&e, &c.blocks, c.delta).unwrap());
    }

    #[test]
    fn unitary_witnesses_verify(seed in any::<u64>(), which in 0usize..3) {
        let e = match which {
            0 => rational_module(Sign::Minus, &symplectic_gram(2)).unwrap(),
            1 => standard_module(Family::O, 3).unwrap(),
            _ => standard_module(Family::U, 2).unwrap(),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_unitary(&e, &mut rng).unwrap();
        let g = mvw_element(&e, &x).unwrap();
        prop_assert!(verify_breve_conjugation(&e, &x.blocks, &g, &Variant::Group).all_pass());
    }
}
