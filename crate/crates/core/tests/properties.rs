mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tbraid::coeff::{Assignment, LaurentPoly, Monomial, Param};
use tbraid::braid::PositiveWord;
use tbraid::local_rep::{LocalRep, RMatrix};
use tbraid::matrix::DenseMatrix;
use tbraid::ring::RingElement;
use tbraid::scalar::{Rational, Scalar};
use tbraid::verify::random_element;

fn word_strategy(max_gen: u32, max_len: usize) -> impl Strategy<Value = PositiveWord> {
    prop::collection::vec(1..=max_gen, 0..=max_len).prop_map(|l| PositiveWord::new(l).unwrap())
}

fn poly_strategy() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i64..=3, -2i32..=2, 0u32..=1, 0u32..=1), 0..4).prop_map(|terms| {
        terms.into_iter().fold(LaurentPoly::zero(), |acc, (c, q, x, y)| {
            let m = Monomial { q, x, y, z: 0 };
            acc.plus(&LaurentPoly::monomial(Rational::from_i64(c), m))
        })
    })
}

fn element_strategy(strands: u32) -> impl Strategy<Value = RingElement> {
    any::<u64>().prop_map(move |seed| random_element(strands, &mut ChaCha8Rng::seed_from_u64(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn braid_moves_preserve_normal_form(w in word_strategy(4, 12), seed in any::<u64>(), moves in 0usize..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = PositiveWord::new(common::rewrite(w.letters(), moves, &mut rng)).unwrap();
        prop_assert_eq!(w.normal_form(), v.normal_form());
        prop_assert!(w.normal_form().is_left_weighted());
    }

    #[test]
    fn normal_form_word_round_trips(w in word_strategy(5, 12)) {
        let nf = w.normal_form();
        prop_assert_eq!(nf.word().normal_form(), nf.clone());
        prop_assert_eq!(nf.length(), w.len());
    }

    #[test]
    fn composition_is_well_defined(a in word_strategy(4, 8), b in word_strategy(4, 8), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a2 = PositiveWord::new(common::rewrite(a.letters(), 10, &mut rng)).unwrap();
        let b2 = PositiveWord::new(common::rewrite(b.letters(), 10, &mut rng)).unwrap();
        prop_assert_eq!(a.compose(&b).normal_form(), a2.compose(&b2).normal_form());
        prop_assert_eq!(a.normal_form().mul(&b.normal_form()), a.compose(&b).normal_form());
    }

    #[test]
    fn shift_commutes_with_everything(a in word_strategy(4, 8), b in word_strategy(4, 8), ell in 0u32..4) {
        prop_assert_eq!(a.shift(ell).normal_form(), a.normal_form().shift(ell));
        prop_assert_eq!(
            a.compose(&b).shift(ell).normal_form(),
            a.normal_form().shift(ell).mul(&b.normal_form().shift(ell))
        );
    }

    #[test]
    fn ring_axioms(x in element_strategy(4), y in element_strategy(4), z in element_strategy(4)) {
        prop_assert_eq!((&x * &y) * z.clone(), &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&x * &RingElement::one(), x.clone());
    }

    #[test]
    fn shift_is_a_ring_endomorphism(x in element_strategy(4), y in element_strategy(4), ell in 0u32..3) {
        prop_assert_eq!((&x * &y).shift(ell), &x.shift(ell) * &y.shift(ell));
        prop_assert_eq!((&x + &y).shift(ell), &x.shift(ell) + &y.shift(ell));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly_strategy(), b in poly_strategy(), q in 1i64..5, x in -3i64..4, y in -3i64..4) {
        let asg = Assignment::new()
            .with(Param::Q, Rational::from_i64(q))
            .with(Param::X, Rational::from_i64(x))
            .with(Param::Y, Rational::from_i64(y));
        let ev = |p: &LaurentPoly| p.eval(&asg).unwrap();
        prop_assert_eq!(ev(&a.times(&b)), ev(&a).times(&ev(&b)));
        prop_assert_eq!(ev(&a.plus(&b)), ev(&a).plus(&ev(&b)));
    }

    #[test]
    fn representation_is_multiplicative(x in element_strategy(3), y in element_strategy(3), q in 1i64..4) {
        for r in [RMatrix::flip(2), common::hecke()] {
            let rep = LocalRep::new(&r, Rational::from_i64(q)).unwrap();
            let lhs = rep.rep_elem_matrix(&(&x * &y), 3).unwrap();
            let rhs = rep.rep_elem_matrix(&x, 3).unwrap().mul(&rep.rep_elem_matrix(&y, 3).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn shift_acts_as_left_padding(x in element_strategy(3), ell in 0u32..2) {
        let rep = LocalRep::new(&common::hecke(), Rational::from_i64(2)).unwrap();
        let shifted = rep.rep_elem_matrix(&x.shift(ell), 3 + ell).unwrap();
        let padded = DenseMatrix::identity(2usize.pow(ell)).kron(&rep.rep_elem_matrix(&x, 3).unwrap());
        prop_assert_eq!(shifted, padded);
    }
}
