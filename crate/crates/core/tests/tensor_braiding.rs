mod common;

use tbraid::combinators::block_a;
use tbraid::local_rep::{LocalRep, RMatrix};
use tbraid::matrix::DenseMatrix;
use tbraid::scalar::{Rational, Scalar};
use tbraid::tensor::*;
use tbraid::verify::{sytso_lhs, sytso_rhs, SumRange};

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

#[test]
fn hecke_matrix_is_a_braiding() {
    let h = common::hecke();
    assert!(h.check(1e-12).holds);
    assert!(h.check_exact());
}

#[test]
fn ybe_for_a_non_symmetric_braiding() {
    let h = common::hecke();
    for q in [rat(1, 2), rat(3, 1)] {
        let t = assemble(&h, q, 4).unwrap();
        for g in 0..=4 {
            let rep = check_ybe_graded(&t, g, 0.0).unwrap();
            assert!(rep.holds, "grade {g}");
        }
    }
    let t = assemble(&h, 0.7f64, 4).unwrap();
    for g in 0..=4 {
        let rep = check_ybe_graded(&t, g, 1e-9).unwrap();
        assert!(rep.holds, "grade {g}: {:e}", rep.max_residual);
    }
}

#[test]
fn ybe_on_three_dimensional_fixtures() {
    for r in [RMatrix::identity(3), RMatrix::flip(3)] {
        let t = assemble(&r, 2.0f64, 3).unwrap();
        for g in 0..=3 {
            assert!(check_ybe_graded(&t, g, 1e-9).unwrap().holds);
        }
    }
}

#[test]
fn top_block_is_the_rescaled_diagonal_braiding() {
    for r in [RMatrix::flip(2), common::hecke()] {
        let q = rat(3, 2);
        let t = assemble(&r, q.clone(), 4).unwrap();
        for b in 0..=4u32 {
            for c in 0..=4 - b {
                let d = diagonal_block(b, c, &r, q.clone()).unwrap();
                let scale = q.powi(1 - (b + c) as i32).unwrap();
                assert_eq!(t.block(b, c, c).unwrap(), &d.scale(&scale), "({b},{c})");
            }
        }
    }
}

#[test]
fn symbolic_sides_match_matrix_pathways() {
    let r = common::hecke();
    let q = rat(2, 1);
    let t = assemble(&r, q.clone(), 4).unwrap();
    let rep = LocalRep::new(&r, q).unwrap();
    for g in 0..=4u32 {
        for a in 0..=g {
            for b in 0..=g - a {
                let c = g - a - b;
                for e in 0..=g {
                    for f in 0..=g - e {
                        let (ai, bi, ci, ei, fi) = (a as i64, b as i64, c as i64, e as i64, f as i64);
                        let sl = rep.rep_elem_matrix(&sytso_lhs(ai, bi, ci, ei, fi, SumRange::Bounded), g).unwrap();
                        let sr = rep.rep_elem_matrix(&sytso_rhs(ai, bi, ci, ei, fi, SumRange::Bounded), g).unwrap();
                        assert_eq!(sl, ybe_lhs(&t, a, b, c, e, f), "{:?}", (a, b, c, e, f));
                        assert_eq!(sr, ybe_rhs(&t, a, b, c, e, f), "{:?}", (a, b, c, e, f));
                    }
                }
            }
        }
    }
}

#[test]
fn blocks_are_images_of_ring_elements() {
    let r = common::hecke();
    let t = assemble(&r, 2.0f64, 3).unwrap();
    let rep = LocalRep::new(&r, 2.0f64).unwrap();
    assert_eq!(t.block_count(), block_keys(3).len());
    for (&(b, c, k), m) in t.blocks() {
        let e = block_a(b as i64, c as i64, k as i64);
        assert_eq!(m, &rep.rep_elem_matrix(&e, b + c).unwrap());
        assert!(k <= c);
    }
}

#[test]
fn exchange_conserves_grade() {
    let t = assemble(&common::hecke(), 2.0f64, 4).unwrap();
    for b in 0..=2u32 {
        for c in 0..=2u32 {
            let x: Vec<f64> = (0..2usize.pow(b)).map(|i| i as f64 + 1.0).collect();
            let y: Vec<f64> = (0..2usize.pow(c)).map(|i| 0.5 - i as f64).collect();
            let out = apply_exchange(&t, &x, b, &y, c).unwrap();
            assert_eq!(out.len() as u32, c + 1);
            for term in out {
                assert!(term.y_grade <= c);
                assert_eq!(term.y_grade + term.x_grade, b + c);
                assert_eq!(term.vector.len(), 2usize.pow(b + c));
            }
        }
    }
}

#[test]
fn functoriality_for_diagonal_maps() {
    let h = common::hecke();
    let t = assemble(&h, 2.0f64, 3).unwrap();
    let f = Intertwiner::diagonal(vec![3.0, -0.5]);
    assert!(check_functoriality(&t, &t, &f, 3, 1e-9).unwrap().holds);
    let lam = Intertwiner::scalar(2, 1.5);
    assert!(check_functoriality(&t, &t, &lam, 3, 1e-9).unwrap().holds);
    let swap = Intertwiner::new(DenseMatrix::from_vec(2, 2, vec![0.0, 1.0, 1.0, 0.0]).unwrap());
    assert!(matches!(check_functoriality(&t, &t, &swap, 3, 1e-9), Err(TensorError::Precheck { .. })));
}

#[test]
fn functoriality_between_dimensions() {
    // Inclusion of a line into a plane intertwines the flips.
    let t1 = assemble(&RMatrix::flip(1), 2.0f64, 3).unwrap();
    let t2 = assemble(&RMatrix::flip(2), 2.0f64, 3).unwrap();
    let f = Intertwiner::new(DenseMatrix::from_vec(2, 1, vec![1.0, 2.0]).unwrap());
    assert!(check_functoriality(&t1, &t2, &f, 3, 1e-9).unwrap().holds);
    assert!(check_functoriality(&t2, &t1, &f, 3, 1e-9).is_err());
}

#[test]
fn exported_operators_round_trip() {
    let t = assemble(&common::hecke(), rat(-5, 7), 3).unwrap();
    let text = t.to_json();
    let back = GradedOperator::<Rational>::from_json(&text).unwrap();
    assert_eq!(back, t);
    assert_eq!(back.to_json(), text);
    let tf = assemble(&common::hecke(), std::f64::consts::PI, 3).unwrap();
    let back = GradedOperator::<f64>::from_json(&tf.to_json()).unwrap();
    for ((k1, m1), (k2, m2)) in tf.blocks().zip(back.blocks()) {
        assert_eq!(k1, k2);
        assert!(m1.data().iter().zip(m2.data()).all(|(a, b)| a.to_bits() == b.to_bits()));
    }
    assert!(GradedOperator::<f64>::from_json("{\"dim\":2}").is_err());
}
