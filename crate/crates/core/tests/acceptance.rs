//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tbraid::braid::PositiveWord;
use tbraid::combinators::{beta, omega};
use tbraid::local_rep::{LocalRep, RMatrix};
use tbraid::matrix::DenseMatrix;
use tbraid::ring::RingElement;
use tbraid::scalar::{Rational, Scalar};
use tbraid::tensor::{assemble, check_functoriality, check_ybe_graded, Intertwiner, TensorError};
use tbraid::verify::*;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn all_hold(reports: impl IntoIterator<Item = VerificationReport>) -> (usize, Vec<VerificationReport>) {
    let mut n = 0;
    let mut bad = Vec::new();
    for r in reports {
        n += 1;
        if !r.holds {
            bad.push(r);
        }
    }
    (n, bad)
}

fn exact_outcome(groups: Vec<(&str, Vec<VerificationReport>)>) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, reports) in groups {
        let (n, bad) = all_hold(reports);
        pass &= bad.is_empty();
        parts.push(format!("{name} {}/{n}", n - bad.len()));
        if let Some(f) = bad.first() {
            parts.push(format!("first failure {:?}", f.params));
        }
    }
    Outcome { pass, detail: parts.join(", ") }
}

fn run_tuples(id: Identity, tuples: Vec<Vec<i64>>) -> Vec<VerificationReport> {
    use rayon::prelude::*;
    tuples.par_iter().map(|p| id.run(p, 0)).collect()
}

fn c1() -> Outcome {
    let r = compositions(2, 8).into_iter().map(|t| verify_beta_forms(t[0] as u32, t[1] as u32)).collect();
    exact_outcome(vec![("beta forms k+l<=8", r)])
}

fn c2() -> Outcome {
    let br45 = compositions(4, 8)
        .into_iter()
        .map(|t| verify_beta_identities(t[0] as u32, t[1] as u32, t[2] as u32, t[3] as u32))
        .collect();
    let pairs = compositions(2, 6);
    let br3 = (0..100u64)
        .map(|s| {
            let t = &pairs[s as usize % pairs.len()];
            verify_exchange_commutation(t[0] as u32, t[1] as u32, 1000 + s)
        })
        .collect();
    exact_outcome(vec![("br4/br5 sum<=8", br45), ("exchange random pairs", br3)])
}

fn c3() -> Outcome {
    let mut br6 = Vec::new();
    for a in 1..=6 {
        for s in 0..100 {
            br6.push(verify_omega_conjugation(a, s));
        }
    }
    let br7 = compositions(2, 8).into_iter().map(|t| verify_omega_recursion(t[0] as u32, t[1] as u32)).collect();
    exact_outcome(vec![("omega conjugation a<=6 x100", br6), ("omega recursion a+b<=8", br7)])
}

fn c4() -> Outcome {
    let t = compositions(2, 8);
    let cons = t.iter().map(|t| verify_shuffle_consistency(t[0], t[1])).collect();
    let supp = t.iter().map(|t| verify_shuffle_support(t[0] as u32, t[1] as u32)).collect();
    exact_outcome(vec![("recursions agree m+n<=8", cons), ("support C(m+n,n), unit coefficients", supp)])
}

fn c5() -> Outcome {
    exact_outcome(vec![("shaiden k+m+n<=7", run_tuples(Identity::Shaiden, Identity::Shaiden.tuples(7, 1)))])
}

fn c6() -> Outcome {
    exact_outcome(vec![
        ("recpo k+n<=5", run_tuples(Identity::Recpo, Identity::Recpo.tuples(5, 1))),
        ("robrbin k+n<=5", run_tuples(Identity::Robrbin, Identity::Robrbin.tuples(5, 1))),
        ("cobith k+n<=6", run_tuples(Identity::Cobith, Identity::Cobith.tuples(6, 1))),
    ])
}

fn c7() -> Outcome {
    let ids = [
        Identity::Vandermonde1,
        Identity::Vandermonde1Bis,
        Identity::Vandermonde2,
        Identity::XRecursion,
        Identity::Vandermonde1BisReduction,
    ];
    exact_outcome(ids.iter().map(|&id| (id.name(), run_tuples(id, id.tuples(6, 1)))).collect())
}

fn c8() -> Outcome {
    exact_outcome(vec![
        ("sytso a+b+c<=5", run_tuples(Identity::Sytso, Identity::Sytso.tuples(5, 1))),
        ("sytso2 b+c<=5", run_tuples(Identity::Sytso2, Identity::Sytso2.tuples(5, 1))),
    ])
}

fn c9() -> Outcome {
    let mut pass = true;
    let mut worst = 0.0f64;
    let mut exact_ok = true;
    for (_, r) in common::fixtures_n2() {
        for (p, q) in [(1, 2), (1, 1), (2, 1)] {
            let qf = p as f64 / q as f64;
            let t = assemble(&r, qf, 4).expect("assemble");
            let te = assemble(&r, Rational::new(p.into(), q.into()), 4).expect("assemble");
            for g in 0..=4 {
                let rep = check_ybe_graded(&t, g, 1e-9).expect("grade in range");
                worst = worst.max(rep.max_residual);
                pass &= rep.holds;
                let rep = check_ybe_graded(&te, g, 1e-9).expect("grade in range");
                exact_ok &= rep.holds && rep.splits.iter().all(|s| s.exact_zero);
            }
        }
    }
    Outcome {
        pass: pass && exact_ok && worst <= 1e-9,
        detail: format!("max residual {worst:e} (tol 1e-9), exact residual identically zero: {exact_ok}"),
    }
}

fn c10() -> Outcome {
    let mut pass = true;
    for (_, r) in common::fixtures_n2().into_iter().chain([("hecke", common::hecke())]) {
        for q in [Rational::new(1.into(), 2.into()), Rational::from_i64(1), Rational::from_i64(2)] {
            let t = assemble(&r, q.clone(), 2).expect("assemble");
            pass &= t.block(0, 0, 0).map(|m| m.data() == [q.clone()]).unwrap_or(false);
            pass &= t.block(1, 1, 1) == Some(&r.to_matrix::<Rational>());
        }
    }
    Outcome { pass, detail: "block (0,0,0) = q and block (1,1,1) = R, exact, q in {1/2, 1, 2}".into() }
}

fn c11() -> Outcome {
    let mut pass = true;
    let mut worst = 0.0f64;
    let mut targets: Vec<RMatrix> = common::fixtures_n2().into_iter().map(|(_, r)| r).collect();
    targets.push(common::hecke());
    for r in &targets {
        let t = assemble(r, 2.0f64, 3).expect("assemble");
        for f in [Intertwiner::scalar(2, 2.5), Intertwiner::diagonal(vec![3.0, -0.5])] {
            match check_functoriality(&t, &t, &f, 3, 1e-9) {
                Ok(rep) => {
                    worst = worst.max(rep.max_residual);
                    pass &= rep.holds;
                }
                Err(_) => pass = false,
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let random = DenseMatrix::from_vec(2, 2, (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap();
    let h = assemble(&common::hecke(), 2.0f64, 3).expect("assemble");
    let id = assemble(&RMatrix::identity(2), 2.0f64, 3).expect("assemble");
    let fl = assemble(&RMatrix::flip(2), 2.0f64, 3).expect("assemble");
    let f = Intertwiner::new(random);
    let neg_hecke = matches!(check_functoriality(&h, &h, &f, 3, 1e-9), Err(TensorError::Precheck { .. }));
    let neg_pair = matches!(check_functoriality(&id, &fl, &f, 3, 1e-9), Err(TensorError::Precheck { .. }));
    Outcome {
        pass: pass && neg_hecke && neg_pair,
        detail: format!(
            "scalar and diagonal maps, g<=3: max residual {worst:e}; random map rejected by precheck: {}",
            neg_hecke && neg_pair
        ),
    }
}

/// Pairs of products that are equal in the ring, evaluated factor by factor
/// in the representation so the matrices are computed independently.
fn c12() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut worst = 0.0f64;
    let mut symbolic_ok = true;
    let mut count = 0;
    for (_, r) in common::fixtures_n2() {
        let rep = LocalRep::new(&r, 2.0f64).expect("rep");
        let mat = |e: &RingElement, n: u32| rep.rep_elem_matrix(e, n).expect("only q");
        for s in 0..200u32 {
            let (lhs, rhs) = match s % 3 {
                0 => {
                    let (k, l) = (1 + s % 3, 1 + (s / 3) % 3);
                    let phi = random_element(l, &mut rng);
                    let psi = random_element(k, &mut rng);
                    symbolic_ok &= verify_exchange_with(k, l, &phi, &psi).holds;
                    let b = beta(k, l);
                    let n = k + l;
                    (
                        mat(&b, n).mul(&mat(&phi, n)).mul(&mat(&psi.shift(l), n)),
                        mat(&psi, n).mul(&mat(&phi.shift(k), n)).mul(&mat(&b, n)),
                    )
                }
                1 => {
                    let a = 2 + s % 3;
                    let phi = random_element(a, &mut rng);
                    symbolic_ok &= verify_omega_conjugation_with(a, &phi).unwrap().holds;
                    let w = omega(a);
                    (
                        mat(&w, a).mul(&mat(&phi, a)),
                        mat(&phi.flip(a).unwrap(), a).mul(&mat(&w, a)),
                    )
                }
                _ => {
                    let letters: Vec<u32> = (0..8).map(|_| rng.gen_range(1..4)).collect();
                    let moved = common::rewrite(&letters, 12, &mut rng);
                    let a = PositiveWord::new(letters.clone()).unwrap();
                    let b = PositiveWord::new(moved.clone()).unwrap();
                    symbolic_ok &= a.normal_form() == b.normal_form();
                    (rep.word_matrix(&letters, 4).unwrap(), rep.word_matrix(&moved, 4).unwrap())
                }
            };
            let scale = lhs.max_abs().max(rhs.max_abs()).max(1.0);
            worst = worst.max(lhs.max_abs_diff(&rhs) / scale);
            count += 1;
        }
    }
    Outcome {
        pass: symbolic_ok && worst <= 1e-9,
        detail: format!("{count} pairs at q=2: max relative residual {worst:e} (tol 1e-9)"),
    }
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("both beta forms", c1),
        ("beta block identities and exchange law", c2),
        ("omega conjugation and recursion", c3),
        ("shuffle recursions and support", c4),
        ("shuffle product identity", c5),
        ("Pochhammer splitting, expansion and binomial form", c6),
        ("Vandermonde identities and X recursion", c7),
        ("Yang-Baxter system for the blocks", c8),
        ("numeric graded YBE", c9),
        ("anchored block values", c10),
        ("functoriality", c11),
        ("symbolic/numeric soundness", c12),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = f();
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} [{tag}] {name}: {} ({:.2} s)",
            i + 1,
            out.detail,
            start.elapsed().as_secs_f64()
        );
        failed += usize::from(!out.pass);
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
