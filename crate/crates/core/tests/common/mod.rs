#![allow(dead_code)]

use rand::Rng;
use tbraid::local_rep::RMatrix;
use tbraid::scalar::Rational;

/// Applies `moves` random braid-relation rewrites to `letters`: either
/// `i j -> j i` for `|i - j| ≥ 2` or `i i+1 i <-> i+1 i i+1`.
pub fn rewrite<R: Rng>(letters: &[u32], moves: usize, rng: &mut R) -> Vec<u32> {
    let mut w = letters.to_vec();
    for _ in 0..moves {
        let mut spots = Vec::new();
        for p in 0..w.len().saturating_sub(1) {
            if w[p].abs_diff(w[p + 1]) >= 2 {
                spots.push((p, 2));
            }
            if p + 2 < w.len() && w[p] == w[p + 2] && w[p].abs_diff(w[p + 1]) == 1 {
                spots.push((p, 3));
            }
        }
        if spots.is_empty() {
            break;
        }
        let (p, len) = spots[rng.gen_range(0..spots.len())];
        if len == 2 {
            w.swap(p, p + 1);
        } else {
            let (a, b) = (w[p], w[p + 1]);
            w[p..p + 3].copy_from_slice(&[b, a, b]);
        }
    }
    w
}

fn r(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

/// The two-dimensional Hecke-type braiding at `Q = 2`, used where a
/// non-symmetric braiding is needed:
/// `[[Q,0,0,0],[0,Q-1/Q,1,0],[0,1,0,0],[0,0,0,Q]]`.
pub fn hecke() -> RMatrix {
    let z = r(0, 1);
    let one = r(1, 1);
    let q = r(2, 1);
    let d = r(3, 2);
    let e = vec![
        q.clone(), z.clone(), z.clone(), z.clone(),
        z.clone(), d, one.clone(), z.clone(),
        z.clone(), one, z.clone(), z.clone(),
        z.clone(), z.clone(), z, q,
    ];
    RMatrix::new(2, e).unwrap()
}

/// The two shipped N = 2 fixtures.
pub fn fixtures_n2() -> Vec<(&'static str, RMatrix)> {
    vec![("identity", RMatrix::identity(2)), ("flip", RMatrix::flip(2))]
}
