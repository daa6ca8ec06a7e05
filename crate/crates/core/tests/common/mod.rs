//! Shared samplers and closed-form matrices of the three worked surfaces.
#![allow(dead_code)]

use eigentwist::coordinates::EdgeParams;
use eigentwist::projective::{c, sqrt_upper, MoebiusMap, C64};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// A complex number with modulus in [1/3, 1/1.2] ∪ [1.2, 3].
pub fn rand_c(rng: &mut ChaCha8Rng) -> C64 {
    let r: f64 = rng.gen_range(1.2..3.0);
    let th = rng.gen_range(0.0..std::f64::consts::TAU);
    C64::from_polar(if rng.gen_bool(0.5) { r } else { 1.0 / r }, th)
}

pub fn params(eigen: &[(usize, C64)], twist: &[(usize, C64)]) -> EdgeParams {
    EdgeParams { eigen: eigen.iter().copied().collect(), twist: twist.iter().copied().collect() }
}

pub fn random_params(rng: &mut ChaCha8Rng, edges: &[usize], interior: &[usize]) -> EdgeParams {
    EdgeParams {
        eigen: edges.iter().map(|&k| (k, rand_c(rng))).collect(),
        twist: interior.iter().map(|&k| (k, rand_c(rng))).collect(),
    }
}

fn m(a: C64, b: C64, cc: C64, d: C64) -> MoebiusMap {
    MoebiusMap::new(a, b, cc, d)
}

/// Entrywise distance up to sign, relative to the size of `want`.
pub fn rel_dist(got: &MoebiusMap, want: &MoebiusMap) -> f64 {
    got.dist_up_to_sign(want) / want.max_abs().max(1.0)
}

/// γ₁…γ₄ for the four-holed sphere with base (∞, 1, 0).
pub fn four_holed_gammas(e: [C64; 5], t1: C64) -> [MoebiusMap; 4] {
    let [e1, e2, e3, e4, e5] = e;
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    let g1 = m(e1, e3 / e2 - e1, zero, one / e1);
    let g2 = m(-e1 / e3 + e2 + one / e2, e1 / e3 - one / e2, e2 - e1 / e3, e1 / e3);
    let g3 = m(one / e3, zero, one / e3 - e2 / e1, e3);
    let s = e1 - one / e1;
    let (chi4, chi5) = (e4 + one / e4, e5 + one / e5);
    let common = (one - e1 * e4 * e5) * (e1 * e5 - e4) * (e1 * e2 - e3)
        / ((e1 * e1 - 1.0) * (e1 * e3 - e2) * e4 * e5 * t1);
    let a11 = e1 * chi4 / s - chi5 / s - common;
    let a12 = e1 / ((e1 * e1 - 1.0).powi(2) * e2 * (e1 * e3 - e2) * e4 * e5 * t1)
        * ((e1 * e3 - e2) * (e1 * e4 - e5) * t1 + (e1 * e5 - e4) * (e1 * e2 - e3))
        * ((e1 * e3 - e2) * (e4 * e5 - e1) * t1 + (e1 * e2 - e3) * (one - e1 * e4 * e5));
    let a21 = e2 * (e1 * e5 - e4) * (e1 * e4 * e5 - 1.0) / (e1 * (e1 * e3 - e2) * e4 * e5 * t1);
    let a22 = -chi4 / (e1 * s) + chi5 / s + common;
    [g1, g2, g3, m(a11, a12, a21, a22)]
}

/// α₁, δ₁, α₂, β₁ for the one-holed torus with base (∞, 0, 1).
pub fn one_holed_generators(e1: C64, e2: C64, t1: C64) -> [MoebiusMap; 4] {
    let one = c(1.0, 0.0);
    let a1 = m(e1, one / e1 - one / (e1 * e2), c(0.0, 0.0), one / e1);
    let d1 = m(one / e2, c(0.0, 0.0), e1 * e1 - e2, e2);
    let a2 = m(e2 / e1, one / e1 - e2 / e1, e2 / e1 - e1, e1 + one / e1 - e2 / e1);
    let k = one / (sqrt_upper(-e2 * t1) * (e1 * e1 - 1.0));
    let b1 = m(
        (e2 - e1 * e1) * t1 + (e2 - 1.0),
        (t1 + 1.0) * (1.0 - e2),
        -e2 * (e1 * e1 - 1.0),
        e2 * (e1 * e1 - 1.0),
    )
    .scale(k);
    [a1, d1, a2, b1]
}

/// α₁, α₂, β₁, β₂ for the genus-2 surface with base (∞, 0, 1).
pub fn genus_two_generators(e: [C64; 3], t: [C64; 3]) -> [MoebiusMap; 4] {
    let [e1, e2, e3] = e;
    let [t1, t2, t3] = t;
    let one = c(1.0, 0.0);
    let a1 = m(one / e1, c(0.0, 0.0), -e1 + e3 / e2, e1);
    let a2 = m(e1 / e3, e2 - e1 / e3, -one / e2 + e1 / e3, e2 + one / e2 - e1 / e3);
    let b1 = m(
        one,
        -(e2 * e3 - e1) * (t3 + 1.0) / (e1 * (e3 * e3 - 1.0)),
        e1 * (t1 + 1.0) * (e1 * e2 - e3) / ((e1 * e1 - 1.0) * e2),
        ((e1 * e2 * e3 - 1.0) * (e1 * e3 - e2) * t1 * t3 - (e1 * e2 - e3) * (e2 * e3 - e1) * (t1 + t3 + 1.0))
            / ((e1 * e1 - 1.0) * e2 * (e3 * e3 - 1.0)),
    )
    .scale(one / sqrt_upper(t1 * t3));
    let k = (e2 * e2 - 1.0) * e3;
    let b11 = (e1 * e2 - e3) * t2 - e2 * (e2 * e3 - e1);
    let b21 = (e1 * e2 - e3) * (t2 + 1.0);
    let b22 = -(e3 * (e1 * e2 * e3 - 1.0) * (e2 * e3 - e1) * t2 * t3
        - e3 * (e1 * e2 - e3) * (e1 * e3 - e2) * t3
        + (e1 * e2 - e3) * (e2 * e3 - e1) * (1.0 + t2))
        / (e1 * (e3 * e3 - 1.0));
    // the determinant is k²t₂t₃
    let b12 = (b11 * b22 - k * k * t2 * t3) / b21;
    let b2 = m(b11, b12, b21, b22).scale(one / (k * sqrt_upper(t2 * t3)));
    [a1, a2, b1, b2]
}

/// Closed-form traces of β₁ and β₂ on the genus-2 surface.
pub fn genus_two_beta_traces(e: [C64; 3], t: [C64; 3]) -> (C64, C64) {
    let [e1, e2, e3] = e;
    let [t1, t2, t3] = t;
    let one = c(1.0, 0.0);
    let tb1 = -((e2 - one / (e1 * e3)) * (e2 - e1 * e3) * (t1 * t3 + 1.0) + (e2 - e3 / e1) * (e2 - e1 / e3) * (t1 + t3))
        / ((e1 - one / e1) * e2 * (e3 - one / e3) * sqrt_upper(t1 * t3));
    let tb2 = -((e1 - one / (e2 * e3)) * (e1 - e2 * e3) * (t2 * t3 + 1.0) + (e1 - e3 / e2) * (e1 - e2 / e3) * (t2 + t3))
        / (e1 * (e2 - one / e2) * (e3 - one / e3) * sqrt_upper(t2 * t3));
    (tb1, tb2)
}

use eigentwist::builder::SurfaceRepresentation;
use eigentwist::surface::{Letter, Word};

fn t2(m: &MoebiusMap) -> C64 {
    m.trace() * m.trace() / m.det()
}

fn close(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(b.norm()).max(1.0)
}

/// Reduced words of length at most `n` in the generators of `rep`.
pub fn reduced_words(rep: &SurfaceRepresentation, n: usize) -> Vec<Word> {
    let mut letters = vec![];
    for g in rep.presentation.generators() {
        letters.push(Letter::new(g));
        letters.push(Letter::inv(g));
    }
    let mut out = vec![];
    let mut frontier: Vec<Word> = vec![vec![]];
    for _ in 0..n {
        let mut next = vec![];
        for w in &frontier {
            for l in &letters {
                if w.last().is_some_and(|x| x.gen == l.gen && x.inverse != l.inverse) {
                    continue;
                }
                let mut x = w.clone();
                x.push(*l);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Old words, one per generator of `new`, such that `new` and `old`
/// composed with the substitution have equal squared traces on all
/// products of up to three generators (and pairs with an inverse). Such a
/// substitution identifies the two characters up to a change of marking.
pub fn find_marking(old: &SurfaceRepresentation, new: &SurfaceRepresentation, max_len: usize) -> Option<Vec<Word>> {
    let tol = 1e-7;
    let words = reduced_words(old, max_len);
    let images: Vec<MoebiusMap> = new.presentation.generators().iter().map(|g| new.image(*g)).collect();
    let cands: Vec<Vec<(usize, MoebiusMap)>> = images
        .iter()
        .map(|m| {
            words
                .iter()
                .enumerate()
                .filter_map(|(i, w)| {
                    let x = old.eval(w);
                    close(t2(m), t2(&x), tol).then_some((i, x))
                })
                .collect()
        })
        .collect();

    fn rec(
        i: usize,
        pick: &mut Vec<usize>,
        n: &[MoebiusMap],
        cands: &[Vec<(usize, MoebiusMap)>],
        tol: f64,
    ) -> bool {
        if i == n.len() {
            return true;
        }
        for c in 0..cands[i].len() {
            let x = cands[i][c].1;
            let ok = (0..i).all(|j| {
                let y = cands[j][pick[j]].1;
                close(t2(&(n[j] * n[i])), t2(&(y * x)), tol)
                    && close(t2(&(n[j] * n[i].adjugate())), t2(&(y * x.adjugate())), tol)
                    && (0..j).all(|k| {
                        let z = cands[k][pick[k]].1;
                        close(t2(&(n[k] * n[j] * n[i])), t2(&(z * y * x)), tol)
                            && close(t2(&(n[k] * n[i] * n[j])), t2(&(z * x * y)), tol)
                    })
            });
            if ok {
                pick.push(c);
                if rec(i + 1, pick, n, cands, tol) {
                    return true;
                }
                pick.pop();
            }
        }
        false
    }

    let mut pick = vec![];
    rec(0, &mut pick, &images, &cands, tol)
        .then(|| pick.iter().enumerate().map(|(i, &c)| words[cands[i][c].0].clone()).collect())
}
