//! Acceptance checks. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any fails.

mod common;

use common::*;
use eigentwist::builder::{
    build, canonical_words, matching_branches, recover_coordinates, slot_images, squared_trace_spectrum,
    verify_relations, LiftMode, SurfaceRepresentation,
};
use eigentwist::coordinates::{
    four_holed_traces, local_eigen, one_holed_traces, twist_from_traces_four_holed, twist_from_traces_one_holed,
    EdgeParams,
};
use eigentwist::fixtures;
use eigentwist::fuchsian::{
    from_fenchel_nielsen, okai_length, okai_length_one_holed, pants_discreteness_certificate, to_fenchel_nielsen,
};
use eigentwist::moves::*;
use eigentwist::projective::*;
use eigentwist::sampling::{sample_params, SampleMode};
use eigentwist::shearbend::{one_holed_to_shear, one_holed_triangulation, pants_shear_params, shear_traces_squared};
use eigentwist::surface::Generator::{Alpha, Beta, Delta};
use eigentwist::surface::{parse_word, Letter, PantsSurface, Slot, Word};
use eigentwist::symmetry::{act_epsilon, epsilon_basis, flip_eigenvalue};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type Outcome = (bool, String);

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

fn t2(m: &MoebiusMap) -> C64 {
    m.trace() * m.trace() / m.det()
}

fn real(x: f64) -> C64 {
    c(x, 0.0)
}

fn surfaces() -> Vec<(&'static str, PantsSurface, [ProjectivePoint; 3])> {
    ["four-holed", "one-holed", "genus2"]
        .into_iter()
        .map(|n| {
            let (s, b) = fixtures::by_name(n).unwrap();
            (n, s, b)
        })
        .collect()
}

fn rep_on(s: &PantsSurface, p: &EdgeParams, base: &[ProjectivePoint; 3]) -> SurfaceRepresentation {
    build(s, &s.tree_or_default().unwrap(), p, base, LiftMode::Sl).unwrap()
}

fn rep(s: &PantsSurface, p: &EdgeParams) -> SurfaceRepresentation {
    rep_on(s, p, &fixtures::default_base())
}

fn sample(s: &PantsSurface, r: &mut ChaCha8Rng) -> EdgeParams {
    sample_params(s, r, SampleMode::General).unwrap()
}

fn relation_residuals() -> Outcome {
    let mut worst = 0.0f64;
    let mut r = rng(101);
    for (_, s, base) in surfaces() {
        for _ in 0..200 {
            let p = sample(&s, &mut r);
            for res in verify_relations(&rep_on(&s, &p, &base)) {
                worst = worst.max(res.residual);
            }
        }
    }
    (worst < 1e-9, format!("max residual {worst:.2e} over 3 x 200 points"))
}

fn closed_form_matrices() -> Outcome {
    let mut worst = 0.0f64;
    let mut r = rng(102);
    for _ in 0..50 {
        let s = fixtures::four_holed();
        let e: [_; 5] = std::array::from_fn(|_| rand_c(&mut r));
        let t1 = rand_c(&mut r);
        let p = params(&[(1, e[0]), (2, e[1]), (3, e[2]), (4, e[3]), (5, e[4])], &[(1, t1)]);
        let got = rep_on(&s, &p, &fixtures::four_holed_base());
        let want = four_holed_gammas(e, t1);
        let g1 = slot_images(&got)[&Slot { vertex: 0, pos: 0 }];
        for (m, w) in [g1, got.image(Delta(1)), got.image(Delta(2)), got.image(Delta(3))].iter().zip(&want) {
            worst = worst.max(rel_dist(m, w));
        }

        let s = fixtures::one_holed();
        let (e1, e2, t1) = (rand_c(&mut r), rand_c(&mut r), rand_c(&mut r));
        let got = rep_on(&s, &params(&[(1, e1), (2, e2)], &[(1, t1)]), &fixtures::one_holed_base());
        let want = one_holed_generators(e1, e2, t1);
        for (g, w) in [Alpha(1), Delta(1), Alpha(2), Beta(1)].into_iter().zip(&want) {
            worst = worst.max(rel_dist(&got.image(g), w));
        }

        let s = fixtures::genus_two();
        let e: [_; 3] = std::array::from_fn(|_| rand_c(&mut r));
        let t: [_; 3] = std::array::from_fn(|_| rand_c(&mut r));
        let p = params(&[(1, e[0]), (2, e[1]), (3, e[2])], &[(1, t[0]), (2, t[1]), (3, t[2])]);
        let got = rep_on(&s, &p, &fixtures::genus_two_base());
        let want = genus_two_generators(e, t);
        for (g, w) in [Alpha(1), Alpha(2), Beta(1), Beta(2)].into_iter().zip(&want) {
            worst = worst.max(rel_dist(&got.image(g), w));
        }
    }
    (worst < 1e-10, format!("max entrywise distance {worst:.2e} at 50 points per surface"))
}

/// `A = ρ(α₁)`, `B = ρ(β₁)` with a parabolic boundary, `e₂ = −1`.
fn markov_identity() -> Outcome {
    let mut worst = 0.0f64;
    let mut r = rng(103);
    let e2 = real(-1.0);
    for _ in 0..100 {
        let (e1, t1) = (rand_c(&mut r), rand_c(&mut r));
        let [a, _, _, b] = one_holed_generators(e1, e2, t1);
        let (x, y, z) = (a.trace(), b.trace(), (a * b).trace());
        let markov = x * x + y * y + z * z - x * y * z;
        // the same identity from the trace formulas
        let (tb, tab, _) = one_holed_traces(e1, e2, t1).unwrap();
        let xa = e1 + e1.inv();
        let closed = xa * xa + tb * tb + tab * tab - xa * tb * tab;
        let scale = x.norm().max(1.0) * y.norm().max(1.0) * z.norm().max(1.0);
        worst = worst.max(markov.norm() / scale).max(closed.norm() / scale);
    }
    (worst < 1e-8, format!("max |tr²A + tr²B + tr²AB - trA trB trAB| {worst:.2e} (scaled) at 100 points"))
}

fn coordinate_round_trip() -> Outcome {
    let mut worst_rec = 0.0f64;
    let mut worst_tw = 0.0f64;
    let mut r = rng(104);
    for (_, s, base) in surfaces() {
        let tree = s.tree_or_default().unwrap();
        for _ in 0..100 {
            let p = sample(&s, &mut r);
            let built = build(&s, &tree, &p, &base, LiftMode::Sl).unwrap();
            let back = recover_coordinates(&built, &s, &tree, &matching_branches(&p)).unwrap();
            worst_rec = worst_rec.max(back.max_rel_diff(&p));
        }
    }
    let four = fixtures::four_holed();
    for _ in 0..100 {
        let p = sample(&four, &mut r);
        let e = local_eigen(&four, &p.eigen, 1);
        let (_, tr24, tr35) = four_holed_traces(e, p.t(1)).unwrap();
        worst_tw = worst_tw.max(rel(twist_from_traces_four_holed(e, tr24, tr35).unwrap(), p.t(1)));

        let (e1, e2, t1) = (rand_c(&mut r), rand_c(&mut r), rand_c(&mut r));
        let (tb, tab, _) = one_holed_traces(e1, e2, t1).unwrap();
        worst_tw = worst_tw.max(rel(twist_from_traces_one_holed(e1, e2, tb, tab).unwrap(), t1));
    }
    (
        worst_rec < 1e-8 && worst_tw < 1e-9,
        format!("recover after build {worst_rec:.2e}, twist from traces {worst_tw:.2e}"),
    )
}

fn flip_twist_formulas(r: &mut ChaCha8Rng) -> f64 {
    let mut worst = 0.0f64;
    let four = fixtures::four_holed();
    let one = fixtures::one_holed();
    let two = fixtures::genus_two();
    for _ in 0..100 {
        let p = sample(&four, r);
        let [e1, e2, e3, e4, e5] = local_eigen(&four, &p.eigen, 1);
        let t = p.t(1);
        let want = [
            t.inv(),
            t * (e2 * e3 - e1) * (e1 * e3 - e2) / ((1.0 - e1 * e2 * e3) * (e1 * e2 - e3)),
            t,
            t,
            t * (e4 * e5 - e1) * (e1 * e4 - e5) / ((1.0 - e1 * e4 * e5) * (e1 * e5 - e4)),
        ];
        for (k, w) in (1..=5).zip(want) {
            let q = flip_eigenvalue(&p, &four, k).unwrap();
            worst = worst.max(rel(q.t(1), w)).max(rel(q.e(k), p.e(k).inv()));
        }

        let p = sample(&one, r);
        let (e1, e2, t) = (p.e(1), p.e(2), p.t(1));
        let s = e1 * e1;
        let f = (e2 - s) / (s * e2 - 1.0);
        for (k, w) in [(1, t.inv()), (2, t * f * f)] {
            let q = flip_eigenvalue(&p, &one, k).unwrap();
            worst = worst.max(rel(q.t(1), w));
        }

        let p = sample(&two, r);
        for k in 1..=3 {
            let q = flip_eigenvalue(&p, &two, k).unwrap();
            worst = worst.max(rel(q.e(k), p.e(k).inv()));
            for j in 1..=3 {
                let w = if j == k { p.t(j).inv() } else { p.t(j) };
                worst = worst.max(rel(q.t(j), w));
            }
        }
    }
    worst
}

fn action_invariance() -> Outcome {
    let s = fixtures::genus_two();
    let mut r = rng(105);
    let mut worst = 0.0f64;
    let spectrum = |p: &EdgeParams| {
        let built = rep(&s, p);
        squared_trace_spectrum(&built, &canonical_words(&built.presentation))
    };
    let gap = |a: &[C64], b: &[C64]| a.iter().zip(b).map(|(x, y)| rel(*x, *y)).fold(0.0, f64::max);
    for _ in 0..20 {
        let p = sample(&s, &mut r);
        let base = spectrum(&p);
        for k in s.edge_ids() {
            worst = worst.max(gap(&base, &spectrum(&flip_eigenvalue(&p, &s, k).unwrap())));
        }
        for eps in epsilon_basis(&s) {
            worst = worst.max(gap(&base, &spectrum(&act_epsilon(&p, &s, &eps).unwrap())));
        }
    }
    let formulas = flip_twist_formulas(&mut r);
    (
        worst < 1e-8 && formulas < 1e-10,
        format!("genus-2 squared traces {worst:.2e} at 20 points, flip formulas {formulas:.2e} at 100 points"),
    )
}

/// Generator words of length one and two, with inverses.
fn short_words(rep: &SurfaceRepresentation) -> Vec<Word> {
    let gens = rep.presentation.generators();
    let mut out = vec![];
    for a in &gens {
        out.push(vec![Letter::new(*a)]);
        for b in &gens {
            out.push(vec![Letter::new(*a), Letter::new(*b)]);
            out.push(vec![Letter::new(*a), Letter::inv(*b)]);
        }
    }
    out
}

fn spectrum_gap(a: &SurfaceRepresentation, b: &SurfaceRepresentation) -> f64 {
    let words = short_words(a);
    let x = squared_trace_spectrum(a, &words);
    let y = squared_trace_spectrum(b, &words);
    x.iter().zip(&y).map(|(p, q)| rel(*p, *q)).fold(0.0, f64::max)
}

/// Squared traces of products of up to three new generators against the
/// given old words.
fn marking_gap(old: &SurfaceRepresentation, new: &SurfaceRepresentation, images: &[&str]) -> f64 {
    let n: Vec<MoebiusMap> = new.presentation.generators().iter().map(|g| new.image(*g)).collect();
    let o: Vec<MoebiusMap> = images.iter().map(|w| old.eval(&parse_word(w).unwrap())).collect();
    let mut gap = 0.0f64;
    for i in 0..n.len() {
        gap = gap.max(rel(t2(&n[i]), t2(&o[i])));
        for j in 0..n.len() {
            gap = gap.max(rel(t2(&(n[i] * n[j])), t2(&(o[i] * o[j]))));
            gap = gap.max(rel(t2(&(n[i] * n[j].adjugate())), t2(&(o[i] * o[j].adjugate()))));
            for k in 0..n.len() {
                gap = gap.max(rel(t2(&(n[i] * n[j] * n[k])), t2(&(o[i] * o[j] * o[k]))));
            }
        }
    }
    gap
}

fn move_coherence() -> Outcome {
    let mut r = rng(106);
    let mut algebra = 0.0f64;
    for _ in 0..100 {
        let e: [_; 5] = std::array::from_fn(|_| rand_c(&mut r));
        let t = rand_c(&mut r);
        let (e1, t1) = reverse_edge_formula(e, t).unwrap();
        let (e0, t0) = reverse_edge_formula([e1, e[3], e[4], e[1], e[2]], t1).unwrap();
        algebra = algebra.max(rel(e0, e[0])).max(rel(t0, t));

        let once = half_twist_formula(e[0], e[1], e[2], t).unwrap();
        let twice = half_twist_formula(e[0], e[2], e[1], once).unwrap();
        let (_, dehn) = dehn_twist_formula(e[0], t, Direction::Right);
        algebra = algebra.max(rel(twice, dehn));
        let (_, back) = dehn_twist_formula(e[0], dehn, Direction::Left);
        algebra = algebra.max(rel(back, t));
    }

    let mut spectra = 0.0f64;
    let mut traces = 0.0f64;
    let four = fixtures::four_holed();
    let one = fixtures::one_holed();
    for _ in 0..40 {
        let p = sample(&four, &mut r);
        let e = local_eigen(&four, &p.eigen, 1);
        let (tr34, _, _) = four_holed_traces(e, p.t(1)).unwrap();
        let (s1, p1) = apply_move(&four, &p, &Move::new(MoveKind::ElementaryFourHoled, 1)).unwrap();
        traces = traces.max(rel(p1.e(1) + p1.e(1).inv(), tr34));
        spectra = spectra.max(spectrum_gap(&rep(&four, &p), &rep(&s1, &p1)));

        let p = sample(&one, &mut r);
        let (tr_b, _, _) = one_holed_traces(p.e(1), p.e(2), p.t(1)).unwrap();
        let (s1, p1) = apply_move(&one, &p, &Move::new(MoveKind::ElementaryOneHoled, 1)).unwrap();
        traces = traces.max(rel(p1.e(1) + p1.e(1).inv(), tr_b));
        // the new generators are old words, so compare against the marking
        let images = ["beta1", "alpha1 alpha2 beta1^-1", "alpha1^-1", "alpha1 delta1 alpha1^-1"];
        spectra = spectra.max(marking_gap(&rep(&one, &p), &rep(&s1, &p1), &images));
    }
    (
        algebra < 1e-10 && spectra < 1e-7 && traces < 1e-10,
        format!("move identities {algebra:.2e}, elementary-move spectra {spectra:.2e}, new-curve traces {traces:.2e}"),
    )
}

fn fuchsian_locus() -> Outcome {
    let mut r = rng(107);
    let mut chain_ok = true;
    let mut imag = 0.0f64;
    let mut fn_gap = 0.0f64;
    let mut okai = 0.0f64;
    let two = fixtures::genus_two();
    let four = fixtures::four_holed();
    let one = fixtures::one_holed();
    let neg = |r: &mut ChaCha8Rng| real(-r.gen_range(1.0001..10.0));
    for _ in 0..1000 {
        let e: [f64; 3] = std::array::from_fn(|_| -r.gen_range(1.0001..10.0));
        let cert = pants_discreteness_certificate(e[0], e[1], e[2]).unwrap();
        let scale = cert.chain[4];
        chain_ok &= cert.pass
            && cert.chain[0] > 0.0
            && cert.chain.windows(2).all(|w| w[0] < w[1])
            && cert.gaps.iter().all(|g| *g > 1e-12 * scale);

        let p = params(
            &[(1, real(e[0])), (2, real(e[1])), (3, real(e[2]))],
            &[(1, real(r.gen_range(0.2..5.0))), (2, real(r.gen_range(0.2..5.0))), (3, real(r.gen_range(0.2..5.0)))],
        );
        for m in rep(&two, &p).images.values() {
            // real up to the scalar chosen for the lift
            let ent = m.entries();
            let big = ent.into_iter().max_by(|x, y| x.norm().total_cmp(&y.norm())).unwrap();
            let u = big.conj() / big.norm();
            imag = imag.max(ent.iter().map(|z| (z * u).im.abs() / big.norm()).fold(0.0, f64::max));
        }
        let conv = to_fenchel_nielsen(&p, &two).unwrap();
        fn_gap = fn_gap.max(from_fenchel_nielsen(&conv.fn_params, &two).unwrap().max_rel_diff(&p));

        let p = params(
            &[(1, real(e[0])), (2, real(e[1])), (3, real(e[2])), (4, neg(&mut r)), (5, neg(&mut r))],
            &[(1, real(r.gen_range(0.2..5.0)))],
        );
        let fnp = to_fenchel_nielsen(&p, &four).unwrap().fn_params;
        let l = [1, 2, 3, 4, 5].map(|k| fnp.lengths[&k]);
        let want = okai_length(l, fnp.twists[&1]);
        let (s1, p1) = apply_move(&four, &p, &Move::new(MoveKind::ElementaryFourHoled, 1)).unwrap();
        let got = to_fenchel_nielsen(&p1, &s1).unwrap().fn_params.lengths[&1];
        okai = okai.max((got - want).abs() / want.max(1.0));

        let p = params(&[(1, real(e[0])), (2, real(e[1]))], &[(1, real(r.gen_range(0.2..5.0)))]);
        let fnp = to_fenchel_nielsen(&p, &one).unwrap().fn_params;
        let want = okai_length_one_holed(fnp.lengths[&1], fnp.lengths[&2], fnp.twists[&1]);
        let out = elementary_one_holed(p.e(1), p.e(2), p.t(1), None).unwrap();
        okai = okai.max((2.0 * (-out.eigen.re).ln() - want).abs() / want.max(1.0));
    }
    (
        chain_ok && imag < 1e-9 && fn_gap < 1e-10 && okai < 1e-8,
        format!(
            "chain holds: {chain_ok}, imaginary part {imag:.2e}, FN round trip {fn_gap:.2e}, Okai vs elementary move {okai:.2e}"
        ),
    )
}

fn admissible(r: &mut ChaCha8Rng) -> (C64, C64, C64) {
    loop {
        let (e1, e2, t1) = (rand_c(r), rand_c(r), rand_c(r));
        let s = e1 * e1;
        if (t1 * s + 1.0).norm() > 0.1 && (t1 + 1.0).norm() > 0.1 && (s - e2).norm() > 0.1 && (s * e2 - 1.0).norm() > 0.1 {
            return (e1, e2, t1);
        }
    }
}

/// The shear matrix traced around the loop edge has `tr² = (e₁ + 1/e₁)²`
/// and the one traced across it has `tr² = tr²ρ(β₁)`; the pants identity
/// pairs the two edges spiralling into the first boundary, `p₃p₁`.
fn shear_bend_bridge() -> Outcome {
    let mut r = rng(108);
    let (mut glue, mut ta_gap, mut tb_gap, mut pants) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..200 {
        let (e1, e2, t1) = admissible(&mut r);
        for v in one_holed_triangulation(e1, e2, t1).unwrap().residuals().unwrap() {
            glue = glue.max(v.norm());
        }
        let sh = one_holed_to_shear(e1, e2, t1).unwrap();
        let (ta, tb) = shear_traces_squared(sh.a, sh.b, sh.c).unwrap();
        let chi = e1 + e1.inv();
        ta_gap = ta_gap.max(rel(ta, chi * chi));
        let (tr_b, _, _) = one_holed_traces(e1, e2, t1).unwrap();
        tb_gap = tb_gap.max(rel(tb, tr_b * tr_b));

        let e = [rand_c(&mut r), rand_c(&mut r), rand_c(&mut r)];
        let p = pants_shear_params(e).unwrap();
        pants = pants.max(rel(p[2] * p[0], (e[0] * e[0]).inv()));
    }
    (
        glue < 1e-10 && ta_gap < 1e-9 && tb_gap < 1e-9 && pants < 1e-12,
        format!(
            "gluing {glue:.2e}, tr²(alpha) vs (e1+1/e1)² {ta_gap:.2e}, tr²(beta) vs tr²beta1 {tb_gap:.2e}, p3 p1 vs 1/e1² {pants:.2e}"
        ),
    )
}

fn random_point(r: &mut ChaCha8Rng) -> ProjectivePoint {
    match r.gen_range(0..10) {
        0 => ProjectivePoint::infinity(),
        1 => ProjectivePoint::zero(),
        2 => ProjectivePoint::one(),
        _ => ProjectivePoint::finite(C64::from_polar(r.gen_range(0.0..4.0), r.gen_range(0.0..std::f64::consts::TAU))),
    }
}

/// Chordal separation.
fn sep(p: &ProjectivePoint, q: &ProjectivePoint) -> f64 {
    let n = |x: &ProjectivePoint| (x.num.norm_sqr() + x.den.norm_sqr()).sqrt();
    det(p, q).norm() / (n(p) * n(q))
}

fn separated_points<const N: usize>(r: &mut ChaCha8Rng) -> [ProjectivePoint; N] {
    loop {
        let pts: [ProjectivePoint; N] = std::array::from_fn(|_| random_point(r));
        if (0..N).all(|i| ((i + 1)..N).all(|j| sep(&pts[i], &pts[j]) > 0.05)) {
            return pts;
        }
    }
}

fn random_map(r: &mut ChaCha8Rng) -> MoebiusMap {
    loop {
        let mut z = || C64::from_polar(r.gen_range(0.0..3.0), r.gen_range(0.0..std::f64::consts::TAU));
        let m = MoebiusMap::new(z(), z(), z(), z());
        if m.det().norm() >= 0.2 * m.max_abs().powi(2) {
            return m;
        }
    }
}

fn projective_core() -> Outcome {
    let mut r = rng(109);
    let n = 10_000;
    let (mut cr, mut axis, mut three) = (0.0f64, 0.0f64, 0.0f64);
    let mut infinite = 0;
    let dist = |a: &ProjectivePoint, b: &ProjectivePoint| sep(a, b);
    for _ in 0..n {
        let x: [ProjectivePoint; 4] = separated_points(&mut r);
        infinite += x.iter().any(|p| p.is_infinite(0.0)) as usize;
        let a = random_map(&mut r);
        let before = cross_ratio(&x[0], &x[1], &x[2], &x[3]).unwrap();
        let y: Vec<ProjectivePoint> = x.iter().map(|p| a.apply(p).unwrap()).collect();
        let after = cross_ratio(&y[0], &y[1], &y[2], &y[3]).unwrap();
        cr = cr.max(rel(after, before));

        let e = C64::from_polar(r.gen_range(1.1..4.0), r.gen_range(0.0..std::f64::consts::TAU));
        let e = if r.gen_bool(0.5) { e } else { e.inv() };
        let [p, q]: [ProjectivePoint; 2] = separated_points(&mut r);
        let m = mobius_with_axis(e, &p, &q).unwrap();
        axis = axis
            .max((m.det() - 1.0).norm())
            .max(dist(&m.apply(&p).unwrap(), &p))
            .max(dist(&m.apply(&q).unwrap(), &q))
            .max(dist(&eigen_point(&m, e).unwrap(), &p))
            .max(m.dist_up_to_sign(&mobius_with_axis(e.inv(), &q, &p).unwrap()) / m.max_abs().max(1.0))
            .max((m * mobius_with_axis(e.inv(), &p, &q).unwrap()).dist_to_pm_identity() / m.max_abs().powi(2).max(1.0));

        let src: [ProjectivePoint; 3] = separated_points(&mut r);
        let dst: [ProjectivePoint; 3] = separated_points(&mut r);
        let mid: [ProjectivePoint; 3] = separated_points(&mut r);
        let f = three_point_map(&src, &dst).unwrap();
        for i in 0..3 {
            three = three.max(dist(&f.apply(&src[i]).unwrap(), &dst[i]));
        }
        let g = three_point_map(&mid, &dst).unwrap() * three_point_map(&src, &mid).unwrap();
        let (fs, gs) = (sl_normalize(&f).unwrap(), sl_normalize(&g).unwrap());
        three = three.max(fs.dist_up_to_sign(&gs) / fs.max_abs().max(1.0));
    }
    (
        cr < 1e-10 && axis < 1e-10 && three < 1e-10,
        format!(
            "{n} checks each ({infinite} with a point at infinity): cross ratio {cr:.2e}, axis maps {axis:.2e}, three-point maps {three:.2e}"
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("relation residuals", relation_residuals),
        ("closed-form matrices", closed_form_matrices),
        ("Markov identity", markov_identity),
        ("coordinate round trip", coordinate_round_trip),
        ("flip and sign invariance", action_invariance),
        ("move coherence", move_coherence),
        ("Fuchsian locus", fuchsian_locus),
        ("shear-bend bridge", shear_bend_bridge),
        ("projective core", projective_core),
    ];
    let mut failed = vec![];
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (pass, detail) = check();
        println!("criterion {} {name}: {} ({detail})", i + 1, if pass { "PASS" } else { "FAIL" });
        if !pass {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
