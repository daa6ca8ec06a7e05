//! The real locus: Teichmüller domain, the pants discreteness certificate,
//! the SL(2,R)/SU(2) trichotomy for a pants, Fenchel–Nielsen conversion,
//! Okai's length formula and the PSL(2,R) lifting obstruction.
//!
//! Lengths are `l = 2 log(−e)` and Fenchel–Nielsen twists `τ = log t^FN`,
//! where `t^FN` is the exponential of the signed distance between the
//! common perpendiculars of the pants curve with its neighbours.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::builder::SurfaceRepresentation;
use crate::coordinates::{local_eigen, EdgeParams};
use crate::error::{Error, Result};
use crate::projective::C64;
use crate::surface::{Generator, PantsSurface};
use crate::symmetry::{act_epsilon, flip_eigenvalue, satisfies_vertex_condition};

/// Tag carried by conversions: the normalization of the twist used here.
pub const FN_NORMALIZATION: &str = "perpendicular-midpoint";

const REAL_TOL: f64 = 1e-12;

fn is_real(z: C64) -> bool {
    z.im.abs() <= REAL_TOL * z.norm().max(1.0)
}

/// Every eigenvalue real and below −1, every twist real and positive.
pub fn in_teich_domain(params: &EdgeParams) -> bool {
    params.eigen.values().all(|e| is_real(*e) && e.re < -1.0) && params.twist.values().all(|t| is_real(*t) && t.re > 0.0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscretenessCertificate {
    /// The triple after moving to `e₁, e₂, e₃ < −1`.
    pub normalized: [f64; 3],
    /// `(1, y₂, x₃, y₃, e₁²)` with `x₁ = ∞`, `y₁ = 0`, `x₂ = 1`.
    pub chain: [f64; 5],
    /// `y₂ − 1`, `x₃ − y₂`, `y₃ − x₃`, `e₁² − y₃` in factored form.
    pub gaps: [f64; 4],
    pub pass: bool,
}

/// Certifies that a pants with real eigenvalues and `e₁e₂e₃ < 0` has a
/// fundamental domain bounded by the geodesics `(∞,0)`, `(1,y₂)`,
/// `(x₃,y₃)`, `(e₁², e₁²·0)`.
pub fn pants_discreteness_certificate(e1: f64, e2: f64, e3: f64) -> Result<DiscretenessCertificate> {
    let raw = [e1, e2, e3];
    if raw.iter().any(|e| !e.is_finite() || *e == 0.0 || e.abs() == 1.0) {
        return Err(Error::Domain(format!("eigenvalues {raw:?} must be real and different from 0, ±1")));
    }
    if e1 * e2 * e3 >= 0.0 {
        return Err(Error::Domain(format!("e1 e2 e3 = {} is not negative", e1 * e2 * e3)));
    }
    // flips e ↦ 1/e, then an even number of sign changes
    let [a, b, c] = raw.map(|e| -(if e.abs() < 1.0 { 1.0 / e } else { e }).abs());
    let (p, q) = (b * c - a, a * c - b);
    let x3 = -a * (a * b - c) / q;
    let y2 = (a * b - c) * (1.0 - a * b * c) / (p * q);
    let y3 = -a * (1.0 - a * b * c) / p;
    let gaps = [
        -c * (a * a - 1.0) * (b * b - 1.0) / (p * q),
        (a * b - c) * (a * a - 1.0) / (p * q),
        a * b * (a * a - 1.0) * (c * c - 1.0) / (p * q),
        -a * (b * b - 1.0) / p,
    ];
    let scale = a * a;
    let pass = gaps.iter().all(|g| *g > 1e-12 * scale);
    Ok(DiscretenessCertificate { normalized: [a, b, c], chain: [1.0, y2, x3, y3, a * a], gaps, pass })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GoldmanType {
    #[serde(rename = "SL2R")]
    Sl2R,
    #[serde(rename = "SU2")]
    Su2,
}

/// `Σχᵢ² − χ₁χ₂χ₃ − 2` with `χ = e + e⁻¹`.
pub fn kappa(e: [C64; 3]) -> f64 {
    let [x1, x2, x3] = e.map(|z| (z + z.inv()).re);
    x1 * x1 + x2 * x2 + x3 * x3 - x1 * x2 * x3 - 2.0
}

/// Whether a pants with each eigenvalue real or of unit modulus is
/// conjugate into SL(2,R) or into SU(2).
pub fn goldman_type(e: [C64; 3]) -> Result<GoldmanType> {
    for z in e {
        if !(is_real(z) || (z.norm() - 1.0).abs() <= 1e-12) {
            return Err(Error::Domain(format!("eigenvalue {z} is neither real nor of unit modulus")));
        }
    }
    let hyperbolic = e.iter().any(|z| (z + z.inv()).norm() >= 2.0);
    Ok(if hyperbolic || kappa(e) >= 2.0 { GoldmanType::Sl2R } else { GoldmanType::Su2 })
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FnParams {
    pub lengths: BTreeMap<usize, f64>,
    pub twists: BTreeMap<usize, f64>,
}

/// Eigenvalue flips and the sign change applied to reach `e < −1`.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Normalization {
    pub flipped: Vec<usize>,
    pub signs: BTreeMap<usize, i8>,
}

impl Normalization {
    pub fn is_identity(&self) -> bool {
        self.flipped.is_empty() && self.signs.values().all(|s| *s == 1)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FnConversion {
    pub fn_params: FnParams,
    pub normalization: Normalization,
    pub convention: &'static str,
}

/// `t^FN / t` for an interior edge with local eigenvalues `(e₁, …, e₅)`,
/// from the factored radicand (principal branch off the real locus).
pub fn fn_factor(e: [C64; 5]) -> Result<C64> {
    let [e1, e2, e3, e4, e5] = e;
    let one = C64::new(1.0, 0.0);
    let num = [e1 * e3 - e2, e2 * e3 - e1, e1 * e4 - e5, e4 * e5 - e1];
    let den = [e1 * e2 - e3, one - e1 * e2 * e3, e1 * e5 - e4, one - e1 * e4 * e5];
    if den.iter().any(|d| d.norm() < 1e-14) {
        return Err(Error::Degenerate("Fenchel-Nielsen factor".into()));
    }
    // pairwise ratios keep each factor near the positive axis on the locus
    let mut acc = C64::new(1.0, 0.0);
    for (n, d) in num.iter().zip(&den) {
        acc *= (n / d).sqrt();
    }
    Ok(acc)
}

/// `t^FN / t = (e₁² − e₂)/(1 − e₁²e₂)` for the loop of a one-holed torus.
pub fn fn_factor_one_holed(e1: C64, e2: C64) -> Result<C64> {
    let den = C64::new(1.0, 0.0) - e1 * e1 * e2;
    if den.norm() < 1e-14 {
        return Err(Error::Degenerate("1 - e1^2 e2".into()));
    }
    Ok((e1 * e1 - e2) / den)
}

fn edge_fn_factor(surface: &PantsSurface, eigen: &BTreeMap<usize, C64>, edge: usize) -> Result<C64> {
    let ed = surface.edge(edge).ok_or_else(|| Error::Schema(format!("unknown edge {edge}")))?;
    if ed.tail == ed.head {
        // the other edge at the vertex is the boundary of the torus
        let other = surface
            .vertex(ed.tail)
            .expect("edge ends exist")
            .incident
            .iter()
            .find(|(g, _)| *g != edge)
            .map(|(g, _)| *g)
            .expect("trivalent vertex");
        return fn_factor_one_holed(eigen[&edge], eigen[&other]);
    }
    fn_factor(local_eigen(surface, eigen, edge))
}

/// Complex `t^FN` on a simply connected neighbourhood of the locus.
pub fn fn_twist(params: &EdgeParams, surface: &PantsSurface, edge: usize) -> Result<C64> {
    Ok(edge_fn_factor(surface, &params.eigen, edge)? * params.t(edge))
}

/// Moves real parameters to `e < −1` by eigenvalue flips and a sign change
/// with trivial vertex products.
pub fn normalize_real(params: &EdgeParams, surface: &PantsSurface) -> Result<(EdgeParams, Normalization)> {
    if !params.eigen.values().chain(params.twist.values()).all(|z| is_real(*z)) {
        return Err(Error::Domain("parameters are not real".into()));
    }
    let mut p = params.clone();
    let mut norm = Normalization::default();
    for (&k, e) in &params.eigen {
        if e.norm() < 1.0 {
            p = flip_eigenvalue(&p, surface, k)?;
            norm.flipped.push(k);
        }
    }
    let signs: BTreeMap<usize, i8> = p.eigen.iter().map(|(&k, e)| (k, if e.re < 0.0 { 1 } else { -1 })).collect();
    if !satisfies_vertex_condition(surface, &signs) {
        return Err(Error::Domain("some pants has e1 e2 e3 > 0; no sign change reaches e < -1".into()));
    }
    if signs.values().any(|s| *s == -1) {
        p = act_epsilon(&p, surface, &signs)?;
    }
    norm.signs = signs;
    for t in p.twist.values_mut() {
        *t = C64::new(t.re, 0.0);
    }
    for e in p.eigen.values_mut() {
        *e = C64::new(e.re, 0.0);
    }
    Ok((p, norm))
}

/// Lengths `2 log(−e)` and twists `log t^FN` after normalization.
pub fn to_fenchel_nielsen(params: &EdgeParams, surface: &PantsSurface) -> Result<FnConversion> {
    let (p, normalization) = normalize_real(params, surface)?;
    if !in_teich_domain(&p) {
        return Err(Error::Domain("normalized parameters are outside the Teichmüller domain (t <= 0)".into()));
    }
    let mut fnp = FnParams::default();
    for (&k, e) in &p.eigen {
        fnp.lengths.insert(k, 2.0 * (-e.re).ln());
    }
    for &k in p.twist.keys() {
        let t = fn_twist(&p, surface, k)?;
        if !is_real(t) || t.re <= 0.0 {
            return Err(Error::Domain(format!("Fenchel-Nielsen twist {t} of edge {k} is not positive")));
        }
        fnp.twists.insert(k, t.re.ln());
    }
    Ok(FnConversion { fn_params: fnp, normalization, convention: FN_NORMALIZATION })
}

/// Inverse of [`to_fenchel_nielsen`] into the Teichmüller domain.
pub fn from_fenchel_nielsen(fnp: &FnParams, surface: &PantsSurface) -> Result<EdgeParams> {
    let mut out = EdgeParams::default();
    for k in surface.edge_ids() {
        let l = *fnp.lengths.get(&k).ok_or_else(|| Error::Schema(format!("missing length of edge {k}")))?;
        if !(l > 0.0 && l.is_finite()) {
            return Err(Error::Domain(format!("length {l} of edge {k} is not positive")));
        }
        out.eigen.insert(k, C64::new(-(l / 2.0).exp(), 0.0));
    }
    for k in surface.interior_edges() {
        let tau = *fnp.twists.get(&k).ok_or_else(|| Error::Schema(format!("missing twist of edge {k}")))?;
        let f = edge_fn_factor(surface, &out.eigen, k)?;
        out.twist.insert(k, C64::new(tau.exp() / f.re, 0.0));
    }
    Ok(out)
}

fn radical(a: f64, b: f64, c: f64) -> f64 {
    (a * a + b * b + c * c + 2.0 * a * b * c - 1.0).sqrt()
}

/// Length of the new curve of a four-holed elementary move from the five
/// lengths around the central edge and its Fenchel–Nielsen twist.
pub fn okai_length(l: [f64; 5], tau: f64) -> f64 {
    let [c1, c2, c3, c4, c5] = l.map(|x| (x / 2.0).cosh());
    let s1 = (l[0] / 2.0).sinh();
    let rhs = (radical(c1, c2, c3) * radical(c1, c4, c5) * tau.cosh() + c1 * (c3 * c5 + c2 * c4) + (c2 * c5 + c3 * c4))
        / (s1 * s1);
    2.0 * rhs.acosh()
}

/// One-holed analogue: `2cosh(l′/2) = cosh(τ/2)/sinh(l₁/2)·√(2cosh l₁ + 2cosh(l₂/2))`.
pub fn okai_length_one_holed(l1: f64, l2: f64, tau: f64) -> f64 {
    let rhs = (tau / 2.0).cosh() / (l1 / 2.0).sinh() * (2.0 * l1.cosh() + 2.0 * (l2 / 2.0).cosh()).sqrt();
    2.0 * (rhs / 2.0).acosh()
}

/// Orientation sign of a real Möbius map given up to a complex scalar.
fn real_orientation(m: &crate::projective::MoebiusMap) -> Result<i8> {
    let entries = [m.a, m.b, m.c, m.d];
    let big = entries.iter().copied().max_by(|x, y| x.norm().total_cmp(&y.norm())).expect("four entries");
    let phase = big.conj() / big.norm();
    let r = entries.map(|z| z * phase);
    if r.iter().any(|z| z.im.abs() > 1e-9 * big.norm()) {
        return Err(Error::Domain("generator is not in PGL(2,R)".into()));
    }
    let det = r[0].re * r[3].re - r[1].re * r[2].re;
    Ok(if det > 0.0 { 1 } else { -1 })
}

/// For each complement edge `u_i`, `+1` when `ρ(β_i)` preserves the cyclic
/// order of RP¹ and `−1` otherwise. All `+1` iff the representation
/// reduces to PSL(2,R).
pub fn psl2r_obstruction(rep: &SurfaceRepresentation) -> Result<BTreeMap<usize, i8>> {
    for (g, m) in &rep.images {
        if !matches!(g, Generator::Beta(_)) && real_orientation(m)? != 1 {
            return Err(Error::Domain(format!("{g} reverses orientation")));
        }
    }
    rep.presentation
        .betas
        .iter()
        .enumerate()
        .map(|(i, &u)| Ok((u, real_orientation(&rep.image(Generator::Beta(i + 1)))?)))
        .collect()
}
