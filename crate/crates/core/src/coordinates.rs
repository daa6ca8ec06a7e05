//! Eigenvalue–twist coordinates: the parameter domain, propagation of fixed
//! points across an interior edge, and twist extraction.
//!
//! Every function taking `e: [C64; 5]` uses the local picture of an interior
//! edge `f₁` from vertex P₁ to vertex P₂: `e[0]` belongs to `f₁`, `e[1], e[2]`
//! to the next edges counterclockwise at P₁, `e[3], e[4]` to the next edges
//! counterclockwise at P₂. Neighbour eigenvalues are orientation-adjusted:
//! an edge pointing into its vertex contributes `e⁻¹`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pants::{is_admissible_triple, valid_eigenvalue, weighted_point};
use crate::projective::{cross_ratio, det, mobius_with_axis, sqrt_upper, MoebiusMap, ProjectivePoint, C64};
use crate::surface::{EdgeKind, End, PantsSurface, Slot};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EdgeParams {
    pub eigen: BTreeMap<usize, C64>,
    #[serde(default)]
    pub twist: BTreeMap<usize, C64>,
}

impl EdgeParams {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("params serialize")
    }

    pub fn e(&self, edge: usize) -> C64 {
        self.eigen[&edge]
    }

    pub fn t(&self, edge: usize) -> C64 {
        self.twist[&edge]
    }

    /// Largest entrywise distance to `other`, over shared keys.
    pub fn max_diff(&self, other: &EdgeParams) -> f64 {
        let mut d = 0.0f64;
        for (k, v) in &self.eigen {
            d = d.max(other.eigen.get(k).map_or(f64::INFINITY, |w| (v - w).norm()));
        }
        for (k, v) in &self.twist {
            d = d.max(other.twist.get(k).map_or(f64::INFINITY, |w| (v - w).norm()));
        }
        d
    }

    /// Like `max_diff` but relative to the modulus of each entry.
    pub fn max_rel_diff(&self, other: &EdgeParams) -> f64 {
        let rel = |v: &C64, w: Option<&C64>| w.map_or(f64::INFINITY, |w| (v - w).norm() / v.norm().max(1.0));
        let a = self.eigen.iter().map(|(k, v)| rel(v, other.eigen.get(k)));
        let b = self.twist.iter().map(|(k, v)| rel(v, other.twist.get(k)));
        a.chain(b).fold(0.0, f64::max)
    }
}

/// Orientation-adjusted eigenvalue at a slot.
pub fn adjusted(surface: &PantsSurface, eigen: &BTreeMap<usize, C64>, s: Slot) -> C64 {
    let (edge, end) = surface.at(s);
    let e = eigen[&edge];
    if end == End::Tail {
        e
    } else {
        e.inv()
    }
}

/// Adjusted eigenvalues of the three slots counterclockwise from `s`.
pub fn vertex_eigen(surface: &PantsSurface, eigen: &BTreeMap<usize, C64>, s: Slot) -> [C64; 3] {
    surface.ccw_from(s).map(|sl| adjusted(surface, eigen, sl))
}

/// The five local eigenvalues of an interior edge.
pub fn local_eigen(surface: &PantsSurface, eigen: &BTreeMap<usize, C64>, edge: usize) -> [C64; 5] {
    let p1 = surface.slot_of(edge, End::Tail);
    let p2 = surface.slot_of(edge, End::Head);
    [
        eigen[&edge],
        adjusted(surface, eigen, surface.next(p1, 1)),
        adjusted(surface, eigen, surface.next(p1, 2)),
        adjusted(surface, eigen, surface.next(p2, 1)),
        adjusted(surface, eigen, surface.next(p2, 2)),
    ]
}

pub fn check_keys(params: &EdgeParams, surface: &PantsSurface) -> Result<()> {
    for id in surface.edge_ids() {
        if !params.eigen.contains_key(&id) {
            return Err(Error::Schema(format!("missing eigenvalue for edge {id}")));
        }
    }
    for id in surface.interior_edges() {
        if !params.twist.contains_key(&id) {
            return Err(Error::Schema(format!("missing twist for edge {id}")));
        }
    }
    for k in params.eigen.keys() {
        if surface.edge(*k).is_none() {
            return Err(Error::Schema(format!("eigenvalue for unknown edge {k}")));
        }
    }
    for k in params.twist.keys() {
        if surface.edge(*k).map(|_| surface.edge_kind(*k)) != Some(EdgeKind::Interior) {
            return Err(Error::Schema(format!("twist for non-interior edge {k}")));
        }
    }
    Ok(())
}

/// First reason the parameters fall outside the domain, if any.
pub fn domain_violation(params: &EdgeParams, surface: &PantsSurface) -> Result<Option<String>> {
    check_keys(params, surface)?;
    for (id, e) in &params.eigen {
        if !valid_eigenvalue(*e) {
            return Ok(Some(format!("eigenvalue of edge {id} is 0 or ±1")));
        }
    }
    for (id, t) in &params.twist {
        if !(t.is_finite() && t.norm() > 1e-300) {
            return Ok(Some(format!("twist of edge {id} vanishes")));
        }
    }
    for v in surface.trivalent_ids() {
        let [a, b, c] = vertex_eigen(surface, &params.eigen, Slot { vertex: v, pos: 0 });
        if !is_admissible_triple(a, b, c) {
            return Ok(Some(format!("vertex {v} eigenvalue triple is reducible")));
        }
    }
    Ok(None)
}

pub fn in_domain(params: &EdgeParams, surface: &PantsSurface) -> Result<bool> {
    Ok(domain_violation(params, surface)?.is_none())
}

fn scale(vals: &[C64]) -> f64 {
    vals.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Guards the reducibility factors that appear in the propagation formulas.
fn guard_factors(e: &[C64; 5]) -> Result<()> {
    let [e1, e2, e3, e4, e5] = *e;
    let checks = [
        (e1 * e3 - e2, "e1e3 - e2"),
        (e1 * e2 - e3, "e1e2 - e3"),
        (e1 * e5 - e4, "e1e5 - e4"),
        (e1 * e4 - e5, "e1e4 - e5"),
        (e1 * e1 - 1.0, "e1^2 - 1"),
    ];
    for (v, name) in checks {
        crate::projective::guard(v, 1.0 + scale(e).powi(2), name)?;
    }
    Ok(())
}

/// Fixed points `(x₄, x₅)` at P₂ from `(x₁, x₂, x₃)` at P₁.
pub fn propagate_forward(
    e: [C64; 5],
    t: C64,
    x1: &ProjectivePoint,
    x2: &ProjectivePoint,
    x3: &ProjectivePoint,
) -> Result<(ProjectivePoint, ProjectivePoint)> {
    guard_factors(&e)?;
    let [e1, e2, e3, e4, e5] = e;
    let a = (e1 * e3 - e2) * t + e1 * e3;
    let x5 = weighted_point([a, e1 * e1 * e2, e2], [x1, x2, x3], "x5 denominator")?;
    let k = e1 * (-(e1 * e3 - e2) * (e1 * e4 - e5) * t + e3 * (e1 * e5 - e4));
    let f = e1 * e5 - e4;
    let x4 = weighted_point([k, e1 * e1 * e2 * f, e2 * f], [x1, x2, x3], "x4 denominator")?;
    Ok((x4, x5))
}

/// Fixed points `(x₂, x₃)` at P₁ from `(x₁, x₄, x₅)` at P₂.
pub fn propagate_backward(
    e: [C64; 5],
    t: C64,
    x1: &ProjectivePoint,
    x4: &ProjectivePoint,
    x5: &ProjectivePoint,
) -> Result<(ProjectivePoint, ProjectivePoint)> {
    guard_factors(&e)?;
    let [e1, e2, e3, e4, e5] = e;
    let ti = t.inv();
    let a = (e1 * e5 - e4) * ti + e1 * e5;
    let x2 = weighted_point([a, e1 * e1 * e4, e4], [x1, x5, x4], "x2 denominator")?;
    let k = e1 * (-(e1 * e5 - e4) * (e1 * e2 - e3) * ti + e5 * (e1 * e3 - e2));
    let f = e1 * e3 - e2;
    let x3 = weighted_point([k, e1 * e1 * e4 * f, e4 * f], [x1, x5, x4], "x3 denominator")?;
    Ok((x2, x3))
}

/// `M(√(−t); x₁, y₁)`, which carries `x₂` to `x₅`.
pub fn gluing_map(t: C64, x1: &ProjectivePoint, y1: &ProjectivePoint) -> Result<MoebiusMap> {
    if t.norm() == 0.0 {
        return Err(Error::Degenerate("t".into()));
    }
    mobius_with_axis(sqrt_upper(-t), x1, y1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TwistVariant {
    /// From `[x₅:x₃:x₁:x₂]`.
    V1,
    /// From `[x₄:x₃:x₁:x₂]`.
    V2,
    /// From `[x₂:x₄:x₁:x₅]`.
    V3,
    /// From `[x₃:x₄:x₁:x₅]`.
    V4,
}

pub const ALL_VARIANTS: [TwistVariant; 4] = [TwistVariant::V1, TwistVariant::V2, TwistVariant::V3, TwistVariant::V4];

impl TwistVariant {
    /// Indices (0-based into x₁…x₅) of the four points used.
    pub fn points(self) -> [usize; 4] {
        match self {
            TwistVariant::V1 => [4, 2, 0, 1],
            TwistVariant::V2 => [3, 2, 0, 1],
            TwistVariant::V3 => [1, 3, 0, 4],
            TwistVariant::V4 => [2, 3, 0, 4],
        }
    }
}

/// Twist from the five fixed points `x[0..5] = (x₁, …, x₅)`.
pub fn twist_from_fixed_points(variant: TwistVariant, e: [C64; 5], x: &[ProjectivePoint; 5]) -> Result<C64> {
    let [e1, e2, e3, e4, e5] = e;
    let p = variant.points();
    let cr = cross_ratio(&x[p[0]], &x[p[1]], &x[p[2]], &x[p[3]])?;
    // each factor is measured against the size of its own terms
    let g = |val: C64, terms: f64, name: &str| crate::projective::guard(val, 1.0 + terms, name);
    let one = C64::new(1.0, 0.0);
    let t = match variant {
        TwistVariant::V1 | TwistVariant::V2 => {
            let d = g(e2 - e1 * e3, e2.norm() + (e1 * e3).norm(), "e2 - e1e3")?;
            let inner = -one + e2 * (one - e1 * e1) / d * cr;
            if variant == TwistVariant::V1 {
                inner
            } else {
                let d = g(e1 * (e1 * e4 - e5), e1.norm() * ((e1 * e4).norm() + e5.norm()), "e1(e1e4 - e5)")?;
                -(e1 * e5 - e4) / d * inner
            }
        }
        TwistVariant::V3 | TwistVariant::V4 => {
            let d = g(e4 - e1 * e5, e4.norm() + (e1 * e5).norm(), "e4 - e1e5")?;
            let inner = -one + e4 * (one - e1 * e1) / d * cr;
            let inv = if variant == TwistVariant::V3 {
                inner
            } else {
                let d = g(e1 * (e1 * e2 - e3), e1.norm() * ((e1 * e2).norm() + e3.norm()), "e1(e1e2 - e3)")?;
                -(e1 * e3 - e2) / d * inner
            };
            crate::projective::guard(inv, 1.0, "t^-1")?.inv()
        }
    };
    crate::projective::guard(t, 1.0, "t")
}

fn chordal(p: &ProjectivePoint, q: &ProjectivePoint) -> f64 {
    let np = (p.num.norm_sqr() + p.den.norm_sqr()).sqrt();
    let nq = (q.num.norm_sqr() + q.den.norm_sqr()).sqrt();
    det(p, q).norm() / (np * nq)
}

/// The variant whose four points are farthest apart in the chordal metric.
pub fn best_variant(x: &[ProjectivePoint; 5]) -> TwistVariant {
    let spread = |v: TwistVariant| {
        let p = v.points();
        let mut m = f64::INFINITY;
        for i in 0..4 {
            for j in (i + 1)..4 {
                m = m.min(chordal(&x[p[i]], &x[p[j]]));
            }
        }
        m
    };
    let mut best = TwistVariant::V1;
    for v in ALL_VARIANTS {
        if spread(v) > spread(best) {
            best = v;
        }
    }
    best
}

pub fn twist_best_conditioned(e: [C64; 5], x: &[ProjectivePoint; 5]) -> Result<C64> {
    twist_from_fixed_points(best_variant(x), e, x)
}

fn chi(e: C64) -> C64 {
    e + e.inv()
}

/// The `t₁`-coefficients `(Q, R)` shared by the four-holed trace formulas.
fn trace_coefficients(e: [C64; 5]) -> (C64, C64) {
    let [e1, e2, e3, e4, e5] = e;
    let one = C64::new(1.0, 0.0);
    let q = (e2 * e3 - e1) * (e1 * e3 - e2) / (e1 * e2 * e3) * (e4 * e5 - e1) * (e1 * e4 - e5) / (e1 * e4 * e5);
    let r = (one - e1 * e2 * e3) * (e1 * e2 - e3) / (e1 * e2 * e3) * (one - e1 * e4 * e5) * (e1 * e5 - e4)
        / (e1 * e4 * e5);
    (q, r)
}

/// `(tr γ₃γ₄, tr γ₂γ₄, tr γ₃γ₅)` for the four-holed picture.
pub fn four_holed_traces(e: [C64; 5], t: C64) -> Result<(C64, C64, C64)> {
    let [e1, e2, e3, e4, e5] = e;
    let s = crate::projective::guard(e1 - e1.inv(), 1.0 + e1.norm(), "e1 - e1^-1")?;
    let pre = (s * s).inv();
    let (q, r) = trace_coefficients(e);
    let (c1, c2, c3, c4, c5) = (chi(e1), chi(e2), chi(e3), chi(e4), chi(e5));
    let tr34 = pre * (-q * t - r / t + c1 * (c3 * c5 + c2 * c4) - 2.0 * (c2 * c5 + c3 * c4));
    let tr24 = pre * (q * e1 * t + r / (e1 * t) + c1 * (c2 * c5 + c3 * c4) - 2.0 * (c2 * c4 + c3 * c5));
    let tr35 = pre * (q * t / e1 + r * e1 / t + c1 * (c2 * c5 + c3 * c4) - 2.0 * (c2 * c4 + c3 * c5));
    Ok((tr34, tr24, tr35))
}

/// Twist from `tr γ₂γ₄` and `tr γ₃γ₅`.
pub fn twist_from_traces_four_holed(e: [C64; 5], tr24: C64, tr35: C64) -> Result<C64> {
    let [e1, e2, e3, e4, e5] = e;
    let c1 = crate::projective::guard(chi(e1), 1.0 + e1.norm(), "e1 + e1^-1")?;
    let (q, _) = trace_coefficients(e);
    let q = crate::projective::guard(q, 1.0, "(e2e3 - e1)(e1e3 - e2)(e4e5 - e1)(e1e4 - e5)")?;
    let (c2, c3, c4, c5) = (chi(e2), chi(e3), chi(e4), chi(e5));
    let body = (e1 - e1.inv()) * (e1 * tr24 - tr35 / e1) - c1 * (c2 * c5 + c3 * c4) + 2.0 * (c2 * c4 + c3 * c5);
    Ok(body / (c1 * q))
}

/// `√(−e₂t₁)` with the upper branch, the scalar of the one-holed `ρ(β₁)`.
pub fn one_holed_root(e2: C64, t: C64) -> C64 {
    sqrt_upper(-e2 * t)
}

/// `(tr β₁, tr α₁β₁, tr α₁⁻¹β₁)` for the one-holed torus with `ρ(β₁)`
/// scaled by `1/√(−e₂t₁)`.
pub fn one_holed_traces(e1: C64, e2: C64, t: C64) -> Result<(C64, C64, C64)> {
    let one = C64::new(1.0, 0.0);
    let f = crate::projective::guard(e1 * e1 - one, 1.0 + e1.norm_sqr(), "e1^2 - 1")?;
    let s = one_holed_root(e2, t);
    let tb = -((e1 * e1 - e2) * t + one - e1 * e1 * e2) / (f * s);
    let tab = -((e1 * e1 - e2) * e1 * e1 * t + one - e1 * e1 * e2) / (f * e1 * s);
    let tainvb = -((e1 * e1 - e2) * t + e1 * e1 * (one - e1 * e1 * e2)) / (e1 * f * s);
    Ok((tb, tab, tainvb))
}

/// Twist from `tr β₁` and `tr α₁β₁`.
pub fn twist_from_traces_one_holed(e1: C64, e2: C64, tr_b: C64, tr_ab: C64) -> Result<C64> {
    let d = crate::projective::guard(e1 * e1 - e2, 1.0 + e1.norm_sqr() + e2.norm(), "e1^2 - e2")?;
    let k = tr_b - e1 * tr_ab;
    Ok(-e2 / (d * d) * k * k)
}
