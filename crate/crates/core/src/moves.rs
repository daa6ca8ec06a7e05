//! Moves between pants decompositions with dual graphs and the induced
//! transformations of eigenvalue and twist parameters.
//!
//! The four-holed elementary move acts on the local picture of an interior
//! non-loop edge `f` from P₁ to P₂ with neighbours `f₂, f₃` at P₁ and
//! `f₄, f₅` at P₂ (counterclockwise). The new curve separates `{f₅, f₂}`
//! from `{f₃, f₄}`: afterwards P₁ reads `(f, f₅, f₂)` and P₂ reads
//! `(f, f₃, f₄)`. Vertex and edge ids are kept.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::coordinates::{
    domain_violation, four_holed_traces, local_eigen, one_holed_root, one_holed_traces, propagate_backward,
    propagate_forward, twist_best_conditioned, twist_from_traces_four_holed, vertex_eigen, EdgeParams,
};
use crate::error::{Error, Result};
use crate::pants::{pants_rep, PantsData};
use crate::projective::{eigen_point, guard, sqrt_upper, three_point_map, ProjectivePoint, C64};
use crate::surface::{EdgeKind, End, PantsSurface, Slot};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
}

/// Relabeling `v ↦ vertices[v]`, `e ↦ edges[e]`; missing ids are fixed.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Automorphism {
    #[serde(default)]
    pub vertices: BTreeMap<usize, usize>,
    #[serde(default)]
    pub edges: BTreeMap<usize, usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    ReverseEdge,
    DehnTwist(Direction),
    VertexMove,
    GraphAutomorphism(Automorphism),
    ElementaryFourHoled,
    ElementaryOneHoled,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Move {
    pub kind: MoveKind,
    /// Edge id, or vertex id for a vertex move; ignored by automorphisms.
    pub target: usize,
    /// Explicit eigenvalue hint for the new curve of an elementary move.
    #[serde(default)]
    pub branch: Option<C64>,
}

impl Move {
    pub fn new(kind: MoveKind, target: usize) -> Self {
        Move { kind, target, branch: None }
    }
}

fn size(e: &[C64]) -> f64 {
    1.0 + e.iter().map(|z| z.norm()).fold(0.0, f64::max).powi(3)
}

/// `(e₁⁻¹, (e₁e₂−e₃)(e₁e₅−e₄)/((e₁e₃−e₂)(e₁e₄−e₅)) · t₁⁻¹)`.
pub fn reverse_edge_formula(e: [C64; 5], t: C64) -> Result<(C64, C64)> {
    let [e1, e2, e3, e4, e5] = e;
    let den = guard((e1 * e3 - e2) * (e1 * e4 - e5) * t, size(&e) * (1.0 + t.norm()), "(e1e3 - e2)(e1e4 - e5)t")?;
    Ok((e1.inv(), (e1 * e2 - e3) * (e1 * e5 - e4) / den))
}

pub fn dehn_twist_formula(e: C64, t: C64, direction: Direction) -> (C64, C64) {
    match direction {
        Direction::Right => (e, e * e * t),
        Direction::Left => (e, t / (e * e)),
    }
}

/// Right half twist at the tail vertex of an edge with local `(e₁, e₂, e₃)`.
pub fn half_twist_formula(e1: C64, e2: C64, e3: C64, t: C64) -> Result<C64> {
    let den = guard(e1 * e2 - e3, size(&[e1, e2, e3]), "e1e2 - e3")?;
    Ok(-e1 * (e1 * e3 - e2) / den * t)
}

/// A root of `x² − tr·x + 1`: by default `(tr − √(tr²−4))/2` with the upper
/// square root, otherwise the root nearest `hint`.
pub fn new_curve_eigen(tr: C64, hint: Option<C64>) -> Result<C64> {
    let disc = tr * tr - 4.0;
    if disc.norm() < 1e-10 * (1.0 + tr.norm_sqr()) {
        return Err(Error::Parabolic(format!("new curve has trace {tr}")));
    }
    let r = sqrt_upper(disc);
    let (a, b) = ((tr - r) / 2.0, (tr + r) / 2.0);
    Ok(match hint {
        None => a,
        Some(h) => {
            if (a - h).norm() <= (b - h).norm() {
                a
            } else {
                b
            }
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FourHoledOutcome {
    pub eigen: C64,
    pub twist: C64,
    /// Multipliers of the twists of `f₂, …, f₅` when these are interior and
    /// oriented away from the central pants; `None` where a denominator
    /// vanishes.
    pub neighbor_factors: [Option<C64>; 4],
}

/// New eigenvalue and twists for the four-holed elementary move.
pub fn elementary_four_holed(e: [C64; 5], t1: C64, branch: Option<C64>) -> Result<FourHoledOutcome> {
    let [e1, e2, e3, e4, e5] = e;
    let (tr34, tr24, tr35) = four_holed_traces(e, t1)?;
    let ep = new_curve_eigen(tr34, branch)?;
    let one = C64::new(1.0, 0.0);
    let sc = size(&[e1, e2, e3, e4, e5, ep]) * (1.0 + t1.norm());

    let u = -(e1 * e3 - e2) * t1 + e1 * (e1 * e2 - e3);
    let w = e1 * (e1 * e3 - e2) * t1 - (e1 * e2 - e3);
    let direct = guard((e3 * ep - e4) * (w * ep + e3 * e5 * u), sc * sc, "new twist denominator")
        .map(|den| (e4 * ep - e3) * (e3 * e5 * u * ep + w) / den);
    // the same twist from traces, in the relabeled picture (e′, e₅, e₂, e₃, e₄)
    let from_traces = twist_from_traces_four_holed([ep, e5, e2, e3, e4], tr35, tr24);
    let twist = match (direct, from_traces) {
        (Ok(a), Ok(b)) => {
            if (a - b).norm() > 1e-6 * (a.norm() + 1.0) {
                return Err(Error::Degenerate(format!("twist formulas disagree: {a} vs {b}")));
            }
            a
        }
        (Ok(a), Err(_)) | (Err(_), Ok(a)) => a,
        (Err(e), Err(_)) => return Err(e),
    };

    // a factor is dropped only at a pole, where it exceeds 1e12
    let r = |num: C64, den: C64, name: &str| guard(den, 1e-3 * num.norm(), name).ok().map(|d| num / d);
    let p = (e1 * e3 - e2) * (e1 * e4 - e5) * t1 + (e1 * e2 - e3) * (e1 * e5 - e4);
    let f2 = r(
        (e1 * e2 - e3) * (e1 * e3 - e2) * (t1 + 1.0) * (e2 * ep - e5),
        ((e2 * e3 - e1) * (e1 * e3 - e2) * t1 + (one - e1 * e2 * e3) * (e1 * e2 - e3)) * (e2 * e5 - ep),
        "second neighbour factor",
    );
    let f3 = r(
        (e2 * e3 - e1) * p,
        (e1 * e3 - e2) * ((e2 * e3 - e1) * (e1 * e4 - e5) * t1 + (one - e1 * e2 * e3) * (e1 * e5 - e4)),
        "third neighbour factor",
    );
    let f4 = r(
        p * (e3 * ep - e4),
        ((e1 * e3 - e2) * (e4 * e5 - e1) * t1 + (e1 * e2 - e3) * (one - e1 * e4 * e5)) * (one - e3 * e4 * ep),
        "fourth neighbour factor",
    );
    let f5 = r(
        (e1 * e5 - e4) * (e1 * e4 * e5 - 1.0) * (t1 + 1.0),
        (e1 - e4 * e5) * (e1 * e4 - e5) * t1 + (e1 * e4 * e5 - 1.0) * (e1 * e5 - e4),
        "fifth neighbour factor",
    );
    Ok(FourHoledOutcome { eigen: ep, twist, neighbor_factors: [f2, f3, f4, f5] })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OneHoledOutcome {
    pub eigen: C64,
    pub twist: C64,
    /// Multiplier of the twist of the boundary edge, when interior and
    /// oriented away from the torus.
    pub boundary_factor: C64,
}

/// New eigenvalue and twists for the one-holed elementary move.
pub fn elementary_one_holed(e1: C64, e2: C64, t1: C64, branch: Option<C64>) -> Result<OneHoledOutcome> {
    let (tr_b, _, tr_ainv_b) = one_holed_traces(e1, e2, t1)?;
    let ep = new_curve_eigen(tr_b, branch)?;
    let d = guard(ep * ep - e2, 1.0 + (ep * ep).norm() + e2.norm(), "e'^2 - e2")?;
    let k = (e1 + e1.inv()) - ep * tr_ainv_b;
    let twist = -e2 / (d * d) * k * k;
    let s = one_holed_root(e2, t1);
    let (u, v) = ((1.0 - e1 * e1 * e2) * s * ep, (e2 - e1 * e1) * e2 * t1);
    let den = guard(u + v, 1.0 + u.norm() + v.norm(), "boundary factor")?;
    let boundary_factor = e2 * (e2 - e1 * e1) * (s * ep + t1) / den;
    Ok(OneHoledOutcome { eigen: ep, twist, boundary_factor })
}

fn check_params(surface: &PantsSurface, params: &EdgeParams) -> Result<()> {
    match domain_violation(params, surface)? {
        Some(why) => Err(Error::Domain(why)),
        None => Ok(()),
    }
}

fn interior_target(surface: &PantsSurface, edge: usize) -> Result<()> {
    if surface.edge(edge).is_none() {
        return Err(Error::InvalidMove(format!("unknown edge {edge}")));
    }
    if surface.edge_kind(edge) != EdgeKind::Interior {
        return Err(Error::InvalidMove(format!("edge {edge} is a boundary edge")));
    }
    Ok(())
}

/// Drops a stored tree that is no longer spanning.
fn refresh_tree(mut s: PantsSurface) -> PantsSurface {
    if let Some(t) = &s.tree {
        let set: BTreeSet<usize> = t.iter().copied().collect();
        if s.check_tree(&set).is_err() {
            s.tree = None;
        }
    }
    s
}

fn reversed_graph(surface: &PantsSurface, edge: usize) -> PantsSurface {
    let mut s = surface.clone();
    for v in &mut s.vertices {
        for inc in &mut v.incident {
            if inc.0 == edge {
                inc.1 = inc.1.flip();
            }
        }
    }
    let e = s.edges.iter_mut().find(|e| e.id == edge).expect("edge exists");
    std::mem::swap(&mut e.tail, &mut e.head);
    s
}

/// Type I: reverse the orientation of an edge.
pub fn reverse_edge(surface: &PantsSurface, params: &EdgeParams, edge: usize) -> Result<(PantsSurface, EdgeParams)> {
    if surface.edge(edge).is_none() {
        return Err(Error::InvalidMove(format!("unknown edge {edge}")));
    }
    let new_surface = refresh_tree(reversed_graph(surface, edge));
    let mut out = params.clone();
    let e = params.e(edge);
    out.eigen.insert(edge, e.inv());
    if surface.edge_kind(edge) == EdgeKind::Interior {
        let (_, t) = reverse_edge_formula(local_eigen(surface, &params.eigen, edge), params.t(edge))?;
        out.twist.insert(edge, t);
    }
    Ok((new_surface, out))
}

/// Type II: the fat graph is unchanged, the twist picks up `e^{±2}`.
pub fn dehn_twist(
    surface: &PantsSurface,
    params: &EdgeParams,
    edge: usize,
    direction: Direction,
) -> Result<(PantsSurface, EdgeParams)> {
    interior_target(surface, edge)?;
    let mut out = params.clone();
    out.twist.insert(edge, dehn_twist_formula(params.e(edge), params.t(edge), direction).1);
    Ok((surface.clone(), out))
}

/// Type III: replace the tripod at a trivalent vertex by its right
/// half-twist. The counterclockwise order `(a, b, c)` becomes `(a, c, b)`;
/// in a frame for the vertex lift, the new lift keeps the fixed points of
/// `a` and `b` and moves that of `c` by the image of `b`. Twists of the
/// incident interior edges are read off the new fixed points, then the
/// ends at `b` and `c` get a right Dehn twist so that every edge leaving
/// the vertex at its tail sees exactly [`half_twist_formula`].
pub fn vertex_move(surface: &PantsSurface, params: &EdgeParams, vertex: usize) -> Result<(PantsSurface, EdgeParams)> {
    if surface.vertex(vertex).is_none() || !surface.is_trivalent(vertex) {
        return Err(Error::InvalidMove(format!("vertex {vertex} is not a trivalent vertex")));
    }
    let mut ns = surface.clone();
    ns.vertices.iter_mut().find(|v| v.id == vertex).expect("checked").incident.swap(1, 2);
    let ns = refresh_tree(ns);
    let sl = |pos| Slot { vertex, pos };
    let new_slot = |s: Slot| if s.vertex != vertex || s.pos == 0 { s } else { sl(3 - s.pos) };

    let base = crate::fixtures::default_base();
    let old: BTreeMap<Slot, ProjectivePoint> = (0..3).map(|k| (sl(k), base[k])).collect();
    let m = pants_rep(&PantsData::new(vertex_eigen(surface, &params.eigen, sl(0)), base)?)?;
    let shift = |s: Slot| if s == sl(2) { Some(m[1]) } else { None };
    let mut new_pts = BTreeMap::new();
    for k in 0..3 {
        let p = match shift(sl(k)) {
            Some(g) => g.apply(&base[k])?,
            None => base[k],
        };
        new_pts.insert(new_slot(sl(k)), p);
    }

    let mut out = params.clone();
    let mut seen = BTreeSet::new();
    for k in 0..3 {
        let s = sl(k);
        let (g, end) = surface.at(s);
        if surface.edge_kind(g) != EdgeKind::Interior || !seen.insert(g) {
            continue;
        }
        let o = surface.opposite(s);
        let far_old = across(surface, params, &old, s)?;
        let far_new = if o.vertex == vertex {
            // loop: the far lift is a deck image of the vertex lift
            let tmap = three_point_map(&triple(surface, &old, o), &far_old)?;
            let mut tm = tmap;
            if let Some(h) = shift(s) {
                tm = h * tm;
            }
            if let Some(h) = shift(o) {
                tm = tm * h.adjugate();
            }
            let tr = triple(&ns, &new_pts, new_slot(o));
            [tm.apply(&tr[0])?, tm.apply(&tr[1])?, tm.apply(&tr[2])?]
        } else if let Some(h) = shift(s) {
            [h.apply(&far_old[0])?, h.apply(&far_old[1])?, h.apply(&far_old[2])?]
        } else {
            far_old
        };
        let near = triple(&ns, &new_pts, new_slot(s));
        let x = match end {
            End::Tail => [near[0], near[1], near[2], far_new[1], far_new[2]],
            End::Head => [far_new[0], far_new[1], far_new[2], near[1], near[2]],
        };
        out.twist.insert(g, twist_best_conditioned(local_eigen(&ns, &out.eigen, g), &x)?);
    }
    for k in 1..3 {
        let (g, _) = surface.at(sl(k));
        if surface.edge_kind(g) == EdgeKind::Interior {
            let e = params.e(g);
            *out.twist.get_mut(&g).expect("interior") *= e * e;
        }
    }
    Ok((ns, out))
}

/// Type IV: relabel by a fat-graph automorphism preserving orientations.
pub fn graph_automorphism(
    surface: &PantsSurface,
    params: &EdgeParams,
    phi: &Automorphism,
) -> Result<(PantsSurface, EdgeParams)> {
    let vmap = |v: usize| phi.vertices.get(&v).copied().unwrap_or(v);
    let emap = |e: usize| phi.edges.get(&e).copied().unwrap_or(e);
    let vids: BTreeSet<usize> = surface.vertices.iter().map(|v| v.id).collect();
    let eids: BTreeSet<usize> = surface.edge_ids().into_iter().collect();
    let vimg: BTreeSet<usize> = vids.iter().map(|&v| vmap(v)).collect();
    let eimg: BTreeSet<usize> = eids.iter().map(|&e| emap(e)).collect();
    if vimg != vids || eimg != eids {
        return Err(Error::InvalidMove("relabeling is not a bijection of the graph".into()));
    }
    for e in &surface.edges {
        let img = surface.edge(emap(e.id)).expect("bijection");
        if img.tail != vmap(e.tail) || img.head != vmap(e.head) {
            return Err(Error::InvalidMove(format!("edge {} is not carried to an edge with matching ends", e.id)));
        }
    }
    for v in &surface.vertices {
        let mapped: Vec<(usize, End)> = v.incident.iter().map(|&(e, end)| (emap(e), end)).collect();
        let target = &surface.vertex(vmap(v.id)).expect("bijection").incident;
        let n = target.len();
        if mapped.len() != n || !(0..n).any(|r| (0..n).all(|i| mapped[i] == target[(i + r) % n])) {
            return Err(Error::InvalidMove(format!("cyclic order at vertex {} is not preserved", v.id)));
        }
    }
    let mut out = EdgeParams::default();
    for (k, e) in &params.eigen {
        out.eigen.insert(emap(*k), *e);
    }
    for (k, t) in &params.twist {
        out.twist.insert(emap(*k), *t);
    }
    Ok((surface.clone(), out))
}

/// Fixed points of the central four-holed sphere in a frame where the
/// slots of P₁ from `f` carry `base`.
fn region_points(
    surface: &PantsSurface,
    params: &EdgeParams,
    edge: usize,
    base: [ProjectivePoint; 3],
) -> Result<BTreeMap<Slot, ProjectivePoint>> {
    let p1 = surface.slot_of(edge, End::Tail);
    let p2 = surface.slot_of(edge, End::Head);
    let [x1, x2, x3] = base;
    let (x4, x5) = propagate_forward(local_eigen(surface, &params.eigen, edge), params.t(edge), &x1, &x2, &x3)?;
    Ok(BTreeMap::from([
        (p1, x1),
        (surface.next(p1, 1), x2),
        (surface.next(p1, 2), x3),
        (p2, x1),
        (surface.next(p2, 1), x4),
        (surface.next(p2, 2), x5),
    ]))
}

fn triple(surface: &PantsSurface, pts: &BTreeMap<Slot, ProjectivePoint>, s: Slot) -> [ProjectivePoint; 3] {
    surface.ccw_from(s).map(|sl| pts[&sl])
}

/// Far-side triple (ccw from the opposite slot) across the edge at `s`.
fn across(
    surface: &PantsSurface,
    params: &EdgeParams,
    pts: &BTreeMap<Slot, ProjectivePoint>,
    s: Slot,
) -> Result<[ProjectivePoint; 3]> {
    let (g, end) = surface.at(s);
    let [a, b, c] = triple(surface, pts, s);
    let e = local_eigen(surface, &params.eigen, g);
    let (p, q) = match end {
        End::Tail => propagate_forward(e, params.t(g), &a, &b, &c)?,
        End::Head => propagate_backward(e, params.t(g), &a, &b, &c)?,
    };
    Ok([a, p, q])
}

/// Type V on a four-holed sphere around a non-loop interior edge.
pub fn elementary_four_holed_move(
    surface: &PantsSurface,
    params: &EdgeParams,
    edge: usize,
    branch: Option<C64>,
) -> Result<(PantsSurface, EdgeParams)> {
    interior_target(surface, edge)?;
    let p1 = surface.slot_of(edge, End::Tail);
    let p2 = surface.slot_of(edge, End::Head);
    if p1.vertex == p2.vertex {
        return Err(Error::InvalidMove(format!("edge {edge} is a loop; use the one-holed move")));
    }
    let e_loc = local_eigen(surface, &params.eigen, edge);
    let formula = elementary_four_holed(e_loc, params.t(edge), branch)?;

    // rewrite the graph
    let [s2, s3, s4, s5] = [surface.next(p1, 1), surface.next(p1, 2), surface.next(p2, 1), surface.next(p2, 2)];
    let inc = |s: Slot| surface.at(s);
    let mut ns = surface.clone();
    {
        let set = |ns: &mut PantsSurface, v: usize, pos: usize, val: (usize, End)| {
            ns.vertices.iter_mut().find(|x| x.id == v).expect("vertex").incident[pos] = val;
        };
        set(&mut ns, p1.vertex, (p1.pos + 1) % 3, inc(s5));
        set(&mut ns, p1.vertex, (p1.pos + 2) % 3, inc(s2));
        set(&mut ns, p2.vertex, (p2.pos + 1) % 3, inc(s3));
        set(&mut ns, p2.vertex, (p2.pos + 2) % 3, inc(s4));
        for (s, v) in [(s3, p2.vertex), (s5, p1.vertex)] {
            let (g, end) = inc(s);
            let ed = ns.edges.iter_mut().find(|x| x.id == g).expect("edge");
            match end {
                End::Tail => ed.tail = v,
                End::Head => ed.head = v,
            }
        }
    }
    let ns = refresh_tree(ns);
    let new_slot = |s: Slot| -> Slot {
        if s == s5 {
            ns.next(p1, 1)
        } else if s == s2 {
            ns.next(p1, 2)
        } else if s == s3 {
            ns.next(p2, 1)
        } else if s == s4 {
            ns.next(p2, 2)
        } else {
            s
        }
    };

    // fixed points before and after, in one frame
    let base = crate::fixtures::default_base();
    let old = region_points(surface, params, edge, base)?;
    let d1 = PantsData::new(vertex_eigen(surface, &params.eigen, p1), triple(surface, &old, p1))?;
    let d2 = PantsData::new(vertex_eigen(surface, &params.eigen, p2), triple(surface, &old, p2))?;
    let g3 = pants_rep(&d1)?[2];
    let g4 = pants_rep(&d2)?[1];
    let m = g3 * g4;
    let xp = eigen_point(&m, formula.eigen)?;
    let mut new_pts = BTreeMap::new();
    new_pts.insert(p1, xp);
    new_pts.insert(p2, xp);
    for s in [s2, s3, s4, s5] {
        new_pts.insert(new_slot(s), old[&s]);
    }

    let mut out = params.clone();
    out.eigen.insert(edge, formula.eigen);
    let x5 = triple(&ns, &new_pts, p1);
    let x4 = triple(&ns, &new_pts, p2);
    let t_new = twist_best_conditioned(local_eigen(&ns, &out.eigen, edge), &[x5[0], x5[1], x5[2], x4[1], x4[2]])?;
    if (t_new - formula.twist).norm() > 1e-6 * (1.0 + t_new.norm()) {
        return Err(Error::Degenerate(format!("new twist {t_new} disagrees with closed form {}", formula.twist)));
    }
    out.twist.insert(edge, formula.twist);

    // neighbours: far triples in the frame, carried along when the far
    // vertex is itself central
    let mut seen = BTreeSet::new();
    for s in [s2, s3, s4, s5] {
        let (g, end) = surface.at(s);
        if surface.edge_kind(g) != EdgeKind::Interior || !seen.insert(g) {
            continue;
        }
        let far_old = across(surface, params, &old, s)?;
        let o = surface.opposite(s);
        let o_new = new_slot(o);
        let far_new = if old.contains_key(&o) {
            let tmap = three_point_map(&triple(surface, &old, o), &far_old)?;
            let tr = triple(&ns, &new_pts, o_new);
            [tmap.apply(&tr[0])?, tmap.apply(&tr[1])?, tmap.apply(&tr[2])?]
        } else {
            far_old
        };
        let near = triple(&ns, &new_pts, new_slot(s));
        let x = match end {
            End::Tail => [near[0], near[1], near[2], far_new[1], far_new[2]],
            End::Head => [far_new[0], far_new[1], far_new[2], near[1], near[2]],
        };
        out.twist.insert(g, twist_best_conditioned(local_eigen(&ns, &out.eigen, g), &x)?);
    }
    check_params(&ns, &out)?;
    Ok((ns, out))
}

/// Type V on a one-holed torus around a loop edge.
pub fn elementary_one_holed_move(
    surface: &PantsSurface,
    params: &EdgeParams,
    edge: usize,
    branch: Option<C64>,
) -> Result<(PantsSurface, EdgeParams)> {
    interior_target(surface, edge)?;
    let p1 = surface.slot_of(edge, End::Tail);
    let p2 = surface.slot_of(edge, End::Head);
    if p1.vertex != p2.vertex {
        return Err(Error::InvalidMove(format!("edge {edge} is not a loop; use the four-holed move")));
    }
    if surface.next(p1, 2) != p2 {
        // the other cyclic order: reverse the loop around the move
        let (s1, q1) = reverse_edge(surface, params, edge)?;
        let (s2, q2) = elementary_one_holed_move(&s1, &q1, edge, branch.map(|b| b.inv()))?;
        return reverse_edge(&s2, &q2, edge);
    }
    let sb = surface.next(p1, 1);
    let (g, end) = surface.at(sb);
    if end == End::Head && surface.edge_kind(g) == EdgeKind::Interior {
        let (s1, q1) = reverse_edge(surface, params, g)?;
        let (s2, q2) = elementary_one_holed_move(&s1, &q1, edge, branch)?;
        return reverse_edge(&s2, &q2, g);
    }
    let e2 = if end == End::Tail { params.e(g) } else { params.e(g).inv() };
    let o = elementary_one_holed(params.e(edge), e2, params.t(edge), branch)?;
    let mut out = params.clone();
    out.eigen.insert(edge, o.eigen);
    out.twist.insert(edge, o.twist);
    if surface.edge_kind(g) == EdgeKind::Interior {
        out.twist.insert(g, o.boundary_factor * params.t(g));
    }
    check_params(surface, &out)?;
    Ok((surface.clone(), out))
}

pub fn apply_move(surface: &PantsSurface, params: &EdgeParams, mv: &Move) -> Result<(PantsSurface, EdgeParams)> {
    surface.ensure_valid()?;
    check_params(surface, params)?;
    let (s, p) = match &mv.kind {
        MoveKind::ReverseEdge => reverse_edge(surface, params, mv.target)?,
        MoveKind::DehnTwist(d) => dehn_twist(surface, params, mv.target, *d)?,
        MoveKind::VertexMove => vertex_move(surface, params, mv.target)?,
        MoveKind::GraphAutomorphism(phi) => graph_automorphism(surface, params, phi)?,
        MoveKind::ElementaryFourHoled => elementary_four_holed_move(surface, params, mv.target, mv.branch)?,
        MoveKind::ElementaryOneHoled => elementary_one_holed_move(surface, params, mv.target, mv.branch)?,
    };
    check_params(&s, &p)?;
    Ok((s, p))
}
