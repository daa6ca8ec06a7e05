//! Explicit generators of a surface-group representation from coordinates,
//! and the inverse extraction.
//!
//! Fixed points live on the slots of one lift of every trivalent vertex: the
//! lift of the maximal tree in the universal cover of the graph. They are
//! propagated outward from a base triple at the root vertex.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::coordinates::{
    adjusted, domain_violation, local_eigen, propagate_backward, propagate_forward, twist_best_conditioned,
    vertex_eigen, EdgeParams,
};
use crate::error::{Error, Result};
use crate::pants::{pants_rep, PantsData};
use crate::projective::{eigen_point, fixed_points_with_eigs, sl_normalize, three_point_map, MoebiusMap, ProjectivePoint, C64};
use crate::surface::{format_word, EdgeKind, End, Generator, Letter, PantsSurface, Presentation, Slot, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LiftMode {
    Psl,
    Sl,
}

#[derive(Clone, Debug)]
pub struct SurfaceRepresentation {
    pub presentation: Presentation,
    pub images: BTreeMap<Generator, MoebiusMap>,
    pub lift_mode: LiftMode,
    /// Sign of each `ρ(β_i)` relative to the `sl_normalize` convention.
    pub beta_signs: BTreeMap<usize, i8>,
    /// Fixed-point parameters on the lifted tree, by slot.
    pub fixed: BTreeMap<Slot, ProjectivePoint>,
}

impl SurfaceRepresentation {
    pub fn image(&self, g: Generator) -> MoebiusMap {
        self.images[&g]
    }

    pub fn eval(&self, word: &[Letter]) -> MoebiusMap {
        word.iter().fold(MoebiusMap::identity(), |acc, l| {
            let m = self.images[&l.gen];
            acc * if l.inverse { m.adjugate().scale(m.det().inv()) } else { m }
        })
    }

    pub fn trace(&self, word: &[Letter]) -> C64 {
        self.eval(word).trace()
    }
}

/// Fixed points on the lifted tree, with every vertex reached once.
pub fn lifted_fixed_points(
    surface: &PantsSurface,
    tree: &BTreeSet<usize>,
    params: &EdgeParams,
    base: &[ProjectivePoint; 3],
) -> Result<BTreeMap<Slot, ProjectivePoint>> {
    let root = surface.root();
    let mut fp = BTreeMap::new();
    for (pos, p) in base.iter().enumerate() {
        fp.insert(Slot { vertex: root, pos }, *p);
    }
    let mut queue = VecDeque::from([root]);
    let mut seen = BTreeSet::from([root]);
    while let Some(v) = queue.pop_front() {
        for pos in 0..3 {
            let s = Slot { vertex: v, pos };
            let (edge, end) = surface.at(s);
            if !tree.contains(&edge) || surface.edge_kind(edge) != EdgeKind::Interior {
                continue;
            }
            let o = surface.opposite(s);
            if !seen.insert(o.vertex) {
                continue;
            }
            let e = local_eigen(surface, &params.eigen, edge);
            let t = params.t(edge);
            let x1 = fp[&s];
            let (a, b) = (fp[&surface.next(s, 1)], fp[&surface.next(s, 2)]);
            let (p, q) = match end {
                End::Tail => propagate_forward(e, t, &x1, &a, &b)?,
                End::Head => propagate_backward(e, t, &x1, &a, &b)?,
            };
            fp.insert(o, x1);
            fp.insert(surface.next(o, 1), p);
            fp.insert(surface.next(o, 2), q);
            queue.push_back(o.vertex);
        }
    }
    Ok(fp)
}

fn triple_at(surface: &PantsSurface, fp: &BTreeMap<Slot, ProjectivePoint>, s: Slot) -> [ProjectivePoint; 3] {
    surface.ccw_from(s).map(|sl| fp[&sl])
}

/// `ρ(β)` for complement edge `u`: the map from the triple at the initial
/// vertex of the lift ending on the tree to the triple at the tree lift of
/// `u`'s tail.
pub fn beta_matrix(
    surface: &PantsSurface,
    params: &EdgeParams,
    fp: &BTreeMap<Slot, ProjectivePoint>,
    u: usize,
) -> Result<MoebiusMap> {
    let plus = triple_at(surface, fp, surface.slot_of(u, End::Tail));
    let [x1, x4, x5] = triple_at(surface, fp, surface.slot_of(u, End::Head));
    let (x2, x3) = propagate_backward(local_eigen(surface, &params.eigen, u), params.t(u), &x1, &x4, &x5)?;
    three_point_map(&[x1, x2, x3], &plus)
}

/// Same element computed from the terminal vertices of the two lifts.
pub fn beta_matrix_terminal(
    surface: &PantsSurface,
    params: &EdgeParams,
    fp: &BTreeMap<Slot, ProjectivePoint>,
    u: usize,
) -> Result<MoebiusMap> {
    let [x1, x2, x3] = triple_at(surface, fp, surface.slot_of(u, End::Tail));
    let at_tree = triple_at(surface, fp, surface.slot_of(u, End::Head));
    let (x4, x5) = propagate_forward(local_eigen(surface, &params.eigen, u), params.t(u), &x1, &x2, &x3)?;
    three_point_map(&at_tree, &[x1, x4, x5])
}

/// Pants-group images at every lifted vertex, by slot.
pub fn slot_matrices(
    surface: &PantsSurface,
    params: &EdgeParams,
    fp: &BTreeMap<Slot, ProjectivePoint>,
) -> Result<BTreeMap<Slot, MoebiusMap>> {
    let mut out = BTreeMap::new();
    for v in surface.trivalent_ids() {
        let s0 = Slot { vertex: v, pos: 0 };
        let data = PantsData::new(vertex_eigen(surface, &params.eigen, s0), triple_at(surface, fp, s0))?;
        let m = pants_rep(&data)?;
        for (pos, mm) in m.into_iter().enumerate() {
            out.insert(Slot { vertex: v, pos }, mm);
        }
    }
    Ok(out)
}

pub fn build(
    surface: &PantsSurface,
    tree: &BTreeSet<usize>,
    params: &EdgeParams,
    base: &[ProjectivePoint; 3],
    lift_mode: LiftMode,
) -> Result<SurfaceRepresentation> {
    if let Some(why) = domain_violation(params, surface)? {
        return Err(Error::Domain(why));
    }
    for i in 0..3 {
        if base[i].approx_eq(&base[(i + 1) % 3], 1e-12) {
            return Err(Error::Coincident);
        }
    }
    let presentation = surface.presentation(tree)?;
    let fp = lifted_fixed_points(surface, tree, params, base)?;
    let mats = slot_matrices(surface, params, &fp)?;
    let mut images = BTreeMap::new();
    for a in presentation.alphas.iter().chain(&presentation.deltas) {
        images.insert(a.gen, mats[&a.slot]);
    }
    let mut beta_signs = BTreeMap::new();
    for (i, &u) in presentation.betas.iter().enumerate() {
        let b = sl_normalize(&beta_matrix(surface, params, &fp, u)?)?;
        images.insert(Generator::Beta(i + 1), b);
        beta_signs.insert(i + 1, 1);
    }
    Ok(SurfaceRepresentation { presentation, images, lift_mode, beta_signs, fixed: fp })
}

/// `build` with the stored or default tree and the default base triple.
pub fn build_default(surface: &PantsSurface, params: &EdgeParams) -> Result<SurfaceRepresentation> {
    let tree = surface.tree_or_default()?;
    build(surface, &tree, params, &crate::fixtures::default_base(), LiftMode::Sl)
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationResidual {
    pub relation: String,
    pub residual: f64,
}

pub fn verify_relations(rep: &SurfaceRepresentation) -> Vec<RelationResidual> {
    rep.presentation
        .relations()
        .iter()
        .map(|w| {
            let m = rep.eval(w);
            let residual = match rep.lift_mode {
                LiftMode::Sl => m.dist_to_pm_identity(),
                LiftMode::Psl => m.dist_to_scalar(),
            };
            RelationResidual { relation: format_word(w), residual }
        })
        .collect()
}

pub fn max_residual(rep: &SurfaceRepresentation) -> f64 {
    verify_relations(rep).iter().map(|r| r.residual).fold(0.0, f64::max)
}

/// How to pick the eigenvalue of each curve image.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Branch {
    /// The root with `|e| > 1` (ties: `arg e ∈ [0, π)`).
    Principal,
    /// The reciprocal of the principal root.
    Inverse,
    /// The root closest to a hint; in PSL mode also across sign.
    Near(C64),
}

/// Slot matrices of every lifted vertex expressed through the generators.
pub fn slot_images(rep: &SurfaceRepresentation) -> BTreeMap<Slot, MoebiusMap> {
    rep.presentation.slot_words.iter().map(|(s, w)| (*s, rep.eval(w))).collect()
}

pub fn recover_coordinates(
    rep: &SurfaceRepresentation,
    surface: &PantsSurface,
    tree: &BTreeSet<usize>,
    eigen_choice: &BTreeMap<usize, Branch>,
) -> Result<EdgeParams> {
    let pres = surface.presentation(tree)?;
    if pres.betas != rep.presentation.betas {
        return Err(Error::Schema("representation built on a different tree".into()));
    }
    let mats: BTreeMap<Slot, MoebiusMap> = pres.slot_words.iter().map(|(s, w)| (*s, rep.eval(w))).collect();
    for v in surface.trivalent_ids() {
        let a = mats[&Slot { vertex: v, pos: 0 }];
        let b = mats[&Slot { vertex: v, pos: 1 }];
        let comm = a * b * a.adjugate() * b.adjugate();
        let scale = (a.det() * b.det()).norm();
        if (comm.trace() / scale - 2.0).norm() < 1e-9 {
            return Err(Error::Reducible(v));
        }
    }
    let mut params = EdgeParams::default();
    for edge in surface.edge_ids() {
        let tail = surface.slot_of(edge, End::Tail);
        let m = if surface.is_trivalent(tail.vertex) {
            mats[&tail]
        } else {
            mats[&surface.slot_of(edge, End::Head)].adjugate()
        };
        let m = if rep.lift_mode == LiftMode::Psl { sl_normalize(&m)? } else { m };
        let (_, lam, _) = fixed_points_with_eigs(&m).map_err(|_| Error::Parabolic(format!("curve of edge {edge}")))?;
        let branch = eigen_choice.get(&edge).copied().unwrap_or(Branch::Principal);
        let e = match branch {
            Branch::Principal => lam,
            Branch::Inverse => lam.inv(),
            Branch::Near(h) => {
                let mut cands = vec![lam, lam.inv()];
                if rep.lift_mode == LiftMode::Psl {
                    cands.extend([-lam, -lam.inv()]);
                }
                cands.into_iter().min_by(|a, b| (a - h).norm().total_cmp(&(b - h).norm())).expect("nonempty")
            }
        };
        params.eigen.insert(edge, e);
    }
    let mut fixed = BTreeMap::new();
    for (s, m) in &mats {
        let m = if rep.lift_mode == LiftMode::Psl { signed_like(m, adjusted(surface, &params.eigen, *s)) } else { *m };
        fixed.insert(*s, eigen_point(&m, adjusted(surface, &params.eigen, *s))?);
    }
    for edge in surface.interior_edges() {
        let tail = surface.slot_of(edge, End::Tail);
        let head = surface.slot_of(edge, End::Head);
        let [x1, x2, x3] = surface.ccw_from(tail).map(|s| fixed[&s]);
        let (x4, x5) = match pres.betas.iter().position(|&u| u == edge) {
            None => (fixed[&surface.next(head, 1)], fixed[&surface.next(head, 2)]),
            Some(i) => {
                let b = rep.image(Generator::Beta(i + 1));
                (b.apply(&fixed[&surface.next(head, 1)])?, b.apply(&fixed[&surface.next(head, 2)])?)
            }
        };
        let e = local_eigen(surface, &params.eigen, edge);
        params.twist.insert(edge, twist_best_conditioned(e, &[x1, x2, x3, x4, x5])?);
    }
    Ok(params)
}

/// `±m`, whichever has trace closer to `e + e⁻¹`.
fn signed_like(m: &MoebiusMap, e: C64) -> MoebiusMap {
    let m = sl_normalize(m).unwrap_or(*m);
    let want = e + e.inv();
    if (m.trace() - want).norm() <= (m.trace() + want).norm() {
        m
    } else {
        m.neg()
    }
}

/// Branch map reproducing the given eigenvalues exactly.
pub fn matching_branches(params: &EdgeParams) -> BTreeMap<usize, Branch> {
    params.eigen.iter().map(|(k, e)| (*k, Branch::Near(*e))).collect()
}

/// Sign of the lifted one-relator product of a closed surface.
pub fn stiefel_whitney(rep: &SurfaceRepresentation) -> Result<i8> {
    stiefel_whitney_with_lifts(rep, &BTreeMap::new())
}

/// As `stiefel_whitney`, negating the lifts of the listed generators first.
pub fn stiefel_whitney_with_lifts(rep: &SurfaceRepresentation, negate: &BTreeMap<Generator, bool>) -> Result<i8> {
    if !rep.presentation.deltas.is_empty() {
        return Err(Error::Domain("Stiefel–Whitney sign needs a closed surface".into()));
    }
    let word = rep.presentation.one_relator_word();
    let mut m = MoebiusMap::identity();
    for l in &word {
        let mut g = sl_normalize(&rep.images[&l.gen])?;
        if negate.get(&l.gen).copied().unwrap_or(false) {
            g = g.neg();
        }
        m = m * if l.inverse { g.adjugate() } else { g };
    }
    let id = MoebiusMap::identity();
    Ok(if (m - id).norm() <= (m + id).norm() { 1 } else { -1 })
}

pub fn act_beta_signs(rep: &SurfaceRepresentation, signs: &BTreeMap<usize, i8>) -> Result<SurfaceRepresentation> {
    if rep.lift_mode != LiftMode::Sl {
        return Err(Error::Domain("β sign action is trivial in PSL mode".into()));
    }
    let mut out = rep.clone();
    for (&i, &s) in signs {
        let g = Generator::Beta(i);
        let m = *out.images.get(&g).ok_or_else(|| Error::Schema(format!("no generator beta{i}")))?;
        if s < 0 {
            out.images.insert(g, m.neg());
            *out.beta_signs.get_mut(&i).expect("sign present") *= -1;
        }
    }
    Ok(out)
}

/// Generators, their pairwise products, and the prefixes of every relation.
pub fn canonical_words(p: &Presentation) -> Vec<Word> {
    let gens = p.generators();
    let mut out: Vec<Word> = gens.iter().map(|g| vec![Letter::new(*g)]).collect();
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            out.push(vec![Letter::new(gens[i]), Letter::new(gens[j])]);
        }
    }
    for r in p.relations() {
        for k in 2..r.len() {
            out.push(r[..k].to_vec());
        }
    }
    out
}

/// Squared traces of `canonical_words`, normalized per image determinant.
pub fn squared_trace_spectrum(rep: &SurfaceRepresentation, words: &[Word]) -> Vec<C64> {
    words
        .iter()
        .map(|w| {
            let m = rep.eval(w);
            m.trace() * m.trace() / m.det()
        })
        .collect()
}
