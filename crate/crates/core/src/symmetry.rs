//! Eigenvalue-branch flips and the sign group acting on coordinates.

use std::collections::BTreeMap;

use crate::coordinates::{domain_violation, local_eigen, EdgeParams};
use crate::error::{Error, Result};
use crate::projective::{guard, C64};
use crate::surface::{End, PantsSurface, Slot};

/// Where a flipped edge appears in the local picture of each interior edge.
#[derive(Clone, Debug, PartialEq)]
pub struct FlipAction {
    pub edge: usize,
    /// Interior edge → local positions 1..=4 (0-based into `e[1..5]`) holding `edge`.
    pub context: BTreeMap<usize, Vec<usize>>,
}

impl FlipAction {
    pub fn new(surface: &PantsSurface, edge: usize) -> Result<Self> {
        if surface.edge(edge).is_none() {
            return Err(Error::Schema(format!("unknown edge {edge}")));
        }
        let mut context = BTreeMap::new();
        for f in surface.interior_edges() {
            let p1 = surface.slot_of(f, End::Tail);
            let p2 = surface.slot_of(f, End::Head);
            let slots = [surface.next(p1, 1), surface.next(p1, 2), surface.next(p2, 1), surface.next(p2, 2)];
            let hits: Vec<usize> = (0..4).filter(|&k| surface.at(slots[k]).0 == edge).map(|k| k + 1).collect();
            if f == edge || !hits.is_empty() {
                context.insert(f, hits);
            }
        }
        Ok(FlipAction { edge, context })
    }

    pub fn apply(&self, params: &EdgeParams, surface: &PantsSurface) -> Result<EdgeParams> {
        let mut out = params.clone();
        for (&f, hits) in &self.context {
            let e = local_eigen(surface, &params.eigen, f);
            let mut factor = C64::new(1.0, 0.0);
            for &k in hits {
                factor *= slot_factor(e, k)?;
            }
            let t = factor * params.t(f);
            out.twist.insert(f, if f == self.edge { t.inv() } else { t });
        }
        let e = params.e(self.edge);
        out.eigen.insert(self.edge, e.inv());
        Ok(out)
    }
}

/// Twist multiplier when the eigenvalue at local position `k` is inverted.
fn slot_factor(e: [C64; 5], k: usize) -> Result<C64> {
    let [e1, e2, e3, e4, e5] = e;
    let one = C64::new(1.0, 0.0);
    let ratio = |a: C64, b: C64, c: C64, d: C64| -> Result<C64> {
        let s = 1.0 + e.iter().map(|z| z.norm()).fold(0.0, f64::max).powi(3);
        let den = guard(b * d, s, "flip factor denominator")?;
        Ok(a * c / den)
    };
    match k {
        1 => ratio(e2 * e3 - e1, one - e1 * e2 * e3, e1 * e3 - e2, e1 * e2 - e3),
        4 => ratio(e4 * e5 - e1, one - e1 * e4 * e5, e1 * e4 - e5, e1 * e5 - e4),
        _ => Ok(one),
    }
}

/// Replaces `e` at the edge by `e⁻¹` and rescales the adjacent twists.
pub fn flip_eigenvalue(params: &EdgeParams, surface: &PantsSurface, edge: usize) -> Result<EdgeParams> {
    if let Some(why) = domain_violation(params, surface)? {
        return Err(Error::Domain(why));
    }
    FlipAction::new(surface, edge)?.apply(params, surface)
}

/// Incidence count mod 2 of each edge at each trivalent vertex.
fn vertex_rows(surface: &PantsSurface, edges: &[usize]) -> Vec<Vec<u8>> {
    surface
        .trivalent_ids()
        .into_iter()
        .map(|v| {
            let mut row = vec![0u8; edges.len()];
            for pos in 0..3 {
                let (e, _) = surface.at(Slot { vertex: v, pos });
                let k = edges.iter().position(|&x| x == e).expect("edge listed");
                row[k] ^= 1;
            }
            row
        })
        .collect()
}

/// A basis of the sign vectors whose product is 1 at every trivalent vertex.
pub fn epsilon_basis(surface: &PantsSurface) -> Vec<BTreeMap<usize, i8>> {
    let edges = surface.edge_ids();
    let n = edges.len();
    let mut rows = vertex_rows(surface, &edges);
    // reduced row echelon form over GF(2)
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] == 1) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][col] == 1 {
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut bits = vec![0u8; n];
        bits[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            bits[pc] = rows[i][free];
        }
        basis.push(edges.iter().zip(bits).map(|(&e, b)| (e, if b == 1 { -1 } else { 1 })).collect());
    }
    basis
}

pub fn satisfies_vertex_condition(surface: &PantsSurface, eps: &BTreeMap<usize, i8>) -> bool {
    surface.trivalent_ids().into_iter().all(|v| {
        (0..3).map(|pos| eps.get(&surface.at(Slot { vertex: v, pos }).0).copied().unwrap_or(1)).product::<i8>() == 1
    })
}

/// `e_i ↦ ε_i e_i`; twists unchanged.
pub fn act_epsilon(params: &EdgeParams, surface: &PantsSurface, eps: &BTreeMap<usize, i8>) -> Result<EdgeParams> {
    for (k, s) in eps {
        if surface.edge(*k).is_none() || !(*s == 1 || *s == -1) {
            return Err(Error::Schema(format!("bad sign entry {k}: {s}")));
        }
    }
    if !satisfies_vertex_condition(surface, eps) {
        return Err(Error::Domain("sign vector violates the vertex product condition".into()));
    }
    let mut out = params.clone();
    for (k, s) in eps {
        if let Some(e) = out.eigen.get_mut(k) {
            *e *= *s as f64;
        }
    }
    Ok(out)
}

/// Product of sign vectors.
pub fn combine(a: &BTreeMap<usize, i8>, b: &BTreeMap<usize, i8>) -> BTreeMap<usize, i8> {
    let mut out = a.clone();
    for (k, s) in b {
        *out.entry(*k).or_insert(1) *= s;
    }
    out
}
