//! Representations of the pants group ⟨γ₁, γ₂, γ₃ | γ₁γ₂γ₃ = 1⟩ from
//! eigenvalues and one fixed point per boundary curve.

use crate::error::{Error, Result};
use crate::projective::{det, sqrt_upper, standard_frame, MoebiusMap, ProjectivePoint, C64};

/// Default relative tolerance for the admissibility inequalities.
pub const ADMISSIBLE_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug)]
pub struct PantsData {
    pub eigen: [C64; 3],
    pub fixed: [ProjectivePoint; 3],
}

impl PantsData {
    pub fn new(eigen: [C64; 3], fixed: [ProjectivePoint; 3]) -> Result<Self> {
        for e in eigen {
            if !valid_eigenvalue(e) {
                return Err(Error::Domain(format!("eigenvalue {e} is 0 or ±1")));
            }
        }
        for i in 0..3 {
            let (p, q) = (&fixed[i], &fixed[(i + 1) % 3]);
            if p.approx_eq(q, 1e-12) {
                return Err(Error::Coincident);
            }
        }
        Ok(PantsData { eigen, fixed })
    }
}

pub fn valid_eigenvalue(e: C64) -> bool {
    let tol = 1e-12;
    e.is_finite() && e.norm() > tol && (e - 1.0).norm() > tol && (e + 1.0).norm() > tol
}

/// `Σ c_k · P_k · (P_{k+1} − P_{k+2})`, homogeneously.
pub(crate) fn weighted_point(coef: [C64; 3], pts: [&ProjectivePoint; 3], name: &str) -> Result<ProjectivePoint> {
    let mut num = C64::new(0.0, 0.0);
    let mut den = C64::new(0.0, 0.0);
    let mut scale = 0.0f64;
    for k in 0..3 {
        let d = det(pts[(k + 1) % 3], pts[(k + 2) % 3]);
        let w = coef[k] * d;
        num += w * pts[k].num;
        den += w * pts[k].den;
        scale = scale.max(w.norm() * pts[k].num.norm().max(pts[k].den.norm()));
    }
    if num.norm().max(den.norm()) <= 1e-12 * scale || !(num.is_finite() && den.is_finite()) {
        return Err(Error::Degenerate(name.to_string()));
    }
    Ok(ProjectivePoint { num, den }.normalized())
}

/// The three products that must avoid 1, written as differences.
pub fn admissibility_gaps(e: [C64; 3]) -> [(C64, f64, &'static str); 4] {
    let [e1, e2, e3] = e;
    [
        (e1 - e2 * e3, e1.norm().max((e2 * e3).norm()), "e1 - e2e3"),
        (e2 - e3 * e1, e2.norm().max((e3 * e1).norm()), "e2 - e3e1"),
        (e3 - e1 * e2, e3.norm().max((e1 * e2).norm()), "e3 - e1e2"),
        (e1 * e2 * e3 - 1.0, (e1 * e2 * e3).norm().max(1.0), "1 - e1e2e3"),
    ]
}

pub fn is_admissible_triple_tol(e1: C64, e2: C64, e3: C64, tol: f64) -> bool {
    admissibility_gaps([e1, e2, e3]).iter().all(|(g, s, _)| g.norm() > tol * s)
}

/// No sign choice makes `e₁^{±1} e₂^{±1} e₃^{±1}` equal to one.
pub fn is_admissible_triple(e1: C64, e2: C64, e3: C64) -> bool {
    is_admissible_triple_tol(e1, e2, e3, ADMISSIBLE_TOL)
}

/// Images `(m₁, m₂, m₃)` in SL(2,C) with `m₁m₂m₃ = I` and `m_i` fixing
/// `x_i` with eigenvalue `e_i`.
pub fn pants_rep(data: &PantsData) -> Result<[MoebiusMap; 3]> {
    let [e1, e2, e3] = data.eigen;
    let [x1, x2, x3] = &data.fixed;
    // normalized frame: x1 -> 0, x2 -> ∞, x3 -> 1
    let n1 = MoebiusMap::new(e1.inv(), C64::new(0.0, 0.0), e1.inv() - e3 / e2, e1);
    let n2 = MoebiusMap::new(e2, e1 / e3 - e2, C64::new(0.0, 0.0), e2.inv());
    let n3 = (n1 * n2).adjugate();
    let a = standard_frame(x1, x2, x3)?;
    let a = a.scale(sqrt_upper(a.det()).inv());
    let ai = a.adjugate();
    Ok([a * n1 * ai, a * n2 * ai, a * n3 * ai])
}

/// The fixed point `y_i` of `m_i` with eigenvalue `e_i⁻¹` (index 0, 1 or 2).
pub fn other_fixed_point(index: usize, data: &PantsData) -> Result<ProjectivePoint> {
    let i = index % 3;
    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
    let e = data.eigen;
    let x = &data.fixed;
    weighted_point(
        [e[i] * e[k], e[j], e[i] * e[i] * e[j]],
        [&x[i], &x[k], &x[j]],
        "other fixed point (reducible triple)",
    )
}
