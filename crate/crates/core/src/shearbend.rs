//! Exponential shear-bend coordinates: edge parameters of the ideal
//! triangulation of a pants, ideal-tetrahedron edge parameters, gluing
//! equations and the one-holed torus conversion.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::projective::{guard, MoebiusMap, C64};

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

fn nonzero(z: C64, name: &str) -> Result<C64> {
    if !z.is_finite() || z.norm() == 0.0 {
        return Err(Error::Degenerate(name.to_string()));
    }
    Ok(z)
}

/// `p_i = e_{i+2}/(e_i e_{i+1})`, the parameter of the edge spiralling
/// around `c_i` and `c_{i+1}`.
pub fn pants_shear_params(e: [C64; 3]) -> Result<[C64; 3]> {
    for (k, z) in e.iter().enumerate() {
        nonzero(*z, &format!("e{}", k + 1))?;
    }
    Ok([0, 1, 2].map(|i| e[(i + 2) % 3] / (e[i] * e[(i + 1) % 3])))
}

/// Eigenvalues from the three edge parameters. The two edges at `c_i`
/// multiply to `1/e_i²`; `e₁`, `e₂` take the principal root and `e₃` is
/// fixed by `p₁`, so the answer is determined up to the sign action.
pub fn recover_pants_eigen(p: [C64; 3]) -> Result<[C64; 3]> {
    for (k, z) in p.iter().enumerate() {
        nonzero(*z, &format!("p{}", k + 1))?;
    }
    let e1 = (p[2] * p[0]).inv().sqrt();
    let e2 = (p[0] * p[1]).inv().sqrt();
    Ok([e1, e2, p[0] * e1 * e2])
}

/// `(z, 1/(1−z), 1−1/z)`: the parameters of the edges `[z₀z₁]`, `[z₀z₂]`,
/// `[z₀z₃]` of an ideal tetrahedron; opposite edges agree.
pub fn tetrahedron_edge_params(z: C64) -> Result<[C64; 3]> {
    if !z.is_finite() || z == C64::new(0.0, 0.0) || z == one() {
        return Err(Error::Domain(format!("tetrahedron parameter {z} must avoid 0, 1")));
    }
    Ok([z, (one() - z).inv(), one() - z.inv()])
}

/// Which of the three edge parameters of a tetrahedron.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeSlot {
    Z,
    OneOverOneMinusZ,
    OneMinusOneOverZ,
}

/// `sign · factor · Π z_i^{r′_i} (1−z_i)^{r″_i} = 1`.
///
/// `factor` carries parameters of edges that are not tetrahedron edges
/// (free faces glued to the surface layer); it is 1 for a closed gluing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GluingRow {
    pub sign: i8,
    pub r1: Vec<i64>,
    pub r2: Vec<i64>,
    #[serde(default = "one")]
    pub factor: C64,
}

impl GluingRow {
    pub fn empty(n: usize, sign: i8) -> Self {
        GluingRow { sign, r1: vec![0; n], r2: vec![0; n], factor: one() }
    }

    /// The row for a product of edge parameters around an edge.
    pub fn from_edge_parameters(n: usize, around: &[(usize, EdgeSlot)], factor: C64) -> Result<Self> {
        let mut row = GluingRow { factor, ..GluingRow::empty(n, 1) };
        for &(i, slot) in around {
            if i >= n {
                return Err(Error::Schema(format!("gluing row references tetrahedron {i} of {n}")));
            }
            match slot {
                EdgeSlot::Z => row.r1[i] += 1,
                EdgeSlot::OneOverOneMinusZ => row.r2[i] -= 1,
                // 1 − 1/z = −(1−z)/z
                EdgeSlot::OneMinusOneOverZ => {
                    row.sign = -row.sign;
                    row.r1[i] -= 1;
                    row.r2[i] += 1;
                }
            }
        }
        Ok(row)
    }
}

/// `±factor·Πz_i^{r′_i}(1−z_i)^{r″_i} − 1`.
pub fn evaluate_gluing(row: &GluingRow, z: &[C64]) -> Result<C64> {
    if row.r1.len() != z.len() || row.r2.len() != z.len() {
        return Err(Error::Schema(format!(
            "gluing row has {}/{} exponents for {} tetrahedra",
            row.r1.len(),
            row.r2.len(),
            z.len()
        )));
    }
    if row.sign != 1 && row.sign != -1 {
        return Err(Error::Schema(format!("gluing sign {} must be ±1", row.sign)));
    }
    let mut v = row.factor * f64::from(row.sign);
    for (i, zi) in z.iter().enumerate() {
        tetrahedron_edge_params(*zi)?;
        v *= zi.powi(row.r1[i] as i32) * (one() - zi).powi(row.r2[i] as i32);
    }
    Ok(v - 1.0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShearEdge {
    pub name: String,
    pub param: C64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tetrahedron {
    /// Labels of the ideal vertices in the order defining `z`.
    pub vertices: [String; 4],
    pub z: C64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShearTriangulation {
    pub edges: Vec<ShearEdge>,
    pub tetrahedra: Vec<Tetrahedron>,
    pub gluing: Vec<GluingRow>,
}

impl ShearTriangulation {
    pub fn validate(&self) -> Result<()> {
        for t in &self.tetrahedra {
            tetrahedron_edge_params(t.z)?;
        }
        let n = self.tetrahedra.len();
        for row in &self.gluing {
            if row.r1.len() != n || row.r2.len() != n {
                return Err(Error::Schema(format!("gluing row does not match {n} tetrahedra")));
            }
        }
        Ok(())
    }

    pub fn residuals(&self) -> Result<Vec<C64>> {
        let z: Vec<C64> = self.tetrahedra.iter().map(|t| t.z).collect();
        self.gluing.iter().map(|row| evaluate_gluing(row, &z)).collect()
    }
}

/// Shear-bend data of a one-holed torus.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OneHoledShear {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub z1: C64,
    pub z2: C64,
}

/// The one-holed torus conversion from `(e₁, e₂, t₁)`.
pub fn one_holed_to_shear(e1: C64, e2: C64, t1: C64) -> Result<OneHoledShear> {
    nonzero(e1, "e1")?;
    nonzero(e2, "e2")?;
    nonzero(t1, "t1")?;
    let s = e1 * e1;
    let d = guard(t1 * s + 1.0, 1.0 + (t1 * s).norm(), "t1 e1^2 + 1")?;
    let f = guard(one() - s, 1.0 + s.norm(), "1 - e1^2")?;
    let p = guard(t1 + 1.0, 1.0 + t1.norm(), "t1 + 1")?;
    Ok(OneHoledShear {
        a: -s * p * p / (t1 * f * f),
        b: d * d / (s * e2 * p * p),
        c: -t1 * f * f / (d * d),
        z1: f / d,
        z2: -t1 * f / d,
    })
}

/// The two tetrahedra and both gluing relations for the one-holed torus.
pub fn one_holed_triangulation(e1: C64, e2: C64, t1: C64) -> Result<ShearTriangulation> {
    let sh = one_holed_to_shear(e1, e2, t1)?;
    let s = e1 * e1;
    let edges = [("a", sh.a), ("b", sh.b), ("c", sh.c)]
        .into_iter()
        .map(|(name, param)| ShearEdge { name: name.into(), param })
        .collect();
    let tet = |v: [&str; 4], z| Tetrahedron { vertices: v.map(String::from), z };
    let tetrahedra = vec![tet(["0", "inf", "1", "x"], sh.z1), tet(["0", "inf", "x", "y"], sh.z2)];
    use EdgeSlot::*;
    // (1/(1−z₁))·z₂·(1−1/z₂)·(−e₁²) and (1−1/z₁)·z₁·(1/(1−z₂))·(−1/e₁²)
    let gluing = vec![
        GluingRow::from_edge_parameters(2, &[(0, OneOverOneMinusZ), (1, Z), (1, OneMinusOneOverZ)], -s)?,
        GluingRow::from_edge_parameters(2, &[(0, OneMinusOneOverZ), (0, Z), (1, OneOverOneMinusZ)], -s.inv())?,
    ];
    Ok(ShearTriangulation { edges, tetrahedra, gluing })
}

/// `(ρ(α)⁻¹, ρ(β))` from the edge parameters, principal square roots.
pub fn shear_rep_one_holed(a: C64, b: C64, c: C64) -> Result<(MoebiusMap, MoebiusMap)> {
    nonzero(a, "a")?;
    nonzero(b, "b")?;
    nonzero(c, "c")?;
    let ra = (a * c).sqrt();
    let rb = (a * b).sqrt();
    let alpha_inv = MoebiusMap::new((c - 1.0) / ra, -c / ra, a * c / ra, -a * c / ra);
    let beta = MoebiusMap::new(rb.inv(), -rb.inv(), a / rb, a * (b - 1.0) / rb);
    Ok((alpha_inv, beta))
}

/// `(tr²ρ(α), tr²ρ(β)) = ((ca−c+1)²/(ca), (ab−a+1)²/(ab))`.
pub fn shear_traces_squared(a: C64, b: C64, c: C64) -> Result<(C64, C64)> {
    nonzero(a, "a")?;
    nonzero(b, "b")?;
    nonzero(c, "c")?;
    let ta = c * a - c + 1.0;
    let tb = a * b - a + 1.0;
    Ok((ta * ta / (c * a), tb * tb / (a * b)))
}
