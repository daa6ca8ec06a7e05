//! Points of the complex projective line and Möbius maps acting on them.
//!
//! Points are homogeneous pairs so that ∞ = (1, 0) is exact. Maps are plain
//! 2×2 complex matrices; whether two of them are "equal" is up to the caller
//! (exact, up to sign, or up to scalar).

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Default tolerance for projective comparisons.
pub const DEFAULT_EPS: f64 = 1e-9;
/// Relative determinant threshold below which a matrix counts as singular.
pub const SINGULAR_TOL: f64 = 1e-12;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn real(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Square root whose argument lies in [0, π).
pub fn sqrt_upper(z: C64) -> C64 {
    let s = z.sqrt();
    if s.im > 0.0 || (s.im == 0.0 && s.re >= 0.0) {
        s
    } else {
        -s
    }
}

/// Whether `arg(z)` lies in [0, π).
pub fn arg_in_upper(z: C64) -> bool {
    z.im > 0.0 || (z.im == 0.0 && z.re > 0.0)
}

/// Fails with `Degenerate(name)` when `val` is negligible against `scale`.
pub fn guard(val: C64, scale: f64, name: &str) -> Result<C64> {
    if !val.is_finite() || val.norm() <= 1e-9 * scale.max(f64::MIN_POSITIVE) {
        Err(Error::Degenerate(name.to_string()))
    } else {
        Ok(val)
    }
}

/// A point of CP¹ as a homogeneous pair `[num : den]`.
#[derive(Clone, Copy, Debug)]
pub struct ProjectivePoint {
    pub num: C64,
    pub den: C64,
}

impl ProjectivePoint {
    pub fn new(num: C64, den: C64) -> Result<Self> {
        if num.norm() == 0.0 && den.norm() == 0.0 {
            return Err(Error::Coincident);
        }
        Ok(ProjectivePoint { num, den })
    }

    pub fn finite(z: C64) -> Self {
        ProjectivePoint { num: z, den: C64::new(1.0, 0.0) }
    }

    pub fn infinity() -> Self {
        ProjectivePoint { num: C64::new(1.0, 0.0), den: C64::new(0.0, 0.0) }
    }

    pub fn zero() -> Self {
        Self::finite(C64::new(0.0, 0.0))
    }

    pub fn one() -> Self {
        Self::finite(C64::new(1.0, 0.0))
    }

    fn scale(&self) -> f64 {
        self.num.norm().max(self.den.norm())
    }

    pub fn is_infinite(&self, eps: f64) -> bool {
        self.den.norm() <= eps * self.num.norm()
    }

    /// Affine value, or `None` at ∞.
    pub fn to_complex(&self) -> Option<C64> {
        if self.is_infinite(1e-300) {
            None
        } else {
            Some(self.num / self.den)
        }
    }

    /// Rescaled so the larger component has modulus one.
    pub fn normalized(&self) -> Self {
        let s = self.scale();
        ProjectivePoint { num: self.num / s, den: self.den / s }
    }

    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        det(self, other).norm() < eps * self.scale() * other.scale()
    }
}

/// Homogeneous difference `p − q` (times the product of denominators).
pub fn det(p: &ProjectivePoint, q: &ProjectivePoint) -> C64 {
    p.num * q.den - q.num * p.den
}

fn distinct(p: &ProjectivePoint, q: &ProjectivePoint) -> Result<C64> {
    let d = det(p, q);
    if d.norm() <= 1e-12 * p.scale() * q.scale() {
        Err(Error::Coincident)
    } else {
        Ok(d)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_complex() {
            None => write!(f, "inf"),
            Some(z) => write!(f, "{z}"),
        }
    }
}

impl Serialize for ProjectivePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.to_complex() {
            None => s.serialize_str("inf"),
            Some(z) => [z.re, z.im].serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for ProjectivePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Tag(String),
            Pair([f64; 2]),
        }
        match Repr::deserialize(d)? {
            Repr::Tag(t) if t == "inf" => Ok(ProjectivePoint::infinity()),
            Repr::Tag(t) => Err(de::Error::custom(format!("unknown point tag {t:?}"))),
            Repr::Pair([re, im]) => Ok(ProjectivePoint::finite(C64::new(re, im))),
        }
    }
}

/// A 2×2 complex matrix `((a, b), (c, d))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MoebiusMap {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl MoebiusMap {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        MoebiusMap { a, b, c, d }
    }

    pub fn identity() -> Self {
        let o = C64::new(1.0, 0.0);
        let z = C64::new(0.0, 0.0);
        MoebiusMap::new(o, z, z, o)
    }

    pub fn diag(p: C64, q: C64) -> Self {
        let z = C64::new(0.0, 0.0);
        MoebiusMap::new(p, z, z, q)
    }

    pub fn entries(&self) -> [C64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> C64 {
        self.a + self.d
    }

    pub fn norm(&self) -> f64 {
        self.entries().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_singular(&self) -> bool {
        self.det().norm() < SINGULAR_TOL * self.norm().powi(2) || !self.det().is_finite()
    }

    pub fn scale(&self, s: C64) -> Self {
        MoebiusMap::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    pub fn neg(&self) -> Self {
        self.scale(C64::new(-1.0, 0.0))
    }

    /// Adjugate; equals the inverse for determinant one.
    pub fn adjugate(&self) -> Self {
        MoebiusMap::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_singular() {
            return Err(Error::Singular);
        }
        Ok(self.adjugate().scale(self.det().inv()))
    }

    pub fn apply(&self, p: &ProjectivePoint) -> Result<ProjectivePoint> {
        if self.is_singular() {
            return Err(Error::Singular);
        }
        Ok(apply_unchecked(self, p))
    }

    /// Frobenius distance to the nearer of `other` and `-other`.
    pub fn dist_up_to_sign(&self, other: &Self) -> f64 {
        let plus = (*self - *other).norm();
        let minus = (*self + *other).norm();
        plus.min(minus)
    }

    /// Equality as PGL elements: all 2×2 minors of the stacked entries vanish.
    pub fn pgl_eq(&self, other: &Self, eps: f64) -> bool {
        let p = self.entries();
        let q = other.entries();
        let scale = self.max_abs() * other.max_abs();
        for i in 0..4 {
            for j in (i + 1)..4 {
                if (p[i] * q[j] - p[j] * q[i]).norm() > eps * scale {
                    return false;
                }
            }
        }
        true
    }

    /// Distance to the closest of ±I, after no normalization.
    pub fn dist_to_pm_identity(&self) -> f64 {
        self.dist_up_to_sign(&MoebiusMap::identity())
    }

    /// Relative distance to the scalar matrices.
    pub fn dist_to_scalar(&self) -> f64 {
        let s = self.max_abs().max(f64::MIN_POSITIVE);
        let off = (self.b.norm_sqr() + self.c.norm_sqr() + (self.a - self.d).norm_sqr()).sqrt();
        off / s
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|z| z.is_finite())
    }
}

pub(crate) fn apply_unchecked(m: &MoebiusMap, p: &ProjectivePoint) -> ProjectivePoint {
    ProjectivePoint { num: m.a * p.num + m.b * p.den, den: m.c * p.num + m.d * p.den }.normalized()
}

impl Mul for MoebiusMap {
    type Output = MoebiusMap;
    fn mul(self, r: MoebiusMap) -> MoebiusMap {
        MoebiusMap::new(
            self.a * r.a + self.b * r.c,
            self.a * r.b + self.b * r.d,
            self.c * r.a + self.d * r.c,
            self.c * r.b + self.d * r.d,
        )
    }
}

impl std::ops::Sub for MoebiusMap {
    type Output = MoebiusMap;
    fn sub(self, r: MoebiusMap) -> MoebiusMap {
        MoebiusMap::new(self.a - r.a, self.b - r.b, self.c - r.c, self.d - r.d)
    }
}

impl std::ops::Add for MoebiusMap {
    type Output = MoebiusMap;
    fn add(self, r: MoebiusMap) -> MoebiusMap {
        MoebiusMap::new(self.a + r.a, self.b + r.b, self.c + r.c, self.d + r.d)
    }
}

impl Serialize for MoebiusMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let p = |z: C64| [z.re, z.im];
        [[p(self.a), p(self.b)], [p(self.c), p(self.d)]].serialize(s)
    }
}

impl<'de> Deserialize<'de> for MoebiusMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m: [[[f64; 2]; 2]; 2] = Deserialize::deserialize(d)?;
        let z = |v: [f64; 2]| C64::new(v[0], v[1]);
        Ok(MoebiusMap::new(z(m[0][0]), z(m[0][1]), z(m[1][0]), z(m[1][1])))
    }
}

pub fn apply(m: &MoebiusMap, p: &ProjectivePoint) -> Result<ProjectivePoint> {
    m.apply(p)
}

/// `[x0:x1:x2:x3] = (x3−x0)(x2−x1) / ((x3−x1)(x2−x0))`, homogeneously.
pub fn cross_ratio(
    x0: &ProjectivePoint,
    x1: &ProjectivePoint,
    x2: &ProjectivePoint,
    x3: &ProjectivePoint,
) -> Result<C64> {
    let pts = [x0, x1, x2, x3];
    for i in 0..4 {
        for j in (i + 1)..4 {
            distinct(pts[i], pts[j])?;
        }
    }
    Ok(det(x3, x0) * det(x2, x1) / (det(x3, x1) * det(x2, x0)))
}

/// The SL map fixing `x` with eigenvalue `e` and `y` with eigenvalue `e⁻¹`.
pub fn mobius_with_axis(e: C64, x: &ProjectivePoint, y: &ProjectivePoint) -> Result<MoebiusMap> {
    if e.norm() == 0.0 || !e.is_finite() {
        return Err(Error::Degenerate("e".into()));
    }
    let dp = distinct(x, y)?;
    let ei = e.inv();
    let (xn, xd, yn, yd) = (x.num, x.den, y.num, y.den);
    Ok(MoebiusMap::new(
        e * xn * yd - ei * yn * xd,
        (ei - e) * xn * yn,
        (e - ei) * xd * yd,
        ei * xn * yd - e * yn * xd,
    )
    .scale(dp.inv()))
}

/// `t²` such that `M(t; x, y)` sends `z1` to `z2`.
pub fn axis_transport_squared(
    x: &ProjectivePoint,
    y: &ProjectivePoint,
    z1: &ProjectivePoint,
    z2: &ProjectivePoint,
) -> Result<C64> {
    for z in [z1, z2] {
        distinct(x, z)?;
        distinct(y, z)?;
    }
    distinct(x, y)?;
    Ok(det(x, z1) * det(y, z2) / (det(x, z2) * det(y, z1)))
}

/// Map sending (0, ∞, 1) to (x1, x2, x3), up to scalar.
pub fn standard_frame(x1: &ProjectivePoint, x2: &ProjectivePoint, x3: &ProjectivePoint) -> Result<MoebiusMap> {
    distinct(x1, x2)?;
    distinct(x2, x3)?;
    distinct(x1, x3)?;
    let p = det(x3, x1);
    let q = det(x2, x3);
    let m = MoebiusMap::new(p * x2.num, q * x1.num, p * x2.den, q * x1.den);
    let s = m.max_abs();
    Ok(m.scale(C64::new(1.0 / s, 0.0)))
}

/// The unique PGL element sending `src` to `dst` componentwise.
pub fn three_point_map(src: &[ProjectivePoint; 3], dst: &[ProjectivePoint; 3]) -> Result<MoebiusMap> {
    let a = standard_frame(&src[0], &src[1], &src[2])?;
    let b = standard_frame(&dst[0], &dst[1], &dst[2])?;
    let m = b * a.adjugate();
    if m.is_singular() {
        return Err(Error::Singular);
    }
    let s = m.max_abs();
    Ok(m.scale(C64::new(1.0 / s, 0.0)))
}

/// Determinant-one representative with the sign fixed by the first
/// non-negligible row-major entry having argument in [0, π).
pub fn sl_normalize(m: &MoebiusMap) -> Result<MoebiusMap> {
    if m.is_singular() {
        return Err(Error::Singular);
    }
    let n = m.scale(sqrt_upper(m.det()).inv());
    let tol = 1e-12 * n.max_abs();
    for z in n.entries() {
        if z.norm() > tol {
            return Ok(if arg_in_upper(z) { n } else { n.neg() });
        }
    }
    Ok(n)
}

/// Fixed points and eigenvalue of an SL map: `(x, e, y)` with `x` the
/// eigenvalue-`e` fixed point. `e` is the root with `|e| > 1`, ties broken
/// by `arg e ∈ [0, π)`.
pub fn fixed_points_with_eigs(m: &MoebiusMap) -> Result<(ProjectivePoint, C64, ProjectivePoint)> {
    let tr = m.trace();
    let disc = tr * tr - 4.0;
    if disc.norm() < 1e-10 * (1.0 + tr.norm_sqr()) {
        return Err(Error::Parabolic(format!("trace {tr}")));
    }
    let r = sqrt_upper(disc);
    let e1 = (tr + r) / 2.0;
    let e2 = (tr - r) / 2.0;
    let (n1, n2) = (e1.norm(), e2.norm());
    let e = if (n1 - n2).abs() > 1e-12 * (n1 + n2) {
        if n1 > n2 { e1 } else { e2 }
    } else if arg_in_upper(e1) {
        e1
    } else {
        e2
    };
    let x = eigen_point(m, e)?;
    let y = eigen_point(m, tr - e)?;
    Ok((x, e, y))
}

/// Fixed point of `m` whose eigenvector has eigenvalue `lambda`.
pub fn eigen_point(m: &MoebiusMap, lambda: C64) -> Result<ProjectivePoint> {
    let r1 = (m.b, lambda - m.a);
    let r2 = (lambda - m.d, m.c);
    let n1 = r1.0.norm_sqr() + r1.1.norm_sqr();
    let n2 = r2.0.norm_sqr() + r2.1.norm_sqr();
    let (num, den) = if n1 >= n2 { r1 } else { r2 };
    Ok(ProjectivePoint::new(num, den)?.normalized())
}
