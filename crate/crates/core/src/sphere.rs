//! Geodesic triangles on the unit sphere.
//!
//! A triangle is given by its corners `a, b, c` plus an optional flag naming
//! the one side, if any, that runs along the major arc. Midpoints follow the
//! convention `alpha` on side `bc`, `beta` on `ca`, `gamma` on `ab`.
//!
//! Areas are oriented, defined modulo `4 pi` and reported in `(-2 pi, 2 pi]`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::area::OrientedArea;
use crate::error::{Error, Result};
use crate::linalg::{
    det3, dot_e, rotate_to_north, rotation_axis, AmbientVector, Rotation,
};
use crate::tolerance::Tolerances;

/// A point on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint(AmbientVector);

impl SpherePoint {
    /// Accepts `v` if `| |v|^2 - 1 | <= tol` and projects it onto the sphere.
    /// Vectors already unit to rounding level are kept bit for bit, so
    /// printed points replay exactly.
    pub fn new(v: AmbientVector, tol: f64) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::NonFinite);
        }
        let n2 = dot_e(v, v);
        if (n2 - 1.0).abs() > tol {
            return Err(Error::NotUnit { deviation: n2 - 1.0 });
        }
        if (n2 - 1.0).abs() <= 4.0 * f64::EPSILON {
            return Ok(Self(v));
        }
        Ok(Self(v.scale(1.0 / n2.sqrt())))
    }

    /// Projects a nonzero computed vector onto the sphere.
    pub(crate) fn normalize(v: AmbientVector) -> Self {
        Self(v.scale(1.0 / v.norm_e()))
    }

    pub fn north() -> Self {
        Self(AmbientVector::E3)
    }

    /// From polar angle `theta` (measured from the north pole) and
    /// azimuth `phi`.
    pub fn from_polar(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self(AmbientVector::new(st * cp, st * sp, ct))
    }

    /// `(theta, phi)` with `theta` in `[0, pi]` and `phi` in `(-pi, pi]`.
    pub fn polar(&self) -> (f64, f64) {
        let v = self.0;
        let theta = v.x.hypot(v.y).atan2(v.z);
        let mut phi = v.y.atan2(v.x);
        if phi <= -PI {
            phi += 2.0 * PI;
        }
        (theta, phi)
    }

    /// Inverse of [`SpherePoint::stereographic`].
    pub fn from_stereographic(z: Complex64) -> Self {
        let n = z.norm_sqr();
        let w = z.scale(2.0 / (n + 1.0));
        Self::normalize(AmbientVector::from_wh(w, (n - 1.0) / (n + 1.0)))
    }

    /// Stereographic coordinate `w / (1 - h)` projected from the north pole;
    /// `None` at the pole itself.
    pub fn stereographic(&self) -> Option<Complex64> {
        let d = 1.0 - self.0.z;
        (d > 0.0).then(|| self.0.w().unscale(d))
    }

    pub fn ambient(&self) -> AmbientVector {
        self.0
    }

    pub fn antipode(&self) -> Self {
        Self(-self.0)
    }

    pub fn rotated(&self, r: &Rotation) -> Self {
        Self::normalize(r.apply(self.0))
    }
}

/// One of the three sides of a triangle, named by its endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Bc,
    Ca,
    Ab,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::Bc, Side::Ca, Side::Ab];

    pub fn name(&self) -> &'static str {
        match self {
            Side::Bc => "bc",
            Side::Ca => "ca",
            Side::Ab => "ab",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereTriangle {
    pub a: SpherePoint,
    pub b: SpherePoint,
    pub c: SpherePoint,
    /// The side, if any, that is a major arc (longer than `pi`).
    pub major_arc: Option<Side>,
}

impl SphereTriangle {
    pub fn new(a: SpherePoint, b: SpherePoint, c: SpherePoint) -> Self {
        Self {
            a,
            b,
            c,
            major_arc: None,
        }
    }

    pub fn with_major_arc(self, side: Option<Side>) -> Self {
        Self {
            major_arc: side,
            ..self
        }
    }

    pub fn corners(&self) -> [SpherePoint; 3] {
        [self.a, self.b, self.c]
    }

    /// Largest coordinate difference between corresponding corners.
    pub fn corner_distance(&self, other: &SphereTriangle) -> f64 {
        self.corners()
            .iter()
            .zip(other.corners().iter())
            .map(|(p, q)| p.0.max_abs_diff(&q.0))
            .fold(0.0, f64::max)
    }

    pub fn rotated(&self, r: &Rotation) -> Self {
        Self {
            a: self.a.rotated(r),
            b: self.b.rotated(r),
            c: self.c.rotated(r),
            major_arc: self.major_arc,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereMidpoints {
    /// Midpoint of side `bc`.
    pub alpha: SpherePoint,
    /// Midpoint of side `ca`.
    pub beta: SpherePoint,
    /// Midpoint of side `ab`.
    pub gamma: SpherePoint,
}

impl SphereMidpoints {
    pub fn new(alpha: SpherePoint, beta: SpherePoint, gamma: SpherePoint) -> Self {
        Self { alpha, beta, gamma }
    }

    pub fn det3(&self) -> f64 {
        det3(self.alpha.0, self.beta.0, self.gamma.0)
    }

    /// `[<alpha,beta>, <beta,gamma>, <gamma,alpha>]`.
    pub fn inner_products(&self) -> [f64; 3] {
        [
            dot_e(self.alpha.0, self.beta.0),
            dot_e(self.beta.0, self.gamma.0),
            dot_e(self.gamma.0, self.alpha.0),
        ]
    }

    pub fn points(&self) -> [SpherePoint; 3] {
        [self.alpha, self.beta, self.gamma]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn of(x: f64) -> Self {
        if x < 0.0 {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    pub fn value(&self) -> f64 {
        match self {
            Sign::Positive => 1.0,
            Sign::Negative => -1.0,
        }
    }
}

/// How many of the pairwise midpoint inner products vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MidpointClass {
    /// No product vanishes; `eta` is the majority sign of the three.
    Regular { eta: Sign },
    /// Two corners are antipodal.
    OneZero,
    /// Two corners coincide and the third is their antipode.
    TwoZero,
    /// The midpoints form an orthonormal frame.
    Orthonormal,
}

impl MidpointClass {
    pub fn name(&self) -> &'static str {
        match self {
            MidpointClass::Regular { .. } => "regular",
            MidpointClass::OneZero => "one_zero",
            MidpointClass::TwoZero => "two_zero",
            MidpointClass::Orthonormal => "orthonormal",
        }
    }
}

impl fmt::Display for MidpointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification {
    pub class: MidpointClass,
    /// `[<alpha,beta>, <beta,gamma>, <gamma,alpha>]`.
    pub inner_products: [f64; 3],
}

fn antipodal(p: SpherePoint, q: SpherePoint, tol: &Tolerances) -> bool {
    (p.0 + q.0).norm_e() < tol.antipodal
}

/// Normalized average of two non-antipodal points: the midpoint of the
/// minor arc between them.
pub fn midpoint(p: SpherePoint, q: SpherePoint, tol: &Tolerances) -> Result<SpherePoint> {
    let s = p.0 + q.0;
    if s.norm_e() < tol.antipodal {
        return Err(Error::AntipodalPair);
    }
    Ok(SpherePoint::normalize(s))
}

/// Length of the minor arc from `p` to `q`, in `[0, pi]`.
pub fn side_length(p: SpherePoint, q: SpherePoint) -> f64 {
    // Same value as acos(<p,q>) but without its loss of precision near 0 and pi.
    2.0 * (p.0 - q.0).norm_e().atan2((p.0 + q.0).norm_e())
}

/// Midpoints of the three sides. A side flagged as major arc gets the
/// antipode of the normalized average, which is the midpoint of the
/// complementary arc.
pub fn midpoints_of(t: &SphereTriangle, tol: &Tolerances) -> Result<SphereMidpoints> {
    let side_mid = |p, q, side| -> Result<SpherePoint> {
        let m = midpoint(p, q, tol)?;
        Ok(if t.major_arc == Some(side) {
            m.antipode()
        } else {
            m
        })
    };
    Ok(SphereMidpoints {
        alpha: side_mid(t.b, t.c, Side::Bc)?,
        beta: side_mid(t.c, t.a, Side::Ca)?,
        gamma: side_mid(t.a, t.b, Side::Ab)?,
    })
}

fn check_no_antipodes(
    a: SpherePoint,
    b: SpherePoint,
    c: SpherePoint,
    tol: &Tolerances,
) -> Result<()> {
    if antipodal(a, b, tol) || antipodal(b, c, tol) || antipodal(c, a, tol) {
        Err(Error::AntipodalCorners)
    } else {
        Ok(())
    }
}

/// Oriented area of the triangle on `a, b, c` whose sides are all minor
/// arcs: `2 Arg(1 + <a,b> + <b,c> + <c,a> + i det(a,b,c))`.
pub fn area_corners(
    a: SpherePoint,
    b: SpherePoint,
    c: SpherePoint,
    tol: &Tolerances,
) -> Result<OrientedArea> {
    check_no_antipodes(a, b, c, tol)?;
    let re = 1.0 + dot_e(a.0, b.0) + dot_e(b.0, c.0) + dot_e(c.0, a.0);
    let im = det3(a.0, b.0, c.0);
    // |re + i im|^2 = 2 (1 + <a,b>)(1 + <b,c>)(1 + <c,a>)
    if re.hypot(im) < tol.antipodal * tol.antipodal {
        return Err(Error::DegenerateArg);
    }
    Ok(OrientedArea::sphere(2.0 * im.atan2(re)))
}

/// Oriented area of a triangle that may have one major-arc side.
///
/// With a major arc the triangle is cut at that side's midpoint `m` into
/// two all-minor triangles sharing the corner `m`, and their areas are
/// added.
pub fn triangle_area(t: &SphereTriangle, tol: &Tolerances) -> Result<OrientedArea> {
    let (a, b, c) = (t.a, t.b, t.c);
    let Some(side) = t.major_arc else {
        return area_corners(a, b, c, tol);
    };
    check_no_antipodes(a, b, c, tol)?;
    let m = midpoints_of(t, tol)?;
    // Rotate labels so the major side is ab with midpoint gamma.
    let (mid, p, q, r) = match side {
        Side::Ab => (m.gamma, a, b, c),
        Side::Bc => (m.alpha, b, c, a),
        Side::Ca => (m.beta, c, a, b),
    };
    let first = area_corners(mid, q, r, tol)?;
    let second = area_corners(mid, r, p, tol)?;
    Ok(OrientedArea::sphere(first.value() + second.value()))
}

/// `det(a,b,c) / sqrt(2 (1 + <a,b>)(1 + <b,c>)(1 + <c,a>))`, which equals
/// `sin(area / 2)` and the determinant of the midpoints.
pub fn sine_half_area(
    a: SpherePoint,
    b: SpherePoint,
    c: SpherePoint,
    tol: &Tolerances,
) -> Result<f64> {
    check_no_antipodes(a, b, c, tol)?;
    let denom = 2.0
        * (1.0 + dot_e(a.0, b.0))
        * (1.0 + dot_e(b.0, c.0))
        * (1.0 + dot_e(c.0, a.0));
    Ok(det3(a.0, b.0, c.0) / denom.sqrt())
}

/// Sorts a midpoint triple by how many pairwise inner products vanish.
pub fn classify_midpoints(m: &SphereMidpoints, zero_tol: f64) -> Classification {
    let inner_products = m.inner_products();
    let zeros = inner_products.iter().filter(|p| p.abs() < zero_tol).count();
    let class = match zeros {
        0 => {
            let positives = inner_products.iter().filter(|&&p| p > 0.0).count();
            MidpointClass::Regular {
                eta: if positives >= 2 {
                    Sign::Positive
                } else {
                    Sign::Negative
                },
            }
        }
        1 => MidpointClass::OneZero,
        2 => MidpointClass::TwoZero,
        _ => MidpointClass::Orthonormal,
    };
    Classification {
        class,
        inner_products,
    }
}

/// Oriented area of the triangle with the given side midpoints:
/// `exp(i area/2) = eta sqrt(1 - d^2) + i d` with `d = det(alpha, beta, gamma)`.
///
/// Orthonormal frames give `+-pi`. Triples with one or two vanishing
/// inner products admit no consistent area.
pub fn area_from_midpoints(m: &SphereMidpoints, tol: &Tolerances) -> Result<OrientedArea> {
    let cls = classify_midpoints(m, tol.zero);
    let d = m.det3();
    match cls.class {
        MidpointClass::Regular { eta } => {
            let cos_half = eta.value() * (1.0 - d * d).max(0.0).sqrt();
            Ok(OrientedArea::sphere(2.0 * d.atan2(cos_half)))
        }
        MidpointClass::Orthonormal => Ok(OrientedArea::sphere(PI.copysign(d))),
        class => Err(Error::SingularMidpoints { class }),
    }
}

fn require_regular(m: &SphereMidpoints, tol: &Tolerances) -> Result<(Sign, [f64; 3])> {
    let cls = classify_midpoints(m, tol.zero);
    match cls.class {
        MidpointClass::Regular { eta } => Ok((eta, cls.inner_products)),
        MidpointClass::Orthonormal => Err(Error::Undetermined),
        class => Err(Error::SingularMidpoints { class }),
    }
}

/// Recovers the corners from the midpoints via the fixed points of
/// `R_gamma o R_beta o R_alpha`, where `R_v` is the half turn about `v`.
///
/// Corner `b` is fixed by that rotation; then `c = R_alpha(b)` and
/// `a = R_gamma(b)`. The two antipodal fixed points give triangles whose
/// side lengths are complementary, and only one of them has at most one
/// major arc.
pub fn reconstruct(m: &SphereMidpoints, tol: &Tolerances) -> Result<SphereTriangle> {
    let (_, _) = require_regular(m, tol)?;
    let ra = Rotation::half_turn(m.alpha.0)?;
    let rb = Rotation::half_turn(m.beta.0)?;
    let rg = Rotation::half_turn(m.gamma.0)?;
    let composite = rg.after(&rb).after(&ra);
    let (mut b, _) = rotation_axis(&composite, tol.identity).map_err(|e| match e {
        Error::IdentityRotation => Error::Undetermined,
        e => e,
    })?;
    let mut c = ra.apply(b);
    let mut a = rg.apply(b);

    // b + c = 2 <alpha, b> alpha, so the side bc is a minor arc exactly when
    // <alpha, b> > 0; likewise for the other two sides.
    let mut halves = [dot_e(m.alpha.0, b), dot_e(m.beta.0, c), dot_e(m.gamma.0, b)];
    if halves.iter().any(|h| h.abs() < tol.zero) {
        return Err(Error::SingularMidpoints {
            class: classify_midpoints(m, tol.zero).class,
        });
    }
    if halves.iter().filter(|&&h| h < 0.0).count() >= 2 {
        b = -b;
        c = -c;
        a = -a;
        halves = halves.map(|h| -h);
    }
    let major_arc = Side::ALL
        .into_iter()
        .zip(halves)
        .find(|&(_, h)| h < 0.0)
        .map(|(s, _)| s);
    Ok(SphereTriangle {
        a: SpherePoint::normalize(a),
        b: SpherePoint::normalize(b),
        c: SpherePoint::normalize(c),
        major_arc,
    })
}

/// Recovers the corners from the midpoints by the explicit inversion
/// formulas, with the midpoint of the (possible) major side moved to the
/// north pole.
///
/// With `gamma` at the pole and `q = w_beta conj(w_alpha)`,
/// `r = sqrt(1 - Im(q)^2)`:
///
/// ```text
/// h_b = eta (h_alpha h_beta + Re q) / r     h_c = eta (h_alpha h_beta - Re q) / r
/// w_b = eta (w_alpha h_beta - w_beta h_alpha) / r
/// w_c = eta (w_beta h_alpha + w_alpha h_beta) / r
/// ```
///
/// and `a = (-w_b, h_b)`.
pub fn reconstruct_closed_form(m: &SphereMidpoints, tol: &Tolerances) -> Result<SphereTriangle> {
    let cls = classify_midpoints(m, tol.zero);
    let MidpointClass::Regular { eta } = cls.class else {
        return Err(Error::SingularMidpoints { class: cls.class });
    };
    // The product whose sign disagrees with eta is the one not involving
    // the midpoint of the major side.
    let odd = cls
        .inner_products
        .iter()
        .position(|&p| Sign::of(p) != eta);
    let (alpha, beta, gamma, major) = match odd {
        None | Some(0) => (m.alpha, m.beta, m.gamma, Side::Ab),
        Some(1) => (m.beta, m.gamma, m.alpha, Side::Bc),
        _ => (m.gamma, m.alpha, m.beta, Side::Ca),
    };

    let to_north = rotate_to_north(gamma.0, tol.manifold)?;
    let back = to_north.inverse();
    let al = to_north.apply(alpha.0);
    let be = to_north.apply(beta.0);
    let (w_al, h_al) = (al.w(), al.h());
    let (w_be, h_be) = (be.w(), be.h());
    let q = w_be * w_al.conj();
    let radicand = 1.0 - q.im * q.im;
    if radicand < tol.zero {
        return Err(Error::SingularMidpoints { class: cls.class });
    }
    let k = eta.value() / radicand.sqrt();
    let h_b = k * (h_al * h_be + q.re);
    let h_c = k * (h_al * h_be - q.re);
    let w_b = (w_al * h_be - w_be * h_al).scale(k);
    let w_c = (w_be * h_al + w_al * h_be).scale(k);

    let corner = |w: Complex64, h: f64| {
        SpherePoint::normalize(back.apply(AmbientVector::from_wh(w, h)))
    };
    let (p, q, r) = (corner(-w_b, h_b), corner(w_b, h_b), corner(w_c, h_c));
    // Undo the relabelling: (p, q, r) are the corners opposite to the
    // midpoints (alpha, beta, gamma) as permuted above.
    let (a, b, c) = match major {
        Side::Ab => (p, q, r),
        Side::Bc => (r, p, q),
        Side::Ca => (q, r, p),
    };
    let major_arc = odd.map(|_| major);
    Ok(SphereTriangle {
        a,
        b,
        c,
        major_arc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(x: f64, y: f64, z: f64) -> SpherePoint {
        SpherePoint::new(AmbientVector::new(x, y, z), 1e-9).unwrap()
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn octant() -> SphereTriangle {
        SphereTriangle::new(sp(1.0, 0.0, 0.0), sp(0.0, 1.0, 0.0), sp(0.0, 0.0, 1.0))
    }

    fn isoceles() -> (SpherePoint, SpherePoint, SpherePoint) {
        let (s, c) = (PI / 3.0).sin_cos();
        (sp(0.0, 0.0, 1.0), sp(s, 0.0, c), sp(0.0, s, c))
    }

    #[test]
    fn membership_and_views() {
        assert!(matches!(
            SpherePoint::new(AmbientVector::new(1.0, 1.0, 0.0), 1e-9),
            Err(Error::NotUnit { .. })
        ));
        assert_eq!(
            SpherePoint::new(AmbientVector::new(f64::NAN, 0.0, 1.0), 1e-9),
            Err(Error::NonFinite)
        );
        let p = SpherePoint::new(AmbientVector::new(0.0, 0.0, 1.0 + 4e-10), 1e-9).unwrap();
        assert_eq!(p.ambient(), AmbientVector::E3);

        let p = SpherePoint::from_polar(1.1, -2.5);
        let (theta, phi) = p.polar();
        assert!((theta - 1.1).abs() < 1e-15 && (phi + 2.5).abs() < 1e-15);
        let z = p.stereographic().unwrap();
        assert!((z.norm() - (1.1f64 / 2.0).tan().recip()).abs() < 1e-14);
        let back = SpherePoint::from_stereographic(z);
        assert!(back.ambient().max_abs_diff(&p.ambient()) < 1e-15);
        assert!(SpherePoint::north().stereographic().is_none());
    }

    #[test]
    fn midpoint_examples() {
        let s = 0.5f64.sqrt();
        let m = midpoint(sp(0.0, 1.0, 0.0), sp(0.0, 0.0, 1.0), &tol()).unwrap();
        assert!(m.ambient().max_abs_diff(&AmbientVector::new(0.0, s, s)) < 1e-15);
        let p = sp(0.6, 0.0, 0.8);
        assert_eq!(midpoint(p, p, &tol()).unwrap(), p);
        assert_eq!(
            midpoint(sp(1.0, 0.0, 0.0), sp(-1.0, 0.0, 0.0), &tol()),
            Err(Error::AntipodalPair)
        );
    }

    #[test]
    fn side_length_examples() {
        let e1 = sp(1.0, 0.0, 0.0);
        assert!((side_length(e1, sp(0.0, 1.0, 0.0)) - PI / 2.0).abs() < 1e-15);
        assert_eq!(side_length(e1, e1), 0.0);
        assert!((side_length(e1, e1.antipode()) - PI).abs() < 1e-15);
    }

    #[test]
    fn midpoints_of_examples() {
        let s = 0.5f64.sqrt();
        let m = midpoints_of(&octant(), &tol()).unwrap();
        assert!(m.alpha.ambient().max_abs_diff(&AmbientVector::new(0.0, s, s)) < 1e-15);
        assert!(m.beta.ambient().max_abs_diff(&AmbientVector::new(s, 0.0, s)) < 1e-15);
        assert!(m.gamma.ambient().max_abs_diff(&AmbientVector::new(s, s, 0.0)) < 1e-15);

        let p = sp(0.0, 0.6, 0.8);
        let m = midpoints_of(&SphereTriangle::new(p, p, p), &tol()).unwrap();
        assert!(m.points().iter().all(|&q| q == p));

        let t = octant().with_major_arc(Some(Side::Ab));
        let m = midpoints_of(&t, &tol()).unwrap();
        assert!(m.gamma.ambient().max_abs_diff(&AmbientVector::new(-s, -s, 0.0)) < 1e-15);
    }

    #[test]
    fn area_corner_examples() {
        let t = octant();
        let area = area_corners(t.a, t.b, t.c, &tol()).unwrap().value();
        assert!((area - PI / 2.0).abs() < 1e-15);
        assert_eq!(area_corners(t.a, t.a, t.c, &tol()).unwrap().value(), 0.0);
        let (a, b, c) = isoceles();
        let area = area_corners(a, b, c, &tol()).unwrap().value();
        assert!((area - 2.0 * (1.0f64 / 3.0).atan()).abs() < 1e-15);
        assert!((area - 0.6435011087932844).abs() < 1e-15);
        assert_eq!(
            area_corners(t.a, t.a.antipode(), t.c, &tol()),
            Err(Error::AntipodalCorners)
        );
    }

    #[test]
    fn sine_half_area_examples() {
        let t = octant();
        let s = sine_half_area(t.a, t.b, t.c, &tol()).unwrap();
        assert!((s - 0.5f64.sqrt()).abs() < 1e-15);
        let d = midpoints_of(&t, &tol()).unwrap().det3();
        assert!((d - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(sine_half_area(t.a, t.a, t.c, &tol()).unwrap(), 0.0);
        let (a, b, c) = isoceles();
        let s = sine_half_area(a, b, c, &tol()).unwrap();
        assert!((s - 0.1f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn classification_examples() {
        let m = midpoints_of(&octant(), &tol()).unwrap();
        let cls = classify_midpoints(&m, 1e-8);
        assert_eq!(cls.class, MidpointClass::Regular { eta: Sign::Positive });
        assert!(cls.inner_products.iter().all(|p| (p - 0.5).abs() < 1e-15));

        let frame = SphereMidpoints::new(sp(1.0, 0.0, 0.0), sp(0.0, 1.0, 0.0), sp(0.0, 0.0, 1.0));
        assert_eq!(classify_midpoints(&frame, 1e-8).class, MidpointClass::Orthonormal);

        let r = 3f64.sqrt().recip();
        let one = SphereMidpoints::new(sp(1.0, 0.0, 0.0), sp(0.0, 1.0, 0.0), sp(r, r, r));
        assert_eq!(classify_midpoints(&one, 1e-8).class, MidpointClass::OneZero);

        let s = 0.5f64.sqrt();
        let two = SphereMidpoints::new(sp(1.0, 0.0, 0.0), sp(0.0, s, s), sp(0.0, 0.0, 1.0));
        assert_eq!(classify_midpoints(&two, 1e-8).class, MidpointClass::TwoZero);
    }

    #[test]
    fn area_from_midpoint_examples() {
        let m = midpoints_of(&octant(), &tol()).unwrap();
        let area = area_from_midpoints(&m, &tol()).unwrap().value();
        assert!((area - PI / 2.0).abs() < 1e-15);

        let frame = SphereMidpoints::new(sp(1.0, 0.0, 0.0), sp(0.0, 1.0, 0.0), sp(0.0, 0.0, 1.0));
        assert_eq!(area_from_midpoints(&frame, &tol()).unwrap().value(), PI);
        let flipped = SphereMidpoints::new(sp(0.0, 1.0, 0.0), sp(1.0, 0.0, 0.0), sp(0.0, 0.0, 1.0));
        assert_eq!(area_from_midpoints(&flipped, &tol()).unwrap().value(), -PI);

        let r = 3f64.sqrt().recip();
        let one = SphereMidpoints::new(sp(1.0, 0.0, 0.0), sp(0.0, 1.0, 0.0), sp(r, r, r));
        assert_eq!(
            area_from_midpoints(&one, &tol()),
            Err(Error::SingularMidpoints {
                class: MidpointClass::OneZero
            })
        );
    }

    #[test]
    fn octant_with_major_arc() {
        let t = octant().with_major_arc(Some(Side::Ab));
        let direct = triangle_area(&t, &tol()).unwrap().value();
        assert!((direct + 1.5 * PI).abs() < 1e-14);
        let m = midpoints_of(&t, &tol()).unwrap();
        let from_mid = area_from_midpoints(&m, &tol()).unwrap().value();
        assert!((from_mid + 1.5 * PI).abs() < 1e-14);
    }

    #[test]
    fn reconstruct_examples() {
        let t = octant();
        let m = midpoints_of(&t, &tol()).unwrap();
        let r = reconstruct(&m, &tol()).unwrap();
        assert!(r.corner_distance(&t) < 1e-14, "{r:?}");
        assert_eq!(r.major_arc, None);
        let r = reconstruct_closed_form(&m, &tol()).unwrap();
        assert!(r.corner_distance(&t) < 1e-14, "{r:?}");

        for side in Side::ALL {
            let t = octant().with_major_arc(Some(side));
            let m = midpoints_of(&t, &tol()).unwrap();
            let r = reconstruct(&m, &tol()).unwrap();
            assert!(r.corner_distance(&t) < 1e-14);
            assert_eq!(r.major_arc, Some(side));
            let r = reconstruct_closed_form(&m, &tol()).unwrap();
            assert!(r.corner_distance(&t) < 1e-14);
            assert_eq!(r.major_arc, Some(side));
        }

        let frame = SphereMidpoints::new(sp(1.0, 0.0, 0.0), sp(0.0, 1.0, 0.0), sp(0.0, 0.0, 1.0));
        assert_eq!(reconstruct(&frame, &tol()), Err(Error::Undetermined));
        assert_eq!(
            reconstruct_closed_form(&frame, &tol()),
            Err(Error::SingularMidpoints {
                class: MidpointClass::Orthonormal
            })
        );
    }
}
