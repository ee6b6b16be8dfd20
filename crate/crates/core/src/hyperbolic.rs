//! Geodesic triangles on the hyperbolic plane, realized as the upper sheet
//! `h > 0` of `h^2 - |w|^2 = 1` with the Lorentzian scalar product.
//!
//! Any two points bound a unique geodesic segment, so unlike the sphere
//! there is no arc choice and the midpoint map is a bijection onto the
//! triples with `|det(alpha, beta, gamma)| < 1`.

use num_complex::Complex64;

use crate::area::OrientedArea;
use crate::error::{Error, Result};
use crate::linalg::{boost_to_north, det3, dot_e, dot_l, AmbientVector, LorentzMap};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypPoint(AmbientVector);

impl HypPoint {
    /// Accepts `v` on the upper sheet within `tol` of `<v,v>_L = 1` and
    /// projects it onto the hyperboloid. Points already on it to rounding
    /// level are kept bit for bit.
    pub fn new(v: AmbientVector, tol: f64) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::NonFinite);
        }
        let q = dot_l(v, v);
        if (q - 1.0).abs() > tol || v.z <= 0.0 {
            return Err(Error::NotOnHyperboloid {
                deviation: q - 1.0,
                height: v.z,
            });
        }
        if (q - 1.0).abs() <= 4.0 * f64::EPSILON * dot_e(v, v) {
            return Ok(Self(v));
        }
        Ok(Self(v.scale(1.0 / q.sqrt())))
    }

    pub(crate) fn normalize(v: AmbientVector) -> Self {
        Self(v.scale(1.0 / dot_l(v, v).sqrt()))
    }

    pub fn north() -> Self {
        Self(AmbientVector::E3)
    }

    /// From hyperbolic distance `theta` to the north pole and azimuth `phi`.
    pub fn from_polar(theta: f64, phi: f64) -> Self {
        let (sp, cp) = phi.sin_cos();
        let s = theta.sinh();
        Self(AmbientVector::new(s * cp, s * sp, theta.cosh()))
    }

    pub fn polar(&self) -> (f64, f64) {
        let v = self.0;
        (v.x.hypot(v.y).asinh(), v.y.atan2(v.x))
    }

    /// Disk coordinate `z = w / (1 + h)`, `|z| < 1`.
    pub fn disk(&self) -> Complex64 {
        self.0.w().unscale(1.0 + self.0.z)
    }

    /// Inverse of [`HypPoint::disk`]; `None` unless `|z| < 1`.
    pub fn from_disk(z: Complex64) -> Option<Self> {
        let n = z.norm_sqr();
        (n < 1.0).then(|| {
            let d = 1.0 - n;
            Self::normalize(AmbientVector::from_wh(z.scale(2.0 / d), (1.0 + n) / d))
        })
    }

    pub fn ambient(&self) -> AmbientVector {
        self.0
    }

    pub fn mapped(&self, l: &LorentzMap) -> Self {
        Self::normalize(l.apply(self.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypTriangle {
    pub a: HypPoint,
    pub b: HypPoint,
    pub c: HypPoint,
}

impl HypTriangle {
    pub fn new(a: HypPoint, b: HypPoint, c: HypPoint) -> Self {
        Self { a, b, c }
    }

    pub fn corners(&self) -> [HypPoint; 3] {
        [self.a, self.b, self.c]
    }

    pub fn corner_distance(&self, other: &HypTriangle) -> f64 {
        self.corners()
            .iter()
            .zip(other.corners().iter())
            .map(|(p, q)| p.0.max_abs_diff(&q.0))
            .fold(0.0, f64::max)
    }

    pub fn mapped(&self, l: &LorentzMap) -> Self {
        Self::new(self.a.mapped(l), self.b.mapped(l), self.c.mapped(l))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypMidpoints {
    pub alpha: HypPoint,
    pub beta: HypPoint,
    pub gamma: HypPoint,
}

impl HypMidpoints {
    pub fn new(alpha: HypPoint, beta: HypPoint, gamma: HypPoint) -> Self {
        Self { alpha, beta, gamma }
    }

    pub fn det3(&self) -> f64 {
        det3(self.alpha.0, self.beta.0, self.gamma.0)
    }

    pub fn points(&self) -> [HypPoint; 3] {
        [self.alpha, self.beta, self.gamma]
    }

    /// True when the triple is the midpoint triple of some triangle.
    pub fn is_realizable(&self, tol: &Tolerances) -> bool {
        let d = self.det3();
        1.0 - d * d >= tol.realizability
    }
}

/// `(p + q) / sqrt(<p+q, p+q>_L)`.
pub fn midpoint(p: HypPoint, q: HypPoint) -> HypPoint {
    HypPoint::normalize(p.0 + q.0)
}

/// Hyperbolic distance between two points.
pub fn side_length(p: HypPoint, q: HypPoint) -> f64 {
    dot_l(p.0, q.0).max(1.0).acosh()
}

pub fn midpoints_of(t: &HypTriangle) -> HypMidpoints {
    HypMidpoints {
        alpha: midpoint(t.b, t.c),
        beta: midpoint(t.c, t.a),
        gamma: midpoint(t.a, t.b),
    }
}

/// `2 Arg(1 + <a,b>_L + <b,c>_L + <c,a>_L + i det(a,b,c))`.
///
/// Every Lorentz product of two upper-sheet points is at least 1, so the
/// real part is at least 4 and the area stays inside `(-pi, pi)`.
pub fn area_corners(a: HypPoint, b: HypPoint, c: HypPoint) -> OrientedArea {
    let re = 1.0 + dot_l(a.0, b.0) + dot_l(b.0, c.0) + dot_l(c.0, a.0);
    let im = det3(a.0, b.0, c.0);
    OrientedArea::hyperbolic(2.0 * im.atan2(re))
}

/// `det(a,b,c) / sqrt(2 (1 + <a,b>_L)(1 + <b,c>_L)(1 + <c,a>_L))`.
pub fn sine_half_area(a: HypPoint, b: HypPoint, c: HypPoint) -> f64 {
    let denom = 2.0
        * (1.0 + dot_l(a.0, b.0))
        * (1.0 + dot_l(b.0, c.0))
        * (1.0 + dot_l(c.0, a.0));
    det3(a.0, b.0, c.0) / denom.sqrt()
}

/// `exp(i area/2) = sqrt(1 - d^2) + i d`, `d = det(alpha, beta, gamma)`;
/// always the branch with `|area/2| < pi/2`.
pub fn area_from_midpoints(m: &HypMidpoints, tol: &Tolerances) -> Result<OrientedArea> {
    let d = m.det3();
    let radicand = 1.0 - d * d;
    if radicand < tol.realizability {
        return Err(Error::NotRealizable { det: d });
    }
    Ok(OrientedArea::hyperbolic(2.0 * d.atan2(radicand.sqrt())))
}

/// Inverts the midpoint map.
///
/// After boosting `gamma` to the north pole, with `q = w_beta conj(w_alpha)`
/// and `r = sqrt(1 - Im(q)^2)`:
///
/// ```text
/// h_b = (h_alpha h_beta - Re q) / r     h_c = (h_alpha h_beta + Re q) / r
/// w_b = (w_alpha h_beta - w_beta h_alpha) / r
/// w_c = (w_beta h_alpha + w_alpha h_beta) / r
/// ```
///
/// and `a = (-w_b, h_b)`.
///
/// The boost and its inverse carry entries of size `h_gamma`, so for large
/// triangles the closed form loses digits. One Newton step on
/// `R_gamma R_beta R_alpha b = b` restores them; `a` and `c` are then
/// recovered as `R_gamma b` and `R_alpha b`.
pub fn reconstruct(m: &HypMidpoints, tol: &Tolerances) -> Result<HypTriangle> {
    let to_north = boost_to_north(m.gamma.0, tol.manifold)?;
    let back = to_north.inverse();
    let al = to_north.apply(m.alpha.0);
    let be = to_north.apply(m.beta.0);
    let (w_al, h_al) = (al.w(), al.h());
    let (w_be, h_be) = (be.w(), be.h());
    let q = w_be * w_al.conj();
    let radicand = 1.0 - q.im * q.im;
    if radicand < tol.realizability {
        return Err(Error::NotRealizable { det: m.det3() });
    }
    let k = 1.0 / radicand.sqrt();
    let h_b = k * (h_al * h_be - q.re);
    let w_b = (w_al * h_be - w_be * h_al).scale(k);

    let b = HypPoint::normalize(back.apply(AmbientVector::from_wh(w_b, h_b)));
    let b = refine_corner(m, b);
    Ok(HypTriangle {
        a: HypPoint::normalize(reflect(m.gamma.0, b.0)),
        b,
        c: HypPoint::normalize(reflect(m.alpha.0, b.0)),
    })
}

/// Half-turn about `v`: `2 <v,p>_L v - p`.
fn reflect(v: AmbientVector, p: AmbientVector) -> AmbientVector {
    2.0 * dot_l(v, p) * v - p
}

/// One Newton step toward the fixed point of `A = R_gamma R_beta R_alpha`,
/// solving `(A - I + b <b, .>_L) delta = b - A b`.
fn refine_corner(m: &HypMidpoints, b: HypPoint) -> HypPoint {
    let apply = |p| reflect(m.gamma.0, reflect(m.beta.0, reflect(m.alpha.0, p)));
    let b = b.0;
    let residual = b - apply(b);
    let lorentz_b = [-b.x, -b.y, b.z];
    let col = |j: usize, e: AmbientVector| apply(e) - e + lorentz_b[j] * b;
    let (c0, c1, c2) = (
        col(0, AmbientVector::E1),
        col(1, AmbientVector::E2),
        col(2, AmbientVector::E3),
    );
    let det = det3(c0, c1, c2);
    let delta = AmbientVector::new(
        det3(residual, c1, c2) / det,
        det3(c0, residual, c2) / det,
        det3(c0, c1, residual) / det,
    );
    let refined = b + delta;
    if refined.is_finite() && dot_l(refined, refined) > 0.0 && refined.z > 0.0 {
        HypPoint::normalize(refined)
    } else {
        HypPoint(b)
    }
}
