//! Independent reference computations.
//!
//! Nothing in here calls the closed-form area or reconstruction routines:
//! the planar formulas, interior angles and direct quadrature of the area
//! element are separate routes to the same numbers, used by the test suites
//! and by `midarea verify`.

use std::f64::consts::PI;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::area::Geometry;
use crate::error::{Error, Result};
use crate::hyperbolic::{self, HypPoint, HypTriangle};
use crate::linalg::{boost_to_north, det3, dot_e, dot_l, rotate_to_north, AmbientVector};
use crate::sphere::{self, Side, SpherePoint, SphereTriangle};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct PlanarPoint {
    pub u: f64,
    pub v: f64,
}

impl PlanarPoint {
    pub const fn new(u: f64, v: f64) -> Self {
        Self { u, v }
    }

    pub fn is_finite(&self) -> bool {
        self.u.is_finite() && self.v.is_finite()
    }

    fn sub(self, o: Self) -> Self {
        Self::new(self.u - o.u, self.v - o.v)
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.u * s, self.v * s)
    }
}

impl From<[f64; 2]> for PlanarPoint {
    fn from(p: [f64; 2]) -> Self {
        Self::new(p[0], p[1])
    }
}

impl From<PlanarPoint> for [f64; 2] {
    fn from(p: PlanarPoint) -> Self {
        [p.u, p.v]
    }
}

fn det2(p: PlanarPoint, q: PlanarPoint) -> f64 {
    p.u * q.v - p.v * q.u
}

/// `det2(b - a, c - a) / 2`.
pub fn planar_area(a: PlanarPoint, b: PlanarPoint, c: PlanarPoint) -> f64 {
    0.5 * det2(b.sub(a), c.sub(a))
}

/// `2 det2(beta - alpha, gamma - alpha)`.
pub fn planar_area_from_midpoints(alpha: PlanarPoint, beta: PlanarPoint, gamma: PlanarPoint) -> f64 {
    2.0 * det2(beta.sub(alpha), gamma.sub(alpha))
}

pub fn planar_midpoints(a: PlanarPoint, b: PlanarPoint, c: PlanarPoint) -> [PlanarPoint; 3] {
    let mid = |p: PlanarPoint, q: PlanarPoint| PlanarPoint::new(0.5 * (p.u + q.u), 0.5 * (p.v + q.v));
    [mid(b, c), mid(c, a), mid(a, b)]
}

/// Corners from side midpoints: `a = beta + gamma - alpha` and cyclically.
pub fn planar_reconstruct(alpha: PlanarPoint, beta: PlanarPoint, gamma: PlanarPoint) -> [PlanarPoint; 3] {
    let comb = |p: PlanarPoint, q: PlanarPoint, r: PlanarPoint| {
        PlanarPoint::new(p.u + q.u - r.u, p.v + q.v - r.v)
    };
    [comb(beta, gamma, alpha), comb(gamma, alpha, beta), comb(alpha, beta, gamma)]
}

const COINCIDENT: f64 = 1e-12;

/// Interior angle at `p` between geodesics toward `q` and `r`. `dot` is the
/// ambient product and `kappa` the sign making the tangent metric positive.
///
/// The tangent vectors `tq, tr` satisfy `kappa <tq,tr> = |tq||tr| cos A` and
/// `|det(p,tq,tr)| = |tq||tr| sin A`, so `A = atan2(|det(p,q,r)|, kappa <tq,tr>)`.
fn corner_angle(
    p: AmbientVector,
    q: AmbientVector,
    r: AmbientVector,
    dot: fn(AmbientVector, AmbientVector) -> f64,
    kappa: f64,
) -> Result<f64> {
    let tq = q - dot(p, q) * p;
    let tr = r - dot(p, r) * p;
    if kappa * dot(tq, tq) <= 0.0 || kappa * dot(tr, tr) <= 0.0 {
        return Err(Error::DegenerateTriangle);
    }
    Ok(det3(p, tq, tr).abs().atan2(kappa * dot(tq, tr)))
}

fn excess_from_angles(
    corners: [AmbientVector; 3],
    dot: fn(AmbientVector, AmbientVector) -> f64,
    kappa: f64,
) -> Result<f64> {
    let [a, b, c] = corners;
    if (a - b).norm_e() < COINCIDENT || (b - c).norm_e() < COINCIDENT || (c - a).norm_e() < COINCIDENT {
        return Err(Error::DegenerateTriangle);
    }
    let sum = corner_angle(a, b, c, dot, kappa)?
        + corner_angle(b, c, a, dot, kappa)?
        + corner_angle(c, a, b, dot, kappa)?;
    let orientation = det3(a, b, c);
    let sign = if orientation > 0.0 {
        1.0
    } else if orientation < 0.0 {
        -1.0
    } else {
        0.0
    };
    Ok(sign * kappa * (sum - PI))
}

/// Angle excess `s (A + B + C - pi)` of the all-minor-arc triangle, with
/// `s` the orientation sign.
pub fn sphere_excess_area(a: SpherePoint, b: SpherePoint, c: SpherePoint) -> Result<f64> {
    excess_from_angles([a.ambient(), b.ambient(), c.ambient()], dot_e, 1.0)
}

/// Angle deficit `s (pi - (A + B + C))`.
pub fn hyp_deficit_area(a: HypPoint, b: HypPoint, c: HypPoint) -> Result<f64> {
    excess_from_angles([a.ambient(), b.ambient(), c.ambient()], dot_l, -1.0)
}

/// Excess-based area of a sphere triangle that may carry a major arc: the
/// triangle is cut at the major side's midpoint and the two all-minor
/// pieces are measured separately.
pub fn sphere_excess_area_triangle(t: &SphereTriangle, tol: &Tolerances) -> Result<f64> {
    let Some(side) = t.major_arc else {
        return sphere_excess_area(t.a, t.b, t.c);
    };
    let (p, q, r) = match side {
        Side::Ab => (t.a, t.b, t.c),
        Side::Bc => (t.b, t.c, t.a),
        Side::Ca => (t.c, t.a, t.b),
    };
    let mid = sphere::midpoint(p, q, tol)?.antipode();
    Ok(sphere_excess_area(mid, q, r)? + sphere_excess_area(mid, r, p)?)
}

/// Evaluation budget for [`adaptive_simpson`] calls made by the quadrature
/// oracle.
pub const QUADRATURE_BUDGET: usize = 100_000;

const MAX_DEPTH: u32 = 50;
const MIN_LEVELS: u32 = 4;

/// Adaptive Simpson quadrature of `f` over `[lo, hi]` to absolute
/// tolerance `tol`, with at most `max_evals` evaluations of `f`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    tol: f64,
    max_evals: usize,
) -> Result<f64> {
    struct State<F> {
        f: F,
        evals: usize,
        max_evals: usize,
    }

    fn step<F: Fn(f64) -> f64>(
        st: &mut State<F>,
        (a, fa): (f64, f64),
        (m, fm): (f64, f64),
        (b, fb): (f64, f64),
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64> {
        if st.evals + 2 > st.max_evals {
            return Err(Error::QuadratureFailure { evaluations: st.evals });
        }
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = (st.f)(lm);
        let frm = (st.f)(rm);
        st.evals += 2;
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let diff = left + right - whole;
        // Below the rounding floor further halving only chases noise.
        let floor = 64.0 * f64::EPSILON * (left.abs() + right.abs());
        // The coarsest estimates can agree by accident on wide features.
        let settled = depth <= MAX_DEPTH - MIN_LEVELS;
        if settled && diff.abs() <= (15.0 * tol).max(floor) {
            return Ok(left + right + diff / 15.0);
        }
        if depth == 0 {
            return Err(Error::QuadratureFailure { evaluations: st.evals });
        }
        Ok(step(st, (a, fa), (lm, flm), (m, fm), left, 0.5 * tol, depth - 1)?
            + step(st, (m, fm), (rm, frm), (b, fb), right, 0.5 * tol, depth - 1)?)
    }

    let mut st = State { f, evals: 3, max_evals };
    let m = 0.5 * (lo + hi);
    let (fa, fm, fb) = ((st.f)(lo), (st.f)(m), (st.f)(hi));
    let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    step(&mut st, (lo, fa), (m, fm), (hi, fb), whole, tol, MAX_DEPTH)
}

/// Integrates `f(u, gap - u)` over `[0, gap]`. Each half is parametrized
/// by the variable that vanishes at its outer end, so the integrand never
/// sees the rounding of `gap - u` where it varies fastest.
fn integrate_split<F: Fn(f64, f64) -> f64>(f: F, gap: f64, tol: f64) -> Result<f64> {
    let half = 0.5 * gap;
    let left = adaptive_simpson(|u| f(u, gap - u), 0.0, half, 0.5 * tol, QUADRATURE_BUDGET / 2)?;
    let right = adaptive_simpson(|v| f(gap - v, v), 0.0, half, 0.5 * tol, QUADRATURE_BUDGET / 2)?;
    Ok(left + right)
}

/// Polar coordinates of `b` and `c` after moving `a` to the north pole,
/// reduced to an azimuth gap `Phi` in `(0, pi)` plus the orientation sign.
struct PolarFrame {
    theta_b: f64,
    theta_c: f64,
    gap: f64,
    sign: f64,
}

fn polar_frame(theta_b: f64, phi_b: f64, theta_c: f64, phi_c: f64) -> Result<PolarFrame> {
    let mut gap = phi_c - phi_b;
    if gap > PI {
        gap -= 2.0 * PI;
    } else if gap <= -PI {
        gap += 2.0 * PI;
    }
    if gap.sin().abs() < COINCIDENT || theta_b < COINCIDENT || theta_c < COINCIDENT {
        return Err(Error::DegenerateTriangle);
    }
    Ok(PolarFrame {
        theta_b,
        theta_c,
        gap: gap.abs(),
        sign: gap.signum(),
    })
}

/// Area by integrating the area element `sin(theta) dtheta dphi` with `a`
/// at the north pole. The inner integral is `1 - cos(theta_g(phi))` where
/// `theta_g` traces the side `bc`:
/// `cot(theta_g) sin(Phi) = sin(phi_c - phi) cot(theta_b) + sin(phi - phi_b) cot(theta_c)`.
pub fn sphere_quadrature_area(
    a: SpherePoint,
    b: SpherePoint,
    c: SpherePoint,
    tol: f64,
) -> Result<f64> {
    let r = rotate_to_north(a.ambient(), 1e-9)?;
    let (tb, pb) = b.rotated(&r).polar();
    let (tc, pc) = c.rotated(&r).polar();
    if PI - tb < COINCIDENT || PI - tc < COINCIDENT {
        return Err(Error::DegenerateTriangle);
    }
    let frame = polar_frame(tb, pb, tc, pc)?;
    let (sb, cb) = frame.theta_b.sin_cos();
    let (sc, cc) = frame.theta_c.sin_cos();
    let y = frame.gap.sin() * sb * sc;
    let gap = frame.gap;
    // u = phi - phi_b, v = phi_c - phi
    let integrand = move |u: f64, v: f64| {
        let x = v.sin() * cb * sc + u.sin() * sb * cc;
        let r = x.hypot(y);
        if x <= 0.0 {
            1.0 - x / r
        } else {
            y * y / (r * (r + x))
        }
    };
    Ok(frame.sign * integrate_split(integrand, gap, tol)?)
}

/// Hyperbolic counterpart of [`sphere_quadrature_area`]: integrates
/// `sinh(theta) dtheta dphi`, inner integral `cosh(theta_g(phi)) - 1` with
/// `coth(theta_g) sin(Phi) = sin(phi_c - phi) coth(theta_b) + sin(phi - phi_b) coth(theta_c)`.
pub fn hyp_quadrature_area(a: HypPoint, b: HypPoint, c: HypPoint, tol: f64) -> Result<f64> {
    let l = boost_to_north(a.ambient(), 1e-9)?;
    let (tb, pb) = b.mapped(&l).polar();
    let (tc, pc) = c.mapped(&l).polar();
    let frame = polar_frame(tb, pb, tc, pc)?;
    let (sb, cb) = (frame.theta_b.sinh(), frame.theta_b.cosh());
    let (sc, cc) = (frame.theta_c.sinh(), frame.theta_c.cosh());
    let (eb, ec) = ((-frame.theta_b).exp(), (-frame.theta_c).exp());
    let gap = frame.gap;
    let d = gap.sin() * sb * sc;
    let integrand = move |u: f64, v: f64| {
        let n = v.sin() * cb * sc + u.sin() * sb * cc;
        // n - d without cancellation, using cosh - cos(t) sinh = e^-theta + 2 sin^2(t/2) sinh.
        let hu = (0.5 * u).sin();
        let hv = (0.5 * v).sin();
        let excess = v.sin() * sc * (eb + 2.0 * hu * hu * sb) + u.sin() * sb * (ec + 2.0 * hv * hv * sc);
        let s = (excess * (excess + 2.0 * d)).sqrt();
        d * d / (s * (n + s))
    };
    Ok(frame.sign * integrate_split(integrand, gap, tol)?)
}

/// Exponential map at the north pole: the planar point at distance `r`
/// and bearing `phi` goes to the sphere point at arc length `r`, bearing `phi`.
pub fn lift_to_sphere(p: PlanarPoint) -> SpherePoint {
    let r = p.u.hypot(p.v);
    SpherePoint::from_polar(r, p.v.atan2(p.u))
}

pub fn lift_to_hyperbolic(p: PlanarPoint) -> HypPoint {
    let r = p.u.hypot(p.v);
    HypPoint::from_polar(r, p.v.atan2(p.u))
}

/// Parameters of the seeded triangle generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub geometry: Geometry,
    /// Minimum distance from singular configurations; see [`TriangleStream`].
    pub margin: f64,
    /// Largest distance of a hyperbolic corner from the north pole.
    pub theta_max: f64,
    /// Flag one uniformly chosen side of each sphere triangle as a major arc.
    pub major_arc: bool,
}

impl GeneratorConfig {
    pub fn new(geometry: Geometry, seed: u64) -> Self {
        Self {
            seed,
            geometry,
            margin: 1e-3,
            theta_max: 5.0,
            major_arc: false,
        }
    }

    pub fn with_major_arc(mut self, major_arc: bool) -> Self {
        self.major_arc = major_arc;
        self
    }

    pub fn with_theta_max(mut self, theta_max: f64) -> Self {
        self.theta_max = theta_max;
        self
    }

    pub fn with_margin(mut self, margin: f64) -> Self {
        self.margin = margin;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RandomTriangle {
    Sphere(SphereTriangle),
    Hyperbolic(HypTriangle),
    Planar([PlanarPoint; 3]),
}

/// Deterministic stream of random triangles.
///
/// The bit source is ChaCha8 seeded with `ChaCha8Rng::seed_from_u64(seed)`.
/// Each uniform variate consumes one `next_u64` word `x` and is
/// `(x >> 11) * 2^-53`, in `[0, 1)`. Per corner, two variates `(s, t)` are
/// drawn, in corner order `a, b, c`:
///
/// * sphere: `h = 2s - 1`, `phi = 2 pi t`, corner `(sqrt(1-h^2) cos phi, sqrt(1-h^2) sin phi, h)`;
/// * hyperbolic: `theta = theta_max s`, `phi = 2 pi t`, corner at distance `theta`, bearing `phi`;
/// * planar: `(2s - 1, 2t - 1)`.
///
/// With `major_arc` set, one more word `x` picks side `["bc", "ca", "ab"][x % 3]`.
/// A candidate is rejected and redrawn unless, with `m` the margin:
/// sphere corners have all `<p,q>` in `(-1 + m, 1 - m)`, `|sin(area/2)| > m`,
/// and all three midpoint inner products exceed `m` in magnitude;
/// hyperbolic corners have `|sin(area/2)| > m`; planar ones `|area| > m`.
#[derive(Debug, Clone)]
pub struct TriangleStream {
    cfg: GeneratorConfig,
    rng: ChaCha8Rng,
}

impl TriangleStream {
    pub fn new(cfg: GeneratorConfig) -> Result<Self> {
        if !(cfg.theta_max > 0.0 && cfg.theta_max.is_finite()) {
            return Err(Error::InvalidConfig("theta_max must be positive"));
        }
        if !(0.0..0.5).contains(&cfg.margin) {
            return Err(Error::InvalidConfig("margin must lie in [0, 0.5)"));
        }
        Ok(Self {
            cfg,
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        })
    }

    pub fn config(&self) -> &GeneratorConfig {
        &self.cfg
    }

    fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn next_triangle(&mut self) -> RandomTriangle {
        match self.cfg.geometry {
            Geometry::Sphere => RandomTriangle::Sphere(self.next_sphere()),
            Geometry::Hyperbolic => RandomTriangle::Hyperbolic(self.next_hyperbolic()),
            Geometry::Planar => RandomTriangle::Planar(self.next_planar()),
        }
    }

    fn sphere_corner(&mut self) -> SpherePoint {
        let h = 2.0 * self.uniform() - 1.0;
        let phi = 2.0 * PI * self.uniform();
        let r = (1.0 - h * h).max(0.0).sqrt();
        SpherePoint::normalize(AmbientVector::new(r * phi.cos(), r * phi.sin(), h))
    }

    pub fn next_sphere(&mut self) -> SphereTriangle {
        let m = self.cfg.margin;
        let tol = Tolerances::default();
        loop {
            let (a, b, c) = (self.sphere_corner(), self.sphere_corner(), self.sphere_corner());
            let side = self
                .cfg
                .major_arc
                .then(|| Side::ALL[(self.rng.next_u64() % 3) as usize]);
            let t = SphereTriangle::new(a, b, c).with_major_arc(side);
            let pairs_ok = [(a, b), (b, c), (c, a)].iter().all(|&(p, q)| {
                let d = dot_e(p.ambient(), q.ambient());
                d > -1.0 + m && d < 1.0 - m
            });
            if !pairs_ok {
                continue;
            }
            let Ok(s) = sphere::sine_half_area(a, b, c, &tol) else {
                continue;
            };
            if s.abs() <= m {
                continue;
            }
            let Ok(mids) = sphere::midpoints_of(&t, &tol) else {
                continue;
            };
            if mids.inner_products().iter().all(|p| p.abs() > m) {
                return t;
            }
        }
    }

    pub fn next_hyperbolic(&mut self) -> HypTriangle {
        let m = self.cfg.margin;
        loop {
            let mut corner = || {
                let theta = self.cfg.theta_max * self.uniform();
                let phi = 2.0 * PI * self.uniform();
                HypPoint::from_polar(theta, phi)
            };
            let (a, b, c) = (corner(), corner(), corner());
            if hyperbolic::sine_half_area(a, b, c).abs() > m {
                return HypTriangle::new(a, b, c);
            }
        }
    }

    pub fn next_planar(&mut self) -> [PlanarPoint; 3] {
        let m = self.cfg.margin;
        loop {
            let mut corner = || PlanarPoint::new(2.0 * self.uniform() - 1.0, 2.0 * self.uniform() - 1.0);
            let (a, b, c) = (corner(), corner(), corner());
            if planar_area(a, b, c).abs() > m {
                return [a, b, c];
            }
        }
    }
}

impl Iterator for TriangleStream {
    type Item = RandomTriangle;

    fn next(&mut self) -> Option<RandomTriangle> {
        Some(self.next_triangle())
    }
}

/// First triangle of the stream for `cfg`.
pub fn random_triangle(cfg: GeneratorConfig) -> Result<RandomTriangle> {
    Ok(TriangleStream::new(cfg)?.next_triangle())
}
