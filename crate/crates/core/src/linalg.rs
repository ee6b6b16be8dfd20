//! Vector algebra in the ambient space `R^3 = C x R`.
//!
//! Both manifolds live in the same ambient space and differ only in the
//! scalar product: the sphere uses the Euclidean one, the hyperboloid the
//! Lorentzian `<(w,h),(w',h')>_L = h h' - Re(conj(w) w')`. A vector is
//! stored as `(x, y, z)` and viewed as `(w, h)` with `w = x + iy`, `h = z`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct AmbientVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl AmbientVector {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0);
    pub const E1: Self = Self::new(1.0, 0.0, 0.0);
    pub const E2: Self = Self::new(0.0, 1.0, 0.0);
    pub const E3: Self = Self::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// Builds a vector from its complex/height view.
    pub fn from_wh(w: Complex64, h: f64) -> Self {
        Self::new(w.re, w.im, h)
    }

    /// The horizontal part as a complex number.
    pub fn w(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn h(&self) -> f64 {
        self.z
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn norm_e(&self) -> f64 {
        self.x.hypot(self.y).hypot(self.z)
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }

    /// Euclidean normalization; `None` for the zero vector.
    pub fn normalized(self) -> Option<Self> {
        let n = self.norm_e();
        (n > 0.0).then(|| self.scale(1.0 / n))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl From<[f64; 3]> for AmbientVector {
    fn from(v: [f64; 3]) -> Self {
        Self::new(v[0], v[1], v[2])
    }
}

impl From<AmbientVector> for [f64; 3] {
    fn from(v: AmbientVector) -> Self {
        v.to_array()
    }
}

impl Add for AmbientVector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for AmbientVector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for AmbientVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<AmbientVector> for f64 {
    type Output = AmbientVector;
    fn mul(self, rhs: AmbientVector) -> AmbientVector {
        rhs.scale(self)
    }
}

/// Euclidean scalar product.
pub fn dot_e(u: AmbientVector, v: AmbientVector) -> f64 {
    u.x * v.x + u.y * v.y + u.z * v.z
}

/// Lorentzian scalar product `h h' - (x x' + y y')`.
pub fn dot_l(u: AmbientVector, v: AmbientVector) -> f64 {
    u.z * v.z - (u.x * v.x + u.y * v.y)
}

/// Determinant of the matrix with columns `u`, `v`, `w`.
pub fn det3(u: AmbientVector, v: AmbientVector, w: AmbientVector) -> f64 {
    dot_e(u, cross(v, w))
}

pub fn cross(u: AmbientVector, v: AmbientVector) -> AmbientVector {
    AmbientVector::new(
        u.y * v.z - u.z * v.y,
        u.z * v.x - u.x * v.z,
        u.x * v.y - u.y * v.x,
    )
}

/// Rotates `p` by a half turn about `axis`: `2 <p, a> a - p` with `a` the
/// normalized axis. Maps one endpoint of a great-circle arc to the other
/// when `axis` is the arc's midpoint.
pub fn point_reflection(axis: AmbientVector, p: AmbientVector) -> Result<AmbientVector> {
    let a = unit_axis(axis)?;
    Ok(2.0 * dot_e(p, a) * a - p)
}

fn unit_axis(axis: AmbientVector) -> Result<AmbientVector> {
    const AXIS_TOL: f64 = 1e-12;
    if !axis.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = axis.norm_e();
    if n < AXIS_TOL {
        return Err(Error::ZeroAxis);
    }
    Ok(axis.scale(1.0 / n))
}

/// A 3x3 real matrix stored by rows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix3(pub [[f64; 3]; 3]);

impl Matrix3 {
    pub const IDENTITY: Self = Self([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Self([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn determinant(&self) -> f64 {
        let m = &self.0;
        det3(
            AmbientVector::new(m[0][0], m[1][0], m[2][0]),
            AmbientVector::new(m[0][1], m[1][1], m[2][1]),
            AmbientVector::new(m[0][2], m[1][2], m[2][2]),
        )
    }

    /// Frobenius norm of `self - other`.
    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let d = self.0[i][j] - other.0[i][j];
                s += d * d;
            }
        }
        s.sqrt()
    }

    fn column(&self, j: usize) -> AmbientVector {
        AmbientVector::new(self.0[0][j], self.0[1][j], self.0[2][j])
    }
}

impl Mul<AmbientVector> for Matrix3 {
    type Output = AmbientVector;
    fn mul(self, v: AmbientVector) -> AmbientVector {
        let m = &self.0;
        AmbientVector::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }
}

impl Mul for Matrix3 {
    type Output = Matrix3;
    fn mul(self, rhs: Matrix3) -> Matrix3 {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        Matrix3(out)
    }
}

/// A proper rotation of `R^3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation(Matrix3);

impl Rotation {
    pub const IDENTITY: Self = Self(Matrix3::IDENTITY);

    /// Wraps a matrix the caller knows to be orthogonal with determinant +1.
    pub fn from_matrix(m: Matrix3) -> Self {
        Self(m)
    }

    /// Half turn about `axis`, as the matrix `2 a a^T - I`.
    pub fn half_turn(axis: AmbientVector) -> Result<Self> {
        let a = unit_axis(axis)?;
        let v = a.to_array();
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = 2.0 * v[i] * v[j] - if i == j { 1.0 } else { 0.0 };
            }
        }
        Ok(Self(Matrix3(m)))
    }

    pub fn matrix(&self) -> &Matrix3 {
        &self.0
    }

    pub fn apply(&self, v: AmbientVector) -> AmbientVector {
        self.0 * v
    }

    /// `self` applied after `first`.
    pub fn after(&self, first: &Rotation) -> Rotation {
        Rotation(self.0 * first.0)
    }

    pub fn inverse(&self) -> Rotation {
        Rotation(self.0.transpose())
    }

    /// Largest of `|M^T M - I|_F` and `|det M - 1|`.
    pub fn group_defect(&self) -> f64 {
        let mtm = self.0.transpose() * self.0;
        mtm.frobenius_distance(&Matrix3::IDENTITY)
            .max((self.0.determinant() - 1.0).abs())
    }
}

/// The two antipodal unit fixed points of a rotation, right-handed axis
/// first.
///
/// Uses the antisymmetric part of `R` while the rotation angle is below
/// `pi/2`; past that, the dominant column of `sym(R) - cos(angle) I`, which
/// equals `(1 - cos) n n^T`. The antisymmetric part vanishes at angle `pi`,
/// which half-turn compositions hit routinely.
pub fn rotation_axis(
    rotation: &Rotation,
    identity_tol: f64,
) -> Result<(AmbientVector, AmbientVector)> {
    let m = rotation.matrix();
    if m.frobenius_distance(&Matrix3::IDENTITY) < identity_tol {
        return Err(Error::IdentityRotation);
    }
    let r = &m.0;
    let anti = AmbientVector::new(r[2][1] - r[1][2], r[0][2] - r[2][0], r[1][0] - r[0][1]);
    let cos = ((m.trace() - 1.0) / 2.0).clamp(-1.0, 1.0);

    let axis = if cos > 0.0 {
        anti.normalized().ok_or(Error::IdentityRotation)?
    } else {
        let sym = Matrix3(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                0.5 * (r[i][j] + r[j][i]) - if i == j { cos } else { 0.0 }
            })
        }));
        let j = (0..3)
            .max_by(|&a, &b| sym.0[a][a].total_cmp(&sym.0[b][b]))
            .unwrap_or(0);
        let n = sym.column(j).normalized().ok_or(Error::IdentityRotation)?;
        if dot_e(n, anti) < 0.0 {
            -n
        } else {
            n
        }
    };
    Ok((axis, -axis))
}

/// A rotation taking the unit vector `p` to the north pole `(0, 0, 1)`.
///
/// The rotation is about `p x e3`. For points in the southern hemisphere a
/// half turn about `e1` is applied first so the closed form never divides
/// by something close to zero.
pub fn rotate_to_north(p: AmbientVector, tol: f64) -> Result<Rotation> {
    if !p.is_finite() {
        return Err(Error::NonFinite);
    }
    let n2 = dot_e(p, p);
    if (n2 - 1.0).abs() > tol {
        return Err(Error::NotUnit { deviation: n2 - 1.0 });
    }
    let p = p.scale(1.0 / n2.sqrt());
    if p.z >= 0.0 {
        Ok(Rotation(north_from_upper(p)))
    } else {
        let flip = Matrix3([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]]);
        Ok(Rotation(north_from_upper(flip * p) * flip))
    }
}

// I + K + K^2 / (1 + c) with K the cross-product matrix of v = p x e3.
fn north_from_upper(p: AmbientVector) -> Matrix3 {
    let (vx, vy) = (p.y, -p.x);
    let f = 1.0 / (1.0 + p.z);
    Matrix3([
        [1.0 - vy * vy * f, vx * vy * f, vy],
        [vx * vy * f, 1.0 - vx * vx * f, -vx],
        [-vy, vx, 1.0 - (vx * vx + vy * vy) * f],
    ])
}

/// A linear map of `R^3` preserving the Lorentzian product and the upper
/// sheet of the hyperboloid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzMap(Matrix3);

impl LorentzMap {
    pub const IDENTITY: Self = Self(Matrix3::IDENTITY);

    pub fn from_matrix(m: Matrix3) -> Self {
        Self(m)
    }

    /// A spatial rotation about the `h` axis, which is also a Lorentz map.
    pub fn spatial_rotation(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self(Matrix3([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]))
    }

    pub fn matrix(&self) -> &Matrix3 {
        &self.0
    }

    pub fn apply(&self, v: AmbientVector) -> AmbientVector {
        self.0 * v
    }

    pub fn after(&self, first: &LorentzMap) -> LorentzMap {
        LorentzMap(self.0 * first.0)
    }

    /// `J L^T J` with `J = diag(-1, -1, 1)`.
    pub fn inverse(&self) -> LorentzMap {
        let mut t = self.0.transpose();
        for i in 0..3 {
            for j in 0..3 {
                if (i == 2) != (j == 2) {
                    t.0[i][j] = -t.0[i][j];
                }
            }
        }
        LorentzMap(t)
    }

    /// Frobenius distance of `L^T J L` from `J`.
    pub fn group_defect(&self) -> f64 {
        let j = Matrix3([[-1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]]);
        (self.0.transpose() * j * self.0).frobenius_distance(&j)
    }
}

/// The pure boost taking `p` on the upper sheet to the north pole
/// `(0, 0, 1)`, with no extra spatial rotation.
pub fn boost_to_north(p: AmbientVector, tol: f64) -> Result<LorentzMap> {
    if !p.is_finite() {
        return Err(Error::NonFinite);
    }
    let q = dot_l(p, p);
    if (q - 1.0).abs() > tol || p.z <= 0.0 {
        return Err(Error::NotOnHyperboloid {
            deviation: q - 1.0,
            height: p.z,
        });
    }
    let p = p.scale(1.0 / q.sqrt());
    let (wx, wy, h) = (p.x, p.y, p.z);
    let f = 1.0 / (1.0 + h);
    Ok(LorentzMap(Matrix3([
        [1.0 + wx * wx * f, wx * wy * f, -wx],
        [wx * wy * f, 1.0 + wy * wy * f, -wy],
        [-wx, -wy, h],
    ])))
}
