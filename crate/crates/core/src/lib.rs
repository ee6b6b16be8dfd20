//! Oriented areas of geodesic triangles on the sphere and the hyperbolic
//! plane, computed from the corners or from the three side midpoints.
//!
//! For a triangle with corners `a, b, c` and side midpoints `alpha` (of
//! `bc`), `beta` (of `ca`), `gamma` (of `ab`), both geometries satisfy
//!
//! ```text
//! sin(area/2) = det(a,b,c) / sqrt(2 (1 + <a,b>)(1 + <b,c>)(1 + <c,a>)) = det(alpha, beta, gamma)
//! ```
//!
//! with the Euclidean product on the sphere and the Lorentzian one on the
//! hyperboloid. The [`sphere`] and [`hyperbolic`] modules implement the
//! closed forms together with the inverse map from midpoints back to
//! corners; [`oracle`] holds independent reference computations used to
//! check them.
//!
//! ```
//! use midarea::{sphere, AmbientVector, Tolerances};
//!
//! let tol = Tolerances::default();
//! let p = |x, y, z| sphere::SpherePoint::new(AmbientVector::new(x, y, z), tol.manifold).unwrap();
//! let t = sphere::SphereTriangle::new(p(1.0, 0.0, 0.0), p(0.0, 1.0, 0.0), p(0.0, 0.0, 1.0));
//! let mids = sphere::midpoints_of(&t, &tol).unwrap();
//! let area = sphere::area_from_midpoints(&mids, &tol).unwrap();
//! assert!((area.value() - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
//! ```

pub mod area;
pub mod cli;
pub mod error;
pub mod hyperbolic;
pub mod linalg;
pub mod oracle;
pub mod sphere;
pub mod tolerance;

pub use area::{Geometry, OrientedArea};
pub use error::{Error, Result};
pub use linalg::AmbientVector;
pub use tolerance::Tolerances;
