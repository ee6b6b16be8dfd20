use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Sphere,
    Hyperbolic,
    Planar,
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Geometry::Sphere => "sphere",
            Geometry::Hyperbolic => "hyperbolic",
            Geometry::Planar => "planar",
        })
    }
}

/// A signed triangle area tagged with its geometry.
///
/// Sphere areas are only meaningful modulo `4 pi` and are stored in the
/// canonical range `(-2 pi, 2 pi]`. Hyperbolic areas lie in `(-pi, pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientedArea {
    value: f64,
    geometry: Geometry,
}

impl OrientedArea {
    pub fn sphere(raw: f64) -> Self {
        Self {
            value: canonical_mod_4pi(raw),
            geometry: Geometry::Sphere,
        }
    }

    pub fn hyperbolic(value: f64) -> Self {
        Self {
            value,
            geometry: Geometry::Hyperbolic,
        }
    }

    pub fn planar(value: f64) -> Self {
        Self {
            value,
            geometry: Geometry::Planar,
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    /// Distance to `other`, taken modulo `4 pi` on the sphere.
    pub fn distance(&self, other: f64) -> f64 {
        match self.geometry {
            Geometry::Sphere => distance_mod_4pi(self.value, other),
            _ => (self.value - other).abs(),
        }
    }
}

/// Reduces an angle-like value into `(-2 pi, 2 pi]`.
pub fn canonical_mod_4pi(x: f64) -> f64 {
    let period = 4.0 * PI;
    let mut r = x - period * (x / period).round();
    if r <= -2.0 * PI {
        r += period;
    } else if r > 2.0 * PI {
        r -= period;
    }
    r
}

/// `|x - y|` measured on the circle of circumference `4 pi`.
pub fn distance_mod_4pi(x: f64, y: f64) -> f64 {
    canonical_mod_4pi(x - y).abs()
}
