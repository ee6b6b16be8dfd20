use serde::{Deserialize, Serialize};

/// Numeric thresholds used by the geometry routines.
///
/// Nothing here is global: every routine that can fail on a threshold takes
/// a `&Tolerances` argument.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Inputs within this distance of their manifold are projected onto it;
    /// anything further off is rejected.
    pub manifold: f64,
    /// A pairwise inner product of sphere midpoints below this magnitude
    /// counts as zero when classifying.
    pub zero: f64,
    /// A rotation within this Frobenius distance of the identity has no axis.
    pub identity: f64,
    /// Two sphere points with `|p + q|` below this are treated as antipodal.
    pub antipodal: f64,
    /// A hyperbolic midpoint triple with `1 - det^2` below this is rejected.
    pub realizability: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            manifold: 1e-9,
            zero: 1e-8,
            identity: 1e-8,
            antipodal: 1e-8,
            realizability: 1e-12,
        }
    }
}

impl Tolerances {
    /// Sets the classifier zero threshold and the identity-rotation
    /// threshold together; the two must fire together near orthonormal
    /// midpoint frames.
    pub fn with_zero(mut self, zero: f64) -> Self {
        self.zero = zero;
        self.identity = zero;
        self
    }

    pub fn with_manifold(mut self, manifold: f64) -> Self {
        self.manifold = manifold;
        self
    }
}
