use thiserror::Error;

use crate::sphere::MidpointClass;

/// Everything that can go wrong when computing areas, midpoints or corners.
///
/// The variants split into malformed input (a point off its manifold, a
/// non-finite coordinate) and configurations that are well formed but
/// mathematically singular. [`Error::is_singular`] tells them apart.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite coordinate in input")]
    NonFinite,
    #[error("rotation axis has zero length")]
    ZeroAxis,
    #[error("rotation is the identity; its axis is undetermined")]
    IdentityRotation,
    #[error("point is not on the unit sphere (|p|^2 - 1 = {deviation:e})")]
    NotUnit { deviation: f64 },
    #[error("point is not on the upper hyperboloid sheet (<p,p>_L - 1 = {deviation:e}, h = {height})")]
    NotOnHyperboloid { deviation: f64, height: f64 },
    #[error("antipodal points have no unique midpoint")]
    AntipodalPair,
    #[error("two corners are antipodal")]
    AntipodalCorners,
    #[error("area argument vanishes; the triangle is degenerate")]
    DegenerateArg,
    #[error("midpoints are singular ({class})")]
    SingularMidpoints { class: MidpointClass },
    #[error("midpoints form an orthonormal frame; corners are undetermined")]
    Undetermined,
    #[error("midpoint triple is not realizable (det = {det})")]
    NotRealizable { det: f64 },
    #[error("degenerate triangle")]
    DegenerateTriangle,
    #[error("quadrature did not converge within {evaluations} evaluations")]
    QuadratureFailure { evaluations: usize },
    #[error("invalid generator configuration: {0}")]
    InvalidConfig(&'static str),
}

impl Error {
    /// True for well-formed input that hits a singular configuration.
    pub fn is_singular(&self) -> bool {
        !matches!(
            self,
            Error::NonFinite
                | Error::NotUnit { .. }
                | Error::NotOnHyperboloid { .. }
                | Error::InvalidConfig(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
