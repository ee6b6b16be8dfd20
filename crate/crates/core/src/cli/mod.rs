//! Command-line front end: JSON documents in, JSON documents out.
//!
//! Exit codes: 0 success, 1 verification failure, 2 malformed input,
//! 3 singular or not realizable.

mod document;
mod verify;

pub use document::{to_json, CheckSummary, Failure, Request, Response, Status};
pub use verify::{run_verify, verify_exit_code, VerifyOptions, MAX_REPORTED_FAILURES};

use crate::area::Geometry;
use crate::error::Error;
use crate::hyperbolic::{self, HypMidpoints, HypPoint, HypTriangle};
use crate::linalg::{det3, AmbientVector};
use crate::oracle::{self, PlanarPoint};
use crate::sphere::{self, MidpointClass, Sign, SphereMidpoints, SpherePoint, SphereTriangle};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Area,
    Midpoints,
    Reconstruct,
    Classify,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Area => "area",
            Command::Midpoints => "midpoints",
            Command::Reconstruct => "reconstruct",
            Command::Classify => "classify",
        }
    }
}

/// Command-line flags that override fields of the request document.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Overrides {
    pub geometry: Option<Geometry>,
    /// Manifold membership tolerance.
    pub tol: Option<f64>,
    /// Classifier zero threshold, shared with the identity-rotation test.
    pub zero_tol: Option<f64>,
}

enum Failed {
    Invalid(String),
    Math(Error),
}

impl From<Error> for Failed {
    fn from(e: Error) -> Self {
        if e.is_singular() {
            Failed::Math(e)
        } else {
            Failed::Invalid(e.to_string())
        }
    }
}

type Outcome = std::result::Result<Response, Failed>;

/// Parses `input` as a [`Request`] and runs `cmd` on it.
pub fn run_document(cmd: Command, input: &str, overrides: &Overrides) -> Response {
    match serde_json::from_str::<Request>(input) {
        Ok(req) => run_request(cmd, &req, overrides),
        Err(e) => invalid(cmd.name(), None, format!("malformed request: {e}")),
    }
}

pub fn run_request(cmd: Command, req: &Request, overrides: &Overrides) -> Response {
    if let Some(g) = overrides.geometry {
        if g != req.geometry {
            return invalid(
                cmd.name(),
                Some(req.geometry),
                format!("--geometry {g} disagrees with document geometry {}", req.geometry),
            );
        }
    }
    let mut tol = req.tolerances.unwrap_or_default();
    if let Some(t) = overrides.tol {
        tol = tol.with_manifold(t);
    }
    if let Some(z) = overrides.zero_tol {
        tol = tol.with_zero(z);
    }
    let result = match cmd {
        Command::Area => cmd_area(req, &tol),
        Command::Midpoints => cmd_midpoints(req, &tol),
        Command::Reconstruct => cmd_reconstruct(req, &tol),
        Command::Classify => cmd_classify(req, &tol),
    };
    match result {
        Ok(resp) => resp,
        Err(Failed::Invalid(msg)) => invalid(cmd.name(), Some(req.geometry), msg),
        Err(Failed::Math(e)) => singular(cmd.name(), req.geometry, &e),
    }
}

fn invalid(command: &str, geometry: Option<Geometry>, msg: String) -> Response {
    let mut r = Response::new(Status::Invalid, command);
    r.geometry = geometry;
    r.error = Some(msg);
    r
}

fn singular(command: &str, geometry: Geometry, e: &Error) -> Response {
    let (status, class) = match e {
        Error::NotRealizable { .. } => (Status::NotRealizable, "not_realizable".to_owned()),
        Error::Undetermined | Error::IdentityRotation => (Status::Singular, "undetermined".to_owned()),
        Error::SingularMidpoints { class } => (Status::Singular, class.name().to_owned()),
        Error::AntipodalPair | Error::AntipodalCorners | Error::DegenerateArg => {
            (Status::Singular, "antipodal".to_owned())
        }
        _ => (Status::Singular, "degenerate".to_owned()),
    };
    let mut r = Response::new(status, command);
    r.geometry = Some(geometry);
    r.class = Some(class);
    r.error = Some(e.to_string());
    r
}

fn ok(command: &str, geometry: Geometry) -> Response {
    let mut r = Response::new(Status::Ok, command);
    r.geometry = Some(geometry);
    r
}

fn triple<'a>(field: &'a Option<Vec<Vec<f64>>>, name: &str) -> std::result::Result<&'a [Vec<f64>], Failed> {
    match field {
        Some(v) if v.len() == 3 => Ok(v),
        Some(v) => Err(Failed::Invalid(format!("{name} must hold 3 points, got {}", v.len()))),
        None => Err(Failed::Invalid(format!("request has no {name}"))),
    }
}

fn ambient(points: &[Vec<f64>]) -> std::result::Result<[AmbientVector; 3], Failed> {
    let mut out = [AmbientVector::ZERO; 3];
    for (slot, p) in out.iter_mut().zip(points) {
        match p.as_slice() {
            &[x, y, z] => *slot = AmbientVector::new(x, y, z),
            _ => return Err(Failed::Invalid(format!("expected [x, y, z], got {} numbers", p.len()))),
        }
    }
    Ok(out)
}

fn planar(points: &[Vec<f64>]) -> std::result::Result<[PlanarPoint; 3], Failed> {
    let mut out = [PlanarPoint::new(0.0, 0.0); 3];
    for (slot, p) in out.iter_mut().zip(points) {
        match p.as_slice() {
            &[u, v] => *slot = PlanarPoint::new(u, v),
            _ => return Err(Failed::Invalid(format!("expected [u, v], got {} numbers", p.len()))),
        }
    }
    Ok(out)
}

fn sphere_points(points: &[Vec<f64>], tol: &Tolerances) -> std::result::Result<[SpherePoint; 3], Failed> {
    let [a, b, c] = ambient(points)?;
    Ok([
        SpherePoint::new(a, tol.manifold)?,
        SpherePoint::new(b, tol.manifold)?,
        SpherePoint::new(c, tol.manifold)?,
    ])
}

fn hyp_points(points: &[Vec<f64>], tol: &Tolerances) -> std::result::Result<[HypPoint; 3], Failed> {
    let [a, b, c] = ambient(points)?;
    Ok([
        HypPoint::new(a, tol.manifold)?,
        HypPoint::new(b, tol.manifold)?,
        HypPoint::new(c, tol.manifold)?,
    ])
}

fn rows<const N: usize>(points: impl IntoIterator<Item = [f64; N]>) -> Vec<Vec<f64>> {
    points.into_iter().map(|p| p.to_vec()).collect()
}

fn sphere_rows(points: [SpherePoint; 3]) -> Vec<Vec<f64>> {
    rows(points.map(|p| p.ambient().to_array()))
}

fn hyp_rows(points: [HypPoint; 3]) -> Vec<Vec<f64>> {
    rows(points.map(|p| p.ambient().to_array()))
}

fn planar_rows(points: [PlanarPoint; 3]) -> Vec<Vec<f64>> {
    rows(points.map(|p| [p.u, p.v]))
}

/// `det3` of the planar points lifted to height 1, which is `2 area` for
/// corners and `area / 2` for midpoints.
fn lifted_det(p: [PlanarPoint; 3]) -> f64 {
    let lift = |q: PlanarPoint| AmbientVector::new(q.u, q.v, 1.0);
    det3(lift(p[0]), lift(p[1]), lift(p[2]))
}

fn reject_both(req: &Request) -> std::result::Result<(), Failed> {
    if req.corners.is_some() && req.midpoints.is_some() {
        return Err(Failed::Invalid("supply either corners or midpoints, not both".into()));
    }
    if req.major_arc_side.is_some() && req.geometry != Geometry::Sphere {
        return Err(Failed::Invalid("major_arc_side applies only to the sphere".into()));
    }
    Ok(())
}

fn eta_value(class: MidpointClass) -> Option<i8> {
    match class {
        MidpointClass::Regular { eta: Sign::Positive } => Some(1),
        MidpointClass::Regular { eta: Sign::Negative } => Some(-1),
        _ => None,
    }
}

/// Area from corners, or from midpoints when the request carries those.
fn cmd_area(req: &Request, tol: &Tolerances) -> Outcome {
    reject_both(req)?;
    let mut r = ok("area", req.geometry);
    if req.midpoints.is_some() {
        if req.major_arc_side.is_some() {
            return Err(Failed::Invalid("major_arc_side needs corners".into()));
        }
        let pts = triple(&req.midpoints, "midpoints")?;
        match req.geometry {
            Geometry::Sphere => {
                let [al, be, ga] = sphere_points(pts, tol)?;
                let m = SphereMidpoints::new(al, be, ga);
                let cls = sphere::classify_midpoints(&m, tol.zero);
                let area = sphere::area_from_midpoints(&m, tol)?;
                r.area = Some(area.value());
                r.sine_half_area = Some(m.det3());
                r.det3 = Some(m.det3());
                r.class = Some(cls.class.name().to_owned());
                r.eta = eta_value(cls.class);
                r.inner_products = Some(cls.inner_products.to_vec());
            }
            Geometry::Hyperbolic => {
                let [al, be, ga] = hyp_points(pts, tol)?;
                let m = HypMidpoints::new(al, be, ga);
                let area = hyperbolic::area_from_midpoints(&m, tol)?;
                r.area = Some(area.value());
                r.sine_half_area = Some(m.det3());
                r.det3 = Some(m.det3());
            }
            Geometry::Planar => {
                let [al, be, ga] = planar(pts)?;
                r.area = Some(oracle::planar_area_from_midpoints(al, be, ga));
                r.det3 = Some(lifted_det([al, be, ga]));
            }
        }
        return Ok(r);
    }

    let pts = triple(&req.corners, "corners")?;
    match req.geometry {
        Geometry::Sphere => {
            let [a, b, c] = sphere_points(pts, tol)?;
            let t = SphereTriangle::new(a, b, c).with_major_arc(req.major_arc_side);
            let area = sphere::triangle_area(&t, tol)?;
            // Flagging a major arc shifts the area by 2 pi, flipping sin(area/2).
            let flip = if t.major_arc.is_some() { -1.0 } else { 1.0 };
            r.area = Some(area.value());
            r.sine_half_area = Some(flip * sphere::sine_half_area(a, b, c, tol)?);
            r.det3 = Some(det3(a.ambient(), b.ambient(), c.ambient()));
            r.major_arc_side = t.major_arc;
        }
        Geometry::Hyperbolic => {
            let [a, b, c] = hyp_points(pts, tol)?;
            r.area = Some(hyperbolic::area_corners(a, b, c).value());
            r.sine_half_area = Some(hyperbolic::sine_half_area(a, b, c));
            r.det3 = Some(det3(a.ambient(), b.ambient(), c.ambient()));
        }
        Geometry::Planar => {
            let [a, b, c] = planar(pts)?;
            r.area = Some(oracle::planar_area(a, b, c));
            r.det3 = Some(lifted_det([a, b, c]));
        }
    }
    Ok(r)
}

fn cmd_midpoints(req: &Request, tol: &Tolerances) -> Outcome {
    reject_both(req)?;
    let pts = triple(&req.corners, "corners")?;
    let mut r = ok("midpoints", req.geometry);
    match req.geometry {
        Geometry::Sphere => {
            let [a, b, c] = sphere_points(pts, tol)?;
            let t = SphereTriangle::new(a, b, c).with_major_arc(req.major_arc_side);
            let m = sphere::midpoints_of(&t, tol)?;
            r.midpoints = Some(sphere_rows(m.points()));
            r.det3 = Some(m.det3());
            r.major_arc_side = t.major_arc;
        }
        Geometry::Hyperbolic => {
            let [a, b, c] = hyp_points(pts, tol)?;
            let m = hyperbolic::midpoints_of(&HypTriangle::new(a, b, c));
            r.midpoints = Some(hyp_rows(m.points()));
            r.det3 = Some(m.det3());
        }
        Geometry::Planar => {
            let [a, b, c] = planar(pts)?;
            let m = oracle::planar_midpoints(a, b, c);
            r.midpoints = Some(planar_rows(m));
            r.det3 = Some(lifted_det(m));
        }
    }
    Ok(r)
}

fn max_point_diff(x: &[Vec<f64>], y: &[Vec<f64>]) -> f64 {
    x.iter()
        .zip(y)
        .flat_map(|(p, q)| p.iter().zip(q).map(|(a, b)| (a - b).abs()))
        .fold(0.0, f64::max)
}

fn cmd_reconstruct(req: &Request, tol: &Tolerances) -> Outcome {
    reject_both(req)?;
    let pts = triple(&req.midpoints, "midpoints")?;
    let mut r = ok("reconstruct", req.geometry);
    match req.geometry {
        Geometry::Sphere => {
            let [al, be, ga] = sphere_points(pts, tol)?;
            let m = SphereMidpoints::new(al, be, ga);
            let t = sphere::reconstruct(&m, tol)?;
            let back = sphere::midpoints_of(&t, tol)?;
            let cf = sphere::reconstruct_closed_form(&m, tol)?;
            r.corners = Some(sphere_rows(t.corners()));
            r.major_arc_side = t.major_arc;
            r.residual = Some(max_point_diff(&sphere_rows(back.points()), &sphere_rows(m.points())));
            r.closed_form_deviation = Some(t.corner_distance(&cf));
        }
        Geometry::Hyperbolic => {
            let [al, be, ga] = hyp_points(pts, tol)?;
            let m = HypMidpoints::new(al, be, ga);
            let t = hyperbolic::reconstruct(&m, tol)?;
            let back = hyperbolic::midpoints_of(&t);
            r.corners = Some(hyp_rows(t.corners()));
            r.residual = Some(max_point_diff(&hyp_rows(back.points()), &hyp_rows(m.points())));
        }
        Geometry::Planar => {
            let [al, be, ga] = planar(pts)?;
            let corners = oracle::planar_reconstruct(al, be, ga);
            let back = oracle::planar_midpoints(corners[0], corners[1], corners[2]);
            r.corners = Some(planar_rows(corners));
            r.residual = Some(max_point_diff(&planar_rows(back), &planar_rows([al, be, ga])));
        }
    }
    Ok(r)
}

fn cmd_classify(req: &Request, tol: &Tolerances) -> Outcome {
    reject_both(req)?;
    let pts = triple(&req.midpoints, "midpoints")?;
    let mut r = ok("classify", req.geometry);
    match req.geometry {
        Geometry::Sphere => {
            let [al, be, ga] = sphere_points(pts, tol)?;
            let m = SphereMidpoints::new(al, be, ga);
            let cls = sphere::classify_midpoints(&m, tol.zero);
            r.class = Some(cls.class.name().to_owned());
            r.eta = eta_value(cls.class);
            r.inner_products = Some(cls.inner_products.to_vec());
            r.det3 = Some(m.det3());
        }
        Geometry::Hyperbolic => {
            let [al, be, ga] = hyp_points(pts, tol)?;
            let m = HypMidpoints::new(al, be, ga);
            let realizable = m.is_realizable(tol);
            r.class = Some(if realizable { "realizable" } else { "not_realizable" }.to_owned());
            r.realizable = Some(realizable);
            r.det3 = Some(m.det3());
        }
        Geometry::Planar => {
            let m = planar(pts)?;
            r.class = Some("realizable".to_owned());
            r.realizable = Some(true);
            r.det3 = Some(lifted_det(m));
        }
    }
    Ok(r)
}
