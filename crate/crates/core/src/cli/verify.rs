use std::f64::consts::PI;

use rayon::prelude::*;

use super::document::{CheckSummary, Failure, Request, Response, Status};
use crate::area::{distance_mod_4pi, Geometry};
use crate::error::Error;
use crate::hyperbolic::{self, HypTriangle};
use crate::oracle::{self, GeneratorConfig, PlanarPoint, RandomTriangle, TriangleStream};
use crate::sphere::{self, SphereTriangle};
use crate::tolerance::Tolerances;

/// At most this many failing triangles are reported.
pub const MAX_REPORTED_FAILURES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub geometry: Geometry,
    pub count: usize,
    pub seed: u64,
    /// Target accuracy handed to the quadrature oracle.
    pub quadrature_tol: f64,
    pub tolerances: Tolerances,
}

impl VerifyOptions {
    pub fn new(geometry: Geometry, count: usize, seed: u64) -> Self {
        Self {
            geometry,
            count,
            seed,
            quadrature_tol: 1e-10,
            tolerances: Tolerances::default(),
        }
    }
}

#[derive(Clone, Copy)]
enum Check {
    SineHalfArea,
    MidpointArea,
    RoundTrip,
    ClosedForm,
    Excess,
    Quadrature,
    AreaBound,
    DetBound,
}

impl Check {
    const ALL: [Check; 8] = [
        Check::SineHalfArea,
        Check::MidpointArea,
        Check::RoundTrip,
        Check::ClosedForm,
        Check::Excess,
        Check::Quadrature,
        Check::AreaBound,
        Check::DetBound,
    ];

    fn name(self) -> &'static str {
        match self {
            Check::SineHalfArea => "sine_half_area",
            Check::MidpointArea => "midpoint_area",
            Check::RoundTrip => "round_trip",
            Check::ClosedForm => "closed_form",
            Check::Excess => "excess",
            Check::Quadrature => "quadrature",
            Check::AreaBound => "area_bound",
            Check::DetBound => "det_bound",
        }
    }

    fn bound(self) -> f64 {
        match self {
            Check::SineHalfArea | Check::MidpointArea => 1e-10,
            Check::RoundTrip | Check::ClosedForm => 1e-9,
            Check::Excess => 1e-8,
            Check::Quadrature => 1e-6,
            Check::AreaBound => PI,
            Check::DetBound => 1.0,
        }
    }
}

type Sample = (Check, Result<f64, Error>);

fn sphere_samples(t: &SphereTriangle, opts: &VerifyOptions) -> Vec<Sample> {
    let tol = &opts.tolerances;
    let mut out = Vec::with_capacity(6);
    let area = sphere::triangle_area(t, tol);
    let mids = sphere::midpoints_of(t, tol);

    out.push((
        Check::SineHalfArea,
        mids.clone().and_then(|m| {
            let flip = if t.major_arc.is_some() { -1.0 } else { 1.0 };
            Ok((flip * sphere::sine_half_area(t.a, t.b, t.c, tol)? - m.det3()).abs())
        }),
    ));
    out.push((
        Check::MidpointArea,
        mids.clone().and_then(|m| {
            let from_mids = sphere::area_from_midpoints(&m, tol)?;
            Ok(distance_mod_4pi(area.clone()?.value(), from_mids.value()))
        }),
    ));
    out.push((
        Check::RoundTrip,
        mids.clone().and_then(|m| {
            let back = sphere::reconstruct(&m, tol)?;
            Ok(if back.major_arc == t.major_arc {
                back.corner_distance(t)
            } else {
                f64::INFINITY
            })
        }),
    ));
    out.push((
        Check::ClosedForm,
        mids.and_then(|m| {
            let rot = sphere::reconstruct(&m, tol)?;
            let cf = sphere::reconstruct_closed_form(&m, tol)?;
            Ok(if rot.major_arc == cf.major_arc {
                rot.corner_distance(&cf)
            } else {
                f64::INFINITY
            })
        }),
    ));
    out.push((
        Check::Excess,
        oracle::sphere_excess_area_triangle(t, tol)
            .and_then(|e| Ok(distance_mod_4pi(e, area.clone()?.value()))),
    ));
    if t.major_arc.is_none() {
        out.push((
            Check::Quadrature,
            oracle::sphere_quadrature_area(t.a, t.b, t.c, opts.quadrature_tol)
                .and_then(|q| Ok(distance_mod_4pi(q, area?.value()))),
        ));
    }
    out
}

fn hyperbolic_samples(t: &HypTriangle, opts: &VerifyOptions) -> Vec<Sample> {
    let tol = &opts.tolerances;
    let area = hyperbolic::area_corners(t.a, t.b, t.c).value();
    let mids = hyperbolic::midpoints_of(t);
    vec![
        (
            Check::SineHalfArea,
            Ok((hyperbolic::sine_half_area(t.a, t.b, t.c) - mids.det3()).abs()),
        ),
        (
            Check::MidpointArea,
            hyperbolic::area_from_midpoints(&mids, tol).map(|m| (m.value() - area).abs()),
        ),
        (
            Check::RoundTrip,
            hyperbolic::reconstruct(&mids, tol).map(|back| back.corner_distance(t)),
        ),
        (
            Check::Excess,
            oracle::hyp_deficit_area(t.a, t.b, t.c).map(|d| (d - area).abs()),
        ),
        (
            Check::Quadrature,
            oracle::hyp_quadrature_area(t.a, t.b, t.c, opts.quadrature_tol).map(|q| (q - area).abs()),
        ),
        (Check::AreaBound, Ok(area.abs())),
        (Check::DetBound, Ok(mids.det3().abs())),
    ]
}

fn planar_samples(p: &[PlanarPoint; 3]) -> Vec<Sample> {
    let area = oracle::planar_area(p[0], p[1], p[2]);
    let m = oracle::planar_midpoints(p[0], p[1], p[2]);
    let back = oracle::planar_reconstruct(m[0], m[1], m[2]);
    let trip = back
        .iter()
        .zip(p)
        .map(|(x, y)| (x.u - y.u).abs().max((x.v - y.v).abs()))
        .fold(0.0, f64::max);
    vec![
        (
            Check::MidpointArea,
            Ok((oracle::planar_area_from_midpoints(m[0], m[1], m[2]) - area).abs()),
        ),
        (Check::RoundTrip, Ok(trip)),
    ]
}

fn as_request(t: &RandomTriangle) -> Request {
    match t {
        RandomTriangle::Sphere(t) => {
            let mut r = Request::with_corners(
                Geometry::Sphere,
                t.corners().iter().map(|p| p.ambient().to_array().to_vec()).collect(),
            );
            r.major_arc_side = t.major_arc;
            r
        }
        RandomTriangle::Hyperbolic(t) => Request::with_corners(
            Geometry::Hyperbolic,
            t.corners().iter().map(|p| p.ambient().to_array().to_vec()).collect(),
        ),
        RandomTriangle::Planar(p) => {
            Request::with_corners(Geometry::Planar, p.iter().map(|q| vec![q.u, q.v]).collect())
        }
    }
}

fn generate(cfg: GeneratorConfig, count: usize) -> Result<Vec<RandomTriangle>, Error> {
    let mut stream = TriangleStream::new(cfg)?;
    Ok((0..count).map(|_| stream.next_triangle()).collect())
}

#[derive(Default, Clone, Copy)]
struct Tally {
    samples: usize,
    errors: usize,
    max: f64,
}

/// Draws `count` seeded triangles (plus, on the sphere, `count` more with
/// a major-arc side), runs every applicable check on each and reports the
/// worst value per check.
pub fn run_verify(opts: &VerifyOptions) -> Response {
    let mut resp = Response::new(Status::Ok, "verify");
    resp.geometry = Some(opts.geometry);
    resp.count = Some(opts.count);
    resp.seed = Some(opts.seed);
    if opts.count == 0 {
        resp.status = Status::Invalid;
        resp.error = Some("count must be at least 1".into());
        return resp;
    }
    if !(opts.quadrature_tol > 0.0 && opts.quadrature_tol.is_finite()) {
        resp.status = Status::Invalid;
        resp.error = Some("quadrature tolerance must be positive".into());
        return resp;
    }

    let cfg = GeneratorConfig::new(opts.geometry, opts.seed);
    let mut triangles = match generate(cfg, opts.count) {
        Ok(t) => t,
        Err(e) => {
            resp.status = Status::Invalid;
            resp.error = Some(e.to_string());
            return resp;
        }
    };
    if opts.geometry == Geometry::Sphere {
        match generate(cfg.with_major_arc(true), opts.count) {
            Ok(t) => triangles.extend(t),
            Err(e) => {
                resp.status = Status::Invalid;
                resp.error = Some(e.to_string());
                return resp;
            }
        }
    }

    let results: Vec<Vec<Sample>> = triangles
        .par_iter()
        .map(|t| match t {
            RandomTriangle::Sphere(t) => sphere_samples(t, opts),
            RandomTriangle::Hyperbolic(t) => hyperbolic_samples(t, opts),
            RandomTriangle::Planar(p) => planar_samples(p),
        })
        .collect();

    let mut tallies = [Tally::default(); Check::ALL.len()];
    let mut failures = Vec::new();
    for (t, samples) in triangles.iter().zip(&results) {
        for (check, value) in samples {
            let tally = &mut tallies[*check as usize];
            tally.samples += 1;
            let failure = match value {
                Ok(v) => {
                    tally.max = tally.max.max(*v);
                    (!(*v < check.bound())).then(|| (Some(*v), None))
                }
                Err(e) => {
                    tally.errors += 1;
                    Some((None, Some(e.to_string())))
                }
            };
            if let Some((value, error)) = failure {
                if failures.len() < MAX_REPORTED_FAILURES {
                    failures.push(Failure {
                        check: check.name().to_owned(),
                        value: value.filter(|v| v.is_finite()),
                        error,
                        request: as_request(t),
                    });
                }
            }
        }
    }

    let checks: Vec<CheckSummary> = Check::ALL
        .iter()
        .zip(&tallies)
        .filter(|(_, t)| t.samples > 0)
        .map(|(c, t)| CheckSummary {
            name: c.name().to_owned(),
            samples: t.samples,
            max: t.max,
            bound: c.bound(),
            errors: t.errors,
            passed: t.errors == 0 && t.max < c.bound(),
        })
        .collect();
    let all_passed = checks.iter().all(|c| c.passed);
    resp.checks = Some(checks);
    if !all_passed {
        resp.failures = Some(failures);
    }
    resp
}

/// Exit status of a `verify` run: 1 when any check failed.
pub fn verify_exit_code(resp: &Response) -> i32 {
    match resp.status {
        Status::Ok if resp.checks.iter().flatten().all(|c| c.passed) => 0,
        Status::Ok => 1,
        s => s.exit_code(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        for g in [Geometry::Sphere, Geometry::Hyperbolic, Geometry::Planar] {
            let resp = run_verify(&VerifyOptions::new(g, 40, 7));
            assert_eq!(verify_exit_code(&resp), 0, "{g}: {resp:?}");
            assert!(resp.failures.is_none());
        }
    }

    #[test]
    fn zero_count_is_invalid() {
        let resp = run_verify(&VerifyOptions::new(Geometry::Sphere, 0, 1));
        assert_eq!(verify_exit_code(&resp), 2);
    }
}
