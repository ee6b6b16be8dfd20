use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;

use midarea::area::distance_mod_4pi;
use midarea::hyperbolic::{self, HypMidpoints, HypPoint, HypTriangle};
use midarea::linalg::{
    boost_to_north, cross, det3, dot_e, point_reflection, rotate_to_north, rotation_axis, AmbientVector,
    LorentzMap, Rotation,
};
use midarea::oracle::{self, GeneratorConfig, PlanarPoint, RandomTriangle, TriangleStream};
use midarea::sphere::{self, MidpointClass, Side, SphereMidpoints, SpherePoint, SphereTriangle};
use midarea::{Error, Geometry, Tolerances};

fn sphere_point() -> impl Strategy<Value = SpherePoint> {
    (-1.0f64..=1.0, 0.0..2.0 * PI).prop_map(|(h, phi)| SpherePoint::from_polar(h.acos(), phi))
}

fn hyp_point() -> impl Strategy<Value = HypPoint> {
    (0.0f64..5.0, 0.0..2.0 * PI).prop_map(|(theta, phi)| HypPoint::from_polar(theta, phi))
}

/// Sphere triangles away from antipodal pairs and degenerate midpoints.
fn sphere_triangle() -> impl Strategy<Value = SphereTriangle> {
    (sphere_point(), sphere_point(), sphere_point())
        .prop_map(|(a, b, c)| SphereTriangle::new(a, b, c))
        .prop_filter("near singular", |t| {
            let tol = Tolerances::default();
            let far = [(t.a, t.b), (t.b, t.c), (t.c, t.a)]
                .iter()
                .all(|(p, q)| dot_e(p.ambient(), q.ambient()).abs() < 1.0 - 1e-3);
            far && sphere::sine_half_area(t.a, t.b, t.c, &tol).is_ok_and(|s| s.abs() > 1e-3)
                && sphere::midpoints_of(t, &tol).is_ok_and(|m| m.inner_products().iter().all(|x| x.abs() > 1e-3))
        })
}

fn hyp_triangle() -> impl Strategy<Value = HypTriangle> {
    (hyp_point(), hyp_point(), hyp_point())
        .prop_map(|(a, b, c)| HypTriangle::new(a, b, c))
        .prop_filter("thin", |t| hyperbolic::sine_half_area(t.a, t.b, t.c).abs() > 1e-3)
}

/// A proper rotation built from two half turns and a move to the pole.
fn rotation() -> impl Strategy<Value = Rotation> {
    (sphere_point(), sphere_point(), sphere_point()).prop_map(|(p, u, v)| {
        let north = rotate_to_north(p.ambient(), 1e-9).unwrap();
        let h1 = Rotation::half_turn(u.ambient()).unwrap();
        let h2 = Rotation::half_turn(v.ambient()).unwrap();
        h2.after(&h1).after(&north)
    })
}

/// A boost of rapidity below 2 followed by a rotation about the `h` axis.
/// Past that, corners land where Lorentz products cancel more digits than
/// the area bound allows.
fn lorentz_map() -> impl Strategy<Value = LorentzMap> {
    (0.0f64..2.0, 0.0..2.0 * PI, 0.0..2.0 * PI).prop_map(|(rapidity, bearing, angle)| {
        let p = HypPoint::from_polar(rapidity, bearing);
        let boost = boost_to_north(p.ambient(), 1e-9).unwrap();
        LorentzMap::spatial_rotation(angle).after(&boost)
    })
}

proptest! {
    #[test]
    fn point_reflection_is_an_involution(axis in sphere_point(), p in sphere_point()) {
        let once = point_reflection(axis.ambient(), p.ambient()).unwrap();
        let twice = point_reflection(axis.ambient(), once).unwrap();
        prop_assert!(twice.max_abs_diff(&p.ambient()) < 1e-12);
    }

    #[test]
    fn half_turn_product_turns_about_the_cross_product(v in sphere_point(), w in sphere_point()) {
        let n = cross(v.ambient(), w.ambient());
        prop_assume!(n.norm_e() > 1e-3);
        let r = Rotation::half_turn(v.ambient()).unwrap().after(&Rotation::half_turn(w.ambient()).unwrap());
        let (axis, _) = rotation_axis(&r, 1e-8).unwrap();
        prop_assert!(cross(axis, n.normalized().unwrap()).norm_e() < 1e-9);
    }

    #[test]
    fn normalizing_isometries_stay_in_their_groups(p in sphere_point(), q in hyp_point()) {
        let r = rotate_to_north(p.ambient(), 1e-9).unwrap();
        prop_assert!(r.group_defect() < 1e-12);
        prop_assert!(r.apply(p.ambient()).max_abs_diff(&AmbientVector::E3) < 1e-12);
        let l = boost_to_north(q.ambient(), 1e-9).unwrap();
        let scale = q.ambient().z * q.ambient().z;
        prop_assert!(l.group_defect() < 1e-12 * scale.max(1.0));
        prop_assert!(l.apply(q.ambient()).max_abs_diff(&AmbientVector::E3) < 1e-12 * scale.max(1.0));
    }

    #[test]
    fn det3_is_alternating(a in sphere_point(), b in sphere_point(), c in sphere_point()) {
        let (a, b, c) = (a.ambient(), b.ambient(), c.ambient());
        let d = det3(a, b, c);
        prop_assert!((det3(b, c, a) - d).abs() < 1e-15);
        prop_assert!((det3(c, a, b) - d).abs() < 1e-15);
        prop_assert!((det3(b, a, c) + d).abs() < 1e-15);
        prop_assert!((det3(a, c, b) + d).abs() < 1e-15);
        prop_assert!((det3(c, b, a) + d).abs() < 1e-15);
    }

    #[test]
    fn sphere_area_matches_midpoint_area(t in sphere_triangle(), side in 0usize..4) {
        let tol = Tolerances::default();
        let t = t.with_major_arc(Side::ALL.get(side).copied());
        let corners = sphere::triangle_area(&t, &tol).unwrap();
        let mids = sphere::area_from_midpoints(&sphere::midpoints_of(&t, &tol).unwrap(), &tol).unwrap();
        prop_assert!(distance_mod_4pi(corners.value(), mids.value()) < 1e-10);
    }

    #[test]
    fn sphere_round_trip(t in sphere_triangle(), side in 0usize..4) {
        let tol = Tolerances::default();
        let t = t.with_major_arc(Side::ALL.get(side).copied());
        let m = sphere::midpoints_of(&t, &tol).unwrap();
        let back = sphere::reconstruct(&m, &tol).unwrap();
        prop_assert_eq!(back.major_arc, t.major_arc);
        prop_assert!(back.corner_distance(&t) < 1e-9);
        let cf = sphere::reconstruct_closed_form(&m, &tol).unwrap();
        prop_assert!(back.corner_distance(&cf) < 1e-9);
    }

    #[test]
    fn sphere_area_is_rotation_invariant(t in sphere_triangle(), r in rotation()) {
        let tol = Tolerances::default();
        let before = sphere::area_corners(t.a, t.b, t.c, &tol).unwrap().value();
        let u = t.rotated(&r);
        let after = sphere::area_corners(u.a, u.b, u.c, &tol).unwrap().value();
        prop_assert!(distance_mod_4pi(before, after) < 1e-12);
    }

    #[test]
    fn sphere_area_is_alternating(t in sphere_triangle()) {
        let tol = Tolerances::default();
        let area = |a, b, c| sphere::area_corners(a, b, c, &tol).unwrap().value();
        let w = area(t.a, t.b, t.c);
        prop_assert!(distance_mod_4pi(area(t.a, t.c, t.b), -w) < 1e-12);
        prop_assert!(distance_mod_4pi(area(t.b, t.c, t.a), w) < 1e-12);
    }

    #[test]
    fn midpoint_heights_share_a_sign(t in sphere_triangle()) {
        // With gamma at the north pole, alpha and beta lie in the same hemisphere.
        let tol = Tolerances::default();
        let m = sphere::midpoints_of(&t, &tol).unwrap();
        let r = rotate_to_north(m.gamma.ambient(), 1e-9).unwrap();
        let (ha, hb) = (r.apply(m.alpha.ambient()).z, r.apply(m.beta.ambient()).z);
        prop_assume!(ha.abs() > 1e-9 && hb.abs() > 1e-9);
        prop_assert_eq!(ha > 0.0, hb > 0.0);
    }

    #[test]
    fn orthonormal_frames_compose_to_the_identity(p in sphere_point(), q in sphere_point(), flip in any::<bool>()) {
        let u = p.ambient();
        let v = cross(u, q.ambient());
        prop_assume!(v.norm_e() > 1e-3);
        let v = v.normalized().unwrap();
        let w = if flip { -cross(u, v) } else { cross(u, v) };
        let a = Rotation::half_turn(w).unwrap()
            .after(&Rotation::half_turn(v).unwrap())
            .after(&Rotation::half_turn(u).unwrap());
        prop_assert!(a.matrix().frobenius_distance(&Rotation::IDENTITY.matrix().clone()) < 1e-10);
        let s = |x| SpherePoint::new(x, 1e-9).unwrap();
        let m = SphereMidpoints::new(s(u), s(v), s(w));
        let area = sphere::area_from_midpoints(&m, &Tolerances::default()).unwrap().value();
        prop_assert!((area.abs() - PI).abs() < 1e-12);
        prop_assert_eq!(area > 0.0, m.det3() > 0.0);
    }

    #[test]
    fn hyperbolic_midpoint_area_and_round_trip(t in hyp_triangle()) {
        let tol = Tolerances::default();
        let area = hyperbolic::area_corners(t.a, t.b, t.c).value();
        let m = hyperbolic::midpoints_of(&t);
        prop_assert!(area.abs() < PI && m.det3().abs() < 1.0);
        let from_mids = hyperbolic::area_from_midpoints(&m, &tol).unwrap().value();
        prop_assert!((area - from_mids).abs() < 1e-10);
        let back = hyperbolic::reconstruct(&m, &tol).unwrap();
        prop_assert!(back.corner_distance(&t) < 1e-9);
    }

    #[test]
    fn hyperbolic_area_is_isometry_invariant(t in hyp_triangle(), l in lorentz_map()) {
        let u = t.mapped(&l);
        let before = hyperbolic::area_corners(t.a, t.b, t.c).value();
        let after = hyperbolic::area_corners(u.a, u.b, u.c).value();
        prop_assert!((before - after).abs() < 1e-10);
    }

    #[test]
    fn hyperbolic_area_is_alternating(t in hyp_triangle()) {
        let area = |a, b, c| hyperbolic::area_corners(a, b, c).value();
        let w = area(t.a, t.b, t.c);
        prop_assert!((area(t.b, t.a, t.c) + w).abs() < 1e-12);
        prop_assert!((area(t.c, t.a, t.b) - w).abs() < 1e-12);
    }

    #[test]
    fn realizability_boundary_is_sharp(l in lorentz_map(), above in any::<bool>()) {
        // gamma = north, alpha = (sinh t, 0, cosh t), beta = (0, sinh t, cosh t) has det = sinh^2 t.
        let d: f64 = if above { 1.0 + 1e-3 } else { 1.0 - 1e-3 };
        let t = d.sqrt().asinh();
        let m = HypMidpoints::new(
            HypPoint::from_polar(t, 0.0).mapped(&l),
            HypPoint::from_polar(t, FRAC_PI_2).mapped(&l),
            HypPoint::north().mapped(&l),
        );
        let tol = Tolerances::default();
        prop_assert!((m.det3() - d).abs() < 1e-6);
        prop_assert_eq!(m.is_realizable(&tol), !above);
        let area = hyperbolic::area_from_midpoints(&m, &tol);
        let rec = hyperbolic::reconstruct(&m, &tol);
        if above {
            let rejected = |r: &Result<_, Error>| matches!(r, Err(Error::NotRealizable { .. }));
            prop_assert!(rejected(&area.map(|a| a.value())));
            prop_assert!(rejected(&rec.map(|_| 0.0)));
        } else {
            prop_assert!(area.is_ok());
            let back = hyperbolic::midpoints_of(&rec.unwrap());
            let scale = m.points().iter().map(|p| p.ambient().z).fold(1.0, f64::max);
            for (x, y) in back.points().iter().zip(m.points()) {
                prop_assert!(x.ambient().max_abs_diff(&y.ambient()) < 1e-9 * scale);
            }
        }
    }

    #[test]
    fn planar_corner_and_midpoint_forms_agree(
        a in (-1.0f64..1.0, -1.0f64..1.0),
        b in (-1.0f64..1.0, -1.0f64..1.0),
        c in (-1.0f64..1.0, -1.0f64..1.0),
    ) {
        let [a, b, c] = [a, b, c].map(|(u, v)| PlanarPoint::new(u, v));
        let m = oracle::planar_midpoints(a, b, c);
        let direct = oracle::planar_area(a, b, c);
        prop_assert!((oracle::planar_area_from_midpoints(m[0], m[1], m[2]) - direct).abs() < 1e-14);
        let back = oracle::planar_reconstruct(m[0], m[1], m[2]);
        for (x, y) in back.iter().zip([a, b, c]) {
            prop_assert!((x.u - y.u).abs() < 1e-14 && (x.v - y.v).abs() < 1e-14);
        }
    }
}

#[test]
fn three_way_oracle_agreement() {
    let tol = Tolerances::default();
    let quad_tol = 1e-8;
    let bound = 1e-8f64.max(quad_tol);
    let mut s = TriangleStream::new(GeneratorConfig::new(Geometry::Sphere, 21)).unwrap();
    for _ in 0..1000 {
        let t = s.next_sphere();
        let closed = sphere::area_corners(t.a, t.b, t.c, &tol).unwrap().value();
        let excess = oracle::sphere_excess_area(t.a, t.b, t.c).unwrap();
        let quad = oracle::sphere_quadrature_area(t.a, t.b, t.c, quad_tol).unwrap();
        assert!(distance_mod_4pi(closed, excess) < bound);
        assert!(distance_mod_4pi(closed, quad) < bound, "{t:?}");
        assert!(distance_mod_4pi(excess, quad) < bound);
    }
    let mut s = TriangleStream::new(GeneratorConfig::new(Geometry::Hyperbolic, 22)).unwrap();
    for _ in 0..1000 {
        let t = s.next_hyperbolic();
        let closed = hyperbolic::area_corners(t.a, t.b, t.c).value();
        let deficit = oracle::hyp_deficit_area(t.a, t.b, t.c).unwrap();
        let quad = oracle::hyp_quadrature_area(t.a, t.b, t.c, quad_tol).unwrap();
        assert!((closed - deficit).abs() < bound);
        assert!((closed - quad).abs() < bound, "{t:?}");
        assert!((deficit - quad).abs() < bound);
    }
}

#[test]
fn octant_excess_and_its_complement_fill_a_hemisphere() {
    let tol = Tolerances::default();
    let e = |x, y, z| SpherePoint::new(AmbientVector::new(x, y, z), 1e-9).unwrap();
    let t = SphereTriangle::new(e(1.0, 0.0, 0.0), e(0.0, 1.0, 0.0), e(0.0, 0.0, 1.0));
    let octant = oracle::sphere_excess_area(t.a, t.b, t.c).unwrap();
    assert!((octant - FRAC_PI_2).abs() < 1e-12);
    for side in Side::ALL {
        let other = oracle::sphere_excess_area_triangle(&t.with_major_arc(Some(side)), &tol).unwrap();
        assert!((octant.abs() + other.abs() - 2.0 * PI).abs() < 1e-10, "{side}: {other}");
        assert!((octant - other - 2.0 * PI).abs() < 1e-10, "{side}: {other}");
    }
}

#[test]
fn singular_classes_are_rejected() {
    let tol = Tolerances::default();
    let s = |x, y, z| SpherePoint::new(AmbientVector::new(x, y, z), 1e-9).unwrap();
    let r3 = 3f64.sqrt().recip();
    let one_zero = SphereMidpoints::new(s(1.0, 0.0, 0.0), s(0.0, 1.0, 0.0), s(r3, r3, r3));
    assert_eq!(sphere::classify_midpoints(&one_zero, tol.zero).class, MidpointClass::OneZero);
    let err = Err(Error::SingularMidpoints {
        class: MidpointClass::OneZero,
    });
    assert_eq!(sphere::area_from_midpoints(&one_zero, &tol), err);
    assert_eq!(sphere::reconstruct(&one_zero, &tol).err(), err.err());
}

#[test]
fn generator_is_reproducible() {
    for geometry in [Geometry::Sphere, Geometry::Hyperbolic, Geometry::Planar] {
        let cfg = GeneratorConfig::new(geometry, 99).with_major_arc(geometry == Geometry::Sphere);
        let a: Vec<RandomTriangle> = TriangleStream::new(cfg).unwrap().take(100).collect();
        let b: Vec<RandomTriangle> = TriangleStream::new(cfg).unwrap().take(100).collect();
        assert_eq!(a, b);
        let c: Vec<RandomTriangle> = TriangleStream::new(GeneratorConfig { seed: 100, ..cfg })
            .unwrap()
            .take(100)
            .collect();
        assert_ne!(a, c);
    }
}
