use super::*;
use crate::numeric::d1_central;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn pseudocircle() -> ProfileCurve {
    ProfileCurve::from_family(
        Ambient::Hyperbolic,
        Family::MinkPseudocircle { a: 1.0 },
        (-1.2, 1.2),
    )
    .unwrap()
}

fn catenary() -> ProfileCurve {
    ProfileCurve::from_family(Ambient::Elliptic, Family::Catenary { a: 1.0 }, (-1.5, 1.5)).unwrap()
}

fn elliptic_r2() -> ProfileCurve {
    ProfileCurve::from_family(
        Ambient::Elliptic,
        Family::ConstantRTheta {
            radius: 2.0,
            omega: 1.0,
        },
        (-1.0, 1.0),
    )
    .unwrap()
}

fn clifford() -> ProfileCurve {
    ProfileCurve::from_family(
        Ambient::Euclidean,
        Family::EuclidCircle { radius: 1.0 },
        (0.0, 2.0 * std::f64::consts::PI),
    )
    .unwrap()
}

#[test]
fn pseudocircle_jet_at_zero() {
    let jet = pseudocircle().jet(0.0).unwrap();
    assert_eq!(jet.p.as_array(), [0.0, 0.0, 1.0]);
    assert_eq!(jet.d1.as_array(), [1.0, 0.0, 0.0]);
    assert_eq!(jet.d2.as_array(), [0.0, 0.0, 1.0]);
    assert_eq!(jet.d3.as_array(), [1.0, 0.0, 0.0]);
}

#[test]
fn catenary_jet_at_zero() {
    let jet = catenary().jet(0.0).unwrap();
    assert!(close(jet.p.r, 1.0, 1e-15));
    assert!(close(jet.d1.r, 0.0, 1e-15));
    assert!(close(jet.d2.r, 1.0, 1e-15));
    // Unit speed: x1'(0) = 1.
    assert!(close(jet.d1.x1, 1.0, 1e-15));
}

#[test]
fn tabulated_jet_matches_closed_form() {
    // Samples of the Euclidean circle profile on a step-1e-2 grid; x2 = sin u,
    // so d1.x2 at u = 0.5 is an oracle for cos(0.5).
    let n = 201;
    let us: Vec<f64> = (0..n).map(|i| i as f64 * 1e-2).collect();
    let x1: Vec<f64> = us.iter().map(|u| u.cos()).collect();
    let x2: Vec<f64> = us.iter().map(|u| u.sin()).collect();
    let r: Vec<f64> = us.iter().map(|_| 1.0).collect();
    let curve = ProfileCurve::from_samples(Ambient::Euclidean, us, x1, x2, r).unwrap();
    let jet = curve.jet(0.5).unwrap();
    assert!(
        close(jet.d1.x2, 0.5f64.cos(), 1e-8),
        "d1.x2 = {}, expected {}",
        jet.d1.x2,
        0.5f64.cos()
    );
    assert!(close(jet.d2.x2, -0.5f64.sin(), 1e-7));
}

#[test]
fn pseudocircle_frenet() {
    let f = pseudocircle().frenet(0.7).unwrap();
    assert!(close(f.kappa, 1.0, 1e-12));
    assert!(close(f.tau, 0.0, 1e-12));
    assert_eq!(f.epsilon, -1.0);
}

#[test]
fn elliptic_constant_radius_frenet() {
    let f = elliptic_r2().frenet(0.4).unwrap();
    assert!(close(f.kappa, 1.0, 1e-12));
    assert!(close(f.tau, 0.0, 1e-12));
    assert_eq!(f.epsilon, -1.0);
}

#[test]
fn euclidean_circle_frenet() {
    let f = clifford().frenet(1.3).unwrap();
    assert!(close(f.kappa, 1.0, 1e-12));
    assert!(close(f.tau, 0.0, 1e-12));
    assert_eq!(f.epsilon, 1.0);
}

#[test]
fn kappa1_values() {
    assert!(close(pseudocircle().kappa1(0.37).unwrap(), 0.0, 1e-15));
    assert!(close(elliptic_r2().kappa1(0.8).unwrap(), 1.0, 1e-12));
    assert!(close(clifford().kappa1(2.0).unwrap(), 1.0, 1e-12));
}

#[test]
fn validate_pseudocircle_passes() {
    let report = pseudocircle().validate(100);
    assert!(report.passed, "failures: {:?}", report.failures);
    assert!(report.max_unit_speed_residual <= 1e-12);
    assert!(report.min_r > 0.0);
}

#[test]
fn validate_detects_nonpositive_radius() {
    // r(u) = u crosses zero inside the domain.
    let curve = ProfileCurve::from_family(
        Ambient::Hyperbolic,
        Family::PolynomialR {
            coeffs: vec![0.0, 1.0],
        },
        (-1.0, 1.0),
    )
    .unwrap();
    let report = curve.validate(100);
    assert!(!report.passed);
    assert!(report.min_r <= 0.0);
}

#[test]
fn validate_detects_degenerate_acceleration() {
    // Straight-line profile x1 = u + const, x2 = 0, r = 1 in the Euclidean
    // ambient: <t', t'> vanishes identically.
    let curve = ProfileCurve::from_family(
        Ambient::Euclidean,
        Family::PolynomialR { coeffs: vec![1.0] },
        (-1.0, 1.0),
    )
    .unwrap();
    let report = curve.validate(50);
    assert!(!report.passed);
    assert!(report.min_accel <= 1e-15);
    assert!(curve.frenet(0.2).is_err());
}

#[test]
fn frenet_satisfies_its_ode_system() {
    for (name, curve) in registry() {
        let ambient = curve.ambient();
        let (lo, hi) = curve.domain();
        let margin = 0.05 * (hi - lo);
        for i in 0..9 {
            let u = lo + margin + (hi - lo - 2.0 * margin) * i as f64 / 8.0;
            let f = curve.frenet(u).unwrap();
            let h = 1e-5 * (1.0 + u.abs());
            let diff = |pick: fn(&FrenetApparatus) -> V3| -> V3 {
                let comp = |idx: usize| {
                    d1_central(
                        |x| pick(&curve.frenet(x).unwrap()).as_array()[idx],
                        u,
                        h,
                    )
                };
                V3::new(comp(0), comp(1), comp(2))
            };
            let t_prime = diff(|f| f.t);
            let n_prime = diff(|f| f.n);
            let b_prime = diff(|f| f.b);
            let res_t = (t_prime - f.n.scale(f.kappa)).norm_e();
            let res_n =
                (n_prime - (f.t.scale(-f.epsilon * f.kappa) + f.b.scale(f.tau))).norm_e();
            let b_rhs = match ambient {
                Ambient::Euclidean => f.n.scale(-f.tau),
                _ => f.n.scale(f.tau),
            };
            let res_b = (b_prime - b_rhs).norm_e();
            assert!(res_t <= 1e-6, "{name} at u={u}: t' residual {res_t:.2e}");
            assert!(res_n <= 1e-6, "{name} at u={u}: n' residual {res_n:.2e}");
            assert!(res_b <= 1e-6, "{name} at u={u}: b' residual {res_b:.2e}");
        }
    }
}

#[test]
fn hyperbolic_helix_torsion_closed_form() {
    // For r = r0 + s u with a circular axis-plane projection at rate omega,
    // the frame works out to tau = omega * s exactly.
    let (slope, omega) = (0.75, 1.3);
    let curve = ProfileCurve::from_family(
        Ambient::Hyperbolic,
        Family::Helix {
            slope,
            omega,
            r0: 2.0,
        },
        (-1.0, 1.0),
    )
    .unwrap();
    let amp = (1.0 + slope * slope).sqrt();
    for &u in &[-0.7, 0.0, 0.4] {
        let f = curve.frenet(u).unwrap();
        assert_eq!(f.epsilon, 1.0);
        assert!(close(f.kappa, amp * omega, 1e-12));
        assert!(close(f.tau, omega * slope, 1e-12), "tau = {}", f.tau);
    }
}

proptest::proptest! {
    /// Planar quadratic-radius profiles are unit-speed by construction and
    /// carry a well-defined Frenet frame wherever r'' != 0.
    #[test]
    fn planar_profiles_are_unit_speed(
        c0 in 1.0..3.0f64,
        c2 in 0.05..0.45f64,
        u in -0.9..0.9f64,
        hyperbolic in proptest::bool::ANY,
    ) {
        let ambient = if hyperbolic { Ambient::Hyperbolic } else { Ambient::Elliptic };
        let curve = ProfileCurve::from_family(
            ambient,
            Family::PolynomialR { coeffs: vec![c0, 0.0, c2] },
            (-1.0, 1.0),
        )
        .unwrap();
        let jet = curve.jet(u).unwrap();
        proptest::prop_assert!((ambient.inner3(jet.d1, jet.d1) - 1.0).abs() <= 1e-12);
        let f = curve.frenet(u).unwrap();
        proptest::prop_assert!((ambient.inner3(f.t, f.t) - 1.0).abs() <= 1e-12);
        proptest::prop_assert!((ambient.inner3(f.n, f.n) - f.epsilon).abs() <= 1e-10);
        proptest::prop_assert!((ambient.inner3(f.b, f.b) + f.epsilon).abs() <= 1e-10);
        proptest::prop_assert!(ambient.inner3(f.t, f.n).abs() <= 1e-10);
        proptest::prop_assert!(ambient.inner3(f.n, f.b).abs() <= 1e-10);
        // Planar profiles have no torsion.
        proptest::prop_assert!(f.tau.abs() <= 1e-9);
    }
}

#[test]
fn registry_profiles_are_unit_speed_with_positive_radius() {
    for (name, curve) in registry() {
        let report = curve.validate(64);
        assert!(report.passed, "{name}: {:?}", report.failures);
        assert!(report.max_unit_speed_residual <= 1e-10, "{name}");
    }
}

#[test]
fn planar_profiles_have_zero_kappa1() {
    for (name, curve) in registry() {
        let planar = curve
            .family()
            .map(|f| matches!(
                f,
                Family::MinkPseudocircle { .. } | Family::Catenary { .. } | Family::PolynomialR { .. }
            ))
            .unwrap_or(false);
        if !planar {
            continue;
        }
        for &u in &curve.sample_grid(17) {
            let k1 = curve.kappa1(u).unwrap();
            assert!(k1.abs() <= 1e-14, "{name}: kappa1({u}) = {k1:.2e}");
        }
    }
}

#[test]
fn frenet_is_shift_consistent_on_tables() {
    // The same geometric samples with a shifted parameter column must give
    // the same apparatus at corresponding parameters.
    let n = 401;
    let h = 5e-3;
    let us: Vec<f64> = (0..n).map(|i| i as f64 * h).collect();
    let x1: Vec<f64> = us.iter().map(|u| u.sinh()).collect();
    let x2: Vec<f64> = us.iter().map(|_| 0.0).collect();
    let r: Vec<f64> = us.iter().map(|u| u.cosh()).collect();
    let shifted: Vec<f64> = us.iter().map(|u| u + 0.3).collect();
    let a = ProfileCurve::from_samples(
        Ambient::Hyperbolic,
        us.clone(),
        x1.clone(),
        x2.clone(),
        r.clone(),
    )
    .unwrap();
    let b = ProfileCurve::from_samples(Ambient::Hyperbolic, shifted, x1, x2, r).unwrap();
    for &u in &[0.5, 1.0, 1.5] {
        let fa = a.frenet(u).unwrap();
        let fb = b.frenet(u + 0.3).unwrap();
        assert!(close(fa.kappa, fb.kappa, 1e-10));
        assert!(close(fa.tau, fb.tau, 1e-10));
        assert!((fa.t - fb.t).norm_e() <= 1e-10);
        assert!((fa.n - fb.n).norm_e() <= 1e-10);
        assert!((fa.b - fb.b).norm_e() <= 1e-10);
    }
}

#[test]
fn non_unit_speed_tables_are_reparametrized() {
    // Circle traversed at speed 2; after reparametrization the table is
    // unit-speed and the curvature is still 1.
    let n = 301;
    let us: Vec<f64> = (0..n).map(|i| i as f64 * 5e-3).collect();
    let x1: Vec<f64> = us.iter().map(|u| (2.0 * u).cos()).collect();
    let x2: Vec<f64> = us.iter().map(|u| (2.0 * u).sin()).collect();
    let r: Vec<f64> = us.iter().map(|_| 1.0).collect();
    let curve = ProfileCurve::from_samples(Ambient::Euclidean, us, x1, x2, r).unwrap();
    let report = curve.validate(64);
    assert!(report.passed, "failures: {:?}", report.failures);
    let (lo, hi) = curve.domain();
    assert!(close(hi - lo, 3.0, 1e-6), "arc length {}", hi - lo);
    let f = curve.frenet(0.5 * (lo + hi)).unwrap();
    assert!(close(f.kappa, 1.0, 1e-6));
}

#[test]
fn sample_construction_errors() {
    let err = ProfileCurve::from_samples(
        Ambient::Euclidean,
        vec![0.0, 0.1, 0.2],
        vec![0.0; 3],
        vec![0.0; 3],
        vec![1.0; 3],
    )
    .unwrap_err();
    assert!(matches!(err, CurveError::InsufficientSamples { .. }));

    let err = ProfileCurve::from_samples(
        Ambient::Euclidean,
        vec![0.0, 0.2, 0.1, 0.3, 0.4, 0.5, 0.6],
        vec![0.0; 7],
        vec![0.0; 7],
        vec![1.0; 7],
    )
    .unwrap_err();
    assert!(matches!(err, CurveError::InvalidSamples(_)));
}

#[test]
fn family_ambient_mismatches_are_rejected() {
    assert!(matches!(
        ProfileCurve::from_family(Ambient::Hyperbolic, Family::Catenary { a: 1.0 }, (-1.0, 1.0)),
        Err(CurveError::AmbientMismatch { .. })
    ));
    assert!(matches!(
        ProfileCurve::from_family(
            Ambient::Elliptic,
            Family::EuclidCircle { radius: 1.0 },
            (0.0, 1.0)
        ),
        Err(CurveError::AmbientMismatch { .. })
    ));
    // |r'| >= 1 somewhere makes an elliptic planar profile non-spacelike.
    assert!(matches!(
        ProfileCurve::from_family(
            Ambient::Elliptic,
            Family::PolynomialR {
                coeffs: vec![2.0, 0.0, 1.0],
            },
            (-1.0, 1.0)
        ),
        Err(CurveError::InvalidParams(_))
    ));
}

#[test]
fn out_of_domain_is_reported() {
    let err = pseudocircle().jet(5.0).unwrap_err();
    assert!(matches!(err, CurveError::OutOfDomain { .. }));
}

#[test]
fn profile_spec_round_trip() {
    let curve = elliptic_r2();
    let text = profile_to_json(&curve);
    let back = profile_from_json(&text).unwrap();
    assert_eq!(back.ambient(), Ambient::Elliptic);
    let ja = curve.jet(0.3).unwrap();
    let jb = back.jet(0.3).unwrap();
    assert!((ja.p - jb.p).norm_e() <= 1e-15);

    let table_curve = {
        let n = 64;
        let us: Vec<f64> = (0..n).map(|i| i as f64 * 0.02).collect();
        ProfileCurve::from_samples(
            Ambient::Euclidean,
            us.clone(),
            us.iter().map(|u| u.cos()).collect(),
            us.iter().map(|u| u.sin()).collect(),
            vec![1.0; n],
        )
        .unwrap()
    };
    let text = profile_to_json(&table_curve);
    let back = profile_from_json(&text).unwrap();
    assert!(back.table().is_some());
}
