//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (run with `--nocapture` to see them). Every tolerance is pinned in code.

use std::process::Command;

use minksurf_core::construct::{
    construct_chen_profile, construct_constant_k_profile, construct_minimal_profile, RSpec,
};
use minksurf_core::curve::{registry, Ambient};
use minksurf_core::minkowski::{euclidean_normal_frame, Metric4};
use minksurf_core::rotational::{
    chen_classify, closed_form_invariants, derivative_formula_residuals, hyperplane_witness,
    RotationalSurface,
};
use minksurf_core::surface::{
    allied_mean_curvature, allied_via_trace, analyze_point, first_form, gauss_curvature_intrinsic,
    principal_tangents, second_form, second_tensor, MeanCurvatureClass, SurfacePatch, Tolerances,
};
use minksurf_core::{ChenVerdict, InvariantSet};

fn surfaces() -> Vec<(String, RotationalSurface)> {
    registry()
        .into_iter()
        .map(|(name, curve)| (name, RotationalSurface::new(curve)))
        .collect()
}

fn named(name: &str) -> RotationalSurface {
    surfaces()
        .into_iter()
        .find(|(n, _)| n == name)
        .unwrap_or_else(|| panic!("registry profile {name}"))
        .1
}

/// Inclusive nu x nv grid over the full patch domain.
fn full_grid(surface: &RotationalSurface, nu: usize, nv: usize) -> Vec<(f64, f64)> {
    let ((ulo, uhi), (vlo, vhi)) = surface.domain();
    let mut out = Vec::with_capacity(nu * nv);
    for i in 0..nu {
        let u = ulo + (uhi - ulo) * i as f64 / (nu - 1) as f64;
        for j in 0..nv {
            let v = vlo + (vhi - vlo) * j as f64 / (nv - 1) as f64;
            out.push((u, v));
        }
    }
    out
}

/// Grid shrunk away from the domain edges (for stencil-based checks).
fn interior_grid(surface: &RotationalSurface, nu: usize, nv: usize, margin: f64) -> Vec<(f64, f64)> {
    let ((ulo, uhi), (vlo, vhi)) = surface.domain();
    let mu = margin * (uhi - ulo);
    let mv = margin * (vhi - vlo);
    let mut out = Vec::with_capacity(nu * nv);
    for i in 0..nu {
        let u = ulo + mu + (uhi - ulo - 2.0 * mu) * i as f64 / (nu - 1) as f64;
        for j in 0..nv {
            let v = vlo + mv + (vhi - vlo - 2.0 * mv) * j as f64 / (nv - 1) as f64;
            out.push((u, v));
        }
    }
    out
}

fn set_at(surface: &RotationalSurface, u: f64, v: f64) -> InvariantSet {
    analyze_point(surface, u, v, &Tolerances::default())
        .unwrap_or_else(|e| panic!("pipeline at ({u}, {v}): {e}"))
}

#[test]
fn acceptance_1_flat_normal_connection() {
    // |varkappa| <= 1e-8 at every point of 32x32 grids over at least five
    // hyperbolic and five elliptic registry profiles.
    let mut hyperbolic = 0;
    let mut elliptic = 0;
    let mut worst = 0.0f64;
    for (name, surface) in surfaces() {
        match surface.ambient() {
            Ambient::Hyperbolic => hyperbolic += 1,
            Ambient::Elliptic => elliptic += 1,
            Ambient::Euclidean => continue,
        }
        for (u, v) in full_grid(&surface, 32, 32) {
            let set = set_at(&surface, u, v);
            assert!(
                set.varkappa.abs() <= 1e-8,
                "{name}: |varkappa| = {:.3e} at ({u}, {v})",
                set.varkappa.abs()
            );
            worst = worst.max(set.varkappa.abs());
        }
    }
    assert!(hyperbolic >= 5, "need >= 5 hyperbolic profiles, have {hyperbolic}");
    assert!(elliptic >= 5, "need >= 5 elliptic profiles, have {elliptic}");
    println!(
        "[PASS] criterion 1: flat normal connection, max |varkappa| = {worst:.3e} <= 1e-8 \
         over {hyperbolic} hyperbolic + {elliptic} elliptic profiles (32x32 grids)"
    );
}

#[test]
fn acceptance_2_closed_form_agreement() {
    // Pipeline k and K against the curve-level closed forms on all analytic
    // registry profiles.
    let mut worst_k = 0.0f64;
    let mut worst_gauss = 0.0f64;
    for (name, surface) in surfaces() {
        for (u, v) in full_grid(&surface, 9, 5) {
            let jet = surface.profile().jet(u).unwrap();
            let kappa1 = surface.profile().kappa1(u).unwrap();
            let set = set_at(&surface, u, v);
            let k_res = (set.k + kappa1 * kappa1 / (jet.p.r * jet.p.r)).abs();
            let g_res = (set.gauss + jet.d2.r / jet.p.r).abs();
            assert!(
                k_res <= 1e-7 * (1.0 + set.k.abs()),
                "{name}: k residual {k_res:.3e} at ({u}, {v})"
            );
            assert!(
                g_res <= 1e-7 * (1.0 + set.gauss.abs()),
                "{name}: K residual {g_res:.3e} at ({u}, {v})"
            );
            worst_k = worst_k.max(k_res / (1.0 + set.k.abs()));
            worst_gauss = worst_gauss.max(g_res / (1.0 + set.gauss.abs()));
        }
    }
    println!(
        "[PASS] criterion 2: closed-form agreement, max relative residual k = {worst_k:.3e}, \
         K = {worst_gauss:.3e} <= 1e-7"
    );
}

#[test]
fn acceptance_3_gauss_oracle() {
    // Intrinsic (metric-only) K agrees with -r''/r within 1e-5 on all
    // registry profiles.
    let mut worst = 0.0f64;
    for (name, surface) in surfaces() {
        for (u, v) in interior_grid(&surface, 6, 3, 0.05) {
            let jet = surface.profile().jet(u).unwrap();
            let expected = -jet.d2.r / jet.p.r;
            let k = gauss_curvature_intrinsic(&surface, u, v)
                .unwrap_or_else(|e| panic!("{name} at ({u}, {v}): {e}"));
            let res = (k - expected).abs();
            assert!(
                res <= 1e-5 * (1.0 + expected.abs()),
                "{name}: intrinsic K residual {res:.3e} at ({u}, {v})"
            );
            worst = worst.max(res / (1.0 + expected.abs()));
        }
    }
    println!("[PASS] criterion 3: Gauss oracle, max relative residual {worst:.3e} <= 1e-5");
}

#[test]
fn acceptance_4_allied_identity() {
    let mut worst_identity = 0.0f64;
    let mut worst_trace = 0.0f64;
    for (name, surface) in surfaces() {
        let metric = surface.metric();
        for (u, v) in full_grid(&surface, 9, 5) {
            let set = set_at(&surface, u, v);
            if set.h_class != MeanCurvatureClass::Regular {
                continue;
            }
            let expected =
                allied_mean_curvature(set.k, set.varkappa, set.lambda.unwrap(), set.l.unwrap());
            let res = (set.allied.unwrap() - expected).norm_e();
            assert!(res <= 1e-8, "{name}: allied identity residual {res:.3e}");
            worst_identity = worst_identity.max(res);

            if metric == Metric4::Euclidean {
                let jet = surface.eval(u, v).unwrap();
                let i = first_form(metric, &jet, u, v).unwrap();
                let frame = euclidean_normal_frame(jet.zu, jet.zv).unwrap();
                let c = second_tensor(metric, &jet, &frame);
                let ii = second_form(&c, i.w);
                let frames = match principal_tangents(&i, &ii, &jet, &frame) {
                    Ok(f) => f,
                    Err(_) => continue,
                };
                let a_trace = allied_via_trace(&jet, &i, &frame, &frames).unwrap();
                let a = set.allied.unwrap();
                // The trace formula is orientation-free while l carries a
                // fixed convention; compare up to the overall sign.
                let diff = (a_trace - a).norm_e().min((a_trace + a).norm_e());
                assert!(
                    diff <= 1e-7,
                    "{name}: trace-formula residual {diff:.3e} at ({u}, {v})"
                );
                worst_trace = worst_trace.max(diff);
            }
        }
    }
    println!(
        "[PASS] criterion 4: allied identity residual {worst_identity:.3e} <= 1e-8, \
         Euclidean trace recomputation {worst_trace:.3e} <= 1e-7"
    );
}

#[test]
fn acceptance_5_classification_coverage() {
    // mink-pseudocircle: planar trivial case with a hyperplane witness.
    let surface = named("hyp/pseudocircle");
    let c = chen_classify(surface.profile(), 64, None).unwrap();
    assert_eq!(c.verdict, ChenVerdict::HyperplanarTrivialChen);
    let w = hyperplane_witness(&surface, 16).unwrap();
    assert!(w.max_deviation <= 1e-8, "deviation {:.3e}", w.max_deviation);

    // catenary: minimal trivial case with |H| <= 1e-7.
    let surface = named("ell/catenary");
    let c = chen_classify(surface.profile(), 64, None).unwrap();
    assert_eq!(c.verdict, ChenVerdict::MinimalTrivialChen);
    let mut max_h = 0.0f64;
    for (u, v) in full_grid(&surface, 16, 4) {
        max_h = max_h.max(set_at(&surface, u, v).h.norm_e());
    }
    assert!(max_h <= 1e-7, "catenary |H| = {max_h:.3e}");

    // Euclidean circle at r = 1: non-trivial Chen with |lambda| <= 1e-8.
    let surface = named("euc/clifford");
    let c = chen_classify(surface.profile(), 64, None).unwrap();
    assert_eq!(c.verdict, ChenVerdict::NonTrivialChen);
    let mut max_lambda = 0.0f64;
    for (u, v) in full_grid(&surface, 16, 4) {
        if let Some(l) = set_at(&surface, u, v).lambda {
            max_lambda = max_lambda.max(l.abs());
        }
    }
    assert!(max_lambda <= 1e-8, "clifford |lambda| = {max_lambda:.3e}");

    // Elliptic r = 2: not Chen, with lambda = 5/(4 sqrt 3).
    let surface = named("ell/const-r-theta");
    let c = chen_classify(surface.profile(), 64, None).unwrap();
    assert_eq!(c.verdict, ChenVerdict::NotChen);
    let expected = 5.0 / (4.0 * 3.0f64.sqrt());
    for &u in &surface.profile().sample_grid(16) {
        let cf = closed_form_invariants(surface.profile(), u).unwrap();
        let lambda = cf.lambda.unwrap();
        assert!(
            (lambda.abs() - expected).abs() <= 1e-6,
            "lambda({u}) = {lambda} vs {expected}"
        );
    }
    println!(
        "[PASS] criterion 5: classification coverage (HyperplanarTrivialChen / \
         MinimalTrivialChen / NonTrivialChen / NotChen with lambda = 5/(4 sqrt 3))"
    );
}

#[test]
fn acceptance_6_constructor_soundness() {
    // Constant-k: hyperbolic, r = 1, k0 = -1.
    let report = construct_constant_k_profile(
        Ambient::Hyperbolic,
        &RSpec::Const(1.0),
        -1.0,
        (0.0, 3.0),
        1e-3,
        1.0,
    )
    .unwrap();
    assert!(
        report.residual_condition <= 1e-8,
        "max |k + 1| = {:.3e}",
        report.residual_condition
    );
    let k_std = report.k_std.unwrap();
    assert!(k_std <= 1e-8, "std(k) = {k_std:.3e}");

    // Minimal: elliptic from (1, 0) matches sqrt(u^2 + 1) on [0, 2].
    let minimal =
        construct_minimal_profile(Ambient::Elliptic, 1.0, 0.0, (0.0, 2.0), 1e-3).unwrap();
    let (us, _, _, rs) = minimal.profile.table().unwrap().columns();
    let mut max_err = 0.0f64;
    for (u, r) in us.iter().zip(rs) {
        max_err = max_err.max((r - (u * u + 1.0).sqrt()).abs());
    }
    assert!(max_err <= 1e-6, "max |r - sqrt(u^2+1)| = {max_err:.3e}");

    // Chen: Euclidean r = 1 reproduces theta' = +-1 and classifies
    // NonTrivialChen.
    let chen = construct_chen_profile(
        Ambient::Euclidean,
        &RSpec::Const(1.0),
        (0.0, 6.0),
        1e-3,
        1.0,
        false,
    )
    .unwrap();
    let (lo, hi) = chen.theta_prime_range.unwrap();
    assert!((lo - 1.0).abs() <= 1e-9 && (hi - 1.0).abs() <= 1e-9, "theta' in [{lo}, {hi}]");
    let verdict = chen_classify(&chen.profile, 64, None).unwrap().verdict;
    assert_eq!(verdict, ChenVerdict::NonTrivialChen);
    println!(
        "[PASS] criterion 6: constructor soundness (|k+1| <= {:.3e}, std {k_std:.3e}, \
         minimal r-error {max_err:.3e}, theta' = 1 within 1e-9, NonTrivialChen)",
        report.residual_condition
    );
}

#[test]
fn acceptance_7_derivative_formula_residuals() {
    // All eight frame derivative formulas hold within 1e-6 on a 16x16 grid
    // of the pseudocircle patch (u shrunk by the stencil margin).
    let surface = named("hyp/pseudocircle");
    let mut worst = 0.0f64;
    for (u, v) in interior_grid(&surface, 16, 16, 2e-3) {
        let res = derivative_formula_residuals(surface.profile(), u, v).unwrap();
        assert!(
            res.max <= 1e-6,
            "residuals {:?} at ({u}, {v})",
            res.residuals
        );
        worst = worst.max(res.max);
    }
    println!(
        "[PASS] criterion 7: all eight derivative formulas hold, max residual {worst:.3e} <= 1e-6"
    );
}

#[test]
fn acceptance_8_minimality_consistency() {
    // Wherever |H| <= 1e-9, |varkappa^2 - k| <= 1e-7. Sampled across the
    // registry plus a constructed minimal profile.
    let mut minimal_points = 0usize;
    let mut worst = 0.0f64;
    let mut patches = surfaces();
    let constructed =
        construct_minimal_profile(Ambient::Elliptic, 1.0, 0.0, (0.0, 2.0), 1e-3).unwrap();
    patches.push((
        "constructed/minimal".to_string(),
        RotationalSurface::new(constructed.profile),
    ));
    for (name, surface) in patches {
        for (u, v) in interior_grid(&surface, 12, 3, 0.02) {
            let set = set_at(&surface, u, v);
            if set.h.norm_e() <= 1e-9 {
                minimal_points += 1;
                assert!(
                    set.minimal_residual.abs() <= 1e-7,
                    "{name}: |varkappa^2 - k| = {:.3e} at minimal point ({u}, {v})",
                    set.minimal_residual.abs()
                );
                worst = worst.max(set.minimal_residual.abs());
            }
        }
    }
    assert!(minimal_points > 50, "only {minimal_points} minimal points sampled");
    println!(
        "[PASS] criterion 8: minimality consistency at {minimal_points} points, \
         max |varkappa^2 - k| = {worst:.3e} <= 1e-7"
    );
}

#[test]
fn acceptance_9_determinism() {
    // Two consecutive verify + analyze runs with identical configs produce
    // byte-identical outputs.
    // Identical configs include identical (relative) output paths; each run
    // gets its own working directory.
    let bin = env!("CARGO_BIN_EXE_minksurf");
    let run = |dir: &std::path::Path| -> (Vec<u8>, Vec<u8>, Vec<u8>, Vec<u8>) {
        let v = Command::new(bin)
            .current_dir(dir)
            .args(["verify", "--out", "verify"])
            .output()
            .expect("verify runs");
        assert!(v.status.success(), "verify failed: {v:?}");
        let a = Command::new(bin)
            .current_dir(dir)
            .args([
                "analyze",
                "--ambient",
                "elliptic",
                "--family",
                "constant-r-theta",
                "--R",
                "2",
                "--grid",
                "24x24",
                "--out",
                "analyze",
            ])
            .output()
            .expect("analyze runs");
        assert!(a.status.success(), "analyze failed: {a:?}");
        (
            [v.stdout, a.stdout].concat(),
            std::fs::read(dir.join("verify/verify.json")).unwrap(),
            std::fs::read(dir.join("analyze/invariants.csv")).unwrap(),
            std::fs::read(dir.join("analyze/summary.json")).unwrap(),
        )
    };
    let d1 = tempfile::tempdir().unwrap();
    let d2 = tempfile::tempdir().unwrap();
    let first = run(d1.path());
    let second = run(d2.path());
    assert_eq!(first.0, second.0, "stdout differs between runs");
    assert_eq!(first.1, second.1, "verify.json differs");
    assert_eq!(first.2, second.2, "invariants.csv differs");
    assert_eq!(first.3, second.3, "summary.json differs");
    println!("[PASS] criterion 9: verify + analyze outputs are byte-identical across runs");
}
