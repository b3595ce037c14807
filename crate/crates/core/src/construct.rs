//! Profile constructors: given an analytic radius `r(u)`, build tabulated
//! profiles realizing the non-trivial Chen condition, a prescribed constant
//! invariant `k`, or minimality.
//!
//! All constructions reduce the unit-speed constraint to a single angle:
//! with `rho = sqrt(1 + r'^2)` (hyperbolic) or `m = sqrt(1 - r'^2)`
//! (elliptic, Euclidean),
//!
//! - hyperbolic/Euclidean: `x1' = rho cos(theta)`, `x2' = rho sin(theta)`,
//!   and `kappa1 = rho^2 theta'`;
//! - elliptic: `x1' = m cosh(theta)`, `x2' = m sinh(theta)`, and
//!   `kappa1 = m^2 theta'`.
//!
//! The Chen constructor substitutes the reduction into the target condition,
//! solves the resulting quadratic in `w = theta'^2` pointwise, picks the
//! root continuous with the previous step, and integrates `theta` (plus the
//! positions) with classical fixed-step RK4. Subintervals without an
//! admissible root are excised; every maximal admissible subinterval is
//! emitted as its own profile. All reported residuals are recomputed by
//! feeding the tabulated profile back through the curve and rotational
//! modules, never from integrator state.

use serde::Serialize;
use thiserror::Error;

use crate::curve::{kappa1_from_jet, Ambient, CurveError, ProfileCurve};
use crate::numeric::INTERP_POINTS;
use crate::rotational::chen_condition_value;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructError {
    #[error("invalid r-spec `{0}` (expected const:R, cosh:a, poly:c0,c1,..., or sqrtquad)")]
    BadRSpec(String),
    #[error("invalid construction config: {0}")]
    InvalidConfig(String),
    #[error("no admissible root of the pointwise quadratic anywhere in [{lo}, {hi}]")]
    NoAdmissibleRoot { lo: f64, hi: f64 },
    #[error("acceleration degenerates at u = {u}: <t',t'> = {accel:.3e}")]
    DegenerateAcceleration { u: f64, accel: f64 },
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// Analytic radius specification for the constructors.
#[derive(Debug, Clone, PartialEq)]
pub enum RSpec {
    /// `const:R` — constant radius.
    Const(f64),
    /// `cosh:a` — `r(u) = cosh(a u)`.
    Cosh(f64),
    /// `poly:c0,c1,...` — polynomial coefficients, lowest order first.
    Poly(Vec<f64>),
    /// `sqrtquad` — `r(u) = sqrt(u^2 + 1)`.
    SqrtQuad,
}

impl RSpec {
    pub fn parse(text: &str) -> Result<RSpec, ConstructError> {
        let bad = || ConstructError::BadRSpec(text.to_string());
        if text == "sqrtquad" {
            return Ok(RSpec::SqrtQuad);
        }
        let (name, args) = text.split_once(':').ok_or_else(bad)?;
        match name {
            "const" => args.parse().map(RSpec::Const).map_err(|_| bad()),
            "cosh" => args.parse().map(RSpec::Cosh).map_err(|_| bad()),
            "poly" => {
                let coeffs: Result<Vec<f64>, _> = args.split(',').map(str::parse).collect();
                let coeffs = coeffs.map_err(|_| bad())?;
                if coeffs.is_empty() {
                    return Err(bad());
                }
                Ok(RSpec::Poly(coeffs))
            }
            _ => Err(bad()),
        }
    }

    /// `(r, r', r'')` at `u`.
    pub fn eval(&self, u: f64) -> (f64, f64, f64) {
        match self {
            RSpec::Const(r) => (*r, 0.0, 0.0),
            RSpec::Cosh(a) => ((a * u).cosh(), a * (a * u).sinh(), a * a * (a * u).cosh()),
            RSpec::Poly(coeffs) => {
                let (mut r, mut d1, mut d2) = (0.0, 0.0, 0.0);
                for &c in coeffs.iter().rev() {
                    d2 = d2 * u + 2.0 * d1;
                    d1 = d1 * u + r;
                    r = r * u + c;
                }
                (r, d1, d2)
            }
            RSpec::SqrtQuad => {
                let r = (u * u + 1.0).sqrt();
                (r, u / r, 1.0 / (r * r * r))
            }
        }
    }
}

impl std::fmt::Display for RSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RSpec::Const(r) => write!(f, "const:{r}"),
            RSpec::Cosh(a) => write!(f, "cosh:{a}"),
            RSpec::Poly(c) => {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                write!(f, "poly:{}", parts.join(","))
            }
            RSpec::SqrtQuad => write!(f, "sqrtquad"),
        }
    }
}

/// `(rho, rho')` of the angle reduction: `sqrt(1 + r'^2)` in the hyperbolic
/// ambient, `sqrt(1 - r'^2)` otherwise.
pub fn speed_factor(ambient: Ambient, r1: f64, r2: f64) -> (f64, f64) {
    match ambient {
        Ambient::Hyperbolic => {
            let rho = (1.0 + r1 * r1).sqrt();
            (rho, r1 * r2 / rho)
        }
        _ => {
            let m = (1.0 - r1 * r1).sqrt();
            (m, -r1 * r2 / m)
        }
    }
}

/// `(x1', x2')` of the angle reduction at angle `theta`.
pub fn xy_velocity(ambient: Ambient, rho: f64, theta: f64) -> (f64, f64) {
    match ambient {
        Ambient::Elliptic => (rho * theta.cosh(), rho * theta.sinh()),
        _ => (rho * theta.cos(), rho * theta.sin()),
    }
}

/// `<t', t'>` of the reduced curve at squared angle rate `w`.
fn reduced_accel(ambient: Ambient, rho: f64, rho1: f64, r2: f64, w: f64) -> f64 {
    match ambient {
        Ambient::Hyperbolic => rho1 * rho1 + rho * rho * w - r2 * r2,
        Ambient::Elliptic => r2 * r2 + rho1 * rho1 - rho * rho * w,
        Ambient::Euclidean => rho1 * rho1 + rho * rho * w + r2 * r2,
    }
}

/// Coefficients `(A, B, C)` of the pointwise quadratic `A w^2 + B w + C = 0`
/// obtained by substituting the angle reduction into the non-trivial Chen
/// condition.
pub fn chen_quadratic(ambient: Ambient, r: f64, r1: f64, r2: f64) -> (f64, f64, f64) {
    let (rho, rho1) = speed_factor(ambient, r1, r2);
    let (p2, p4) = (rho * rho, rho * rho * rho * rho);
    match ambient {
        Ambient::Hyperbolic => {
            let p = rho1 * rho1 - r2 * r2;
            (r * r * p4, 2.0 * r * r * p2 * p + p4, r * r * p * p - r2 * r2)
        }
        Ambient::Elliptic => {
            let q = r2 * r2 + rho1 * rho1;
            (r * r * p4, -2.0 * r * r * p2 * q + p4, r * r * q * q - r2 * r2)
        }
        Ambient::Euclidean => {
            let p = rho1 * rho1 + r2 * r2;
            (r * r * p4, 2.0 * r * r * p2 * p - p4, r * r * p * p - r2 * r2)
        }
    }
}

/// Real nonnegative roots of `A w^2 + B w + C = 0`, ascending.
fn nonnegative_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let mut out = Vec::new();
    if a.abs() <= 1e-300 {
        if b.abs() > 1e-300 {
            let w = -c / b;
            if w >= 0.0 {
                out.push(w);
            }
        }
        return out;
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return out;
    }
    // Numerically stable pair.
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let (w1, w2) = if q == 0.0 {
        (0.0, 0.0)
    } else {
        (q / a, c / q)
    };
    for w in [w1, w2] {
        if w.is_finite() && w >= 0.0 {
            out.push(w);
        }
    }
    out.sort_by(|x, y| x.partial_cmp(y).unwrap());
    out.dedup();
    out
}

/// What a construction targets; drives the meaning of `residual_condition`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionTarget {
    Chen,
    ConstantK,
    Minimal,
}

/// Constant-coefficient relation `r'' = c r` detected on a constructed
/// profile, implying constant Gauss curvature `K = -c`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConstantGauss {
    pub c: f64,
    pub max_residual: f64,
}

/// Output of a constructor run.
#[derive(Debug, Clone)]
pub struct ConstructionReport {
    pub target: ConstructionTarget,
    /// Longest emitted segment.
    pub profile: ProfileCurve,
    /// Every maximal admissible segment, longest first.
    pub segments: Vec<ProfileCurve>,
    /// Maximum absolute value of the target condition over the emitted
    /// profiles, recomputed through the tabulated-curve pipeline.
    pub residual_condition: f64,
    pub residual_unit_speed: f64,
    /// Standard deviation of `k` over the grid (constant-k target).
    pub k_std: Option<f64>,
    /// Observed range of `theta'` during integration.
    pub theta_prime_range: Option<(f64, f64)>,
    pub constant_gauss: Option<ConstantGauss>,
    pub branch: f64,
    /// Excised subintervals and truncation notes.
    pub failures: Vec<String>,
}

fn check_radius(
    ambient: Ambient,
    rspec: &RSpec,
    domain: (f64, f64),
    step: f64,
) -> Result<(), ConstructError> {
    if !(domain.0 < domain.1) {
        return Err(ConstructError::InvalidConfig(format!(
            "empty domain [{}, {}]",
            domain.0, domain.1
        )));
    }
    if !(step > 0.0) || (domain.1 - domain.0) / step < (INTERP_POINTS - 1) as f64 {
        return Err(ConstructError::InvalidConfig(format!(
            "step {step} leaves fewer than {INTERP_POINTS} samples"
        )));
    }
    for i in 0..=128 {
        let u = domain.0 + (domain.1 - domain.0) * i as f64 / 128.0;
        let (r, r1, _) = rspec.eval(u);
        if !(r > 0.0) {
            return Err(ConstructError::InvalidConfig(format!(
                "r({u}) = {r} must be positive"
            )));
        }
        if ambient != Ambient::Hyperbolic && r1.abs() >= 1.0 - 1e-9 {
            return Err(ConstructError::InvalidConfig(format!(
                "|r'({u})| = {} >= 1 is inadmissible outside the hyperbolic ambient",
                r1.abs()
            )));
        }
    }
    Ok(())
}

/// Builds a profile realizing the non-trivial Chen condition over `r(u)`.
///
/// `branch` is the sign of `theta'`; `seed_large_root` overrides the default
/// smaller-root seeding of the continuity tracker at the first step.
pub fn construct_chen_profile(
    ambient: Ambient,
    rspec: &RSpec,
    domain: (f64, f64),
    step: f64,
    branch: f64,
    seed_large_root: bool,
) -> Result<ConstructionReport, ConstructError> {
    check_radius(ambient, rspec, domain, step)?;
    let branch = if branch < 0.0 { -1.0 } else { 1.0 };
    let n = ((domain.1 - domain.0) / step).round() as usize;
    let h = (domain.1 - domain.0) / n as f64;

    // Phase 1: admissible root per half-step sample, continuity-tracked.
    let half_n = 2 * n;
    let mut w_samples: Vec<Option<f64>> = Vec::with_capacity(half_n + 1);
    let mut w_prev: Option<f64> = None;
    for j in 0..=half_n {
        let u = domain.0 + j as f64 * (h / 2.0);
        let (r, r1, r2) = rspec.eval(u);
        let (a, b, c) = chen_quadratic(ambient, r, r1, r2);
        let (rho, rho1) = speed_factor(ambient, r1, r2);
        let scale = 1.0 + a.abs() + b.abs() + c.abs();
        let admissible: Vec<f64> = nonnegative_roots(a, b, c)
            .into_iter()
            .filter(|&w| w > 1e-12 * scale / (1.0 + a.abs()))
            .filter(|&w| {
                let accel = reduced_accel(ambient, rho, rho1, r2, w);
                accel.abs() > 1e-10 * (1.0 + rho * rho * w + r2 * r2)
            })
            .collect();
        let picked = match (&w_prev, admissible.as_slice()) {
            (_, []) => None,
            (None, roots) => Some(if seed_large_root {
                *roots.last().unwrap()
            } else {
                roots[0]
            }),
            (Some(prev), roots) => roots
                .iter()
                .copied()
                .min_by(|x, y| {
                    (x - prev).abs().partial_cmp(&(y - prev).abs()).unwrap()
                }),
        };
        w_prev = picked;
        w_samples.push(picked);
    }

    // Phase 2: maximal runs of full steps whose half-step samples are all
    // admissible and whose acceleration keeps one sign.
    let mut failures = Vec::new();
    let step_ok: Vec<bool> = (0..n)
        .map(|i| {
            w_samples[2 * i].is_some()
                && w_samples[2 * i + 1].is_some()
                && w_samples[2 * i + 2].is_some()
        })
        .collect();
    let node_sign = |i: usize| -> Option<f64> {
        w_samples[2 * i].map(|w| {
            let u = domain.0 + i as f64 * h;
            let (_, r1, r2) = rspec.eval(u);
            let (rho, rho1) = speed_factor(ambient, r1, r2);
            reduced_accel(ambient, rho, rho1, r2, w).signum()
        })
    };
    let mut runs: Vec<(usize, usize)> = Vec::new(); // node ranges [s, e]
    let mut i = 0;
    while i < n {
        if !step_ok[i] {
            i += 1;
            continue;
        }
        let s = i;
        let sign0 = node_sign(s).expect("step_ok implies sample");
        let mut e = s;
        while e < n
            && step_ok[e]
            && node_sign(e) == Some(sign0)
            && node_sign(e + 1) == Some(sign0)
        {
            e += 1;
        }
        if e < n && step_ok[e] && node_sign(e + 1).is_some_and(|sg| sg != sign0) {
            failures.push(format!(
                "acceleration changes sign near u = {}",
                domain.0 + (e + 1) as f64 * h
            ));
        }
        if e > s {
            runs.push((s, e));
        }
        i = e.max(s + 1);
    }
    // theta' has a square-root singularity where the admissible root
    // approaches zero; trim a fixed parameter width off run ends that abut
    // an excised region so the emitted tables stay smooth enough for
    // full-accuracy interpolation.
    let trim = ((0.025 / h).ceil() as usize).max(5);
    let runs: Vec<(usize, usize)> = runs
        .into_iter()
        .map(|(s, e)| {
            let s = if s > 0 { s + trim } else { s };
            let e = if e < n { e.saturating_sub(trim) } else { e };
            (s, e)
        })
        .filter(|(s, e)| e > s && e - s + 1 >= INTERP_POINTS)
        .collect();
    if runs.is_empty() {
        return Err(ConstructError::NoAdmissibleRoot {
            lo: domain.0,
            hi: domain.1,
        });
    }
    // Record excised subintervals.
    let mut covered = vec![false; n + 1];
    for &(s, e) in &runs {
        for c in covered.iter_mut().take(e + 1).skip(s) {
            *c = true;
        }
    }
    let mut gap_start: Option<usize> = None;
    for (idx, &cov) in covered.iter().enumerate() {
        match (cov, gap_start) {
            (false, None) => gap_start = Some(idx),
            (true, Some(gs)) => {
                failures.push(format!(
                    "no admissible root on [{}, {}]",
                    domain.0 + gs as f64 * h,
                    domain.0 + (idx - 1) as f64 * h
                ));
                gap_start = None;
            }
            _ => {}
        }
    }
    if let Some(gs) = gap_start {
        failures.push(format!(
            "no admissible root on [{}, {}]",
            domain.0 + gs as f64 * h,
            domain.1
        ));
    }

    // Phase 3: integrate each run and emit tabulated profiles.
    let mut segments = Vec::new();
    let mut theta_min = f64::INFINITY;
    let mut theta_max = f64::NEG_INFINITY;
    for &(s, e) in &runs {
        let mut us = Vec::with_capacity(e - s + 1);
        let mut x1s = Vec::with_capacity(e - s + 1);
        let mut x2s = Vec::with_capacity(e - s + 1);
        let mut rs = Vec::with_capacity(e - s + 1);
        let mut state = [0.0f64; 3]; // theta, x1, x2
        let push = |us: &mut Vec<f64>, x1s: &mut Vec<f64>, x2s: &mut Vec<f64>, rs: &mut Vec<f64>, u: f64, st: &[f64; 3]| {
            us.push(u);
            x1s.push(st[1]);
            x2s.push(st[2]);
            rs.push(rspec.eval(u).0);
        };
        push(&mut us, &mut x1s, &mut x2s, &mut rs, domain.0 + s as f64 * h, &state);
        for i in s..e {
            let deriv = |j: usize, theta: f64| -> [f64; 3] {
                let u = domain.0 + j as f64 * (h / 2.0);
                let (_, r1, r2) = rspec.eval(u);
                let (rho, _) = speed_factor(ambient, r1, r2);
                let w = w_samples[j].expect("admissible inside run");
                let rate = branch * w.sqrt();
                let (x1d, x2d) = xy_velocity(ambient, rho, theta);
                [rate, x1d, x2d]
            };
            let k1 = deriv(2 * i, state[0]);
            let k2 = deriv(2 * i + 1, state[0] + 0.5 * h * k1[0]);
            let k3 = deriv(2 * i + 1, state[0] + 0.5 * h * k2[0]);
            let k4 = deriv(2 * i + 2, state[0] + h * k3[0]);
            for c in 0..3 {
                state[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
            }
            let rate = k1[0].abs();
            theta_min = theta_min.min(rate);
            theta_max = theta_max.max(rate);
            push(&mut us, &mut x1s, &mut x2s, &mut rs, domain.0 + (i + 1) as f64 * h, &state);
        }
        segments.push(ProfileCurve::from_samples(ambient, us, x1s, x2s, rs)?);
    }
    segments.sort_by(|a, b| {
        let la = a.domain().1 - a.domain().0;
        let lb = b.domain().1 - b.domain().0;
        lb.partial_cmp(&la).unwrap()
    });

    let (residual_condition, residual_unit_speed) =
        condition_residuals(&segments, ConstructionTarget::Chen, 0.0)?;
    Ok(ConstructionReport {
        target: ConstructionTarget::Chen,
        profile: segments[0].clone(),
        segments,
        residual_condition,
        residual_unit_speed,
        k_std: None,
        theta_prime_range: Some((theta_min, theta_max)),
        constant_gauss: None,
        branch,
        failures,
    })
}

/// Builds a profile with constant invariant `k = k0 < 0` by imposing
/// `kappa1 = branch * r * sqrt(-k0)`.
pub fn construct_constant_k_profile(
    ambient: Ambient,
    rspec: &RSpec,
    k0: f64,
    domain: (f64, f64),
    step: f64,
    branch: f64,
) -> Result<ConstructionReport, ConstructError> {
    check_radius(ambient, rspec, domain, step)?;
    if !(k0 < 0.0) {
        return Err(ConstructError::InvalidConfig(format!(
            "constant-k target requires k0 < 0, got {k0}"
        )));
    }
    let branch = if branch < 0.0 { -1.0 } else { 1.0 };
    let n = ((domain.1 - domain.0) / step).round() as usize;
    let h = (domain.1 - domain.0) / n as f64;
    let root = (-k0).sqrt();

    let theta_rate = |u: f64| -> f64 {
        let (r, r1, r2) = rspec.eval(u);
        let (rho, _) = speed_factor(ambient, r1, r2);
        branch * r * root / (rho * rho)
    };
    // Degeneracy scan on the acceleration.
    let mut theta_min = f64::INFINITY;
    let mut theta_max = f64::NEG_INFINITY;
    for j in 0..=2 * n {
        let u = domain.0 + j as f64 * h / 2.0;
        let (_, r1, r2) = rspec.eval(u);
        let (rho, rho1) = speed_factor(ambient, r1, r2);
        let rate = theta_rate(u);
        theta_min = theta_min.min(rate.abs());
        theta_max = theta_max.max(rate.abs());
        let accel = reduced_accel(ambient, rho, rho1, r2, rate * rate);
        if accel.abs() <= 1e-10 * (1.0 + rho * rho * rate * rate + r2 * r2) {
            return Err(ConstructError::DegenerateAcceleration { u, accel });
        }
    }

    let mut us = Vec::with_capacity(n + 1);
    let mut x1s = Vec::with_capacity(n + 1);
    let mut x2s = Vec::with_capacity(n + 1);
    let mut rs = Vec::with_capacity(n + 1);
    crate::numeric::rk4(
        |u: f64, y: &[f64; 3]| {
            let (_, r1, r2) = rspec.eval(u);
            let (rho, _) = speed_factor(ambient, r1, r2);
            let (x1d, x2d) = xy_velocity(ambient, rho, y[0]);
            [theta_rate(u), x1d, x2d]
        },
        domain.0,
        [0.0, 0.0, 0.0],
        h,
        n,
        |_, u, y| {
            us.push(u);
            x1s.push(y[1]);
            x2s.push(y[2]);
            rs.push(rspec.eval(u).0);
        },
    );
    let profile = ProfileCurve::from_samples(ambient, us, x1s, x2s, rs)?;
    let segments = vec![profile.clone()];
    let (residual_condition, residual_unit_speed) =
        condition_residuals(&segments, ConstructionTarget::ConstantK, k0)?;

    // k statistics over the interior grid.
    let mut ks = Vec::new();
    for &u in &interior_grid(&profile) {
        let jet = profile.jet(u)?;
        let kappa1 = kappa1_from_jet(&jet);
        ks.push(-kappa1 * kappa1 / (jet.p.r * jet.p.r));
    }
    let mean = ks.iter().sum::<f64>() / ks.len() as f64;
    let var = ks.iter().map(|k| (k - mean) * (k - mean)).sum::<f64>() / ks.len() as f64;

    // r'' = c r detection (constant Gauss curvature).
    let mut c_sum = 0.0;
    let mut r2_scale = 0.0f64;
    let samples = 65;
    for i in 0..samples {
        let u = domain.0 + (domain.1 - domain.0) * i as f64 / (samples - 1) as f64;
        let (r, _, r2) = rspec.eval(u);
        c_sum += r2 / r;
        r2_scale = r2_scale.max(r2.abs());
    }
    let c = c_sum / samples as f64;
    let mut c_resid = 0.0f64;
    for i in 0..samples {
        let u = domain.0 + (domain.1 - domain.0) * i as f64 / (samples - 1) as f64;
        let (r, _, r2) = rspec.eval(u);
        c_resid = c_resid.max((r2 - c * r).abs());
    }
    let constant_gauss = if c_resid <= 1e-8 * (1.0 + r2_scale) {
        Some(ConstantGauss {
            c,
            max_residual: c_resid,
        })
    } else {
        None
    };

    Ok(ConstructionReport {
        target: ConstructionTarget::ConstantK,
        profile: segments[0].clone(),
        segments,
        residual_condition,
        residual_unit_speed,
        k_std: Some(var.sqrt()),
        theta_prime_range: Some((theta_min, theta_max)),
        constant_gauss,
        branch,
        failures: Vec::new(),
    })
}

/// Right-hand side of the reduced minimality ODE: `r r'' = 1 - r'^2`
/// (elliptic, Euclidean) or `r r'' = -(1 + r'^2)` (hyperbolic).
pub fn minimal_rhs(ambient: Ambient, r: f64, rp: f64) -> f64 {
    match ambient {
        Ambient::Hyperbolic => -(1.0 + rp * rp) / r,
        _ => (1.0 - rp * rp) / r,
    }
}

/// Integrates the reduced minimality ODE from `(r0, r0p)` at `domain.0` and
/// emits the planar profile (`x2 = 0`). Integration is truncated when `r`
/// collapses or the slope becomes inadmissible; the reached endpoint is
/// reported in `failures`.
pub fn construct_minimal_profile(
    ambient: Ambient,
    r0: f64,
    r0p: f64,
    domain: (f64, f64),
    step: f64,
) -> Result<ConstructionReport, ConstructError> {
    if !(r0 > 0.0) {
        return Err(ConstructError::InvalidConfig(format!(
            "r0 = {r0} must be positive"
        )));
    }
    if ambient != Ambient::Hyperbolic && r0p.abs() >= 1.0 - 1e-9 {
        return Err(ConstructError::InvalidConfig(format!(
            "|r0'| = {} >= 1 is inadmissible outside the hyperbolic ambient",
            r0p.abs()
        )));
    }
    if !(domain.0 < domain.1) || !(step > 0.0) {
        return Err(ConstructError::InvalidConfig("empty domain or bad step".into()));
    }
    let n = ((domain.1 - domain.0) / step).round() as usize;
    if n + 1 < INTERP_POINTS {
        return Err(ConstructError::InvalidConfig(format!(
            "step {step} leaves fewer than {INTERP_POINTS} samples"
        )));
    }
    let h = (domain.1 - domain.0) / n as f64;

    let x1_rate = |rp: f64| -> f64 {
        match ambient {
            Ambient::Hyperbolic => (1.0 + rp * rp).sqrt(),
            _ => (1.0 - rp * rp).sqrt(),
        }
    };
    let deriv = |y: &[f64; 3]| -> [f64; 3] { [y[1], minimal_rhs(ambient, y[0], y[1]), x1_rate(y[1])] };
    // In the hyperbolic ambient r -> 0 comes with r' -> -inf and the
    // solution's higher derivatives blow up like inverse powers of r; the
    // slope cap truncates while the fixed-step integration is still accurate.
    let slope_cap = 3.0 * (1.0 + r0p.abs());
    let admissible = |y: &[f64; 3]| -> bool {
        y[0] > 1e-3 * r0.min(1.0)
            && y.iter().all(|c| c.is_finite())
            && match ambient {
                Ambient::Hyperbolic => y[1].abs() <= slope_cap,
                _ => y[1].abs() < 1.0 - 1e-9,
            }
    };

    let mut us = vec![domain.0];
    let mut x1s = vec![0.0];
    let mut rs = vec![r0];
    let mut state = [r0, r0p, 0.0];
    let mut failures = Vec::new();
    for i in 0..n {
        let k1 = deriv(&state);
        let mid1 = [
            state[0] + 0.5 * h * k1[0],
            state[1] + 0.5 * h * k1[1],
            state[2] + 0.5 * h * k1[2],
        ];
        if !admissible(&mid1) {
            failures.push(format!(
                "integration truncated at u = {} (r -> 0 or |r'| -> 1)",
                domain.0 + i as f64 * h
            ));
            break;
        }
        let k2 = deriv(&mid1);
        let mid2 = [
            state[0] + 0.5 * h * k2[0],
            state[1] + 0.5 * h * k2[1],
            state[2] + 0.5 * h * k2[2],
        ];
        let k3 = deriv(&mid2);
        let end = [
            state[0] + h * k3[0],
            state[1] + h * k3[1],
            state[2] + h * k3[2],
        ];
        if !admissible(&mid2) || !admissible(&end) {
            failures.push(format!(
                "integration truncated at u = {} (r -> 0 or |r'| -> 1)",
                domain.0 + i as f64 * h
            ));
            break;
        }
        let k4 = deriv(&end);
        for c in 0..3 {
            state[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        }
        if !admissible(&state) {
            failures.push(format!(
                "integration truncated at u = {} (r -> 0 or |r'| -> 1)",
                domain.0 + (i + 1) as f64 * h
            ));
            break;
        }
        us.push(domain.0 + (i + 1) as f64 * h);
        rs.push(state[0]);
        x1s.push(state[2]);
    }
    if us.len() < INTERP_POINTS {
        return Err(ConstructError::DegenerateAcceleration {
            u: *us.last().unwrap(),
            accel: 0.0,
        });
    }
    let x2s = vec![0.0; us.len()];
    let profile = ProfileCurve::from_samples(ambient, us, x1s, x2s, rs)?;
    let segments = vec![profile.clone()];
    let (residual_condition, residual_unit_speed) =
        condition_residuals(&segments, ConstructionTarget::Minimal, 0.0)?;
    Ok(ConstructionReport {
        target: ConstructionTarget::Minimal,
        profile: segments[0].clone(),
        segments,
        residual_condition,
        residual_unit_speed,
        k_std: None,
        theta_prime_range: None,
        constant_gauss: None,
        branch: 1.0,
        failures,
    })
}

/// Interior evaluation grid of a tabulated profile (full nodes away from the
/// one-sided interpolation region at the ends, capped at 512 points).
fn interior_grid(profile: &ProfileCurve) -> Vec<f64> {
    let table = profile.table().expect("tabulated profile");
    let (u, _, _, _) = table.columns();
    let margin = table.interior_margin().min((u.len() - 1) / 3);
    let inner = &u[margin..u.len() - margin];
    if inner.len() <= 512 {
        return inner.to_vec();
    }
    let stride = inner.len().div_ceil(512);
    inner.iter().step_by(stride).copied().collect()
}

/// Post-hoc residuals through the curve pipeline, independent of integrator
/// state.
fn condition_residuals(
    segments: &[ProfileCurve],
    target: ConstructionTarget,
    k0: f64,
) -> Result<(f64, f64), ConstructError> {
    let mut max_condition = 0.0f64;
    let mut max_speed = 0.0f64;
    for profile in segments {
        let ambient = profile.ambient();
        for &u in &interior_grid(profile) {
            let jet = profile.jet(u)?;
            let fr = profile.frenet(u)?;
            let kappa1 = kappa1_from_jet(&jet);
            let (r, rdd) = (jet.p.r, jet.d2.r);
            let value = match target {
                ConstructionTarget::Chen => {
                    chen_condition_value(ambient, r, fr.kappa, rdd, kappa1)
                }
                ConstructionTarget::ConstantK => -kappa1 * kappa1 / (r * r) - k0,
                ConstructionTarget::Minimal => r * fr.kappa * fr.kappa - fr.epsilon * rdd,
            };
            max_condition = max_condition.max(value.abs());
            max_speed = max_speed.max((ambient.inner3(jet.d1, jet.d1) - 1.0).abs());
        }
    }
    Ok((max_condition, max_speed))
}
