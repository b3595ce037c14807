//! Rotational surfaces with a two-dimensional axis: the hyperbolic-type and
//! elliptic-type spacelike families in `R^4_1` and their Euclidean `R^4`
//! counterpart, built from a profile curve `(x1, x2, r)`.
//!
//! - hyperbolic type: `z = (x1, x2, r sinh v, r cosh v)`, axis `O e1 e2`
//! - elliptic type:   `z = (r cos v, r sin v, x1, x2)`, axis `O e3 e4`
//! - Euclidean:       `z = (x1, x2, r cos v, r sin v)`
//!
//! This module carries the closed-form route: the standard rotating frame
//! `(xbar, ybar, n1, n2)`, the invariants expressed through `kappa, kappa1,
//! r, r''`, the residuals of the eight frame derivative formulas, the Chen
//! classification of a profile, and the hyperplane witness for the planar
//! trivial case.

use serde::Serialize;
use thiserror::Error;

use crate::curve::{kappa1_from_jet, Ambient, CurveError, ProfileCurve};
use crate::minkowski::{Metric4, NormalFrame, Vec4};
use crate::numeric::d1_central;
use crate::surface::{PatchJet, SurfaceError, SurfacePatch};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RotationalError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("operation requires the {expected} ambient, profile is {got}")]
    AmbientMismatch { expected: String, got: String },
    #[error("kappa1 changes character across the grid (|kappa1| range [{min:.3e}, {max:.3e}] vs tolerance {tol:.3e}); the classification cases are global")]
    MixedRegime { min: f64, max: f64, tol: f64 },
    #[error("classification grid must have at least {need} points, got {got}")]
    GridTooSmall { got: usize, need: usize },
    #[error("surface deviates from a hyperplane by {deviation:.3e} (tolerance {tol:.3e})")]
    NotHyperplanar { deviation: f64, tol: f64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// A rotational surface generated by a profile curve.
#[derive(Debug, Clone)]
pub struct RotationalSurface {
    profile: ProfileCurve,
    v_range: (f64, f64),
}

impl RotationalSurface {
    /// Wraps a profile with the default orbit range: `[0, 2pi)` for the
    /// elliptic and Euclidean types, `[-3, 3]` for the hyperbolic type.
    pub fn new(profile: ProfileCurve) -> Self {
        let v_range = match profile.ambient() {
            Ambient::Hyperbolic => (-3.0, 3.0),
            _ => (0.0, 2.0 * std::f64::consts::PI),
        };
        RotationalSurface { profile, v_range }
    }

    pub fn with_v_range(profile: ProfileCurve, v_range: (f64, f64)) -> Self {
        RotationalSurface { profile, v_range }
    }

    pub fn profile(&self) -> &ProfileCurve {
        &self.profile
    }

    pub fn v_range(&self) -> (f64, f64) {
        self.v_range
    }

    pub fn ambient(&self) -> Ambient {
        self.profile.ambient()
    }
}

impl SurfacePatch for RotationalSurface {
    fn metric(&self) -> Metric4 {
        self.profile.ambient().metric4()
    }

    fn domain(&self) -> ((f64, f64), (f64, f64)) {
        (self.profile.domain(), self.v_range)
    }

    fn eval(&self, u: f64, v: f64) -> Result<PatchJet, SurfaceError> {
        let jet = self.profile.jet(u)?;
        let (x1, x2, r) = (jet.p.x1, jet.p.x2, jet.p.r);
        let (x1d, x2d, rd) = (jet.d1.x1, jet.d1.x2, jet.d1.r);
        let (x1dd, x2dd, rdd) = (jet.d2.x1, jet.d2.x2, jet.d2.r);
        Ok(match self.profile.ambient() {
            Ambient::Hyperbolic => {
                let (sh, ch) = (v.sinh(), v.cosh());
                PatchJet {
                    z: Vec4::new(x1, x2, r * sh, r * ch),
                    zu: Vec4::new(x1d, x2d, rd * sh, rd * ch),
                    zv: Vec4::new(0.0, 0.0, r * ch, r * sh),
                    zuu: Vec4::new(x1dd, x2dd, rdd * sh, rdd * ch),
                    zuv: Vec4::new(0.0, 0.0, rd * ch, rd * sh),
                    zvv: Vec4::new(0.0, 0.0, r * sh, r * ch),
                }
            }
            Ambient::Elliptic => {
                let (sn, cs) = (v.sin(), v.cos());
                PatchJet {
                    z: Vec4::new(r * cs, r * sn, x1, x2),
                    zu: Vec4::new(rd * cs, rd * sn, x1d, x2d),
                    zv: Vec4::new(-r * sn, r * cs, 0.0, 0.0),
                    zuu: Vec4::new(rdd * cs, rdd * sn, x1dd, x2dd),
                    zuv: Vec4::new(-rd * sn, rd * cs, 0.0, 0.0),
                    zvv: Vec4::new(-r * cs, -r * sn, 0.0, 0.0),
                }
            }
            Ambient::Euclidean => {
                let (sn, cs) = (v.sin(), v.cos());
                PatchJet {
                    z: Vec4::new(x1, x2, r * cs, r * sn),
                    zu: Vec4::new(x1d, x2d, rd * cs, rd * sn),
                    zv: Vec4::new(0.0, 0.0, -r * sn, r * cs),
                    zuu: Vec4::new(x1dd, x2dd, rdd * cs, rdd * sn),
                    zuv: Vec4::new(0.0, 0.0, -rd * sn, rd * cs),
                    zvv: Vec4::new(0.0, 0.0, -r * cs, -r * sn),
                }
            }
        })
    }
}

/// The standard rotating frame `(xbar, ybar, n1, n2)` of a rotational
/// surface at `(u, v)`, with `<n1,n1> = eps`, `<n2,n2> = -eps` in the
/// Minkowski ambients and both normals unit in the Euclidean one.
#[derive(Debug, Clone, Copy)]
pub struct RotationalFrame {
    pub xbar: Vec4,
    pub ybar: Vec4,
    pub frame: NormalFrame,
    pub kappa: f64,
    pub epsilon: f64,
}

pub fn rotational_frame(
    profile: &ProfileCurve,
    u: f64,
    v: f64,
) -> Result<RotationalFrame, CurveError> {
    let jet = profile.jet(u)?;
    let fr = profile.frenet(u)?;
    let (kappa, epsilon) = (fr.kappa, fr.epsilon);
    let (x1d, x2d, rd) = (jet.d1.x1, jet.d1.x2, jet.d1.r);
    let (x1dd, x2dd, rdd) = (jet.d2.x1, jet.d2.x2, jet.d2.r);
    let kappa1 = kappa1_from_jet(&jet);
    let (xbar, ybar, n1, n2) = match profile.ambient() {
        Ambient::Hyperbolic => {
            let (sh, ch) = (v.sinh(), v.cosh());
            (
                Vec4::new(x1d, x2d, rd * sh, rd * ch),
                Vec4::new(0.0, 0.0, ch, sh),
                Vec4::new(x1dd, x2dd, rdd * sh, rdd * ch).scale(1.0 / kappa),
                Vec4::new(
                    x2d * rdd - x2dd * rd,
                    rd * x1dd - x1d * rdd,
                    -kappa1 * sh,
                    -kappa1 * ch,
                )
                .scale(1.0 / kappa),
            )
        }
        Ambient::Elliptic => {
            let (sn, cs) = (v.sin(), v.cos());
            (
                Vec4::new(rd * cs, rd * sn, x1d, x2d),
                Vec4::new(-sn, cs, 0.0, 0.0),
                Vec4::new(rdd * cs, rdd * sn, x1dd, x2dd).scale(1.0 / kappa),
                Vec4::new(
                    kappa1 * cs,
                    kappa1 * sn,
                    x2d * rdd - rd * x2dd,
                    x1d * rdd - rd * x1dd,
                )
                .scale(1.0 / kappa),
            )
        }
        Ambient::Euclidean => {
            let (sn, cs) = (v.sin(), v.cos());
            (
                Vec4::new(x1d, x2d, rd * cs, rd * sn),
                Vec4::new(0.0, 0.0, -sn, cs),
                Vec4::new(x1dd, x2dd, rdd * cs, rdd * sn).scale(1.0 / kappa),
                Vec4::new(
                    x2d * rdd - x2dd * rd,
                    x1dd * rd - x1d * rdd,
                    kappa1 * cs,
                    kappa1 * sn,
                )
                .scale(1.0 / kappa),
            )
        }
    };
    let (sign_n1, sign_n2) = match profile.ambient() {
        Ambient::Euclidean => (1.0, 1.0),
        _ => (epsilon, -epsilon),
    };
    Ok(RotationalFrame {
        xbar,
        ybar,
        frame: NormalFrame {
            n1,
            n2,
            sign_n1,
            sign_n2,
        },
        kappa,
        epsilon,
    })
}

/// Closed-form pointwise invariants of a rotational surface; every field is
/// a function of `u` only. Normal components are given in the rotating frame
/// of [`rotational_frame`].
#[derive(Debug, Clone, Serialize)]
pub struct ClosedFormInvariants {
    pub l: f64,
    pub m: f64,
    pub n: f64,
    pub k: f64,
    pub varkappa: f64,
    pub gauss: f64,
    pub sigma_xx: (f64, f64),
    pub sigma_xy: (f64, f64),
    pub sigma_yy: (f64, f64),
    pub h: (f64, f64),
    pub h_norm2: f64,
    pub lambda: Option<f64>,
    pub kappa: f64,
    pub kappa1: f64,
    pub epsilon: f64,
    pub r: f64,
    pub r_dd: f64,
}

pub fn closed_form_invariants(
    profile: &ProfileCurve,
    u: f64,
) -> Result<ClosedFormInvariants, CurveError> {
    let jet = profile.jet(u)?;
    let fr = profile.frenet(u)?;
    let (kappa, epsilon) = (fr.kappa, fr.epsilon);
    let kappa1 = kappa1_from_jet(&jet);
    let (r, rdd) = (jet.p.r, jet.d2.r);
    let ambient = profile.ambient();

    let k = -kappa1 * kappa1 / (r * r);
    let varkappa = 0.0;
    let gauss = -rdd / r;
    let alpha = (r * kappa * kappa - epsilon * rdd) / (2.0 * r * kappa);
    let alpha_bar = (r * kappa * kappa + epsilon * rdd) / (2.0 * r * kappa);
    let beta = epsilon * kappa1 / (2.0 * r * kappa);
    // The n2-component of sigma(x,x) = sigma(y,y) = H carries the opposite
    // sign in the elliptic type; the off-diagonal sigma(x,y) swaps with it.
    let (m, diag2, off2) = match ambient {
        Ambient::Hyperbolic => (epsilon * kappa1, -beta, beta),
        Ambient::Elliptic => (-epsilon * kappa1, beta, -beta),
        Ambient::Euclidean => (-kappa1, -beta, beta),
    };
    let sigma_xx = (alpha, diag2);
    let sigma_xy = (alpha_bar, off2);
    let h = sigma_xx;
    let (s1, s2) = match ambient {
        Ambient::Euclidean => (1.0, 1.0),
        _ => (epsilon, -epsilon),
    };
    let h_norm2 = s1 * h.0 * h.0 + s2 * h.1 * h.1;
    let h_norm = (h.0 * h.0 + h.1 * h.1).sqrt();
    let lambda = if h_norm <= 1e-11 * (1.0 + kappa + rdd.abs())
        || h_norm2.abs() <= 1e-10 * h_norm * h_norm
    {
        None
    } else {
        let s = s1 * sigma_xy.0 * h.0 + s2 * sigma_xy.1 * h.1;
        Some(if h_norm2 > 0.0 {
            s / h_norm2.sqrt()
        } else {
            -s / (-h_norm2).sqrt()
        })
    };
    Ok(ClosedFormInvariants {
        l: 0.0,
        m,
        n: 0.0,
        k,
        varkappa,
        gauss,
        sigma_xx,
        sigma_xy,
        sigma_yy: sigma_xx,
        h,
        h_norm2,
        lambda,
        kappa,
        kappa1,
        epsilon,
        r,
        r_dd: rdd,
    })
}

/// Residuals of the eight frame derivative formulas of the hyperbolic-type
/// rotational surface, each the Euclidean norm of (numeric directional
/// derivative) minus (closed-form right-hand side).
#[derive(Debug, Clone, Serialize)]
pub struct DerivativeResiduals {
    /// Residuals in the order: `D_x xbar`, `D_x ybar`, `D_y xbar`,
    /// `D_y ybar`, `D_x n1`, `D_y n1`, `D_x n2`, `D_y n2`.
    pub residuals: [f64; 8],
    pub max: f64,
}

pub fn derivative_formula_residuals(
    profile: &ProfileCurve,
    u: f64,
    v: f64,
) -> Result<DerivativeResiduals, RotationalError> {
    derivative_formula_residuals_with_tau_offset(profile, u, v, 0.0)
}

/// Same as [`derivative_formula_residuals`] with an offset added to the
/// torsion before it enters the right-hand sides (fault-injection hook for
/// the verification suite).
pub fn derivative_formula_residuals_with_tau_offset(
    profile: &ProfileCurve,
    u: f64,
    v: f64,
    tau_offset: f64,
) -> Result<DerivativeResiduals, RotationalError> {
    if profile.ambient() != Ambient::Hyperbolic {
        return Err(RotationalError::AmbientMismatch {
            expected: "hyperbolic".into(),
            got: profile.ambient().name().into(),
        });
    }
    let jet = profile.jet(u)?;
    let fr = profile.frenet(u)?;
    let base = rotational_frame(profile, u, v)?;
    let (kappa, eps) = (base.kappa, base.epsilon);
    let tau = fr.tau + tau_offset;
    let kappa1 = kappa1_from_jet(&jet);
    let (r, rd, rdd) = (jet.p.r, jet.d1.r, jet.d2.r);

    let field = |idx: usize| {
        move |uu: f64, vv: f64| -> Vec4 {
            let f = rotational_frame(profile, uu, vv).expect("frame in stencil");
            [f.xbar, f.ybar, f.frame.n1, f.frame.n2][idx]
        }
    };
    let hu = 1e-4 * (1.0 + u.abs());
    let hv = 1e-4 * (1.0 + v.abs());
    let du = |idx: usize| -> Vec4 {
        let f = field(idx);
        let comp = |c: usize| d1_central(|x| f(x, v)[c], u, hu);
        Vec4::new(comp(0), comp(1), comp(2), comp(3))
    };
    // ybar has unit length, so the ybar-directional derivative is (1/r) d/dv.
    let dv = |idx: usize| -> Vec4 {
        let f = field(idx);
        let comp = |c: usize| d1_central(|x| f(u, x)[c], v, hv);
        Vec4::new(comp(0), comp(1), comp(2), comp(3)).scale(1.0 / r)
    };

    let (xbar, ybar, n1, n2) = (base.xbar, base.ybar, base.frame.n1, base.frame.n2);
    let c = 1.0 / (r * kappa);
    let residuals = [
        (du(0) - n1.scale(kappa)).norm_e(),
        du(1).norm_e(),
        (dv(0) - ybar.scale(rd / r)).norm_e(),
        (dv(1)
            - (xbar.scale(-rd / r) + n1.scale(-eps * rdd * c) + n2.scale(-eps * kappa1 * c)))
        .norm_e(),
        (du(2) - (xbar.scale(-eps * kappa) + n2.scale(-eps * tau))).norm_e(),
        (dv(2) - ybar.scale(rdd * c)).norm_e(),
        (du(3) - n1.scale(-eps * tau)).norm_e(),
        (dv(3) - ybar.scale(-kappa1 * c)).norm_e(),
    ];
    let max = residuals.iter().cloned().fold(0.0, f64::max);
    Ok(DerivativeResiduals { residuals, max })
}

/// Chen classification verdict for a rotational surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ChenVerdict {
    /// `kappa1 = 0` and `r kappa^2 - eps r'' = 0`: minimal surface.
    MinimalTrivialChen,
    /// `kappa1 = 0` and `r kappa^2 - eps r'' != 0`: lies in a hyperplane.
    HyperplanarTrivialChen,
    /// `kappa1 != 0` and the case-(iii) condition vanishes identically.
    NonTrivialChen,
    NotChen,
}

impl ChenVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            ChenVerdict::MinimalTrivialChen => "MinimalTrivialChen",
            ChenVerdict::HyperplanarTrivialChen => "HyperplanarTrivialChen",
            ChenVerdict::NonTrivialChen => "NonTrivialChen",
            ChenVerdict::NotChen => "NotChen",
        }
    }
}

/// Verdict plus the grid residuals of each defining condition.
#[derive(Debug, Clone, Serialize)]
pub struct ChenClassification {
    pub verdict: ChenVerdict,
    /// `max |kappa1|` over the grid.
    pub residual_kappa1: f64,
    /// `max |r kappa^2 - eps r''|` over the grid.
    pub residual_case_i: f64,
    /// Maximum absolute value of the case-(iii) expression:
    /// `r^2 kappa^4 - (r'')^2 + kappa1^2` in the Minkowski ambients,
    /// `r^2 kappa^4 - (r'')^2 - kappa1^2` in the Euclidean one.
    pub residual_case_iii: f64,
    pub tol: f64,
    pub grid: usize,
}

/// The case-(iii) (non-trivial Chen) condition value at one point.
pub fn chen_condition_value(ambient: Ambient, r: f64, kappa: f64, rdd: f64, kappa1: f64) -> f64 {
    let k4 = kappa * kappa * kappa * kappa;
    match ambient {
        Ambient::Euclidean => r * r * k4 - rdd * rdd - kappa1 * kappa1,
        _ => r * r * k4 - rdd * rdd + kappa1 * kappa1,
    }
}

/// Classifies a rotational surface per the three global cases. The default
/// tolerance is `1e-6 * (1 + max |r kappa^2|)`; profiles whose `kappa1`
/// crosses the tolerance are reported as [`RotationalError::MixedRegime`].
pub fn chen_classify(
    profile: &ProfileCurve,
    grid: usize,
    tol: Option<f64>,
) -> Result<ChenClassification, RotationalError> {
    if grid < 16 {
        return Err(RotationalError::GridTooSmall {
            got: grid,
            need: 16,
        });
    }
    let ambient = profile.ambient();
    let mut max_k1 = 0.0f64;
    let mut min_k1 = f64::INFINITY;
    let mut max_case_i = 0.0f64;
    let mut max_case_iii = 0.0f64;
    let mut max_rk2 = 0.0f64;
    let (mut pos_k1, mut neg_k1) = (false, false);
    for &u in &profile.sample_grid(grid) {
        let jet = profile.jet(u)?;
        let fr = profile.frenet(u)?;
        let kappa1 = kappa1_from_jet(&jet);
        let (r, rdd) = (jet.p.r, jet.d2.r);
        let rk2 = r * fr.kappa * fr.kappa;
        max_k1 = max_k1.max(kappa1.abs());
        min_k1 = min_k1.min(kappa1.abs());
        max_case_i = max_case_i.max((rk2 - fr.epsilon * rdd).abs());
        max_case_iii =
            max_case_iii.max(chen_condition_value(ambient, r, fr.kappa, rdd, kappa1).abs());
        max_rk2 = max_rk2.max(rk2.abs());
        pos_k1 |= kappa1 > 0.0;
        neg_k1 |= kappa1 < 0.0;
    }
    let tol = tol.unwrap_or(1e-6 * (1.0 + max_rk2));
    // kappa1 must keep one character over the whole grid: either vanishing
    // everywhere or bounded away from zero with one sign.
    let mixed = (max_k1 > tol && min_k1 <= tol) || (max_k1 > tol && pos_k1 && neg_k1);
    if mixed {
        return Err(RotationalError::MixedRegime {
            min: min_k1,
            max: max_k1,
            tol,
        });
    }
    let verdict = if max_k1 <= tol {
        if max_case_i <= tol {
            ChenVerdict::MinimalTrivialChen
        } else {
            ChenVerdict::HyperplanarTrivialChen
        }
    } else if max_case_iii <= tol {
        ChenVerdict::NonTrivialChen
    } else {
        ChenVerdict::NotChen
    };
    Ok(ChenClassification {
        verdict,
        residual_kappa1: max_k1,
        residual_case_i: max_case_i,
        residual_case_iii: max_case_iii,
        tol,
        grid,
    })
}

/// Constant-normal witness of the planar trivial case: the `n2` direction,
/// its drift across the grid, and the maximum deviation of surface points
/// from the hyperplane through the first sample orthogonal to it.
#[derive(Debug, Clone, Serialize)]
pub struct HyperplaneWitness {
    pub normal: Vec4,
    pub max_deviation: f64,
    /// `max |n2(p) - n2(p0)|` over the grid (Euclidean norm).
    pub max_normal_drift: f64,
    /// Maximum Euclidean norm of the numeric directional derivatives of `n2`.
    pub max_normal_derivative: f64,
}

pub fn hyperplane_witness(
    surface: &RotationalSurface,
    grid: usize,
) -> Result<HyperplaneWitness, RotationalError> {
    let profile = surface.profile();
    // Applies to the planar-profile cases (kappa1 = 0), where n2 is constant.
    let mut max_k1 = 0.0f64;
    for &u in &profile.sample_grid(grid.max(2)) {
        let jet = profile.jet(u)?;
        max_k1 = max_k1.max(kappa1_from_jet(&jet).abs());
    }
    if max_k1 > 1e-6 {
        return Err(RotationalError::Precondition(format!(
            "hyperplane witness requires kappa1 = 0, found max |kappa1| = {max_k1:.3e}"
        )));
    }

    let metric = surface.metric();
    let ((ulo, uhi), vrange) = surface.domain();
    // Shrink the u-grid so the derivative stencils stay inside the profile
    // domain.
    let margin = 3e-4 * (1.0 + ulo.abs().max(uhi.abs()));
    let urange = (ulo + margin, uhi - margin);
    let nu = grid.max(2);
    let nv = grid.max(2);
    let mut reference: Option<(Vec4, Vec4)> = None; // (z0, n2_0)
    let mut max_drift = 0.0f64;
    let mut max_deriv = 0.0f64;
    let mut extent = 0.0f64;
    let mut points = Vec::with_capacity(nu * nv);
    for iu in 0..nu {
        let u = urange.0 + (urange.1 - urange.0) * iu as f64 / (nu - 1) as f64;
        for iv in 0..nv {
            let v = vrange.0 + (vrange.1 - vrange.0) * iv as f64 / (nv - 1) as f64;
            let fr = rotational_frame(profile, u, v)?;
            let jet = surface.eval(u, v)?;
            let (z0, n20) = *reference.get_or_insert((jet.z, fr.frame.n2));
            max_drift = max_drift.max((fr.frame.n2 - n20).norm_e());
            extent = extent.max((jet.z - z0).norm_e());
            points.push(jet.z - z0);
            // Directional derivatives of n2 along the unit frame directions
            // xbar = d/du and ybar = (1/r) d/dv.
            let hu = 1e-4 * (1.0 + u.abs());
            let hv = 1e-4 * (1.0 + v.abs());
            let comp = |c: usize, along_u: bool| {
                if along_u {
                    d1_central(
                        |x| rotational_frame(profile, x, v).expect("stencil").frame.n2[c],
                        u,
                        hu,
                    )
                } else {
                    d1_central(
                        |x| rotational_frame(profile, u, x).expect("stencil").frame.n2[c],
                        v,
                        hv,
                    )
                }
            };
            let r = profile.jet(u)?.p.r;
            let du_n2 = Vec4::new(comp(0, true), comp(1, true), comp(2, true), comp(3, true));
            let dv_n2 = Vec4::new(comp(0, false), comp(1, false), comp(2, false), comp(3, false))
                .scale(1.0 / r);
            max_deriv = max_deriv.max(du_n2.norm_e()).max(dv_n2.norm_e());
        }
    }
    let normal = reference.expect("nonempty grid").1;
    let mut max_deviation = 0.0f64;
    for p in points {
        max_deviation = max_deviation.max(metric.inner(p, normal).abs());
    }
    let tol = 1e-6 * (1.0 + extent);
    if max_deviation > tol {
        return Err(RotationalError::NotHyperplanar {
            deviation: max_deviation,
            tol,
        });
    }
    Ok(HyperplaneWitness {
        normal,
        max_deviation,
        max_normal_drift: max_drift,
        max_normal_derivative: max_deriv,
    })
}

#[cfg(test)]
mod tests;
