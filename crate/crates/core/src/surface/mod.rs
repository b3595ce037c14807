//! The general pointwise pipeline for spacelike parametric patches:
//! fundamental forms, the invariants `k` and `varkappa` of the
//! Weingarten-type map, Gauss curvature, mean curvature vector, the Chen
//! invariant `lambda` and the allied mean curvature vector.
//!
//! Everything here is frame-built from scratch at each point, independent of
//! the closed-form rotational expressions, so the two routes cross-validate
//! each other.

use serde::Serialize;
use thiserror::Error;

use crate::curve::CurveError;
use crate::minkowski::{
    det4, euclidean_normal_frame, orthonormal_normal_frame, FrameError, Metric4, NormalFrame, Vec4,
};
use crate::numeric::sym_eigen2;

/// Immersion value and partial derivatives up to order 2 at a parameter
/// point.
#[derive(Debug, Clone, Copy)]
pub struct PatchJet {
    pub z: Vec4,
    pub zu: Vec4,
    pub zv: Vec4,
    pub zuu: Vec4,
    pub zuv: Vec4,
    pub zvv: Vec4,
}

/// A parametric surface with second-order jet access.
pub trait SurfacePatch {
    fn metric(&self) -> Metric4;
    /// Parameter rectangle `(u range, v range)`.
    fn domain(&self) -> ((f64, f64), (f64, f64));
    fn eval(&self, u: f64, v: f64) -> Result<PatchJet, SurfaceError>;
}

/// A patch defined by a closure, used for synthetic and oracle surfaces.
pub struct AnalyticPatch<F: Fn(f64, f64) -> PatchJet> {
    pub metric: Metric4,
    pub domain: ((f64, f64), (f64, f64)),
    pub jet: F,
}

impl<F: Fn(f64, f64) -> PatchJet> SurfacePatch for AnalyticPatch<F> {
    fn metric(&self) -> Metric4 {
        self.metric
    }
    fn domain(&self) -> ((f64, f64), (f64, f64)) {
        self.domain
    }
    fn eval(&self, u: f64, v: f64) -> Result<PatchJet, SurfaceError> {
        Ok((self.jet)(u, v))
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SurfaceError {
    #[error("patch is not spacelike at (u, v) = ({u}, {v}): E = {e:.3e}, EG - F^2 = {w2:.3e}")]
    NotSpacelike { u: f64, v: f64, e: f64, w2: f64 },
    #[error("normal frame construction failed: {0}")]
    Frame(#[from] FrameError),
    #[error("profile evaluation failed: {0}")]
    Curve(#[from] CurveError),
    #[error("metric stencil at (u, v) = ({u}, {v}) leaves the parameter domain")]
    StencilOutOfDomain { u: f64, v: f64 },
    #[error("mean curvature vector vanishes at (u, v) = ({u}, {v}) (minimal point)")]
    MinimalPoint { u: f64, v: f64 },
    #[error("mean curvature vector is lightlike at (u, v) = ({u}, {v})")]
    LightlikeMeanCurvature { u: f64, v: f64 },
    #[error("umbilical point: second fundamental form proportional to the first")]
    UmbilicalPoint,
}

/// Coefficients of the first fundamental form and the area density
/// `W = sqrt(EG - F^2)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FirstFundamental {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub w: f64,
}

/// The six inner products `c_ij^k = <z_ij, n_k>` of second partials with the
/// normal frame.
#[derive(Debug, Clone, Copy)]
pub struct SecondTensorCoeffs {
    pub c111: f64,
    pub c121: f64,
    pub c221: f64,
    pub c112: f64,
    pub c122: f64,
    pub c222: f64,
}

/// Coefficients of the second fundamental form.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SecondFundamental {
    pub l: f64,
    pub m: f64,
    pub n: f64,
}

/// Point types induced by the signs of `k` and `varkappa`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointClass {
    Flat,
    Elliptic,
    Hyperbolic,
    Parabolic,
}

impl PointClass {
    pub fn name(&self) -> &'static str {
        match self {
            PointClass::Flat => "flat",
            PointClass::Elliptic => "elliptic",
            PointClass::Hyperbolic => "hyperbolic",
            PointClass::Parabolic => "parabolic",
        }
    }
}

/// Mean-curvature regime at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MeanCurvatureClass {
    /// `H` nonzero with `<H,H> != 0`.
    Regular,
    /// `H = 0` within tolerance.
    Minimal,
    /// `H != 0` but `<H,H> = 0` within tolerance.
    Lightlike,
}

/// Orthonormal coordinate tangents and principal tangents at a point.
#[derive(Debug, Clone, Copy)]
pub struct TangentFrames {
    pub xbar: Vec4,
    pub ybar: Vec4,
    pub x: Vec4,
    pub y: Vec4,
}

/// Pointwise record of every invariant the pipeline produces.
#[derive(Debug, Clone, Serialize)]
pub struct InvariantSet {
    pub first: FirstFundamental,
    pub second: SecondFundamental,
    pub k: f64,
    pub varkappa: f64,
    /// Gauss curvature through the Gauss equation.
    pub gauss: f64,
    pub h: Vec4,
    /// Components of `H` in the pipeline's normal frame.
    pub h_n1: f64,
    pub h_n2: f64,
    /// `<H, H>`.
    pub h_norm2: f64,
    pub h_class: MeanCurvatureClass,
    /// Defined only when `H` is nonzero and non-lightlike.
    pub lambda: Option<f64>,
    /// Unit normal orthogonal to `H`, oriented by `det(x, y, H/|H|, l) > 0`.
    #[serde(skip)]
    pub l: Option<Vec4>,
    /// Allied mean curvature vector; `None` at lightlike-`H` points where it
    /// is undefined, the zero vector at minimal points.
    pub allied: Option<Vec4>,
    pub point_class: PointClass,
    /// `varkappa^2 - k`, the minimality residual.
    pub minimal_residual: f64,
    /// True when the principal directions were degenerate (second form
    /// proportional to the first) and the coordinate bisectors were used.
    pub principal_degenerate: bool,
}

/// First fundamental form at a jet. Fails if the induced metric is not
/// positive definite.
pub fn first_form(metric: Metric4, jet: &PatchJet, u: f64, v: f64) -> Result<FirstFundamental, SurfaceError> {
    let e = metric.inner(jet.zu, jet.zu);
    let f = metric.inner(jet.zu, jet.zv);
    let g = metric.inner(jet.zv, jet.zv);
    let w2 = e * g - f * f;
    let tol = 1e-14 * (1.0 + e * e + f * f + g * g);
    if e <= tol || w2 <= tol {
        return Err(SurfaceError::NotSpacelike { u, v, e, w2 });
    }
    Ok(FirstFundamental {
        e,
        f,
        g,
        w: w2.sqrt(),
    })
}

/// The six second-order coefficients against an orthonormal normal frame.
pub fn second_tensor(metric: Metric4, jet: &PatchJet, frame: &NormalFrame) -> SecondTensorCoeffs {
    SecondTensorCoeffs {
        c111: metric.inner(jet.zuu, frame.n1),
        c121: metric.inner(jet.zuv, frame.n1),
        c221: metric.inner(jet.zvv, frame.n1),
        c112: metric.inner(jet.zuu, frame.n2),
        c122: metric.inner(jet.zuv, frame.n2),
        c222: metric.inner(jet.zvv, frame.n2),
    }
}

/// Second fundamental form from the tensor coefficients:
/// `L = (2/W) |c111 c121; c112 c122|`, `M = (1/W) |c111 c221; c112 c222|`,
/// `N = (2/W) |c121 c221; c122 c222|`.
pub fn second_form(c: &SecondTensorCoeffs, w: f64) -> SecondFundamental {
    SecondFundamental {
        l: 2.0 / w * (c.c111 * c.c122 - c.c121 * c.c112),
        m: 1.0 / w * (c.c111 * c.c222 - c.c221 * c.c112),
        n: 2.0 / w * (c.c121 * c.c222 - c.c221 * c.c122),
    }
}

/// `k = (LN - M^2)/(EG - F^2)` and `varkappa = (EN + GL - 2FM)/(2(EG - F^2))`.
pub fn gamma_invariants(i: &FirstFundamental, ii: &SecondFundamental) -> (f64, f64) {
    let w2 = i.w * i.w;
    (
        (ii.l * ii.n - ii.m * ii.m) / w2,
        (i.e * ii.n + i.g * ii.l - 2.0 * i.f * ii.m) / (2.0 * w2),
    )
}

/// Mean curvature vector from the trace of the second fundamental tensor:
/// `H = sum_k sign(n_k) (G c11^k - 2F c12^k + E c22^k) / (2W^2) n_k`.
pub fn mean_curvature(
    i: &FirstFundamental,
    c: &SecondTensorCoeffs,
    frame: &NormalFrame,
) -> Vec4 {
    let w2 = i.w * i.w;
    let h1 = frame.sign_n1 * (i.g * c.c111 - 2.0 * i.f * c.c121 + i.e * c.c221) / (2.0 * w2);
    let h2 = frame.sign_n2 * (i.g * c.c112 - 2.0 * i.f * c.c122 + i.e * c.c222) / (2.0 * w2);
    frame.n1.scale(h1) + frame.n2.scale(h2)
}

/// Normal projections `sigma_uu, sigma_uv, sigma_vv` of the second partials
/// (frame-free: tangential parts are removed through the Gram system).
pub fn sigma_tensor(metric: Metric4, jet: &PatchJet, i: &FirstFundamental) -> [Vec4; 3] {
    let w2 = i.w * i.w;
    let project = |z: Vec4| -> Vec4 {
        let p = metric.inner(z, jet.zu);
        let q = metric.inner(z, jet.zv);
        let a = (i.g * p - i.f * q) / w2;
        let b = (i.e * q - i.f * p) / w2;
        z - jet.zu.scale(a) - jet.zv.scale(b)
    };
    [project(jet.zuu), project(jet.zuv), project(jet.zvv)]
}

/// `sigma(x, y)` for tangent vectors given by coordinates in the `(zu, zv)`
/// basis.
pub fn sigma_of(sigmas: &[Vec4; 3], x: (f64, f64), y: (f64, f64)) -> Vec4 {
    sigmas[0].scale(x.0 * y.0) + sigmas[1].scale(x.0 * y.1 + x.1 * y.0) + sigmas[2].scale(x.1 * y.1)
}

/// Gauss curvature through the Gauss equation for flat ambients:
/// `K = (<sigma_uu, sigma_vv> - <sigma_uv, sigma_uv>) / (EG - F^2)`.
pub fn gauss_from_sigma(metric: Metric4, sigmas: &[Vec4; 3], i: &FirstFundamental) -> f64 {
    (metric.inner(sigmas[0], sigmas[2]) - metric.inner(sigmas[1], sigmas[1])) / (i.w * i.w)
}

/// The Chen invariant: `lambda = <sigma(x,y), H> / sqrt(<H,H>)` when
/// `<H,H> > 0` and `lambda = -<sigma(x,y), H> / sqrt(-<H,H>)` when
/// `<H,H> < 0`.
///
/// `h_scale` is the scale against which a vanishing `H` is detected
/// (typically `1 + |z_uu| + |z_vv|`).
pub fn lambda_invariant(
    metric: Metric4,
    sigma_xy: Vec4,
    h: Vec4,
    h_scale: f64,
    at: (f64, f64),
) -> Result<f64, SurfaceError> {
    let h_norm = h.norm_e();
    if h_norm <= 1e-9 * h_scale {
        return Err(SurfaceError::MinimalPoint { u: at.0, v: at.1 });
    }
    let h2 = metric.inner(h, h);
    if h2.abs() <= 1e-10 * h_norm * h_norm {
        return Err(SurfaceError::LightlikeMeanCurvature { u: at.0, v: at.1 });
    }
    let s = metric.inner(sigma_xy, h);
    Ok(if h2 > 0.0 {
        s / h2.sqrt()
    } else {
        -s / (-h2).sqrt()
    })
}

/// `a(H) = (sqrt(varkappa^2 - k)/2) lambda l`, with tiny negative
/// discriminants clamped to zero.
pub fn allied_mean_curvature(k: f64, varkappa: f64, lambda: f64, l: Vec4) -> Vec4 {
    let disc = (varkappa * varkappa - k).max(0.0);
    l.scale(0.5 * disc.sqrt() * lambda)
}

/// The unit normal orthogonal to `H` with `<l,l> = -sign <H,H>` in the
/// Minkowski ambient (`+1` in the Euclidean one), oriented so that
/// `det(x, y, H/|H|, l) > 0`.
pub fn l_direction(
    metric: Metric4,
    frame: &NormalFrame,
    h: Vec4,
    x: Vec4,
    y: Vec4,
) -> Vec4 {
    let (h1, h2) = frame.components(metric, h);
    let hh = metric.inner(h, h);
    let scale = 1.0 / hh.abs().sqrt();
    let l0 = match metric {
        Metric4::Minkowski => (frame.n1.scale(h2) + frame.n2.scale(h1)).scale(scale),
        Metric4::Euclidean => (frame.n1.scale(-h2) + frame.n2.scale(h1)).scale(scale),
    };
    let h_hat = h.scale(scale);
    if det4(x, y, h_hat, l0) < 0.0 {
        -l0
    } else {
        l0
    }
}

/// Orthonormalized coordinate tangents `(xbar, ybar)`.
pub fn coordinate_tangents(jet: &PatchJet, i: &FirstFundamental) -> (Vec4, Vec4) {
    let xbar = jet.zu.scale(1.0 / i.e.sqrt());
    let ybar = (jet.zv - jet.zu.scale(i.f / i.e)).scale(i.e.sqrt() / i.w);
    (xbar, ybar)
}

/// Principal tangents from the generalized eigenproblem of `(II, I)`.
///
/// The output is normalized so that `<x, xbar> >= 0` and
/// `det(x, y, n1, n2) > 0`. Fails with [`SurfaceError::UmbilicalPoint`] when
/// the second form is proportional to the first within tolerance.
pub fn principal_tangents(
    i: &FirstFundamental,
    ii: &SecondFundamental,
    jet: &PatchJet,
    frame: &NormalFrame,
) -> Result<TangentFrames, SurfaceError> {
    let (k, varkappa) = gamma_invariants(i, ii);
    let disc = varkappa * varkappa - k;
    if disc <= 1e-14 * (1.0 + varkappa * varkappa + k.abs()) {
        return Err(SurfaceError::UmbilicalPoint);
    }
    let (xbar, ybar) = coordinate_tangents(jet, i);
    // The second form in the orthonormal basis (xbar, ybar).
    let a = ii.l / i.e;
    let b = (ii.m - i.f * ii.l / i.e) / i.w;
    let c = (i.e * ii.n - 2.0 * i.f * ii.m + i.f * i.f * ii.l / i.e) / (i.w * i.w);
    let ((_, q1), (_, q2)) = sym_eigen2(a, b, c);
    let mut x = xbar.scale(q1[0]) + ybar.scale(q1[1]);
    let mut y = xbar.scale(q2[0]) + ybar.scale(q2[1]);
    if crate::minkowski::dot(x, xbar) < 0.0 {
        x = -x;
    }
    if det4(x, y, frame.n1, frame.n2) < 0.0 {
        y = -y;
    }
    Ok(TangentFrames { xbar, ybar, x, y })
}

/// Point classification by the signs of `k` and `varkappa` against `tol`.
pub fn classify_point(k: f64, varkappa: f64, tol: f64) -> PointClass {
    debug_assert!(tol >= 0.0);
    if k < -tol {
        PointClass::Hyperbolic
    } else if k > tol {
        PointClass::Elliptic
    } else if varkappa.abs() > tol {
        PointClass::Parabolic
    } else {
        PointClass::Flat
    }
}

/// Tolerances used by [`analyze_point`]. The defaults are scale-aware.
#[derive(Debug, Clone, Copy, Default)]
pub struct Tolerances {
    /// Absolute tolerance for the point classification; scale-aware default
    /// when unset.
    pub point_class: Option<f64>,
}

impl Tolerances {
    fn point_class_tol(&self, k: f64, varkappa: f64) -> f64 {
        self.point_class
            .unwrap_or_else(|| 1e-9 * (1.0 + k.abs() + varkappa.abs()))
    }
}

/// Runs the whole pipeline at one parameter point.
pub fn analyze_point<P: SurfacePatch + ?Sized>(
    patch: &P,
    u: f64,
    v: f64,
    tols: &Tolerances,
) -> Result<InvariantSet, SurfaceError> {
    let metric = patch.metric();
    let jet = patch.eval(u, v)?;
    let i = first_form(metric, &jet, u, v)?;
    let frame = match metric {
        Metric4::Minkowski => orthonormal_normal_frame(jet.zu, jet.zv)?,
        Metric4::Euclidean => euclidean_normal_frame(jet.zu, jet.zv)?,
    };
    let c = second_tensor(metric, &jet, &frame);
    let ii = second_form(&c, i.w);
    let (k, varkappa) = gamma_invariants(&i, &ii);
    let sigmas = sigma_tensor(metric, &jet, &i);
    let gauss = gauss_from_sigma(metric, &sigmas, &i);
    let h = mean_curvature(&i, &c, &frame);
    let (h_n1, h_n2) = frame.components(metric, h);
    let h_norm2 = metric.inner(h, h);
    let h_scale = 1.0 + jet.zuu.norm_e() + jet.zvv.norm_e();

    let (frames, principal_degenerate) = match principal_tangents(&i, &ii, &jet, &frame) {
        Ok(tf) => (tf, false),
        Err(SurfaceError::UmbilicalPoint) => {
            // Every direction is principal; use the coordinate bisectors,
            // which coincide with the closed-form principal tangents on
            // rotational patches.
            let (xbar, ybar) = coordinate_tangents(&jet, &i);
            let half = std::f64::consts::FRAC_1_SQRT_2;
            let x = (xbar + ybar).scale(half);
            let mut y = (xbar - ybar).scale(half);
            if det4(x, y, frame.n1, frame.n2) < 0.0 {
                y = -y;
            }
            (TangentFrames { xbar, ybar, x, y }, true)
        }
        Err(e) => return Err(e),
    };
    // sigma(x, y) needs (zu, zv)-coordinates of the principal tangents.
    let coords = |w: Vec4| -> (f64, f64) {
        let p = metric.inner(w, jet.zu);
        let q = metric.inner(w, jet.zv);
        let w2 = i.w * i.w;
        ((i.g * p - i.f * q) / w2, (i.e * q - i.f * p) / w2)
    };
    let sigma_xy = sigma_of(&sigmas, coords(frames.x), coords(frames.y));

    let (lambda, l, allied, h_class) =
        match lambda_invariant(metric, sigma_xy, h, h_scale, (u, v)) {
            Ok(lambda) => {
                let l = l_direction(metric, &frame, h, frames.x, frames.y);
                let allied = allied_mean_curvature(k, varkappa, lambda, l);
                (Some(lambda), Some(l), Some(allied), MeanCurvatureClass::Regular)
            }
            Err(SurfaceError::MinimalPoint { .. }) => (
                None,
                None,
                Some(Vec4::ZERO),
                MeanCurvatureClass::Minimal,
            ),
            Err(SurfaceError::LightlikeMeanCurvature { .. }) => {
                (None, None, None, MeanCurvatureClass::Lightlike)
            }
            Err(e) => return Err(e),
        };

    let point_class = classify_point(k, varkappa, tols.point_class_tol(k, varkappa));
    Ok(InvariantSet {
        first: i,
        second: ii,
        k,
        varkappa,
        gauss,
        h,
        h_n1,
        h_n2,
        h_norm2,
        h_class,
        lambda,
        l,
        allied,
        point_class,
        minimal_residual: varkappa * varkappa - k,
        principal_degenerate,
    })
}

/// Intrinsic Gauss curvature from metric samples alone (Brioschi-type
/// formula with 4th-order stencils on `E, F, G`). This is the independent
/// oracle against the extrinsic Gauss-equation route.
pub fn gauss_curvature_intrinsic<P: SurfacePatch + ?Sized>(
    patch: &P,
    u: f64,
    v: f64,
) -> Result<f64, SurfaceError> {
    let metric = patch.metric();
    let ((ulo, uhi), (vlo, vhi)) = patch.domain();
    let hu = 1e-3 * (1.0 + u.abs());
    let hv = 1e-3 * (1.0 + v.abs());
    if u - 2.0 * hu < ulo || u + 2.0 * hu > uhi || v - 2.0 * hv < vlo || v + 2.0 * hv > vhi {
        return Err(SurfaceError::StencilOutOfDomain { u, v });
    }

    // E, F, G on the 5x5 tensor grid.
    let mut e = [[0.0; 5]; 5];
    let mut f = [[0.0; 5]; 5];
    let mut g = [[0.0; 5]; 5];
    for (a, row) in (-2..=2).enumerate() {
        for (b, col) in (-2..=2).enumerate() {
            let jet = patch.eval(u + row as f64 * hu, v + col as f64 * hv)?;
            e[a][b] = metric.inner(jet.zu, jet.zu);
            f[a][b] = metric.inner(jet.zu, jet.zv);
            g[a][b] = metric.inner(jet.zv, jet.zv);
        }
    }
    const D1: [f64; 5] = [1.0, -8.0, 0.0, 8.0, -1.0];
    const D2: [f64; 5] = [-1.0, 16.0, -30.0, 16.0, -1.0];
    let du = |t: &[[f64; 5]; 5]| (0..5).map(|a| D1[a] * t[a][2]).sum::<f64>() / (12.0 * hu);
    let dv = |t: &[[f64; 5]; 5]| (0..5).map(|b| D1[b] * t[2][b]).sum::<f64>() / (12.0 * hv);
    let duu = |t: &[[f64; 5]; 5]| (0..5).map(|a| D2[a] * t[a][2]).sum::<f64>() / (12.0 * hu * hu);
    let dvv = |t: &[[f64; 5]; 5]| (0..5).map(|b| D2[b] * t[2][b]).sum::<f64>() / (12.0 * hv * hv);
    let duv = |t: &[[f64; 5]; 5]| {
        let mut acc = 0.0;
        for a in 0..5 {
            for b in 0..5 {
                acc += D1[a] * D1[b] * t[a][b];
            }
        }
        acc / (144.0 * hu * hv)
    };

    let (e0, f0, g0) = (e[2][2], f[2][2], g[2][2]);
    let w2 = e0 * g0 - f0 * f0;
    if w2 <= 0.0 {
        return Err(SurfaceError::NotSpacelike {
            u,
            v,
            e: e0,
            w2,
        });
    }
    let (e_u, e_v, e_vv) = (du(&e), dv(&e), dvv(&e));
    let (g_u, g_v, g_uu) = (du(&g), dv(&g), duu(&g));
    let (f_u, f_v, f_uv) = (du(&f), dv(&f), duv(&f));

    let m1 = [
        [
            -0.5 * e_vv + f_uv - 0.5 * g_uu,
            0.5 * e_u,
            f_u - 0.5 * e_v,
        ],
        [f_v - 0.5 * g_u, e0, f0],
        [0.5 * g_v, f0, g0],
    ];
    let m2 = [
        [0.0, 0.5 * e_v, 0.5 * g_u],
        [0.5 * e_v, e0, f0],
        [0.5 * g_u, f0, g0],
    ];
    Ok((crate::numeric::det3(m1[0], m1[1], m1[2]) - crate::numeric::det3(m2[0], m2[1], m2[2]))
        / (w2 * w2))
}

/// Chen's trace-formula recomputation of the allied mean curvature vector in
/// the Euclidean ambient: `a(H) = (|H|/2) tr(A_1 A_2) xi_2` for an
/// orthonormal normal base `xi_1 = H/|H|, xi_2`. The result does not depend
/// on the sign choice of `xi_2`.
pub fn allied_via_trace(
    jet: &PatchJet,
    i: &FirstFundamental,
    frame: &NormalFrame,
    frames: &TangentFrames,
) -> Option<Vec4> {
    let metric = Metric4::Euclidean;
    let sigmas = sigma_tensor(metric, jet, i);
    let coords = |w: Vec4| -> (f64, f64) {
        let p = metric.inner(w, jet.zu);
        let q = metric.inner(w, jet.zv);
        let w2 = i.w * i.w;
        ((i.g * p - i.f * q) / w2, (i.e * q - i.f * p) / w2)
    };
    let (cx, cy) = (coords(frames.x), coords(frames.y));
    let sigma_xx = sigma_of(&sigmas, cx, cx);
    let sigma_xy = sigma_of(&sigmas, cx, cy);
    let sigma_yy = sigma_of(&sigmas, cy, cy);
    let c = second_tensor(metric, jet, frame);
    let h = mean_curvature(i, &c, frame);
    let h_norm = h.norm_e();
    if h_norm <= 1e-12 {
        return None;
    }
    let xi1 = h.scale(1.0 / h_norm);
    let (h1, h2) = frame.components(metric, h);
    let xi2 = (frame.n1.scale(-h2) + frame.n2.scale(h1)).scale(1.0 / h_norm);
    let a = |xi: Vec4| {
        [
            metric.inner(sigma_xx, xi),
            metric.inner(sigma_xy, xi),
            metric.inner(sigma_yy, xi),
        ]
    };
    let a1 = a(xi1);
    let a2 = a(xi2);
    let trace = a1[0] * a2[0] + 2.0 * a1[1] * a2[1] + a1[2] * a2[2];
    Some(xi2.scale(0.5 * h_norm * trace))
}
