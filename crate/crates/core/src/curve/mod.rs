//! Unit-speed profile curves `(x1(u), x2(u), r(u))` in a 3-dimensional
//! subspace, their Frenet apparatus and the projection curvature `kappa1`.
//!
//! A profile lives in one of three ambients, each fixing the quadratic form
//! on velocity components `(x1', x2', r')`:
//!
//! - hyperbolic: `x1'^2 + x2'^2 - r'^2`
//! - elliptic:   `x1'^2 - x2'^2 + r'^2`
//! - euclidean:  `x1'^2 + x2'^2 + r'^2`
//!
//! Curves are unit-speed, have `r > 0` and nondegenerate acceleration
//! (`<t', t'>` bounded away from zero, of constant sign): the Frenet frame,
//! curvature and torsion are defined under exactly these assumptions.

mod family;
mod profile_io;
mod tabulated;

pub use family::Family;
pub use profile_io::{profile_from_json, profile_to_json, ProfileSpec};
pub use tabulated::TabulatedCurve;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::minkowski::Metric4;
use crate::numeric::det3;

/// Ambient tag of a profile curve and of the rotational surface it generates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    Hyperbolic,
    Elliptic,
    Euclidean,
}

impl Ambient {
    /// Metric signs on the components `(x1, x2, r)`.
    #[inline]
    pub fn signs(&self) -> [f64; 3] {
        match self {
            Ambient::Hyperbolic => [1.0, 1.0, -1.0],
            Ambient::Elliptic => [1.0, -1.0, 1.0],
            Ambient::Euclidean => [1.0, 1.0, 1.0],
        }
    }

    /// Inner product of curve-space vectors.
    #[inline]
    pub fn inner3(&self, a: V3, b: V3) -> f64 {
        let s = self.signs();
        s[0] * a.x1 * b.x1 + s[1] * a.x2 * b.x2 + s[2] * a.r * b.r
    }

    /// Metric of the 4-space the rotational surface lives in.
    #[inline]
    pub fn metric4(&self) -> Metric4 {
        match self {
            Ambient::Euclidean => Metric4::Euclidean,
            _ => Metric4::Minkowski,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Ambient::Hyperbolic => "hyperbolic",
            Ambient::Elliptic => "elliptic",
            Ambient::Euclidean => "euclidean",
        }
    }
}

/// A vector in profile-curve coordinates `(x1, x2, r)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct V3 {
    pub x1: f64,
    pub x2: f64,
    pub r: f64,
}

impl V3 {
    #[inline]
    pub fn new(x1: f64, x2: f64, r: f64) -> Self {
        V3 { x1, x2, r }
    }

    #[inline]
    pub fn as_array(&self) -> [f64; 3] {
        [self.x1, self.x2, self.r]
    }

    #[inline]
    pub fn scale(&self, s: f64) -> V3 {
        V3::new(self.x1 * s, self.x2 * s, self.r * s)
    }

    /// Euclidean norm of the components, for residual reporting.
    #[inline]
    pub fn norm_e(&self) -> f64 {
        (self.x1 * self.x1 + self.x2 * self.x2 + self.r * self.r).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.x1.is_finite() && self.x2.is_finite() && self.r.is_finite()
    }
}

impl std::ops::Add for V3 {
    type Output = V3;
    #[inline]
    fn add(self, o: V3) -> V3 {
        V3::new(self.x1 + o.x1, self.x2 + o.x2, self.r + o.r)
    }
}

impl std::ops::Sub for V3 {
    type Output = V3;
    #[inline]
    fn sub(self, o: V3) -> V3 {
        V3::new(self.x1 - o.x1, self.x2 - o.x2, self.r - o.r)
    }
}

/// Position and derivatives of orders 1-3 at a parameter value.
#[derive(Debug, Clone, Copy)]
pub struct CurveJet {
    pub u: f64,
    pub p: V3,
    pub d1: V3,
    pub d2: V3,
    pub d3: V3,
}

/// Frenet frame, curvature, torsion and the causal sign of the principal
/// normal at a curve point.
///
/// Conventions: `kappa = sqrt(|<t',t'>|) > 0`, `n = t'/kappa`,
/// `epsilon = sign <t',t'>` (always `+1` in the Euclidean ambient), and `b`
/// completes the frame with `det(t, n, b) = +1`; in the Minkowski ambients
/// `<b,b> = -epsilon`. Torsion satisfies `n' = -eps*kappa*t + tau*b` and
/// `b' = tau*n` (Minkowski) or the classical `b' = -tau*n` (Euclidean).
#[derive(Debug, Clone, Copy)]
pub struct FrenetApparatus {
    pub t: V3,
    pub n: V3,
    pub b: V3,
    pub kappa: f64,
    pub tau: f64,
    pub epsilon: f64,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurveError {
    #[error("parameter {u} outside the evaluable domain [{lo}, {hi}]")]
    OutOfDomain { u: f64, lo: f64, hi: f64 },
    #[error("tabulated source has {got} samples, at least {need} required")]
    InsufficientSamples { got: usize, need: usize },
    #[error("inflection point at u = {u}: |<t',t'>| = {accel_sq:.3e} below tolerance")]
    InflectionPoint { u: f64, accel_sq: f64 },
    #[error("family `{family}` is not defined for the {ambient} ambient")]
    AmbientMismatch { family: String, ambient: String },
    #[error("unknown profile family `{0}`")]
    UnknownFamily(String),
    #[error("invalid family parameters: {0}")]
    InvalidParams(String),
    #[error("invalid samples: {0}")]
    InvalidSamples(String),
}

/// Scale-aware acceleration tolerance below which a point counts as an
/// inflection (excluded by the standing assumptions).
#[inline]
pub fn accel_tol(d2: V3) -> f64 {
    let n2 = d2.x1 * d2.x1 + d2.x2 * d2.x2 + d2.r * d2.r;
    1e-12 * (1.0 + n2)
}

#[derive(Debug, Clone)]
enum Source {
    Family(Family),
    Table(TabulatedCurve),
}

/// A unit-speed profile curve with jet access up to order 3.
#[derive(Debug, Clone)]
pub struct ProfileCurve {
    ambient: Ambient,
    source: Source,
    domain: (f64, f64),
}

impl ProfileCurve {
    /// Builds an analytic profile. The family must be defined for the
    /// requested ambient; analytic families are unit-speed by construction.
    pub fn from_family(
        ambient: Ambient,
        family: Family,
        domain: (f64, f64),
    ) -> Result<Self, CurveError> {
        if !(domain.0 < domain.1) || !domain.0.is_finite() || !domain.1.is_finite() {
            return Err(CurveError::InvalidParams(format!(
                "domain [{}, {}] is not a nonempty interval",
                domain.0, domain.1
            )));
        }
        family.check(ambient, domain)?;
        Ok(ProfileCurve {
            ambient,
            source: Source::Family(family),
            domain,
        })
    }

    /// Builds a tabulated profile from samples with strictly increasing
    /// parameter values. The table is reparametrized by numerically
    /// integrated arc length unless it is already unit-speed.
    pub fn from_samples(
        ambient: Ambient,
        u: Vec<f64>,
        x1: Vec<f64>,
        x2: Vec<f64>,
        r: Vec<f64>,
    ) -> Result<Self, CurveError> {
        let table = TabulatedCurve::new(ambient, u, x1, x2, r)?;
        let domain = table.domain();
        Ok(ProfileCurve {
            ambient,
            source: Source::Table(table),
            domain,
        })
    }

    #[inline]
    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    /// Parameter interval on which the curve may be evaluated.
    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    /// Name and parameters of the analytic family, if any.
    pub fn family(&self) -> Option<&Family> {
        match &self.source {
            Source::Family(f) => Some(f),
            Source::Table(_) => None,
        }
    }

    /// The backing sample table, if tabulated.
    pub fn table(&self) -> Option<&TabulatedCurve> {
        match &self.source {
            Source::Table(t) => Some(t),
            Source::Family(_) => None,
        }
    }

    /// `n >= 2` evenly spaced parameters covering the domain.
    pub fn sample_grid(&self, n: usize) -> Vec<f64> {
        let (lo, hi) = self.domain;
        let step = (hi - lo) / (n - 1).max(1) as f64;
        (0..n).map(|i| lo + i as f64 * step).collect()
    }

    fn check_domain(&self, u: f64) -> Result<(), CurveError> {
        let (lo, hi) = self.domain;
        let slack = 1e-12 * (1.0 + lo.abs().max(hi.abs()));
        if u < lo - slack || u > hi + slack || !u.is_finite() {
            return Err(CurveError::OutOfDomain { u, lo, hi });
        }
        Ok(())
    }

    /// Position and derivatives up to order 3 at `u`.
    pub fn jet(&self, u: f64) -> Result<CurveJet, CurveError> {
        self.check_domain(u)?;
        match &self.source {
            Source::Family(f) => Ok(f.jet(self.ambient, self.domain, u)),
            Source::Table(t) => t.jet(u),
        }
    }

    /// Frenet apparatus at `u`.
    pub fn frenet(&self, u: f64) -> Result<FrenetApparatus, CurveError> {
        let jet = self.jet(u)?;
        frenet_from_jet(self.ambient, &jet)
    }

    /// Signed curvature `x1' x2'' - x2' x1''` of the projection of the curve
    /// into the axis plane.
    pub fn kappa1(&self, u: f64) -> Result<f64, CurveError> {
        let jet = self.jet(u)?;
        Ok(kappa1_from_jet(&jet))
    }

    /// Scans `samples >= 2` grid points and reports the extreme values of the
    /// profile invariants. Failures are carried in the report, not raised.
    pub fn validate(&self, samples: usize) -> ValidationReport {
        let grid = self.sample_grid(samples.max(2));
        let mut report = ValidationReport {
            max_unit_speed_residual: 0.0,
            min_r: f64::INFINITY,
            min_accel: f64::INFINITY,
            finite: true,
            failures: Vec::new(),
            passed: true,
        };
        let mut accel_sign: Option<f64> = None;
        for &u in &grid {
            let jet = match self.jet(u) {
                Ok(j) => j,
                Err(e) => {
                    report.failures.push(format!("jet({u}): {e}"));
                    report.passed = false;
                    continue;
                }
            };
            if !(jet.p.is_finite() && jet.d1.is_finite() && jet.d2.is_finite()) {
                report.finite = false;
            }
            let speed_res = (self.ambient.inner3(jet.d1, jet.d1) - 1.0).abs();
            let q = self.ambient.inner3(jet.d2, jet.d2);
            report.max_unit_speed_residual = report.max_unit_speed_residual.max(speed_res);
            report.min_r = report.min_r.min(jet.p.r);
            report.min_accel = report.min_accel.min(q.abs());
            if q.abs() <= accel_tol(jet.d2) {
                report.note(format!("degenerate acceleration at u = {u}"));
            } else if let Some(prev) = accel_sign.replace(q.signum()) {
                // <t',t'> changing sign inside the domain is excluded by the
                // standing assumptions; report it rather than splitting.
                if prev != q.signum() {
                    report.note(format!("<t',t'> changes sign near u = {u}"));
                }
            }
        }
        if !report.finite {
            report.note("non-finite jet values".to_string());
        }
        if report.max_unit_speed_residual > 1e-6 {
            report.note(format!(
                "unit-speed residual {:.3e} exceeds 1e-6",
                report.max_unit_speed_residual
            ));
        }
        if !(report.min_r > 0.0) {
            report.note(format!("r <= 0 detected (min r = {})", report.min_r));
        }
        report
    }
}

/// Outcome of [`ProfileCurve::validate`].
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub max_unit_speed_residual: f64,
    pub min_r: f64,
    /// Minimum of `|<t',t'>|` over the grid.
    pub min_accel: f64,
    pub finite: bool,
    pub failures: Vec<String>,
    pub passed: bool,
}

impl ValidationReport {
    fn note(&mut self, msg: String) {
        self.failures.push(msg);
        self.passed = false;
    }
}

/// `kappa1 = x1' x2'' - x2' x1''` from a jet.
#[inline]
pub fn kappa1_from_jet(jet: &CurveJet) -> f64 {
    jet.d1.x1 * jet.d2.x2 - jet.d1.x2 * jet.d2.x1
}

/// Frenet apparatus from a jet, in the stated ambient.
pub fn frenet_from_jet(ambient: Ambient, jet: &CurveJet) -> Result<FrenetApparatus, CurveError> {
    let q = ambient.inner3(jet.d2, jet.d2);
    if q.abs() <= accel_tol(jet.d2) {
        return Err(CurveError::InflectionPoint {
            u: jet.u,
            accel_sq: q,
        });
    }
    let (epsilon, kappa) = match ambient {
        Ambient::Euclidean => (1.0, q.sqrt()),
        _ => (q.signum(), q.abs().sqrt()),
    };
    let t = jet.d1;
    let n = jet.d2.scale(1.0 / kappa);
    let cross = V3::new(
        t.x2 * n.r - t.r * n.x2,
        t.r * n.x1 - t.x1 * n.r,
        t.x1 * n.x2 - t.x2 * n.x1,
    );
    let b = match ambient {
        Ambient::Euclidean => cross,
        _ => {
            let s = ambient.signs();
            V3::new(s[0] * cross.x1, s[1] * cross.x2, s[2] * cross.r).scale(-epsilon)
        }
    };
    debug_assert!(det3(t.as_array(), n.as_array(), b.as_array()) > 0.0);
    // n' = d3/kappa - d2 * kappa'/kappa^2 with kappa' from <t',t'> = eps kappa^2.
    let kappa_prime = epsilon * ambient.inner3(jet.d3, jet.d2) / kappa;
    let n_prime = jet.d3.scale(1.0 / kappa) - jet.d2.scale(kappa_prime / (kappa * kappa));
    let tau = match ambient {
        Ambient::Euclidean => ambient.inner3(n_prime, b),
        // <b,b> = -eps, so the b-projection of n' divides by -eps.
        _ => -epsilon * ambient.inner3(n_prime, b),
    };
    Ok(FrenetApparatus {
        t,
        n,
        b,
        kappa,
        tau,
        epsilon,
    })
}

/// The standard analytic profiles exercised by the verification suites:
/// at least five per Minkowski ambient, plus the Euclidean references.
pub fn registry() -> Vec<(String, ProfileCurve)> {
    use Ambient::*;
    let two_pi = 2.0 * std::f64::consts::PI;
    let entries: Vec<(&str, Ambient, Family, (f64, f64))> = vec![
        (
            "hyp/pseudocircle",
            Hyperbolic,
            Family::MinkPseudocircle { a: 1.0 },
            (-1.2, 1.2),
        ),
        (
            "hyp/pseudocircle-a2",
            Hyperbolic,
            Family::MinkPseudocircle { a: 2.0 },
            (-1.5, 1.5),
        ),
        (
            "hyp/const-r-theta",
            Hyperbolic,
            Family::ConstantRTheta {
                radius: 1.0,
                omega: 1.0,
            },
            (-1.0, 1.0),
        ),
        (
            "hyp/const-r-theta-wide",
            Hyperbolic,
            Family::ConstantRTheta {
                radius: 2.0,
                omega: 0.7,
            },
            (-1.0, 1.0),
        ),
        (
            "hyp/poly-r",
            Hyperbolic,
            Family::PolynomialR {
                coeffs: vec![1.5, 0.0, 0.25],
            },
            (-1.0, 1.0),
        ),
        (
            "hyp/helix",
            Hyperbolic,
            Family::Helix {
                slope: 0.75,
                omega: 1.0,
                r0: 2.0,
            },
            (-1.0, 1.0),
        ),
        ("ell/catenary", Elliptic, Family::Catenary { a: 1.0 }, (-1.5, 1.5)),
        (
            "ell/catenary-a15",
            Elliptic,
            Family::Catenary { a: 1.5 },
            (-1.5, 1.5),
        ),
        (
            "ell/const-r-theta",
            Elliptic,
            Family::ConstantRTheta {
                radius: 2.0,
                omega: 1.0,
            },
            (-1.0, 1.0),
        ),
        (
            "ell/const-r-theta-slow",
            Elliptic,
            Family::ConstantRTheta {
                radius: 1.5,
                omega: 0.6,
            },
            (-1.0, 1.0),
        ),
        (
            "ell/poly-r",
            Elliptic,
            Family::PolynomialR {
                coeffs: vec![1.2, 0.0, 0.125],
            },
            (-1.5, 1.5),
        ),
        (
            "ell/helix",
            Elliptic,
            Family::Helix {
                slope: 0.5,
                omega: 1.0,
                r0: 2.0,
            },
            (-1.0, 1.0),
        ),
        (
            "euc/clifford",
            Euclidean,
            Family::EuclidCircle { radius: 1.0 },
            (0.0, two_pi),
        ),
        (
            "euc/circle-r2",
            Euclidean,
            Family::EuclidCircle { radius: 2.0 },
            (0.0, two_pi),
        ),
        ("euc/catenoid", Euclidean, Family::Catenary { a: 1.0 }, (-1.5, 1.5)),
        (
            "euc/helix",
            Euclidean,
            Family::Helix {
                slope: 0.5,
                omega: 1.0,
                r0: 2.0,
            },
            (-1.0, 1.0),
        ),
    ];
    entries
        .into_iter()
        .map(|(name, ambient, family, domain)| {
            let curve = ProfileCurve::from_family(ambient, family, domain)
                .unwrap_or_else(|e| panic!("registry profile {name}: {e}"));
            (name.to_string(), curve)
        })
        .collect()
}

#[cfg(test)]
mod tests;
