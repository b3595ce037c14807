//! Analytic profile-curve families. Each family is unit-speed by
//! construction in the ambients it supports, and its jets are closed-form.

use std::collections::BTreeMap;

use super::{Ambient, CurveError, CurveJet, V3};
use crate::numeric::adaptive_simpson;

/// Relative tolerance of the position quadrature used by planar families
/// whose `x1` has no elementary antiderivative.
const QUAD_TOL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// `(a sinh(u/a), 0, a cosh(u/a))` — hyperbolic; the orbit of this
    /// profile has constant Gauss curvature `-1/a^2`.
    MinkPseudocircle { a: f64 },
    /// `r = sqrt(u^2 + a^2)`, `x1 = a asinh(u/a)`, `x2 = 0` — elliptic or
    /// Euclidean; generates the minimal (catenoid-type) rotational surface.
    Catenary { a: f64 },
    /// `(cos u, sin u, R)` — Euclidean circle profile at constant radius.
    EuclidCircle { radius: f64 },
    /// Constant radius with angular rate `omega`: the axis-plane projection
    /// is a unit-speed circle (hyperbolic, Euclidean) or hyperbola branch
    /// (elliptic).
    ConstantRTheta { radius: f64, omega: f64 },
    /// Planar profile (`x2 = 0`) with polynomial `r(u)`; `x1` is recovered
    /// from the unit-speed relation by quadrature.
    PolynomialR { coeffs: Vec<f64> },
    /// Rotating axis-plane projection over a linear radius `r = r0 + slope u`.
    Helix { slope: f64, omega: f64, r0: f64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::MinkPseudocircle { .. } => "mink-pseudocircle",
            Family::Catenary { .. } => "catenary",
            Family::EuclidCircle { .. } => "euclid-circle",
            Family::ConstantRTheta { .. } => "constant-r-theta",
            Family::PolynomialR { .. } => "polynomial-r",
            Family::Helix { .. } => "helix",
        }
    }

    /// Parameters as a stable name -> value map (used by the profile-spec
    /// document format).
    pub fn params(&self) -> BTreeMap<String, f64> {
        let mut m = BTreeMap::new();
        match self {
            Family::MinkPseudocircle { a } | Family::Catenary { a } => {
                m.insert("a".into(), *a);
            }
            Family::EuclidCircle { radius } => {
                m.insert("R".into(), *radius);
            }
            Family::ConstantRTheta { radius, omega } => {
                m.insert("R".into(), *radius);
                m.insert("omega".into(), *omega);
            }
            Family::PolynomialR { coeffs } => {
                for (i, c) in coeffs.iter().enumerate() {
                    m.insert(format!("c{i}"), *c);
                }
            }
            Family::Helix { slope, omega, r0 } => {
                m.insert("slope".into(), *slope);
                m.insert("omega".into(), *omega);
                m.insert("r0".into(), *r0);
            }
        }
        m
    }

    /// Reconstructs a family from its name and parameter map.
    pub fn from_params(name: &str, params: &BTreeMap<String, f64>) -> Result<Self, CurveError> {
        let get = |key: &str, default: f64| params.get(key).copied().unwrap_or(default);
        match name {
            "mink-pseudocircle" => Ok(Family::MinkPseudocircle { a: get("a", 1.0) }),
            "catenary" => Ok(Family::Catenary { a: get("a", 1.0) }),
            "euclid-circle" => Ok(Family::EuclidCircle {
                radius: get("R", 1.0),
            }),
            "constant-r-theta" => Ok(Family::ConstantRTheta {
                radius: get("R", 1.0),
                omega: get("omega", 1.0),
            }),
            "polynomial-r" => {
                let mut coeffs = Vec::new();
                for i in 0.. {
                    match params.get(&format!("c{i}")) {
                        Some(c) => coeffs.push(*c),
                        None => break,
                    }
                }
                if coeffs.is_empty() {
                    return Err(CurveError::InvalidParams(
                        "polynomial-r requires coefficients c0, c1, ...".into(),
                    ));
                }
                Ok(Family::PolynomialR { coeffs })
            }
            "helix" => Ok(Family::Helix {
                slope: get("slope", 0.5),
                omega: get("omega", 1.0),
                r0: get("r0", 2.0),
            }),
            other => Err(CurveError::UnknownFamily(other.to_string())),
        }
    }

    /// Default parameter interval used when a caller does not pin one.
    pub fn default_domain(&self) -> (f64, f64) {
        match self {
            Family::MinkPseudocircle { .. } => (-1.2, 1.2),
            Family::Catenary { .. } => (-1.5, 1.5),
            Family::EuclidCircle { .. } => (0.0, 2.0 * std::f64::consts::PI),
            Family::ConstantRTheta { .. } | Family::Helix { .. } => (-1.0, 1.0),
            Family::PolynomialR { .. } => (-1.0, 1.0),
        }
    }

    /// Checks ambient compatibility and parameter sanity over `domain`.
    pub(super) fn check(&self, ambient: Ambient, domain: (f64, f64)) -> Result<(), CurveError> {
        let mismatch = || {
            Err(CurveError::AmbientMismatch {
                family: self.name().to_string(),
                ambient: ambient.name().to_string(),
            })
        };
        let positive = |v: f64, what: &str| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(CurveError::InvalidParams(format!("{what} must be positive")))
            }
        };
        match self {
            Family::MinkPseudocircle { a } => {
                if ambient != Ambient::Hyperbolic {
                    return mismatch();
                }
                positive(*a, "a")
            }
            Family::Catenary { a } => {
                if ambient == Ambient::Hyperbolic {
                    return mismatch();
                }
                positive(*a, "a")
            }
            Family::EuclidCircle { radius } => {
                if ambient != Ambient::Euclidean {
                    return mismatch();
                }
                positive(*radius, "R")
            }
            Family::ConstantRTheta { radius, omega } => {
                positive(*radius, "R")?;
                positive(omega.abs(), "omega")
            }
            Family::PolynomialR { coeffs } => {
                if coeffs.iter().any(|c| !c.is_finite()) {
                    return Err(CurveError::InvalidParams("non-finite coefficient".into()));
                }
                // The unit-speed relation needs |r'| < 1 away from the
                // hyperbolic ambient; scan the domain for violations.
                if ambient != Ambient::Hyperbolic {
                    for i in 0..=64 {
                        let u = domain.0 + (domain.1 - domain.0) * i as f64 / 64.0;
                        let d = poly_eval(coeffs, u)[1];
                        if d.abs() >= 1.0 - 1e-9 {
                            return Err(CurveError::InvalidParams(format!(
                                "|r'({u})| = {} >= 1 makes the planar profile non-spacelike",
                                d.abs()
                            )));
                        }
                    }
                }
                Ok(())
            }
            Family::Helix { slope, omega, r0 } => {
                positive(omega.abs(), "omega")?;
                positive(*r0, "r0")?;
                if ambient != Ambient::Hyperbolic && slope.abs() >= 1.0 - 1e-9 {
                    return Err(CurveError::InvalidParams(
                        "|slope| must be < 1 outside the hyperbolic ambient".into(),
                    ));
                }
                if *slope == 0.0 {
                    return Err(CurveError::InvalidParams(
                        "slope 0 degenerates to constant-r-theta".into(),
                    ));
                }
                Ok(())
            }
        }
    }

    /// Closed-form jet at `u`. `domain.0` anchors quadrature-based positions.
    pub(super) fn jet(&self, ambient: Ambient, domain: (f64, f64), u: f64) -> CurveJet {
        match self {
            Family::MinkPseudocircle { a } => {
                let (s, c) = ((u / a).sinh(), (u / a).cosh());
                CurveJet {
                    u,
                    p: V3::new(a * s, 0.0, a * c),
                    d1: V3::new(c, 0.0, s),
                    d2: V3::new(s / a, 0.0, c / a),
                    d3: V3::new(c / (a * a), 0.0, s / (a * a)),
                }
            }
            Family::Catenary { a } => {
                let r = (u * u + a * a).sqrt();
                let (r3, r5) = (r * r * r, r * r * r * r * r);
                CurveJet {
                    u,
                    p: V3::new(a * (u / a).asinh(), 0.0, r),
                    d1: V3::new(a / r, 0.0, u / r),
                    d2: V3::new(-a * u / r3, 0.0, a * a / r3),
                    d3: V3::new(a * (2.0 * u * u - a * a) / r5, 0.0, -3.0 * a * a * u / r5),
                }
            }
            Family::EuclidCircle { radius } => CurveJet {
                u,
                p: V3::new(u.cos(), u.sin(), *radius),
                d1: V3::new(-u.sin(), u.cos(), 0.0),
                d2: V3::new(-u.cos(), -u.sin(), 0.0),
                d3: V3::new(u.sin(), -u.cos(), 0.0),
            },
            Family::ConstantRTheta { radius, omega } => {
                let w = *omega;
                let t = w * u;
                match ambient {
                    Ambient::Elliptic => CurveJet {
                        u,
                        p: V3::new(t.sinh() / w, t.cosh() / w, *radius),
                        d1: V3::new(t.cosh(), t.sinh(), 0.0),
                        d2: V3::new(w * t.sinh(), w * t.cosh(), 0.0),
                        d3: V3::new(w * w * t.cosh(), w * w * t.sinh(), 0.0),
                    },
                    _ => CurveJet {
                        u,
                        p: V3::new(t.sin() / w, (1.0 - t.cos()) / w, *radius),
                        d1: V3::new(t.cos(), t.sin(), 0.0),
                        d2: V3::new(-w * t.sin(), w * t.cos(), 0.0),
                        d3: V3::new(-w * w * t.cos(), -w * w * t.sin(), 0.0),
                    },
                }
            }
            Family::PolynomialR { coeffs } => {
                let [r, r1, r2, r3] = poly_eval(coeffs, u);
                let (x1d, x1dd, x1ddd) = planar_x1_derivatives(ambient, r1, r2, r3);
                let x1 = planar_x1_position(ambient, coeffs, domain.0, u);
                CurveJet {
                    u,
                    p: V3::new(x1, 0.0, r),
                    d1: V3::new(x1d, 0.0, r1),
                    d2: V3::new(x1dd, 0.0, r2),
                    d3: V3::new(x1ddd, 0.0, r3),
                }
            }
            Family::Helix { slope, omega, r0 } => {
                let w = *omega;
                let t = w * u;
                let amp = match ambient {
                    Ambient::Hyperbolic => (1.0 + slope * slope).sqrt(),
                    _ => (1.0 - slope * slope).sqrt(),
                };
                match ambient {
                    Ambient::Elliptic => CurveJet {
                        u,
                        p: V3::new(
                            amp * t.sinh() / w,
                            amp * (t.cosh() - 1.0) / w,
                            r0 + slope * u,
                        ),
                        d1: V3::new(amp * t.cosh(), amp * t.sinh(), *slope),
                        d2: V3::new(amp * w * t.sinh(), amp * w * t.cosh(), 0.0),
                        d3: V3::new(amp * w * w * t.cosh(), amp * w * w * t.sinh(), 0.0),
                    },
                    _ => CurveJet {
                        u,
                        p: V3::new(
                            amp * t.sin() / w,
                            amp * (1.0 - t.cos()) / w,
                            r0 + slope * u,
                        ),
                        d1: V3::new(amp * t.cos(), amp * t.sin(), *slope),
                        d2: V3::new(-amp * w * t.sin(), amp * w * t.cos(), 0.0),
                        d3: V3::new(-amp * w * w * t.cos(), -amp * w * w * t.sin(), 0.0),
                    },
                }
            }
        }
    }
}

/// `r` and its first three derivatives for a polynomial coefficient list.
fn poly_eval(coeffs: &[f64], u: f64) -> [f64; 4] {
    let mut out = [0.0; 4];
    for &c in coeffs.iter().rev() {
        out[3] = out[3] * u + 3.0 * out[2];
        out[2] = out[2] * u + 2.0 * out[1];
        out[1] = out[1] * u + out[0];
        out[0] = out[0] * u + c;
    }
    out
}

/// Derivatives of `x1` for a planar profile from the unit-speed relation:
/// hyperbolic `x1' = sqrt(1 + r'^2)`, otherwise `x1' = sqrt(1 - r'^2)`.
fn planar_x1_derivatives(ambient: Ambient, r1: f64, r2: f64, r3: f64) -> (f64, f64, f64) {
    match ambient {
        Ambient::Hyperbolic => {
            let p = (1.0 + r1 * r1).sqrt();
            let p1 = r1 * r2 / p;
            let p2 = (r2 * r2 + r1 * r3) / p - (r1 * r2) * p1 / (p * p);
            (p, p1, p2)
        }
        _ => {
            let m = (1.0 - r1 * r1).sqrt();
            let m1 = -r1 * r2 / m;
            let m2 = -(r2 * r2 + r1 * r3) / m + (r1 * r2) * m1 / (m * m);
            (m, m1, m2)
        }
    }
}

fn planar_x1_position(ambient: Ambient, coeffs: &[f64], anchor: f64, u: f64) -> f64 {
    let integrand = |s: f64| {
        let d = poly_eval(coeffs, s)[1];
        match ambient {
            Ambient::Hyperbolic => (1.0 + d * d).sqrt(),
            _ => (1.0 - d * d).sqrt(),
        }
    };
    adaptive_simpson(&integrand, anchor, u, QUAD_TOL)
}
