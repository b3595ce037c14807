//! Shared configuration: resolving a rotational surface from CLI flags and
//! mapping library errors onto exit-code categories.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::Args;
use serde::Serialize;

use minksurf_core::construct::ConstructError;
use minksurf_core::curve::{profile_from_json, Ambient, CurveError, Family, ProfileCurve};
use minksurf_core::rotational::{RotationalError, RotationalSurface};
use minksurf_core::surface::SurfaceError;

#[derive(Debug)]
pub enum CliError {
    /// Invalid configuration or input document (exit 2).
    Config(String),
    /// Geometric precondition failure; the message names the failed
    /// invariant (exit 3).
    Geometric(String),
    /// The construction's admissible set is empty (exit 4).
    EmptyAdmissibleSet(String),
    Io(String),
    /// Verification checks failed (exit 1).
    CheckFailed(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "invalid config: {m}"),
            CliError::Geometric(m) => write!(f, "geometric precondition failed: {m}"),
            CliError::EmptyAdmissibleSet(m) => write!(f, "empty admissible set: {m}"),
            CliError::Io(m) => write!(f, "i/o failure: {m}"),
            CliError::CheckFailed(m) => write!(f, "{m}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<CurveError> for CliError {
    fn from(e: CurveError) -> Self {
        match e {
            CurveError::OutOfDomain { .. } | CurveError::InflectionPoint { .. } => {
                CliError::Geometric(e.to_string())
            }
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<SurfaceError> for CliError {
    fn from(e: SurfaceError) -> Self {
        match e {
            SurfaceError::Curve(c) => c.into(),
            other => CliError::Geometric(other.to_string()),
        }
    }
}

impl From<RotationalError> for CliError {
    fn from(e: RotationalError) -> Self {
        match e {
            RotationalError::Curve(c) => c.into(),
            RotationalError::Surface(s) => s.into(),
            RotationalError::GridTooSmall { .. } => CliError::Config(e.to_string()),
            other => CliError::Geometric(other.to_string()),
        }
    }
}

impl From<ConstructError> for CliError {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::BadRSpec(_) | ConstructError::InvalidConfig(_) => {
                CliError::Config(e.to_string())
            }
            ConstructError::NoAdmissibleRoot { .. } => CliError::EmptyAdmissibleSet(e.to_string()),
            ConstructError::DegenerateAcceleration { .. } => CliError::Geometric(e.to_string()),
            ConstructError::Curve(c) => c.into(),
        }
    }
}

/// Flags describing the surface under analysis, shared by `analyze`,
/// `classify` and `export`.
#[derive(Debug, Clone, Args)]
pub struct SurfaceArgs {
    /// Ambient type: hyperbolic, elliptic or euclidean.
    #[arg(long)]
    pub ambient: Option<String>,
    /// Path to a profile-spec JSON document.
    #[arg(long, conflicts_with = "family")]
    pub profile: Option<PathBuf>,
    /// Analytic family name: mink-pseudocircle, catenary, euclid-circle,
    /// constant-r-theta, polynomial-r, helix.
    #[arg(long)]
    pub family: Option<String>,
    /// Family parameter `a` (mink-pseudocircle, catenary).
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Family parameter `R` (euclid-circle, constant-r-theta).
    #[arg(long = "R")]
    pub radius: Option<f64>,
    /// Family parameter `omega` (constant-r-theta, helix).
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    /// Family parameter `slope` (helix).
    #[arg(long, allow_negative_numbers = true)]
    pub slope: Option<f64>,
    /// Family parameter `r0` (helix).
    #[arg(long)]
    pub r0: Option<f64>,
    /// Polynomial coefficients `c0,c1,...` (polynomial-r).
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    /// Profile parameter range `lo,hi` (defaults to the family or document
    /// domain).
    #[arg(long, value_name = "LO,HI", allow_hyphen_values = true)]
    pub u_range: Option<String>,
    /// Orbit parameter range `lo,hi` (defaults: [0, 2pi) elliptic/euclidean,
    /// [-3, 3] hyperbolic).
    #[arg(long, value_name = "LO,HI", allow_hyphen_values = true)]
    pub v_range: Option<String>,
    /// Evaluation grid, e.g. `32x32`.
    #[arg(long, value_name = "NUxNV")]
    pub grid: Option<String>,
    /// Tolerance override for classification decisions.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Output directory (defaults to the working directory).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Echo of the resolved configuration, embedded in JSON outputs.
#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub ambient: String,
    pub source: String,
    pub params: BTreeMap<String, f64>,
    pub u_range: [f64; 2],
    pub v_range: [f64; 2],
    pub grid: [usize; 2],
    pub tol: Option<f64>,
}

pub struct ResolvedSurface {
    pub surface: RotationalSurface,
    pub grid: (usize, usize),
    pub tol: Option<f64>,
    pub out: PathBuf,
    pub echo: ConfigEcho,
}

pub fn parse_pair(text: &str, what: &str) -> Result<(f64, f64), CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() == 2 {
        if let (Ok(lo), Ok(hi)) = (parts[0].trim().parse(), parts[1].trim().parse()) {
            return Ok((lo, hi));
        }
    }
    Err(CliError::Config(format!(
        "{what} must be `lo,hi`, got `{text}`"
    )))
}

pub fn parse_grid(text: &str) -> Result<(usize, usize), CliError> {
    let parts: Vec<&str> = text.split('x').collect();
    if parts.len() == 2 {
        if let (Ok(nu), Ok(nv)) = (parts[0].parse::<usize>(), parts[1].parse::<usize>()) {
            if nu >= 2 && nv >= 2 {
                return Ok((nu, nv));
            }
            return Err(CliError::Config(format!(
                "grid must be at least 2x2, got {nu}x{nv}"
            )));
        }
    }
    Err(CliError::Config(format!("grid must be `NUxNV`, got `{text}`")))
}

pub fn parse_ambient(text: &str) -> Result<Ambient, CliError> {
    match text {
        "hyperbolic" => Ok(Ambient::Hyperbolic),
        "elliptic" => Ok(Ambient::Elliptic),
        "euclidean" => Ok(Ambient::Euclidean),
        other => Err(CliError::Config(format!(
            "ambient must be hyperbolic, elliptic or euclidean, got `{other}`"
        ))),
    }
}

impl SurfaceArgs {
    fn family_params(&self) -> Result<BTreeMap<String, f64>, CliError> {
        let mut params = BTreeMap::new();
        if let Some(a) = self.a {
            params.insert("a".to_string(), a);
        }
        if let Some(r) = self.radius {
            params.insert("R".to_string(), r);
        }
        if let Some(w) = self.omega {
            params.insert("omega".to_string(), w);
        }
        if let Some(s) = self.slope {
            params.insert("slope".to_string(), s);
        }
        if let Some(r0) = self.r0 {
            params.insert("r0".to_string(), r0);
        }
        if let Some(coeffs) = &self.coeffs {
            for (i, part) in coeffs.split(',').enumerate() {
                let c: f64 = part.trim().parse().map_err(|_| {
                    CliError::Config(format!("bad coefficient `{part}` in --coeffs"))
                })?;
                params.insert(format!("c{i}"), c);
            }
        }
        Ok(params)
    }

    fn build_profile(&self) -> Result<(ProfileCurve, String, BTreeMap<String, f64>), CliError> {
        if let Some(path) = &self.profile {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
            let curve = profile_from_json(&text)?;
            if let Some(ambient) = &self.ambient {
                if parse_ambient(ambient)? != curve.ambient() {
                    return Err(CliError::Config(format!(
                        "--ambient {ambient} contradicts the profile document ({})",
                        curve.ambient().name()
                    )));
                }
            }
            let params = curve.family().map(|f| f.params()).unwrap_or_default();
            return Ok((curve, path.display().to_string(), params));
        }
        let family_name = self.family.as_deref().ok_or_else(|| {
            CliError::Config("either --profile <path> or --family <name> is required".into())
        })?;
        let ambient = parse_ambient(self.ambient.as_deref().ok_or_else(|| {
            CliError::Config("--ambient is required with --family".into())
        })?)?;
        let params = self.family_params()?;
        let family = Family::from_params(family_name, &params)?;
        let domain = match &self.u_range {
            Some(text) => parse_pair(text, "--u-range")?,
            None => family.default_domain(),
        };
        let full_params = family.params();
        let curve = ProfileCurve::from_family(ambient, family, domain)?;
        Ok((curve, family_name.to_string(), full_params))
    }

    pub fn resolve(&self, default_grid: (usize, usize)) -> Result<ResolvedSurface, CliError> {
        let (curve, source, params) = self.build_profile()?;
        let (dlo, dhi) = curve.domain();
        let u_range = match &self.u_range {
            Some(text) => {
                let (lo, hi) = parse_pair(text, "--u-range")?;
                if lo < dlo - 1e-12 || hi > dhi + 1e-12 || !(lo < hi) {
                    return Err(CliError::Config(format!(
                        "--u-range [{lo}, {hi}] must lie within the profile domain [{dlo}, {dhi}]"
                    )));
                }
                (lo, hi)
            }
            None => (dlo, dhi),
        };
        let ambient = curve.ambient();
        let v_range = match &self.v_range {
            Some(text) => parse_pair(text, "--v-range")?,
            None => match ambient {
                Ambient::Hyperbolic => (-3.0, 3.0),
                _ => (0.0, 2.0 * std::f64::consts::PI),
            },
        };
        if !(v_range.0 < v_range.1) {
            return Err(CliError::Config(format!(
                "--v-range [{}, {}] is empty",
                v_range.0, v_range.1
            )));
        }
        let grid = match &self.grid {
            Some(text) => parse_grid(text)?,
            None => default_grid,
        };
        let surface = RotationalSurface::with_v_range(curve, v_range);
        let echo = ConfigEcho {
            ambient: ambient.name().to_string(),
            source,
            params,
            u_range: [u_range.0, u_range.1],
            v_range: [v_range.0, v_range.1],
            grid: [grid.0, grid.1],
            tol: self.tol,
        };
        Ok(ResolvedSurface {
            surface,
            grid,
            tol: self.tol,
            out: self.out.clone().unwrap_or_else(|| PathBuf::from(".")),
            echo,
        })
    }
}

/// The `u` grid over the echoed range (inclusive ends).
pub fn u_grid(echo: &ConfigEcho) -> Vec<f64> {
    let [lo, hi] = echo.u_range;
    let n = echo.grid[0];
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// The `v` grid: inclusive for hyperbolic ranges, half-open (no seam
/// duplicate) for the full elliptic/Euclidean orbit.
pub fn v_grid(echo: &ConfigEcho) -> Vec<f64> {
    let [lo, hi] = echo.v_range;
    let n = echo.grid[1];
    let closed_orbit = echo.ambient != "hyperbolic"
        && (hi - lo - 2.0 * std::f64::consts::PI).abs() < 1e-9;
    if closed_orbit {
        (0..n)
            .map(|j| lo + (hi - lo) * j as f64 / n as f64)
            .collect()
    } else {
        (0..n)
            .map(|j| lo + (hi - lo) * j as f64 / (n - 1) as f64)
            .collect()
    }
}

pub fn ensure_out_dir(path: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(path)?;
    Ok(())
}
