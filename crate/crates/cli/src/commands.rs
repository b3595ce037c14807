//! The five subcommands.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use minksurf_core::construct::{
    construct_chen_profile, construct_constant_k_profile, construct_minimal_profile,
    ConstantGauss, ConstructionReport, RSpec,
};
use minksurf_core::curve::profile_to_json;
use minksurf_core::rotational::{
    chen_classify, closed_form_invariants, hyperplane_witness, ChenClassification,
    ChenVerdict, HyperplaneWitness, RotationalSurface,
};
use minksurf_core::surface::{analyze_point, SurfacePatch, Tolerances};
use minksurf_core::Vec4;

use crate::config::{
    ensure_out_dir, parse_ambient, parse_pair, u_grid, v_grid, CliError, ConfigEcho, SurfaceArgs,
};
use crate::output::{fmt_f64, to_json_pretty, write_text, Csv};
use crate::verify::{run_checks, Fault};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
}

#[derive(Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
}

#[derive(Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    /// Projection to 3-space: `drop:N` (drop coordinate N) or `stereo`.
    /// Defaults: `drop:2` hyperbolic, `drop:4` elliptic/euclidean.
    #[arg(long)]
    pub project: Option<String>,
}

#[derive(Args)]
pub struct ConstructArgs {
    /// Construction target: chen, constant-k or minimal.
    #[arg(long)]
    pub target: String,
    /// Ambient type: hyperbolic, elliptic or euclidean.
    #[arg(long)]
    pub ambient: String,
    /// Radius specification: const:R, cosh:a, poly:c0,c1,..., sqrtquad.
    #[arg(long = "r")]
    pub rspec: Option<String>,
    /// Target invariant value for constant-k (must be negative).
    #[arg(long, allow_negative_numbers = true)]
    pub k0: Option<f64>,
    /// Initial radius for the minimal target.
    #[arg(long)]
    pub r0: Option<f64>,
    /// Initial radius slope for the minimal target.
    #[arg(long, allow_negative_numbers = true)]
    pub r0p: Option<f64>,
    /// Parameter interval `lo,hi` (default `0,2`).
    #[arg(long, value_name = "LO,HI", allow_hyphen_values = true)]
    pub domain: Option<String>,
    /// Integrator step.
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
    /// Sign of theta' (+1 or -1).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub branch: f64,
    /// Seed the root tracker with the larger admissible root.
    #[arg(long)]
    pub seed_large_root: bool,
    /// Output directory (defaults to the working directory).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Run only checks whose suite name contains this string.
    #[arg(long)]
    pub suite: Option<String>,
    /// Fault-injection hook for self-testing: `l-sign-flip` or
    /// `tau-offset:<value>`.
    #[arg(long, hide = true)]
    pub inject_fault: Option<String>,
    /// Also write the report as verify.json into this directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Aggregates {
    points: usize,
    k_min: f64,
    k_max: f64,
    gauss_min: f64,
    gauss_max: f64,
    lambda_abs_min: Option<f64>,
    lambda_abs_max: Option<f64>,
    lambda_defined_points: usize,
    h_norm2_min: f64,
    h_norm2_max: f64,
    point_classes: BTreeMap<String, usize>,
}

#[derive(Serialize)]
struct ClassificationOut {
    verdict: &'static str,
    residual_kappa1: f64,
    residual_case_i: f64,
    residual_case_iii: f64,
    tol: f64,
    grid: usize,
    /// Maximum |lambda| of the closed-form route over the grid, when defined.
    lambda_abs_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hyperplane: Option<HyperplaneOut>,
}

#[derive(Serialize)]
struct HyperplaneOut {
    normal: Vec4,
    max_deviation: f64,
    max_normal_drift: f64,
    max_normal_derivative: f64,
}

#[derive(Serialize)]
struct Summary {
    tool_version: &'static str,
    table: &'static str,
    aggregates: Aggregates,
    #[serde(skip_serializing_if = "Option::is_none")]
    classification: Option<ClassificationOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classification_error: Option<String>,
    config: ConfigEcho,
}

fn classification_out(
    surface: &RotationalSurface,
    grid: usize,
    tol: Option<f64>,
) -> (Option<ClassificationOut>, Option<String>) {
    let profile = surface.profile();
    let classification: ChenClassification = match chen_classify(profile, grid.max(16), tol) {
        Ok(c) => c,
        Err(e) => return (None, Some(e.to_string())),
    };
    let mut lambda_abs_max: Option<f64> = None;
    for &u in &profile.sample_grid(grid.max(16)) {
        if let Ok(cf) = closed_form_invariants(profile, u) {
            if let Some(l) = cf.lambda {
                let cur = lambda_abs_max.unwrap_or(0.0);
                lambda_abs_max = Some(cur.max(l.abs()));
            }
        }
    }
    let hyperplane = if classification.verdict == ChenVerdict::HyperplanarTrivialChen
        || classification.verdict == ChenVerdict::MinimalTrivialChen
    {
        hyperplane_witness(surface, 16).ok().map(|w: HyperplaneWitness| HyperplaneOut {
            normal: w.normal,
            max_deviation: w.max_deviation,
            max_normal_drift: w.max_normal_drift,
            max_normal_derivative: w.max_normal_derivative,
        })
    } else {
        None
    };
    (
        Some(ClassificationOut {
            verdict: classification.verdict.name(),
            residual_kappa1: classification.residual_kappa1,
            residual_case_i: classification.residual_case_i,
            residual_case_iii: classification.residual_case_iii,
            tol: classification.tol,
            grid: classification.grid,
            lambda_abs_max,
            hyperplane,
        }),
        None,
    )
}

pub fn analyze(args: &AnalyzeArgs) -> Result<(), CliError> {
    let resolved = args.surface.resolve((32, 32))?;
    let surface = &resolved.surface;
    let tols = Tolerances {
        point_class: resolved.tol,
    };
    let mut csv = Csv::new(&[
        "u",
        "v",
        "E",
        "F",
        "G",
        "L",
        "M",
        "N",
        "k",
        "varkappa",
        "K",
        "Hn1",
        "Hn2",
        "H_norm2",
        "lambda",
        "point_class",
    ]);
    let mut agg = Aggregates {
        points: 0,
        k_min: f64::INFINITY,
        k_max: f64::NEG_INFINITY,
        gauss_min: f64::INFINITY,
        gauss_max: f64::NEG_INFINITY,
        lambda_abs_min: None,
        lambda_abs_max: None,
        lambda_defined_points: 0,
        h_norm2_min: f64::INFINITY,
        h_norm2_max: f64::NEG_INFINITY,
        point_classes: BTreeMap::new(),
    };
    for &u in &u_grid(&resolved.echo) {
        for &v in &v_grid(&resolved.echo) {
            let set = analyze_point(surface, u, v, &tols)?;
            agg.points += 1;
            agg.k_min = agg.k_min.min(set.k);
            agg.k_max = agg.k_max.max(set.k);
            agg.gauss_min = agg.gauss_min.min(set.gauss);
            agg.gauss_max = agg.gauss_max.max(set.gauss);
            agg.h_norm2_min = agg.h_norm2_min.min(set.h_norm2);
            agg.h_norm2_max = agg.h_norm2_max.max(set.h_norm2);
            if let Some(l) = set.lambda {
                let (lo, hi) = (
                    agg.lambda_abs_min.unwrap_or(f64::INFINITY),
                    agg.lambda_abs_max.unwrap_or(0.0),
                );
                agg.lambda_abs_min = Some(lo.min(l.abs()));
                agg.lambda_abs_max = Some(hi.max(l.abs()));
                agg.lambda_defined_points += 1;
            }
            *agg.point_classes
                .entry(set.point_class.name().to_string())
                .or_insert(0) += 1;
            csv.row(&[
                fmt_f64(u),
                fmt_f64(v),
                fmt_f64(set.first.e),
                fmt_f64(set.first.f),
                fmt_f64(set.first.g),
                fmt_f64(set.second.l),
                fmt_f64(set.second.m),
                fmt_f64(set.second.n),
                fmt_f64(set.k),
                fmt_f64(set.varkappa),
                fmt_f64(set.gauss),
                fmt_f64(set.h_n1),
                fmt_f64(set.h_n2),
                fmt_f64(set.h_norm2),
                fmt_f64(set.lambda.unwrap_or(f64::NAN)),
                set.point_class.name().to_string(),
            ]);
        }
    }
    let (classification, classification_error) =
        classification_out(surface, resolved.grid.0, resolved.tol);
    let summary = Summary {
        tool_version: VERSION,
        table: "invariants.csv",
        aggregates: agg,
        classification,
        classification_error,
        config: resolved.echo,
    };
    ensure_out_dir(&resolved.out)?;
    write_text(&resolved.out.join("invariants.csv"), &csv.finish())?;
    write_text(&resolved.out.join("summary.json"), &to_json_pretty(&summary))?;
    println!(
        "analyze: {} points -> {}",
        summary.aggregates.points,
        resolved.out.display()
    );
    Ok(())
}

pub fn classify(args: &ClassifyArgs) -> Result<(), CliError> {
    let resolved = args.surface.resolve((64, 16))?;
    // Propagate classification failures (mixed regime) as geometric errors.
    chen_classify(resolved.surface.profile(), resolved.grid.0.max(16), resolved.tol)?;
    let (out, _) = classification_out(&resolved.surface, resolved.grid.0, resolved.tol);
    let out = out.expect("classification succeeded above");
    let text = to_json_pretty(&out);
    print!("{text}");
    if args.surface.out.is_some() {
        ensure_out_dir(&resolved.out)?;
        write_text(&resolved.out.join("classification.json"), &text)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ConstructionOut {
    tool_version: &'static str,
    target: String,
    branch: f64,
    step: f64,
    domain_requested: [f64; 2],
    segment_count: usize,
    segment_domains: Vec<[f64; 2]>,
    residual_condition: f64,
    residual_unit_speed: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    k_std: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta_prime_range: Option<(f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    constant_gauss: Option<ConstantGauss>,
    failures: Vec<String>,
    profile: &'static str,
}

pub fn construct(args: &ConstructArgs) -> Result<(), CliError> {
    let ambient = parse_ambient(&args.ambient)?;
    let domain = match &args.domain {
        Some(text) => parse_pair(text, "--domain")?,
        None => (0.0, 2.0),
    };
    let need_rspec = || -> Result<RSpec, CliError> {
        let text = args.rspec.as_deref().ok_or_else(|| {
            CliError::Config("this target requires --r <rspec>".to_string())
        })?;
        Ok(RSpec::parse(text)?)
    };
    let report: ConstructionReport = match args.target.as_str() {
        "chen" => construct_chen_profile(
            ambient,
            &need_rspec()?,
            domain,
            args.step,
            args.branch,
            args.seed_large_root,
        )?,
        "constant-k" => {
            let k0 = args
                .k0
                .ok_or_else(|| CliError::Config("constant-k requires --k0".to_string()))?;
            construct_constant_k_profile(ambient, &need_rspec()?, k0, domain, args.step, args.branch)?
        }
        "minimal" => {
            let r0 = args
                .r0
                .ok_or_else(|| CliError::Config("minimal requires --r0".to_string()))?;
            construct_minimal_profile(ambient, r0, args.r0p.unwrap_or(0.0), domain, args.step)?
        }
        other => {
            return Err(CliError::Config(format!(
                "target must be chen, constant-k or minimal, got `{other}`"
            )))
        }
    };
    let out_dir = args.out.clone().unwrap_or_else(|| PathBuf::from("."));
    ensure_out_dir(&out_dir)?;
    write_text(&out_dir.join("profile.json"), &profile_to_json(&report.profile))?;
    let out = ConstructionOut {
        tool_version: VERSION,
        target: args.target.clone(),
        branch: report.branch,
        step: args.step,
        domain_requested: [domain.0, domain.1],
        segment_count: report.segments.len(),
        segment_domains: report
            .segments
            .iter()
            .map(|s| {
                let (lo, hi) = s.domain();
                [lo, hi]
            })
            .collect(),
        residual_condition: report.residual_condition,
        residual_unit_speed: report.residual_unit_speed,
        k_std: report.k_std,
        theta_prime_range: report.theta_prime_range,
        constant_gauss: report.constant_gauss,
        failures: report.failures.clone(),
        profile: "profile.json",
    };
    let text = to_json_pretty(&out);
    print!("{text}");
    write_text(&out_dir.join("construction.json"), &text)?;
    Ok(())
}

enum Projection {
    Drop(usize),
    Stereo,
}

fn parse_projection(text: &str) -> Result<Projection, CliError> {
    if text == "stereo" {
        return Ok(Projection::Stereo);
    }
    if let Some(rest) = text.strip_prefix("drop:") {
        if let Ok(i) = rest.parse::<usize>() {
            if (1..=4).contains(&i) {
                return Ok(Projection::Drop(i));
            }
        }
    }
    Err(CliError::Config(format!(
        "projection must be `drop:N` (N in 1..=4) or `stereo`, got `{text}`"
    )))
}

fn project_point(z: Vec4, projection: &Projection) -> Result<[f64; 3], CliError> {
    match projection {
        Projection::Drop(i) => {
            let mut out = [0.0; 3];
            let mut at = 0;
            for c in 0..4 {
                if c + 1 != *i {
                    out[at] = z[c];
                    at += 1;
                }
            }
            Ok(out)
        }
        Projection::Stereo => {
            let denom = 1.0 - z[3];
            if denom.abs() < 1e-9 {
                return Err(CliError::Geometric(format!(
                    "stereographic projection is singular at x4 = {}",
                    z[3]
                )));
            }
            Ok([z[0] / denom, z[1] / denom, z[2] / denom])
        }
    }
}

pub fn export(args: &ExportArgs) -> Result<(), CliError> {
    let resolved = args.surface.resolve((32, 32))?;
    let projection = match &args.project {
        Some(text) => parse_projection(text)?,
        None => match resolved.echo.ambient.as_str() {
            "hyperbolic" => Projection::Drop(2),
            _ => Projection::Drop(4),
        },
    };
    let surface = &resolved.surface;
    let tols = Tolerances {
        point_class: resolved.tol,
    };
    let us = u_grid(&resolved.echo);
    let vs = v_grid(&resolved.echo);
    let (nu, nv) = (us.len(), vs.len());

    let mut obj = String::from("o surface\n");
    let mut sidecar = Csv::new(&["u", "v", "k", "K", "point_class"]);
    for &u in &us {
        for &v in &vs {
            let jet = surface.eval(u, v)?;
            let p = project_point(jet.z, &projection)?;
            obj.push_str(&format!(
                "v {} {} {}\n",
                fmt_f64(p[0]),
                fmt_f64(p[1]),
                fmt_f64(p[2])
            ));
            let set = analyze_point(surface, u, v, &tols)?;
            sidecar.row(&[
                fmt_f64(u),
                fmt_f64(v),
                fmt_f64(set.k),
                fmt_f64(set.gauss),
                set.point_class.name().to_string(),
            ]);
        }
    }
    for iu in 0..nu - 1 {
        for iv in 0..nv - 1 {
            let a = iu * nv + iv + 1;
            let b = (iu + 1) * nv + iv + 1;
            let c = (iu + 1) * nv + iv + 2;
            let d = iu * nv + iv + 2;
            obj.push_str(&format!("f {a} {b} {c}\n"));
            obj.push_str(&format!("f {a} {c} {d}\n"));
        }
    }
    ensure_out_dir(&resolved.out)?;
    write_text(&resolved.out.join("mesh.obj"), &obj)?;
    write_text(&resolved.out.join("mesh_attrs.csv"), &sidecar.finish())?;
    println!(
        "export: {} vertices, {} triangles -> {}",
        nu * nv,
        (nu - 1) * (nv - 1) * 2,
        resolved.out.display()
    );
    Ok(())
}

pub fn verify(args: &VerifyArgs) -> Result<(), CliError> {
    let fault = match &args.inject_fault {
        None => None,
        Some(text) => Some(Fault::parse(text)?),
    };
    let rows = run_checks(args.suite.as_deref(), fault);
    let mut all_pass = true;
    for row in &rows {
        all_pass &= row.pass;
        println!(
            "[{}] {}/{} max residual {} (tol {})",
            if row.pass { "PASS" } else { "FAIL" },
            row.suite,
            row.name,
            fmt_f64(row.residual),
            fmt_f64(row.threshold)
        );
    }
    if let Some(dir) = &args.out {
        ensure_out_dir(dir)?;
        write_text(&dir.join("verify.json"), &to_json_pretty(&rows))?;
    }
    if rows.is_empty() {
        return Err(CliError::Config(format!(
            "no checks match suite filter `{}`",
            args.suite.as_deref().unwrap_or("")
        )));
    }
    if all_pass {
        Ok(())
    } else {
        Err(CliError::CheckFailed("verification checks failed".into()))
    }
}
