//! Command-line front end: scenario configuration (file + flag overrides),
//! the pattern / fig1 / verify / visibility / doubleslit subcommands, and
//! deterministic CSV/JSON emission.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numeric failure,
//! 4 verification failure.

use crate::asymptotics::{delta_kernel, gamma_kernel, KernelParams};
use crate::error::{Error, Result};
use crate::observables::{
    central_area_window, central_areas, dcs_exact, dcs_shortwave, flux_zeros, observation_grid,
    optical_residual, sigma_classical, visibility_scattering, DoubleSlitSetup,
};
use crate::partial_wave::{channel_coefficients, exact_fc, fc_decomposition};
use crate::specfun::{cos_pi, sin_pi};
use crate::vortex_model::{FluxProfile, VortexSpec};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Exact-sum engine guard: beyond this the closed short-wavelength forms are
/// used (the partial-wave sum would need tens of thousands of channels).
pub const EXACT_ENGINE_MAX_KRC: f64 = 5000.0;

#[derive(Parser, Debug)]
#[command(
    name = "vortexab",
    version,
    about = "Scattering of charged particles on a finite-radius magnetic vortex"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Differential cross-section pattern (CSV) with a JSON summary
    Pattern(ScenarioArgs),
    /// Normalized central-fringe curves and their areas
    Fig1(Fig1Args),
    /// Run the invariant verification suite, machine-readable report
    Verify(ScenarioArgs),
    /// Fringe visibility as a function of flux, with located zeros
    Visibility(VisibilityArgs),
    /// Reference double-slit interference fringes
    Doubleslit(DoubleslitArgs),
}

#[derive(Args, Debug, Default, Clone)]
pub struct ScenarioArgs {
    /// Configuration file (flat key = value lines); flags override file keys
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Named parameter preset (`paper-sec5`: lambda = 0.1 nm, d = 1 um)
    #[arg(long)]
    pub preset: Option<String>,
    /// Wavenumber (1/length; exclusive with --lambda)
    #[arg(long)]
    pub k: Option<f64>,
    /// Wavelength (length; exclusive with --k)
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Vortex radius (exclusive with --d)
    #[arg(long)]
    pub r_c: Option<f64>,
    /// Vortex diameter d = 2 r_c (exclusive with --r-c)
    #[arg(long)]
    pub d: Option<f64>,
    /// Flux in flux-quantum units (alias of --phi-over-phi0)
    #[arg(long)]
    pub mu: Option<f64>,
    /// Flux in flux-quantum units
    #[arg(long)]
    pub phi_over_phi0: Option<f64>,
    /// Boundary: dirichlet | neumann | robin:RHO | penetrable:uniform |
    /// penetrable:file=PATH
    #[arg(long)]
    pub boundary: Option<String>,
    /// Number of angular grid points
    #[arg(long)]
    pub grid_n: Option<usize>,
    /// Half-width of the angular grid (radians, < pi)
    #[arg(long)]
    pub grid_range: Option<f64>,
    /// Partial-wave tail tolerance
    #[arg(long)]
    pub tol: Option<f64>,
    /// Engine: auto | exact | shortwave
    #[arg(long)]
    pub engine: Option<String>,
    /// CSV output path
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// JSON summary output path
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Fig1Args {
    /// Flux values (repeatable); defaults to 1, the first visibility zero,
    /// and 1/2
    #[arg(long = "flux")]
    pub fluxes: Vec<f64>,
    /// Diameter-to-wavelength ratio (100 ..= 1e6)
    #[arg(long, default_value_t = 1e3)]
    pub d_over_lambda: f64,
    /// Samples across the central window
    #[arg(long, default_value_t = 401)]
    pub points: usize,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VisibilityArgs {
    /// Lower end of the flux sweep
    #[arg(long, default_value_t = 0.0)]
    pub min: f64,
    /// Upper end of the flux sweep
    #[arg(long, default_value_t = 1.0)]
    pub max: f64,
    /// Number of sweep samples
    #[arg(long, default_value_t = 201)]
    pub steps: usize,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DoubleslitArgs {
    /// Distance from the slits to the detection screen
    #[arg(long)]
    pub screen_distance: f64,
    /// Slit separation
    #[arg(long)]
    pub slit_separation: f64,
    #[arg(long)]
    pub lambda: f64,
    /// Flux in flux-quantum units
    #[arg(long, default_value_t = 0.0)]
    pub flux: f64,
    /// Gaussian envelope width (defaults to twice the fringe period)
    #[arg(long)]
    pub envelope_width: Option<f64>,
    /// Screen half-extent (defaults to three fringe periods)
    #[arg(long)]
    pub ymax: Option<f64>,
    #[arg(long, default_value_t = 601)]
    pub points: usize,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

/// Fully resolved scenario with every default materialized.
#[derive(Debug, Clone, Serialize)]
pub struct ResolvedConfig {
    pub k: f64,
    pub lambda: f64,
    pub r_c: f64,
    pub d: f64,
    pub mu: f64,
    pub boundary: String,
    pub grid_n: usize,
    pub grid_range: f64,
    pub tol: f64,
    pub engine: String,
}

impl ResolvedConfig {
    fn canonical_string(&self) -> String {
        format!(
            "k={:.17e};r_c={:.17e};mu={:.17e};boundary={};grid_n={};grid_range={:.17e};tol={:.17e};engine={}",
            self.k, self.r_c, self.mu, self.boundary, self.grid_n, self.grid_range, self.tol,
            self.engine
        )
    }

    pub fn config_hash(&self) -> String {
        format!("{:016x}", fnv1a64(self.canonical_string().as_bytes()))
    }

    pub fn vortex(&self) -> Result<VortexSpec> {
        parse_boundary(&self.boundary, self.r_c, self.mu)
    }

    pub fn grid(&self) -> Vec<f64> {
        let n = self.grid_n.max(2);
        (0..n)
            .map(|i| -self.grid_range + 2.0 * self.grid_range * i as f64 / (n - 1) as f64)
            .collect()
    }
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

fn parse_boundary(text: &str, r_c: f64, mu: f64) -> Result<VortexSpec> {
    match text {
        "dirichlet" => VortexSpec::dirichlet(r_c, mu),
        "neumann" => VortexSpec::neumann(r_c, mu),
        _ if text.starts_with("robin:") => {
            let rho: f64 = text["robin:".len()..]
                .parse()
                .map_err(|_| Error::Config(format!("bad Robin parameter in `{text}`")))?;
            VortexSpec::robin(r_c, mu, rho)
        }
        "penetrable:uniform" => VortexSpec::penetrable_uniform(r_c, mu),
        _ if text.starts_with("penetrable:file=") => {
            let path = &text["penetrable:file=".len()..];
            let profile = FluxProfile::from_file(Path::new(path))?;
            VortexSpec::new(
                r_c,
                mu,
                crate::vortex_model::CoreModel::Penetrable(profile),
            )
        }
        _ => Err(Error::Config(format!(
            "unknown boundary `{text}` (expected dirichlet, neumann, robin:<rho>, penetrable:uniform, penetrable:file=PATH)"
        ))),
    }
}

impl ScenarioArgs {
    /// Layer file keys under the flag values and materialize all defaults.
    pub fn resolve(&self) -> Result<ResolvedConfig> {
        let mut merged = self.clone();
        if let Some(preset) = &self.preset {
            match preset.as_str() {
                "paper-sec5" => {
                    // electrons of ~0.1 nm wavelength on a ~1 um vortex
                    if merged.lambda.is_none() && merged.k.is_none() {
                        merged.lambda = Some(1e-10);
                    }
                    if merged.d.is_none() && merged.r_c.is_none() {
                        merged.d = Some(1e-6);
                    }
                    if merged.mu.is_none() && merged.phi_over_phi0.is_none() {
                        merged.mu = Some(1.0);
                    }
                }
                other => {
                    return Err(Error::Config(format!("unknown preset `{other}`")));
                }
            }
        }
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let Some((key, value)) = line.split_once('=') else {
                    return Err(Error::Config(format!(
                        "{}:{}: expected key = value",
                        path.display(),
                        lineno + 1
                    )));
                };
                merged.set_from_file(key.trim(), value.trim()).map_err(|e| {
                    Error::Config(format!("{}:{}: {e}", path.display(), lineno + 1))
                })?;
            }
        }
        merged.materialize()
    }

    /// Apply one file key unless a flag already pinned it.
    fn set_from_file(&mut self, key: &str, value: &str) -> Result<()> {
        fn num(value: &str) -> Result<f64> {
            value
                .parse()
                .map_err(|_| Error::Config(format!("bad number `{value}`")))
        }
        match key {
            "k" => {
                if self.k.is_none() && self.lambda.is_none() {
                    self.k = Some(num(value)?);
                }
            }
            "lambda" => {
                if self.k.is_none() && self.lambda.is_none() {
                    self.lambda = Some(num(value)?);
                }
            }
            "r_c" => {
                if self.r_c.is_none() && self.d.is_none() {
                    self.r_c = Some(num(value)?);
                }
            }
            "d" => {
                if self.r_c.is_none() && self.d.is_none() {
                    self.d = Some(num(value)?);
                }
            }
            "mu" | "phi_over_phi0" => {
                if self.mu.is_none() && self.phi_over_phi0.is_none() {
                    self.mu = Some(num(value)?);
                }
            }
            "boundary" => {
                if self.boundary.is_none() {
                    self.boundary = Some(value.to_string());
                }
            }
            "grid_n" => {
                if self.grid_n.is_none() {
                    self.grid_n = Some(
                        value
                            .parse()
                            .map_err(|_| Error::Config(format!("bad integer `{value}`")))?,
                    );
                }
            }
            "grid_range" => {
                if self.grid_range.is_none() {
                    self.grid_range = Some(num(value)?);
                }
            }
            "tol" => {
                if self.tol.is_none() {
                    self.tol = Some(num(value)?);
                }
            }
            "engine" => {
                if self.engine.is_none() {
                    self.engine = Some(value.to_string());
                }
            }
            "csv_path" => {
                if self.csv.is_none() {
                    self.csv = Some(PathBuf::from(value));
                }
            }
            "json_path" => {
                if self.json.is_none() {
                    self.json = Some(PathBuf::from(value));
                }
            }
            other => {
                return Err(Error::Config(format!("unknown configuration key `{other}`")));
            }
        }
        Ok(())
    }

    fn materialize(&self) -> Result<ResolvedConfig> {
        let k = match (self.k, self.lambda) {
            (Some(_), Some(_)) => {
                return Err(Error::Config("give exactly one of k and lambda".into()))
            }
            (Some(k), None) => k,
            (None, Some(lambda)) => 2.0 * std::f64::consts::PI / lambda,
            (None, None) => {
                return Err(Error::Config("one of k or lambda is required".into()))
            }
        };
        let r_c = match (self.r_c, self.d) {
            (Some(_), Some(_)) => {
                return Err(Error::Config("give exactly one of r_c and d".into()))
            }
            (Some(r), None) => r,
            (None, Some(d)) => 0.5 * d,
            (None, None) => return Err(Error::Config("one of r_c or d is required".into())),
        };
        if !(k > 0.0 && r_c > 0.0) {
            return Err(Error::Config("k and r_c must be positive".into()));
        }
        let mu = match (self.mu, self.phi_over_phi0) {
            (Some(_), Some(_)) => {
                return Err(Error::Config(
                    "give exactly one of mu and phi_over_phi0".into(),
                ))
            }
            (Some(m), None) => m,
            (None, Some(m)) => m,
            (None, None) => 0.0,
        };
        let grid_range = self.grid_range.unwrap_or(3.1);
        if !(grid_range > 0.0 && grid_range < std::f64::consts::PI) {
            return Err(Error::Config(
                "grid_range must lie strictly inside (0, pi)".into(),
            ));
        }
        let tol = self.tol.unwrap_or(1e-9);
        if !(tol > 0.0) {
            return Err(Error::Config("tol must be positive".into()));
        }
        let engine = self.engine.clone().unwrap_or_else(|| "auto".into());
        if !matches!(engine.as_str(), "auto" | "exact" | "shortwave") {
            return Err(Error::Config(format!(
                "unknown engine `{engine}` (auto | exact | shortwave)"
            )));
        }
        let boundary = self.boundary.clone().unwrap_or_else(|| "dirichlet".into());
        let resolved = ResolvedConfig {
            k,
            lambda: 2.0 * std::f64::consts::PI / k,
            r_c,
            d: 2.0 * r_c,
            mu,
            boundary,
            grid_n: self.grid_n.unwrap_or(2001),
            grid_range,
            tol,
            engine,
        };
        resolved.vortex()?;
        Ok(resolved)
    }
}

// ---------------------------------------------------------------------------
// output plumbing
// ---------------------------------------------------------------------------

fn fmt_full(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_csv(
    path: Option<&Path>,
    meta: &[(String, String)],
    header: &str,
    rows: &[String],
) -> Result<()> {
    let mut out = String::new();
    let _ = writeln!(out, "# vortexab {}", env!("CARGO_PKG_VERSION"));
    for (key, value) in meta {
        let _ = writeln!(out, "# {key} = {value}");
    }
    let _ = writeln!(out, "{header}");
    for row in rows {
        let _ = writeln!(out, "{row}");
    }
    match path {
        Some(p) => std::fs::write(p, out)?,
        None => print!("{out}"),
    }
    Ok(())
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Config(format!("json serialization failed: {e}")))?;
    match path {
        Some(p) => std::fs::write(p, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// pattern
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct PatternSummary {
    pub config: ResolvedConfig,
    pub results: PatternResults,
    pub residuals: PatternResiduals,
    pub timing: Timing,
}

#[derive(Debug, Serialize)]
pub struct PatternResults {
    pub engine: String,
    pub sigma_total: f64,
    pub period_delta: f64,
    pub forward_dcs: f64,
    pub sigma_classical: f64,
    pub config_hash: String,
}

#[derive(Debug, Serialize)]
pub struct PatternResiduals {
    pub truncation_tail: Option<f64>,
    pub optical_theorem: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub seconds: f64,
}

pub fn cmd_pattern(args: &ScenarioArgs) -> Result<PatternSummary> {
    let start = Instant::now();
    let cfg = args.resolve()?;
    let spec = cfg.vortex()?;
    let kr_c = cfg.k * cfg.r_c;
    let engine = match cfg.engine.as_str() {
        "auto" => {
            if kr_c <= EXACT_ENGINE_MAX_KRC {
                "exact"
            } else {
                "shortwave"
            }
        }
        other => other,
    };
    if engine == "exact" && kr_c > EXACT_ENGINE_MAX_KRC {
        return Err(Error::Config(format!(
            "exact engine is guarded to k r_c <= {EXACT_ENGINE_MAX_KRC} (got {kr_c:.3e}); use engine=shortwave"
        )));
    }
    if engine == "shortwave" && spec.is_penetrable() && kr_c > EXACT_ENGINE_MAX_KRC {
        return Err(Error::Config(format!(
            "the classical part of a penetrable core has no closed form and needs the exact channel sum, which is guarded to k r_c <= {EXACT_ENGINE_MAX_KRC} (got {kr_c:.3e})"
        )));
    }
    let grid = cfg.grid();
    let (profile, tail, optical) = match engine {
        "exact" => {
            let prof = dcs_exact(cfg.k, &grid, &spec, cfg.tol)?;
            // optical-theorem residual on a dedicated spectral grid
            let n_est = (kr_c + 10.0 * kr_c.cbrt() + 24.0).ceil() as usize;
            let ogrid = observation_grid(4 * n_est + 65);
            let amp = exact_fc(cfg.k, &ogrid, &spec, cfg.tol * cfg.r_c.sqrt())?;
            let optical = if spec.is_flux_free_penetrable() {
                None
            } else {
                Some(optical_residual(&amp, cfg.mu, cfg.r_c)?)
            };
            (prof, Some(amp.tail_estimate), optical)
        }
        _ => (dcs_shortwave(cfg.k, &grid, &spec)?, None, None),
    };
    let forward = forward_value(cfg.k, &spec, engine)?;
    let sigma_cl = sigma_classical(&spec, cfg.k)?;

    let meta = vec![
        ("config_hash".to_string(), cfg.config_hash()),
        ("engine".to_string(), engine.to_string()),
        ("k".to_string(), fmt_full(cfg.k)),
        ("r_c".to_string(), fmt_full(cfg.r_c)),
        ("mu".to_string(), fmt_full(cfg.mu)),
        ("boundary".to_string(), cfg.boundary.clone()),
    ];
    let rows: Vec<String> = (0..grid.len())
        .map(|i| {
            format!(
                "{},{},{},{}",
                fmt_full(profile.grid[i]),
                fmt_full(profile.dcs_total[i]),
                fmt_full(profile.dcs_diffraction[i]),
                fmt_full(profile.dcs_classical[i])
            )
        })
        .collect();
    write_csv(
        args.csv.as_deref(),
        &meta,
        "phi_rad,dcs_total,dcs_diffraction,dcs_classical",
        &rows,
    )?;

    let summary = PatternSummary {
        results: PatternResults {
            engine: engine.to_string(),
            sigma_total: profile.sigma_total,
            period_delta: profile.period_delta,
            forward_dcs: forward,
            sigma_classical: sigma_cl,
            config_hash: cfg.config_hash(),
        },
        residuals: PatternResiduals {
            truncation_tail: tail,
            optical_theorem: optical,
        },
        timing: Timing {
            seconds: start.elapsed().as_secs_f64(),
        },
        config: cfg,
    };
    write_json(args.json.as_deref(), &summary)?;
    Ok(summary)
}

/// Strictly forward differential cross section.
fn forward_value(k: f64, spec: &VortexSpec, engine: &str) -> Result<f64> {
    match engine {
        "exact" => {
            let prof = exact_fc(k, &[0.0], spec, 1e-9 * spec.r_c.sqrt())?;
            Ok(prof.f[0].norm_sqr())
        }
        _ => {
            let d = 2.0 * spec.r_c;
            let lambda = 2.0 * std::f64::consts::PI / k;
            let c = cos_pi(spec.mu);
            Ok(d * d / lambda * c * c)
        }
    }
}

// ---------------------------------------------------------------------------
// fig1
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct Fig1Summary {
    pub config: Fig1Config,
    pub results: Fig1Results,
    pub timing: Timing,
}

#[derive(Debug, Serialize)]
pub struct Fig1Config {
    pub fluxes: Vec<f64>,
    pub d_over_lambda: f64,
    pub points: usize,
}

#[derive(Debug, Serialize)]
pub struct Fig1Results {
    /// Central-window areas (x in [-1, 1]) per flux.
    pub areas: Vec<f64>,
    /// Single-peak area (x in [-1/2, 1/2]) per flux.
    pub single_peak_areas: Vec<f64>,
}

pub fn cmd_fig1(args: &Fig1Args) -> Result<Fig1Summary> {
    let start = Instant::now();
    if !(100.0..=1e6).contains(&args.d_over_lambda) {
        return Err(Error::Config(format!(
            "d_over_lambda must lie in [1e2, 1e6], got {}",
            args.d_over_lambda
        )));
    }
    if args.points < 3 {
        return Err(Error::Config("need at least 3 sample points".into()));
    }
    let fluxes = if args.fluxes.is_empty() {
        let (_, minus) = flux_zeros(1);
        vec![1.0, minus, 0.5]
    } else {
        args.fluxes.clone()
    };
    let delta = 2.0 / args.d_over_lambda;
    let x0 = std::f64::consts::PI * args.d_over_lambda / 2.0;
    let xs: Vec<f64> = (0..args.points)
        .map(|i| -1.0 + 2.0 * i as f64 / (args.points - 1) as f64)
        .collect();
    let mut curves: Vec<Vec<f64>> = Vec::new();
    let mut areas = Vec::new();
    let mut single = Vec::new();
    for &flux in &fluxes {
        let curve: Vec<f64> = xs
            .iter()
            .map(|&x| {
                let c = cos_pi(x + flux);
                delta * crate::asymptotics::fraunhofer_kernel(x0, delta * x) * c * c
            })
            .collect();
        curves.push(curve);
        areas.push(central_areas(flux, args.d_over_lambda)?);
        single.push(central_area_window(flux, args.d_over_lambda, 0.5)?);
    }

    let mut meta = vec![(
        "d_over_lambda".to_string(),
        fmt_full(args.d_over_lambda),
    )];
    for (i, &flux) in fluxes.iter().enumerate() {
        meta.push((format!("flux_{i}"), fmt_full(flux)));
        meta.push((format!("area_{i}"), fmt_full(areas[i])));
        meta.push((format!("single_peak_area_{i}"), fmt_full(single[i])));
    }
    let header = {
        let mut h = String::from("phi_over_delta");
        for i in 0..fluxes.len() {
            let _ = write!(h, ",y_flux_{i}");
        }
        h
    };
    let rows: Vec<String> = xs
        .iter()
        .enumerate()
        .map(|(j, &x)| {
            let mut row = fmt_full(x);
            for curve in &curves {
                row.push(',');
                row.push_str(&fmt_full(curve[j]));
            }
            row
        })
        .collect();
    write_csv(args.csv.as_deref(), &meta, &header, &rows)?;

    let summary = Fig1Summary {
        config: Fig1Config {
            fluxes,
            d_over_lambda: args.d_over_lambda,
            points: args.points,
        },
        results: Fig1Results {
            areas,
            single_peak_areas: single,
        },
        timing: Timing {
            seconds: start.elapsed().as_secs_f64(),
        },
    };
    write_json(args.json.as_deref(), &summary)?;
    Ok(summary)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub config: ResolvedConfig,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
    pub timing: Timing,
}

#[derive(Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub residual: f64,
    pub tolerance: f64,
}

fn check(name: &str, residual: f64, tolerance: f64) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        pass: residual < tolerance,
        residual,
        tolerance,
    }
}

pub fn cmd_verify(args: &ScenarioArgs) -> Result<VerifyReport> {
    let start = Instant::now();
    let cfg = args.resolve()?;
    let spec = cfg.vortex()?;
    let kr_c = cfg.k * cfg.r_c;
    if kr_c > EXACT_ENGINE_MAX_KRC {
        return Err(Error::Config(format!(
            "verification uses the exact engine; k r_c = {kr_c:.3e} exceeds the {EXACT_ENGINE_MAX_KRC} guard"
        )));
    }
    let mut checks = Vec::new();

    // channel unitarity |1 - 2 upsilon| = 1 and the penetrable identity
    let set = channel_coefficients(cfg.k, &spec, cfg.tol * cfg.r_c.sqrt())?;
    let mut unitarity_worst = 0.0f64;
    let mut identity_worst = 0.0f64;
    let mut tilde_worst = 0.0f64;
    for c in &set.channels {
        let s = (Complex64::new(1.0, 0.0) - 2.0 * c.upsilon).norm();
        unitarity_worst = unitarity_worst.max((s - 1.0).abs());
        if let Some(tilde) = c.upsilon_tilde {
            identity_worst = identity_worst
                .max((c.upsilon - (Complex64::new(1.0, 0.0) + tilde) * 0.5).norm());
            tilde_worst = tilde_worst.max((tilde.norm() - 1.0).abs());
        }
    }
    checks.push(check("partial_wave_unitarity", unitarity_worst, 1e-10));
    if spec.is_penetrable() {
        checks.push(check("upsilon_tilde_identity", identity_worst, 1e-12));
        checks.push(check("upsilon_tilde_modulus", tilde_worst, 1e-10));
    }

    // optical theorem on a spectral grid: the quadrature of |f_c|^2 must match
    // the channel norm (Parseval) always, and the forward-amplitude form is an
    // exact identity whenever sin(mu pi) vanishes
    let n_est = (kr_c + 10.0 * kr_c.cbrt() + 24.0).ceil() as usize;
    let ogrid = observation_grid(4 * n_est + 65);
    if !spec.is_flux_free_penetrable() {
        let amp = exact_fc(cfg.k, &ogrid, &spec, cfg.tol * cfg.r_c.sqrt())?;
        let vals: Vec<f64> = amp.f.iter().map(|v| v.norm_sqr()).collect();
        let quad = crate::quad::periodic_midpoint_sum(&vals);
        let channel_norm = 4.0 / cfg.k * set.upsilon_norm_sq();
        let parseval = (quad - channel_norm).abs() / channel_norm.max(1e-300);
        checks.push(check("optical_theorem_parseval", parseval, 1e-10));
        if sin_pi(cfg.mu) == 0.0 {
            let res = optical_residual(&amp, cfg.mu, cfg.r_c)?;
            checks.push(check("optical_theorem_exact", res, 1e-8));
        }
    }

    // peak part against the closed kernel form (penetrable decomposition)
    if spec.is_penetrable() && !spec.is_flux_free_penetrable() {
        let grid: Vec<f64> = (0..33).map(|i| -3.0 + 6.0 * i as f64 / 32.0).collect();
        let prof = fc_decomposition(cfg.k, &grid, &spec, cfg.tol * cfg.r_c.sqrt())?;
        let closed = crate::asymptotics::fpeak_closed(cfg.k, &grid, cfg.mu, kr_c)?;
        let parts = prof.parts.as_ref().unwrap();
        let mut peak_worst = 0.0f64;
        let mut sum_worst = 0.0f64;
        for i in 0..grid.len() {
            let scale = prof.f[i].norm().max(cfg.r_c.sqrt());
            peak_worst = peak_worst.max((parts.peak[i] - closed.f[i]).norm() / scale);
            let total = parts.peak[i] + parts.classical[i] + parts.residual[i];
            sum_worst = sum_worst.max((total - prof.f[i]).norm() / scale);
        }
        checks.push(check("peak_equals_closed_form", peak_worst, 1e-12));
        checks.push(check("parts_sum_to_total", sum_worst, 1e-12));
    }

    // flux periodicity of the cross section (impenetrable cores)
    if !spec.is_penetrable() {
        let grid: Vec<f64> = (0..17).map(|i| -2.9 + 5.8 * i as f64 / 16.0).collect();
        let base = exact_fc(cfg.k, &grid, &spec, cfg.tol * cfg.r_c.sqrt())?;
        let shifted_spec = VortexSpec::new(cfg.r_c, cfg.mu + 1.0, spec.core.clone())?;
        let shifted = exact_fc(cfg.k, &grid, &shifted_spec, cfg.tol * cfg.r_c.sqrt())?;
        let mut worst = 0.0f64;
        for i in 0..grid.len() {
            let scale = base.f[i].norm_sqr().max(cfg.r_c * 1e-6);
            worst = worst.max((base.f[i].norm_sqr() - shifted.f[i].norm_sqr()).abs() / scale);
        }
        checks.push(check("flux_periodicity", worst, 1e-10));
    }

    // kernel closed forms against direct channel sums
    {
        let mut state = 0x0123456789abcdefu64;
        let mut rng = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let mut worst = 0.0f64;
        for _ in 0..200 {
            let x = 0.5 + 40.0 * rng();
            let mu = 4.0 * rng() - 2.0;
            let phi = (2.0 * rng() - 1.0) * 3.0;
            let params = KernelParams::new(x, mu).unwrap();
            let closed = delta_kernel(&params, phi);
            let mut acc = crate::sum::KahanComplex::new();
            let lo = (mu - x).ceil() as i64;
            let hi = (mu + x).floor() as i64;
            for n in lo..=hi {
                acc.add(Complex64::from_polar(1.0, n as f64 * phi));
            }
            let direct = acc.value() / (2.0 * std::f64::consts::PI);
            worst = worst.max((closed - direct).norm() / direct.norm().max(1.0));
            let gamma_closed = gamma_kernel(&params, phi);
            let mut acc = crate::sum::KahanComplex::new();
            for n in lo..=hi {
                let s = (n as f64 - mu).signum();
                if n as f64 != mu {
                    acc.add(Complex64::from_polar(1.0, n as f64 * phi) * s);
                }
            }
            let direct = acc.value() / Complex64::new(0.0, 2.0 * std::f64::consts::PI);
            worst = worst.max((gamma_closed - direct).norm() / direct.norm().max(1.0));
        }
        checks.push(check("kernel_closed_vs_direct", worst, 1e-12));
    }

    let passed = checks.iter().all(|c| c.pass);
    let report = VerifyReport {
        config: cfg,
        checks,
        passed,
        timing: Timing {
            seconds: start.elapsed().as_secs_f64(),
        },
    };
    write_json(args.json.as_deref(), &report)?;
    Ok(report)
}

// ---------------------------------------------------------------------------
// visibility
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct VisibilitySummary {
    pub config: VisibilityConfig,
    pub results: VisibilityResults,
    pub timing: Timing,
}

#[derive(Debug, Serialize)]
pub struct VisibilityConfig {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

#[derive(Debug, Serialize)]
pub struct VisibilityResults {
    /// Zeros located numerically from the sweep.
    pub located_zeros: Vec<f64>,
    /// Closed-form zeros in the sweep range.
    pub closed_form_zeros: Vec<f64>,
    /// Largest |located - closed| pairing distance.
    pub max_zero_deviation: f64,
}

pub fn cmd_visibility(args: &VisibilityArgs) -> Result<VisibilitySummary> {
    let start = Instant::now();
    if !(args.max > args.min) || args.steps < 2 {
        return Err(Error::Config("need max > min and at least 2 steps".into()));
    }
    let sweep: Vec<(f64, f64)> = (0..args.steps)
        .map(|i| {
            let flux =
                args.min + (args.max - args.min) * i as f64 / (args.steps - 1) as f64;
            (flux, visibility_scattering(flux).v)
        })
        .collect();

    // locate zeros of g(flux) = (1 - q) + (1 + q) cos(2 pi flux) by bisection
    let q = 4.0 / (std::f64::consts::PI * std::f64::consts::PI);
    let g = |flux: f64| (1.0 - q) + (1.0 + q) * cos_pi(2.0 * flux);
    let mut located = Vec::new();
    for w in sweep.windows(2) {
        let (a, b) = (w[0].0, w[1].0);
        if g(a) == 0.0 {
            located.push(a);
            continue;
        }
        if g(a) * g(b) < 0.0 {
            let (mut lo, mut hi) = (a, b);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if g(lo) * g(mid) <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            located.push(0.5 * (lo + hi));
        }
    }
    let mut closed = Vec::new();
    let n_lo = args.min.floor() as i64 - 1;
    let n_hi = args.max.ceil() as i64 + 1;
    for n in n_lo..=n_hi {
        let (plus, minus) = flux_zeros(n);
        for z in [plus, minus] {
            if z >= args.min && z <= args.max {
                closed.push(z);
            }
        }
    }
    closed.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let max_dev = located
        .iter()
        .map(|z| {
            closed
                .iter()
                .map(|c| (z - c).abs())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0f64, f64::max);

    let meta = vec![
        ("min".to_string(), fmt_full(args.min)),
        ("max".to_string(), fmt_full(args.max)),
    ];
    let rows: Vec<String> = sweep
        .iter()
        .map(|(flux, v)| format!("{},{}", fmt_full(*flux), fmt_full(*v)))
        .collect();
    write_csv(args.csv.as_deref(), &meta, "phi_over_phi0,visibility", &rows)?;

    let summary = VisibilitySummary {
        config: VisibilityConfig {
            min: args.min,
            max: args.max,
            steps: args.steps,
        },
        results: VisibilityResults {
            located_zeros: located,
            closed_form_zeros: closed,
            max_zero_deviation: max_dev,
        },
        timing: Timing {
            seconds: start.elapsed().as_secs_f64(),
        },
    };
    write_json(args.json.as_deref(), &summary)?;
    Ok(summary)
}

// ---------------------------------------------------------------------------
// doubleslit
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct DoubleslitSummary {
    pub config: DoubleslitConfig,
    pub results: DoubleslitResults,
    pub timing: Timing,
}

#[derive(Debug, Serialize)]
pub struct DoubleslitConfig {
    pub screen_distance: f64,
    pub slit_separation: f64,
    pub lambda: f64,
    pub flux: f64,
    pub envelope_width: f64,
}

#[derive(Debug, Serialize)]
pub struct DoubleslitResults {
    pub period: f64,
    pub angular_period: f64,
    pub visibility: f64,
    pub warnings: Vec<String>,
}

pub fn cmd_doubleslit(args: &DoubleslitArgs) -> Result<DoubleslitSummary> {
    let start = Instant::now();
    let mut setup = DoubleSlitSetup::new(
        args.screen_distance,
        args.slit_separation,
        args.lambda,
        args.flux,
    )?;
    if let Some(w) = args.envelope_width {
        if !(w > 0.0) {
            return Err(Error::Config("envelope width must be positive".into()));
        }
        setup.envelope_width = w;
    }
    let warnings = setup.geometry_warnings();
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let ymax = args.ymax.unwrap_or(3.0 * setup.period());
    let n = args.points.max(3);
    let rows: Vec<String> = (0..n)
        .map(|i| {
            let y = -ymax + 2.0 * ymax * i as f64 / (n - 1) as f64;
            format!("{},{}", fmt_full(y), fmt_full(setup.intensity(y)))
        })
        .collect();
    let meta = vec![
        ("period".to_string(), fmt_full(setup.period())),
        (
            "angular_period".to_string(),
            fmt_full(setup.angular_period()),
        ),
        ("visibility".to_string(), fmt_full(setup.visibility())),
    ];
    write_csv(args.csv.as_deref(), &meta, "y,intensity", &rows)?;
    let summary = DoubleslitSummary {
        config: DoubleslitConfig {
            screen_distance: setup.screen_distance,
            slit_separation: setup.slit_separation,
            lambda: setup.wavelength,
            flux: setup.flux,
            envelope_width: setup.envelope_width,
        },
        results: DoubleslitResults {
            period: setup.period(),
            angular_period: setup.angular_period(),
            visibility: setup.visibility(),
            warnings,
        },
        timing: Timing {
            seconds: start.elapsed().as_secs_f64(),
        },
    };
    write_json(args.json.as_deref(), &summary)?;
    Ok(summary)
}

// ---------------------------------------------------------------------------
// driver
// ---------------------------------------------------------------------------

/// Run a parsed command line, mapping errors to process exit codes.
pub fn run(cli: Cli) -> i32 {
    let outcome: Result<i32> = match &cli.command {
        Command::Pattern(args) => cmd_pattern(args).map(|_| 0),
        Command::Fig1(args) => cmd_fig1(args).map(|_| 0),
        Command::Verify(args) => cmd_verify(args).map(|r| if r.passed { 0 } else { 4 }),
        Command::Visibility(args) => cmd_visibility(args).map(|_| 0),
        Command::Doubleslit(args) => cmd_doubleslit(args).map(|_| 0),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_) | Error::Io(_) => 2,
                _ => 3,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_args() -> ScenarioArgs {
        ScenarioArgs {
            k: Some(20.0),
            r_c: Some(1.0),
            mu: Some(0.5),
            ..Default::default()
        }
    }

    #[test]
    fn config_resolution_rules() {
        let cfg = base_args().resolve().unwrap();
        assert_eq!(cfg.k, 20.0);
        assert_eq!(cfg.d, 2.0);
        assert_eq!(cfg.boundary, "dirichlet");
        // both of an exclusive pair is an error
        let mut bad = base_args();
        bad.lambda = Some(0.1);
        assert!(bad.resolve().is_err());
        // lambda converts to k
        let mut by_lambda = base_args();
        by_lambda.k = None;
        by_lambda.lambda = Some(0.5);
        let cfg = by_lambda.resolve().unwrap();
        assert!((cfg.k - 4.0 * std::f64::consts::PI).abs() < 1e-12);
        // unknown boundary rejected
        let mut bad = base_args();
        bad.boundary = Some("magic".into());
        assert!(bad.resolve().is_err());
    }

    #[test]
    fn preset_paper_sec5() {
        let mut args = ScenarioArgs::default();
        args.preset = Some("paper-sec5".into());
        let cfg = args.resolve().unwrap();
        assert!((cfg.lambda - 1e-10).abs() < 1e-22);
        assert!((cfg.d - 1e-6).abs() < 1e-18);
        assert_eq!(cfg.mu, 1.0);
        // predicted forward value d^2/lambda at full flux
        let spec = cfg.vortex().unwrap();
        let fwd = forward_value(cfg.k, &spec, "shortwave").unwrap();
        assert!((fwd - 1e-2).abs() < 1e-9, "forward {fwd}");
        // fringe period 2 lambda / d = 2e-4 rad
        let delta = 2.0 * cfg.lambda / cfg.d;
        assert!((delta - 2e-4).abs() < 1e-12);
    }

    #[test]
    fn config_file_layering() {
        let dir = std::env::temp_dir().join("vortexab_cli_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("scenario.cfg");
        std::fs::write(&path, "k = 10.0\nr_c = 2.0\nmu = 0.25\nboundary = neumann\n# comment\ntol = 1e-8\n").unwrap();
        let mut args = ScenarioArgs::default();
        args.config = Some(path.clone());
        let cfg = args.resolve().unwrap();
        assert_eq!(cfg.k, 10.0);
        assert_eq!(cfg.boundary, "neumann");
        assert_eq!(cfg.tol, 1e-8);
        // flags override file keys
        let mut args = ScenarioArgs::default();
        args.config = Some(path);
        args.mu = Some(0.75);
        args.boundary = Some("dirichlet".into());
        let cfg = args.resolve().unwrap();
        assert_eq!(cfg.mu, 0.75);
        assert_eq!(cfg.boundary, "dirichlet");
    }

    #[test]
    fn config_hash_is_stable_and_sensitive() {
        let a = base_args().resolve().unwrap();
        let b = base_args().resolve().unwrap();
        assert_eq!(a.config_hash(), b.config_hash());
        let mut changed = base_args();
        changed.mu = Some(0.51);
        assert_ne!(
            a.config_hash(),
            changed.resolve().unwrap().config_hash()
        );
    }

    #[test]
    fn verify_passes_on_default_dirichlet() {
        let report = cmd_verify(&base_args()).unwrap();
        assert!(report.passed, "{:?}", report.checks);
        // and with a penetrable core
        let mut args = base_args();
        args.k = Some(8.0);
        args.boundary = Some("penetrable:uniform".into());
        let report = cmd_verify(&args).unwrap();
        assert!(report.passed, "{:?}", report.checks);
    }
}
