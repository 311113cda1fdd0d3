//! Physical observables: differential and total cross sections with the
//! diffraction/classical decomposition, the optical-theorem residual, fringe
//! visibility with its flux zeros, normalized central-peak areas, and the
//! reference double-slit interference model.

use crate::asymptotics::{fpeak_closed, fraunhofer_kernel, SHORTWAVE_GATE};
use crate::error::{Error, Result};
use crate::partial_wave::{exact_fc, fc_decomposition, AmplitudeProfile};
use crate::quad::{integrate_adaptive, periodic_midpoint_nodes, periodic_midpoint_sum};
use crate::specfun::{cos_pi, sin_pi};
use crate::vortex_model::VortexSpec;

/// Differential cross section decomposed into forward-diffraction and
/// classical parts (per unit length along the vortex axis, dimension length).
#[derive(Debug, Clone)]
pub struct CrossSectionProfile {
    pub grid: Vec<f64>,
    pub dcs_total: Vec<f64>,
    pub dcs_diffraction: Vec<f64>,
    pub dcs_classical: Vec<f64>,
    pub sigma_total: f64,
    /// Angular fringe period 2 lambda / d.
    pub period_delta: f64,
    pub source: CrossSectionSource,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossSectionSource {
    Exact,
    Shortwave,
}

fn fringe_period(k: f64, r_c: f64) -> f64 {
    // delta = 2 lambda / d with lambda = 2 pi / k and d = 2 r_c
    2.0 * std::f64::consts::PI / (k * r_c)
}

/// Short-wavelength differential cross section: the flux-gated Fraunhofer term
/// 2d Delta_{kr_c/2}(phi) cos^2(kr_c phi/2 + mu pi) plus the classical part
/// ((d/4)|sin(phi/2)| for impenetrable cores, |f_class|^2 otherwise).
pub fn dcs_shortwave(k: f64, grid: &[f64], spec: &VortexSpec) -> Result<CrossSectionProfile> {
    let kr_c = k * spec.r_c;
    if kr_c < SHORTWAVE_GATE {
        return Err(Error::ValidityGate {
            kr_c,
            gate: SHORTWAVE_GATE,
        });
    }
    let d = 2.0 * spec.r_c;
    let mu = spec.mu;
    let x0 = 0.5 * kr_c;
    let diffraction: Vec<f64> = grid
        .iter()
        .map(|&phi| {
            // cos(kr_c phi/2 + mu pi) expanded so integer flux stays exact
            let a = x0 * phi;
            let c = a.cos() * cos_pi(mu) - a.sin() * sin_pi(mu);
            2.0 * d * fraunhofer_kernel(x0, phi) * c * c
        })
        .collect();
    let classical: Vec<f64> = if spec.is_penetrable() {
        if spec.is_flux_free_penetrable() {
            vec![0.0; grid.len()]
        } else {
            let prof = fc_decomposition(k, grid, spec, 1e-8 * spec.r_c.sqrt())?;
            let parts = prof.parts.unwrap();
            parts.classical.iter().map(|v| v.norm_sqr()).collect()
        }
    } else {
        grid.iter()
            .map(|&phi| d / 4.0 * (0.5 * phi).sin().abs())
            .collect()
    };
    let dcs_total: Vec<f64> = diffraction
        .iter()
        .zip(&classical)
        .map(|(a, b)| a + b)
        .collect();
    let sigma_total = if spec.is_flux_free_penetrable() { 0.0 } else { 2.0 * d };
    Ok(CrossSectionProfile {
        grid: grid.to_vec(),
        dcs_total,
        dcs_diffraction: diffraction,
        dcs_classical: classical,
        sigma_total,
        period_delta: fringe_period(k, spec.r_c),
        source: CrossSectionSource::Shortwave,
    })
}

/// Midpoint observation grid for full-circle quadrature: odd-count uniform
/// nodes strictly inside (-pi, pi), containing phi = 0.
pub fn observation_grid(min_points: usize) -> Vec<f64> {
    let n = if min_points % 2 == 0 {
        min_points + 1
    } else {
        min_points
    };
    periodic_midpoint_nodes(n.max(33))
}

/// Exact differential cross section |f_c|^2 with total cross section from
/// full-circle quadrature resolving the fringe period (>= 16 samples per
/// period delta = 2 lambda / d).
pub fn dcs_exact(k: f64, grid: &[f64], spec: &VortexSpec, tol: f64) -> Result<CrossSectionProfile> {
    if spec.is_flux_free_penetrable() {
        // nothing scatters; the peak/remainder split of a null amplitude is a
        // formal artifact, so every column vanishes
        return Ok(CrossSectionProfile {
            grid: grid.to_vec(),
            dcs_total: vec![0.0; grid.len()],
            dcs_diffraction: vec![0.0; grid.len()],
            dcs_classical: vec![0.0; grid.len()],
            sigma_total: 0.0,
            period_delta: fringe_period(k, spec.r_c),
            source: CrossSectionSource::Exact,
        });
    }
    let scale = spec.r_c.sqrt();
    let prof = exact_fc(k, grid, spec, tol * scale)?;
    let dcs_total: Vec<f64> = prof.f.iter().map(|v| v.norm_sqr()).collect();

    // decomposition: the universal forward peak and the remainder
    let peak_prof = fpeak_closed(k, grid, spec.mu, k * spec.r_c)?;
    let (dcs_diffraction, dcs_classical): (Vec<f64>, Vec<f64>) = prof
        .f
        .iter()
        .zip(&peak_prof.f)
        .map(|(f, p)| (p.norm_sqr(), (f - p).norm_sqr()))
        .unzip();

    let sigma_total = sigma_total_exact(k, spec, tol)?;
    Ok(CrossSectionProfile {
        grid: grid.to_vec(),
        dcs_total,
        dcs_diffraction,
        dcs_classical,
        sigma_total,
        period_delta: fringe_period(k, spec.r_c),
        source: CrossSectionSource::Exact,
    })
}

/// Full-circle integral of |f_c|^2 on a spectral midpoint grid, refined once
/// for an error estimate.
fn sigma_total_exact(k: f64, spec: &VortexSpec, tol: f64) -> Result<f64> {
    if spec.is_flux_free_penetrable() {
        return Ok(0.0);
    }
    let u_c = k * spec.r_c;
    let n_est = (u_c + 10.0 * u_c.cbrt() + 24.0).ceil() as usize;
    let base = (4 * n_est + 1).max((16.0 * u_c) as usize + 1);
    let scale = spec.r_c.sqrt();
    let coarse = sigma_on_grid(k, spec, base, tol * scale)?;
    let fine = sigma_on_grid(k, spec, 2 * base + 1, tol * scale)?;
    let est = (coarse - fine).abs();
    if est > tol * spec.r_c.max(1e-300) {
        return Err(Error::QuadratureTolerance {
            estimate: est,
            tolerance: tol * spec.r_c,
        });
    }
    Ok(fine)
}

fn sigma_on_grid(k: f64, spec: &VortexSpec, n: usize, amp_tol: f64) -> Result<f64> {
    let nodes = observation_grid(n);
    let prof = exact_fc(k, &nodes, spec, amp_tol)?;
    let vals: Vec<f64> = prof.f.iter().map(|v| v.norm_sqr()).collect();
    Ok(periodic_midpoint_sum(&vals))
}

/// Relative residual of the optical theorem: the forward-amplitude side
/// 2 sqrt(2 pi/k) cos(mu pi) Im f_c(k, 0) + 4 r_c sin^2(mu pi) against the
/// integrated cross section, both from the same sampled profile.
pub fn optical_residual(profile: &AmplitudeProfile, mu: f64, r_c: f64) -> Result<f64> {
    let n = profile.phi.len();
    if n < 3 || n % 2 == 0 {
        return Err(Error::GridTooCoarse(
            "optical residual needs an odd midpoint grid (see observation_grid)".into(),
        ));
    }
    // grid must be the uniform midpoint grid containing phi = 0
    let h = 2.0 * std::f64::consts::PI / n as f64;
    let mid = (n - 1) / 2;
    if profile.phi[mid] != 0.0 {
        return Err(Error::GridTooCoarse(
            "profile grid does not contain phi = 0 at its center".into(),
        ));
    }
    for (j, &p) in profile.phi.iter().enumerate() {
        let want = -std::f64::consts::PI + (j as f64 + 0.5) * h;
        if (p - want).abs() > 1e-9 {
            return Err(Error::GridTooCoarse(
                "profile grid is not the uniform full-circle midpoint grid".into(),
            ));
        }
    }
    // spectral exactness needs the node count to beat the top harmonic of
    // |f|^2, which is twice the channel truncation
    if (n as i64) < 4 * profile.n_max + 1 {
        return Err(Error::GridTooCoarse(format!(
            "{} nodes cannot resolve harmonics up to {}",
            n,
            2 * profile.n_max
        )));
    }
    let k = profile.k;
    let forward = profile.f[mid];
    let lhs = 2.0 * (2.0 * std::f64::consts::PI / k).sqrt() * cos_pi(mu) * forward.im
        + 4.0 * r_c * sin_pi(mu) * sin_pi(mu);
    let vals: Vec<f64> = profile.f.iter().map(|v| v.norm_sqr()).collect();
    let rhs = periodic_midpoint_sum(&vals);
    if rhs == 0.0 {
        return Ok(lhs.abs());
    }
    Ok((lhs - rhs).abs() / rhs)
}

/// Integrated classical cross section: exactly 2 r_c for impenetrable cores
/// (the closed integral of (d/4)|sin(phi/2)|); for penetrable cores the
/// full-circle integral of |f_class|^2, which collapses to zero for a core
/// with no flux at all.
pub fn sigma_classical(spec: &VortexSpec, k: f64) -> Result<f64> {
    if !spec.is_penetrable() {
        return Ok(2.0 * spec.r_c);
    }
    if spec.is_flux_free_penetrable() {
        return Ok(0.0);
    }
    let u_c = k * spec.r_c;
    let window = (u_c + spec.mu.abs() + 8.0).ceil() as usize;
    let nodes = observation_grid(4 * window + 65);
    let prof = fc_decomposition(k, &nodes, spec, 1e-8 * spec.r_c.sqrt())?;
    let parts = prof.parts.unwrap();
    let vals: Vec<f64> = parts.classical.iter().map(|v| v.norm_sqr()).collect();
    Ok(periodic_midpoint_sum(&vals))
}

/// Fringe visibility of the central point against detector resolution of half
/// a fringe period.
#[derive(Debug, Clone, Copy)]
pub struct VisibilityReport {
    /// Contrast in [0, 1].
    pub v: f64,
    /// Assumed detector resolution, in units of the fringe period.
    pub resolution: f64,
    /// Flux in flux-quantum units.
    pub flux: f64,
}

/// Visibility of the forward point of the diffraction pattern, in the
/// universal short-wavelength form (independent of d/lambda):
/// V = |1 - 4/pi^2 + (1 + 4/pi^2) cos(2 pi flux)| /
///     (1 + 4/pi^2 + (1 - 4/pi^2) cos(2 pi flux)).
pub fn visibility_scattering(flux: f64) -> VisibilityReport {
    let q = 4.0 / (std::f64::consts::PI * std::f64::consts::PI);
    let c = cos_pi(2.0 * flux);
    let v = ((1.0 - q) + (1.0 + q) * c).abs() / ((1.0 + q) + (1.0 - q) * c);
    VisibilityReport {
        v,
        resolution: 0.5,
        flux,
    }
}

/// Flux values where the visibility vanishes:
/// Phi_{n +-} = [n +- 1/4 +- (1/2 pi) arcsin((1 - 4/pi^2)/(1 + 4/pi^2))].
pub fn flux_zeros(n: i64) -> (f64, f64) {
    let q = 4.0 / (std::f64::consts::PI * std::f64::consts::PI);
    let beta = ((1.0 - q) / (1.0 + q)).asin() / (2.0 * std::f64::consts::PI);
    let plus = n as f64 + 0.25 + beta;
    let minus = n as f64 - 0.25 - beta;
    (plus, minus)
}

/// Area under the normalized central diffraction pattern
/// y(x) = delta (dsigma/dphi) / sigma_tot against x = phi/delta over
/// x in [-xmax, xmax]. The diffraction term alone is integrated; the classical
/// floor is excluded (its contribution is below the quoted precision for
/// d/lambda >= 10^3 and vanishes with the wavelength).
pub fn central_area_window(flux: f64, d_over_lambda: f64, xmax: f64) -> Result<f64> {
    if !(d_over_lambda >= 100.0) {
        return Err(Error::Domain(format!(
            "central areas need d/lambda >= 100, got {d_over_lambda}"
        )));
    }
    if !(xmax > 0.0 && xmax <= 16.0) {
        return Err(Error::Domain("window must satisfy 0 < xmax <= 16".into()));
    }
    let delta = 2.0 / d_over_lambda; // 2 lambda / d, radians
    let x0 = std::f64::consts::PI * d_over_lambda / 2.0; // k r_c / 2
    let integrand = |x: f64| {
        let c = cos_pi(x + flux);
        delta * fraunhofer_kernel(x0, delta * x) * c * c
    };
    // >= 64 quadrature points per unit-x oscillation
    let panels = (8.0 * 2.0 * xmax).ceil() as usize;
    let (area, _) = integrate_adaptive(integrand, -xmax, xmax, 1e-9, panels.max(16))?;
    Ok(area)
}

/// Central-pattern area over the standard window x in [-1, 1].
pub fn central_areas(flux: f64, d_over_lambda: f64) -> Result<f64> {
    central_area_window(flux, d_over_lambda, 1.0)
}

/// Same area including the classical reflection floor; used to check that the
/// convention does not matter at realistic wavelength ratios.
pub fn central_area_with_classical(flux: f64, d_over_lambda: f64, xmax: f64) -> Result<f64> {
    let base = central_area_window(flux, d_over_lambda, xmax)?;
    let delta = 2.0 / d_over_lambda;
    let floor = |x: f64| delta / 8.0 * (0.5 * delta * x).sin().abs();
    let (extra, _) = integrate_adaptive(floor, -xmax, xmax, 1e-12, 8)?;
    Ok(base + extra)
}

/// Double-slit (biprism) interference reference: geometry, wavelength, flux,
/// and a Gaussian single-slit envelope.
#[derive(Debug, Clone)]
pub struct DoubleSlitSetup {
    /// Distance from slits to the detection screen.
    pub screen_distance: f64,
    /// Slit separation.
    pub slit_separation: f64,
    pub wavelength: f64,
    pub flux: f64,
    /// Gaussian envelope width; the default is twice the fringe period.
    pub envelope_width: f64,
}

impl DoubleSlitSetup {
    pub fn new(screen_distance: f64, slit_separation: f64, wavelength: f64, flux: f64) -> Result<Self> {
        if !(screen_distance > 0.0 && slit_separation > 0.0 && wavelength > 0.0) {
            return Err(Error::Domain(
                "double-slit geometry requires positive lengths".into(),
            ));
        }
        let period = wavelength * screen_distance / slit_separation;
        Ok(DoubleSlitSetup {
            screen_distance,
            slit_separation,
            wavelength,
            flux,
            envelope_width: 2.0 * period,
        })
    }

    /// Fringe period on the screen.
    pub fn period(&self) -> f64 {
        self.wavelength * self.screen_distance / self.slit_separation
    }

    /// Angular fringe period.
    pub fn angular_period(&self) -> f64 {
        self.wavelength / self.slit_separation
    }

    /// Single-slit Gaussian envelope, normalized to 1 at the center.
    pub fn envelope(&self, y: f64) -> f64 {
        (-(y * y) / (2.0 * self.envelope_width * self.envelope_width)).exp()
    }

    /// Interference intensity I(y) = 4 I0(y) cos^2[(y D/(lambda L) + flux) pi].
    pub fn intensity(&self, y: f64) -> f64 {
        let arg = y * self.slit_separation / (self.wavelength * self.screen_distance) + self.flux;
        let c = cos_pi(arg);
        4.0 * self.envelope(y) * c * c
    }

    /// Central-point visibility against the envelope sampled half a period out.
    pub fn visibility(&self) -> f64 {
        let i0 = self.envelope(0.0);
        let ih = self.envelope(0.5 * self.period());
        let c2 = cos_pi(2.0 * self.flux);
        ((i0 - ih) + (i0 + ih) * c2).abs() / ((i0 + ih) + (i0 - ih) * c2)
    }

    /// Geometry warnings: the angular-variable approximation needs the screen
    /// distance to dominate both the slit separation and the wavelength.
    pub fn geometry_warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if self.screen_distance < 10.0 * self.slit_separation {
            w.push(format!(
                "screen distance {:.3e} is not large against slit separation {:.3e}",
                self.screen_distance, self.slit_separation
            ));
        }
        if self.screen_distance < 1e3 * self.wavelength {
            w.push(format!(
                "screen distance {:.3e} is not large against the wavelength {:.3e}",
                self.screen_distance, self.wavelength
            ));
        }
        w
    }
}
