//! Contour check of the imaginary-axis relation for graphene.
//!
//! The function `F(ω) = ω χ(ω) / (ω² + ξ²)` is integrated along a closed
//! contour in the upper half-plane: the real axis from `−R` to `R`,
//! detouring over `−b`, `0` and `b` on small semicircles of radius `ρ`, and
//! back along the arc `|ω| = R`. The only pole inside is `ω = iξ`, so the
//! total must equal `πi χ(iξ)`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quadrature::{adaptive, QuadConfig, QuadratureResult};
use crate::response::ResponseModel;

/// Small radii of the default convergence study, in units of `b`:
/// 7 geometric points from `1e-2` to `1e-5`.
pub fn default_rho_grid() -> Vec<f64> {
    (0..7).map(|j| 10f64.powf(-2.0 - 0.5 * j as f64)).collect()
}

/// Geometry of one contour.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourSpec {
    /// Radius of the small semicircles.
    pub rho: f64,
    /// Radius `R` of the closing arc.
    pub big_radius: f64,
    /// Imaginary-axis point `ξ`.
    pub xi: f64,
    pub model: ResponseModel,
}

impl ContourSpec {
    pub fn new(model: ResponseModel, rho: f64, big_radius: f64, xi: f64) -> Result<Self> {
        let spec = Self {
            rho,
            big_radius,
            xi,
            model,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Branch frequency, or `Unsupported` for non-graphene models.
    pub fn branch_frequency(&self) -> Result<f64> {
        self.model.branch_frequency().ok_or_else(|| {
            Error::Unsupported(format!(
                "contour checks need a graphene model, got {}",
                self.model.name()
            ))
        })
    }

    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        let b = self.branch_frequency()?;
        if !(self.xi.is_finite() && self.xi > 0.0) {
            return Err(Error::InvalidParameters(format!(
                "xi must be positive, got {}",
                self.xi
            )));
        }
        if !(self.rho > 0.0) {
            return Err(Error::InvalidParameters(format!(
                "rho must be positive, got {}",
                self.rho
            )));
        }
        let limit = (0.1 * b).min(self.xi);
        if !(self.rho < limit) {
            return Err(Error::RadiusTooLarge {
                rho: self.rho,
                limit,
            });
        }
        if !(self.big_radius.is_finite() && self.big_radius > 10.0 * b.max(self.xi)) {
            return Err(Error::InvalidParameters(format!(
                "big radius must exceed 10 max(b, xi) = {}, got {}",
                10.0 * b.max(self.xi),
                self.big_radius
            )));
        }
        Ok(())
    }

    fn integrand(&self, omega: Complex64) -> Complex64 {
        omega * self.model.susceptibility(omega) / (omega * omega + self.xi * self.xi)
    }

    fn integrand_real(&self, x: f64) -> Complex64 {
        x * self.model.susceptibility_real(x) / (x * x + self.xi * self.xi)
    }
}

/// Direction of travel along a semicircle in the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `φ` from `π` to `0`, the way the small detours are traversed.
    Clockwise,
    /// `φ` from `0` to `π`, the way the closing arc is traversed.
    CounterClockwise,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `ω = −b`.
    Left,
    /// `ω = +b`.
    Right,
}

/// The pieces of one contour and the residue identity they satisfy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourReport {
    pub rho: f64,
    pub big_radius: f64,
    pub xi: f64,
    pub real_axis_part: Complex64,
    pub pole_semicircle: Complex64,
    pub left_branch_semicircle: Complex64,
    pub right_branch_semicircle: Complex64,
    pub big_arc: Complex64,
    /// `πi χ(iξ)`.
    pub residue_term: Complex64,
    /// Sum of the five pieces minus `residue_term`.
    pub residue_identity_defect: Complex64,
    /// `−(i/π)·real_axis_part + pole_semicircle/(πi) − χ(iξ)`: how well the
    /// real-axis integral plus the pole term alone reproduce `χ(iξ)`.
    pub decomposition_defect: Complex64,
    /// Summed quadrature error estimates of all pieces.
    pub abs_error_estimate: f64,
}

impl ContourReport {
    pub fn relative_defect(&self) -> f64 {
        self.residue_identity_defect.norm() / self.residue_term.norm()
    }

    /// Bound on `decomposition_defect` implied by the neglected pieces.
    pub fn decomposition_bound(&self) -> f64 {
        (self.left_branch_semicircle.norm()
            + self.right_branch_semicircle.norm()
            + self.big_arc.norm()
            + self.abs_error_estimate)
            / PI
    }
}

/// Tolerances for a contour piece whose integrand is roughly `magnitude`.
fn piece_config(cfg: &QuadConfig, magnitude: f64) -> QuadConfig {
    QuadConfig {
        abs_tol: (1e-15 * magnitude).max(f64::MIN_POSITIVE),
        ..*cfg
    }
}

fn arc(
    spec: &ContourSpec,
    center: f64,
    radius: f64,
    orientation: Orientation,
    cfg: &QuadConfig,
) -> Result<QuadratureResult<Complex64>> {
    let g = |phi: f64| {
        let e = Complex64::from_polar(1.0, phi);
        let omega = center + radius * e;
        spec.integrand(omega) * Complex64::new(0.0, radius) * e
    };
    let magnitude = [0.1, 1.0, FRAC_PI_2, 2.0, 3.0]
        .iter()
        .map(|&phi| g(phi).norm())
        .fold(0.0, f64::max)
        * PI;
    let cfg = piece_config(cfg, magnitude).split(2);
    // the two quarters meet where the real-axis regimes switch
    let total = adaptive(&g, 0.0, FRAC_PI_2, &cfg)? + adaptive(&g, FRAC_PI_2, PI, &cfg)?;
    Ok(match orientation {
        Orientation::CounterClockwise => total,
        Orientation::Clockwise => total.scaled(-1.0),
    })
}

/// Semicircle of radius `radius` around `center` on the real axis.
pub fn semicircle(
    spec: &ContourSpec,
    center: f64,
    radius: f64,
    orientation: Orientation,
    cfg: Option<&QuadConfig>,
) -> Result<QuadratureResult<Complex64>> {
    spec.validate()?;
    arc(
        spec,
        center,
        radius,
        orientation,
        &cfg.copied().unwrap_or_default(),
    )
}

/// Small clockwise semicircle over the double pole at `ω = 0`.
pub fn pole_semicircle(spec: &ContourSpec, cfg: Option<&QuadConfig>) -> Result<Complex64> {
    Ok(semicircle(spec, 0.0, spec.rho, Orientation::Clockwise, cfg)?.value)
}

/// The `ρ → 0` limit of [`pole_semicircle`]: `πi C/ξ²` for a double pole of
/// strength `C`, zero when `ε` is regular at the origin.
pub fn pole_semicircle_limit(spec: &ContourSpec) -> Complex64 {
    let c = match spec.model.pole_class() {
        crate::response::PoleClass::DoublePole(c) => c,
        _ => 0.0,
    };
    Complex64::new(0.0, PI * c / (spec.xi * spec.xi))
}

/// Small clockwise semicircle over a branch point.
pub fn branch_semicircle(
    spec: &ContourSpec,
    which: Branch,
    cfg: Option<&QuadConfig>,
) -> Result<Complex64> {
    let b = spec.branch_frequency()?;
    let center = match which {
        Branch::Left => -b,
        Branch::Right => b,
    };
    Ok(semicircle(spec, center, spec.rho, Orientation::Clockwise, cfg)?.value)
}

/// Counter-clockwise arc `|ω| = R`.
pub fn big_arc(spec: &ContourSpec, cfg: Option<&QuadConfig>) -> Result<Complex64> {
    Ok(semicircle(
        spec,
        0.0,
        spec.big_radius,
        Orientation::CounterClockwise,
        cfg,
    )?
    .value)
}

/// Breakpoints that grade geometrically away from the ends of `[lo, hi]`.
fn graded(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let mut points = vec![lo, hi];
    let mut d = step;
    while lo + d < hi {
        points.push(lo + d);
        points.push(hi - d);
        d *= 4.0;
    }
    points.retain(|&x| x >= lo && x <= hi);
    points.sort_by(f64::total_cmp);
    points.dedup();
    points
}

fn segment(
    spec: &ContourSpec,
    lo: f64,
    hi: f64,
    cfg: &QuadConfig,
) -> Result<QuadratureResult<Complex64>> {
    let g = |x: f64| spec.integrand_real(x);
    let points = graded(lo, hi, spec.rho);
    let cfg = cfg.split(points.len());
    let mut total = QuadratureResult::zero();
    for w in points.windows(2) {
        total = total + adaptive(&g, w[0], w[1], &cfg)?;
    }
    Ok(total)
}

fn real_axis(spec: &ContourSpec, cfg: &QuadConfig) -> Result<QuadratureResult<Complex64>> {
    let b = spec.branch_frequency()?;
    let (rho, r) = (spec.rho, spec.big_radius);
    let cfg = cfg.split(4);
    Ok(segment(spec, -r, -b - rho, &cfg)?
        + segment(spec, -b + rho, -rho, &cfg)?
        + segment(spec, rho, b - rho, &cfg)?
        + segment(spec, b + rho, r, &cfg)?)
}

/// The real-axis part of the contour with the three gaps of width `2ρ`.
pub fn real_axis_part(spec: &ContourSpec, cfg: Option<&QuadConfig>) -> Result<Complex64> {
    spec.validate()?;
    Ok(real_axis(spec, &cfg.copied().unwrap_or_default())?.value)
}

/// All pieces of the contour and the defect of the residue identity.
pub fn residue_identity(spec: &ContourSpec, cfg: Option<&QuadConfig>) -> Result<ContourReport> {
    spec.validate()?;
    let cfg = cfg.copied().unwrap_or_default();
    let b = spec.branch_frequency()?;
    let line = real_axis(spec, &cfg)?;
    let pole = arc(spec, 0.0, spec.rho, Orientation::Clockwise, &cfg)?;
    let left = arc(spec, -b, spec.rho, Orientation::Clockwise, &cfg)?;
    let right = arc(spec, b, spec.rho, Orientation::Clockwise, &cfg)?;
    let outer = arc(
        spec,
        0.0,
        spec.big_radius,
        Orientation::CounterClockwise,
        &cfg,
    )?;

    let chi = spec.model.susceptibility(Complex64::new(0.0, spec.xi));
    let i = Complex64::i();
    let residue_term = i * PI * chi;
    let total = line.value + pole.value + left.value + right.value + outer.value;
    let decomposition_defect = -i / PI * line.value + pole.value / (i * PI) - chi;
    Ok(ContourReport {
        rho: spec.rho,
        big_radius: spec.big_radius,
        xi: spec.xi,
        real_axis_part: line.value,
        pole_semicircle: pole.value,
        left_branch_semicircle: left.value,
        right_branch_semicircle: right.value,
        big_arc: outer.value,
        residue_term,
        residue_identity_defect: total - residue_term,
        decomposition_defect,
        abs_error_estimate: line.abs_error_estimate
            + pole.abs_error_estimate
            + left.abs_error_estimate
            + right.abs_error_estimate
            + outer.abs_error_estimate,
    })
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = xs.iter().zip(ys).map(|(x, y)| (x.ln(), y.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Richardson extrapolation to `h → 0` from values at `h` and `h/ratio`,
/// assuming an error of order `h^order`.
pub fn richardson(coarse: Complex64, fine: Complex64, ratio: f64, order: f64) -> Complex64 {
    fine + (fine - coarse) / (ratio.powf(order) - 1.0)
}

/// A sweep over small radii at fixed `R` and `ξ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceStudy {
    pub reports: Vec<ContourReport>,
    /// Log–log slope of `|left branch semicircle|` against `ρ`.
    pub left_slope: f64,
    pub right_slope: f64,
    /// Richardson extrapolation of the pole semicircle from the two smallest
    /// radii, assuming first-order convergence.
    pub pole_extrapolated: Complex64,
    pub pole_limit: Complex64,
}

impl ConvergenceStudy {
    /// Relative distance of the extrapolated pole semicircle from its limit,
    /// or the absolute distance (relative to the residue term) when the
    /// limit is zero.
    pub fn pole_error(&self) -> f64 {
        let scale = if self.pole_limit.norm() > 0.0 {
            self.pole_limit.norm()
        } else {
            self.reports[0].residue_term.norm()
        };
        (self.pole_extrapolated - self.pole_limit).norm() / scale
    }

    pub fn max_relative_defect(&self) -> f64 {
        self.reports
            .iter()
            .map(ContourReport::relative_defect)
            .fold(0.0, f64::max)
    }
}

/// Run [`residue_identity`] for every `ρ` (decreasing) and fit convergence
/// rates. Radii are absolute frequencies.
pub fn rho_sweep(
    model: &ResponseModel,
    xi: f64,
    big_radius: f64,
    rhos: &[f64],
    cfg: Option<&QuadConfig>,
) -> Result<ConvergenceStudy> {
    if rhos.len() < 2 {
        return Err(Error::InvalidParameters(
            "a radius sweep needs at least two radii".into(),
        ));
    }
    let reports = rhos
        .par_iter()
        .map(|&rho| {
            let spec = ContourSpec::new(model.clone(), rho, big_radius, xi)?;
            residue_identity(&spec, cfg)
        })
        .collect::<Result<Vec<_>>>()?;
    let left: Vec<f64> = reports
        .iter()
        .map(|r| r.left_branch_semicircle.norm())
        .collect();
    let right: Vec<f64> = reports
        .iter()
        .map(|r| r.right_branch_semicircle.norm())
        .collect();
    let n = reports.len();
    let (coarse, fine) = (&reports[n - 2], &reports[n - 1]);
    let pole_extrapolated = richardson(
        coarse.pole_semicircle,
        fine.pole_semicircle,
        coarse.rho / fine.rho,
        1.0,
    );
    let spec = ContourSpec::new(model.clone(), rhos[n - 1], big_radius, xi)?;
    Ok(ConvergenceStudy {
        left_slope: log_log_slope(rhos, &left),
        right_slope: log_log_slope(rhos, &right),
        pole_extrapolated,
        pole_limit: pole_semicircle_limit(&spec),
        reports,
    })
}

/// `|big arc|` at each radius, and its log–log slope.
pub fn big_arc_decay(
    model: &ResponseModel,
    xi: f64,
    rho: f64,
    radii: &[f64],
    cfg: Option<&QuadConfig>,
) -> Result<(Vec<f64>, f64)> {
    let values = radii
        .iter()
        .map(|&r| {
            let spec = ContourSpec::new(model.clone(), rho, r, xi)?;
            Ok(big_arc(&spec, cfg)?.norm())
        })
        .collect::<Result<Vec<f64>>>()?;
    let slope = log_log_slope(radii, &values);
    Ok((values, slope))
}
