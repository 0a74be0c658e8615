//! Dispersion relations between the real and imaginary parts of a response
//! function, and the imaginary-axis representation, with the extra terms each
//! pole class requires.
//!
//! All integrals are folded onto positive frequencies using the parity of
//! `ε` and written in the reduced variable `t = x / s`, where `s` is the
//! model's frequency scale.

use std::f64::consts::FRAC_2_PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{integrate, Integrand, QuadConfig, Side, Singularity};
use crate::response::{PointKind, PoleClass, ResponseModel, Status};

/// Tail hand-over in reduced units, as a multiple of the largest of the
/// evaluation point, the distinguished points and 1.
const TAIL_FACTOR: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// Real part from an integral over the imaginary part.
    ReFromIm,
    /// Imaginary part from an integral over the real part.
    ImFromRe,
    /// `ε(iξ)` from an integral over the imaginary part on the real axis.
    ImagAxis,
}

impl Relation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Relation::ReFromIm => "re-from-im",
            Relation::ImFromRe => "im-from-re",
            Relation::ImagAxis => "imag-axis",
        }
    }
}

/// One reconstructed value next to the closed form it should reproduce.
///
/// `direct` and `reconstructed` are `Re ε`, `Im ε` or `ε(iξ)` depending on
/// the relation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KKReport {
    pub omega: f64,
    pub direct: f64,
    pub reconstructed: f64,
    pub subtraction_term: f64,
    pub abs_residual: f64,
    pub rel_residual: f64,
    /// Quadrature error estimate of the integral part.
    pub abs_error_estimate: f64,
    /// The integral was evaluated with a pole crowding a branch point.
    pub degraded: bool,
}

impl KKReport {
    fn new(
        omega: f64,
        direct: f64,
        reconstructed: f64,
        subtraction_term: f64,
        abs_error_estimate: f64,
        degraded: bool,
    ) -> Self {
        let abs_residual = (direct - reconstructed).abs();
        Self {
            omega,
            direct,
            reconstructed,
            subtraction_term,
            abs_residual,
            rel_residual: abs_residual / direct.abs().max(1.0),
            abs_error_estimate,
            degraded,
        }
    }
}

/// Extra term the given relation needs for a pole class at frequency `at`.
///
/// * double pole, real part: `−C/ω²`
/// * double pole, imaginary part: `C/ω²`, the augmentation of the real part
///   under the integral, evaluated at `at`
/// * double pole, imaginary axis: `C/ξ²`
/// * simple pole, imaginary part: `C/ω`
///
/// Everything else is zero.
pub fn subtraction_term(pole_class: PoleClass, relation: Relation, at: f64) -> f64 {
    match (pole_class, relation) {
        (PoleClass::Regular, _) => 0.0,
        (PoleClass::SimplePole(c), Relation::ImFromRe) => c / at,
        (PoleClass::SimplePole(_), _) => 0.0,
        (PoleClass::DoublePole(c), Relation::ReFromIm) => -c / (at * at),
        (PoleClass::DoublePole(c), Relation::ImFromRe | Relation::ImagAxis) => c / (at * at),
    }
}

fn check_supported(model: &ResponseModel) -> Result<()> {
    model.validate()?;
    let lossless = match model {
        ResponseModel::Oscillator(p) | ResponseModel::GeneralizedPlasma { bound: p, .. } => {
            p.is_lossless()
        }
        _ => false,
    };
    if lossless {
        return Err(Error::Unsupported(
            "undamped oscillators have delta-function absorption lines".into(),
        ));
    }
    Ok(())
}

fn check_real_point(model: &ResponseModel, omega: f64) -> Result<()> {
    if !omega.is_finite() {
        return Err(Error::InvalidParameters(format!(
            "frequency must be finite, got {omega}"
        )));
    }
    match model.eval_real(omega).status {
        Status::Regular if omega != 0.0 => Ok(()),
        _ => Err(Error::SingularEvaluationPoint { omega }),
    }
}

/// Declare the model's distinguished points, in reduced units, on an
/// integrand.
fn declare_points<'f>(
    model: &ResponseModel,
    scale: f64,
    mut integrand: Integrand<'f, f64>,
) -> (Integrand<'f, f64>, f64) {
    let mut top: f64 = 1.0;
    for (x, kind) in model.real_axis_points() {
        let t = x / scale;
        top = top.max(t);
        integrand = match kind {
            PointKind::Branch => integrand.sqrt_at(t, Side::Both),
            PointKind::Feature => integrand.breakpoint(t),
        };
    }
    (integrand, top)
}

struct Integral {
    value: f64,
    error: f64,
    degraded: bool,
}

/// `∫₀^∞ numerator(t) · weight dt` in reduced units with the model's points
/// declared and an optional principal-value pole at `tau`.
fn folded_integral(
    model: &ResponseModel,
    scale: f64,
    numerator: impl Fn(f64) -> f64 + Sync,
    pole: Option<f64>,
    cfg: &QuadConfig,
) -> Result<Integral> {
    let (mut integrand, top) = declare_points(model, scale, Integrand::new(numerator));
    let mut reach = top;
    if let Some(tau) = pole {
        integrand = integrand.with(Singularity::SimplePole(tau));
        reach = reach.max(tau);
    }
    let integrand = integrand.with_tail_cutoff(TAIL_FACTOR * reach);
    let r = integrate(&integrand, 0.0, f64::INFINITY, cfg)?;
    Ok(Integral {
        value: r.value,
        error: r.abs_error_estimate,
        degraded: r.degraded,
    })
}

/// Reconstruct `Re ε(ω)` from `Im ε` on the real axis.
pub fn kk_re_from_im(
    model: &ResponseModel,
    omega: f64,
    cfg: Option<&QuadConfig>,
) -> Result<KKReport> {
    check_supported(model)?;
    check_real_point(model, omega)?;
    let cfg = cfg.copied().unwrap_or_default();
    let scale = model.frequency_scale();
    let w = omega.abs();
    let tau = w / scale;
    let numerator = |t: f64| t * model.susceptibility_real(scale * t).im / (t + tau);
    let integral = folded_integral(model, scale, numerator, Some(tau), &cfg)?;
    let sub = subtraction_term(model.pole_class(), Relation::ReFromIm, omega);
    let chi = FRAC_2_PI * integral.value + sub;
    let direct = 1.0 + model.susceptibility_real(omega).re;
    Ok(KKReport::new(
        omega,
        direct,
        1.0 + chi,
        sub,
        FRAC_2_PI * integral.error,
        integral.degraded,
    ))
}

/// Reconstruct `Im ε(ω)` from `Re ε` on the real axis.
pub fn kk_im_from_re(
    model: &ResponseModel,
    omega: f64,
    cfg: Option<&QuadConfig>,
) -> Result<KKReport> {
    check_supported(model)?;
    check_real_point(model, omega)?;
    let cfg = cfg.copied().unwrap_or_default();
    let scale = model.frequency_scale();
    let tau = omega.abs() / scale;
    let numerator = |t: f64| model.regularized_real_susceptibility(scale * t) / (t + tau);
    let integral = folded_integral(model, scale, numerator, Some(tau), &cfg)?;
    let pole_class = model.pole_class();
    let exterior = match pole_class {
        PoleClass::SimplePole(_) => subtraction_term(pole_class, Relation::ImFromRe, omega.abs()),
        _ => 0.0,
    };
    // odd in ω
    let im = (-FRAC_2_PI * tau * integral.value + exterior) * omega.signum();
    let direct = model.susceptibility_real(omega).im;
    Ok(KKReport::new(
        omega,
        direct,
        im,
        subtraction_term(pole_class, Relation::ImFromRe, omega),
        FRAC_2_PI * tau * integral.error,
        integral.degraded,
    ))
}

/// Reconstruct `ε(iξ)` from `Im ε` on the real axis.
pub fn kk_imag_axis(model: &ResponseModel, xi: f64, cfg: Option<&QuadConfig>) -> Result<KKReport> {
    check_supported(model)?;
    if !(xi.is_finite() && xi > 0.0) {
        return Err(Error::InvalidParameters(format!(
            "imaginary frequency must be positive, got {xi}"
        )));
    }
    let cfg = cfg.copied().unwrap_or_default();
    let scale = model.frequency_scale();
    let zeta = xi / scale;
    let numerator = |t: f64| t * model.susceptibility_real(scale * t).im / (t * t + zeta * zeta);
    let integral = folded_integral(model, scale, numerator, None, &cfg)?;
    let sub = subtraction_term(model.pole_class(), Relation::ImagAxis, xi);
    let direct = model.eval_imaginary_axis(xi)?;
    let direct = direct
        .get()
        .ok_or(Error::SingularEvaluationPoint { omega: xi })?
        .re;
    Ok(KKReport::new(
        xi,
        direct,
        1.0 + FRAC_2_PI * integral.value + sub,
        sub,
        FRAC_2_PI * integral.error,
        integral.degraded,
    ))
}

/// Apply one relation at a single point.
pub fn kk(
    model: &ResponseModel,
    relation: Relation,
    at: f64,
    cfg: Option<&QuadConfig>,
) -> Result<KKReport> {
    match relation {
        Relation::ReFromIm => kk_re_from_im(model, at, cfg),
        Relation::ImFromRe => kk_im_from_re(model, at, cfg),
        Relation::ImagAxis => kk_imag_axis(model, at, cfg),
    }
}

/// Apply one relation on a grid in parallel; results come back in grid order.
pub fn kk_sweep(
    model: &ResponseModel,
    relation: Relation,
    grid: &[f64],
    cfg: Option<&QuadConfig>,
) -> Vec<Result<KKReport>> {
    grid.par_iter()
        .map(|&at| kk(model, relation, at, cfg))
        .collect()
}
