//! Closed-form response functions on the real axis, in the upper half-plane
//! and on the imaginary axis.

mod graphene;
mod media;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use graphene::{
    branch_root, longitudinal_from_polarization, polarization_00, polarization_combo,
    transverse_from_polarization, GrapheneParams, HbarMultiple, BRANCH_POINT_TOLERANCE,
    FINE_STRUCTURE, LIGHT_TO_FERMI_RATIO, SPEED_OF_LIGHT_SI,
};
pub use media::{DrudeParams, Oscillator, OscillatorParams};

/// Behaviour of a response function at zero frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PoleClass {
    Regular,
    /// `Im ε ~ coefficient / ω` as `ω → 0`.
    SimplePole(f64),
    /// `Re ε ~ −coefficient / ω²` as `ω → 0`.
    DoublePole(f64),
}

impl PoleClass {
    pub fn coefficient(&self) -> f64 {
        match *self {
            PoleClass::Regular => 0.0,
            PoleClass::SimplePole(c) | PoleClass::DoublePole(c) => c,
        }
    }
}

/// Where an evaluation landed relative to the singular set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Regular,
    AtBranchPoint,
    AtZeroFrequencyPole,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Regular => "regular",
            Status::AtBranchPoint => "at-branch-point",
            Status::AtZeroFrequencyPole => "at-zero-frequency-pole",
        }
    }
}

/// A permittivity value tagged with its validity.
///
/// When `status` is not [`Status::Regular`] the value is NaN and must not be
/// used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPermittivity {
    pub value: Complex64,
    pub status: Status,
}

impl ComplexPermittivity {
    fn regular(value: Complex64) -> Self {
        Self {
            value,
            status: Status::Regular,
        }
    }

    fn singular(status: Status) -> Self {
        Self {
            value: Complex64::new(f64::NAN, f64::NAN),
            status,
        }
    }

    pub fn is_regular(&self) -> bool {
        self.status == Status::Regular
    }

    /// The value if the point is regular.
    pub fn get(&self) -> Option<Complex64> {
        self.is_regular().then_some(self.value)
    }

    pub fn susceptibility(&self) -> Option<Complex64> {
        self.get().map(|v| v - 1.0)
    }
}

/// Kind of a distinguished point on the positive real axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointKind {
    /// Square-root branch point.
    Branch,
    /// Smooth but sharp structure (oscillator resonance).
    Feature,
}

/// All supported response functions with their parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ResponseModel {
    GrapheneLongitudinal(GrapheneParams),
    GrapheneTransverse(GrapheneParams),
    Oscillator(OscillatorParams),
    Drude(DrudeParams),
    Plasma {
        omega_p: f64,
    },
    GeneralizedPlasma {
        omega_p: f64,
        #[serde(flatten)]
        bound: OscillatorParams,
    },
}

impl ResponseModel {
    pub fn validate(&self) -> Result<()> {
        match self {
            ResponseModel::GrapheneLongitudinal(p) | ResponseModel::GrapheneTransverse(p) => {
                p.validate()
            }
            ResponseModel::Oscillator(p) => p.validate(),
            ResponseModel::Drude(p) => p.validate(),
            ResponseModel::Plasma { omega_p } => media::validate_plasma_frequency(*omega_p),
            ResponseModel::GeneralizedPlasma { omega_p, bound } => {
                media::validate_plasma_frequency(*omega_p)?;
                bound.validate()
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ResponseModel::GrapheneLongitudinal(_) => "graphene-longitudinal",
            ResponseModel::GrapheneTransverse(_) => "graphene-transverse",
            ResponseModel::Oscillator(_) => "oscillator",
            ResponseModel::Drude(_) => "drude",
            ResponseModel::Plasma { .. } => "plasma",
            ResponseModel::GeneralizedPlasma { .. } => "generalized-plasma",
        }
    }

    pub fn graphene(&self) -> Option<&GrapheneParams> {
        match self {
            ResponseModel::GrapheneLongitudinal(p) | ResponseModel::GrapheneTransverse(p) => {
                Some(p)
            }
            _ => None,
        }
    }

    /// Branch frequency `b = v_F k` for graphene, `None` otherwise.
    pub fn branch_frequency(&self) -> Option<f64> {
        self.graphene().map(GrapheneParams::branch_frequency)
    }

    /// Characteristic frequency used to nondimensionalize integrals.
    pub fn frequency_scale(&self) -> f64 {
        match self {
            ResponseModel::GrapheneLongitudinal(p) | ResponseModel::GrapheneTransverse(p) => {
                p.branch_frequency()
            }
            ResponseModel::Oscillator(p) => p.resonances().fold(0.0, f64::max),
            ResponseModel::Drude(p) => p.omega_p,
            ResponseModel::Plasma { omega_p } => *omega_p,
            ResponseModel::GeneralizedPlasma { omega_p, bound } => {
                bound.resonances().fold(*omega_p, f64::max)
            }
        }
    }

    /// Distinguished points on the positive real axis, sorted.
    pub fn real_axis_points(&self) -> Vec<(f64, PointKind)> {
        let mut points: Vec<(f64, PointKind)> = match self {
            ResponseModel::GrapheneLongitudinal(p) | ResponseModel::GrapheneTransverse(p) => {
                vec![(p.branch_frequency(), PointKind::Branch)]
            }
            ResponseModel::Oscillator(p) | ResponseModel::GeneralizedPlasma { bound: p, .. } => {
                p.resonances().map(|w| (w, PointKind::Feature)).collect()
            }
            ResponseModel::Drude(p) if p.gamma > 0.0 => vec![(p.gamma, PointKind::Feature)],
            ResponseModel::Drude(_) | ResponseModel::Plasma { .. } => Vec::new(),
        };
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        points.dedup_by(|a, b| a.0 == b.0);
        points
    }

    /// Whether `ε` has a pole at `ω = 0`.
    fn singular_at_origin(&self) -> bool {
        !matches!(self.pole_class(), PoleClass::Regular)
    }

    pub fn pole_class(&self) -> PoleClass {
        match self {
            ResponseModel::Oscillator(_) | ResponseModel::GrapheneLongitudinal(_) => {
                PoleClass::Regular
            }
            ResponseModel::Drude(p) if p.gamma > 0.0 => {
                PoleClass::SimplePole(p.omega_p * p.omega_p / p.gamma)
            }
            ResponseModel::Drude(DrudeParams { omega_p, .. })
            | ResponseModel::Plasma { omega_p }
            | ResponseModel::GeneralizedPlasma { omega_p, .. } => {
                PoleClass::DoublePole(omega_p * omega_p)
            }
            ResponseModel::GrapheneTransverse(p) => {
                PoleClass::DoublePole(p.double_pole_coefficient())
            }
        }
    }

    /// Real-axis susceptibility `ε(ω) − 1` without singular-set checks; may be
    /// infinite or NaN on the singular set.
    pub fn susceptibility_real(&self, omega: f64) -> Complex64 {
        let z = Complex64::new(omega, 0.0);
        match self {
            ResponseModel::GrapheneLongitudinal(p) => graphene::longitudinal_susceptibility(p, z),
            ResponseModel::GrapheneTransverse(p) => graphene::transverse_susceptibility(p, z),
            ResponseModel::Oscillator(p) => p.susceptibility_real(omega),
            ResponseModel::Drude(p) => p.susceptibility_real(omega),
            ResponseModel::Plasma { omega_p } => {
                Complex64::new(-omega_p * omega_p / (omega * omega), 0.0)
            }
            ResponseModel::GeneralizedPlasma { omega_p, bound } => {
                bound.susceptibility_real(omega)
                    + Complex64::new(-omega_p * omega_p / (omega * omega), 0.0)
            }
        }
    }

    /// Susceptibility at a complex frequency without singular-set checks.
    pub fn susceptibility(&self, omega: Complex64) -> Complex64 {
        if omega.im == 0.0 {
            return self.susceptibility_real(omega.re);
        }
        match self {
            ResponseModel::GrapheneLongitudinal(p) => {
                graphene::longitudinal_susceptibility(p, omega)
            }
            ResponseModel::GrapheneTransverse(p) => graphene::transverse_susceptibility(p, omega),
            ResponseModel::Oscillator(p) => p.susceptibility(omega),
            ResponseModel::Drude(p) => p.susceptibility(omega),
            ResponseModel::Plasma { omega_p } => -omega_p * omega_p / (omega * omega),
            ResponseModel::GeneralizedPlasma { omega_p, bound } => {
                bound.susceptibility(omega) - omega_p * omega_p / (omega * omega)
            }
        }
    }

    /// `Re χ(ω) + C/ω²` with `C` the double-pole coefficient (zero unless the
    /// model has a double pole), evaluated without cancellation.
    ///
    /// This is the bracket that enters the inverse real-axis relation.
    pub fn regularized_real_susceptibility(&self, omega: f64) -> f64 {
        match self {
            ResponseModel::GrapheneTransverse(p) => graphene::transverse_regular_real(p, omega),
            ResponseModel::Plasma { .. } => 0.0,
            ResponseModel::Drude(p) if p.gamma == 0.0 => 0.0,
            ResponseModel::GeneralizedPlasma { bound, .. } => bound.susceptibility_real(omega).re,
            _ => self.susceptibility_real(omega).re,
        }
    }

    fn real_status(&self, omega: f64) -> Status {
        if let Some(p) = self.graphene() {
            if p.is_branch_point(omega) {
                return Status::AtBranchPoint;
            }
        }
        if omega == 0.0 && self.singular_at_origin() {
            return Status::AtZeroFrequencyPole;
        }
        Status::Regular
    }

    /// `ε(ω)` on the real axis, as the boundary value from the upper half-plane.
    pub fn eval_real(&self, omega: f64) -> ComplexPermittivity {
        match self.real_status(omega) {
            Status::Regular => ComplexPermittivity::regular(1.0 + self.susceptibility_real(omega)),
            status => ComplexPermittivity::singular(status),
        }
    }

    /// `ε(ω)` anywhere in the closed upper half-plane.
    pub fn eval_complex(&self, omega: Complex64) -> Result<ComplexPermittivity> {
        if !(omega.im >= 0.0) || !omega.re.is_finite() || !omega.im.is_finite() {
            return Err(Error::DomainError {
                re: omega.re,
                im: omega.im,
            });
        }
        if let Some(p) = self.graphene() {
            if p.at_branch_point(omega) {
                return Ok(ComplexPermittivity::singular(Status::AtBranchPoint));
            }
        }
        if omega == Complex64::new(0.0, 0.0) && self.singular_at_origin() {
            return Ok(ComplexPermittivity::singular(Status::AtZeroFrequencyPole));
        }
        Ok(ComplexPermittivity::regular(
            1.0 + self.susceptibility(omega),
        ))
    }

    /// `ε(iξ)`, real for every supported model.
    pub fn eval_imaginary_axis(&self, xi: f64) -> Result<ComplexPermittivity> {
        self.eval_complex(Complex64::new(0.0, xi))
    }

    /// `(|Re ε(ω) − Re ε(−ω)|, |Im ε(ω) + Im ε(−ω)|)`.
    pub fn parity_defect(&self, omega: f64) -> Result<(f64, f64)> {
        let plus = self.eval_real(omega);
        let minus = self.eval_real(-omega);
        for value in [plus, minus] {
            match value.status {
                Status::Regular => {}
                Status::AtBranchPoint => {
                    return Err(Error::BranchPointSingularity {
                        omega,
                        branch: self.branch_frequency().unwrap_or(f64::NAN),
                    })
                }
                Status::AtZeroFrequencyPole => {
                    return Err(Error::SingularEvaluationPoint { omega })
                }
            }
        }
        Ok((
            (plus.value.re - minus.value.re).abs(),
            (plus.value.im + minus.value.im).abs(),
        ))
    }
}
