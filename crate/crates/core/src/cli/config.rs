//! Run configuration files.
//!
//! Frequencies are given in units of the branch frequency `b` for graphene
//! models and as plain frequencies otherwise. Without an `si` block every
//! quantity is in natural units where `v_F = 1`, so `b = k`. With an `si`
//! block, `k` is in 1/m and frequencies in rad/s; internally they are
//! rescaled to the natural system and converted back on output.

use std::path::PathBuf;

use serde::Deserialize;

use crate::kramers_kronig::Relation;
use crate::quadrature::QuadConfig;
use crate::response::{
    DrudeParams, GrapheneParams, Oscillator, OscillatorParams, ResponseModel, FINE_STRUCTURE,
    LIGHT_TO_FERMI_RATIO, SPEED_OF_LIGHT_SI,
};

use super::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelSpec,
    #[serde(default)]
    pub si: Option<SiUnits>,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default)]
    pub tolerance: Option<Tolerance>,
    #[serde(default)]
    pub kk: KkOptions,
    #[serde(default)]
    pub contour: ContourOptions,
    #[serde(default)]
    pub format: Option<Format>,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

/// Response model without its wave vector, which comes from the grid.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModelSpec {
    GrapheneLongitudinal {
        #[serde(default)]
        alpha: Option<f64>,
        /// Natural units only: light-to-Fermi velocity ratio.
        #[serde(default)]
        c: Option<f64>,
    },
    GrapheneTransverse {
        #[serde(default)]
        alpha: Option<f64>,
        #[serde(default)]
        c: Option<f64>,
    },
    Oscillator {
        oscillators: Vec<Oscillator>,
    },
    Drude {
        omega_p: f64,
        gamma: f64,
    },
    Plasma {
        omega_p: f64,
    },
    GeneralizedPlasma {
        omega_p: f64,
        oscillators: Vec<Oscillator>,
    },
}

impl ModelSpec {
    pub fn is_graphene(&self) -> bool {
        matches!(
            self,
            ModelSpec::GrapheneLongitudinal { .. } | ModelSpec::GrapheneTransverse { .. }
        )
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SiUnits {
    /// Speed of light in m/s.
    #[serde(default = "default_c_si")]
    pub c: f64,
    /// Fermi velocity in m/s; defaults to `c/300`.
    #[serde(default)]
    pub v_fermi: Option<f64>,
}

fn default_c_si() -> f64 {
    SPEED_OF_LIGHT_SI
}

impl SiUnits {
    pub fn v_fermi(&self) -> f64 {
        self.v_fermi.unwrap_or(self.c / LIGHT_TO_FERMI_RATIO)
    }
}

/// Either explicit values or a generated range.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Axis {
    Values { values: Vec<f64> },
    Range(Range),
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Range {
    #[serde(default)]
    pub spacing: Spacing,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

impl Axis {
    /// The points of the axis, checked to be finite, non-empty and strictly
    /// increasing.
    pub fn points(&self, name: &str) -> Result<Vec<f64>, CliError> {
        let points = match self {
            Axis::Values { values } => values.clone(),
            Axis::Range(r) => r.points(name)?,
        };
        if points.is_empty() {
            return Err(CliError::Config(format!("grid `{name}` is empty")));
        }
        if points.iter().any(|x| !x.is_finite()) {
            return Err(CliError::Config(format!(
                "grid `{name}` has non-finite values"
            )));
        }
        if points.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(CliError::Config(format!(
                "grid `{name}` must be strictly increasing"
            )));
        }
        Ok(points)
    }
}

impl Range {
    fn points(&self, name: &str) -> Result<Vec<f64>, CliError> {
        let n = self.points;
        if n == 0 {
            return Err(CliError::Config(format!("grid `{name}` is empty")));
        }
        if n == 1 {
            return Ok(vec![self.start]);
        }
        let last = (n - 1) as f64;
        match self.spacing {
            Spacing::Linear => Ok((0..n)
                .map(|j| {
                    if j + 1 == n {
                        self.stop
                    } else {
                        self.start + (self.stop - self.start) * j as f64 / last
                    }
                })
                .collect()),
            Spacing::Log => {
                if !(self.start > 0.0 && self.stop > 0.0) {
                    return Err(CliError::Config(format!(
                        "log grid `{name}` needs positive bounds"
                    )));
                }
                let (a, b) = (self.start.ln(), self.stop.ln());
                Ok((0..n)
                    .map(|j| {
                        if j == 0 {
                            self.start
                        } else if j + 1 == n {
                            self.stop
                        } else {
                            (a + (b - a) * j as f64 / last).exp()
                        }
                    })
                    .collect())
            }
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    /// Real frequencies (`ω/b` for graphene).
    #[serde(default)]
    pub omega: Option<Axis>,
    /// Imaginary frequencies (`ξ/b` for graphene).
    #[serde(default)]
    pub xi: Option<Axis>,
    /// Wave vectors; graphene only.
    #[serde(default)]
    pub k: Option<Axis>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    #[serde(default)]
    pub max_subdivisions: Option<usize>,
}

impl Tolerance {
    pub fn quad_config(&self) -> QuadConfig {
        let mut cfg = QuadConfig::new(self.abs, self.rel);
        if let Some(n) = self.max_subdivisions {
            cfg.max_subdivisions = n;
        }
        cfg
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KkOptions {
    /// Relations to evaluate with `kk`; `imag-axis` always uses the
    /// imaginary-axis relation.
    #[serde(default = "default_relations")]
    pub relations: Vec<Relation>,
    /// Rows with `|ω/b − 1|` below this are computed but left out of the
    /// summary (graphene only).
    #[serde(default)]
    pub exclusion: f64,
    /// Largest relative residual accepted by `--check`.
    #[serde(default = "default_max_rel_residual")]
    pub max_rel_residual: f64,
    /// Largest absolute residual accepted by `--check`, if any.
    #[serde(default)]
    pub max_abs_residual: Option<f64>,
}

fn default_relations() -> Vec<Relation> {
    vec![Relation::ReFromIm, Relation::ImFromRe]
}

fn default_max_rel_residual() -> f64 {
    1e-6
}

impl Default for KkOptions {
    fn default() -> Self {
        Self {
            relations: default_relations(),
            exclusion: 0.0,
            max_rel_residual: default_max_rel_residual(),
            max_abs_residual: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContourOptions {
    /// Imaginary-axis point in units of `b`.
    #[serde(default = "one")]
    pub xi: f64,
    /// Closing-arc radius in units of `b`.
    #[serde(default = "default_big_radius")]
    pub big_radius: f64,
    /// Small radii in units of `b`; defaults to seven points from 1e-2 to
    /// 1e-5.
    #[serde(default)]
    pub rho: Option<Axis>,
    /// Closing-arc radii for the decay fit, in units of `b`.
    #[serde(default)]
    pub arc_radii: Option<Axis>,
    #[serde(default = "default_pole_tolerance")]
    pub max_pole_error: f64,
    #[serde(default = "default_slope_tolerance")]
    pub slope_tolerance: f64,
    #[serde(default = "default_max_defect")]
    pub max_relative_defect: f64,
}

fn one() -> f64 {
    1.0
}
fn default_big_radius() -> f64 {
    1e4
}
fn default_pole_tolerance() -> f64 {
    1e-6
}
fn default_slope_tolerance() -> f64 {
    0.1
}
fn default_max_defect() -> f64 {
    1e-5
}

impl Default for ContourOptions {
    fn default() -> Self {
        Self {
            xi: one(),
            big_radius: default_big_radius(),
            rho: None,
            arc_radii: None,
            max_pole_error: default_pole_tolerance(),
            slope_tolerance: default_slope_tolerance(),
            max_relative_defect: default_max_defect(),
        }
    }
}

/// Conversion between the configured unit system and natural units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Units {
    /// Natural frequency unit expressed in the configured system.
    pub frequency: f64,
    pub si: bool,
}

impl Units {
    pub fn name(&self) -> &'static str {
        if self.si {
            "si"
        } else {
            "natural"
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let config: RunConfig =
            serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let graphene = self.model.is_graphene();
        if graphene && self.grid.k.is_none() {
            return Err(CliError::Config(
                "graphene models need a `grid.k` axis".into(),
            ));
        }
        if !graphene && self.grid.k.is_some() {
            return Err(CliError::Config(
                "`grid.k` only applies to graphene models".into(),
            ));
        }
        if let Some(si) = &self.si {
            if !graphene {
                return Err(CliError::Config(
                    "the `si` block only applies to graphene models".into(),
                ));
            }
            if !(si.c > 0.0 && si.v_fermi() > 0.0 && si.v_fermi() < si.c) {
                return Err(CliError::Config("`si` needs 0 < v_fermi < c".into()));
            }
            if let ModelSpec::GrapheneLongitudinal { c: Some(_), .. }
            | ModelSpec::GrapheneTransverse { c: Some(_), .. } = self.model
            {
                return Err(CliError::Config(
                    "give the speed of light in the `si` block, not in the model".into(),
                ));
            }
        }
        if !(self.kk.exclusion >= 0.0) {
            return Err(CliError::Config(
                "`kk.exclusion` must be non-negative".into(),
            ));
        }
        if let Some(t) = &self.tolerance {
            if !(t.abs >= 0.0 && t.rel >= 0.0 && (t.abs > 0.0 || t.rel > 0.0)) {
                return Err(CliError::Config(
                    "tolerances must be non-negative and not both zero".into(),
                ));
            }
        }
        for axis in [&self.grid.omega, &self.grid.xi, &self.grid.k]
            .into_iter()
            .flatten()
        {
            axis.points("grid")?;
        }
        let model = self.response_model(1.0)?;
        model
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        Ok(())
    }

    pub fn model_name(&self) -> &'static str {
        match self.model {
            ModelSpec::GrapheneLongitudinal { .. } => "graphene-longitudinal",
            ModelSpec::GrapheneTransverse { .. } => "graphene-transverse",
            ModelSpec::Oscillator { .. } => "oscillator",
            ModelSpec::Drude { .. } => "drude",
            ModelSpec::Plasma { .. } => "plasma",
            ModelSpec::GeneralizedPlasma { .. } => "generalized-plasma",
        }
    }

    pub fn units(&self) -> Units {
        match &self.si {
            Some(si) => Units {
                frequency: si.v_fermi(),
                si: true,
            },
            None => Units {
                frequency: 1.0,
                si: false,
            },
        }
    }

    pub fn quad_config(&self) -> QuadConfig {
        self.tolerance.map(|t| t.quad_config()).unwrap_or_default()
    }

    /// Wave vectors as given in the file (empty for non-graphene models).
    pub fn wave_vectors(&self) -> Result<Vec<f64>, CliError> {
        match &self.grid.k {
            Some(axis) => {
                let ks = axis.points("k")?;
                if ks.iter().any(|&k| k <= 0.0) {
                    return Err(CliError::Config("wave vectors must be positive".into()));
                }
                Ok(ks)
            }
            None => Ok(Vec::new()),
        }
    }

    /// The model at wave vector `k` (as given in the file), in natural units.
    pub fn response_model(&self, k: f64) -> Result<ResponseModel, CliError> {
        let bound = |oscillators: &[Oscillator]| {
            OscillatorParams::new(oscillators.to_vec()).map_err(|e| CliError::Config(e.to_string()))
        };
        let graphene = |alpha: Option<f64>, c: Option<f64>| {
            let alpha = alpha.unwrap_or(FINE_STRUCTURE);
            // with v_F = 1 the speed of light is the velocity ratio
            let c = match &self.si {
                Some(si) => si.c / si.v_fermi(),
                None => c.unwrap_or(LIGHT_TO_FERMI_RATIO),
            };
            GrapheneParams::new(k, 1.0, alpha, c).map_err(|e| CliError::Config(e.to_string()))
        };
        Ok(match &self.model {
            ModelSpec::GrapheneLongitudinal { alpha, c } => {
                ResponseModel::GrapheneLongitudinal(graphene(*alpha, *c)?)
            }
            ModelSpec::GrapheneTransverse { alpha, c } => {
                ResponseModel::GrapheneTransverse(graphene(*alpha, *c)?)
            }
            ModelSpec::Oscillator { oscillators } => ResponseModel::Oscillator(bound(oscillators)?),
            ModelSpec::Drude { omega_p, gamma } => ResponseModel::Drude(
                DrudeParams::new(*omega_p, *gamma).map_err(|e| CliError::Config(e.to_string()))?,
            ),
            ModelSpec::Plasma { omega_p } => ResponseModel::Plasma { omega_p: *omega_p },
            ModelSpec::GeneralizedPlasma {
                omega_p,
                oscillators,
            } => ResponseModel::GeneralizedPlasma {
                omega_p: *omega_p,
                bound: bound(oscillators)?,
            },
        })
    }
}
