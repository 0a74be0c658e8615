//! Local reference media: oscillator insulators, Drude and plasma metals.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One Lorentz oscillator `g / (ω₀² − ω² − iγω)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Oscillator {
    /// Oscillator strength (frequency squared).
    pub strength: f64,
    /// Resonance frequency, nonzero.
    pub frequency: f64,
    /// Damping, non-negative.
    pub damping: f64,
}

/// A set of oscillators describing bound (core) electrons.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OscillatorParams {
    pub oscillators: Vec<Oscillator>,
}

impl OscillatorParams {
    pub fn new(oscillators: Vec<Oscillator>) -> Result<Self> {
        let params = Self { oscillators };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        for (j, osc) in self.oscillators.iter().enumerate() {
            if !(osc.strength.is_finite() && osc.frequency.is_finite() && osc.damping.is_finite()) {
                return Err(Error::InvalidParameters(format!(
                    "oscillator {j} has non-finite parameters"
                )));
            }
            if osc.frequency == 0.0 {
                return Err(Error::InvalidParameters(format!(
                    "oscillator {j} has zero resonance frequency"
                )));
            }
            if osc.damping < 0.0 {
                return Err(Error::InvalidParameters(format!(
                    "oscillator {j} has negative damping"
                )));
            }
        }
        Ok(())
    }

    pub fn susceptibility(&self, omega: Complex64) -> Complex64 {
        self.oscillators
            .iter()
            .map(|o| {
                let denom = o.frequency * o.frequency
                    - omega * omega
                    - Complex64::new(0.0, o.damping) * omega;
                o.strength / denom
            })
            .sum()
    }

    /// Real and imaginary parts on the real axis, written out so that both
    /// parities hold bit-for-bit.
    pub fn susceptibility_real(&self, omega: f64) -> Complex64 {
        let mut re = 0.0;
        let mut im = 0.0;
        for o in &self.oscillators {
            let detuning = o.frequency * o.frequency - omega * omega;
            let loss = o.damping * omega;
            let denom = detuning * detuning + loss * loss;
            re += o.strength * detuning / denom;
            im += o.strength * loss / denom;
        }
        Complex64::new(re, im)
    }

    pub fn static_susceptibility(&self) -> f64 {
        self.oscillators
            .iter()
            .map(|o| o.strength / (o.frequency * o.frequency))
            .sum()
    }

    pub fn is_lossless(&self) -> bool {
        self.oscillators.iter().any(|o| o.damping == 0.0)
    }

    pub(crate) fn resonances(&self) -> impl Iterator<Item = f64> + '_ {
        self.oscillators.iter().map(|o| o.frequency.abs())
    }
}

/// Drude metal `−ω_p² / (ω(ω + iγ))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrudeParams {
    pub omega_p: f64,
    pub gamma: f64,
}

impl DrudeParams {
    pub fn new(omega_p: f64, gamma: f64) -> Result<Self> {
        let params = Self { omega_p, gamma };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega_p.is_finite() && self.omega_p > 0.0) {
            return Err(Error::InvalidParameters(format!(
                "plasma frequency must be positive, got {}",
                self.omega_p
            )));
        }
        if !(self.gamma.is_finite() && self.gamma >= 0.0) {
            return Err(Error::InvalidParameters(format!(
                "relaxation parameter must be non-negative, got {}",
                self.gamma
            )));
        }
        Ok(())
    }

    pub fn susceptibility(&self, omega: Complex64) -> Complex64 {
        -self.omega_p * self.omega_p / (omega * (omega + Complex64::new(0.0, self.gamma)))
    }

    pub fn susceptibility_real(&self, omega: f64) -> Complex64 {
        let wp2 = self.omega_p * self.omega_p;
        if self.gamma == 0.0 {
            return Complex64::new(-wp2 / (omega * omega), 0.0);
        }
        let denom = omega * omega + self.gamma * self.gamma;
        Complex64::new(-wp2 / denom, wp2 * self.gamma / (omega * denom))
    }
}

pub(crate) fn validate_plasma_frequency(omega_p: f64) -> Result<()> {
    if omega_p.is_finite() && omega_p > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameters(format!(
            "plasma frequency must be positive, got {omega_p}"
        )))
    }
}
