//! Pristine graphene at zero temperature in the Dirac model.
//!
//! Both permittivities are built from the two independent components of the
//! one-loop polarization tensor, `Π₀₀` and the combination
//! `Π = k²Π_tr + (ω² − c²k²)Π₀₀/c²`. Every closed form depends on the
//! frequency only through the branch root `S(ω) = √(b² − ω²)`, where
//! `b = v_F k` is the branch frequency.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fine-structure constant used when no other value is configured.
pub const FINE_STRUCTURE: f64 = 1.0 / 137.036;

/// Speed of light in m/s.
pub const SPEED_OF_LIGHT_SI: f64 = 299_792_458.0;

/// Ratio `c / v_F` used for the default Fermi velocity.
pub const LIGHT_TO_FERMI_RATIO: f64 = 300.0;

/// Relative distance to `±b` below which a frequency is treated as sitting
/// on a branch point.
pub const BRANCH_POINT_TOLERANCE: f64 = 1e-12;

/// Parameters of a graphene sheet probed at wave vector `k`.
///
/// Any consistent unit system works. In natural units the branch frequency is
/// one (`k = v_fermi = 1`) and `c` is the light-to-Fermi velocity ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrapheneParams {
    /// Wave-vector magnitude.
    pub k: f64,
    /// Fermi velocity.
    pub v_fermi: f64,
    /// Fine-structure constant.
    pub alpha: f64,
    /// Speed of light.
    pub c: f64,
}

impl GrapheneParams {
    pub fn new(k: f64, v_fermi: f64, alpha: f64, c: f64) -> Result<Self> {
        let params = Self {
            k,
            v_fermi,
            alpha,
            c,
        };
        params.validate()?;
        Ok(params)
    }

    /// Natural units: `b = 1`, `c = 300`, default fine-structure constant.
    pub fn natural() -> Self {
        Self::natural_with_k(1.0)
    }

    /// Natural units with `v_F = 1`, so that the branch frequency equals `k`.
    pub fn natural_with_k(k: f64) -> Self {
        Self {
            k,
            v_fermi: 1.0,
            alpha: FINE_STRUCTURE,
            c: LIGHT_TO_FERMI_RATIO,
        }
    }

    /// SI units with `v_F = c/300`; `k` in 1/m, frequencies in rad/s.
    pub fn si(k: f64) -> Self {
        Self {
            k,
            v_fermi: SPEED_OF_LIGHT_SI / LIGHT_TO_FERMI_RATIO,
            alpha: FINE_STRUCTURE,
            c: SPEED_OF_LIGHT_SI,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.k, self.v_fermi, self.alpha, self.c]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidParameters(
                "graphene parameters must be finite".into(),
            ));
        }
        if self.k <= 0.0 {
            return Err(Error::InvalidParameters(format!(
                "wave vector must be positive, got {}",
                self.k
            )));
        }
        if !(self.v_fermi > 0.0 && self.v_fermi < self.c) {
            return Err(Error::InvalidParameters(format!(
                "need 0 < v_fermi < c, got v_fermi = {}, c = {}",
                self.v_fermi, self.c
            )));
        }
        if self.alpha <= 0.0 {
            return Err(Error::InvalidParameters(format!(
                "fine-structure constant must be positive, got {}",
                self.alpha
            )));
        }
        Ok(())
    }

    /// Branch frequency `b = v_F k`.
    pub fn branch_frequency(&self) -> f64 {
        self.v_fermi * self.k
    }

    /// Dimensionless coupling `g = π α c / (2 v_F)`, equal to `ε^L(0, k) − 1`.
    pub fn coupling(&self) -> f64 {
        PI * self.alpha * self.c / (2.0 * self.v_fermi)
    }

    /// `π α k c / 2 = g b`, the common prefactor of both susceptibilities.
    pub fn prefactor(&self) -> f64 {
        0.5 * PI * self.alpha * self.k * self.c
    }

    /// Coefficient `π α k² c v_F / 2` of the `1/ω²` pole of `ε^Tr`.
    pub fn double_pole_coefficient(&self) -> f64 {
        self.prefactor() * self.branch_frequency()
    }

    /// Whether a real frequency is within tolerance of `±b`.
    pub fn is_branch_point(&self, omega: f64) -> bool {
        let b = self.branch_frequency();
        (omega.abs() - b).abs() < BRANCH_POINT_TOLERANCE * b
    }

    fn is_branch_point_complex(&self, omega: Complex64) -> bool {
        let b = self.branch_frequency();
        let tol = BRANCH_POINT_TOLERANCE * b;
        (omega - b).norm() < tol || (omega + b).norm() < tol
    }

    pub(crate) fn at_branch_point(&self, omega: Complex64) -> bool {
        if omega.im == 0.0 {
            self.is_branch_point(omega.re)
        } else {
            self.is_branch_point_complex(omega)
        }
    }
}

impl Default for GrapheneParams {
    fn default() -> Self {
        Self::natural()
    }
}

/// A quantity expressed as a multiple of ħ.
///
/// The polarization tensor carries one power of ħ which cancels from both
/// permittivities; only the coefficient is stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HbarMultiple(pub Complex64);

impl HbarMultiple {
    pub fn coefficient(self) -> Complex64 {
        self.0
    }
}

/// `S(ω) = √(b² − ω²)` on the sheet fixed by `S(0) = +b` and continuity in
/// the upper half-plane.
///
/// On the real axis outside `[−b, b]` this is the boundary value from above,
/// `S = −i sgn(ω) √(ω² − b²)`; in the open upper half-plane it is the
/// principal root, which has no cut there. Asymptotically `S(ω) → −iω`.
pub fn branch_root(b: f64, omega: Complex64) -> Complex64 {
    if omega.im == 0.0 {
        let x = omega.re.abs();
        let radicand = (b - x) * (b + x);
        if radicand >= 0.0 {
            Complex64::new(radicand.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, -omega.re.signum() * (-radicand).sqrt())
        }
    } else {
        ((b - omega) * (b + omega)).sqrt()
    }
}

fn real_branch_root(params: &GrapheneParams, omega: f64) -> Result<Complex64> {
    if params.is_branch_point(omega) {
        return Err(Error::BranchPointSingularity {
            omega,
            branch: params.branch_frequency(),
        });
    }
    Ok(branch_root(
        params.branch_frequency(),
        Complex64::new(omega, 0.0),
    ))
}

/// `Π₀₀(ω, k)` on the real axis, in units of ħ.
///
/// Real and positive for `|ω| < b`; `±i π α k² c / √(ω² − b²)` above and
/// below the branch points.
pub fn polarization_00(params: &GrapheneParams, omega: f64) -> Result<HbarMultiple> {
    let root = real_branch_root(params, omega)?;
    let value = PI * params.alpha * params.k * params.k * params.c / root;
    Ok(HbarMultiple(value))
}

/// The combination `Π(ω, k)` on the real axis, in units of ħ.
pub fn polarization_combo(params: &GrapheneParams, omega: f64) -> Result<HbarMultiple> {
    let root = real_branch_root(params, omega)?;
    let value = root * (PI * params.alpha * params.k * params.k / params.c);
    Ok(HbarMultiple(value))
}

/// `ε^L − 1 = Π₀₀ / (2ħk)`.
pub fn longitudinal_from_polarization(params: &GrapheneParams, pi00: HbarMultiple) -> Complex64 {
    pi00.0 / (2.0 * params.k)
}

/// `ε^Tr − 1 = −c² Π / (2ħkω²)`.
pub fn transverse_from_polarization(
    params: &GrapheneParams,
    omega: f64,
    combo: HbarMultiple,
) -> Complex64 {
    -combo.0 * (params.c * params.c / (2.0 * params.k * omega * omega))
}

/// `ε^L(ω, k) − 1 = g b / S(ω)`. No singular-set checks.
pub(crate) fn longitudinal_susceptibility(params: &GrapheneParams, omega: Complex64) -> Complex64 {
    params.prefactor() / branch_root(params.branch_frequency(), omega)
}

/// `ε^Tr(ω, k) − 1 = −g b S(ω) / ω²`. No singular-set checks.
pub(crate) fn transverse_susceptibility(params: &GrapheneParams, omega: Complex64) -> Complex64 {
    let root = branch_root(params.branch_frequency(), omega);
    if omega.im == 0.0 {
        let x = omega.re;
        let scale = params.prefactor() / (x * x);
        // adding +0 turns the −0 imaginary part inside the branch points into +0
        Complex64::new(-root.re * scale, -root.im * scale + 0.0)
    } else {
        -root * params.prefactor() / (omega * omega)
    }
}

/// `Re ε^Tr − 1 + C/ω²` on the real axis, free of the double pole.
///
/// Inside the branch points this is `g b / (b + √(b² − ω²))`, outside it is
/// `C/ω²` because the real part of the susceptibility vanishes there.
pub(crate) fn transverse_regular_real(params: &GrapheneParams, omega: f64) -> f64 {
    let b = params.branch_frequency();
    let x = omega.abs();
    if x < b {
        let root = ((b - x) * (b + x)).sqrt();
        params.prefactor() / (b + root)
    } else {
        params.double_pole_coefficient() / (x * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: Complex64, b: Complex64, rel: f64) {
        let scale = b.norm().max(f64::MIN_POSITIVE);
        assert!((a - b).norm() <= rel * scale, "{a} vs {b}");
    }

    #[test]
    fn polarization_00_static_limit_is_real() {
        let p = GrapheneParams::natural();
        let value = polarization_00(&p, 0.0).unwrap().coefficient();
        let expected = PI * p.alpha * p.k * p.c / p.v_fermi;
        assert_eq!(value.im, 0.0);
        assert_close(value, Complex64::new(expected, 0.0), 1e-15);
    }

    #[test]
    fn polarization_00_sign_flips_across_origin() {
        let p = GrapheneParams::si(1e7);
        let b = p.branch_frequency();
        let magnitude = PI * p.alpha * p.k * p.k * p.c / (b * 3f64.sqrt());
        let above = polarization_00(&p, 2.0 * b).unwrap().coefficient();
        let below = polarization_00(&p, -2.0 * b).unwrap().coefficient();
        assert_close(above, Complex64::new(0.0, magnitude), 1e-14);
        assert_close(below, Complex64::new(0.0, -magnitude), 1e-14);
    }

    #[test]
    fn polarization_combo_values() {
        let p = GrapheneParams::natural_with_k(2.5);
        let b = p.branch_frequency();
        let at_zero = polarization_combo(&p, 0.0).unwrap().coefficient();
        let expected_zero = PI * p.alpha * p.k * p.k * p.v_fermi * p.k / p.c;
        assert_close(at_zero, Complex64::new(expected_zero, 0.0), 1e-15);

        let above = polarization_combo(&p, 2.0 * b).unwrap().coefficient();
        let expected = -PI * p.alpha * p.k * p.k / p.c * b * 3f64.sqrt();
        assert_close(above, Complex64::new(0.0, expected), 1e-14);
    }

    #[test]
    fn polarization_rejects_branch_points() {
        let p = GrapheneParams::natural();
        let b = p.branch_frequency();
        for omega in [b, -b, b * (1.0 + 1e-14)] {
            assert!(matches!(
                polarization_00(&p, omega),
                Err(Error::BranchPointSingularity { .. })
            ));
            assert!(polarization_combo(&p, omega).is_err());
        }
    }

    #[test]
    fn branch_root_limits() {
        let b = 1.5;
        assert_eq!(
            branch_root(b, Complex64::new(0.0, 0.0)),
            Complex64::new(b, 0.0)
        );
        let far = Complex64::new(3e3, 4e3);
        let ratio = branch_root(b, far) / (Complex64::new(0.0, -1.0) * far);
        assert!((ratio - 1.0).norm() < 1e-6);
        // boundary value from above agrees with the real-axis convention
        for x in [-4.0, -2.0, 2.0, 4.0] {
            let on_axis = branch_root(b, Complex64::new(x, 0.0));
            let above = branch_root(b, Complex64::new(x, 1e-12));
            assert!((on_axis - above).norm() < 1e-9, "x = {x}");
        }
    }

    #[test]
    fn regular_real_part_is_continuous_at_branch() {
        let p = GrapheneParams::natural();
        let b = p.branch_frequency();
        let inside = transverse_regular_real(&p, b * (1.0 - 1e-13));
        let outside = transverse_regular_real(&p, b * (1.0 + 1e-13));
        assert!((inside - outside).abs() < 1e-5 * p.coupling());
        assert!((transverse_regular_real(&p, 0.0) - p.coupling() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn validation() {
        assert!(GrapheneParams::new(0.0, 1.0, 0.01, 300.0).is_err());
        assert!(GrapheneParams::new(1.0, 301.0, 0.01, 300.0).is_err());
        assert!(GrapheneParams::new(1.0, 1.0, -0.01, 300.0).is_err());
        assert!(GrapheneParams::new(1.0, 1.0, 0.01, 300.0).is_ok());
    }
}
