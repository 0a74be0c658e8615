//! Quadrature for integrands with poles on the path, square-root endpoint
//! singularities and algebraic tails.
//!
//! An [`Integrand`] is a callable plus a list of declared singularities. Pole
//! declarations act as weights: declaring `SimplePole(p)` means the integral
//! of `f(x)/(x − p)` is requested, `DoublePole(p)` the integral of
//! `f(x)/(x − p)²`. Square-root declarations and breakpoints describe the
//! callable itself.
//!
//! Principal values are computed by analytic subtraction of the pole, never
//! by symmetric cancellation on a grid.

mod gauss_kronrod;
mod singular;

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

pub use gauss_kronrod::{adaptive, gk21, uniform, Panel, PANEL_EVALUATIONS};
pub use singular::{
    integrate, pv_double_pole, pv_simple_pole, sqrt_endpoint_integral, tail_integral,
    NEAR_COINCIDENCE,
};

/// Values that can be integrated: real or complex.
pub trait QuadValue:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + 'static
{
    fn zero() -> Self;
    fn magnitude(self) -> f64;
    fn is_finite_value(self) -> bool;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn is_finite_value(self) -> bool {
        self.is_finite()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn is_finite_value(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Tolerances for one integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of bisections per adaptive segment.
    pub max_subdivisions: usize,
    /// When false, running out of subdivisions sets `degraded` on the
    /// result instead of failing.
    pub strict: bool,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_subdivisions: 2000,
            strict: true,
        }
    }
}

impl QuadConfig {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        }
    }

    /// Tighten both tolerances by `factor`.
    pub fn refined(&self, factor: f64) -> Self {
        Self {
            abs_tol: self.abs_tol / factor,
            rel_tol: self.rel_tol / factor,
            ..*self
        }
    }

    pub(crate) fn lenient(&self) -> Self {
        Self {
            strict: false,
            ..*self
        }
    }

    pub(crate) fn split(&self, pieces: usize) -> Self {
        Self {
            abs_tol: self.abs_tol / pieces.max(1) as f64,
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<T> {
    pub value: T,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
    /// Set when a pole sat too close to a branch point, or a panel could not
    /// be refined further; the error estimate is then less reliable.
    pub degraded: bool,
}

impl<T: QuadValue> QuadratureResult<T> {
    pub fn zero() -> Self {
        Self {
            value: T::zero(),
            abs_error_estimate: 0.0,
            evaluations: 0,
            degraded: false,
        }
    }

    pub fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            abs_error_estimate: self.abs_error_estimate * factor.abs(),
            ..self
        }
    }
}

impl<T: QuadValue> Add for QuadratureResult<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            value: self.value + rhs.value,
            abs_error_estimate: self.abs_error_estimate + rhs.abs_error_estimate,
            evaluations: self.evaluations + rhs.evaluations,
            degraded: self.degraded || rhs.degraded,
        }
    }
}

/// Which side of a square-root point the singular behaviour is on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Below,
    Above,
    Both,
}

impl Side {
    fn below(self) -> bool {
        matches!(self, Side::Below | Side::Both)
    }
    fn above(self) -> bool {
        matches!(self, Side::Above | Side::Both)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Singularity {
    /// Weight `1/(x − at)`, principal value.
    SimplePole(f64),
    /// Weight `1/(x − at)²`, finite part.
    DoublePole(f64),
    /// The callable behaves like `|x − at|^(±1/2)` times a smooth function.
    SqrtEndpoint { at: f64, side: Side },
    /// The callable is smooth on either side but has structure at `at`.
    Breakpoint(f64),
}

/// A callable with its declared singularities.
pub struct Integrand<'f, T> {
    f: Box<dyn Fn(f64) -> T + 'f>,
    singularities: Vec<Singularity>,
    scale: Option<f64>,
    tail_cutoff: Option<f64>,
}

impl<'f, T: QuadValue> Integrand<'f, T> {
    pub fn new(f: impl Fn(f64) -> T + 'f) -> Self {
        Self {
            f: Box::new(f),
            singularities: Vec::new(),
            scale: None,
            tail_cutoff: None,
        }
    }

    pub fn with(mut self, singularity: Singularity) -> Self {
        self.singularities.push(singularity);
        self
    }

    pub fn sqrt_at(self, at: f64, side: Side) -> Self {
        self.with(Singularity::SqrtEndpoint { at, side })
    }

    pub fn breakpoint(self, at: f64) -> Self {
        self.with(Singularity::Breakpoint(at))
    }

    /// Characteristic length of the integration variable; sets the default
    /// tail cutoff on semi-infinite intervals.
    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = Some(scale);
        self
    }

    /// Where to hand over to the tail map on semi-infinite intervals.
    pub fn with_tail_cutoff(mut self, cutoff: f64) -> Self {
        self.tail_cutoff = Some(cutoff);
        self
    }

    pub fn eval(&self, x: f64) -> T {
        (self.f)(x)
    }

    pub fn singularities(&self) -> &[Singularity] {
        &self.singularities
    }
}
