use super::gauss_kronrod::adaptive;
use super::{Integrand, QuadConfig, QuadValue, QuadratureResult, Side, Singularity};
use crate::error::{Error, Result};

/// Relative distance between a principal-value pole and a square-root point
/// below which the two are separated by a midpoint split.
pub const NEAR_COINCIDENCE: f64 = 1e-6;

/// Relative distance below which two points are considered the same.
const COINCIDENT: f64 = 1e-12;

const MIN_TAIL_EXPONENT: f64 = 1.5;

/// Slack on the sampled decay exponent, which is biased by subleading terms.
const EXPONENT_SLACK: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Weight {
    None,
    Simple(f64),
    Double(f64),
}

impl Weight {
    fn apply<T: QuadValue>(self, value: T, x: f64) -> T {
        match self {
            Weight::None => value,
            Weight::Simple(p) => value * (1.0 / (x - p)),
            Weight::Double(p) => {
                let d = x - p;
                value * (1.0 / (d * d))
            }
        }
    }

    fn location(self) -> Option<f64> {
        match self {
            Weight::None => None,
            Weight::Simple(p) | Weight::Double(p) => Some(p),
        }
    }
}

/// Square-root points and breakpoints of the callable.
#[derive(Debug, Clone, Default)]
struct Layout {
    sqrt: Vec<(f64, Side)>,
    breaks: Vec<f64>,
}

impl Layout {
    fn points(&self) -> impl Iterator<Item = f64> + '_ {
        self.sqrt
            .iter()
            .map(|s| s.0)
            .chain(self.breaks.iter().copied())
    }

    fn sqrt_above(&self, x: f64) -> bool {
        self.sqrt.iter().any(|&(s, side)| s == x && side.above())
    }

    fn sqrt_below(&self, x: f64) -> bool {
        self.sqrt.iter().any(|&(s, side)| s == x && side.below())
    }
}

fn split_declarations<T: QuadValue>(
    integrand: &Integrand<'_, T>,
    extra: Weight,
) -> Result<(Weight, Layout)> {
    let mut weight = extra;
    let mut layout = Layout::default();
    for s in integrand.singularities() {
        match *s {
            Singularity::SimplePole(p) | Singularity::DoublePole(p) => {
                if weight != Weight::None {
                    return Err(Error::SingularityMisdeclared { at: p });
                }
                weight = if matches!(s, Singularity::SimplePole(_)) {
                    Weight::Simple(p)
                } else {
                    Weight::Double(p)
                };
            }
            Singularity::SqrtEndpoint { at, side } => layout.sqrt.push((at, side)),
            Singularity::Breakpoint(at) => layout.breaks.push(at),
        }
    }
    Ok((weight, layout))
}

fn near(a: f64, b: f64, scale: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(scale)
}

/// `edge + offset`, moved one ulp towards `toward` when the offset is lost
/// to rounding.
fn off_edge(edge: f64, offset: f64, toward: f64) -> f64 {
    let x = edge + offset;
    if x != edge {
        x
    } else if toward > edge {
        edge.next_up()
    } else {
        edge.next_down()
    }
}

/// Integrate one segment, regularizing square-root endpoints with
/// `x = x₀ + s²` (or `x = x₁ − s²`).
fn segment<T: QuadValue>(
    g: &dyn Fn(f64) -> T,
    x0: f64,
    x1: f64,
    sqrt_left: bool,
    sqrt_right: bool,
    cfg: &QuadConfig,
) -> Result<QuadratureResult<T>> {
    if x1 <= x0 {
        return Ok(QuadratureResult::zero());
    }
    match (sqrt_left, sqrt_right) {
        (false, false) => adaptive(g, x0, x1, cfg),
        (true, false) => {
            let h = |s: f64| g(off_edge(x0, s * s, x1)) * (2.0 * s);
            adaptive(&h, 0.0, (x1 - x0).sqrt(), cfg)
        }
        (false, true) => {
            let h = |s: f64| g(off_edge(x1, -s * s, x0)) * (2.0 * s);
            adaptive(&h, 0.0, (x1 - x0).sqrt(), cfg)
        }
        (true, true) => {
            let mid = 0.5 * (x0 + x1);
            let half = cfg.split(2);
            Ok(segment(g, x0, mid, true, false, &half)? + segment(g, mid, x1, false, true, &half)?)
        }
    }
}

/// Split `[lo, hi]` at every declared point (plus `extra`) and integrate
/// each piece on its own.
fn pieces<T: QuadValue>(
    g: &dyn Fn(f64) -> T,
    lo: f64,
    hi: f64,
    layout: &Layout,
    extra: &[f64],
    cfg: &QuadConfig,
) -> Result<QuadratureResult<T>> {
    if hi <= lo {
        return Ok(QuadratureResult::zero());
    }
    let mut points = vec![lo, hi];
    points.extend(
        layout
            .points()
            .chain(extra.iter().copied())
            .filter(|&x| x > lo && x < hi),
    );
    points.sort_by(f64::total_cmp);
    points.dedup();
    let cfg = cfg.split(points.len() - 1);
    let mut total = QuadratureResult::zero();
    for w in points.windows(2) {
        let (x0, x1) = (w[0], w[1]);
        total = total
            + segment(
                g,
                x0,
                x1,
                layout.sqrt_above(x0),
                layout.sqrt_below(x1),
                &cfg,
            )?;
    }
    Ok(total)
}

fn finite_value<T: QuadValue>(integrand: &Integrand<'_, T>, x: f64) -> Result<T> {
    let v = integrand.eval(x);
    if v.is_finite_value() {
        Ok(v)
    } else {
        Err(Error::SingularityMisdeclared { at: x })
    }
}

/// `PV ∫ f(x)/(x − p) dx = ∫ [f(x) − f(p)]/(x − p) dx + f(p) ln|(hi − p)/(p − lo)|`.
fn principal_value<T: QuadValue>(
    integrand: &Integrand<'_, T>,
    layout: &Layout,
    pole: f64,
    lo: f64,
    hi: f64,
    cfg: &QuadConfig,
) -> Result<QuadratureResult<T>> {
    let scale = hi - lo;
    if !(pole > lo && pole < hi)
        || near(pole, lo, scale, COINCIDENT)
        || near(pole, hi, scale, COINCIDENT)
    {
        return Err(Error::SingularityMisdeclared { at: pole });
    }
    let mut layout = layout.clone();
    if layout
        .sqrt
        .iter()
        .any(|&(s, _)| near(s, pole, scale, COINCIDENT))
    {
        return Err(Error::SingularityMisdeclared { at: pole });
    }
    layout.breaks.retain(|&x| !near(x, pole, scale, COINCIDENT));

    // keep the subtraction away from square-root points that crowd the pole
    let mut sub_lo = lo;
    let mut sub_hi = hi;
    let mut degraded = false;
    for &(s, _) in &layout.sqrt {
        let reference = if s == 0.0 { scale } else { s.abs() };
        if (s - pole).abs() < NEAR_COINCIDENCE * reference {
            let mid = 0.5 * (s + pole);
            if s < pole {
                sub_lo = sub_lo.max(mid);
            } else {
                sub_hi = sub_hi.min(mid);
            }
            degraded = true;
        }
    }

    let cfg = if degraded { cfg.lenient() } else { *cfg };
    let fp = finite_value(integrand, pole)?;
    let subtracted = |x: f64| (integrand.eval(x) - fp) * (1.0 / (x - pole));
    let weighted = |x: f64| integrand.eval(x) * (1.0 / (x - pole));
    let part = cfg.split(3);

    let mut total = pieces(&subtracted, sub_lo, sub_hi, &layout, &[pole], &part)?;
    total.value = total.value + fp * ((sub_hi - pole) / (pole - sub_lo)).ln();
    total = total + pieces(&weighted, lo, sub_lo, &layout, &[], &part)?;
    total = total + pieces(&weighted, sub_hi, hi, &layout, &[], &part)?;
    total.degraded |= degraded;
    Ok(total)
}

/// Finite part of `∫ f(x)/(x − p)² dx`.
///
/// On the largest interval symmetric about `p`, the constant and the odd
/// part of `f` are removed by folding; the constant contributes
/// `−2 f(p)/m` (Hadamard finite part over `[p − m, p + m]`). The leftover
/// asymmetric piece is an ordinary integral.
fn finite_part<T: QuadValue>(
    integrand: &Integrand<'_, T>,
    layout: &Layout,
    pole: f64,
    lo: f64,
    hi: f64,
    cfg: &QuadConfig,
) -> Result<QuadratureResult<T>> {
    let scale = hi - lo;
    if !(pole > lo && pole < hi)
        || near(pole, lo, scale, COINCIDENT)
        || near(pole, hi, scale, COINCIDENT)
    {
        return Err(Error::SingularityMisdeclared { at: pole });
    }
    if layout
        .sqrt
        .iter()
        .any(|&(s, _)| near(s, pole, scale, COINCIDENT))
    {
        return Err(Error::SingularityMisdeclared { at: pole });
    }
    let fp = finite_value(integrand, pole)?;
    let m = (pole - lo).min(hi - pole);

    let mut folded = Layout::default();
    for &(s, _) in &layout.sqrt {
        let u = if s > pole { s - pole } else { pole - s };
        if u <= m {
            folded.sqrt.push((u, Side::Both));
        }
    }
    for x in layout.breaks.iter() {
        let u = (x - pole).abs();
        if u > 0.0 && u <= m {
            folded.breaks.push(u);
        }
    }
    let symmetric =
        |u: f64| (integrand.eval(pole + u) + integrand.eval(pole - u) - fp * 2.0) * (1.0 / (u * u));
    let part = cfg.split(2);
    let mut total = pieces(&symmetric, 0.0, m, &folded, &[], &part)?;
    total.value = total.value + fp * (-2.0 / m);

    let weighted = |x: f64| Weight::Double(pole).apply(integrand.eval(x), x);
    if pole + m < hi {
        total = total + pieces(&weighted, pole + m, hi, layout, &[], &part)?;
    } else if pole - m > lo {
        total = total + pieces(&weighted, lo, pole - m, layout, &[], &part)?;
    }
    Ok(total)
}

fn finite_interval<T: QuadValue>(
    integrand: &Integrand<'_, T>,
    weight: Weight,
    layout: &Layout,
    lo: f64,
    hi: f64,
    cfg: &QuadConfig,
) -> Result<QuadratureResult<T>> {
    match weight {
        Weight::None => pieces(&|x| integrand.eval(x), lo, hi, layout, &[], cfg),
        Weight::Simple(p) => principal_value(integrand, layout, p, lo, hi, cfg),
        Weight::Double(p) => finite_part(integrand, layout, p, lo, hi, cfg),
    }
}

/// Empirical decay exponent of `|g|` between `10⁴·x` and `10⁶·x`.
fn decay_exponent<T: QuadValue>(g: &dyn Fn(f64) -> T, cutoff: f64) -> Option<f64> {
    let near_value = g(cutoff * 1e4).magnitude();
    let far_value = g(cutoff * 1e6).magnitude();
    if near_value == 0.0 || far_value == 0.0 || !near_value.is_finite() || !far_value.is_finite() {
        return None;
    }
    Some((near_value / far_value).log10() / 2.0)
}

fn tail<T: QuadValue>(
    g: &dyn Fn(f64) -> T,
    cutoff: f64,
    cfg: &QuadConfig,
) -> Result<QuadratureResult<T>> {
    if !(cutoff > 0.0) {
        return Err(Error::InvalidParameters(format!(
            "tail cutoff must be positive, got {cutoff}"
        )));
    }
    if let Some(exponent) = decay_exponent(g, cutoff) {
        if exponent < MIN_TAIL_EXPONENT - EXPONENT_SLACK {
            return Err(Error::DecayTooSlow { exponent });
        }
    }
    // x = cutoff / s², so that decay as slow as x^-1.5 still maps to a
    // bounded integrand on (0, 1]
    let h = |s: f64| {
        let x = cutoff / (s * s);
        g(x) * (2.0 * cutoff / (s * s * s))
    };
    adaptive(&h, 0.0, 1.0, cfg)
}

fn default_cutoff(lo: f64, layout: &Layout, weight: Weight, scale: Option<f64>) -> f64 {
    let top = layout.points().chain(weight.location()).fold(lo, f64::max);
    let span = (top - lo).max(top.abs()).max(scale.unwrap_or(1.0));
    top + 100.0 * span
}

fn integrate_weighted<T: QuadValue>(
    integrand: &Integrand<'_, T>,
    extra: Weight,
    a: f64,
    b: f64,
    cfg: &QuadConfig,
) -> Result<QuadratureResult<T>> {
    if !a.is_finite() || b.is_nan() || !(b > a) {
        return Err(Error::InvalidParameters(format!(
            "integration interval must satisfy finite a < b, got ({a}, {b})"
        )));
    }
    let (weight, layout) = split_declarations(integrand, extra)?;
    for x in layout.points() {
        if x < a || x > b {
            return Err(Error::SingularityMisdeclared { at: x });
        }
    }
    if b.is_finite() {
        return finite_interval(integrand, weight, &layout, a, b, cfg);
    }
    let cutoff = integrand
        .tail_cutoff
        .unwrap_or_else(|| default_cutoff(a, &layout, weight, integrand.scale));
    let beyond = layout
        .points()
        .chain(weight.location())
        .any(|x| x >= cutoff);
    if beyond || cutoff <= a {
        return Err(Error::InvalidParameters(format!(
            "tail cutoff {cutoff} must exceed every declared point"
        )));
    }
    let part = cfg.split(2);
    let body = finite_interval(integrand, weight, &layout, a, cutoff, &part)?;
    let g = |x: f64| weight.apply(integrand.eval(x), x);
    Ok(body + tail(&g, cutoff, &part)?)
}

/// Integrate over `[a, b]`, where `b` may be `+∞`, honouring every declared
/// singularity.
pub fn integrate<T: QuadValue>(
    integrand: &Integrand<'_, T>,
    a: f64,
    b: f64,
    cfg: &QuadConfig,
) -> Result<QuadratureResult<T>> {
    integrate_weighted(integrand, Weight::None, a, b, cfg)
}

/// `PV ∫ₐᵇ f(x)/(x − pole) dx` for `a < pole < b`.
pub fn pv_simple_pole<T: QuadValue>(
    f: &Integrand<'_, T>,
    pole: f64,
    interval: (f64, f64),
    cfg: &QuadConfig,
) -> Result<QuadratureResult<T>> {
    let (a, b) = interval;
    if !(pole > a && pole < b) {
        return Err(Error::SingularityMisdeclared { at: pole });
    }
    integrate_weighted(f, Weight::Simple(pole), a, b, cfg)
}

/// `∫ f(x)/(x − p)² dx` for an integrand declared with `DoublePole(p)`.
///
/// Only the finite part is defined when `f(p) ≠ 0`; when the numerator
/// vanishes at the pole to second order the result is an ordinary integral.
pub fn pv_double_pole<T: QuadValue>(
    f: &Integrand<'_, T>,
    interval: (f64, f64),
    cfg: &QuadConfig,
) -> Result<QuadratureResult<T>> {
    if !f
        .singularities()
        .iter()
        .any(|s| matches!(s, Singularity::DoublePole(_)))
    {
        return Err(Error::InvalidParameters(
            "pv_double_pole needs an integrand declaring a double pole".into(),
        ));
    }
    integrate(f, interval.0, interval.1, cfg)
}

/// Integral of an integrand with at least one declared square-root endpoint;
/// `b` may be infinite and a declared simple pole is taken in the
/// principal-value sense.
pub fn sqrt_endpoint_integral<T: QuadValue>(
    f: &Integrand<'_, T>,
    interval: (f64, f64),
    cfg: &QuadConfig,
) -> Result<QuadratureResult<T>> {
    if !f
        .singularities()
        .iter()
        .any(|s| matches!(s, Singularity::SqrtEndpoint { .. }))
    {
        return Err(Error::InvalidParameters(
            "sqrt_endpoint_integral needs a declared square-root endpoint".into(),
        ));
    }
    integrate(f, interval.0, interval.1, cfg)
}

/// `∫_cutoff^∞` of the (weighted) integrand, which must decay at least like
/// `x^-1.5`.
pub fn tail_integral<T: QuadValue>(
    f: &Integrand<'_, T>,
    cutoff: f64,
    cfg: &QuadConfig,
) -> Result<QuadratureResult<T>> {
    let (weight, layout) = split_declarations(f, Weight::None)?;
    if let Some(x) = layout
        .points()
        .chain(weight.location())
        .find(|&x| x > cutoff)
    {
        return Err(Error::SingularityMisdeclared { at: x });
    }
    let g = |x: f64| weight.apply(f.eval(x), x);
    tail(&g, cutoff, cfg)
}
