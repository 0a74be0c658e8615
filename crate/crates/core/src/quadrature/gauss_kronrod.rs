//! 21-point Gauss–Kronrod panels and a globally adaptive driver.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{QuadConfig, QuadValue, QuadratureResult};
use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Evaluations per panel.
pub const PANEL_EVALUATIONS: usize = 21;

/// One panel estimate.
#[derive(Debug, Clone, Copy)]
pub struct Panel<T> {
    pub a: f64,
    pub b: f64,
    pub value: T,
    pub error: f64,
}

fn checked<T: QuadValue>(f: &dyn Fn(f64) -> T, x: f64) -> Result<T> {
    let v = f(x);
    if v.is_finite_value() {
        Ok(v)
    } else {
        Err(Error::SingularityMisdeclared { at: x })
    }
}

/// Apply the 21-point Kronrod rule and its embedded 10-point Gauss rule on
/// `[a, b]`. The error estimate is the QUADPACK rescaling of `|K − G|`.
pub fn gk21<T: QuadValue>(f: &dyn Fn(f64) -> T, a: f64, b: f64) -> Result<Panel<T>> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = checked(f, center)?;

    let mut kronrod = f_center * WGK[10];
    let mut gauss = T::zero();
    let mut res_abs = f_center.magnitude() * WGK[10];
    let mut samples = [(T::zero(), T::zero()); 10];

    for (j, sample) in samples.iter_mut().enumerate() {
        let dx = half * XGK[j];
        let lo = checked(f, center - dx)?;
        let hi = checked(f, center + dx)?;
        let pair = lo + hi;
        kronrod = kronrod + pair * WGK[j];
        res_abs += WGK[j] * (lo.magnitude() + hi.magnitude());
        if j % 2 == 1 {
            gauss = gauss + pair * WG[j / 2];
        }
        *sample = (lo, hi);
    }

    let mean = kronrod * 0.5;
    let mut res_asc = WGK[10] * (f_center - mean).magnitude();
    for (j, (lo, hi)) in samples.iter().enumerate() {
        res_asc += WGK[j] * ((*lo - mean).magnitude() + (*hi - mean).magnitude());
    }

    let abs_half = half.abs();
    let value = kronrod * half;
    let res_abs = res_abs * abs_half;
    let res_asc = res_asc * abs_half;
    let mut error = ((kronrod - gauss) * half).magnitude();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok(Panel { a, b, value, error })
}

struct Queued<T>(Panel<T>);

impl<T> PartialEq for Queued<T> {
    fn eq(&self, other: &Self) -> bool {
        self.0.error == other.0.error
    }
}
impl<T> Eq for Queued<T> {}
impl<T> PartialOrd for Queued<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Queued<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.error.total_cmp(&other.0.error)
    }
}

/// Globally adaptive integration of a smooth integrand on a finite interval.
///
/// The panel with the largest error is bisected until the summed error is
/// below `max(abs_tol, rel_tol·|I|)`. Panels narrower than a few ulps are
/// retired rather than split.
pub fn adaptive<T: QuadValue>(
    f: &dyn Fn(f64) -> T,
    a: f64,
    b: f64,
    cfg: &QuadConfig,
) -> Result<QuadratureResult<T>> {
    if a == b {
        return Ok(QuadratureResult::zero());
    }
    let first = gk21(f, a, b)?;
    let mut evaluations = PANEL_EVALUATIONS;
    let mut total = first.value;
    let mut total_error = first.error;
    let mut retired_value = T::zero();
    let mut retired_error = 0.0;

    let mut heap = BinaryHeap::new();
    heap.push(Queued(first));
    let mut panels = 1usize;

    loop {
        let tolerance = cfg.abs_tol.max(cfg.rel_tol * total.magnitude());
        if total_error <= tolerance {
            break;
        }
        let Some(Queued(worst)) = heap.pop() else {
            break;
        };
        let mid = 0.5 * (worst.a + worst.b);
        let width = (worst.b - worst.a).abs();
        let too_narrow = width <= 64.0 * f64::EPSILON * mid.abs().max(f64::MIN_POSITIVE)
            || mid == worst.a
            || mid == worst.b;
        if too_narrow || panels >= cfg.max_subdivisions {
            if panels >= cfg.max_subdivisions {
                heap.push(Queued(worst));
                break;
            }
            retired_value = retired_value + worst.value;
            retired_error += worst.error;
            continue;
        }
        let left = gk21(f, worst.a, mid)?;
        let right = gk21(f, mid, worst.b)?;
        evaluations += 2 * PANEL_EVALUATIONS;
        panels += 1;
        total = total - worst.value + left.value + right.value;
        total_error += left.error + right.error - worst.error;
        heap.push(Queued(left));
        heap.push(Queued(right));

        // resum periodically so that the running error does not drift
        if panels.is_multiple_of(64) {
            let (v, e) = heap
                .iter()
                .fold((retired_value, retired_error), |(v, e), q| {
                    (v + q.0.value, e + q.0.error)
                });
            total = v;
            total_error = e;
        }
    }

    let (value, error) = heap
        .iter()
        .fold((retired_value, retired_error), |(v, e), q| {
            (v + q.0.value, e + q.0.error)
        });
    let tolerance = cfg.abs_tol.max(cfg.rel_tol * value.magnitude());
    if error > tolerance && !value.is_finite_value() {
        return Err(Error::SingularityMisdeclared { at: 0.5 * (a + b) });
    }
    if error > tolerance && panels >= cfg.max_subdivisions && cfg.strict {
        return Err(Error::ToleranceNotMet {
            value: value.magnitude(),
            error,
            evaluations,
        });
    }
    Ok(QuadratureResult {
        value,
        abs_error_estimate: error,
        evaluations,
        degraded: error > tolerance,
    })
}

/// Non-adaptive composite rule on `2^depth` equal panels.
pub fn uniform<T: QuadValue>(
    f: &dyn Fn(f64) -> T,
    a: f64,
    b: f64,
    depth: u32,
) -> Result<QuadratureResult<T>> {
    let n = 1usize << depth;
    let h = (b - a) / n as f64;
    let mut value = T::zero();
    let mut error = 0.0;
    for i in 0..n {
        let lo = a + h * i as f64;
        let hi = if i + 1 == n {
            b
        } else {
            a + h * (i + 1) as f64
        };
        let p = gk21(f, lo, hi)?;
        value = value + p.value;
        error += p.error;
    }
    Ok(QuadratureResult {
        value,
        abs_error_estimate: error,
        evaluations: n * PANEL_EVALUATIONS,
        degraded: false,
    })
}
