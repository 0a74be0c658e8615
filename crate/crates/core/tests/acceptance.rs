//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test --test acceptance`.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use graphene_dispersion::contour::{residue_identity, rho_sweep, ContourSpec};
use graphene_dispersion::kramers_kronig::{kk_im_from_re, kk_imag_axis, kk_re_from_im};
use graphene_dispersion::quadrature::{
    integrate, pv_double_pole, pv_simple_pole, sqrt_endpoint_integral, tail_integral, Integrand,
    QuadConfig, Side, Singularity,
};
use graphene_dispersion::response::{
    DrudeParams, GrapheneParams, Oscillator, OscillatorParams, ResponseModel,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn log_grid(start: f64, stop: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|j| (start.ln() + (stop.ln() - start.ln()) * j as f64 / (n - 1) as f64).exp())
        .collect()
}

fn wave_vectors() -> [f64; 4] {
    [0.1, 1.0, 10.0, 100.0]
}

fn quadrature_tight() -> QuadConfig {
    QuadConfig::new(1e-14, 1e-13)
}

/// Piecewise real-axis forms with `g k v_F` written out, as an oracle for
/// the analytic-continuation implementation.
fn piecewise(p: &GrapheneParams, transverse: bool, w: f64) -> Complex64 {
    let b = p.v_fermi * p.k;
    let gkv = PI * p.alpha * p.c / (2.0 * p.v_fermi) * p.k * p.v_fermi;
    let x = w.abs();
    let radicand = (b - x) * (b + x);
    let sign = w.signum();
    match (transverse, x < b) {
        (false, true) => Complex64::new(1.0 + gkv / radicand.sqrt(), 0.0),
        (false, false) => Complex64::new(1.0, sign * gkv / (-radicand).sqrt()),
        (true, true) => Complex64::new(1.0 - gkv * radicand.sqrt() / (w * w), 0.0),
        (true, false) => Complex64::new(1.0, sign * gkv * (-radicand).sqrt() / (w * w)),
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut worst: f64 = 0.0;
    let mut worst_parity: f64 = 0.0;
    let mut worst_naive: f64 = 0.0;
    let mut count = 0;
    while count < 10_000 {
        let k = 10f64.powf(rng.gen_range(-2.0..2.0));
        let p = GrapheneParams::natural_with_k(k);
        let w = p.branch_frequency() * rng.gen_range(-5.0..5.0);
        if p.is_branch_point(w) || w == 0.0 {
            continue;
        }
        count += 1;
        for transverse in [false, true] {
            let model = if transverse {
                ResponseModel::GrapheneTransverse(p)
            } else {
                ResponseModel::GrapheneLongitudinal(p)
            };
            let got = model.eval_real(w).get().expect("regular point");
            let want = piecewise(&p, transverse, w);
            // ε^Tr crosses zero inside the branch points, so the error is
            // measured against the size of the summed terms
            let terms = 1.0 + (want - 1.0).norm();
            worst = worst.max((got - want).norm() / terms);
            worst_naive = worst_naive.max((got - want).norm() / want.norm());
            let (re, im) = model.parity_defect(w).unwrap();
            worst_parity = worst_parity.max(re.max(im) / got.norm());
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-14 && worst_parity <= 1e-14 && elapsed < Duration::from_secs(1),
        format!(
            "max rel error {worst:.2e} (|ε|-relative {worst_naive:.2e}), max parity defect {worst_parity:.2e}, {} ms",
            elapsed.as_millis()
        ),
    )
}

fn rel(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let cfg = quadrature_tight();
    let b = 1.3;
    let mut worst: f64 = 0.0;
    let mut notes = Vec::new();
    let mut track = |name: &str, err: f64| {
        if err > 1e-10 {
            notes.push(format!("{name}: {err:.2e}"));
        }
        worst = worst.max(err);
    };
    let semicircle = |f: fn(f64, f64) -> f64| {
        Integrand::new(move |x| f(b, x))
            .sqrt_at(-b, Side::Above)
            .sqrt_at(b, Side::Below)
    };
    let root = |b: f64, x: f64| ((b - x) * (b + x)).sqrt();
    let inverse_root = |b: f64, x: f64| 1.0 / ((b - x) * (b + x)).sqrt();

    // I1
    for w in [-0.9 * b, -0.3 * b, 0.55 * b, 0.97 * b] {
        let r = pv_simple_pole(&semicircle(root), w, (-b, b), &cfg).unwrap();
        track("I1 inside", rel(r.value, -PI * w));
    }
    for w in [1.2 * b, 3.0 * b, -1.5 * b, -4.0 * b] {
        let f = Integrand::new(move |x: f64| root(b, x) / (x - w))
            .sqrt_at(-b, Side::Above)
            .sqrt_at(b, Side::Below);
        let r = integrate(&f, -b, b, &cfg).unwrap();
        let want = -PI * w + w.signum() * PI * (w * w - b * b).sqrt();
        track("I1 outside", rel(r.value, want));
    }
    // I2
    let i2 = Integrand::new(move |x: f64| b - root(b, x))
        .with(Singularity::DoublePole(0.0))
        .sqrt_at(-b, Side::Above)
        .sqrt_at(b, Side::Below);
    track(
        "I2",
        rel(pv_double_pole(&i2, (-b, b), &cfg).unwrap().value, PI - 2.0),
    );
    // A5: zero inside, measured against the natural scale π/b
    for w in [-0.7 * b, 0.2 * b, 0.8 * b] {
        let r = pv_simple_pole(&semicircle(inverse_root), w, (-b, b), &cfg).unwrap();
        track("A5 inside", r.value.abs() / (PI / b));
    }
    for w in [1.1 * b, 2.5 * b, -1.7 * b] {
        let f = Integrand::new(move |x: f64| inverse_root(b, x) / (x - w))
            .sqrt_at(-b, Side::Above)
            .sqrt_at(b, Side::Below);
        let r = sqrt_endpoint_integral(&f, (-b, b), &cfg).unwrap();
        let want = -w.signum() * PI / (w * w - b * b).sqrt();
        track("A5 outside", rel(r.value, want));
    }
    // Eq. 42 in u = x² − b²
    for w in [0.1 * b, 0.6 * b, 0.95 * b] {
        let a = b * b - w * w;
        let f = Integrand::new(move |u: f64| 1.0 / ((u + a) * u.sqrt()))
            .sqrt_at(0.0, Side::Above)
            .with_scale(b * b);
        let r = sqrt_endpoint_integral(&f, (0.0, f64::INFINITY), &cfg).unwrap();
        track("Eq42 inside", rel(r.value, PI / a.sqrt()));
    }
    for w in [1.05 * b, 2.0 * b, 6.0 * b] {
        let pole = w * w - b * b;
        let f = Integrand::new(|u: f64| 1.0 / u.sqrt())
            .sqrt_at(0.0, Side::Above)
            .with(Singularity::SimplePole(pole))
            .with_scale(b * b);
        let r = sqrt_endpoint_integral(&f, (0.0, f64::INFINITY), &cfg).unwrap();
        track("Eq42 outside", r.value.abs() / (PI / pole.sqrt()));
    }
    // Eq. 24 integral against the value implied by Eq. 25
    for w in [0.05 * b, 0.5 * b, 0.9 * b] {
        let f = Integrand::new(move |y: f64| y.sqrt() / ((y + b * b) * (y + b * b - w * w)))
            .sqrt_at(0.0, Side::Above)
            .with_scale(b * b);
        let r = sqrt_endpoint_integral(&f, (0.0, f64::INFINITY), &cfg).unwrap();
        let want = PI * (b - (b * b - w * w).sqrt()) / (w * w);
        track("Eq24", rel(r.value, want));
    }
    // tail of the transverse real-part integrand beyond 100 b, against its
    // asymptotic series
    for w in [0.5 * b, 3.0 * b] {
        let p = GrapheneParams::natural_with_k(b);
        let pre = p.prefactor();
        let f = Integrand::new(move |x: f64| pre * (x * x - b * b).sqrt() / (x * x))
            .with(Singularity::SimplePole(w));
        let cutoff = 100.0 * b;
        let r = tail_integral(&f, cutoff, &cfg).unwrap();
        track("tail", rel(r.value, tail_series(pre, b, w, cutoff)));
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-10 && elapsed < Duration::from_secs(10),
        format!(
            "worst rel error {worst:.2e}, {} ms{}",
            elapsed.as_millis(),
            if notes.is_empty() {
                String::new()
            } else {
                format!(" [{}]", notes.join("; "))
            }
        ),
    )
}

/// `∫_X^∞ pre √(x² − b²) / (x² (x − ω)) dx` from the expansion
/// `√(1 − β)·Σ (ω/x)^m` with `β = b²/x²`, integrated term by term.
fn tail_series(pre: f64, b: f64, w: f64, cutoff: f64) -> f64 {
    let terms = 60;
    // binomial coefficients of √(1 − β) in powers of b²/x²
    let mut binom = vec![1.0];
    for n in 1..terms {
        let prev: f64 = binom[n - 1];
        binom.push(prev * (n as f64 - 1.5) / n as f64);
    }
    // coefficient of x^{-2-n}
    let mut total = 0.0;
    for n in 0..terms {
        let c: f64 = binom
            .iter()
            .take(n / 2 + 1)
            .enumerate()
            .map(|(j, bj)| bj * b.powi(2 * j as i32) * w.powi((n - 2 * j) as i32))
            .sum();
        total += c * cutoff.powi(-(n as i32) - 1) / (n as f64 + 1.0);
    }
    pre * total
}

fn graphene(transverse: bool, k: f64) -> ResponseModel {
    let p = GrapheneParams::natural_with_k(k);
    if transverse {
        ResponseModel::GrapheneTransverse(p)
    } else {
        ResponseModel::GrapheneLongitudinal(p)
    }
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let grid: Vec<f64> = log_grid(1e-2, 1e2, 200)
        .into_iter()
        .filter(|x| (x - 1.0).abs() >= 0.05)
        .collect();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for transverse in [false, true] {
        for k in wave_vectors() {
            let model = graphene(transverse, k);
            let b = model.branch_frequency().unwrap();
            for &x in &grid {
                let re = kk_re_from_im(&model, x * b, None).unwrap();
                let im = kk_im_from_re(&model, x * b, None).unwrap();
                worst = worst.max(re.rel_residual).max(im.rel_residual);
                count += 2;
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-6 && elapsed < Duration::from_secs(120),
        format!(
            "{count} reconstructions, max rel residual {worst:.2e}, {:.1} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();

    let wp = 2.0;
    let plasma = ResponseModel::Plasma { omega_p: wp };
    let mut worst_plasma: f64 = 0.0;
    let mut worst_integral: f64 = 0.0;
    for w in log_grid(1e-2, 1e2, 50) {
        let re = kk_re_from_im(&plasma, w, None).unwrap();
        let im = kk_im_from_re(&plasma, w, None).unwrap();
        worst_plasma = worst_plasma.max(re.abs_residual).max(im.abs_residual);
        let integral = re.reconstructed - 1.0 - re.subtraction_term;
        worst_integral = worst_integral
            .max(integral.abs())
            .max(im.reconstructed.abs());
        if re.subtraction_term != -wp * wp / (w * w) {
            ok = false;
        }
    }
    ok &= worst_plasma <= 1e-12 && worst_integral <= 1e-12;
    notes.push(format!(
        "plasma residual {worst_plasma:.2e}, integral {worst_integral:.2e}"
    ));

    let d = DrudeParams::new(3.0, 0.5).unwrap();
    let drude = ResponseModel::Drude(d);
    let mut worst_drude: f64 = 0.0;
    for w in log_grid(1e-2, 1e2, 50).into_iter().chain([d.gamma]) {
        let r = kk_im_from_re(&drude, w, None).unwrap();
        let algebraic = d.omega_p * d.omega_p * d.gamma / (w * (w * w + d.gamma * d.gamma));
        worst_drude = worst_drude.max(rel(r.reconstructed, algebraic));
    }
    ok &= worst_drude <= 1e-8;
    notes.push(format!("Drude inverse {worst_drude:.2e}"));

    let bound = OscillatorParams::new(vec![
        Oscillator {
            strength: 1.0,
            frequency: 1.0,
            damping: 0.1,
        },
        Oscillator {
            strength: 4.0,
            frequency: 3.0,
            damping: 0.5,
        },
        Oscillator {
            strength: 20.0,
            frequency: 10.0,
            damping: 2.0,
        },
    ])
    .unwrap();
    let gp = ResponseModel::GeneralizedPlasma { omega_p: wp, bound };
    let mut worst_gp: f64 = 0.0;
    for w in log_grid(1e-2, 1e2, 50) {
        let re = kk_re_from_im(&gp, w, None).unwrap();
        let im = kk_im_from_re(&gp, w, None).unwrap();
        worst_gp = worst_gp.max(re.rel_residual).max(im.rel_residual);
    }
    ok &= worst_gp <= 1e-6;
    notes.push(format!("generalized plasma {worst_gp:.2e}"));
    outcome(ok, notes.join(", "))
}

fn criterion_5() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut worst_imag: f64 = 0.0;
    for transverse in [false, true] {
        for k in wave_vectors() {
            let model = graphene(transverse, k);
            let b = model.branch_frequency().unwrap();
            for x in log_grid(1e-2, 1e2, 41) {
                let r = kk_imag_axis(&model, x * b, None).unwrap();
                let direct = model
                    .eval_complex(Complex64::new(0.0, x * b))
                    .unwrap()
                    .value;
                worst = worst.max(rel(r.reconstructed, direct.re));
                worst_imag = worst_imag.max(direct.im.abs() / direct.re.abs());
            }
        }
    }
    outcome(
        worst <= 1e-7 && worst_imag <= 1e-14,
        format!("max rel deviation {worst:.2e}, max |Im|/|Re| {worst_imag:.2e}"),
    )
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let rhos = log_grid(1e-2, 1e-5, 7);
    let mut ok = true;
    let mut notes = Vec::new();
    for transverse in [true, false] {
        let model = graphene(transverse, 1.0);
        let b = 1.0;
        let study = rho_sweep(&model, b, 1e4 * b, &rhos, None).unwrap();
        let expected = if transverse { 1.5 } else { 0.5 };
        let slopes_ok = (study.left_slope - expected).abs() <= 0.1
            && (study.right_slope - expected).abs() <= 0.1;
        ok &= slopes_ok;
        if transverse {
            let p = GrapheneParams::natural_with_k(1.0);
            let limit = PI * PI * p.alpha * p.k * p.c * b / 2.0;
            let err = (study.pole_extrapolated - Complex64::new(0.0, limit)).norm() / limit;
            ok &= err <= 1e-6;
            notes.push(format!("Tr pole {err:.2e}"));
        }
        let spec = ContourSpec::new(model, 1e-4 * b, 1e4 * b, b).unwrap();
        let defect = residue_identity(&spec, None).unwrap().relative_defect();
        ok &= defect <= 1e-5;
        notes.push(format!(
            "{} slopes {:.4}/{:.4}, defect {defect:.2e}",
            if transverse { "Tr" } else { "L" },
            study.left_slope,
            study.right_slope
        ));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(120);
    notes.push(format!("{:.1} s", elapsed.as_secs_f64()));
    outcome(ok, notes.join(", "))
}

fn acceptance_configs() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("acceptance");
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    files
}

fn subcommand(path: &Path) -> &'static str {
    let name = path.file_name().unwrap().to_str().unwrap();
    ["eval", "kk", "imag-axis", "contour"]
        .into_iter()
        .find(|c| name.starts_with(&format!("{c}-")))
        .expect("acceptance configs are named after their subcommand")
}

fn criterion_7() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_graphene-dispersion");
    let dir = tempfile::tempdir().unwrap();
    let mut notes = Vec::new();
    let configs = acceptance_configs();
    for config in &configs {
        for format in ["csv", "json"] {
            let mut outputs = Vec::new();
            for run in 0..2 {
                let out = dir.path().join(format!("run{run}.{format}"));
                let status = Command::new(bin)
                    .arg(subcommand(config))
                    .arg("--config")
                    .arg(config)
                    .arg("--out")
                    .arg(&out)
                    .arg("--format")
                    .arg(format)
                    .arg("--check")
                    .output()
                    .unwrap();
                if !status.status.success() {
                    notes.push(format!(
                        "{} exited {:?}",
                        config.display(),
                        status.status.code()
                    ));
                }
                outputs.push(std::fs::read(&out).unwrap_or_default());
            }
            if outputs[0] != outputs[1] || outputs[0].is_empty() {
                notes.push(format!("{} {format} not reproducible", config.display()));
            }
        }
    }
    outcome(
        notes.is_empty(),
        if notes.is_empty() {
            format!(
                "{} configs, csv and json, byte-identical, --check exit 0",
                configs.len()
            )
        } else {
            notes.join("; ")
        },
    )
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 7] = [
        ("closed-form conformance", criterion_1),
        ("quadrature oracles", criterion_2),
        ("real-axis round trips", criterion_3),
        ("pole-class correctness", criterion_4),
        ("imaginary axis", criterion_5),
        ("contour suite", criterion_6),
        ("CLI determinism", criterion_7),
    ];
    let mut failed = 0;
    for (j, (name, run)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        if !result.passed {
            failed += 1;
        }
        println!(
            "criterion {}: {:<24} {}  {}",
            j + 1,
            name,
            if result.passed { "PASS" } else { "FAIL" },
            result.detail
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
