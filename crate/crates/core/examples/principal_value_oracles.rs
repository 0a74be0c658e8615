//! Singular integrals with known closed forms, computed by the pole-aware
//! quadrature layer.

use std::f64::consts::PI;

use graphene_dispersion::quadrature::{
    pv_double_pole, pv_simple_pole, sqrt_endpoint_integral, tail_integral, Integrand, QuadConfig,
    Side, Singularity,
};

fn report(name: &str, got: f64, want: f64, evaluations: usize) {
    let err = (got - want).abs() / want.abs().max(1e-300);
    println!("{name:<40} {got:>22.15e}  rel err {err:.1e}  ({evaluations} evals)");
}

fn main() -> graphene_dispersion::Result<()> {
    let cfg = QuadConfig::new(1e-14, 1e-13);
    let b = 1.0;
    let root = |x: f64| ((b - x) * (b + x)).sqrt();

    // PV ∫ √(b² − x²)/(x − ω) dx over [−b, b]
    let semicircle = Integrand::new(root)
        .sqrt_at(-b, Side::Above)
        .sqrt_at(b, Side::Below);
    for w in [0.25, 0.8] {
        let r = pv_simple_pole(&semicircle, w, (-b, b), &cfg)?;
        report(
            &format!("PV √(b²−x²)/(x−ω), ω = {w}"),
            r.value,
            -PI * w,
            r.evaluations,
        );
    }

    // ∫ (b − √(b² − x²))/x² dx, a removable double pole
    let bowl = Integrand::new(move |x: f64| b - root(x))
        .with(Singularity::DoublePole(0.0))
        .sqrt_at(-b, Side::Above)
        .sqrt_at(b, Side::Below);
    let r = pv_double_pole(&bowl, (-b, b), &cfg)?;
    report("∫ (b − √(b²−x²))/x²", r.value, PI - 2.0, r.evaluations);

    // finite part of 1/x² over (−1, 2)
    let one = Integrand::new(|_| 1.0).with(Singularity::DoublePole(0.0));
    let r = pv_double_pole(&one, (-1.0, 2.0), &cfg)?;
    report(
        "finite part ∫ dx/x² on (−1, 2)",
        r.value,
        -1.5,
        r.evaluations,
    );

    // ∫₀^∞ du / ((u + a)√u) = π/√a
    let a = 0.75;
    let f = Integrand::new(move |u: f64| 1.0 / ((u + a) * u.sqrt())).sqrt_at(0.0, Side::Above);
    let r = sqrt_endpoint_integral(&f, (0.0, f64::INFINITY), &cfg)?;
    report("∫₀^∞ du/((u+a)√u)", r.value, PI / a.sqrt(), r.evaluations);

    let tail = Integrand::new(|x: f64| x.powf(-1.5));
    let r = tail_integral(&tail, 4.0, &cfg)?;
    report("∫₄^∞ x^-1.5 dx", r.value, 1.0, r.evaluations);

    // too slow a tail is refused rather than truncated
    let slow = Integrand::new(|x: f64| 1.0 / x);
    match tail_integral(&slow, 1.0, &cfg) {
        Err(e) => println!("∫₁^∞ dx/x: {e}"),
        Ok(r) => println!("∫₁^∞ dx/x unexpectedly gave {}", r.value),
    }
    Ok(())
}
