//! Longitudinal and transverse permittivity of graphene across the branch
//! point, plus the Drude and plasma reference media.
//!
//! ```text
//! cargo run --example evaluate_permittivity
//! ```

use graphene_dispersion::response::{DrudeParams, GrapheneParams, ResponseModel};
use num_complex::Complex64;

fn main() -> graphene_dispersion::Result<()> {
    let p = GrapheneParams::natural();
    let b = p.branch_frequency();
    println!("natural units: b = {b}, coupling g = {:.6}", p.coupling());

    let longitudinal = ResponseModel::GrapheneLongitudinal(p);
    let transverse = ResponseModel::GrapheneTransverse(p);

    println!("{:>8} {:>26} {:>26}", "ω/b", "ε^L", "ε^Tr");
    for x in [0.1, 0.5, 0.9, 0.999, 1.0, 1.001, 1.5, 3.0, 10.0] {
        let show = |m: &ResponseModel| match m.eval_real(x * b).get() {
            Some(e) => format!("{:>12.5e} {:+.5e}i", e.re, e.im),
            None => format!("{:>26}", m.eval_real(x * b).status.as_str()),
        };
        println!("{x:>8} {} {}", show(&longitudinal), show(&transverse));
    }

    // in the upper half-plane the sheet is fixed by continuity from ε(0) > 0
    let z = Complex64::new(2.0, 0.5) * b;
    let e = transverse.eval_complex(z)?.value;
    println!("ε^Tr({z}) = {e:.6}");

    let xi = 0.5 * b;
    println!(
        "ε(iξ) at ξ = b/2: L {:.6}, Tr {:.6}",
        longitudinal.eval_imaginary_axis(xi)?.value.re,
        transverse.eval_imaginary_axis(xi)?.value.re
    );

    let drude = ResponseModel::Drude(DrudeParams::new(3.0, 0.5)?);
    let plasma = ResponseModel::Plasma { omega_p: 3.0 };
    for w in [0.5, 3.0] {
        println!(
            "ω = {w}: Drude {:.6}, plasma {:.6}",
            drude.eval_real(w).value,
            plasma.eval_real(w).value
        );
    }
    Ok(())
}
