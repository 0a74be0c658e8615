//! The closed contour behind the imaginary-axis relation, piece by piece,
//! and the convergence of its small semicircles.

use graphene_dispersion::contour::{big_arc_decay, residue_identity, rho_sweep, ContourSpec};
use graphene_dispersion::response::{GrapheneParams, ResponseModel};

fn main() -> graphene_dispersion::Result<()> {
    let p = GrapheneParams::natural();
    let b = p.branch_frequency();
    let xi = b;

    for model in [
        ResponseModel::GrapheneTransverse(p),
        ResponseModel::GrapheneLongitudinal(p),
    ] {
        println!("{}", model.name());
        let spec = ContourSpec::new(model.clone(), 1e-4 * b, 1e4 * b, xi)?;
        let r = residue_identity(&spec, None)?;
        println!("  real axis        {:.12e}", r.real_axis_part);
        println!("  pole semicircle  {:.12e}", r.pole_semicircle);
        println!("  left branch      {:.3e}", r.left_branch_semicircle);
        println!("  right branch     {:.3e}", r.right_branch_semicircle);
        println!("  big arc          {:.3e}", r.big_arc);
        println!("  πi χ(iξ)         {:.12e}", r.residue_term);
        println!("  relative defect  {:.2e}", r.relative_defect());

        let rhos: Vec<f64> = (0..7)
            .map(|j| b * 10f64.powf(-2.0 - 0.5 * j as f64))
            .collect();
        let study = rho_sweep(&model, xi, 1e4 * b, &rhos, None)?;
        println!(
            "  branch slopes {:.4} / {:.4}, pole extrapolation error {:.1e}",
            study.left_slope,
            study.right_slope,
            study.pole_error()
        );

        let radii: Vec<f64> = [1e3, 1e4, 1e5].iter().map(|r| r * b).collect();
        let (arcs, slope) = big_arc_decay(&model, xi, 1e-3 * b, &radii, None)?;
        let shown: Vec<String> = arcs.iter().map(|a| format!("{a:.2e}")).collect();
        println!(
            "  |big arc| [{}] with log-log slope {slope:.6}",
            shown.join(", ")
        );
    }
    Ok(())
}
