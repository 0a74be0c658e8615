//! ε(iξ) from real-axis absorption, compared with direct evaluation at
//! imaginary frequency.

use graphene_dispersion::kramers_kronig::kk_imag_axis;
use graphene_dispersion::response::{GrapheneParams, ResponseModel};

fn main() -> graphene_dispersion::Result<()> {
    let p = GrapheneParams::natural_with_k(2.0);
    let b = p.branch_frequency();
    for model in [
        ResponseModel::GrapheneLongitudinal(p),
        ResponseModel::GrapheneTransverse(p),
    ] {
        println!("{}", model.name());
        println!(
            "  {:>8} {:>22} {:>22} {:>10}",
            "ξ/b", "direct", "reconstructed", "rel"
        );
        for x in [0.01, 0.1, 1.0, 10.0, 100.0] {
            let r = kk_imag_axis(&model, x * b, None)?;
            println!(
                "  {x:>8} {:>22.15e} {:>22.15e} {:>10.1e}",
                r.direct, r.reconstructed, r.rel_residual
            );
        }
    }
    Ok(())
}
