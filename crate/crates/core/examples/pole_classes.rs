//! How the zero-frequency pole enters the dispersion relations: none for
//! dielectrics, a simple pole for Drude metals, a double pole for the plasma
//! model and for transverse graphene.

use graphene_dispersion::kramers_kronig::{kk_im_from_re, kk_re_from_im};
use graphene_dispersion::response::{
    DrudeParams, GrapheneParams, Oscillator, OscillatorParams, ResponseModel,
};

fn main() -> graphene_dispersion::Result<()> {
    let dielectric = OscillatorParams::new(vec![Oscillator {
        strength: 4.0,
        frequency: 2.0,
        damping: 0.3,
    }])?;
    let models = [
        ResponseModel::Oscillator(dielectric.clone()),
        ResponseModel::Drude(DrudeParams::new(3.0, 0.5)?),
        ResponseModel::Plasma { omega_p: 2.0 },
        ResponseModel::GeneralizedPlasma {
            omega_p: 2.0,
            bound: dielectric,
        },
        ResponseModel::GrapheneTransverse(GrapheneParams::natural()),
    ];
    for model in &models {
        println!("{}: {:?}", model.name(), model.pole_class());
        for w in [0.3, 1.5] {
            let re = kk_re_from_im(model, w, None)?;
            let im = kk_im_from_re(model, w, None)?;
            println!(
                "  ω = {w}: Re {:+.10e} (pole term {:+.3e}, residual {:.1e})   Im {:+.10e} (pole term {:+.3e}, residual {:.1e})",
                re.reconstructed, re.subtraction_term, re.abs_residual,
                im.reconstructed, im.subtraction_term, im.abs_residual,
            );
        }
    }

    let lossless = ResponseModel::Oscillator(OscillatorParams::new(vec![Oscillator {
        strength: 1.0,
        frequency: 1.0,
        damping: 0.0,
    }])?);
    if let Err(e) = kk_re_from_im(&lossless, 0.5, None) {
        println!("undamped oscillator: {e}");
    }
    Ok(())
}
