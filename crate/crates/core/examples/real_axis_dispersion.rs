//! Reconstruct Re ε from Im ε and back on the real axis, for both graphene
//! polarizations and several wave vectors.

use graphene_dispersion::kramers_kronig::{kk_sweep, Relation};
use graphene_dispersion::response::{GrapheneParams, ResponseModel};

fn main() {
    let grid: Vec<f64> = (0..25)
        .map(|j| 10f64.powf(-2.0 + 4.0 * j as f64 / 24.0))
        .collect();
    for k in [0.1, 1.0, 100.0] {
        let p = GrapheneParams::natural_with_k(k);
        for model in [
            ResponseModel::GrapheneLongitudinal(p),
            ResponseModel::GrapheneTransverse(p),
        ] {
            for relation in [Relation::ReFromIm, Relation::ImFromRe] {
                let points: Vec<f64> = grid.iter().map(|x| x * k).collect();
                let mut worst: f64 = 0.0;
                let mut skipped = 0;
                for r in kk_sweep(&model, relation, &points, None) {
                    match r {
                        Ok(r) => worst = worst.max(r.rel_residual),
                        Err(_) => skipped += 1,
                    }
                }
                println!(
                    "k = {k:<5} {:<22} {:<11} max rel residual {worst:.2e}  singular points {skipped}",
                    model.name(),
                    relation.as_str()
                );
            }
        }
    }

    let model = ResponseModel::GrapheneTransverse(GrapheneParams::natural());
    println!("\ntransverse, k = 1, re-from-im near the branch point:");
    for x in [0.5, 0.9, 0.99, 1.01, 1.1, 2.0] {
        let r = kk_sweep(&model, Relation::ReFromIm, &[x], None)
            .remove(0)
            .unwrap();
        println!(
            "  ω/b = {x:<5} direct {:>14.8e}  reconstructed {:>14.8e}  pole term {:>12.5e}",
            r.direct, r.reconstructed, r.subtraction_term
        );
    }
}
