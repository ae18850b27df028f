use std::time::Instant;

use kpzcalc_mc::sle::{radial_ensemble, sle_dimension, sle_ensemble, sle_winding_variance};

fn main() {
    for kappa in [2.0, 8.0 / 3.0, 6.0] {
        let t0 = Instant::now();
        let traces = sle_ensemble(kappa, 1000, 2000, 1e-4, 99).unwrap();
        let dim = sle_dimension(&traces, 99).unwrap();
        let radial = radial_ensemble(kappa, 1000, 2000, 3e-3, 99).unwrap();
        let wind = sle_winding_variance(&radial, 99).unwrap();
        println!(
            "sle kappa={kappa:.3}: D = {:.4} +- {:.4} (target {:.4}), winding slope = {:.3} +- {:.3} (target {kappa:.3}, 15% band [{:.3},{:.3}]) [{:?}]",
            dim.exponent,
            dim.stderr,
            1.0 + kappa / 8.0,
            wind.exponent,
            wind.stderr,
            0.85 * kappa,
            1.15 * kappa,
            t0.elapsed()
        );
    }
}
