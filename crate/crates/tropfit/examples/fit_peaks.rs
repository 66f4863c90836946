//! Fit tropical rational surfaces to the bivariate `peaks` dataset
//! (49 x 49 grid over [-3, 3]^2) at two degrees. The low degree cannot
//! track the surface; more monomials help.
//!
//! Run with: cargo run --release -p tropfit --example fit_peaks

use tropfit::generate::gen_peaks;
use tropfit::poly::ExponentSet;
use tropfit::ratfit::{alternating_fit, FitConfig};

fn main() -> tropfit::Result<()> {
    let data = gen_peaks(49)?;
    println!(
        "peaks dataset: {} points, targets in [{:.3}, {:.3}]",
        data.len(),
        data.targets().iter().cloned().fold(f64::INFINITY, f64::min),
        data.targets().iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    );

    for degree in [10u32, 20] {
        let set = ExponentSet::uniform_grid(2, degree)?;
        let cfg = FitConfig {
            max_iters: 500,
            eta_tol: 1e-12,
            record_trace: false,
            ..FitConfig::default()
        };
        let start = std::time::Instant::now();
        let (model, trace) = alternating_fit(data.points(), data.targets(), &set, &cfg)?;
        println!(
            "degree ({degree},{degree}): {} parameters, e0 = {:.4} -> e = {:.4} \
             in {} iterations ({}, {:.2?})",
            2 * set.len(),
            trace.initial_error,
            trace.final_error,
            trace.iterations,
            trace.termination.as_str(),
            start.elapsed()
        );
        // Spot-check the fit at the center of the grid.
        let center = tropfit::poly::Points::from_rows(&[[0.0, 0.0]])?;
        let value = model.evaluate(&center)?[0];
        println!(
            "  f(0, 0) = {value:.4} (surface value {:.4})",
            tropfit::generate::peaks_value(0.0, 0.0)
        );
    }
    Ok(())
}
