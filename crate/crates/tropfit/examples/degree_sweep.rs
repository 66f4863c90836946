//! Sweep the degree hyperparameter on the noisy sine dataset: the final
//! error decreases with degree, with a pronounced drop once the slope
//! budget covers the sine's steepest sections.
//!
//! Run with: cargo run --release -p tropfit --example degree_sweep

use tropfit::generate::gen_sine;
use tropfit::poly::ExponentSet;
use tropfit::ratfit::{alternating_fit, FitConfig};

fn main() -> tropfit::Result<()> {
    let data = gen_sine(200, (-1.0, 12.0), 0.1, 42)?;

    println!("degree  e_final     iterations");
    for degree in 1..=20u32 {
        let set = ExponentSet::uniform_grid(1, degree)?;
        let cfg = FitConfig {
            max_iters: 10_000,
            eta_tol: 1e-12,
            record_trace: false,
            ..FitConfig::default()
        };
        let (_, trace) = alternating_fit(data.points(), data.targets(), &set, &cfg)?;
        println!(
            "{degree:<7} {:<11.6} {}",
            trace.final_error, trace.iterations
        );
    }
    Ok(())
}
