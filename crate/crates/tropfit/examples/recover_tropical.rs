//! Recovery study: fit data that was generated by a known tropical
//! rational function. Training error drops to roundoff level, while
//! validation error on fresh points stays large — the fit interpolates
//! rather than generalizes.
//!
//! Run with: cargo run --release -p tropfit --example recover_tropical

use tropfit::generate::{gen_tropical_rational, TropicalGenConfig};
use tropfit::poly::ExponentSet;
use tropfit::ratfit::{alternating_fit, FitConfig};

fn linf(values: &[f64]) -> f64 {
    values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
}

fn main() -> tropfit::Result<()> {
    println!("degree  rel_train_error  rel_validation_error  iterations");
    for degree in 1..=3u32 {
        let gen_cfg = TropicalGenConfig {
            dim: 6,
            degree,
            n_points: 2000,
            seed: degree as u64,
            ..TropicalGenConfig::default()
        };
        let (train, truth) = gen_tropical_rational(&gen_cfg)?;
        let (validation, _) = gen_tropical_rational(&TropicalGenConfig {
            seed: 1000 + degree as u64,
            ..gen_cfg
        })?;

        let set = ExponentSet::uniform_grid(6, degree)?;
        let cfg = FitConfig {
            max_iters: 1000,
            eta_tol: 1e-8,
            record_trace: false,
            ..FitConfig::default()
        };
        let (model, trace) = alternating_fit(train.points(), train.targets(), &set, &cfg)?;

        let rel_train =
            model.loss(train.points(), train.targets())? / linf(train.targets());
        let val_targets = truth.evaluate(validation.points())?;
        let rel_val =
            model.loss(validation.points(), &val_targets)? / linf(&val_targets);

        println!(
            "{degree:<7} {rel_train:<16.3e} {rel_val:<21.4} {}",
            trace.iterations
        );
    }
    Ok(())
}
