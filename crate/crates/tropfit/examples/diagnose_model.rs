//! Inspect the nondifferentiability certificate of a fitted model: data
//! points sitting on a tropical hypersurface of the numerator or
//! denominator, and points attaining the infinity-norm loss. At least one
//! of the two sets is nonempty at any alternating-fit iterate.
//!
//! Run with: cargo run --release -p tropfit --example diagnose_model

use tropfit::generate::gen_sine;
use tropfit::poly::ExponentSet;
use tropfit::ratfit::{alternating_fit, certificate, default_certificate_tol, FitConfig};

fn main() -> tropfit::Result<()> {
    let data = gen_sine(60, (-1.0, 12.0), 0.05, 3)?;
    let set = ExponentSet::uniform_grid(1, 6)?;
    let cfg = FitConfig {
        max_iters: 500,
        record_trace: false,
        ..FitConfig::default()
    };
    let (model, trace) = alternating_fit(data.points(), data.targets(), &set, &cfg)?;

    let tol = default_certificate_tol(data.targets());
    let cert = certificate(&model, data.points(), data.targets(), tol)?;
    let loss = model.loss(data.points(), data.targets())?;

    println!("degree-6 fit of 60 noisy sine samples: loss = {loss:.5} (tol = {tol:.2e})");
    println!(
        "points on V(p) or V(q): {} of {} -> {:?}",
        cert.on_hypersurface.len(),
        data.len(),
        cert.on_hypersurface
    );
    println!(
        "points attaining the loss: {} -> {:?}",
        cert.attaining_points.len(),
        cert.attaining_points
    );
    assert!(
        !cert.on_hypersurface.is_empty() || cert.attaining_points.len() >= 2,
        "an alternating-fit iterate carries a nondifferentiability witness"
    );
    println!(
        "fit ran {} iterations and stopped by {}",
        trace.iterations,
        trace.termination.as_str()
    );
    Ok(())
}
