//! Fit a degree-15 tropical rational function to noisy sine data and show
//! the per-iteration trace, then persist the model and trace.
//!
//! Run with: cargo run --release -p tropfit --example fit_sine

use tropfit::generate::gen_sine;
use tropfit::persist::{write_trace_csv, ModelFile};
use tropfit::poly::ExponentSet;
use tropfit::ratfit::{alternating_fit, FitConfig};

fn main() -> tropfit::Result<()> {
    let data = gen_sine(200, (-1.0, 12.0), 0.1, 42)?;
    let set = ExponentSet::uniform_grid(1, 15)?;
    let cfg = FitConfig {
        max_iters: 2000,
        eta_tol: 1e-12,
        ..FitConfig::default()
    };

    let (model, trace) = alternating_fit(data.points(), data.targets(), &set, &cfg)?;

    println!("degree-15 fit of 200 noisy sine samples on [-1, 12]");
    println!(
        "  e0 = {:.6}  ->  e_final = {:.6} after {} iterations ({})",
        trace.initial_error,
        trace.final_error,
        trace.iterations,
        trace.termination.as_str()
    );

    // A few trace rows: the loss is nonincreasing with flat stretches.
    println!("  k      e            eta");
    for row in trace
        .rows
        .iter()
        .filter(|r| r.k <= 5 || r.k % 500 == 0 || r.k == trace.iterations)
    {
        match row.update_norm {
            Some(eta) => println!("  {:<6} {:<12.6} {:.3e}", row.k, row.error, eta),
            None => println!("  {:<6} {:<12.6} -", row.k, row.error),
        }
    }

    let out_dir = std::env::temp_dir().join("tropfit-examples");
    std::fs::create_dir_all(&out_dir).map_err(|e| tropfit::Error::Io {
        path: out_dir.display().to_string(),
        source: e,
    })?;
    let model_path = out_dir.join("sine-degree15.json");
    let trace_path = out_dir.join("sine-degree15-trace.csv");
    ModelFile::new(&model, Some(&cfg), Some(&trace)).write(&model_path)?;
    write_trace_csv(&trace, &trace_path)?;
    println!("model  -> {}", model_path.display());
    println!("trace  -> {}", trace_path.display());
    Ok(())
}
