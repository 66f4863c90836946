//! Fit tropical rational functions to smooth 6- and 10-variable test
//! functions on the unit box, reporting training and test errors.
//!
//! Run with: cargo run --release -p tropfit --example multivariate

use tropfit::dataset::Dataset;
use tropfit::generate::{gen_g6, gen_h10};
use tropfit::poly::ExponentSet;
use tropfit::ratfit::{alternating_fit, FitConfig, TropicalRational};

fn report(name: &str, degree: u32, train: &Dataset, test: &Dataset) -> tropfit::Result<()> {
    let set = ExponentSet::uniform_grid(train.dim(), degree)?;
    let cfg = FitConfig {
        max_iters: 60,
        eta_tol: 1e-12,
        record_trace: false,
        ..FitConfig::default()
    };
    let start = std::time::Instant::now();
    let (model, trace): (TropicalRational, _) =
        alternating_fit(train.points(), train.targets(), &set, &cfg)?;
    let test_error = model.loss(test.points(), test.targets())?;
    println!(
        "{name}: degree {degree}, {} parameters -> train e = {:.4}, test e = {:.4} \
         ({} iterations, {:.2?})",
        2 * set.len(),
        trace.final_error,
        test_error,
        trace.iterations,
        start.elapsed()
    );
    Ok(())
}

fn main() -> tropfit::Result<()> {
    let g_train = gen_g6(4000, 0)?;
    let g_test = gen_g6(4000, 1)?;
    report("g (6 variables)", 2, &g_train, &g_test)?;

    let h_train = gen_h10(4000, 0)?;
    let h_test = gen_h10(4000, 1)?;
    report("h (10 variables)", 1, &h_train, &h_test)?;
    Ok(())
}
