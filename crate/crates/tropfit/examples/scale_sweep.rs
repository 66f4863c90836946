//! Sweep the input scaling parameter c on a degree-(20,20) fit of the
//! `peaks` surface. With integer exponents fixed, c trades the maximum
//! representable slope against slope resolution, and an intermediate value
//! beats c = 1.
//!
//! Run with: cargo run --release -p tropfit --example scale_sweep

use tropfit::generate::gen_peaks;
use tropfit::poly::ExponentSet;
use tropfit::ratfit::{alternating_fit, FitConfig};

fn main() -> tropfit::Result<()> {
    let data = gen_peaks(49)?;
    let set = ExponentSet::uniform_grid(2, 20)?;

    let count = 21;
    let mut best: Option<(f64, f64)> = None;
    println!("c     e_final    iterations");
    for i in 0..count {
        let c = 1.0 + 2.0 * i as f64 / (count - 1) as f64;
        let cfg = FitConfig {
            max_iters: 150,
            eta_tol: 1e-8,
            scale: c,
            record_trace: false,
            ..FitConfig::default()
        };
        let (_, trace) = alternating_fit(data.points(), data.targets(), &set, &cfg)?;
        println!("{c:<5.1} {:<10.5} {}", trace.final_error, trace.iterations);
        if best.is_none_or(|(_, e)| trace.final_error < e) {
            best = Some((c, trace.final_error));
        }
    }

    let (c, e) = best.expect("non-empty grid");
    println!("best scale: c = {c:.1} with e_final = {e:.5}");
    Ok(())
}
