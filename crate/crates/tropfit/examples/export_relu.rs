//! Export a fitted tropical rational function as an equivalent ReLU
//! network, verify the equivalence numerically, and write the network
//! JSON for use as an initializer in a training framework.
//!
//! Run with: cargo run --release -p tropfit --example export_relu

use tropfit::generate::gen_sine;
use tropfit::poly::{ExponentSet, Points};
use tropfit::ratfit::{alternating_fit, FitConfig};
use tropfit::relu::{rational_to_relu, relu_forward};
use tropfit::rng::SplitMix64;

fn main() -> tropfit::Result<()> {
    let data = gen_sine(200, (-1.0, 12.0), 0.1, 42)?;
    let set = ExponentSet::uniform_grid(1, 15)?;
    let cfg = FitConfig {
        max_iters: 2000,
        record_trace: false,
        ..FitConfig::default()
    };
    let (model, trace) = alternating_fit(data.points(), data.targets(), &set, &cfg)?;
    println!("fitted degree-15 model with training error {:.5}", trace.final_error);

    let net = rational_to_relu(&model)?;
    let widths: Vec<String> = std::iter::once(net.input_dim.to_string())
        .chain(net.hidden_widths().iter().map(usize::to_string))
        .chain(std::iter::once("1".to_owned()))
        .collect();
    println!("network architecture: {}", widths.join(" -> "));

    // Verify forward evaluation against the tropical form.
    let mut rng = SplitMix64::new(0);
    let xs: Vec<f64> = (0..1000).map(|_| rng.uniform(-2.0, 13.0)).collect();
    let expected = model.evaluate(&Points::univariate(&xs)?)?;
    let mut worst = 0.0f64;
    for (x, want) in xs.iter().zip(&expected) {
        let got = relu_forward(&net, &[*x]);
        worst = worst.max((got - want).abs() / (1.0 + want.abs()));
    }
    println!("max relative deviation over 1000 probes: {worst:.3e}");

    let out_dir = std::env::temp_dir().join("tropfit-examples");
    std::fs::create_dir_all(&out_dir).map_err(|e| tropfit::Error::Io {
        path: out_dir.display().to_string(),
        source: e,
    })?;
    let path = out_dir.join("sine-degree15-net.json");
    net.write_json(&path)?;
    println!("network JSON -> {}", path.display());
    Ok(())
}
