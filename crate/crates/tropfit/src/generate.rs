//! Synthetic dataset generators.
//!
//! All generators are deterministic given their seed; random draws come
//! from the pinned [`crate::rng::SplitMix64`] stream so fixtures reproduce
//! across runs and platforms.

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::poly::{ExponentSet, Points, TropicalPolynomial};
use crate::ratfit::TropicalRational;
use crate::rng::SplitMix64;
use crate::semiring::TropValue;

/// Equally spaced noisy sine samples: `y = sin(x) + N(0, sigma^2)` over
/// `x_range` (default `[-1, 12]`). `sigma = 0` gives the exact sine.
pub fn gen_sine(n: usize, x_range: (f64, f64), noise_sigma: f64, seed: u64) -> Result<Dataset> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!(
            "sine generator needs at least 2 points, got {n}"
        )));
    }
    let (lo, hi) = x_range;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidConfig(format!(
            "invalid x range [{lo}, {hi}]"
        )));
    }
    if !(noise_sigma.is_finite() && noise_sigma >= 0.0) {
        return Err(Error::InvalidConfig(format!(
            "noise sigma must be >= 0, got {noise_sigma}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let step = (hi - lo) / (n - 1) as f64;
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for i in 0..n {
        let x = lo + i as f64 * step;
        xs.push(x);
        ys.push(x.sin() + noise_sigma * rng.normal());
    }
    Dataset::new(Points::univariate(&xs)?, ys)
}

/// The bivariate `peaks` surface value.
pub fn peaks_value(x1: f64, x2: f64) -> f64 {
    3.0 * (1.0 - x1) * (1.0 - x1) * (-x1 * x1 - (x2 + 1.0) * (x2 + 1.0)).exp()
        - 10.0 * (x1 / 5.0 - x1.powi(3) - x2.powi(5)) * (-x1 * x1 - x2 * x2).exp()
        - (1.0 / 3.0) * (-(x1 + 1.0) * (x1 + 1.0) - x2 * x2).exp()
}

/// The `peaks` surface sampled on a `grid_side x grid_side` grid over
/// `[-3, 3]^2` (2401 points at the default side of 49).
pub fn gen_peaks(grid_side: usize) -> Result<Dataset> {
    if grid_side < 2 {
        return Err(Error::InvalidConfig(format!(
            "peaks grid side must be >= 2, got {grid_side}"
        )));
    }
    let step = 6.0 / (grid_side - 1) as f64;
    let mut flat = Vec::with_capacity(grid_side * grid_side * 2);
    let mut ys = Vec::with_capacity(grid_side * grid_side);
    for i in 0..grid_side {
        let x1 = -3.0 + i as f64 * step;
        for j in 0..grid_side {
            let x2 = -3.0 + j as f64 * step;
            flat.push(x1);
            flat.push(x2);
            ys.push(peaks_value(x1, x2));
        }
    }
    Dataset::new(Points::from_flat(2, flat)?, ys)
}

/// The six-variable test function `x1 x2 x3 + 2 x4 x5^2 sin(x6^2)`.
pub fn g6_value(x: &[f64]) -> f64 {
    x[0] * x[1] * x[2] + 2.0 * x[3] * x[4] * x[4] * (x[5] * x[5]).sin()
}

/// The ten-variable test function `g6(x) - exp(x7 x8 x9 x10)`.
pub fn h10_value(x: &[f64]) -> f64 {
    g6_value(x) - (x[6] * x[7] * x[8] * x[9]).exp()
}

fn uniform_box_dataset(
    n: usize,
    dim: usize,
    seed: u64,
    f: impl Fn(&[f64]) -> f64,
) -> Result<Dataset> {
    if n == 0 {
        return Err(Error::EmptyDataset);
    }
    let mut rng = SplitMix64::new(seed);
    let mut flat = Vec::with_capacity(n * dim);
    let mut ys = Vec::with_capacity(n);
    for _ in 0..n {
        let start = flat.len();
        for _ in 0..dim {
            flat.push(rng.next_f64());
        }
        ys.push(f(&flat[start..]));
    }
    Dataset::new(Points::from_flat(dim, flat)?, ys)
}

/// `g6` sampled uniformly at random from `[0, 1]^6`.
pub fn gen_g6(n: usize, seed: u64) -> Result<Dataset> {
    uniform_box_dataset(n, 6, seed, g6_value)
}

/// `h10` sampled uniformly at random from `[0, 1]^10`.
pub fn gen_h10(n: usize, seed: u64) -> Result<Dataset> {
    uniform_box_dataset(n, 10, seed, h10_value)
}

/// Settings for [`gen_tropical_rational`].
#[derive(Debug, Clone)]
pub struct TropicalGenConfig {
    pub dim: usize,
    pub degree: u32,
    pub n_points: usize,
    /// Coefficients of the ground truth are uniform over this interval.
    pub coeff_range: (f64, f64),
    /// Sample points are uniform over this box (per coordinate).
    pub box_range: (f64, f64),
    pub seed: u64,
}

impl Default for TropicalGenConfig {
    fn default() -> Self {
        TropicalGenConfig {
            dim: 1,
            degree: 1,
            n_points: 100,
            coeff_range: (-5.0, 5.0),
            box_range: (-5.0, 5.0),
            seed: 0,
        }
    }
}

/// Data generated by a random ground-truth tropical rational function over
/// the full degree grid; targets are its exact evaluations and the ground
/// truth is returned for recovery checks.
///
/// Draw order is fixed: numerator coefficients, denominator coefficients,
/// then points row-major.
pub fn gen_tropical_rational(cfg: &TropicalGenConfig) -> Result<(Dataset, TropicalRational)> {
    if cfg.n_points == 0 {
        return Err(Error::EmptyDataset);
    }
    let (clo, chi) = cfg.coeff_range;
    let (blo, bhi) = cfg.box_range;
    if !(clo.is_finite() && chi.is_finite() && clo < chi) {
        return Err(Error::InvalidConfig(format!(
            "invalid coefficient range [{clo}, {chi}]"
        )));
    }
    if !(blo.is_finite() && bhi.is_finite() && blo < bhi) {
        return Err(Error::InvalidConfig(format!(
            "invalid box range [{blo}, {bhi}]"
        )));
    }
    let set = ExponentSet::uniform_grid(cfg.dim, cfg.degree)?;
    let mut rng = SplitMix64::new(cfg.seed);

    let draw_coeffs = |rng: &mut SplitMix64| -> Result<Vec<TropValue>> {
        (0..set.len())
            .map(|_| TropValue::finite(rng.uniform(clo, chi)))
            .collect()
    };
    let p = TropicalPolynomial::new(set.clone(), draw_coeffs(&mut rng)?)?;
    let q = TropicalPolynomial::new(set.clone(), draw_coeffs(&mut rng)?)?;
    let model = TropicalRational::new(p, q, 1.0)?;

    let mut flat = Vec::with_capacity(cfg.n_points * cfg.dim);
    for _ in 0..cfg.n_points * cfg.dim {
        flat.push(rng.uniform(blo, bhi));
    }
    let points = Points::from_flat(cfg.dim, flat)?;
    let targets = model.evaluate(&points)?;
    Ok((Dataset::new(points, targets)?, model))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sine_endpoints_no_noise() {
        let ds = gen_sine(2, (-1.0, 12.0), 0.0, 0).unwrap();
        assert_eq!(ds.points().row(0), &[-1.0]);
        assert_eq!(ds.points().row(1), &[12.0]);
        assert_eq!(ds.targets()[0], (-1.0f64).sin());
        assert_eq!(ds.targets()[1], (12.0f64).sin());
    }

    #[test]
    fn sine_noiseless_is_exact() {
        let ds = gen_sine(57, (-1.0, 12.0), 0.0, 3).unwrap();
        for (x, y) in ds.points().iter().zip(ds.targets()) {
            assert_eq!(*y, x[0].sin());
        }
    }

    #[test]
    fn sine_is_reproducible() {
        let a = gen_sine(200, (-1.0, 12.0), 0.1, 1234).unwrap();
        let b = gen_sine(200, (-1.0, 12.0), 0.1, 1234).unwrap();
        assert_eq!(a, b);
        let c = gen_sine(200, (-1.0, 12.0), 0.1, 1235).unwrap();
        assert_ne!(a, c);
    }

    /// FNV-1a over a fixed 17-significant-digit rendering of every value.
    fn golden_hash(ds: &Dataset) -> u64 {
        let mut h = 0xcbf29ce484222325u64;
        let mut eat = |text: String| {
            for byte in text.bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        };
        for (point, target) in ds.points().iter().zip(ds.targets()) {
            for v in point {
                eat(format!("{v:.16e},"));
            }
            eat(format!("{target:.16e};"));
        }
        h
    }

    #[test]
    fn golden_hashes_are_stable() {
        // Frozen fixtures; a change here means generated datasets moved.
        assert_eq!(
            golden_hash(&gen_sine(200, (-1.0, 12.0), 0.1, 0).unwrap()),
            0x88e73b41e75ffac4
        );
        assert_eq!(golden_hash(&gen_peaks(49).unwrap()), 0x79c0f65aaf58d62c);
        assert_eq!(golden_hash(&gen_g6(100, 0).unwrap()), 0x5e629fa21a546125);
        assert_eq!(golden_hash(&gen_h10(100, 0).unwrap()), 0xad4ec80b46d9cf87);
        let cfg = TropicalGenConfig {
            dim: 2,
            degree: 1,
            n_points: 100,
            seed: 0,
            ..TropicalGenConfig::default()
        };
        assert_eq!(
            golden_hash(&gen_tropical_rational(&cfg).unwrap().0),
            0xb1c8fee031e08846
        );
    }

    #[test]
    fn sine_rejects_degenerate_input() {
        assert!(gen_sine(1, (-1.0, 12.0), 0.0, 0).is_err());
        assert!(gen_sine(10, (3.0, 3.0), 0.0, 0).is_err());
    }

    #[test]
    fn peaks_value_at_origin() {
        // 3 e^{-1} - (1/3) e^{-1}
        let expected = 3.0 * (-1.0f64).exp() - (1.0 / 3.0) * (-1.0f64).exp();
        assert_eq!(peaks_value(0.0, 0.0), expected);
        assert!((peaks_value(0.0, 0.0) - 0.981012).abs() < 1e-6);
    }

    #[test]
    fn peaks_default_grid_size() {
        let ds = gen_peaks(49).unwrap();
        assert_eq!(ds.len(), 2401);
        assert_eq!(ds.dim(), 2);
        // Corners of the grid.
        assert_eq!(ds.points().row(0), &[-3.0, -3.0]);
        assert_eq!(ds.points().row(2400), &[3.0, 3.0]);
    }

    #[test]
    fn g6_and_h10_reference_values() {
        let ones6 = [1.0; 6];
        assert!((g6_value(&ones6) - 2.682942).abs() < 1e-6);
        let ones10 = [1.0; 10];
        assert!((h10_value(&ones10) - (-0.035340)).abs() < 1e-6);
        let zeros6 = [0.0; 6];
        assert_eq!(g6_value(&zeros6), 0.0);
    }

    #[test]
    fn g6_points_stay_in_unit_box() {
        let ds = gen_g6(500, 9).unwrap();
        assert_eq!(ds.dim(), 6);
        for p in ds.points().iter() {
            assert!(p.iter().all(|v| (0.0..1.0).contains(v)));
        }
        for (p, y) in ds.points().iter().zip(ds.targets()) {
            assert_eq!(*y, g6_value(p));
        }
    }

    #[test]
    fn tropical_degree_zero_is_constant() {
        let cfg = TropicalGenConfig {
            dim: 2,
            degree: 0,
            n_points: 20,
            seed: 11,
            ..TropicalGenConfig::default()
        };
        let (ds, model) = gen_tropical_rational(&cfg).unwrap();
        let expected = model.numerator().coeffs()[0].get() - model.denominator().coeffs()[0].get();
        for y in ds.targets() {
            assert_eq!(*y, expected);
        }
    }

    #[test]
    fn tropical_targets_match_naive_evaluation() {
        let cfg = TropicalGenConfig {
            dim: 2,
            degree: 2,
            n_points: 50,
            seed: 4,
            ..TropicalGenConfig::default()
        };
        let (ds, model) = gen_tropical_rational(&cfg).unwrap();
        let vp = model.numerator().eval_naive(ds.points()).unwrap();
        let vq = model.denominator().eval_naive(ds.points()).unwrap();
        for ((a, b), y) in vp.iter().zip(&vq).zip(ds.targets()) {
            assert!((a - b - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn tropical_generation_is_reproducible() {
        let cfg = TropicalGenConfig {
            dim: 3,
            degree: 1,
            n_points: 64,
            seed: 77,
            ..TropicalGenConfig::default()
        };
        let (a, ma) = gen_tropical_rational(&cfg).unwrap();
        let (b, mb) = gen_tropical_rational(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(ma, mb);
    }
}
