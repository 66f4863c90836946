//! Acceptance suite: one test per criterion, each printing a PASS line
//! (visible with `cargo test --test acceptance -- --nocapture`).

use tropfit::dataset::{read_table, write_csv};
use tropfit::generate::{gen_peaks, gen_sine, gen_tropical_rational, TropicalGenConfig};
use tropfit::poly::{
    build_design_matrix, fit_polynomial_linf, ExponentSet, Points, TropicalPolynomial,
};
use tropfit::ratfit::{alternating_fit, FitConfig};
use tropfit::relu::{rational_to_relu, relu_forward};
use tropfit::rng::SplitMix64;
use tropfit::semiring::{chebyshev_solution, greatest_subsolution, maxplus_mvp, trop_vec, DenseMatrix};

/// Dyadic random value: a multiple of 2^-6 in [-8, 8]. Sums and differences
/// of such values are exact in f64, so order-theoretic identities can be
/// asserted with zero tolerance.
fn dyadic(rng: &mut SplitMix64) -> f64 {
    ((rng.next_u64() % 1025) as f64 - 512.0) / 64.0
}

fn dyadic_vec(rng: &mut SplitMix64, len: usize) -> Vec<f64> {
    (0..len).map(|_| dyadic(rng)).collect()
}

fn dyadic_matrix(rng: &mut SplitMix64, rows: usize, cols: usize) -> DenseMatrix {
    let data: Vec<Vec<f64>> = (0..rows).map(|_| dyadic_vec(rng, cols)).collect();
    DenseMatrix::from_rows(&data).unwrap()
}

fn linf(values: &[f64]) -> f64 {
    values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
}

/// Criterion 1: the closed-form fit is globally optimal; a brute-force
/// coefficient grid (step 0.25 over [-10, 10]^|W|) never beats it.
#[test]
fn criterion_1_closed_form_optimality() {
    let start = std::time::Instant::now();
    let mut rng = SplitMix64::new(0xC1);

    for instance in 0..200 {
        // Alternate explicit exponent sets with univariate grids.
        let set = if instance % 2 == 0 {
            let n_exp = 1 + (rng.next_u64() % 3) as usize;
            let dim = 1 + (rng.next_u64() % 2) as usize;
            let mut exponents: Vec<Vec<u32>> = Vec::new();
            while exponents.len() < n_exp {
                let e: Vec<u32> = (0..dim).map(|_| (rng.next_u64() % 3) as u32).collect();
                if !exponents.contains(&e) {
                    exponents.push(e);
                }
            }
            ExponentSet::explicit(exponents).unwrap()
        } else {
            ExponentSet::grid(&[(rng.next_u64() % 3) as u32]).unwrap()
        };

        let dim = set.dim();
        let n_pts = 1 + (rng.next_u64() % 6) as usize;
        let flat: Vec<f64> = (0..n_pts * dim)
            .map(|_| (rng.next_u64() % 7) as f64 - 3.0)
            .collect();
        let points = Points::from_flat(dim, flat).unwrap();
        let y: Vec<f64> = (0..n_pts)
            .map(|_| (rng.next_u64() % 7) as f64 - 3.0)
            .collect();

        let (_, err) = fit_polynomial_linf(&points, &y, &set).unwrap();

        // Brute force over the coefficient grid.
        let design = build_design_matrix(&points, &set).unwrap();
        let x = design.as_matrix();
        let candidates: Vec<f64> = (-40..=40).map(|k| k as f64 * 0.25).collect();
        let n_exp = set.len();
        let mut best = f64::INFINITY;
        let mut coeff = vec![0.0f64; n_exp];
        brute_force(x, &y, &candidates, &mut coeff, 0, &mut best);
        assert!(
            best >= err - 1e-9,
            "instance {instance}: brute force found {best} < fitted err {err}"
        );
    }

    let dt = start.elapsed();
    assert!(dt.as_secs() < 30, "took {dt:?}");
    println!("acceptance criterion 1: PASS — closed-form optimality on 200 instances ({dt:?})");
}

fn brute_force(
    x: &DenseMatrix,
    y: &[f64],
    candidates: &[f64],
    coeff: &mut Vec<f64>,
    depth: usize,
    best: &mut f64,
) {
    if depth == x.cols() {
        let mut err = 0.0f64;
        for (i, yi) in y.iter().enumerate() {
            let mut v = f64::NEG_INFINITY;
            for (j, c) in coeff.iter().enumerate() {
                v = v.max(x.get(i, j).get() + c);
            }
            err = err.max((v - yi).abs());
        }
        if err < *best {
            *best = err;
        }
        return;
    }
    for &c in candidates {
        coeff[depth] = c;
        brute_force(x, y, candidates, coeff, depth + 1, best);
    }
}

/// Criterion 2: exact order-theoretic properties of the semiring kernels
/// on 1000 random instances; zero tolerance except 1e-12 for the scaling
/// equivariance check.
#[test]
fn criterion_2_subsolution_and_adjunction() {
    let start = std::time::Instant::now();
    let mut rng = SplitMix64::new(0xC2);

    for _ in 0..1000 {
        let rows = 1 + (rng.next_u64() % 6) as usize;
        let cols = 1 + (rng.next_u64() % 6) as usize;
        let a = dyadic_matrix(&mut rng, rows, cols);
        let b = dyadic_vec(&mut rng, rows);

        let sub = greatest_subsolution(&a, &b).unwrap();

        // Subsolution feasibility: A ⊞ sub <= b, exactly.
        let reach = maxplus_mvp(&a, &sub).unwrap();
        for (r, bi) in reach.iter().zip(&b) {
            assert!(r.get() <= *bi);
        }

        // Maximality: any positive bump of any coordinate breaks a row.
        for (j, sub_j) in sub.iter().enumerate() {
            for eps in [f64::powi(2.0, -40), 0.25] {
                let violated = (0..rows).any(|i| a.get(i, j).get() + sub_j.get() + eps > b[i]);
                assert!(violated, "bump of coordinate {j} by {eps} stayed feasible");
            }
        }

        // Adjunction: A ⊞ u <= v iff u <= (-A^T) ⊞' v, checked both for a
        // random u and for u near the greatest subsolution.
        let random_u = dyadic_vec(&mut rng, cols);
        let near_sub: Vec<f64> = sub.iter().map(|s| s.get() + dyadic(&mut rng) / 8.0).collect();
        for u in [random_u, near_sub] {
            let left = maxplus_mvp(&a, &trop_vec(&u).unwrap())
                .unwrap()
                .iter()
                .zip(&b)
                .all(|(r, bi)| r.get() <= *bi);
            let right = u.iter().zip(&sub).all(|(ui, si)| *ui <= si.get());
            assert_eq!(left, right, "adjunction mismatch for u = {u:?}");
        }

        // Monotonicity of the dilation: u <= v implies A ⊞ u <= A ⊞ v.
        let u = dyadic_vec(&mut rng, cols);
        let v: Vec<f64> = u
            .iter()
            .map(|ui| ui + (rng.next_u64() % 129) as f64 / 64.0)
            .collect();
        let au = maxplus_mvp(&a, &trop_vec(&u).unwrap()).unwrap();
        let av = maxplus_mvp(&a, &trop_vec(&v).unwrap()).unwrap();
        for (x, y) in au.iter().zip(&av) {
            assert!(x.get() <= y.get());
        }

        // Chebyshev residual symmetry and tropical scaling equivariance.
        let (u_star, err) = chebyshev_solution(&a, &b).unwrap();
        let resid: Vec<f64> = maxplus_mvp(&a, &trop_vec(&u_star).unwrap())
            .unwrap()
            .iter()
            .zip(&b)
            .map(|(r, bi)| r.get() - bi)
            .collect();
        let max = resid.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = resid.iter().cloned().fold(f64::INFINITY, f64::min);
        let sym_tol = 1e-12 * (1.0 + linf(&b));
        assert!((max - err).abs() <= sym_tol);
        assert!((min + err).abs() <= sym_tol);

        let lambda = dyadic(&mut rng);
        let shifted: Vec<f64> = b.iter().map(|bi| bi + lambda).collect();
        let (u_shift, err_shift) = chebyshev_solution(&a, &shifted).unwrap();
        assert!((err_shift - err).abs() <= 1e-12);
        for (us, u) in u_shift.iter().zip(&u_star) {
            assert!((us - (u + lambda)).abs() <= 1e-12);
        }
    }

    let dt = start.elapsed();
    assert!(dt.as_secs() < 5, "took {dt:?}");
    println!("acceptance criterion 2: PASS — exact semiring properties on 1000 instances ({dt:?})");
}

/// Criterion 3: the recorded loss is nonincreasing and the per-iteration
/// decrease is bounded by twice the update norm, over 50 random fits.
#[test]
fn criterion_3_monotone_loss_and_update_bound() {
    let start = std::time::Instant::now();
    let mut rng = SplitMix64::new(0xC3);

    for fit in 0..50 {
        let dim = 1 + (rng.next_u64() % 3) as usize;
        let degree = 1 + (rng.next_u64() % 4) as u32;
        let n_pts = 50 + (rng.next_u64() % 451) as usize;
        let flat: Vec<f64> = (0..n_pts * dim).map(|_| rng.uniform(-3.0, 3.0)).collect();
        let points = Points::from_flat(dim, flat).unwrap();
        let y: Vec<f64> = (0..n_pts).map(|_| rng.uniform(-4.0, 4.0)).collect();
        let set = ExponentSet::uniform_grid(dim, degree).unwrap();
        let cfg = FitConfig {
            max_iters: 60,
            ..FitConfig::default()
        };
        let (_, trace) = alternating_fit(&points, &y, &set, &cfg).unwrap();

        for pair in trace.rows.windows(2) {
            let (prev, next) = (&pair[0], &pair[1]);
            assert!(
                next.error <= prev.error + 1e-12,
                "fit {fit}: e^{} = {} > e^{} = {}",
                next.k,
                next.error,
                prev.k,
                prev.error
            );
            // The update norm between these iterations lives on the later
            // row; it is undefined only for the k=0 -> k=1 transition.
            if let Some(eta) = next.update_norm {
                assert!(
                    prev.error - next.error <= 2.0 * eta + 1e-12,
                    "fit {fit}: decrease {} exceeds 2*eta = {}",
                    prev.error - next.error,
                    2.0 * eta
                );
            } else {
                assert_eq!(next.k, 1, "eta undefined after k = 1");
            }
        }
    }

    let dt = start.elapsed();
    assert!(dt.as_secs() < 60, "took {dt:?}");
    println!("acceptance criterion 3: PASS — monotone loss and update bound on 50 fits ({dt:?})");
}

/// Criterion 4: near-exact recovery of a random degree-1 tropical rational
/// in three variables from 1000 samples; validation error is reported for
/// inspection, not asserted.
#[test]
fn criterion_4_recovery() {
    let start = std::time::Instant::now();
    let gen_cfg = TropicalGenConfig {
        dim: 3,
        degree: 1,
        n_points: 1000,
        seed: 0,
        ..TropicalGenConfig::default()
    };
    let (train, truth) = gen_tropical_rational(&gen_cfg).unwrap();
    let (validation, _) = gen_tropical_rational(&TropicalGenConfig {
        seed: 1,
        ..gen_cfg.clone()
    })
    .unwrap();

    let set = ExponentSet::uniform_grid(3, 1).unwrap();
    let cfg = FitConfig {
        max_iters: 1000,
        eta_tol: 1e-8,
        ..FitConfig::default()
    };
    let (model, trace) = alternating_fit(train.points(), train.targets(), &set, &cfg).unwrap();

    let train_linf = model.loss(train.points(), train.targets()).unwrap();
    let rel = train_linf / linf(train.targets());
    assert!(rel <= 1e-10, "relative training error {rel}");

    // Validation targets come from the ground truth on fresh points.
    let val_targets = truth.evaluate(validation.points()).unwrap();
    let val_linf = model.loss(validation.points(), &val_targets).unwrap();
    let val_rel = val_linf / linf(&val_targets);

    let dt = start.elapsed();
    assert!(dt.as_secs() < 20, "took {dt:?}");
    println!(
        "acceptance criterion 4: PASS — recovery rel. training error {rel:e} in {} iters; \
         validation rel. error {val_rel:e} (reported, not asserted) ({dt:?})",
        trace.iterations
    );
}

/// Criterion 5: streaming evaluation and the streaming fit agree with the
/// explicit design-matrix computation within 1e-12 on 500 random cases.
#[test]
fn criterion_5_streaming_vs_naive() {
    let start = std::time::Instant::now();
    let mut rng = SplitMix64::new(0xC5);

    for _ in 0..500 {
        let dim = 1 + (rng.next_u64() % 3) as usize;
        let degrees: Vec<u32> = (0..dim).map(|_| (rng.next_u64() % 5) as u32).collect();
        let set = ExponentSet::grid(&degrees).unwrap();
        let n_pts = 1 + (rng.next_u64() % 50) as usize;
        let flat: Vec<f64> = (0..n_pts * dim).map(|_| rng.uniform(-5.0, 5.0)).collect();
        let points = Points::from_flat(dim, flat).unwrap();

        let coeffs: Vec<f64> = (0..set.len()).map(|_| rng.uniform(-5.0, 5.0)).collect();
        let poly = TropicalPolynomial::from_raw(set.clone(), &coeffs).unwrap();
        let streamed = poly.eval_stream(&points).unwrap();
        let naive = poly.eval_naive(&points).unwrap();
        for (s, n) in streamed.iter().zip(&naive) {
            assert!((s - n).abs() <= 1e-12, "eval mismatch {s} vs {n}");
        }

        let y: Vec<f64> = (0..n_pts).map(|_| rng.uniform(-5.0, 5.0)).collect();
        let (fit, err) = fit_polynomial_linf(&points, &y, &set).unwrap();
        let design = build_design_matrix(&points, &set).unwrap();
        let (direct, err_direct) = chebyshev_solution(design.as_matrix(), &y).unwrap();
        assert!((err - err_direct).abs() <= 1e-12);
        for (a, b) in fit.coeffs().iter().zip(&direct) {
            assert!((a.get() - b).abs() <= 1e-12, "fit mismatch {} vs {b}", a.get());
        }
    }

    let dt = start.elapsed();
    assert!(dt.as_secs() < 10, "took {dt:?}");
    println!("acceptance criterion 5: PASS — streaming matches explicit matrices on 500 cases ({dt:?})");
}

/// Criterion 6: on the noiseless sine dataset the final error improves
/// with degree: e(15) < e(4) and e(20) <= e(2).
#[test]
fn criterion_6_degree_sweep_shape() {
    let start = std::time::Instant::now();
    let sine = gen_sine(200, (-1.0, 12.0), 0.0, 0).unwrap();

    let mut e_final = std::collections::BTreeMap::new();
    for degree in [2u32, 4, 15, 20] {
        let set = ExponentSet::uniform_grid(1, degree).unwrap();
        let cfg = FitConfig {
            max_iters: 10_000,
            record_trace: false,
            ..FitConfig::default()
        };
        let (_, trace) = alternating_fit(sine.points(), sine.targets(), &set, &cfg).unwrap();
        e_final.insert(degree, trace.final_error);
    }

    assert!(
        e_final[&15] < e_final[&4],
        "e(15) = {} !< e(4) = {}",
        e_final[&15],
        e_final[&4]
    );
    assert!(
        e_final[&20] <= e_final[&2],
        "e(20) = {} !<= e(2) = {}",
        e_final[&20],
        e_final[&2]
    );

    let dt = start.elapsed();
    assert!(dt.as_secs() < 120, "took {dt:?}");
    println!(
        "acceptance criterion 6: PASS — degree sweep shape e(2)={:.4} e(4)={:.4} e(15)={:.4} e(20)={:.4} ({dt:?})",
        e_final[&2], e_final[&4], e_final[&15], e_final[&20]
    );
}

/// Criterion 7: ReLU networks exported from 20 fitted models reproduce the
/// rational evaluation at 1000 probes within 1e-9 relative; the degree-15
/// univariate export has hidden widths 48, 24, 12, 6.
#[test]
fn criterion_7_relu_equivalence() {
    let start = std::time::Instant::now();
    let mut rng = SplitMix64::new(0xC7);
    let mut models = Vec::new();

    // Ten univariate fits of increasing degree on noisy sine data.
    for (i, degree) in [1u32, 2, 3, 4, 5, 7, 9, 11, 13, 15].iter().enumerate() {
        let data = gen_sine(120, (-1.0, 12.0), 0.1, i as u64).unwrap();
        let set = ExponentSet::uniform_grid(1, *degree).unwrap();
        let cfg = FitConfig {
            max_iters: 60,
            record_trace: false,
            ..FitConfig::default()
        };
        let (model, _) = alternating_fit(data.points(), data.targets(), &set, &cfg).unwrap();
        models.push(model);
    }

    // Ten bivariate fits: five on a coarse peaks grid, five on random data.
    let peaks = gen_peaks(15).unwrap();
    for degree in 1u32..=5 {
        let set = ExponentSet::uniform_grid(2, degree).unwrap();
        let cfg = FitConfig {
            max_iters: 40,
            record_trace: false,
            ..FitConfig::default()
        };
        let (model, _) = alternating_fit(peaks.points(), peaks.targets(), &set, &cfg).unwrap();
        models.push(model);

        let n_pts = 80;
        let flat: Vec<f64> = (0..n_pts * 2).map(|_| rng.uniform(-3.0, 3.0)).collect();
        let points = Points::from_flat(2, flat).unwrap();
        let y: Vec<f64> = (0..n_pts).map(|_| rng.uniform(-2.0, 2.0)).collect();
        let (model, _) = alternating_fit(&points, &y, &set, &cfg).unwrap();
        models.push(model);
    }
    assert_eq!(models.len(), 20);

    let mut checked_widths = false;
    for model in &models {
        let net = rational_to_relu(model).unwrap();
        let dim = model.exponents().dim();
        if dim == 1 && model.exponents().grid_degrees() == Some(&[15][..]) {
            assert_eq!(net.hidden_widths(), vec![48, 24, 12, 6]);
            checked_widths = true;
        }
        let flat: Vec<f64> = (0..1000 * dim).map(|_| rng.uniform(-10.0, 10.0)).collect();
        let probes = Points::from_flat(dim, flat).unwrap();
        let expected = model.evaluate(&probes).unwrap();
        for (x, want) in probes.iter().zip(&expected) {
            let got = relu_forward(&net, x);
            assert!(
                (got - want).abs() <= 1e-9 * (1.0 + want.abs()),
                "forward {got} vs rational {want}"
            );
        }
    }
    assert!(checked_widths, "degree-15 univariate model missing");

    let dt = start.elapsed();
    assert!(dt.as_secs() < 30, "took {dt:?}");
    println!("acceptance criterion 7: PASS — ReLU equivalence for 20 models, widths 48/24/12/6 ({dt:?})");
}

/// Criterion 8: a degree-(10,10) fit of the peaks grid runs to termination
/// with a monotone trace and ends strictly below the initial error.
#[test]
fn criterion_8_peaks_smoke() {
    let start = std::time::Instant::now();
    let peaks = gen_peaks(49).unwrap();
    assert_eq!(peaks.len(), 2401);

    let set = ExponentSet::grid(&[10, 10]).unwrap();
    let cfg = FitConfig {
        max_iters: 1000,
        ..FitConfig::default()
    };
    let (_, trace) = alternating_fit(peaks.points(), peaks.targets(), &set, &cfg).unwrap();

    assert!(trace.iterations >= 1);
    for pair in trace.rows.windows(2) {
        assert!(pair[1].error <= pair[0].error + 1e-12);
    }
    assert!(trace.final_error.is_finite());
    assert!(
        trace.final_error < trace.initial_error,
        "final {} vs initial {}",
        trace.final_error,
        trace.initial_error
    );

    let dt = start.elapsed();
    assert!(dt.as_secs() < 120, "took {dt:?}");
    println!(
        "acceptance criterion 8: PASS — peaks fit e0={:.4} -> e={:.4} in {} iters, {} ({dt:?})",
        trace.initial_error,
        trace.final_error,
        trace.iterations,
        trace.termination.as_str()
    );
}

/// Criterion 9: the scale-sweep harness runs 21 degree-(20,20) peaks fits
/// over c in [1, 3] and the best error does not exceed the error at c = 1.
#[test]
fn criterion_9_scale_sweep() {
    let start = std::time::Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let data_path = dir.path().join("peaks.csv");
    let out_path = dir.path().join("scales.csv");
    write_csv(&gen_peaks(49).unwrap(), &data_path).unwrap();

    let cli = tropfit::cli::parse_args([
        "tropfit",
        "sweep-scale",
        "--data",
        data_path.to_str().unwrap(),
        "--scales",
        "1:3:21",
        "--degree",
        "20,20",
        "--out",
        out_path.to_str().unwrap(),
        "--max-iters",
        "150",
        "--tol",
        "1e-8",
    ])
    .unwrap();
    tropfit::cli::run(cli).unwrap();

    let table = read_table(&out_path).unwrap();
    assert_eq!(table.header, vec!["c", "e_final"]);
    assert_eq!(table.rows.len(), 21);

    let grid: Vec<(f64, f64)> = table
        .rows
        .iter()
        .map(|row| (row[0].unwrap(), row[1].unwrap()))
        .collect();
    assert!((grid[0].0 - 1.0).abs() <= 1e-12);
    assert!((grid[20].0 - 3.0).abs() <= 1e-12);

    let at_c1 = grid[0].1;
    let (argmin_c, min_e) = grid
        .iter()
        .copied()
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .unwrap();
    assert!(min_e <= at_c1, "min {min_e} > e(c=1) {at_c1}");

    let dt = start.elapsed();
    assert!(dt.as_secs() < 600, "took {dt:?}");
    println!(
        "acceptance criterion 9: PASS — scale sweep argmin_c={argmin_c} e={min_e:.4} vs e(c=1)={at_c1:.4} ({dt:?})"
    );
}
