//! Regression over tropical rational functions.
//!
//! A tropical polynomial is a pointwise maximum of affine forms
//! `wᵀx + c_w` over a finite exponent set `W ⊆ Z^n_{>=0}`; a tropical
//! rational function is a difference `p(x) - q(x)` of two of them, which
//! makes it a continuous piecewise-linear function. This crate fits such
//! functions to data in the infinity norm by alternating two closed-form
//! max-plus polynomial regressions, and converts the result into an
//! equivalent ReLU network description for use as a network initializer.
//!
//! The main entry points:
//!
//! - [`ratfit::alternating_fit`] — the alternating fit, with a
//!   per-iteration trace of the error and update norm.
//! - [`poly::fit_polynomial_linf`] — the closed-form Chebyshev fit for a
//!   single tropical polynomial.
//! - [`relu::rational_to_relu`] — conversion to a ReLU network that
//!   evaluates the model exactly.
//! - [`generate`] — seeded synthetic datasets (noisy sine, the `peaks`
//!   surface, 6/10-variable test functions, random tropical rationals).
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run --release -p tropfit --example fit_sine        # univariate fit + trace
//! cargo run --release -p tropfit --example degree_sweep    # error vs degree
//! cargo run --release -p tropfit --example fit_peaks       # bivariate surface fit
//! cargo run --release -p tropfit --example scale_sweep     # error vs input scale c
//! cargo run --release -p tropfit --example recover_tropical # recovery of known models
//! cargo run --release -p tropfit --example multivariate    # 6- and 10-variable fits
//! cargo run --release -p tropfit --example export_relu     # ReLU network export
//! cargo run --release -p tropfit --example diagnose_model  # nondifferentiability certificate
//! ```
//!
//! The same operations are scriptable through the `tropfit` binary
//! (`fit`, `sweep-degree`, `sweep-scale`, `gen`, `predict`, `diagnose`,
//! `to-relu`).

pub mod cli;
pub mod dataset;
pub mod error;
pub mod generate;
pub mod persist;
pub mod poly;
pub mod ratfit;
pub mod relu;
pub mod rng;
pub mod semiring;

pub use dataset::{read_csv, write_csv, Dataset};
pub use error::{Error, Result};
pub use persist::{read_model, ModelFile};
pub use poly::{build_design_matrix, fit_polynomial_linf, ExponentSet, Points, TropicalPolynomial};
pub use ratfit::{
    alternating_fit, certificate, update_denominator, update_numerator, Certificate, FitConfig,
    FitTrace, Termination, TropicalRational,
};
pub use relu::{max_combine, polynomial_to_relu, rational_to_relu, relu_forward, ReluNetwork};
pub use semiring::{
    chebyshev_solution, greatest_subsolution, maxplus_mvp, minplus_mvp, DenseMatrix, TropValue,
};
