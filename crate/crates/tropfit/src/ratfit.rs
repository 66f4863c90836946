//! Alternating minimization over tropical rational functions.
//!
//! A tropical rational function `f(x) = p(c·x) - q(c·x)` is fit to data by
//! alternating two closed-form polynomial regressions: holding `q` fixed,
//! the optimal `p` solves a Chebyshev fit against targets `q(x^(i)) + y_i`,
//! and symmetrically for `q`. Each whole iteration never increases the
//! training error, and the decrease per iteration is bounded by twice the
//! coefficient update norm, which motivates the update norm as the stopping
//! statistic.

use crate::error::{Error, Result};
use crate::poly::{fit_polynomial_linf, visit_exponents, ExponentSet, Points, TropicalPolynomial};
use crate::semiring::TropValue;

/// Numerator/denominator pair over a shared exponent set, with the input
/// pre-scaling parameter `c`: the represented function is `p(c·x) - q(c·x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TropicalRational {
    numerator: TropicalPolynomial,
    denominator: TropicalPolynomial,
    scale: f64,
}

impl TropicalRational {
    pub fn new(
        numerator: TropicalPolynomial,
        denominator: TropicalPolynomial,
        scale: f64,
    ) -> Result<Self> {
        if numerator.exponents() != denominator.exponents() {
            return Err(Error::Shape(
                "numerator and denominator must share one exponent set".into(),
            ));
        }
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "scale must be a positive finite number, got {scale}"
            )));
        }
        Ok(TropicalRational {
            numerator,
            denominator,
            scale,
        })
    }

    pub fn numerator(&self) -> &TropicalPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &TropicalPolynomial {
        &self.denominator
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn exponents(&self) -> &ExponentSet {
        self.numerator.exponents()
    }

    /// Evaluates `p(c·x) - q(c·x)` at each point.
    pub fn evaluate(&self, points: &Points) -> Result<Vec<f64>> {
        let scaled = points.scaled(self.scale);
        let vp = self.numerator.eval_stream(&scaled)?;
        let vq = self.denominator.eval_stream(&scaled)?;
        Ok(vp.iter().zip(&vq).map(|(a, b)| a - b).collect())
    }

    /// Training objective: `max_i |f(x^(i)) - y_i|`.
    pub fn loss(&self, points: &Points, y: &[f64]) -> Result<f64> {
        if points.len() != y.len() {
            return Err(Error::Shape(format!(
                "{} points but {} targets",
                points.len(),
                y.len()
            )));
        }
        let values = self.evaluate(points)?;
        Ok(values
            .iter()
            .zip(y)
            .fold(0.0f64, |acc, (f, yi)| acc.max((f - yi).abs())))
    }
}

/// Settings for [`alternating_fit`].
#[derive(Debug, Clone)]
pub struct FitConfig {
    /// Maximum number of whole iterations (one numerator + one denominator
    /// update each).
    pub max_iters: usize,
    /// Stop once the coefficient update norm drops to this value. Checked
    /// from the second iteration on.
    pub eta_tol: f64,
    /// Input pre-scaling parameter `c`; the fit is over `p(c·x) - q(c·x)`.
    pub scale: f64,
    /// Keep the full per-iteration trace. Final error and iteration count
    /// are always available.
    pub record_trace: bool,
    /// Initial coefficient vectors `(p^0, q^0)`, each with at least one
    /// finite coefficient. When absent, the model starts as the constant
    /// function `mean(y)`: `q^0` carries `-mean(y)` on the zero exponent
    /// and `-inf` elsewhere.
    pub initial: Option<(Vec<TropValue>, Vec<TropValue>)>,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig {
            max_iters: 1000,
            eta_tol: 1e-12,
            scale: 1.0,
            record_trace: true,
            initial: None,
        }
    }
}

impl FitConfig {
    fn validate(&self) -> Result<()> {
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig("max_iters must be >= 1".into()));
        }
        if self.eta_tol.is_nan() || self.eta_tol < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "eta_tol must be >= 0, got {}",
                self.eta_tol
            )));
        }
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "scale must be a positive finite number, got {}",
                self.scale
            )));
        }
        Ok(())
    }
}

/// Why the iteration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// The update norm reached `eta_tol`.
    TolReached,
    /// `max_iters` iterations were exhausted.
    KmaxReached,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::TolReached => "tol-reached",
            Termination::KmaxReached => "kmax-reached",
        }
    }
}

/// One recorded iteration: the error `e^k` and, where defined, the update
/// norm `eta^k` between iterations `k-1` and `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub k: usize,
    pub error: f64,
    pub update_norm: Option<f64>,
}

/// Per-iteration record of a fit. Row `k = 0` reports the initial model
/// (the constant mean predictor under default initialization) with no
/// update norm; `eta` is also undefined at `k = 1` because the default
/// `p^0` contains `-inf` coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct FitTrace {
    pub rows: Vec<TraceRow>,
    pub termination: Termination,
    /// Number of whole iterations actually run.
    pub iterations: usize,
    /// `e^k` at the last iteration.
    pub final_error: f64,
    /// `e^0` of the initial model.
    pub initial_error: f64,
}

/// Optimal numerator for a fixed denominator: solves
/// `min_p ||X ⊞ p - (X ⊞ q + y)||_inf` in closed form.
pub fn update_numerator(
    q: &TropicalPolynomial,
    points: &Points,
    y: &[f64],
) -> Result<TropicalPolynomial> {
    let vq = q.eval_stream(points)?;
    let targets: Vec<f64> = vq.iter().zip(y).map(|(v, yi)| v + yi).collect();
    let (p, _) = fit_polynomial_linf(points, &targets, q.exponents())?;
    Ok(p)
}

/// Optimal denominator for a fixed numerator: solves
/// `min_q ||X ⊞ q - (X ⊞ p - y)||_inf` in closed form.
pub fn update_denominator(
    p: &TropicalPolynomial,
    points: &Points,
    y: &[f64],
) -> Result<TropicalPolynomial> {
    let vp = p.eval_stream(points)?;
    let targets: Vec<f64> = vp.iter().zip(y).map(|(v, yi)| v - yi).collect();
    let (q, _) = fit_polynomial_linf(points, &targets, p.exponents())?;
    Ok(q)
}

/// Infinity norm of the stacked coefficient difference between two
/// `(p, q)` iterates. Pairs of `-inf` coefficients count as no change;
/// a pair mixing `-inf` with a finite value has no finite norm.
fn stacked_diff_norm(
    p_new: &TropicalPolynomial,
    q_new: &TropicalPolynomial,
    p_old: &TropicalPolynomial,
    q_old: &TropicalPolynomial,
) -> Option<f64> {
    let mut norm = 0.0f64;
    let pairs = p_new
        .coeffs()
        .iter()
        .zip(p_old.coeffs())
        .chain(q_new.coeffs().iter().zip(q_old.coeffs()));
    for (a, b) in pairs {
        match (a.is_finite(), b.is_finite()) {
            (true, true) => norm = norm.max((a.get() - b.get()).abs()),
            (false, false) => {}
            _ => return None,
        }
    }
    Some(norm)
}

/// Alternating fit of a tropical rational function.
///
/// Starting from the constant model `mean(y)` (or the supplied initial
/// coefficients), each iteration performs the two closed-form half-steps
/// and records `e^k = ||X ⊞ p^k - X ⊞ q^k - y||_inf`. Iteration stops when
/// the update norm falls to `cfg.eta_tol` (checked from `k = 2`) or after
/// `cfg.max_iters` iterations.
pub fn alternating_fit(
    points: &Points,
    y: &[f64],
    set: &ExponentSet,
    cfg: &FitConfig,
) -> Result<(TropicalRational, FitTrace)> {
    cfg.validate()?;
    if points.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if points.len() != y.len() {
        return Err(Error::Shape(format!(
            "{} points but {} targets",
            points.len(),
            y.len()
        )));
    }
    if let Some(&bad) = y.iter().find(|v| !v.is_finite()) {
        return Err(Error::NotFinite(bad));
    }

    let scaled = points.scaled(cfg.scale);

    let (mut p, mut q, initial_error) = match &cfg.initial {
        Some((p0, q0)) => {
            let p0 = TropicalPolynomial::new(set.clone(), p0.clone())?;
            let q0 = TropicalPolynomial::new(set.clone(), q0.clone())?;
            let vp = p0.eval_stream(&scaled)?;
            let vq = q0.eval_stream(&scaled)?;
            let e0 = vp
                .iter()
                .zip(&vq)
                .zip(y)
                .fold(0.0f64, |acc, ((a, b), yi)| acc.max((a - b - yi).abs()));
            (p0, q0, e0)
        }
        None => {
            let zero_idx = set.zero_index().ok_or(Error::MissingZeroExponent)?;
            let mean = y.iter().sum::<f64>() / y.len() as f64;
            let mut q0 = vec![TropValue::NEG_INFINITY; set.len()];
            q0[zero_idx] = TropValue::finite(-mean)?;
            let p0 = vec![TropValue::NEG_INFINITY; set.len()];
            let e0 = y.iter().fold(0.0f64, |acc, yi| acc.max((yi - mean).abs()));
            (
                TropicalPolynomial::new(set.clone(), p0)?,
                TropicalPolynomial::new(set.clone(), q0)?,
                e0,
            )
        }
    };

    let mut rows = Vec::new();
    if cfg.record_trace {
        rows.push(TraceRow {
            k: 0,
            error: initial_error,
            update_norm: None,
        });
    }

    let mut termination = Termination::KmaxReached;
    let mut iterations = 0;
    let mut final_error = initial_error;

    for k in 1..=cfg.max_iters {
        let p_next = update_numerator(&q, &scaled, y)?;
        let q_next = update_denominator(&p_next, &scaled, y)?;
        let eta = stacked_diff_norm(&p_next, &q_next, &p, &q);
        p = p_next;
        q = q_next;

        let vp = p.eval_stream(&scaled)?;
        let vq = q.eval_stream(&scaled)?;
        let e = vp
            .iter()
            .zip(&vq)
            .zip(y)
            .fold(0.0f64, |acc, ((a, b), yi)| acc.max((a - b - yi).abs()));

        iterations = k;
        final_error = e;
        if cfg.record_trace {
            rows.push(TraceRow {
                k,
                error: e,
                update_norm: eta,
            });
        }
        if k >= 2 {
            if let Some(eta) = eta {
                if eta <= cfg.eta_tol {
                    termination = Termination::TolReached;
                    break;
                }
            }
        }
    }

    let model = TropicalRational::new(p, q, cfg.scale)?;
    let trace = FitTrace {
        rows,
        termination,
        iterations,
        final_error,
        initial_error,
    };
    Ok((model, trace))
}

/// Data-level evidence that the loss is nondifferentiable at this model:
/// points lying on a tropical hypersurface of `p` or `q`, and points
/// attaining the infinity-norm loss.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    /// Indices of points where the defining max of `p` or `q` is attained
    /// by at least two monomials (within tolerance).
    pub on_hypersurface: Vec<usize>,
    /// Indices of points whose residual is within tolerance of the loss.
    pub attaining_points: Vec<usize>,
}

/// Tolerance used by the CLI when none is given: exact floating-point ties
/// are measure-zero, so compare within `1e-9 · (1 + ||y||_inf)`.
pub fn default_certificate_tol(y: &[f64]) -> f64 {
    let norm = y.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    1e-9 * (1.0 + norm)
}

/// Largest and second-largest monomial value per point, streamed without
/// the design matrix.
fn top_two_values(poly: &TropicalPolynomial, points: &Points) -> Result<Vec<(f64, f64)>> {
    if !poly.has_finite_coeff() {
        return Err(Error::NoFiniteCoefficient);
    }
    let mut tops = vec![(f64::NEG_INFINITY, f64::NEG_INFINITY); points.len()];
    visit_exponents(points, poly.exponents(), |index, u| {
        let c = poly.coeffs()[index];
        if c.is_finite() {
            let c = c.get();
            for ((best, second), &ui) in tops.iter_mut().zip(u) {
                let val = ui + c;
                if val > *best {
                    *second = *best;
                    *best = val;
                } else if val > *second {
                    *second = val;
                }
            }
        }
    });
    Ok(tops)
}

/// Evaluates the nondifferentiability certificate for a model on data.
pub fn certificate(
    model: &TropicalRational,
    points: &Points,
    y: &[f64],
    tol: f64,
) -> Result<Certificate> {
    if points.len() != y.len() {
        return Err(Error::Shape(format!(
            "{} points but {} targets",
            points.len(),
            y.len()
        )));
    }
    let scaled = points.scaled(model.scale);
    let top_p = top_two_values(&model.numerator, &scaled)?;
    let top_q = top_two_values(&model.denominator, &scaled)?;

    let mut on_hypersurface = Vec::new();
    let mut residuals = Vec::with_capacity(points.len());
    let mut loss = 0.0f64;
    for (i, ((bp, sp), (bq, sq))) in top_p.iter().zip(&top_q).enumerate() {
        if bp - sp <= tol || bq - sq <= tol {
            on_hypersurface.push(i);
        }
        let r = (bp - bq - y[i]).abs();
        loss = loss.max(r);
        residuals.push(r);
    }

    let attaining_points = residuals
        .iter()
        .enumerate()
        .filter(|(_, &r)| r >= loss - tol)
        .map(|(i, _)| i)
        .collect();

    Ok(Certificate {
        on_hypersurface,
        attaining_points,
    })
}
