//! Tropical polynomials over a fixed exponent set.
//!
//! A polynomial here is a coefficient vector over a finite set
//! `W ⊆ Z^n_{>=0}`; its value at `x` is `max_{w in W} (wᵀx + c_w)`. The
//! module provides the design ("tropical Vandermonde") matrix, a streaming
//! evaluator that never materializes that matrix, and the closed-form
//! Chebyshev fit built on [`crate::semiring::chebyshev_solution`].
//!
//! Exponent enumeration order is part of the model format: lexicographic
//! with the **last coordinate fastest**, so consecutive grid exponents
//! usually differ by a single unit step and the per-point affine values can
//! be updated incrementally.

use crate::error::{Error, Result};
use crate::semiring::{chebyshev_solution, maxplus_mvp, DenseMatrix, TropValue};

/// A batch of evaluation points: `N` rows of dimension `dim`, all finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Points {
    dim: usize,
    data: Vec<f64>,
}

impl Points {
    /// Builds from row slices; every row must have the same length `>= 1`.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let dim = rows.first().map_or(1, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * dim);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(Error::Shape(format!(
                    "point {i} has dimension {}, expected {dim}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Points::from_flat(dim, data)
    }

    /// Builds from a flat row-major buffer of length `N * dim`.
    pub fn from_flat(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Shape("points must have dimension >= 1".into()));
        }
        if !data.len().is_multiple_of(dim) {
            return Err(Error::Shape(format!(
                "flat buffer of length {} is not a multiple of dimension {dim}",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|v| !v.is_finite()) {
            return Err(Error::NotFinite(bad));
        }
        Ok(Points { dim, data })
    }

    /// One-dimensional points.
    pub fn univariate(xs: &[f64]) -> Result<Self> {
        Points::from_flat(1, xs.to_vec())
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.dim)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.data
    }

    /// Returns a copy with every coordinate multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Points {
        Points {
            dim: self.dim,
            data: self.data.iter().map(|v| c * v).collect(),
        }
    }
}

/// The finite set `W` of permitted monomial exponents.
///
/// Either a full grid `{0..=d_1} x ... x {0..=d_n}` or an explicit list of
/// distinct exponent vectors. Enumeration order is fixed: grids go
/// lexicographically with the last coordinate fastest; explicit lists keep
/// their given order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentSet {
    dim: usize,
    kind: ExponentSetKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum ExponentSetKind {
    Grid { degrees: Vec<u32> },
    Explicit { exponents: Vec<Vec<u32>> },
}

impl ExponentSet {
    /// Grid of exponents with per-coordinate degree bounds.
    pub fn grid(degrees: &[u32]) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::InvalidExponentSet("degree vector is empty".into()));
        }
        let mut size = 1usize;
        for &d in degrees {
            size = size
                .checked_mul(d as usize + 1)
                .ok_or_else(|| Error::InvalidExponentSet("grid is too large".into()))?;
        }
        Ok(ExponentSet {
            dim: degrees.len(),
            kind: ExponentSetKind::Grid {
                degrees: degrees.to_vec(),
            },
        })
    }

    /// Grid with the same degree bound in every coordinate.
    pub fn uniform_grid(dim: usize, degree: u32) -> Result<Self> {
        ExponentSet::grid(&vec![degree; dim])
    }

    /// Explicit list of distinct exponent vectors.
    pub fn explicit(exponents: Vec<Vec<u32>>) -> Result<Self> {
        let dim = match exponents.first() {
            Some(first) if !first.is_empty() => first.len(),
            _ => {
                return Err(Error::InvalidExponentSet(
                    "explicit set needs at least one exponent of dimension >= 1".into(),
                ))
            }
        };
        for (i, e) in exponents.iter().enumerate() {
            if e.len() != dim {
                return Err(Error::InvalidExponentSet(format!(
                    "exponent {i} has dimension {}, expected {dim}",
                    e.len()
                )));
            }
            if exponents[..i].contains(e) {
                return Err(Error::InvalidExponentSet(format!(
                    "duplicate exponent {e:?}"
                )));
            }
        }
        Ok(ExponentSet {
            dim,
            kind: ExponentSetKind::Explicit { exponents },
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of exponents `|W|`.
    pub fn len(&self) -> usize {
        match &self.kind {
            ExponentSetKind::Grid { degrees } => {
                degrees.iter().map(|&d| d as usize + 1).product()
            }
            ExponentSetKind::Explicit { exponents } => exponents.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_grid(&self) -> bool {
        matches!(self.kind, ExponentSetKind::Grid { .. })
    }

    /// Grid degree bounds, if this is a grid.
    pub fn grid_degrees(&self) -> Option<&[u32]> {
        match &self.kind {
            ExponentSetKind::Grid { degrees } => Some(degrees),
            ExponentSetKind::Explicit { .. } => None,
        }
    }

    /// The exponent vector at `index` in enumeration order.
    pub fn exponent(&self, index: usize) -> Vec<u32> {
        match &self.kind {
            ExponentSetKind::Grid { degrees } => {
                let mut rem = index;
                let mut w = vec![0u32; degrees.len()];
                for j in (0..degrees.len()).rev() {
                    let base = degrees[j] as usize + 1;
                    w[j] = (rem % base) as u32;
                    rem /= base;
                }
                w
            }
            ExponentSetKind::Explicit { exponents } => exponents[index].clone(),
        }
    }

    /// Index of the all-zero exponent, if present.
    pub fn zero_index(&self) -> Option<usize> {
        match &self.kind {
            ExponentSetKind::Grid { .. } => Some(0),
            ExponentSetKind::Explicit { exponents } => {
                exponents.iter().position(|e| e.iter().all(|&w| w == 0))
            }
        }
    }

    /// Exponent vectors in enumeration order.
    pub fn iter(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..self.len()).map(|i| self.exponent(i))
    }
}

/// Visits every exponent in enumeration order with the per-point affine
/// values `u_i = wᵀ x^(i)` available, without materializing the design
/// matrix. Grid steps that bump a single coordinate update `u` in place;
/// other steps recompute it, which also bounds floating-point drift.
pub(crate) fn visit_exponents(
    points: &Points,
    set: &ExponentSet,
    mut visit: impl FnMut(usize, &[f64]),
) {
    let n_pts = points.len();
    let dim = points.dim();
    let mut u = vec![0.0f64; n_pts];

    let recompute = |w: &[u32], u: &mut [f64]| {
        for (i, ui) in u.iter_mut().enumerate() {
            let row = points.row(i);
            let mut acc = 0.0;
            for (k, &wk) in w.iter().enumerate() {
                if wk != 0 {
                    acc += wk as f64 * row[k];
                }
            }
            *ui = acc;
        }
    };

    match &set.kind {
        ExponentSetKind::Grid { degrees } => {
            let mut current = vec![0u32; dim];
            let mut index = 0;
            visit(index, &u);
            // Odometer steps, last coordinate fastest.
            while let Some(j) = (0..dim).rev().find(|&j| current[j] < degrees[j]) {
                current[j] += 1;
                let unit = current[j + 1..].iter().all(|&w| w == 0);
                if unit {
                    let flat = points.as_flat();
                    for (i, ui) in u.iter_mut().enumerate() {
                        *ui += flat[i * dim + j];
                    }
                } else {
                    for w in &mut current[j + 1..] {
                        *w = 0;
                    }
                    recompute(&current, &mut u);
                }
                index += 1;
                visit(index, &u);
            }
        }
        ExponentSetKind::Explicit { exponents } => {
            for (index, w) in exponents.iter().enumerate() {
                recompute(w, &mut u);
                visit(index, &u);
            }
        }
    }
}

/// The tropical analog of a Vandermonde matrix: `X_{i,w} = wᵀ x^(i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignMatrix {
    matrix: DenseMatrix,
}

impl DesignMatrix {
    pub fn as_matrix(&self) -> &DenseMatrix {
        &self.matrix
    }
}

/// Builds the design matrix with rows indexed by points and columns by
/// exponents in the set's enumeration order.
pub fn build_design_matrix(points: &Points, set: &ExponentSet) -> Result<DesignMatrix> {
    check_dims(points, set)?;
    let n_pts = points.len();
    let n_exp = set.len();
    let mut entries = vec![TropValue::NEG_INFINITY; n_pts * n_exp];
    visit_exponents(points, set, |col, u| {
        for (i, &ui) in u.iter().enumerate() {
            entries[i * n_exp + col] = TropValue::new(ui).expect("finite points give finite dots");
        }
    });
    Ok(DesignMatrix {
        matrix: DenseMatrix::new(n_pts, n_exp, entries)?,
    })
}

fn check_dims(points: &Points, set: &ExponentSet) -> Result<()> {
    if points.dim() != set.dim() {
        return Err(Error::Shape(format!(
            "points have dimension {} but exponent set has dimension {}",
            points.dim(),
            set.dim()
        )));
    }
    Ok(())
}

/// A tropical polynomial: one coefficient per exponent of a fixed set.
#[derive(Debug, Clone, PartialEq)]
pub struct TropicalPolynomial {
    exponents: ExponentSet,
    coeffs: Vec<TropValue>,
}

impl TropicalPolynomial {
    pub fn new(exponents: ExponentSet, coeffs: Vec<TropValue>) -> Result<Self> {
        if coeffs.len() != exponents.len() {
            return Err(Error::Shape(format!(
                "exponent set has {} entries but {} coefficients were given",
                exponents.len(),
                coeffs.len()
            )));
        }
        Ok(TropicalPolynomial { exponents, coeffs })
    }

    /// Convenience constructor from raw values (`-inf` allowed).
    pub fn from_raw(exponents: ExponentSet, coeffs: &[f64]) -> Result<Self> {
        let coeffs = coeffs
            .iter()
            .map(|&c| TropValue::new(c))
            .collect::<Result<Vec<_>>>()?;
        TropicalPolynomial::new(exponents, coeffs)
    }

    pub fn exponents(&self) -> &ExponentSet {
        &self.exponents
    }

    pub fn coeffs(&self) -> &[TropValue] {
        &self.coeffs
    }

    pub fn has_finite_coeff(&self) -> bool {
        self.coeffs.iter().any(|c| c.is_finite())
    }

    /// The monomials with finite coefficients, as `(exponent, coefficient)`.
    pub fn finite_monomials(&self) -> Vec<(Vec<u32>, f64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_finite())
            .map(|(i, c)| (self.exponents.exponent(i), c.get()))
            .collect()
    }

    /// Evaluates through the explicit design matrix: `X ⊞ coeffs`.
    pub fn eval_naive(&self, points: &Points) -> Result<Vec<f64>> {
        if !self.has_finite_coeff() {
            return Err(Error::NoFiniteCoefficient);
        }
        let design = build_design_matrix(points, &self.exponents)?;
        let values = maxplus_mvp(design.as_matrix(), &self.coeffs)?;
        Ok(values.into_iter().map(f64::from).collect())
    }

    /// Evaluates with the streaming recurrence `v <- max(v, u + c_w)`,
    /// keeping memory at `O(N + |W|)`. Explicit (non-grid) sets fall back to
    /// [`Self::eval_naive`], since the incremental update relies on grid
    /// adjacency.
    pub fn eval_stream(&self, points: &Points) -> Result<Vec<f64>> {
        if !self.has_finite_coeff() {
            return Err(Error::NoFiniteCoefficient);
        }
        if !self.exponents.is_grid() {
            return self.eval_naive(points);
        }
        check_dims(points, &self.exponents)?;
        let mut values = vec![f64::NEG_INFINITY; points.len()];
        visit_exponents(points, &self.exponents, |index, u| {
            let c = self.coeffs[index];
            if c.is_finite() {
                let c = c.get();
                for (v, &ui) in values.iter_mut().zip(u) {
                    *v = v.max(ui + c);
                }
            }
        });
        Ok(values)
    }
}

/// Closed-form Chebyshev (infinity-norm) polynomial regression.
///
/// Returns the coefficient vector minimizing `||X ⊞ p - y||_inf` over all
/// vectors for this exponent set, together with the attained error. Grid
/// sets run the fused streaming pass (`û_w = min_i (y_i - wᵀx^(i))`, then
/// `v <- max(v, u + û_w)`) without building `X`; explicit sets go through
/// the design matrix and [`chebyshev_solution`].
pub fn fit_polynomial_linf(
    points: &Points,
    y: &[f64],
    set: &ExponentSet,
) -> Result<(TropicalPolynomial, f64)> {
    check_dims(points, set)?;
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

    if !set.is_grid() {
        let design = build_design_matrix(points, set)?;
        let (coeffs, err) = chebyshev_solution(design.as_matrix(), y)?;
        let poly = TropicalPolynomial::from_raw(set.clone(), &coeffs)?;
        return Ok((poly, err));
    }

    let mut sub = Vec::with_capacity(set.len());
    let mut reach = vec![f64::NEG_INFINITY; points.len()];
    visit_exponents(points, set, |_, u| {
        let mut m = f64::INFINITY;
        for (&ui, &yi) in u.iter().zip(y) {
            m = m.min(yi - ui);
        }
        sub.push(m);
        for (v, &ui) in reach.iter_mut().zip(u) {
            *v = v.max(ui + m);
        }
    });

    let mut norm = 0.0f64;
    for (&v, &yi) in reach.iter().zip(y) {
        norm = norm.max((v - yi).abs());
    }
    let shift = 0.5 * norm;

    let coeffs = sub
        .iter()
        .map(|&c| TropValue::new(c + shift))
        .collect::<Result<Vec<_>>>()?;
    Ok((TropicalPolynomial::new(set.clone(), coeffs)?, shift))
}
