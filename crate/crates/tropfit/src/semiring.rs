//! Max-plus scalar semantics and the tropical linear-algebra kernels.
//!
//! Scalars live in `(R ∪ {-inf}, max, +)`: tropical addition is `max`,
//! tropical multiplication is `+`, the additive identity is `-inf` and the
//! multiplicative identity is `0`. [`TropValue`] guards the two values that
//! must never enter (`NaN` and `+inf`); with those excluded, IEEE `max`/`min`
//! are exactly associative and commutative, so every reduction below is
//! deterministic regardless of order.

use std::fmt;

use crate::error::{Error, Result};

/// An element of `R ∪ {-inf}`.
///
/// `-inf` is represented by the IEEE negative infinity, so the absorption
/// rule `-inf + finite = -inf` is hardware arithmetic. `NaN` and `+inf` are
/// rejected at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TropValue(f64);

impl TropValue {
    /// The tropical additive identity.
    pub const NEG_INFINITY: TropValue = TropValue(f64::NEG_INFINITY);

    /// Wraps a raw value; accepts finite values and `-inf`.
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() || value == f64::NEG_INFINITY {
            Ok(TropValue(value))
        } else {
            Err(Error::NotRepresentable(value))
        }
    }

    /// Wraps a value that must be finite.
    pub fn finite(value: f64) -> Result<Self> {
        if value.is_finite() {
            Ok(TropValue(value))
        } else {
            Err(Error::NotFinite(value))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    /// Tropical addition: `max(self, other)`.
    pub fn tropical_add(self, other: Self) -> Self {
        TropValue(self.0.max(other.0))
    }

    /// Tropical multiplication: `self + other`, with `-inf` absorbing.
    pub fn tropical_mul(self, other: Self) -> Self {
        // Safe without a branch: +inf never exists, so -inf + x = -inf.
        TropValue(self.0 + other.0)
    }
}

impl Eq for TropValue {}

impl PartialOrd for TropValue {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TropValue {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // NaN is unrepresentable, so the order is total.
        self.0.partial_cmp(&other.0).expect("TropValue is never NaN")
    }
}

impl From<TropValue> for f64 {
    fn from(v: TropValue) -> f64 {
        v.0
    }
}

impl TryFrom<f64> for TropValue {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        TropValue::new(value)
    }
}

impl fmt::Display for TropValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == f64::NEG_INFINITY {
            write!(f, "-inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Converts a slice of raw values into tropical scalars, rejecting NaN/+inf.
pub fn trop_vec(values: &[f64]) -> Result<Vec<TropValue>> {
    values.iter().map(|&v| TropValue::new(v)).collect()
}

/// A dense row-major matrix over `R ∪ {-inf}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<TropValue>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<TropValue>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(DenseMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from row slices of raw values (`-inf` allowed).
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * ncols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != ncols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
            for &v in row {
                entries.push(TropValue::new(v)?);
            }
        }
        DenseMatrix::new(rows.len(), ncols, entries)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> TropValue) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        DenseMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> TropValue {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[TropValue] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    fn check_vec_len(&self, len: usize) -> Result<()> {
        if self.cols != len {
            return Err(Error::Shape(format!(
                "matrix has {} columns but vector has {len} entries",
                self.cols
            )));
        }
        Ok(())
    }
}

/// Max-plus matrix-vector product: `result_i = max_j (A_ij + u_j)`.
///
/// Any term touching `-inf` contributes `-inf`; a row whose every term is
/// `-inf` yields `-inf`.
pub fn maxplus_mvp(a: &DenseMatrix, u: &[TropValue]) -> Result<Vec<TropValue>> {
    a.check_vec_len(u.len())?;
    let mut out = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let mut best = f64::NEG_INFINITY;
        for (aij, uj) in a.row(i).iter().zip(u) {
            best = best.max(aij.0 + uj.0);
        }
        out.push(TropValue(best));
    }
    Ok(out)
}

/// Min-plus matrix-vector product: `result_i = min_j (A_ij + u_j)`.
///
/// Participating entries must be finite; this path never receives `-inf`
/// from the rest of the crate.
pub fn minplus_mvp(a: &DenseMatrix, u: &[TropValue]) -> Result<Vec<TropValue>> {
    a.check_vec_len(u.len())?;
    let mut out = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let mut best = f64::INFINITY;
        for (aij, uj) in a.row(i).iter().zip(u) {
            best = best.min(aij.0 + uj.0);
        }
        out.push(TropValue::new(best)?);
    }
    Ok(out)
}

/// Greatest subsolution of `A ⊞ u <= b`: `û = (-Aᵀ) ⊞' b`, i.e.
/// `û_j = min_i (b_i - A_ij)` over the rows where `A_ij` is finite.
///
/// `û` satisfies `A ⊞ û <= b` and dominates every other subsolution. A
/// column with no finite entry would send the coordinate to `+inf`, which
/// [`TropValue`] forbids, so it is reported as an error instead.
pub fn greatest_subsolution(a: &DenseMatrix, b: &[f64]) -> Result<Vec<TropValue>> {
    if a.rows() != b.len() {
        return Err(Error::Shape(format!(
            "matrix has {} rows but right-hand side has {} entries",
            a.rows(),
            b.len()
        )));
    }
    for &bi in b {
        if !bi.is_finite() {
            return Err(Error::NotFinite(bi));
        }
    }
    let mut out = Vec::with_capacity(a.cols());
    for j in 0..a.cols() {
        let mut best = f64::INFINITY;
        for (i, &bi) in b.iter().enumerate() {
            let aij = a.get(i, j);
            if aij.is_finite() {
                best = best.min(bi - aij.0);
            }
        }
        if !best.is_finite() {
            return Err(Error::DegenerateColumn(j));
        }
        out.push(TropValue(best));
    }
    Ok(out)
}

/// Unconstrained Chebyshev solution of `min_u ||A ⊞ u - b||_inf`.
///
/// The optimum is the greatest subsolution shifted up by half its residual
/// norm: `u* = û + err` with `err = ||A ⊞ û - b||_inf / 2`. The residual of
/// `u*` attains both `+err` and `-err`.
pub fn chebyshev_solution(a: &DenseMatrix, b: &[f64]) -> Result<(Vec<f64>, f64)> {
    let sub = greatest_subsolution(a, b)?;
    let reach = maxplus_mvp(a, &sub)?;
    let mut norm = 0.0f64;
    for (row, (ri, bi)) in reach.iter().zip(b).enumerate() {
        if !ri.is_finite() {
            return Err(Error::DegenerateRow(row));
        }
        norm = norm.max((ri.0 - bi).abs());
    }
    let shift = 0.5 * norm;
    let solution = sub.iter().map(|u| u.0 + shift).collect();
    Ok((solution, shift))
}
