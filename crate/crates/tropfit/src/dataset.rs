//! Datasets and their CSV persistence.
//!
//! The dataset format is deliberately rigid so files are byte-reproducible:
//! comma delimiter, `.` decimal separator, LF newlines, and a header row
//! `x1,...,xn,y`. Values are written in Rust's shortest round-trip decimal
//! form, so write-then-read restores the exact bits.

use std::path::Path;

use crate::error::{Error, Result};
use crate::poly::Points;

/// `N` sample points with scalar targets; everything finite, `N >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    points: Points,
    targets: Vec<f64>,
}

impl Dataset {
    pub fn new(points: Points, targets: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if points.len() != targets.len() {
            return Err(Error::Shape(format!(
                "{} points but {} targets",
                points.len(),
                targets.len()
            )));
        }
        if let Some(&bad) = targets.iter().find(|v| !v.is_finite()) {
            return Err(Error::NotFinite(bad));
        }
        Ok(Dataset { points, targets })
    }

    pub fn points(&self) -> &Points {
        &self.points
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        false // N >= 1 by construction
    }

    pub fn dim(&self) -> usize {
        self.points.dim()
    }
}

/// A parsed numeric CSV: header names plus rows of optional values
/// (an empty field reads as `None`).
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

/// Parses CSV text into a numeric table. Every row must have the header's
/// arity; errors carry the 1-based line number.
pub fn parse_table(text: &str) -> Result<Table> {
    let mut lines = text.lines();
    let header_line = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing header row"))?;
    let header: Vec<String> = header_line.split(',').map(str::to_owned).collect();
    if header.iter().any(String::is_empty) {
        return Err(Error::parse(1, "empty header field"));
    }

    let mut rows = Vec::new();
    for (idx, line) in lines.enumerate() {
        let lineno = idx + 2;
        if line.is_empty() {
            continue; // tolerate a trailing newline
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != header.len() {
            return Err(Error::parse(
                lineno,
                format!("expected {} fields, found {}", header.len(), fields.len()),
            ));
        }
        let mut row = Vec::with_capacity(fields.len());
        for field in fields {
            if field.is_empty() {
                row.push(None);
                continue;
            }
            let value: f64 = field
                .parse()
                .map_err(|_| Error::parse(lineno, format!("not a number: {field:?}")))?;
            if !value.is_finite() {
                return Err(Error::parse(lineno, format!("non-finite value: {field:?}")));
            }
            row.push(Some(value));
        }
        rows.push(row);
    }
    Ok(Table { header, rows })
}

/// Reads any of the crate's CSV outputs (datasets, traces, sweeps).
pub fn read_table(path: impl AsRef<Path>) -> Result<Table> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    parse_table(&text)
}

fn expect_dataset_header(header: &[String]) -> Result<usize> {
    if header.len() < 2 || header.last().map(String::as_str) != Some("y") {
        return Err(Error::parse(
            1,
            format!("expected header x1,...,xn,y, found {:?}", header.join(",")),
        ));
    }
    let n = header.len() - 1;
    for (i, name) in header[..n].iter().enumerate() {
        if *name != format!("x{}", i + 1) {
            return Err(Error::parse(
                1,
                format!("expected column x{}, found {name:?}", i + 1),
            ));
        }
    }
    Ok(n)
}

fn dataset_from_table(table: Table) -> Result<Dataset> {
    let n = expect_dataset_header(&table.header)?;
    let mut flat = Vec::with_capacity(table.rows.len() * n);
    let mut targets = Vec::with_capacity(table.rows.len());
    for (idx, row) in table.rows.iter().enumerate() {
        for (col, value) in row.iter().enumerate() {
            let value = value
                .ok_or_else(|| Error::parse(idx + 2, format!("empty field in column {col}")))?;
            if col < n {
                flat.push(value);
            } else {
                targets.push(value);
            }
        }
    }
    Dataset::new(Points::from_flat(n, flat)?, targets)
}

/// Parses a dataset from CSV text with header `x1,...,xn,y`.
pub fn parse_csv(text: &str) -> Result<Dataset> {
    dataset_from_table(parse_table(text)?)
}

/// Reads a dataset CSV file.
pub fn read_csv(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    parse_csv(&text)
}

/// Renders a dataset in the canonical CSV form.
pub fn to_csv(dataset: &Dataset) -> String {
    let n = dataset.dim();
    let mut out = String::new();
    for i in 1..=n {
        out.push_str(&format!("x{i},"));
    }
    out.push_str("y\n");
    for (point, target) in dataset.points().iter().zip(dataset.targets()) {
        for v in point {
            out.push_str(&format!("{v},"));
        }
        out.push_str(&format!("{target}\n"));
    }
    out
}

/// Writes a dataset CSV file.
pub fn write_csv(dataset: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, to_csv(dataset)).map_err(|e| Error::io(path.display().to_string(), e))
}

/// Reads points with an optional `y` column: header `x1,...,xn[,y]`.
/// Used by prediction, where targets may be absent.
pub fn read_points_csv(path: impl AsRef<Path>) -> Result<(Points, Option<Vec<f64>>)> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    let table = parse_table(&text)?;

    let has_y = table.header.last().map(String::as_str) == Some("y");
    let n = if has_y {
        table.header.len() - 1
    } else {
        table.header.len()
    };
    if n == 0 {
        return Err(Error::parse(1, "no input columns"));
    }
    for (i, name) in table.header[..n].iter().enumerate() {
        if *name != format!("x{}", i + 1) {
            return Err(Error::parse(
                1,
                format!("expected column x{}, found {name:?}", i + 1),
            ));
        }
    }

    let mut flat = Vec::with_capacity(table.rows.len() * n);
    let mut targets = if has_y {
        Some(Vec::with_capacity(table.rows.len()))
    } else {
        None
    };
    for (idx, row) in table.rows.iter().enumerate() {
        for (col, value) in row.iter().enumerate() {
            let value = value
                .ok_or_else(|| Error::parse(idx + 2, format!("empty field in column {col}")))?;
            if col < n {
                flat.push(value);
            } else if let Some(t) = targets.as_mut() {
                t.push(value);
            }
        }
    }
    Ok((Points::from_flat(n, flat)?, targets))
}
