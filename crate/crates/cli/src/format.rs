//! The algebra file format: a JSON document listing the nonzero structure
//! constants, an optional form and optional metadata. Indices are 1-based
//! and every rational is a string, `"p"` or `"p/q"`.
//!
//! ```json
//! {
//!   "dim": 2,
//!   "products": [{ "left": 1, "right": 1, "terms": [[2, "1"]] }],
//!   "form": [["0", "1"], ["1", "0"]],
//!   "metadata": { "name": "family 1", "seed": 7 }
//! }
//! ```

use std::collections::BTreeSet;

use novikov_core::exactlin::{
    format_rational, parse_rational, zero, Mat, ParseRationalError, Rational,
};
use novikov_core::{Algebra, SymForm};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    pub products: Vec<ProductEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

/// `e_left e_right = sum of coefficient * e_index` over `terms`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub left: usize,
    pub right: usize,
    pub terms: Vec<(usize, String)>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Where in the file a value sits, for error messages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    Product { left: usize, right: usize },
    Form { row: usize, col: usize },
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Location::Product { left, right } => write!(f, "product e{left}e{right}"),
            Location::Form { row, col } => write!(f, "form entry ({row}, {col})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FileError {
    #[error("input is not valid UTF-8")]
    NotUtf8,
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid structure at line {line}, column {column}: {message}")]
    Schema { line: usize, column: usize, message: String },
    #[error("invalid rational {text:?} in {location}")]
    InvalidRational { location: Location, text: String },
    #[error("zero denominator in {text:?} in {location}")]
    ZeroDenominator { location: Location, text: String },
    #[error("index {index} out of range 1..={dim} in {location}")]
    IndexOutOfRange { location: Location, index: usize, dim: usize },
    #[error("product e{left}e{right} is listed twice")]
    DuplicateProduct { left: usize, right: usize },
    #[error("basis index {index} appears twice in product e{left}e{right}")]
    DuplicateTerm { left: usize, right: usize, index: usize },
    #[error("form must be {dim}x{dim}, found {rows} rows with lengths {lengths:?}")]
    FormShape { dim: usize, rows: usize, lengths: Vec<usize> },
    #[error("form is not symmetric at ({row}, {col})")]
    NonSymmetricForm { row: usize, col: usize },
}

impl FileError {
    /// Short stable name of the error class.
    pub fn kind(&self) -> &'static str {
        match self {
            FileError::NotUtf8 => "not-utf8",
            FileError::Syntax { .. } => "syntax",
            FileError::Schema { .. } => "schema",
            FileError::InvalidRational { .. } => "invalid-rational",
            FileError::ZeroDenominator { .. } => "zero-denominator",
            FileError::IndexOutOfRange { .. } => "index-out-of-range",
            FileError::DuplicateProduct { .. } => "duplicate-product",
            FileError::DuplicateTerm { .. } => "duplicate-term",
            FileError::FormShape { .. } => "form-shape",
            FileError::NonSymmetricForm { .. } => "non-symmetric-form",
        }
    }
}

/// Parsed file content.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub algebra: Algebra,
    pub form: Option<SymForm>,
    pub metadata: Option<Metadata>,
}

fn rational(text: &str, location: Location) -> Result<Rational, FileError> {
    parse_rational(text).map_err(|e| match e {
        ParseRationalError::ZeroDenominator(_) => FileError::ZeroDenominator {
            location,
            text: text.to_string(),
        },
        ParseRationalError::Empty | ParseRationalError::Malformed(_) => FileError::InvalidRational {
            location,
            text: text.to_string(),
        },
    })
}

fn index(i: usize, dim: usize, location: &Location) -> Result<usize, FileError> {
    if (1..=dim).contains(&i) {
        Ok(i - 1)
    } else {
        Err(FileError::IndexOutOfRange {
            location: location.clone(),
            index: i,
            dim,
        })
    }
}

pub fn parse(bytes: &[u8]) -> Result<Parsed, FileError> {
    let text = std::str::from_utf8(bytes).map_err(|_| FileError::NotUtf8)?;
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| {
        let (line, column, message) = (e.line(), e.column(), e.to_string());
        if e.is_data() {
            FileError::Schema { line, column, message }
        } else {
            FileError::Syntax { line, column, message }
        }
    })?;
    from_file(&file)
}

pub fn from_file(file: &AlgebraFile) -> Result<Parsed, FileError> {
    let n = file.dim;
    let mut algebra = Algebra::zero(n);
    let mut seen = BTreeSet::new();
    for entry in &file.products {
        let location = Location::Product {
            left: entry.left,
            right: entry.right,
        };
        let i = index(entry.left, n, &location)?;
        let j = index(entry.right, n, &location)?;
        if !seen.insert((i, j)) {
            return Err(FileError::DuplicateProduct {
                left: entry.left,
                right: entry.right,
            });
        }
        let mut terms = BTreeSet::new();
        for (m, text) in &entry.terms {
            let m0 = index(*m, n, &location)?;
            if !terms.insert(m0) {
                return Err(FileError::DuplicateTerm {
                    left: entry.left,
                    right: entry.right,
                    index: *m,
                });
            }
            algebra.set_constant(i, j, m0, rational(text, location.clone())?);
        }
    }

    let form = match &file.form {
        None => None,
        Some(rows) => {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(FileError::FormShape {
                    dim: n,
                    rows: rows.len(),
                    lengths: rows.iter().map(Vec::len).collect(),
                });
            }
            let mut m = Mat::zeros(n, n);
            for (r, row) in rows.iter().enumerate() {
                for (c, text) in row.iter().enumerate() {
                    m[(r, c)] = rational(text, Location::Form { row: r + 1, col: c + 1 })?;
                }
            }
            for r in 0..n {
                for c in r + 1..n {
                    if m[(r, c)] != m[(c, r)] {
                        return Err(FileError::NonSymmetricForm { row: r + 1, col: c + 1 });
                    }
                }
            }
            Some(SymForm::new(m).expect("square and symmetric"))
        }
    };

    Ok(Parsed {
        algebra,
        form,
        metadata: file.metadata.clone(),
    })
}

/// The file for an algebra, listing only nonzero constants, products in
/// `(left, right)` order and terms by basis index.
pub fn to_file(algebra: &Algebra, form: Option<&SymForm>, metadata: Option<Metadata>) -> AlgebraFile {
    let n = algebra.dim();
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let terms: Vec<(usize, String)> = (0..n)
                .filter(|&m| *algebra.constant(i, j, m) != zero())
                .map(|m| (m + 1, format_rational(algebra.constant(i, j, m))))
                .collect();
            if !terms.is_empty() {
                products.push(ProductEntry {
                    left: i + 1,
                    right: j + 1,
                    terms,
                });
            }
        }
    }
    AlgebraFile {
        dim: n,
        products,
        form: form.map(|f| matrix_strings(f.matrix())),
        metadata,
    }
}

pub fn matrix_strings(m: &Mat) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(format_rational).collect())
        .collect()
}

/// JSON text with one product or form row per line.
pub fn serialize(algebra: &Algebra, form: Option<&SymForm>, metadata: Option<Metadata>) -> String {
    let file = to_file(algebra, form, metadata);
    let block = |items: Vec<String>| -> String {
        if items.is_empty() {
            "[]".to_string()
        } else {
            format!("[\n    {}\n  ]", items.join(",\n    "))
        }
    };
    let mut fields = vec![
        format!("  \"dim\": {}", file.dim),
        format!(
            "  \"products\": {}",
            block(file.products.iter().map(compact).collect())
        ),
    ];
    if let Some(rows) = &file.form {
        fields.push(format!("  \"form\": {}", block(rows.iter().map(compact).collect())));
    }
    if let Some(m) = &file.metadata {
        fields.push(format!("  \"metadata\": {}", compact(m)));
    }
    format!("{{\n{}\n}}\n", fields.join(",\n"))
}

fn compact<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("file structure always serializes")
}
