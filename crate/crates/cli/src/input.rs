//! Input resolution: spec files or builtin names, and JSON matrices of
//! rationals.

use linfty::catalog::{builtin, load_entry, CatalogEntry, SpecFile};
use linfty::error::{CoreError, Result};
use linfty::matrix::Matrix;
use linfty::scalar::Scalar;

/// Resolve a spec argument to its file form without instantiating.
pub fn resolve_spec_file(spec: &str) -> Result<SpecFile> {
    if std::path::Path::new(spec).exists() {
        let text = std::fs::read_to_string(spec)
            .map_err(|e| CoreError::Parse(format!("cannot read {spec}: {e}")))?;
        SpecFile::parse(&text)
    } else {
        Ok(builtin(spec)?.spec)
    }
}

/// A spec argument names either a file on disk or a builtin entry.
pub fn resolve_entry(spec: &str) -> Result<(CatalogEntry, String)> {
    if std::path::Path::new(spec).exists() {
        let text = std::fs::read_to_string(spec)
            .map_err(|e| CoreError::Parse(format!("cannot read {spec}: {e}")))?;
        let file = SpecFile::parse(&text)?;
        let canonical = file.canonical_json();
        Ok((load_entry(&file)?, canonical))
    } else {
        let entry = builtin(spec)?;
        let canonical = entry.spec.canonical_json();
        Ok((entry, canonical))
    }
}

/// Parse a JSON array of rows of rational strings into a square matrix.
pub fn parse_matrix(text: &str, expect: usize) -> Result<Matrix> {
    let rows: Vec<Vec<String>> =
        serde_json::from_str(text).map_err(|e| CoreError::Parse(format!("bad matrix: {e}")))?;
    if rows.len() != expect || rows.iter().any(|r| r.len() != expect) {
        return Err(CoreError::arg(format!(
            "matrix must be {expect}×{expect}"
        )));
    }
    let mut m = Matrix::zero(expect, expect);
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            m.set(i, j, Scalar::parse_rat(v)?);
        }
    }
    Ok(m)
}
