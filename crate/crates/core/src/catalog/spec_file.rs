//! The on-disk algebra description: a JSON document with exact rationals as
//! `p/q` strings. Canonical reserialization is byte-identical, so fixtures
//! can be diffed and digested.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

use crate::double::{validate_double, QuadraticLieAlgebra};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SpecFile {
    pub schema_version: u32,
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub degrees: Vec<i64>,
    /// Sparse bracket entries `[i, j, k, c]` meaning `[e_i, e_j] += c e_k`;
    /// only one orientation is stored, the other is implied.
    pub brackets: Vec<(usize, usize, usize, String)>,
    pub gram: Vec<Vec<String>>,
    pub splittings: BTreeMap<String, SplittingSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub rmatrices: BTreeMap<String, RMatrixSpec>,
    /// Cobracket entries `[i, j, k, c]` meaning `delta(e_i) += c e_j ∧ e_k`
    /// on the base half of the algebra (j < k).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cobracket: Vec<(usize, usize, usize, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SplittingSpec {
    pub m: Vec<Vec<String>>,
    pub l: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RMatrixSpec {
    /// Bivector terms `[i, j, c]` with `i < j` over the base half.
    pub terms: Vec<(usize, usize, String)>,
    pub class: String,
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<SpecFile> {
        let spec: SpecFile =
            serde_json::from_str(text).map_err(|e| CoreError::Parse(e.to_string()))?;
        if spec.schema_version != 1 {
            return Err(CoreError::Parse(format!(
                "unsupported schema_version {}",
                spec.schema_version
            )));
        }
        if spec.basis.len() != spec.dim || spec.degrees.len() != spec.dim {
            return Err(CoreError::Parse(
                "basis/degrees length disagrees with dim".into(),
            ));
        }
        if spec.gram.len() != spec.dim || spec.gram.iter().any(|r| r.len() != spec.dim) {
            return Err(CoreError::Parse("gram must be dim × dim".into()));
        }
        Ok(spec)
    }

    /// Canonical serialization; parsing then reserializing a canonical file
    /// reproduces it byte for byte.
    pub fn canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn gram_matrix(&self) -> Result<Matrix> {
        let mut m = Matrix::zero(self.dim, self.dim);
        for (i, row) in self.gram.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, Scalar::parse_rat(v)?);
            }
        }
        Ok(m)
    }

    /// Instantiate without certification, for validators that report
    /// failures instead of refusing.
    pub fn to_algebra_unchecked(&self) -> Result<Arc<QuadraticLieAlgebra>> {
        let mut entries = Vec::with_capacity(self.brackets.len());
        for (i, j, k, c) in &self.brackets {
            if *i >= self.dim || *j >= self.dim || *k >= self.dim {
                return Err(CoreError::Parse("bracket index out of range".into()));
            }
            entries.push((*i, *j, *k, Scalar::parse_rat(c)?));
        }
        Ok(QuadraticLieAlgebra::from_sparse(
            self.name.clone(),
            self.basis.clone(),
            &entries,
            self.gram_matrix()?,
        ))
    }

    /// Instantiate the algebra and certify it.
    pub fn to_algebra(&self) -> Result<Arc<QuadraticLieAlgebra>> {
        let mut entries = Vec::with_capacity(self.brackets.len());
        for (i, j, k, c) in &self.brackets {
            if *i >= self.dim || *j >= self.dim || *k >= self.dim {
                return Err(CoreError::Parse("bracket index out of range".into()));
            }
            entries.push((*i, *j, *k, Scalar::parse_rat(c)?));
        }
        let alg = QuadraticLieAlgebra::from_sparse(
            self.name.clone(),
            self.basis.clone(),
            &entries,
            self.gram_matrix()?,
        );
        let report = validate_double(&alg);
        if !report.passed() {
            return Err(CoreError::Precondition(format!(
                "spec `{}` does not define a quadratic Lie algebra \
                 (antisymmetry {}, jacobi {}, invariance {}, nondegenerate {})",
                self.name,
                report.antisymmetry.len(),
                report.jacobi.len(),
                report.invariance.len(),
                report.nondegenerate
            )));
        }
        Ok(alg)
    }

    pub fn parse_vectors(rows: &[Vec<String>]) -> Result<Vec<Vec<Scalar>>> {
        rows.iter()
            .map(|r| r.iter().map(|v| Scalar::parse_rat(v)).collect())
            .collect()
    }
}
