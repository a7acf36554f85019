//! JSON cache format for closed root systems.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::{Embedding, Realization, RootSystem, SignedRoot};
use crate::descriptor::parse_components;
use crate::error::{CoxeterError, Result};
use crate::scalar::{parse_scalar, Scalar};

/// Version tag written into every document.
pub const ROOT_SYSTEM_SCHEMA: &str = "coxex.root-system/1";

/// Serialized form of a [`RootSystem`]. Coordinates are exact fractions
/// (`"1/2"`) for crystallographic types and decimal strings otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSystemDocument {
    pub schema: String,
    pub descriptor: String,
    /// `"exact"` or `"real"`.
    pub coordinates: String,
    pub ambient_dim: usize,
    pub gram: Vec<Vec<String>>,
    pub positive_roots: Vec<Vec<String>>,
    pub coefficients: Vec<Vec<String>>,
    pub simple_indices: Vec<usize>,
    /// 1-based signed root indices.
    pub generator_tables: Vec<Vec<i64>>,
}

fn render<T: Scalar>(rows: &[Vec<T>]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(Scalar::render).collect()).collect()
}

fn parse_rows<T: Scalar>(rows: &[Vec<String>], width: usize, what: &str) -> Result<Vec<Vec<T>>> {
    rows.iter()
        .map(|r| {
            if r.len() != width {
                return Err(CoxeterError::Document(format!("{what}: expected {width} entries, got {}", r.len())));
            }
            r.iter()
                .map(|s| {
                    parse_scalar::<T>(s).ok_or_else(|| CoxeterError::Document(format!("{what}: bad number {s:?}")))
                })
                .collect()
        })
        .collect()
}

impl RootSystemDocument {
    pub fn from_root_system(rs: &RootSystem) -> Self {
        fn build<T: Scalar>(rs: &RootSystem, e: &Embedding<T>, kind: &str) -> RootSystemDocument {
            RootSystemDocument {
                schema: ROOT_SYSTEM_SCHEMA.into(),
                descriptor: rs.name(),
                coordinates: kind.into(),
                ambient_dim: e.ambient_dim,
                gram: render(&e.gram),
                positive_roots: render(&e.roots),
                coefficients: render(&e.coefficients),
                simple_indices: e.simple_indices.clone(),
                generator_tables: e.tables.iter().map(|t| t.iter().map(|s| s.to_signed_int()).collect()).collect(),
            }
        }
        match rs.realization() {
            Realization::Exact(e) => build(rs, e, "exact"),
            Realization::Real(e) => build(rs, e, "real"),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CoxeterError::Document(e.to_string()))
    }

    /// Rebuilds the root system, validating tables against coordinates.
    pub fn to_root_system(&self) -> Result<RootSystem> {
        if self.schema != ROOT_SYSTEM_SCHEMA {
            return Err(CoxeterError::Document(format!("unsupported schema {:?}", self.schema)));
        }
        let components = parse_components(&self.descriptor)?;
        match self.coordinates.as_str() {
            "exact" => RootSystem::from_embedding(&components, self.embedding::<Rational64>()?),
            "real" => RootSystem::from_embedding(&components, self.embedding::<f64>()?),
            other => Err(CoxeterError::Document(format!("unknown coordinate kind {other:?}"))),
        }
    }

    fn embedding<T: Scalar>(&self) -> Result<Embedding<T>> {
        let n = self.positive_roots.len();
        let rank = self.simple_indices.len();
        let gram = parse_rows::<T>(&self.gram, self.ambient_dim, "gram")?;
        if gram.len() != self.ambient_dim {
            return Err(CoxeterError::Document("gram matrix is not square".into()));
        }
        let roots = parse_rows::<T>(&self.positive_roots, self.ambient_dim, "positive_roots")?;
        let coefficients = parse_rows::<T>(&self.coefficients, rank, "coefficients")?;
        if coefficients.len() != n || self.generator_tables.len() != rank {
            return Err(CoxeterError::Document("table sizes disagree".into()));
        }
        if self.simple_indices.iter().any(|&i| i >= n) {
            return Err(CoxeterError::Document("simple index out of range".into()));
        }
        let mut tables = Vec::with_capacity(rank);
        for (r, row) in self.generator_tables.iter().enumerate() {
            if row.len() != n {
                return Err(CoxeterError::Document(format!("table {r} has {} entries, expected {n}", row.len())));
            }
            let row: Vec<SignedRoot> = row
                .iter()
                .map(|&k| {
                    SignedRoot::from_signed_int(k)
                        .filter(|s| s.index() < n)
                        .ok_or_else(|| CoxeterError::Document(format!("bad root index {k}")))
                })
                .collect::<Result<_>>()?;
            // A reflection only changes the r-th simple-root coefficient.
            for (i, s) in row.iter().enumerate() {
                let img = &coefficients[s.index()];
                for (k, (a, b)) in coefficients[i].iter().zip(img).enumerate() {
                    let b = if s.is_negative() { -b.clone() } else { b.clone() };
                    if k != r && !a.approx_eq(&b) {
                        return Err(CoxeterError::Document(format!("table {r} is inconsistent at root {}", i + 1)));
                    }
                }
            }
            tables.push(row);
        }
        for t in &tables {
            super::GroupElement::from_images(t.clone())?;
        }
        Ok(Embedding {
            ambient_dim: self.ambient_dim,
            gram,
            roots,
            coefficients,
            simple_indices: self.simple_indices.clone(),
            tables,
        })
    }
}
