use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{LieError, NilpotentLieAlgebra};
use crate::exact_algebra::{format_rational, parse_rational, Ring};

/// On-disk algebra format. Indices are 0-based; omitted brackets are zero.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    /// Target index (as a string key) to a rational, `"p/q"` or a JSON integer.
    pub coeffs: BTreeMap<String, Value>,
}

/// Parses and fully validates an algebra document.
pub fn parse_algebra(text: &str) -> Result<NilpotentLieAlgebra, LieError> {
    let doc: AlgebraDocument = serde_json::from_str(text).map_err(|e| LieError::Malformed(e.to_string()))?;
    doc.build()
}

impl AlgebraDocument {
    pub fn build(&self) -> Result<NilpotentLieAlgebra, LieError> {
        if self.basis.len() != self.dim {
            return Err(LieError::Malformed(format!("dim is {} but {} basis labels given", self.dim, self.basis.len())));
        }
        let mut brackets = Vec::with_capacity(self.brackets.len());
        for b in &self.brackets {
            let mut coeffs = Vec::new();
            for (k, v) in &b.coeffs {
                let k: usize = k.trim().parse().map_err(|_| LieError::Malformed(format!("bad coefficient index {k:?}")))?;
                let text = match v {
                    Value::String(s) => s.clone(),
                    Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
                    other => return Err(LieError::MalformedRational(other.to_string())),
                };
                let q = parse_rational(&text).map_err(|_| LieError::MalformedRational(text.clone()))?;
                coeffs.push((k, q));
            }
            brackets.push((b.i, b.j, coeffs));
        }
        NilpotentLieAlgebra::from_brackets(&self.name, self.basis.clone(), &brackets)
    }

    /// Document listing each nonzero bracket once, for `i < j`.
    pub fn from_algebra(alg: &NilpotentLieAlgebra) -> Self {
        let n = alg.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let coeffs: BTreeMap<String, Value> = (0..n)
                    .filter(|&k| !alg.structure_constant(i, j, k).is_zero())
                    .map(|k| (k.to_string(), Value::String(format_rational(alg.structure_constant(i, j, k)))))
                    .collect();
                if !coeffs.is_empty() {
                    brackets.push(BracketEntry { i, j, coeffs });
                }
            }
        }
        Self { name: alg.name().to_string(), dim: n, basis: alg.labels().to_vec(), brackets }
    }
}
