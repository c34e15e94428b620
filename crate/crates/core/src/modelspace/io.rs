//! Declarative model files.
//!
//! ```json
//! {
//!   "dim": 4,
//!   "metric": { "0,0": "1", "1,1": "1", "2,3": "1" },
//!   "curvature": { "0,1,1,0": "3/2" },
//!   "aux_form": { "0,0": "1" }
//! }
//! ```
//!
//! Indices are 0-based. Metric entries are closed under symmetry and the
//! curvature entries under the pair/antisymmetry laws; an entry whose image
//! was already given a different value is rejected.

use std::collections::BTreeMap;

use num::Zero;
use serde::{Deserialize, Serialize};

use super::ModelSpace;
use crate::error::{Error, Result};
use crate::exact::{parse_rational, Matrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFile {
    pub dim: usize,
    #[serde(default)]
    pub metric: BTreeMap<String, String>,
    #[serde(default)]
    pub curvature: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aux_form: Option<BTreeMap<String, String>>,
}

pub type TensorEntry = ([usize; 4], Rational);

fn parse_index<const N: usize>(key: &str, dim: usize) -> Result<[usize; N]> {
    let parts: Vec<&str> = key.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(Error::Parse(format!("index `{key}` must have {N} components")));
    }
    let mut out = [0; N];
    for (slot, p) in out.iter_mut().zip(parts) {
        let i: usize = p
            .parse()
            .map_err(|_| Error::Parse(format!("bad index `{key}`")))?;
        if i >= dim {
            return Err(Error::Parse(format!("index `{key}` out of range for dim {dim}")));
        }
        *slot = i;
    }
    Ok(out)
}

fn symmetric_matrix(dim: usize, entries: &BTreeMap<String, String>) -> Result<Matrix> {
    let mut m = Matrix::zeros(dim, dim);
    let mut set = vec![false; dim * dim];
    for (k, v) in entries {
        let [i, j] = parse_index::<2>(k, dim)?;
        let q = parse_rational(v)?;
        for (a, b) in [(i, j), (j, i)] {
            if set[a * dim + b] && m[(a, b)] != q {
                return Err(Error::Parse(format!(
                    "entry ({a},{b}) assigned both {} and {q}",
                    m[(a, b)]
                )));
            }
            m[(a, b)] = q.clone();
            set[a * dim + b] = true;
        }
    }
    Ok(m)
}

impl ModelFile {
    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model file serializes")
    }

    pub fn into_model(&self) -> Result<ModelSpace> {
        let metric = symmetric_matrix(self.dim, &self.metric)?;
        let gens = self
            .curvature
            .iter()
            .map(|(k, v)| Ok((parse_index::<4>(k, self.dim)?, parse_rational(v)?)))
            .collect::<Result<Vec<TensorEntry>>>()?;
        let model = ModelSpace::from_generators(metric, &gens)?;
        match &self.aux_form {
            Some(aux) => model.with_aux_form(symmetric_matrix(self.dim, aux)?),
            None => Ok(model),
        }
    }

    /// Sparse description of a model: upper-triangular metric entries and
    /// every nonzero curvature entry.
    pub fn from_model(m: &ModelSpace) -> Self {
        let upper = |mat: &Matrix| {
            let mut out = BTreeMap::new();
            for i in 0..mat.rows() {
                for j in i..mat.cols() {
                    if !mat[(i, j)].is_zero() {
                        out.insert(format!("{i},{j}"), mat[(i, j)].to_string());
                    }
                }
            }
            out
        };
        ModelFile {
            dim: m.dim(),
            metric: upper(m.metric()),
            curvature: m
                .nonzero_entries()
                .iter()
                .map(|([a, b, c, d], v)| (format!("{a},{b},{c},{d}"), v.to_string()))
                .collect(),
            aux_form: m.aux_form().map(upper),
        }
    }
}
