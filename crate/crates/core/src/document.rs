//! The JSON input document for a graded semigroup.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::semigroup::{build_semigroup, AffineSemigroup};

/// On-disk description of a graded semigroup. Field names are part of the
/// wire format and must not change.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupDocument {
    pub name: String,
    pub ambient_dim: usize,
    pub generators: Vec<Vec<i64>>,
    pub degrees: Vec<i64>,
    /// Optional externally supplied minimal generators of the canonical
    /// module, for inputs whose canonical module the engine cannot
    /// compute itself.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub canonical_generators: Option<Vec<Vec<i64>>>,
}

impl SemigroupDocument {
    pub fn new(name: impl Into<String>, generators: Vec<Vec<i64>>, degrees: Vec<i64>) -> Self {
        let ambient_dim = generators.first().map_or(0, |g| g.len());
        SemigroupDocument {
            name: name.into(),
            ambient_dim,
            generators,
            degrees,
            canonical_generators: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SemigroupDocument =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        for g in &doc.generators {
            if g.len() != doc.ambient_dim {
                return Err(Error::Parse(format!(
                    "generator {g:?} does not have ambient_dim = {} coordinates",
                    doc.ambient_dim
                )));
            }
        }
        if let Some(ext) = &doc.canonical_generators {
            for g in ext {
                if g.len() != doc.ambient_dim {
                    return Err(Error::Parse(format!(
                        "canonical generator {g:?} does not have ambient_dim = {} coordinates",
                        doc.ambient_dim
                    )));
                }
            }
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn build(&self) -> Result<AffineSemigroup> {
        let gens: Vec<LatticeVector> = self
            .generators
            .iter()
            .map(|g| LatticeVector::new(g.clone()))
            .collect();
        build_semigroup(&gens, &self.degrees)
    }

    pub fn external_canonical(&self) -> Option<Vec<LatticeVector>> {
        self.canonical_generators
            .as_ref()
            .map(|gs| gs.iter().map(|g| LatticeVector::new(g.clone())).collect())
    }
}
