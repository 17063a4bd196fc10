//! JSON description format for matroids.
//!
//! ```json
//! {"type":"uniform","r":2,"n":4}
//! {"type":"graphic","graph":{"vertices":3,"edges":[[0,1],[1,2],[0,2]]}}
//! {"type":"dual","of":<matroid>}
//! {"type":"sum","left":<matroid>,"right":<matroid>}
//! {"type":"delete","of":<matroid>,"elements":[0,2]}
//! {"type":"contract","of":<matroid>,"elements":[1]}
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matroid::{Matroid, Subset};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum MatroidSpec {
    Uniform { r: usize, n: usize },
    Graphic { graph: Graph },
    Dual { of: Box<MatroidSpec> },
    Sum { left: Box<MatroidSpec>, right: Box<MatroidSpec> },
    Delete { of: Box<MatroidSpec>, elements: Vec<usize> },
    Contract { of: Box<MatroidSpec>, elements: Vec<usize> },
}

impl MatroidSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("matroid JSON: {e}")))
    }

    /// Canonical single-line JSON; `parse` then `canonical_json` normalizes.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("matroid spec serializes")
    }

    pub fn build(&self) -> Result<Matroid> {
        match self {
            MatroidSpec::Uniform { r, n } => Matroid::uniform(*r, *n),
            MatroidSpec::Graphic { graph } => {
                let graph = Graph::new(graph.vertices, graph.edges.clone())?;
                Ok(Matroid::graphic(graph))
            }
            MatroidSpec::Dual { of } => Ok(of.build()?.dual()),
            MatroidSpec::Sum { left, right } => left.build()?.direct_sum(&right.build()?),
            MatroidSpec::Delete { of, elements } => {
                let m = of.build()?;
                let del = Subset::from_elements(m.ground_size(), elements.iter().copied())?;
                m.minor(&del, &Subset::empty(m.ground_size()))
            }
            MatroidSpec::Contract { of, elements } => {
                let m = of.build()?;
                let con = Subset::from_elements(m.ground_size(), elements.iter().copied())?;
                m.minor(&Subset::empty(m.ground_size()), &con)
            }
        }
    }
}
