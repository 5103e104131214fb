//! The JSON input document shared by every subcommand.

use std::fs;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use twisted_pairing::graph::MultiGraph;
use twisted_pairing::twisted::TwistedCurveModel;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genera: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stabilizers: Option<Vec<u64>>,
}

impl InputDocument {
    pub fn from_graph(g: &MultiGraph) -> Self {
        InputDocument {
            vertices: g.vertex_count(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
            genera: None,
            stabilizers: None,
        }
    }

    /// Parses and validates.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: InputDocument = serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("malformed document: {e}")))?;
        doc.validate()?;
        Ok(doc)
    }

    /// Reads a file, or standard input when `path` is `-`.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = if path == Path::new("-") {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Input(format!("reading standard input: {e}")))?;
            buf
        } else {
            fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("reading {}: {e}", path.display())))?
        };
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        for (i, &[u, v]) in self.edges.iter().enumerate() {
            if u >= self.vertices || v >= self.vertices {
                return Err(CliError::Input(format!(
                    "edge {i} = [{u}, {v}] references a vertex outside 0..{}",
                    self.vertices
                )));
            }
        }
        if let Some(genera) = &self.genera {
            if genera.len() != self.vertices {
                return Err(CliError::Input(format!(
                    "genera has {} entries for {} vertices",
                    genera.len(),
                    self.vertices
                )));
            }
        }
        if let Some(orders) = &self.stabilizers {
            if orders.len() != self.edges.len() {
                return Err(CliError::Input(format!(
                    "stabilizers has {} entries for {} edges",
                    orders.len(),
                    self.edges.len()
                )));
            }
            if let Some(e) = orders.iter().position(|&o| o == 0) {
                return Err(CliError::Input(format!(
                    "stabilizer order of edge {e} is 0"
                )));
            }
        }
        Ok(())
    }

    /// Compact JSON in field order; the digest is taken over these bytes.
    pub fn canonical(&self) -> String {
        serde_json::to_string(self).expect("document serializes")
    }

    pub fn digest(&self) -> String {
        digest_of(self.canonical().as_bytes())
    }

    pub fn graph(&self) -> Result<MultiGraph, CliError> {
        MultiGraph::new(
            self.vertices,
            self.edges.iter().map(|&[u, v]| (u, v)).collect(),
        )
        .map_err(|e| CliError::Input(e.to_string()))
    }

    /// The twisted-curve model; both optional fields are required here.
    pub fn model(&self) -> Result<TwistedCurveModel, CliError> {
        let missing =
            |field: &str| CliError::Precondition(format!("this command needs the `{field}` field"));
        let genera = self.genera.clone().ok_or_else(|| missing("genera"))?;
        let orders = self
            .stabilizers
            .clone()
            .ok_or_else(|| missing("stabilizers"))?;
        TwistedCurveModel::new(self.graph()?, genera, orders)
            .map_err(|e| CliError::Input(e.to_string()))
    }
}

pub fn digest_of(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
