//! Input files: a `[manifold]` section with the graphing functions and an
//! optional `[options]` section.

use std::path::Path;

use engel_core::algebra::parse_polynomial;
use engel_core::pipeline::GraphData;
use engel_core::{Branch, ParseError, PipelineError};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed input file: {0}")]
    Format(#[from] toml::de::Error),
    #[error("{key}: {source}")]
    Expression { key: &'static str, source: ParseError },
    #[error("{0}")]
    Graph(PipelineError),
    #[error("branch must be +1 or -1, got {0}")]
    Branch(i64),
    #[error("order must be at least 1")]
    Order,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    manifold: RawManifold,
    #[serde(default)]
    options: RawOptions,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifold {
    phi1: String,
    phi2: String,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    branch: Option<i64>,
    seed: Option<u64>,
    order: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct InputFile {
    pub phi1: String,
    pub phi2: String,
    pub graph: GraphData,
    pub branch: Branch,
    pub seed: u64,
    /// Jet order for the numeric oracle.
    pub order: u32,
}

pub const DEFAULT_ORDER: u32 = 8;

impl InputFile {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        let raw: RawFile = toml::from_str(text)?;
        let phi1 = parse_polynomial(&raw.manifold.phi1).map_err(|source| InputError::Expression { key: "phi1", source })?;
        let phi2 = parse_polynomial(&raw.manifold.phi2).map_err(|source| InputError::Expression { key: "phi2", source })?;
        let graph = GraphData::new(phi1, phi2).map_err(InputError::Graph)?;
        let branch = match raw.options.branch {
            None => Branch::Plus,
            Some(s) => Branch::from_sign(s).ok_or(InputError::Branch(s))?,
        };
        let order = raw.options.order.unwrap_or(DEFAULT_ORDER);
        if order == 0 {
            return Err(InputError::Order);
        }
        Ok(Self { phi1: raw.manifold.phi1, phi2: raw.manifold.phi2, graph, branch, seed: raw.options.seed.unwrap_or(0), order })
    }

    pub fn read(path: &Path) -> Result<Self, InputError> {
        let text = std::fs::read_to_string(path).map_err(|source| InputError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }
}
