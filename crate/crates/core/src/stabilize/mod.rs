//! Stable tameness certificates for length-three automorphisms.

mod bezout;
mod block;
mod certificate;
mod engine;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::cli::parse::ParseError;
use crate::length3::Length3Error;
use crate::polymap::MapError;

pub use bezout::bezout_over_stage;
pub use block::{decompose_linear_block, unimodular_complete, BlockDecomposition, BlockOutcome};
pub use certificate::{generator_from_json, generator_to_json, Certificate, Conclusion};
pub use engine::{s_count, stabilize, stabilize_data, stage, stage_count, Stage, StagePayload, StageRecord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilizeError {
    #[error("row is not unimodular: {0}")]
    NotUnimodular(String),
    #[error(transparent)]
    Length3(#[from] Length3Error),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("malformed certificate: {0}")]
    Format(String),
    #[error("internal invariant breach: {0}")]
    Breach(String),
}

impl From<AlgebraError> for StabilizeError {
    fn from(e: AlgebraError) -> Self {
        StabilizeError::Map(e.into())
    }
}
