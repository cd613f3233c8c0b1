//! File schemas, run manifests and the command implementations behind the
//! binary. Everything with side effects lives here.

mod commands;
mod manifest;
mod schema;

pub use commands::{
    cmd_construct, cmd_decide, cmd_entropy, cmd_inner_eval, cmd_membership, cmd_pw_example, cmd_shortproof,
    CommandOutput, Status, CURVE_SAMPLES,
};
pub use manifest::{digest_hex, thread_cap, write_outputs, FileDigest, RunManifest, THREADS_ENV};
pub use schema::{
    curve_csv, parse_config, parse_curve_csv, parse_measure, parse_points, parse_series, parse_set, parse_theta,
    read_input, CantorSetEntry, SetFile,
};

use thiserror::Error;

use crate::circle_geometry::GeometryError;
use crate::hardy_numerics::NumericsError;
use crate::pipeline::PipelineError;
use crate::shortproof::ShortProofError;
use crate::univalence::UnivalenceError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: line {line}, column {column}: {msg}")]
    Schema { path: String, line: usize, column: usize, msg: String },
    #[error("{path}: field {field}: {msg}")]
    Field { path: String, field: String, msg: String },
    #[error("{var} = {value:?} is not a positive integer")]
    BadEnv { var: String, value: String },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error(transparent)]
    ShortProof(#[from] ShortProofError),
    #[error(transparent)]
    Univalence(#[from] UnivalenceError),
    #[error("serialization: {0}")]
    Serialize(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for bad input and for runs that could neither certify nor refute,
    /// 1 for a computation that ran and failed a check.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Pipeline(PipelineError::AdaptiveExhausted { .. })
            | CliError::Univalence(UnivalenceError::Inconclusive { .. })
            | CliError::ShortProof(ShortProofError::NotFound { .. })
            | CliError::ShortProof(ShortProofError::MembershipFailed { .. }) => 2,
            CliError::Pipeline(_) | CliError::ShortProof(_) | CliError::Univalence(_) | CliError::Numerics(_) => 1,
            _ => 2,
        }
    }
}
