//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid topology: {0}")]
    Topology(String),

    #[error("case file parse error at line {line}: {msg}")]
    CaseParse { line: usize, msg: String },

    #[error("power flow diverged after {iterations} iterations (max mismatch {mismatch:.3e})")]
    PowerFlowDiverged { iterations: usize, mismatch: f64 },

    #[error("singular linear system (pivot {pivot:.3e} at column {col})")]
    SingularMatrix { col: usize, pivot: f64 },

    #[error("invalid fault spec: {0}")]
    FaultSpec(String),

    #[error("infeasible scenario plan: {0}")]
    Plan(String),

    #[error("signal has zero power; SNR is undefined")]
    ZeroPowerSignal,

    #[error("invalid observability mask: {0}")]
    Mask(String),

    #[error("dimension mismatch: {0}")]
    Shape(String),

    #[error("non-finite gradient in layer {layer}")]
    NonFiniteGradient { layer: &'static str },

    #[error("training diverged at step {step}: loss is non-finite")]
    TrainingDiverged {
        step: usize,
        history: Box<crate::train::TrainHistory>,
    },

    #[error("invalid training setup: {0}")]
    Train(String),

    #[error("evaluation error: {0}")]
    Eval(String),

    #[error("file format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
