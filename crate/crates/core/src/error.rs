use thiserror::Error;

/// Errors surfaced by the exact Hecke-module kernels.
#[derive(Debug, Error)]
pub enum Error {
    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("generator {0} is not defined for the {1} torus")]
    InvalidGenerator(String, &'static str),

    #[error("singular matrix")]
    SingularMatrix,

    #[error("matrix does not lie in the embedded torus")]
    NotInTorus,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("central character mismatch: alpha*beta must equal the torus character on the center")]
    CentralCharacter,

    #[error("local L-factor degenerates at the evaluation point: {0}")]
    Pole(String),

    #[error("eigenform data rejected: {0}")]
    Load(String),
}

pub type Result<T> = std::result::Result<T, Error>;
