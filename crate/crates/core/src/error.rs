use thiserror::Error;

use crate::rootdata::GroupType;

#[derive(Debug, Error)]
pub enum Error {
    #[error("the modulus m must be a positive integer")]
    InvalidModulus,

    #[error("unknown group type {0:?} (expected one of G2, F4, E6, E7, E8)")]
    UnknownGroup(String),

    #[error("{group} is out of scope here: {reason}")]
    Refused { group: GroupType, reason: String },

    #[error("data integrity failure: {0}")]
    Integrity(String),

    #[error("fit verification failed: {0}")]
    FitMismatch(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown {kind} {name:?}; registered: {known}")]
    UnknownStrategy { kind: &'static str, name: String, known: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
