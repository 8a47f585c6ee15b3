use thiserror::Error;

use crate::face::LabelDefect;
use crate::region::DegeneracyReport;
use crate::sets::UserSet;

#[derive(Debug, Error)]
pub enum Error {
    /// The channel description is malformed; `field` names the offending entry.
    #[error("invalid channel field `{field}`: {reason}")]
    Validation { field: String, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid face label: {0}")]
    InvalidLabel(LabelDefect),

    #[error("cannot parse label `{text}`: {reason}")]
    LabelSyntax { text: String, reason: String },

    /// Face structure is only defined for non-degenerate regions.
    #[error("region is degenerate: {}", .0.summary())]
    Degenerate(Box<DegeneracyReport>),

    #[error("{what} = {requested} exceeds the cap of {cap}; {advice}")]
    Capacity {
        what: &'static str,
        requested: usize,
        cap: usize,
        advice: &'static str,
    },

    #[error("rate tuple has {got} components, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Two routes that must agree did not, or a float invariant broke.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("tight front constraints {a} and {b} are not nested; tolerance too loose or region degenerate")]
    NotTelescopic { a: UserSet, b: UserSet },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
