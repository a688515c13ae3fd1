use thiserror::Error;

use crate::patterns::AdmissibilityReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid deformation parameter: {0}")]
    InvalidContext(String),

    #[error("invalid representation spec: {0}")]
    InvalidSpec(String),

    #[error("inadmissible spec: {0}")]
    Inadmissible(AdmissibilityReport),

    #[error("state enumeration exceeded the cap of {cap} states")]
    BudgetExceeded { cap: usize },

    #[error("divergent matrix element: {0}")]
    Divergence(String),

    #[error("cross-class q-number vanished numerically ({0}); class bases are not generic")]
    GenericityViolation(String),

    #[error("basis rescaling needs pairwise distinct fractional parts: {0}")]
    CoincidentClasses(String),

    #[error("no highest-weight state in the module")]
    NoHighestWeight,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("relation check failed: {0}")]
    RelationViolation(String),

    #[error("inconsistent classification: {0}")]
    InconsistentStatus(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
