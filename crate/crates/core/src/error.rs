use thiserror::Error;

/// Errors raised by category operations and the constructions built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatError {
    #[error("domain mismatch: cod({f}) = {cod_f} but dom({g}) = {dom_g}")]
    DomainMismatch {
        g: String,
        f: String,
        cod_f: String,
        dom_g: String,
    },
    #[error("codomain mismatch: cod({f}) = {cod_f}, cod({g}) = {cod_g}")]
    CodomainMismatch {
        f: String,
        g: String,
        cod_f: String,
        cod_g: String,
    },
    #[error("spans are not parallel: {0}")]
    NotParallel(String),
    #[error("limit unavailable: {0}")]
    LimitUnavailable(String),
    #[error("no terminal object")]
    NoTerminal,
    #[error("hom-class enumeration unavailable: {0}")]
    EnumerationUnavailable(String),
    #[error("undetermined within search bound: {0}")]
    Undetermined(String),
    #[error("tabulation failed ({equation}): {detail}")]
    TabulationFailed { equation: String, detail: String },
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("configuration error: {0}")]
    Config(String),
}

impl CatError {
    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        CatError::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, CatError>;
