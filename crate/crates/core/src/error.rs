use alloc::string::String;

use thiserror::Error;

use crate::schema::{Attribute, Domain, Value};

/// Violations of the attribute vocabulary.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("unknown domain {0:?}")]
    UnknownDomain(String),
    #[error("attribute {attribute} is not declared in the {domain} schema")]
    SchemaMismatch { attribute: Attribute, domain: Domain },
    #[error("value {value:?} is outside the universe of {attribute}")]
    ValueOutsideUniverse { attribute: Attribute, value: Value },
    #[error("attribute {attribute} given more than once")]
    DuplicateAttribute { attribute: Attribute },
    #[error("duplicate raw attribute {name:?}")]
    DuplicateRawAttribute { name: String },
    #[error("contradictory annotation for {attribute}: absent but coloured")]
    Inconsistent { attribute: Attribute },
}
