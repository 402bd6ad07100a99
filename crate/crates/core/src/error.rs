use thiserror::Error;

use crate::axioms::Diagnostic;
use crate::witness::Witness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed document: {0}")]
    MalformedDocument(String),
    #[error("index {index} out of range for a structure of order {order}")]
    IndexOutOfRange { index: i64, order: usize },
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown property {0:?}")]
    UnknownProperty(String),
    #[error("element {x} has no local identity")]
    NoIdentity { x: usize },
    #[error("element {x} has two local identities {first} and {second}")]
    NonUniqueIdentity { x: usize, first: usize, second: usize },
    #[error("subset is empty")]
    EmptySubset,
    #[error("index {index} does not belong to a structure of order {order}")]
    ForeignIndices { index: usize, order: usize },
    #[error("{what} of size {size} exceeds the supported limit {limit}")]
    TooLarge { what: &'static str, size: usize, limit: usize },
    #[error("map is not total: {0}")]
    NotTotal(String),
    #[error("map is not a homomorphism ({0})")]
    NotHomomorphism(Witness),
    #[error("domain is not a normal generalized group ({0})")]
    NotNormal(Witness),
    #[error("induced product is not well defined ({0})")]
    IllDefined(Witness),
    #[error("certification failed: {0}")]
    CertificationFailed(Diagnostic),
    #[error("subset is not a generalized subgroup ({0})")]
    NotSubgroup(Witness),
    #[error("subset is not a group under the restricted operation ({0})")]
    NotGroupSubset(Witness),
    #[error("hypothesis {which} failed ({witness})")]
    HypothesisFailed { which: &'static str, witness: Witness },
    #[error("conclusion failed ({0})")]
    ConclusionFailed(Witness),
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
}
