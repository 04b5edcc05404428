//! Error type shared by the fallible operations of this crate.

use alloc::string::String;
use core::fmt;

/// Errors reported by fallible operations.
///
/// Dimension mismatches inside the GF(2) kernels are programming errors and
/// panic instead; `Error` covers conditions reachable from user input:
/// unknown catalog names, singular base-change matrices, guardrails, and
/// violated operation preconditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A size guardrail was exceeded. `limit`/`actual` are in the unit named
    /// by `what` (basis size, log2 of group order, ...).
    Guardrail {
        what: &'static str,
        limit: u64,
        actual: u64,
    },
    /// A square matrix expected to be invertible over GF(2) is singular.
    SingularMatrix,
    /// An operation precondition does not hold for the supplied arguments.
    Precondition(String),
    /// `catalog` was called with a name it does not know.
    UnknownCatalog(String),
    /// A claimed group homomorphism failed verification.
    NotAHomomorphism(String),
    /// The morphism must be injective for this construction.
    NotInjective,
    /// A value set table is structurally malformed (bad key set, foreign
    /// element, wrong length). Distinct from axiom violations, which are
    /// reported by validation, not as errors.
    MalformedValueSets(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Guardrail {
                what,
                limit,
                actual,
            } => write!(f, "guardrail exceeded: {what} is {actual}, limit {limit}"),
            Error::SingularMatrix => write!(f, "matrix is singular over GF(2)"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::UnknownCatalog(name) => write!(f, "unknown catalog entry: {name}"),
            Error::NotAHomomorphism(msg) => write!(f, "not a homomorphism: {msg}"),
            Error::NotInjective => write!(f, "morphism is not injective"),
            Error::MalformedValueSets(msg) => write!(f, "malformed value sets: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
